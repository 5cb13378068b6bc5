#pragma once

#include "liequad/dynamics.hpp"

namespace liequad {

// Initial data of the two bundled demonstration runs.
struct ExampleConfig {
  double C = 0.0;
  QuadraticState s0;
};

// n = 1: C = 1,  v(0) = 4 - 1.75i, v'(0) = -0.1 + 2.5i, v''(0) = -5 - 5i.
// n = 2: C = 0,  v(0) = 2 - i,     v'(0) = 2 - i,       v''(0) = 5i.
// Throws InvalidArgument for any other n.
ExampleConfig builtin_example(int n);

}  // namespace liequad
