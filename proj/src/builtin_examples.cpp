#include "liequad/builtin_examples.hpp"

namespace liequad {

ExampleConfig builtin_example(int n) {
  ExampleConfig cfg;
  if (n == 1) {
    cfg.C = 1.0;
    cfg.s0.v = {4.0, -1.75};
    cfg.s0.dv = {-0.1, 2.5};
    cfg.s0.ddv = {-5.0, -5.0};
  } else if (n == 2) {
    cfg.C = 0.0;
    cfg.s0.v = {2.0, -1.0};
    cfg.s0.dv = {2.0, -1.0};
    cfg.s0.ddv = {0.0, 5.0};
  } else {
    throw InvalidArgument("builtin_example: unknown example " + std::to_string(n));
  }
  return cfg;
}

}  // namespace liequad
