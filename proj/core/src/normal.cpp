#include "binrow/normal.hpp"

#include <cmath>

namespace binrow {

double phi(double x) {
  double v = 0.5 * std::erfc(-x * M_SQRT1_2);
  if (v < 0.0) return 0.0;
  if (v > 1.0) return 1.0;
  return v;
}

}  // namespace binrow
