#ifndef BINROW_NORMAL_HPP
#define BINROW_NORMAL_HPP

namespace binrow {

/// Standard normal CDF, clamped to [0,1]. Evaluated through the libm
/// complementary error function; absolute error well below 1e-12.
double phi(double x);

}  // namespace binrow

#endif
