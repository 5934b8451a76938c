#include "srd/stats.hpp"

#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "srd/error.hpp"

namespace srd::stats {

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("incomplete beta needs positive shape parameters");
  if (!(x >= 0.0 && x <= 1.0)) throw Error("incomplete beta argument outside [0, 1]");
  return boost::math::ibeta(a, b, x);
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw Error("t distribution needs positive degrees of freedom");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

double f_upper_tail(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw Error("F distribution needs positive degrees of freedom");
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  return incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

}  // namespace srd::stats
