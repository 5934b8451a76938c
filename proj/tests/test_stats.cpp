#include <doctest.h>

#include <cmath>

#include "srd/stats.hpp"

using doctest::Approx;
namespace st = srd::stats;

TEST_CASE("incomplete beta reference values") {
  CHECK(st::incomplete_beta(1, 1, 0.3) == Approx(0.3));
  CHECK(st::incomplete_beta(2, 3, 0.0) == 0.0);
  CHECK(st::incomplete_beta(2, 3, 1.0) == 1.0);
  // I_x(a, 1) = x^a
  CHECK(st::incomplete_beta(3.5, 1, 0.6) == Approx(std::pow(0.6, 3.5)).epsilon(1e-12));
  // I_x(1, b) = 1 - (1 - x)^b
  CHECK(st::incomplete_beta(1, 4, 0.2) == Approx(1 - std::pow(0.8, 4)).epsilon(1e-12));
  // symmetry
  CHECK(st::incomplete_beta(2.5, 4, 0.3) == Approx(1 - st::incomplete_beta(4, 2.5, 0.7)).epsilon(1e-12));
  CHECK(st::incomplete_beta(5, 0.5, 0.5) == Approx(0.010119559735433718).epsilon(1e-10));
}

TEST_CASE("t and F tails") {
  CHECK(st::student_t_two_sided(0.0, 5) == Approx(1.0));
  CHECK(st::student_t_two_sided(2.570581835636314, 5) == Approx(0.05).epsilon(1e-9));
  CHECK(st::student_t_two_sided(-2.570581835636314, 5) == Approx(0.05).epsilon(1e-9));
  CHECK(st::student_t_two_sided(1.0, 1) == Approx(0.5).epsilon(1e-12));
  CHECK(st::f_upper_tail(0.0, 10, 5) == Approx(1.0));
  CHECK(st::f_upper_tail(4.73506306969342, 10, 5) == Approx(0.05).epsilon(1e-7));
  CHECK(st::f_upper_tail(1.0, 4, 4) == Approx(0.5).epsilon(1e-12));
}
