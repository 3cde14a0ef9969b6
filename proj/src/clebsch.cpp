#include "qunit/clebsch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace qunit {

namespace {

namespace mp = boost::multiprecision;

mp::cpp_int factorial(int n) {
  mp::cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_projection(SpinLabel j, HalfInt m, const char* name) {
  if (std::abs(m.twice()) > j.two_s()) {
    throw std::invalid_argument(std::string("|") + name + "| exceeds its spin");
  }
  if ((j.two_s() - m.twice()) % 2 != 0) {
    throw std::invalid_argument(std::string(name) + " - j is not an integer");
  }
}

}  // namespace

double cg_coefficient(SpinLabel j1, SpinLabel j2, SpinLabel j, HalfInt m1, HalfInt m2, HalfInt m) {
  check_projection(j1, m1, "m1");
  check_projection(j2, m2, "m2");
  check_projection(j, m, "m");

  const int a = j1.two_s(), b = j2.two_s(), c = j.two_s();
  if (c < std::abs(a - b) || c > a + b || (a + b + c) % 2 != 0) return 0.0;
  if (m1.twice() + m2.twice() != m.twice()) return 0.0;

  // All of these are integers once the checks above pass.
  const int j1_plus_j2_minus_j = (a + b - c) / 2;
  const int j1_minus_j2_plus_j = (a - b + c) / 2;
  const int minus_j1_plus_j2_plus_j = (-a + b + c) / 2;
  const int j1_plus_j2_plus_j_plus_1 = (a + b + c) / 2 + 1;
  const int j1_minus_m1 = (a - m1.twice()) / 2;
  const int j1_plus_m1 = (a + m1.twice()) / 2;
  const int j2_minus_m2 = (b - m2.twice()) / 2;
  const int j2_plus_m2 = (b + m2.twice()) / 2;
  const int j_minus_m = (c - m.twice()) / 2;
  const int j_plus_m = (c + m.twice()) / 2;
  const int j_minus_j2_plus_m1 = (c - b + m1.twice()) / 2;
  const int j_minus_j1_minus_m2 = (c - a - m2.twice()) / 2;

  const int k_lo = std::max({0, -j_minus_j2_plus_m1, -j_minus_j1_minus_m2});
  const int k_hi = std::min({j1_plus_j2_minus_j, j1_minus_m1, j2_plus_m2});
  if (k_lo > k_hi) return 0.0;

  // Racah sum over k, brought to a common denominator.
  mp::cpp_rational sum = 0;
  for (int k = k_lo; k <= k_hi; ++k) {
    mp::cpp_int den = factorial(k) * factorial(j1_plus_j2_minus_j - k) * factorial(j1_minus_m1 - k) *
                      factorial(j2_plus_m2 - k) * factorial(j_minus_j2_plus_m1 + k) *
                      factorial(j_minus_j1_minus_m2 + k);
    mp::cpp_rational term(mp::cpp_int(1), den);
    if (k % 2 != 0) term = -term;
    sum += term;
  }
  if (sum == 0) return 0.0;

  mp::cpp_rational squared(mp::cpp_int(c + 1) * factorial(j1_plus_j2_minus_j) * factorial(j1_minus_j2_plus_j) *
                               factorial(minus_j1_plus_j2_plus_j),
                           factorial(j1_plus_j2_plus_j_plus_1));
  squared *= mp::cpp_rational(factorial(j_plus_m) * factorial(j_minus_m) * factorial(j1_minus_m1) *
                              factorial(j1_plus_m1) * factorial(j2_minus_m2) * factorial(j2_plus_m2));
  squared *= sum * sum;

  using Float = mp::cpp_bin_float_50;
  const Float magnitude = mp::sqrt(Float(mp::numerator(squared)) / Float(mp::denominator(squared)));
  const double value = magnitude.convert_to<double>();
  return sum < 0 ? -value : value;
}

}  // namespace qunit
