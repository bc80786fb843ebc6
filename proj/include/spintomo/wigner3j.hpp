#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spintomo/half_integer.hpp"

namespace spintomo {

/// Largest 2j handled with exact rational arithmetic; beyond it the Racah sum
/// is evaluated with log-gamma terms and compensated summation.
inline constexpr int wigner_3j_exact_limit = 30;

namespace detail {

struct RacahIndices {
  // Integer arguments of the factorials in the Racah formula.
  int a, b, c;                  // j1+j2-j3, j1-j2+j3, -j1+j2+j3
  int total;                    // j1+j2+j3+1
  int p1, q1, p2, q2, p3, q3;   // j1+m1, j1-m1, j2+m2, j2-m2, j3+m3, j3-m3
  int r1, r2;                   // j3-j2+m1, j3-j1-m2
  int t_lo, t_hi;
  int phase;                    // j1-j2-m3
};

inline bool racah_indices(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1,
                          HalfInteger m2, HalfInteger m3, RacahIndices& out) {
  if (j1.twice() < 0 || j2.twice() < 0 || j3.twice() < 0) return false;
  if ((m1 + m2 + m3).twice() != 0) return false;
  if (!is_projection_of(j1, m1) || !is_projection_of(j2, m2) || !is_projection_of(j3, m3))
    return false;
  if ((j1 + j2 + j3).twice() % 2 != 0) return false;
  const HalfInteger a = j1 + j2 - j3, b = j1 - j2 + j3, c = -j1 + j2 + j3;
  if (a.twice() < 0 || b.twice() < 0 || c.twice() < 0) return false;
  out.a = a.as_int();
  out.b = b.as_int();
  out.c = c.as_int();
  out.total = (j1 + j2 + j3).as_int() + 1;
  out.p1 = (j1 + m1).as_int();
  out.q1 = (j1 - m1).as_int();
  out.p2 = (j2 + m2).as_int();
  out.q2 = (j2 - m2).as_int();
  out.p3 = (j3 + m3).as_int();
  out.q3 = (j3 - m3).as_int();
  out.r1 = (j3 - j2 + m1).as_int();
  out.r2 = (j3 - j1 - m2).as_int();
  out.t_lo = std::max({0, -out.r1, -out.r2});
  out.t_hi = std::min({out.a, out.q1, out.p2});
  out.phase = (j1 - j2 - m3).as_int();
  return true;
}

inline double wigner_3j_exact(const RacahIndices& k) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  const int top = std::max({k.total, k.a, k.b, k.c, k.p1, k.q1, k.p2, k.q2, k.p3, k.q3});
  std::vector<cpp_int> fact(top + 1);
  fact[0] = 1;
  for (int i = 1; i <= top; ++i) fact[i] = fact[i - 1] * i;

  cpp_rational sum = 0;
  for (int t = k.t_lo; t <= k.t_hi; ++t) {
    cpp_int den = fact[t] * fact[k.r1 + t] * fact[k.r2 + t] * fact[k.a - t] * fact[k.q1 - t] *
                  fact[k.p2 - t];
    cpp_rational term(cpp_int(1), den);
    if (t % 2 != 0) term = -term;
    sum += term;
  }
  if (sum == 0) return 0.0;
  // value = sign * |sum| * sqrt(prefactor): square the product exactly, one rounding at the end.
  cpp_rational prefactor(fact[k.a] * fact[k.b] * fact[k.c] * fact[k.p1] * fact[k.q1] * fact[k.p2] *
                             fact[k.q2] * fact[k.p3] * fact[k.q3],
                         fact[k.total]);
  const cpp_rational squared = sum * sum * prefactor;
  double value = std::sqrt(squared.convert_to<double>());
  if (sum < 0) value = -value;
  return (std::abs(k.phase) % 2 == 0) ? value : -value;
}

inline double wigner_3j_log(const RacahIndices& k) {
  auto lf = [](int n) { return std::lgamma(static_cast<double>(n) + 1.0); };
  const double log_prefactor =
      0.5 * (lf(k.a) + lf(k.b) + lf(k.c) - lf(k.total) + lf(k.p1) + lf(k.q1) + lf(k.p2) +
             lf(k.q2) + lf(k.p3) + lf(k.q3));
  std::vector<double> logs;
  for (int t = k.t_lo; t <= k.t_hi; ++t)
    logs.push_back(-(lf(t) + lf(k.r1 + t) + lf(k.r2 + t) + lf(k.a - t) + lf(k.q1 - t) +
                     lf(k.p2 - t)));
  if (logs.empty()) return 0.0;
  const double peak = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0, compensation = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    double term = std::exp(logs[i] - peak);
    if ((k.t_lo + static_cast<int>(i)) % 2 != 0) term = -term;
    const double next = sum + term;
    if (std::abs(sum) >= std::abs(term))
      compensation += (sum - next) + term;
    else
      compensation += (term - next) + sum;
    sum = next;
  }
  double value = (sum + compensation) * std::exp(peak + log_prefactor);
  return (std::abs(k.phase) % 2 == 0) ? value : -value;
}

}  // namespace detail

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3).
///
/// Returns exactly 0 whenever a selection rule fails: m1 + m2 + m3 != 0, some
/// |m_i| > j_i (or j_i - m_i not integral), the triangle condition on
/// (j1, j2, j3) is violated, or j1 + j2 + j3 is not an integer.
inline double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3, HalfInteger m1,
                        HalfInteger m2, HalfInteger m3) {
  detail::RacahIndices k{};
  if (!detail::racah_indices(j1, j2, j3, m1, m2, m3, k)) return 0.0;
  const int largest = std::max({j1.twice(), j2.twice(), j3.twice()});
  return largest <= wigner_3j_exact_limit ? detail::wigner_3j_exact(k) : detail::wigner_3j_log(k);
}

}  // namespace spintomo
