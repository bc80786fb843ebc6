#pragma once

// SU(2) group elements in Euler angles and their spin-j representation matrices.
//
// Conventions used across the library:
//   * rows/columns of every spin-j matrix run over m = +j, j-1, ..., -j (index 0 is m = +j);
//   * the fundamental matrix is
//         u = [[ cos(t/2) e^{ i(phi+psi)/2},  sin(t/2) e^{ i(phi-psi)/2}],
//              [-sin(t/2) e^{-i(phi-psi)/2},  cos(t/2) e^{-i(phi+psi)/2}]];
//   * D^j_{mm'}(phi, theta, psi) = e^{i m phi} d^j_{mm'}(theta) e^{i m' psi}, so D^{1/2} == u.
// With these, the diagonal of D^dagger rho D depends on (phi, theta) only.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "spintomo/errors.hpp"
#include "spintomo/half_integer.hpp"
#include "spintomo/linalg.hpp"

namespace spintomo {

/// Euler angles in canonical ranges: phi, psi in [0, 2pi), theta in [0, pi].
class EulerAngles {
 public:
  EulerAngles() = default;

  /// Wraps phi and psi modulo 2pi; theta outside [0, pi] is rejected.
  EulerAngles(double phi, double theta, double psi)
      : phi_(wrap(phi)), theta_(check_theta(theta)), psi_(wrap(psi)) {}

  double phi() const { return phi_; }
  double theta() const { return theta_; }
  double psi() const { return psi_; }

  EulerAngles with_psi(double psi) const { return {phi_, theta_, psi}; }

  bool operator==(const EulerAngles&) const = default;

  static double wrap(double angle) {
    if (!std::isfinite(angle)) throw invalid_argument("Euler angle is not finite");
    double r = std::fmod(angle, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
  }

 private:
  static double check_theta(double theta) {
    constexpr double slack = 1e-12;
    if (!(theta >= -slack && theta <= pi + slack))
      throw invalid_argument("theta must lie in [0, pi], got " + std::to_string(theta));
    return std::clamp(theta, 0.0, pi);
  }

  double phi_ = 0.0;
  double theta_ = 0.0;
  double psi_ = 0.0;
};

inline Eigen::Matrix2cd su2_fundamental(const EulerAngles& a) {
  const double c = std::cos(0.5 * a.theta());
  const double s = std::sin(0.5 * a.theta());
  const double sum = 0.5 * (a.phi() + a.psi());
  const double diff = 0.5 * (a.phi() - a.psi());
  Eigen::Matrix2cd u;
  u(0, 0) = c * std::polar(1.0, sum);
  u(0, 1) = s * std::polar(1.0, diff);
  u(1, 0) = -s * std::polar(1.0, -diff);
  u(1, 1) = c * std::polar(1.0, -sum);
  return u;
}

/// Largest 2j for which wigner_small_d sums factorials directly in extended precision.
/// Beyond it the sum runs in the log domain with 50-digit floats: the terms
/// alternate and cancel, costing ~1e-14 at 2j = 30, ~1e-10 at 2j = 60 and all
/// accuracy near 2j = 120 in long double.
inline constexpr int small_d_direct_limit = 30;

namespace detail {

inline long double log_factorial(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

// One element d^j_{mm'}(theta); `tj`, `tm`, `tmp` are twice j, m, m'.
inline double small_d_element(int tj, int tm, int tmp, long double c, long double s) {
  // Integer quantities j+m, j-m, j+m', j-m', m'-m.
  const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
  const int jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
  const int delta = (tmp - tm) / 2;
  const int t_lo = std::max(0, -delta);
  const int t_hi = std::min(jpm, jmmp);

  const long double log_prefactor =
      0.5L * (log_factorial(jpm) + log_factorial(jmm) + log_factorial(jpmp) + log_factorial(jmmp));
  long double sum = 0.0L;
  long double compensation = 0.0L;
  for (int t = t_lo; t <= t_hi; ++t) {
    // cos(theta/2)^{2j + m - m' - 2t} sin(theta/2)^{m' - m + 2t}
    const int exp_cos = tj - delta - 2 * t;
    const int exp_sin = delta + 2 * t;
    const long double log_den = log_factorial(jpm - t) + log_factorial(t) +
                                log_factorial(delta + t) + log_factorial(jmmp - t);
    long double term = std::exp(log_prefactor - log_den) * std::pow(c, exp_cos) * std::pow(s, exp_sin);
    if ((delta + t) % 2 != 0) term = -term;
    // Neumaier summation.
    const long double next = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      compensation += (sum - next) + term;
    else
      compensation += (term - next) + sum;
    sum = next;
  }
  return static_cast<double>(sum + compensation);
}

using wide_float = boost::multiprecision::cpp_bin_float_50;

// Whole d^j(theta) for large j. The first term of each sum comes from
// log-factorials, the rest from the exact ratio of consecutive terms.
inline RealMatrix small_d_wide(int tj, double theta) {
  const int n = tj + 1;
  const wide_float half = wide_float(theta) / 2;
  const wide_float c = cos(half), s = sin(half);
  if (s == 0 || c == 0) {
    // Only theta = 0 (mod 2 pi) can land here: pi itself is not a double.
    return c > 0 ? RealMatrix::Identity(n, n) : RealMatrix(-RealMatrix::Identity(n, n));
  }

  std::vector<wide_float> lf(tj + 1);
  lf[0] = 0;
  for (int k = 1; k <= tj; ++k) lf[k] = lf[k - 1] + log(wide_float(k));
  const wide_float log_c = log(abs(c)), log_s = log(abs(s));
  const wide_float tan_sq = (s * s) / (c * c);

  RealMatrix d(n, n);
  for (int r = 0; r < n; ++r) {
    const int tm = tj - 2 * r;
    for (int col = 0; col < n; ++col) {
      const int tmp = tj - 2 * col;
      const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
      const int jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
      const int delta = (tmp - tm) / 2;
      const int t_lo = std::max(0, -delta);
      const int t_hi = std::min(jpm, jmmp);
      const wide_float log_first = (lf[jpm] + lf[jmm] + lf[jpmp] + lf[jmmp]) / 2 -
                                   (lf[jpm - t_lo] + lf[t_lo] + lf[delta + t_lo] + lf[jmmp - t_lo]) +
                                   (tj - delta - 2 * t_lo) * log_c + (delta + 2 * t_lo) * log_s;
      wide_float term = exp(log_first);
      // Parities of the cos and sin exponents do not change with t.
      const bool negative = ((delta + t_lo) % 2 != 0) != ((c < 0 && (tj - delta) % 2 != 0) != (s < 0 && delta % 2 != 0));
      if (negative) term = -term;
      wide_float sum = 0;
      for (int t = t_lo; t <= t_hi; ++t) {
        sum += term;
        term *= -tan_sq * ((jpm - t) * (jmmp - t));
        term /= (t + 1) * (delta + t + 1);
      }
      d(r, col) = static_cast<double>(sum);
    }
  }
  return d;
}

}  // namespace detail

/// Real core d^j(theta) of the spin-j representation (rows/cols m = +j .. -j).
/// For j = 1/2 this is [[cos(t/2), sin(t/2)], [-sin(t/2), cos(t/2)]].
inline RealMatrix wigner_small_d(HalfInteger j, double theta) {
  require_spin(j);
  if (j.twice() > small_d_direct_limit) return detail::small_d_wide(j.twice(), theta);
  const int n = multiplicity(j);
  const long double c = std::cos(0.5L * theta);
  const long double s = std::sin(0.5L * theta);
  RealMatrix d(n, n);
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col)
      d(r, col) = detail::small_d_element(j.twice(), projection_at(j, r).twice(),
                                          projection_at(j, col).twice(), c, s);
  return d;
}

inline ComplexMatrix wigner_D(HalfInteger j, const EulerAngles& a) {
  const RealMatrix d = wigner_small_d(j, a.theta());
  const int n = multiplicity(j);
  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    const double m = projection_at(j, r).to_double();
    for (int col = 0; col < n; ++col) {
      const double mp = projection_at(j, col).to_double();
      out(r, col) = d(r, col) * std::polar(1.0, m * a.phi() + mp * a.psi());
    }
  }
  return out;
}

/// Euler angles of an SU(2) matrix. The result satisfies
/// su2_fundamental(angles) == sign * u with sign = +1 or -1, because the
/// canonical angle ranges cover SU(2) only up to an overall sign.
/// At theta = 0 or pi the split between phi and psi is fixed by psi = 0.
struct SignedAngles {
  EulerAngles angles;
  int sign = 1;
};

inline SignedAngles angles_from_su2(const Eigen::Matrix2cd& u) {
  constexpr double degenerate = 1e-12;
  const double a = std::abs(u(0, 0));
  const double b = std::abs(u(0, 1));
  const double theta = 2.0 * std::atan2(b, a);
  double phi = 0.0;
  double psi = 0.0;
  if (b <= degenerate * (a + b)) {
    phi = 2.0 * std::arg(u(0, 0));
  } else if (a <= degenerate * (a + b)) {
    phi = 2.0 * std::arg(u(0, 1));
  } else {
    const double sum = std::arg(u(0, 0));
    const double diff = std::arg(u(0, 1));
    phi = sum + diff;
    psi = sum - diff;
  }
  SignedAngles out{EulerAngles(phi, std::clamp(theta, 0.0, pi), psi), 1};
  const Eigen::Matrix2cd back = su2_fundamental(out.angles);
  out.sign = (back - u).cwiseAbs().maxCoeff() <= (back + u).cwiseAbs().maxCoeff() ? 1 : -1;
  return out;
}

/// Angles of the product u(first) * u(second).
inline SignedAngles compose(const EulerAngles& first, const EulerAngles& second) {
  return angles_from_su2(su2_fundamental(first) * su2_fundamental(second));
}

}  // namespace spintomo
