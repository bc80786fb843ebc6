#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "spintomo/errors.hpp"
#include "spintomo/su2.hpp"

namespace spintomo {

namespace detail {

// (P_n(x), P'_n(x)) by the three-term recurrence.
inline std::pair<double, double> legendre_with_derivative(int n, double x) {
  double prev = 1.0, cur = x;
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return {cur, n * (x * cur - prev) / (x * x - 1.0)};
}

}  // namespace detail

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int count) {
  if (count < 1) throw invalid_argument("Gauss-Legendre rule needs at least one node");
  std::vector<double> nodes(count), weights(count);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (count + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = detail::legendre_with_derivative(count, x);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) <= 1e-16) break;
    }
    const double dp = detail::legendre_with_derivative(count, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[count - 1 - i] = x;
    weights[i] = weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) nodes[count / 2] = 0.0;
  return {std::move(nodes), std::move(weights)};
}

struct QuadratureNode {
  EulerAngles angles;
  double weight = 0.0;
};

/// Product rule over (phi, theta, psi) for the measure sin(theta) dphi dtheta dpsi.
///
/// Integrates every linear combination of D-matrix element products whose
/// total representation degree is at most `band_limit` exactly.
struct GroupQuadrature {
  int band_limit = 0;
  int phi_count = 0;
  int theta_count = 0;
  int psi_count = 0;
  std::vector<QuadratureNode> nodes;

  double total_weight() const {
    double s = 0.0;
    for (const auto& n : nodes) s += n.weight;
    return s;
  }

  template <typename Fn>
  auto integrate(Fn&& fn) const -> decltype(fn(EulerAngles{}) * 1.0) {
    using Value = decltype(fn(EulerAngles{}) * 1.0);
    Value acc{};
    bool first = true;
    for (const auto& n : nodes) {
      if (first) {
        acc = n.weight * fn(n.angles);
        first = false;
      } else {
        acc += n.weight * fn(n.angles);
      }
    }
    return acc;
  }
};

inline constexpr std::size_t default_quadrature_node_cap = 10'000'000;

/// Volume of the Euler-angle domain under sin(theta) dphi dtheta dpsi: 8 pi^2.
inline constexpr double group_volume = 8.0 * pi * pi;

inline GroupQuadrature quadrature_grid(int band_limit,
                                       std::size_t node_cap = default_quadrature_node_cap) {
  if (band_limit < 0) throw invalid_argument("band_limit must be non-negative");
  const std::size_t azimuthal = static_cast<std::size_t>(band_limit) + 1;
  const std::size_t polar = static_cast<std::size_t>(band_limit) / 2 + 1;  // ceil((L+1)/2)
  if (azimuthal * azimuthal > node_cap / polar)
    throw invalid_argument("quadrature for band_limit " + std::to_string(band_limit) +
                           " exceeds the node cap of " + std::to_string(node_cap));

  GroupQuadrature q;
  q.band_limit = band_limit;
  q.phi_count = static_cast<int>(azimuthal);
  q.psi_count = static_cast<int>(azimuthal);
  q.theta_count = static_cast<int>(polar);
  const auto [x, w] = gauss_legendre(q.theta_count);
  const double step = two_pi / static_cast<double>(azimuthal);
  q.nodes.reserve(azimuthal * azimuthal * polar);
  for (int ip = 0; ip < q.phi_count; ++ip) {
    for (int it = 0; it < q.theta_count; ++it) {
      // sin(theta) dtheta = d(cos theta): the Jacobian lives in the Legendre weight.
      const double theta = std::acos(x[it]);
      for (int is = 0; is < q.psi_count; ++is)
        q.nodes.push_back({EulerAngles(ip * step, theta, is * step), w[it] * step * step});
    }
  }
  return q;
}

}  // namespace spintomo
