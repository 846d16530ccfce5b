#pragma once

#include <cstddef>
#include <vector>

namespace twistzero {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on P_n); cached per n, thread safe.
const GaussRule& gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
template <class F>
auto integrate_composite(F&& f, double a, double b, std::size_t panels, std::size_t order = 32) {
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  using R = decltype(f(a));
  R total{};
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = a + (static_cast<double>(k) + 0.5) * h;
    R panel{};
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      panel += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
    }
    total += 0.5 * h * panel;
  }
  return total;
}

}  // namespace twistzero
