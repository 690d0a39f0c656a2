#include "gwish/quadrature.hpp"

#include <cmath>

#include "gk15.hpp"
#include "gwish/errors.hpp"
#include "gwish/special.hpp"

namespace gwish {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

int power_for_exponent(double e) {
  if (!(e > -1.0)) throw DomainError("quadrature: endpoint exponent must exceed -1");
  if (e >= 0.0) return 1;
  int k = static_cast<int>(std::ceil(1.0 / (1.0 + e) - 1e-12));
  return k < 1 ? 1 : k;
}

// Integrates f over (0,1) with declared endpoint singularities removed by a
// power substitution on each half.
template <typename T, typename F>
std::pair<T, double> integrate_01_impl(const F& f, const QuadSpec& spec) {
  const int budget = spec.max_subdivisions / 2 + 1;
  T total{};
  double err = 0.0;

  {
    int k = spec.left_singular ? power_for_exponent(spec.left_exponent) : 1;
    auto g = [&](double u) {
      double t = std::pow(u, k);
      return f(t) * (k * std::pow(u, k - 1));
    };
    double b = std::pow(0.5, 1.0 / k);
    auto [v, e] = detail::adaptive_gk<decltype(g), T>(g, 0.0, b, spec.rel_tol,
                                                      spec.abs_tol, budget);
    total += v;
    err += e;
  }
  {
    int k = spec.right_singular ? power_for_exponent(spec.right_exponent) : 1;
    auto g = [&](double u) {
      double t = 1.0 - std::pow(u, k);
      return f(t) * (k * std::pow(u, k - 1));
    };
    double b = std::pow(0.5, 1.0 / k);
    auto [v, e] = detail::adaptive_gk<decltype(g), T>(g, 0.0, b, spec.rel_tol,
                                                      spec.abs_tol, budget);
    total += v;
    err += e;
  }
  double scale = detail::vnorm<T>(total);
  if (err > 100.0 * std::max(spec.rel_tol * scale, spec.abs_tol) && err > 1e-6 * scale)
    throw ToleranceNotReached("integrate_01: subdivision budget exhausted",
                              scale, err);
  return {total, err};
}

struct LineMap {
  double nu;
  double prefactor;  // sqrt(pi) Gamma(nu/2) / Gamma((nu+1)/2)
  explicit LineMap(double nu_)
      : nu(nu_),
        prefactor(std::sqrt(kPi) *
                  std::exp(log_gamma(0.5 * nu_) - log_gamma(0.5 * (nu_ + 1.0)))) {}
  double point(double u) const {
    if (nu == 1.0) return std::tan(kPi * (u - 0.5));
    return student_t_quantile(nu, u) / std::sqrt(nu);
  }
  double weight(double t) const {
    return prefactor * std::pow(1.0 + t * t, 0.5 * (nu + 1.0));
  }
};

}  // namespace

QuadResult integrate_01(const std::function<double(double)>& f,
                        const QuadSpec& spec) {
  auto [v, e] = integrate_01_impl<double>(f, spec);
  return {v, e};
}

ComplexQuadResult integrate_01_complex(
    const std::function<std::complex<double>(double)>& f, const QuadSpec& spec) {
  auto [v, e] = integrate_01_impl<std::complex<double>>(f, spec);
  return {v, e};
}

QuadResult integrate_line(const std::function<double(double)>& f,
                          const QuadSpec& spec) {
  LineMap map(spec.line_nu);
  auto g = [&](double u) {
    double t = map.point(u);
    return f(t) * map.weight(t);
  };
  QuadSpec inner = spec;
  inner.left_singular = inner.right_singular = false;
  return integrate_01(g, inner);
}

ComplexQuadResult integrate_cube(
    int k, const std::function<std::complex<double>(const double*)>& f,
    const QuadSpec& spec) {
  if (k < 1 || k > 3) throw DimensionTooHigh("integrate_cube: k must be 1..3");
  LineMap map(spec.line_nu);
  double pt[3] = {0, 0, 0};

  // nested adaptive integration, innermost axis last
  std::function<std::pair<std::complex<double>, double>(int)> level =
      [&](int axis) -> std::pair<std::complex<double>, double> {
    double inner_err = 0.0;
    auto g = [&](double u) -> std::complex<double> {
      double t = map.point(u);
      pt[axis] = t;
      std::complex<double> val;
      if (axis + 1 == k) {
        val = f(pt);
      } else {
        auto [v, e] = level(axis + 1);
        inner_err = std::max(inner_err, e);
        val = v;
      }
      return val * map.weight(t);
    };
    auto [v, e] = detail::adaptive_gk<decltype(g), std::complex<double>>(
        g, 0.0, 1.0, spec.rel_tol, spec.abs_tol, spec.max_subdivisions);
    return {v, e + inner_err * map.prefactor * 4.0};
  };

  auto [v, e] = level(0);
  return {v, e};
}

}  // namespace gwish
