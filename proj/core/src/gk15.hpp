#ifndef GWISH_SRC_GK15_HPP_
#define GWISH_SRC_GK15_HPP_

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace gwish::detail {

// 15-point Gauss-Kronrod pair (QUADPACK dqk15 abscissae/weights).
inline constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGkWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename T>
double vnorm(const T& v) {
  if constexpr (std::is_same_v<T, std::complex<double>>) return std::abs(v);
  else return std::abs(static_cast<double>(v));
}

// One Gauss-Kronrod panel on [a,b]; returns (integral, error estimate).
template <typename F, typename T = double>
std::pair<T, double> gk15_panel(const F& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  T fc = f(c);
  T kron = kGkWeights[7] * fc;
  T gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double dx = h * kGkNodes[i];
    T f1 = f(c - dx);
    T f2 = f(c + dx);
    kron += kGkWeights[i] * (f1 + f2);
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }
  kron *= h;
  gauss *= h;
  double err = vnorm<T>(kron - gauss);
  // QUADPACK-style sharpening of the raw |K - G| difference.
  if (err > 0.0) err = std::min(err, 200.0 * err * std::sqrt(err / (vnorm<T>(kron) + 1e-300)));
  return {kron, err};
}

struct Segment {
  double a, b, err;
};

// Plain adaptive bisection, worst segment first.  Deterministic.
template <typename F, typename T = double>
std::pair<T, double> adaptive_gk(const F& f, double a, double b, double rel_tol,
                                 double abs_tol, int max_subdivisions) {
  struct Piece {
    double a, b, err;
    T val;
  };
  std::vector<Piece> pieces;
  auto [v0, e0] = gk15_panel<F, T>(f, a, b);
  pieces.push_back({a, b, e0, v0});
  T total = v0;
  double total_err = e0;
  for (int iter = 0; iter < max_subdivisions; ++iter) {
    if (total_err <= std::max(rel_tol * vnorm<T>(total), abs_tol)) break;
    size_t worst = 0;
    for (size_t i = 1; i < pieces.size(); ++i)
      if (pieces[i].err > pieces[worst].err) worst = i;
    Piece p = pieces[worst];
    double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) break;  // ran out of resolution
    auto [vl, el] = gk15_panel<F, T>(f, p.a, mid);
    auto [vr, er] = gk15_panel<F, T>(f, mid, p.b);
    pieces[worst] = {p.a, mid, el, vl};
    pieces.push_back({mid, p.b, er, vr});
    total = T{};
    total_err = 0.0;
    for (const auto& q : pieces) {
      total += q.val;
      total_err += q.err;
    }
  }
  return {total, total_err};
}

}  // namespace gwish::detail

#endif  // GWISH_SRC_GK15_HPP_
