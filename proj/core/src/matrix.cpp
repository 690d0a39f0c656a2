#include "gwish/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "gwish/errors.hpp"

namespace gwish {

SymMatrix::SymMatrix(int n, double diag) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {
  for (int i = 0; i < n; ++i) (*this)(i, i) = diag;
}

SymMatrix SymMatrix::identity(int n) { return SymMatrix(n, 1.0); }

void SymMatrix::set(int i, int j, double v) {
  (*this)(i, j) = v;
  (*this)(j, i) = v;
}

SymMatrix SymMatrix::submatrix(const std::vector<int>& idx) const {
  SymMatrix s(static_cast<int>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j)
      s(static_cast<int>(i), static_cast<int>(j)) = (*this)(idx[i], idx[j]);
  return s;
}

bool SymMatrix::is_identity(double tol) const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs((*this)(i, j) - want) > tol) return false;
    }
  return true;
}

double SymMatrix::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

void SymMatrix::symmetrize() {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
      (*this)(i, j) = v;
      (*this)(j, i) = v;
    }
}

bool cholesky(const SymMatrix& a, std::vector<double>& lower) {
  const int n = a.size();
  lower.assign(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= lower[j * n + k] * lower[j * n + k];
    if (!(d > 0.0)) return false;
    double ljj = std::sqrt(d);
    lower[j * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= lower[i * n + k] * lower[j * n + k];
      lower[i * n + j] = s / ljj;
    }
  }
  return true;
}

bool is_positive_definite(const SymMatrix& a) {
  std::vector<double> l;
  return cholesky(a, l);
}

double logdet_pd(const SymMatrix& a) {
  std::vector<double> l;
  if (!cholesky(a, l)) throw CholeskyFailure("matrix is not positive definite");
  const int n = a.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::log(l[i * n + i]);
  return 2.0 * s;
}

std::vector<double> solve_pd(const SymMatrix& a, const std::vector<double>& b) {
  std::vector<double> l;
  if (!cholesky(a, l)) throw CholeskyFailure("matrix is not positive definite");
  const int n = a.size();
  std::vector<double> y(b);
  // forward substitution L y = b
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) y[i] -= l[i * n + k] * y[k];
    y[i] /= l[i * n + i];
  }
  // back substitution L^T x = y
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) y[i] -= l[k * n + i] * y[k];
    y[i] /= l[i * n + i];
  }
  return y;
}

std::vector<double> symmetric_eigenvalues(const SymMatrix& a) {
  const int n = a.size();
  std::vector<double> m(a.data());
  auto at = [&](int i, int j) -> double& { return m[static_cast<size_t>(i) * n + j]; };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace gwish
