#ifndef GWISH_MATRIX_HPP_
#define GWISH_MATRIX_HPP_

#include <cstddef>
#include <vector>

namespace gwish {

// Dense symmetric matrix, row-major.  Sizes in this library are tiny
// (vertex counts), so everything is plain loops, no external linear algebra.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n, double diag = 0.0);

  static SymMatrix identity(int n);

  int size() const { return n_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  void set(int i, int j, double v);  // keeps symmetry

  SymMatrix submatrix(const std::vector<int>& idx) const;
  bool is_identity(double tol = 1e-14) const;
  double max_asymmetry() const;
  void symmetrize();

  const std::vector<double>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// Lower-triangular Cholesky factor; returns false if not positive definite.
bool cholesky(const SymMatrix& a, std::vector<double>& lower);

bool is_positive_definite(const SymMatrix& a);

// log det of a positive definite matrix; throws CholeskyFailure otherwise.
double logdet_pd(const SymMatrix& a);

// Solves a * x = b for PD a via the Cholesky factor.
std::vector<double> solve_pd(const SymMatrix& a, const std::vector<double>& b);

// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending order.
std::vector<double> symmetric_eigenvalues(const SymMatrix& a);

}  // namespace gwish

#endif  // GWISH_MATRIX_HPP_
