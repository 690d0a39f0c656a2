#ifndef GWISH_QUADRATURE_HPP_
#define GWISH_QUADRATURE_HPP_

#include <complex>
#include <functional>

namespace gwish {

struct QuadSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;
  int max_subdivisions = 2000;
  // declared algebraic endpoint singularities t^e / (1-t)^e with e > -1;
  // handled by the substitution t = u^k before integrating
  bool left_singular = false;
  double left_exponent = 0.0;
  bool right_singular = false;
  double right_exponent = 0.0;
  // Student-t degrees of freedom for the real-line compactification
  double line_nu = 1.0;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

struct ComplexQuadResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
};

// Adaptive Gauss-Kronrod on (0,1).
QuadResult integrate_01(const std::function<double(double)>& f,
                        const QuadSpec& spec = {});
ComplexQuadResult integrate_01_complex(
    const std::function<std::complex<double>(double)>& f,
    const QuadSpec& spec = {});

// Integral over the whole real line; maps through the Student-t quantile with
// spec.line_nu degrees of freedom, then runs integrate_01.
QuadResult integrate_line(const std::function<double(double)>& f,
                          const QuadSpec& spec = {});

// Tensorized nested quadrature over R^k, k in {1,2,3}, with a per-axis
// Student-t compactification.  The integrand may be complex; the result of a
// conjugate-symmetric integrand must be real up to ~10x the error estimate
// (checked by callers that require it).
ComplexQuadResult integrate_cube(
    int k, const std::function<std::complex<double>(const double*)>& f,
    const QuadSpec& spec = {});

}  // namespace gwish

#endif  // GWISH_QUADRATURE_HPP_
