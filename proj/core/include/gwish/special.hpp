#ifndef GWISH_SPECIAL_HPP_
#define GWISH_SPECIAL_HPP_

namespace gwish {

// Scalar log Gamma, a > 0.
double log_gamma(double a);

// Multivariate gamma in log space:
//   log Gamma_k(a) = (k(k-1)/4) log pi + sum_{m=1..k} log Gamma(a + (1-m)/2),
// defined for a > (k-1)/2.
double log_multigamma(int k, double a);

double digamma(double x);

// Regularized incomplete gamma functions P(a,x) and Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double incbeta(double a, double b, double x);
// Inverse of I_x(a,b) in x for y in (0,1).
double incbeta_inv(double a, double b, double y);

double normal_quantile(double p);

double chi2_cdf(double nu, double x);
double chi2_quantile(double nu, double p);

double student_t_cdf(double nu, double t);
double student_t_quantile(double nu, double p);

// Gauss hypergeometric 2F1(a,b;c;x) for real x < 1.  Negative arguments are
// mapped into [0,1) with the Pfaff transformation; near-unit arguments use
// the 1-x linear transformation, switching to the logarithmic expansion when
// c-a-b is within 1e-6 of an integer.
double hyp2f1(double a, double b, double c, double x, double tol = 1e-13);

// 2F1 at x = 1 (Gauss summation), requires c - a - b > 0.
double gauss_2f1_at_one(double a, double b, double c);

// 3F2(a1,a2,a3;b1,b2;1) by direct summation; requires
// b1 + b2 - a1 - a2 - a3 > 0.  Slowly converging cases fall back to the
// Euler integral representation.
double hyp3f2_unit(double a1, double a2, double a3, double b1, double b2,
                   double tol = 1e-13);

// Tricomi confluent hypergeometric U(1/2, b, x) for x > 0, via
//   U(1/2, b, x) = (2/sqrt(pi)) Int_0^inf exp(-x t^2) (1+t^2)^(b-3/2) dt,
// with the large-x asymptotic series when it converges to tolerance.
double tricomi_u_half(double b, double x, double tol = 1e-13);

}  // namespace gwish

#endif  // GWISH_SPECIAL_HPP_
