#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "dkpqes/rational.hpp"

// Algebraic machinery for radial Hamiltonians of the form
//
//   H = d^2/dr^2 + alpha + beta/r + omega/r^2 + delta/r^3 + sigma/r^4
//
// on (0, inf).  For alpha < 0, sigma < 0 the gauge factor
//
//   psi(r) = r^(1-eta) exp(-sqrt(-alpha) r - sqrt(-sigma)/r) R(r),
//   eta = delta / (2 sqrt(-sigma)),
//
// maps H onto an operator H~ that preserves the span of {1, r, ..., r^n}
// whenever the linear-term coefficient a = 2(1-eta) sqrt(-alpha) - beta
// satisfies a = -2n sqrt(-alpha).  On that subspace H~ acts as a bilinear
// combination of the spin-n/2 sl(2) generators, and eigenstates are degree-n
// polynomials R whose coefficients obey a three-term recursion.
namespace dkpqes::qes {

// |a + 2n sqrt(-alpha)| <= kQuantizationTol * (1 + |a|) counts as quantized.
inline constexpr double kQuantizationTol = 1e-10;
// Tail residuals and normalized determinants below this count as zero.
inline constexpr double kZeroTol = 1e-9;

// Coefficient set is outside the algebraizable class (alpha >= 0 or sigma >= 0).
struct NonAlgebraizable : std::domain_error {
  using std::domain_error::domain_error;
};

// Quantization condition has no solution with sqrt(-alpha) > 0.
struct NoBoundState : std::domain_error {
  using std::domain_error::domain_error;
};

// Operation requires the quantization condition but it does not hold.
struct QuantizationViolated : std::logic_error {
  using std::logic_error::logic_error;
};

struct InverseQuarticCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double omega = 0.0;
  double delta = 0.0;
  double sigma = 0.0;

  bool algebraizable() const { return alpha < 0.0 && sigma < 0.0; }
};

// Gauge-transformed data for a fixed level n.
struct Algebraization {
  int n = 0;
  double eta = 0.0;
  double sqrt_minus_alpha = 0.0;
  double sqrt_minus_sigma = 0.0;
  // Residual linear coefficient; a = -2 n sqrt(-alpha) closes the subspace.
  double a = 0.0;
  // Constant coefficient b = eta(1-eta) + 2 sqrt(-alpha) sqrt(-sigma) - omega.
  double b = 0.0;

  bool quantized() const;
  // Normalizability at the origin needs 1 - eta > 0.
  bool normalizable() const { return 1.0 - eta > 0.0; }
};

// Polynomial part R(r) = sum_m c_m r^m with c_0 = 1.
struct PolynomialSolution {
  int n = 0;
  std::vector<double> coefficients;  // c_0 .. c_n
  // c_{n+1} produced by running the recursion one step past degree n;
  // vanishes exactly when b is a root of the quantization determinant.
  double tail_residual = 0.0;

  // |tail_residual| <= tol * max_m |c_m|
  bool admissible(double tol = kZeroTol) const;
};

// Spin-n/2 sl(2) generators on the monomial basis {1, r, ..., r^n}, kept in
// exact rational arithmetic so the commutation relations can be checked with
// equality instead of tolerances.
struct GeneratorMatrices {
  int n = 0;
  RationalMatrix j_plus;   // J+ r^m = (m - n) r^(m+1)
  RationalMatrix j_zero;   // J0 r^m = (m - n/2) r^m
  RationalMatrix j_minus;  // J- r^m = m r^(m-1)
};

// Values of the full radial solution psi and its first two derivatives.
struct SolutionValues {
  double psi = 0.0;
  double dpsi = 0.0;
  double d2psi = 0.0;
};

// Gauge data for level n.  Throws NonAlgebraizable unless alpha < 0 and
// sigma < 0.  Does not require the quantization condition to hold.
Algebraization algebraize(const InverseQuarticCoefficients& coeffs, int n);

// Solves a = -2n sqrt(-alpha) for sqrt(-alpha), i.e.
// sqrt(-alpha) = beta / (2 (n + 1 - eta)).  Throws std::domain_error when the
// denominator is not positive and NoBoundState when the result is <= 0.
double solve_quantization(double beta, double eta, int n);

// Three-term recursion for c_1..c_n plus the tail residual c_{n+1}:
//   2(m+1) sqrt(-sigma) c_{m+1} = (b + m(2 eta - m - 1)) c_m
//                                 + 2 (m - n - 1) sqrt(-alpha) c_{m-1}.
PolynomialSolution recursion_coefficients(const Algebraization& alg);

// Entries of the (n+1)x(n+1) tridiagonal quantization matrix whose kernel
// contains the coefficient vector: diagonal d_m = b - m(m - 2 eta + 1),
// superdiagonal u_m = -2(m+1) sqrt(-sigma), subdiagonal l_m = 2(m-n-1) sqrt(-alpha).
double tridiagonal_diagonal(const Algebraization& alg, int m);
double tridiagonal_super(const Algebraization& alg, int m);
double tridiagonal_sub(const Algebraization& alg, int m);
Eigen::MatrixXd quantization_matrix(const Algebraization& alg);

// Determinant of the quantization matrix via the tridiagonal recurrence
//   D_m = d_m D_{m-1} - u_{m-1} l_m D_{m-2}.
double tridiagonal_determinant(const Algebraization& alg);

// Same determinant scaled by prod_m max(1, |d_m|) to keep root detection
// well-conditioned across n.
double normalized_tridiagonal_determinant(const Algebraization& alg);

GeneratorMatrices build_generators(int n);

// H~ restricted to span{1, ..., r^n} assembled from the sl(2) bilinear
//   -J+J- + 2 sqrt(-alpha) J+ - 2 sqrt(-sigma) J- + (2 eta - n - 2)(J0 + n/2) + b.
Eigen::MatrixXd qes_hamiltonian_matrix(const Algebraization& alg);

// H~ assembled directly from its action on monomials,
//   H~ r^m = 2 m sqrt(-sigma) r^(m-1) + (m(m+1-2 eta) - b) r^m - a r^(m+1),
// with a = -2n sqrt(-alpha) inserted.  Equals minus the sl(2) bilinear above.
Eigen::MatrixXd tilde_h_matrix(const Algebraization& alg);

// Coefficient of r^(n+1) in H~ r^n without assuming quantization; measures
// how badly the invariant subspace leaks when a != -2n sqrt(-alpha).
double subspace_leak(const Algebraization& alg);

// psi(r) = r^(1-eta) exp(-sqrt(-alpha) r - sqrt(-sigma)/r) R(r) together with
// its first two radial derivatives, organized so that nodes of R do not lose
// precision: psi' = F (g' R + R') etc. with F the gauge factor and
// g(r) = (1-eta) log r - sqrt(-alpha) r - sqrt(-sigma)/r.
SolutionValues evaluate_solution(const Algebraization& alg, const PolynomialSolution& poly, double r);

// Double-precision copy of a rational matrix.
Eigen::MatrixXd to_dense(const RationalMatrix& m);

}  // namespace dkpqes::qes
