#include "dkpqes/qes_core.hpp"

#include <cmath>
#include <cstdlib>

namespace dkpqes::qes {

bool Algebraization::quantized() const {
  return std::abs(a + 2.0 * n * sqrt_minus_alpha) <= kQuantizationTol * (1.0 + std::abs(a));
}

bool PolynomialSolution::admissible(double tol) const {
  double scale = 0.0;
  for (double c : coefficients) scale = std::max(scale, std::abs(c));
  return std::isfinite(tail_residual) && std::abs(tail_residual) <= tol * scale;
}

Algebraization algebraize(const InverseQuarticCoefficients& coeffs, int n) {
  if (n < 0) throw std::invalid_argument("algebraize: level n must be non-negative");
  if (!(coeffs.alpha < 0.0))
    throw NonAlgebraizable("algebraize: alpha must be negative for a decaying gauge factor");
  if (!(coeffs.sigma < 0.0))
    throw NonAlgebraizable("algebraize: sigma must be negative for a regular gauge factor");

  Algebraization alg;
  alg.n = n;
  alg.sqrt_minus_alpha = std::sqrt(-coeffs.alpha);
  alg.sqrt_minus_sigma = std::sqrt(-coeffs.sigma);
  alg.eta = coeffs.delta / (2.0 * alg.sqrt_minus_sigma);
  alg.a = 2.0 * (1.0 - alg.eta) * alg.sqrt_minus_alpha - coeffs.beta;
  alg.b = alg.eta * (1.0 - alg.eta) + 2.0 * alg.sqrt_minus_alpha * alg.sqrt_minus_sigma - coeffs.omega;
  return alg;
}

double solve_quantization(double beta, double eta, int n) {
  if (n < 0) throw std::invalid_argument("solve_quantization: level n must be non-negative");
  const double denom = n + 1.0 - eta;
  if (!(denom > 0.0))
    throw std::domain_error("solve_quantization: n + 1 - eta must be positive");
  const double root = beta / (2.0 * denom);
  if (!(root > 0.0))
    throw NoBoundState("solve_quantization: quantization gives sqrt(-alpha) <= 0, no decaying state");
  return root;
}

PolynomialSolution recursion_coefficients(const Algebraization& alg) {
  PolynomialSolution sol;
  sol.n = alg.n;
  sol.coefficients.assign(static_cast<size_t>(alg.n) + 1, 0.0);
  sol.coefficients[0] = 1.0;

  double prev = 0.0;  // c_{-1}
  double curr = 1.0;  // c_0
  for (int m = 0; m <= alg.n; ++m) {
    const double rhs = (alg.b + m * (2.0 * alg.eta - m - 1.0)) * curr +
                       2.0 * (m - alg.n - 1.0) * alg.sqrt_minus_alpha * prev;
    const double next = rhs / (2.0 * (m + 1.0) * alg.sqrt_minus_sigma);
    if (m < alg.n) sol.coefficients[static_cast<size_t>(m) + 1] = next;
    else sol.tail_residual = next;
    prev = curr;
    curr = next;
  }
  return sol;
}

double tridiagonal_diagonal(const Algebraization& alg, int m) {
  return alg.b - m * (m - 2.0 * alg.eta + 1.0);
}

double tridiagonal_super(const Algebraization& alg, int m) {
  return -2.0 * (m + 1.0) * alg.sqrt_minus_sigma;
}

double tridiagonal_sub(const Algebraization& alg, int m) {
  return 2.0 * (m - alg.n - 1.0) * alg.sqrt_minus_alpha;
}

Eigen::MatrixXd quantization_matrix(const Algebraization& alg) {
  const int size = alg.n + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    m(i, i) = tridiagonal_diagonal(alg, i);
    if (i + 1 < size) {
      m(i, i + 1) = tridiagonal_super(alg, i);
      m(i + 1, i) = tridiagonal_sub(alg, i + 1);
    }
  }
  return m;
}

double tridiagonal_determinant(const Algebraization& alg) {
  double d_prev2 = 1.0;                          // D_{-1}
  double d_prev = tridiagonal_diagonal(alg, 0);  // D_0
  for (int m = 1; m <= alg.n; ++m) {
    const double d = tridiagonal_diagonal(alg, m) * d_prev -
                     tridiagonal_super(alg, m - 1) * tridiagonal_sub(alg, m) * d_prev2;
    d_prev2 = d_prev;
    d_prev = d;
  }
  return d_prev;
}

double normalized_tridiagonal_determinant(const Algebraization& alg) {
  double scale = 1.0;
  for (int m = 0; m <= alg.n; ++m)
    scale *= std::max(1.0, std::abs(tridiagonal_diagonal(alg, m)));
  return tridiagonal_determinant(alg) / scale;
}

GeneratorMatrices build_generators(int n) {
  if (n < 0) throw std::invalid_argument("build_generators: level n must be non-negative");
  const int size = n + 1;
  GeneratorMatrices gen;
  gen.n = n;
  gen.j_plus = RationalMatrix(size, size);
  gen.j_zero = RationalMatrix(size, size);
  gen.j_minus = RationalMatrix(size, size);
  for (int m = 0; m < size; ++m) {
    if (m + 1 < size) gen.j_plus(m + 1, m) = Rational(m - n);
    gen.j_zero(m, m) = Rational(2 * m - n, 2);
    if (m >= 1) gen.j_minus(m - 1, m) = Rational(m);
  }
  return gen;
}

Eigen::MatrixXd to_dense(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

Eigen::MatrixXd qes_hamiltonian_matrix(const Algebraization& alg) {
  const GeneratorMatrices gen = build_generators(alg.n);
  const Eigen::MatrixXd jp = to_dense(gen.j_plus);
  const Eigen::MatrixXd j0 = to_dense(gen.j_zero);
  const Eigen::MatrixXd jm = to_dense(gen.j_minus);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(alg.n + 1, alg.n + 1);
  return -jp * jm + 2.0 * alg.sqrt_minus_alpha * jp - 2.0 * alg.sqrt_minus_sigma * jm +
         (2.0 * alg.eta - alg.n - 2.0) * (j0 + 0.5 * alg.n * id) + alg.b * id;
}

Eigen::MatrixXd tilde_h_matrix(const Algebraization& alg) {
  const int size = alg.n + 1;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
  for (int col = 0; col < size; ++col) {
    if (col >= 1) m(col - 1, col) = 2.0 * col * alg.sqrt_minus_sigma;
    m(col, col) = col * (col + 1.0 - 2.0 * alg.eta) - alg.b;
    if (col + 1 < size) m(col + 1, col) = 2.0 * (alg.n - col) * alg.sqrt_minus_alpha;
  }
  return m;
}

double subspace_leak(const Algebraization& alg) {
  // H~ r^n picks up -(a + 2n sqrt(-alpha)) r^(n+1); zero exactly at quantization.
  return -(alg.a + 2.0 * alg.n * alg.sqrt_minus_alpha);
}

SolutionValues evaluate_solution(const Algebraization& alg, const PolynomialSolution& poly, double r) {
  if (!(r > 0.0)) throw std::domain_error("evaluate_solution: radius must be positive");
  if (poly.coefficients.empty()) throw std::invalid_argument("evaluate_solution: empty polynomial");

  // Horner evaluation of R, R', R''.
  double p = 0.0, dp = 0.0, d2p = 0.0;
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
    d2p = d2p * r + 2.0 * dp;
    dp = dp * r + p;
    p = p * r + *it;
  }

  const double g = (1.0 - alg.eta) * std::log(r) - alg.sqrt_minus_alpha * r - alg.sqrt_minus_sigma / r;
  const double dg = (1.0 - alg.eta) / r - alg.sqrt_minus_alpha + alg.sqrt_minus_sigma / (r * r);
  const double d2g = -(1.0 - alg.eta) / (r * r) - 2.0 * alg.sqrt_minus_sigma / (r * r * r);
  const double factor = std::exp(g);

  SolutionValues out;
  out.psi = factor * p;
  out.dpsi = factor * (dg * p + dp);
  out.d2psi = factor * ((d2g + dg * dg) * p + 2.0 * dg * dp + d2p);
  return out;
}

}  // namespace dkpqes::qes
