#include "dkpqes/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace dkpqes::oracle {

namespace {

// Inclusive integer pick without distribution objects (keeps sequences
// identical across standard libraries).
int pick_int(std::mt19937_64& rng, int lo, int hi) {
  const int span = hi - lo + 1;
  const int k = lo + static_cast<int>(uniform_real(rng, 0.0, static_cast<double>(span)));
  return k > hi ? hi : k;
}

}  // namespace

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

double dense_determinant(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("dense_determinant: matrix must be square");
  if (n < 1 || n > 64) throw std::invalid_argument("dense_determinant: size must be in [1, 64]");
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);

  Eigen::MatrixXd a = m;
  double det = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    for (Eigen::Index i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
    if (a(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      a.row(pivot).swap(a.row(k));
      det = -det;
    }
    det *= a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double factor = a(i, k) / a(k, k);
      a.row(i).tail(n - k) -= factor * a.row(k).tail(n - k);
    }
  }
  return det;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::domain_error("log_grid: need 0 < lo < hi");
  if (points < 2) throw std::invalid_argument("log_grid: need at least two points");
  std::vector<double> grid(points);
  const double ratio = hi / lo;
  for (int i = 0; i < points; ++i)
    grid[i] = lo * std::pow(ratio, static_cast<double>(i) / (points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

double raw_ode_bracket(const dkp::PotentialParams& p, double m_mass, int j, dkp::SectorId s,
                       double e_squared, double r) {
  if (!(r > 0.0)) throw std::domain_error("raw_ode_bracket: radius must be positive");
  const double jj = static_cast<double>(j) * (j + 1);
  const double a_r = p.x_r / r + p.y_r / (r * r) + p.z_r;
  const double da_r = -p.x_r / (r * r) - 2.0 * p.y_r / (r * r * r);
  const double common = e_squared - m_mass * m_mass - jj / (r * r) - a_r * a_r;
  switch (s) {
    case dkp::SectorId::F0Normal: {
      const double a_0 = p.x_0 / r + p.y_0 / (r * r) + p.z_0;
      return common - da_r + a_0 * a_0;
    }
    case dkp::SectorId::H0Abnormal:
      return common + da_r;
    case dkp::SectorId::PhiAbnormal:
      return common - da_r - a_r / r;
  }
  return 0.0;
}

ResidualReport ode_residual(dkp::SectorId s, const dkp::PotentialParams& p, double m_mass, int j,
                            double energy, const dkp::RadialSolution& sol,
                            const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("ode_residual: empty grid");
  bool nonzero = false;
  for (double c : sol.polynomial.coefficients) nonzero = nonzero || c != 0.0;
  if (!nonzero) throw std::invalid_argument("ode_residual: zero polynomial (psi == 0 is trivial)");

  ResidualReport report;
  report.grid = grid;
  const double e2 = energy * energy;
  for (double r : grid) {
    if (!(r > 0.0)) throw std::domain_error("ode_residual: radii must be positive");
    const qes::SolutionValues v = qes::evaluate_solution(sol.algebraization, sol.polynomial, r);
    const double bracket = raw_ode_bracket(p, m_mass, j, s, e2, r);
    const double forcing = bracket * v.psi;
    const double scale = std::max({std::abs(v.d2psi), std::abs(forcing), 1e-30});
    const double rel = std::abs(v.d2psi + forcing) / scale;
    if (rel > report.max_relative_residual) {
      report.max_relative_residual = rel;
      report.worst_radius = r;
    }
  }
  return report;
}

bool commutator_audit(const qes::GeneratorMatrices& g) {
  const RationalMatrix plus_minus = commutator(g.j_plus, g.j_minus) + Rational(2) * g.j_zero;
  const RationalMatrix plus_zero = commutator(g.j_plus, g.j_zero) + g.j_plus;
  const RationalMatrix minus_zero = commutator(g.j_minus, g.j_zero) - g.j_minus;
  return plus_minus.is_zero() && plus_zero.is_zero() && minus_zero.is_zero();
}

double operator_equivalence(const qes::Algebraization& alg) {
  const Eigen::MatrixXd sum = qes::qes_hamiltonian_matrix(alg) + qes::tilde_h_matrix(alg);
  return sum.cwiseAbs().maxCoeff();
}

qes::Algebraization random_quantized_algebraization(std::mt19937_64& rng, int n) {
  qes::Algebraization alg;
  alg.n = n;
  alg.eta = uniform_real(rng, -2.0, 0.8);
  alg.sqrt_minus_alpha = uniform_real(rng, 0.1, 2.0);
  alg.sqrt_minus_sigma = uniform_real(rng, 0.1, 2.0);
  alg.b = uniform_real(rng, -5.0, 5.0);
  const double beta = 2.0 * (n + 1.0 - alg.eta) * alg.sqrt_minus_alpha;
  alg.a = 2.0 * (1.0 - alg.eta) * alg.sqrt_minus_alpha - beta;
  return alg;
}

SectorDraw random_admissible_draw(std::mt19937_64& rng, dkp::SectorId s, int n_max) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    SectorDraw draw;
    draw.j = pick_int(rng, 0, 3);
    draw.n = pick_int(rng, 0, n_max);
    dkp::PotentialParams& p = draw.params;
    double epsilon2 = 0.0;

    switch (s) {
      case dkp::SectorId::F0Normal: {
        p.y_r = uniform_real(rng, 0.5, 3.0);
        p.y_0 = uniform_real(rng, -0.8, 0.8) * p.y_r;
        p.x_0 = uniform_real(rng, -2.0, 2.0);
        p.z_r = uniform_real(rng, 0.1, 2.0);
        p.z_0 = uniform_real(rng, -1.0, 1.0);
        const double eta_target = uniform_real(rng, -3.0, 0.7);
        const double sbar = std::sqrt(p.y_r * p.y_r - p.y_0 * p.y_0);
        p.x_r = (p.x_0 * p.y_0 + p.y_r - eta_target * sbar) / p.y_r;
        const double beta = 2.0 * (p.x_0 * p.z_0 - p.x_r * p.z_r);
        if (!(beta > 0.0)) continue;
        const double decay = beta / (2.0 * (draw.n + 1.0 - eta_target));
        epsilon2 = decay * decay + p.z_0 * p.z_0 - p.z_r * p.z_r;
        break;
      }
      case dkp::SectorId::H0Abnormal: {
        p.x_r = uniform_real(rng, -1.8, -0.1);
        p.z_r = uniform_real(rng, 0.2, 2.0);
        p.y_r = uniform_real(rng, 0.3, 3.0);
        const double decay = -p.x_r * p.z_r / (draw.n + p.x_r + 2.0);
        epsilon2 = p.z_r * p.z_r - decay * decay;
        break;
      }
      case dkp::SectorId::PhiAbnormal: {
        p.x_r = uniform_real(rng, -0.45, -0.05);
        p.z_r = uniform_real(rng, -1.5, -0.1);
        p.y_r = uniform_real(rng, 0.3, 3.0);
        const double decay = dkp::phi_decay_root(p, draw.n);
        epsilon2 = p.z_r * p.z_r - decay * decay;
        break;
      }
    }

    // Pick a mass that keeps the energy pair real: F0 needs M^2 >= eps^2,
    // the abnormal sectors need M^2 >= -eps^2.
    const double floor2 = (s == dkp::SectorId::F0Normal) ? std::max(epsilon2, 0.0)
                                                         : std::max(-epsilon2, 0.0);
    draw.m_mass = std::sqrt(floor2) + uniform_real(rng, 0.3, 1.5);
    return draw;
  }
  throw std::logic_error("random_admissible_draw: sampler failed to find an admissible point");
}

}  // namespace dkpqes::oracle
