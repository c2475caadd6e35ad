#include "dkpqes/dkp_sectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dkpqes::dkp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_common(double m_mass, int j, int n) {
  if (!(m_mass > 0.0) || !std::isfinite(m_mass))
    throw std::invalid_argument("dkp: mass must be positive and finite");
  if (j < 0) throw std::invalid_argument("dkp: angular momentum j must be non-negative");
  if (n < 0) throw std::invalid_argument("dkp: level n must be non-negative");
}

// eta on the y_r > 0 branch, where sqrt(-sigma) is the positive root.
double sector_eta(const PotentialParams& p, SectorId s) {
  switch (s) {
    case SectorId::F0Normal:
      return (p.x_0 * p.y_0 - p.x_r * p.y_r + p.y_r) / std::sqrt(p.y_r * p.y_r - p.y_0 * p.y_0);
    case SectorId::H0Abnormal:
      return -(p.x_r + 1.0);
    case SectorId::PhiAbnormal:
      return 0.5 - p.x_r;
  }
  return kNaN;
}

double sector_beta(const PotentialParams& p, SectorId s) {
  switch (s) {
    case SectorId::F0Normal:
      return 2.0 * (p.x_0 * p.z_0 - p.x_r * p.z_r);
    case SectorId::H0Abnormal:
      return -2.0 * p.x_r * p.z_r;
    case SectorId::PhiAbnormal:
      return -(2.0 * p.x_r + 1.0) * p.z_r;
  }
  return kNaN;
}

// E^2 once the decay rate sqrt(-alpha) is fixed by quantization.
double energy_squared_from_decay(const PotentialParams& p, double m_mass, SectorId s, double decay) {
  const double m2 = m_mass * m_mass;
  if (s == SectorId::F0Normal) return m2 - (decay * decay + p.z_0 * p.z_0 - p.z_r * p.z_r);
  return m2 + p.z_r * p.z_r - decay * decay;
}

}  // namespace

const char* to_string(SectorId s) {
  switch (s) {
    case SectorId::F0Normal: return "F0Normal";
    case SectorId::H0Abnormal: return "H0Abnormal";
    case SectorId::PhiAbnormal: return "PhiAbnormal";
  }
  return "?";
}

SectorId sector_from_string(std::string_view name) {
  if (name == "F0Normal" || name == "F0") return SectorId::F0Normal;
  if (name == "H0Abnormal" || name == "H0") return SectorId::H0Abnormal;
  if (name == "PhiAbnormal" || name == "phi" || name == "Phi") return SectorId::PhiAbnormal;
  throw std::invalid_argument("unknown sector name: " + std::string(name));
}

bool is_abnormal(SectorId s) { return s != SectorId::F0Normal; }

const char* to_string(FreeParameter p) {
  switch (p) {
    case FreeParameter::XR: return "x_r";
    case FreeParameter::YR: return "y_r";
    case FreeParameter::ZR: return "z_r";
    case FreeParameter::X0: return "x_0";
    case FreeParameter::Y0: return "y_0";
    case FreeParameter::Z0: return "z_0";
  }
  return "?";
}

FreeParameter free_parameter_from_string(std::string_view name) {
  if (name == "x_r") return FreeParameter::XR;
  if (name == "y_r") return FreeParameter::YR;
  if (name == "z_r") return FreeParameter::ZR;
  if (name == "x_0") return FreeParameter::X0;
  if (name == "y_0") return FreeParameter::Y0;
  if (name == "z_0") return FreeParameter::Z0;
  throw std::invalid_argument("unknown free parameter: " + std::string(name));
}

double get_parameter(const PotentialParams& p, FreeParameter which) {
  switch (which) {
    case FreeParameter::XR: return p.x_r;
    case FreeParameter::YR: return p.y_r;
    case FreeParameter::ZR: return p.z_r;
    case FreeParameter::X0: return p.x_0;
    case FreeParameter::Y0: return p.y_0;
    case FreeParameter::Z0: return p.z_0;
  }
  return kNaN;
}

PotentialParams with_parameter(PotentialParams p, FreeParameter which, double value) {
  switch (which) {
    case FreeParameter::XR: p.x_r = value; break;
    case FreeParameter::YR: p.y_r = value; break;
    case FreeParameter::ZR: p.z_r = value; break;
    case FreeParameter::X0: p.x_0 = value; break;
    case FreeParameter::Y0: p.y_0 = value; break;
    case FreeParameter::Z0: p.z_0 = value; break;
  }
  return p;
}

KratzerCoefficients kratzer_from_physical(const KratzerPhysical& k) {
  if (!(k.well_depth > 0.0) || !(k.equilibrium_radius > 0.0))
    throw std::domain_error("kratzer_from_physical: well depth and equilibrium radius must be positive");
  KratzerCoefficients c;
  c.x = -2.0 * k.well_depth * k.equilibrium_radius;
  c.y = k.well_depth * k.equilibrium_radius * k.equilibrium_radius;
  c.z = k.well_depth;
  return c;
}

double well_depth_from_coefficients(double x, double y) {
  if (!(y > 0.0)) throw std::domain_error("well_depth_from_coefficients: y must be positive");
  return x * x / (4.0 * y);
}

qes::InverseQuarticCoefficients sector_coefficients(const PotentialParams& p, double m_mass,
                                                    double e_squared, int j, SectorId s) {
  if (j < 0) throw std::invalid_argument("sector_coefficients: j must be non-negative");
  if (is_abnormal(s) && (p.x_0 != 0.0 || p.y_0 != 0.0 || p.z_0 != 0.0))
    throw SectorConstraintViolated("sector_coefficients: abnormal sectors require x_0 = y_0 = z_0 = 0");

  const double jj = static_cast<double>(j) * (j + 1);
  const double m2 = m_mass * m_mass;
  qes::InverseQuarticCoefficients c;
  switch (s) {
    case SectorId::F0Normal:
      c.alpha = e_squared - m2 + p.z_0 * p.z_0 - p.z_r * p.z_r;
      c.beta = 2.0 * (p.x_0 * p.z_0 - p.x_r * p.z_r);
      c.omega = 2.0 * (p.y_0 * p.z_0 - p.y_r * p.z_r) - jj + p.x_r + p.x_0 * p.x_0 - p.x_r * p.x_r;
      c.delta = 2.0 * (p.x_0 * p.y_0 - p.x_r * p.y_r + p.y_r);
      c.sigma = p.y_0 * p.y_0 - p.y_r * p.y_r;
      break;
    case SectorId::H0Abnormal:
      c.alpha = e_squared - m2 - p.z_r * p.z_r;
      c.beta = -2.0 * p.x_r * p.z_r;
      c.omega = -(jj + p.x_r * (p.x_r + 1.0) + 2.0 * p.y_r * p.z_r);
      c.delta = -2.0 * (p.x_r + 1.0) * p.y_r;
      c.sigma = -p.y_r * p.y_r;
      break;
    case SectorId::PhiAbnormal:
      c.alpha = e_squared - m2 - p.z_r * p.z_r;
      c.beta = -(2.0 * p.x_r + 1.0) * p.z_r;
      c.omega = -(jj + p.x_r * p.x_r + 2.0 * p.y_r * p.z_r);
      c.delta = (1.0 - 2.0 * p.x_r) * p.y_r;
      c.sigma = -p.y_r * p.y_r;
      break;
  }
  return c;
}

const char* to_string(EnergyStatus s) {
  switch (s) {
    case EnergyStatus::RealPair: return "RealPair";
    case EnergyStatus::ComplexEnergy: return "ComplexEnergy";
    case EnergyStatus::NoRealSpectrum: return "NoRealSpectrum";
  }
  return "?";
}

double closed_form_epsilon_squared(const PotentialParams& p, SectorId s, int n) {
  if (n < 0) throw std::invalid_argument("closed_form_epsilon_squared: n must be non-negative");
  switch (s) {
    case SectorId::F0Normal: {
      const double s2 = p.y_r * p.y_r - p.y_0 * p.y_0;
      if (!(s2 > 0.0))
        throw qes::NonAlgebraizable("closed_form_epsilon_squared: needs |y_r| > |y_0|");
      const double denom = p.x_0 * p.y_0 - p.x_r * p.y_r + p.y_r - (n + 1.0) * std::sqrt(s2);
      const double ratio = (p.x_r * p.z_r - p.x_0 * p.z_0) / denom;
      return s2 * ratio * ratio - p.z_r * p.z_r + p.z_0 * p.z_0;
    }
    case SectorId::H0Abnormal: {
      const double ratio = p.x_r * p.z_r / (p.x_r + n + 2.0);
      return p.z_r * p.z_r - ratio * ratio;
    }
    case SectorId::PhiAbnormal: {
      const double s_root = phi_decay_root(p, n);
      return p.z_r * p.z_r - s_root * s_root;
    }
  }
  return kNaN;
}

double phi_decay_root(const PotentialParams& p, int n) {
  if (n < 0) throw std::invalid_argument("phi_decay_root: n must be non-negative");
  return -(2.0 * p.x_r + 1.0) * p.z_r / (2.0 * n + 2.0 * p.x_r + 1.0);
}

SectorSpectrumPoint energy_levels(const PotentialParams& p, double m_mass, int j, SectorId s, int n) {
  validate_common(m_mass, j, n);
  if (s == SectorId::F0Normal) {
    if (!(p.y_r * p.y_r > p.y_0 * p.y_0))
      throw qes::NonAlgebraizable("energy_levels: normal sector needs |y_r| > |y_0|");
  } else if (!(p.y_r > 0.0)) {
    throw qes::NonAlgebraizable("energy_levels: abnormal sectors need y_r > 0");
  }

  SectorSpectrumPoint point;
  point.sector = s;
  point.n = n;
  point.eta = sector_eta(p, s);
  const double denom = n + 1.0 - point.eta;
  point.sqrt_minus_alpha = sector_beta(p, s) / (2.0 * denom);
  point.epsilon_squared = closed_form_epsilon_squared(p, s, n);

  const double e2 = (s == SectorId::F0Normal) ? m_mass * m_mass - point.epsilon_squared
                                              : m_mass * m_mass + point.epsilon_squared;
  if (s == SectorId::PhiAbnormal && !(phi_decay_root(p, n) > 0.0)) {
    point.status = EnergyStatus::NoRealSpectrum;
    point.energy = kNaN;
  } else if (std::isfinite(e2) && e2 >= 0.0) {
    point.status = EnergyStatus::RealPair;
    point.energy = std::sqrt(e2);
  } else {
    point.status = EnergyStatus::ComplexEnergy;
    point.energy = kNaN;
  }

  AdmissibilityReport rep = admissibility(p, m_mass, j, s, n);
  point.admissible = rep.admissible;
  point.failures = std::move(rep.failures);
  return point;
}

AdmissibilityReport admissibility(const PotentialParams& p, double m_mass, int j, SectorId s, int n) {
  AdmissibilityReport rep;
  if (!(m_mass > 0.0) || !std::isfinite(m_mass) || j < 0 || n < 0) {
    rep.failures.push_back("invalid mass/j/n inputs");
    return rep;
  }

  const bool sigma_ok = (s == SectorId::F0Normal) ? (p.y_r * p.y_r > p.y_0 * p.y_0) : (p.y_r > 0.0);
  if (!sigma_ok) {
    rep.failures.push_back(s == SectorId::F0Normal ? "sigma >= 0 (requires |y_r| > |y_0|)"
                                                   : "sigma >= 0 (requires y_r > 0)");
    return rep;
  }

  const double eta = sector_eta(p, s);
  if (!(1.0 - eta > 0.0)) rep.failures.push_back("1 - eta <= 0 (not normalizable at the origin)");

  const double decay = sector_beta(p, s) / (2.0 * (n + 1.0 - eta));
  if (!std::isfinite(decay) || decay == 0.0)
    rep.failures.push_back("alpha >= 0 at the computed energy");
  if (!(decay > 0.0))
    rep.failures.push_back("sqrt(-alpha) <= 0 at quantization (beta positivity fails)");

  const double e2 = energy_squared_from_decay(p, m_mass, s, decay);
  if (!std::isfinite(e2) || e2 < 0.0) rep.failures.push_back("E^2 < 0 (no real energy pair)");

  rep.admissible = rep.failures.empty();
  return rep;
}

qes::Algebraization quantized_algebraization(const PotentialParams& p, int j, SectorId s, int n) {
  if (n < 0) throw std::invalid_argument("quantized_algebraization: n must be non-negative");
  // alpha plays no role here: b depends on the potential, j, and n only.
  const qes::InverseQuarticCoefficients c = sector_coefficients(p, 1.0, 0.0, j, s);
  if (!(c.sigma < 0.0))
    throw qes::NonAlgebraizable("quantized_algebraization: sigma must be negative");

  qes::Algebraization alg;
  alg.n = n;
  alg.sqrt_minus_sigma = std::sqrt(-c.sigma);
  alg.eta = c.delta / (2.0 * alg.sqrt_minus_sigma);
  alg.sqrt_minus_alpha = qes::solve_quantization(c.beta, alg.eta, n);
  alg.a = 2.0 * (1.0 - alg.eta) * alg.sqrt_minus_alpha - c.beta;
  alg.b = alg.eta * (1.0 - alg.eta) + 2.0 * alg.sqrt_minus_alpha * alg.sqrt_minus_sigma - c.omega;
  return alg;
}

double pipeline_energy_squared(const PotentialParams& p, double m_mass, SectorId s, int n) {
  if (!(m_mass > 0.0)) throw std::invalid_argument("pipeline_energy_squared: mass must be positive");
  const qes::InverseQuarticCoefficients c = sector_coefficients(p, m_mass, 0.0, 0, s);
  if (!(c.sigma < 0.0))
    throw qes::NonAlgebraizable("pipeline_energy_squared: sigma must be negative");
  const double sms = std::sqrt(-c.sigma);
  const double eta = c.delta / (2.0 * sms);
  const double decay = qes::solve_quantization(c.beta, eta, n);
  return energy_squared_from_decay(p, m_mass, s, decay);
}

RadialSolution trial_solution(const PotentialParams& p, double m_mass, int j, SectorId s, int n,
                              double energy) {
  validate_common(m_mass, j, n);
  if (!std::isfinite(energy)) throw std::invalid_argument("dkp: energy must be finite");

  const qes::InverseQuarticCoefficients c = sector_coefficients(p, m_mass, energy * energy, j, s);
  const qes::Algebraization alg = qes::algebraize(c, n);

  RadialSolution sol;
  sol.sector = s;
  sol.n = n;
  sol.energy = energy;
  sol.prefactor_exponent = 1.0 - alg.eta;
  const double m2 = m_mass * m_mass;
  sol.decay_rate = (s == SectorId::F0Normal)
                       ? std::sqrt(m2 - energy * energy + p.z_r * p.z_r - p.z_0 * p.z_0)
                       : std::sqrt(m2 - energy * energy + p.z_r * p.z_r);
  sol.inner_decay = (s == SectorId::F0Normal) ? std::sqrt(p.y_r * p.y_r - p.y_0 * p.y_0) : p.y_r;
  sol.polynomial = qes::recursion_coefficients(alg);
  sol.algebraization = alg;

  // The forward recursion pins c_0 = 1 and pushes any residual singularity of
  // the coefficient system into the tail, which amplifies tiny offsets in a
  // bisected constraint root. When the system really is singular to tolerance,
  // the null vector of the coefficient matrix spreads that error evenly, so
  // use it for the returned polynomial (same c_0 = 1 normalization).
  if (n >= 1 && std::abs(qes::normalized_tridiagonal_determinant(alg)) <= qes::kZeroTol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(qes::quantization_matrix(alg), Eigen::ComputeFullV);
    const Eigen::VectorXd v = svd.matrixV().col(n);
    if (std::abs(v[0]) > 1e-8 * v.cwiseAbs().maxCoeff()) {
      for (int m = 0; m <= n; ++m) sol.polynomial.coefficients[static_cast<size_t>(m)] = v[m] / v[0];
      const std::vector<double>& cc = sol.polynomial.coefficients;
      sol.polynomial.tail_residual =
          ((alg.b + n * (2.0 * alg.eta - n - 1.0)) * cc[static_cast<size_t>(n)] -
           2.0 * alg.sqrt_minus_alpha * cc[static_cast<size_t>(n) - 1]) /
          (2.0 * (n + 1.0) * alg.sqrt_minus_sigma);
    }
  }
  return sol;
}

RadialSolution wavefunction(const PotentialParams& p, double m_mass, int j, SectorId s, int n,
                            double energy) {
  validate_common(m_mass, j, n);
  if (!std::isfinite(energy)) throw std::invalid_argument("dkp: energy must be finite");

  const qes::InverseQuarticCoefficients c = sector_coefficients(p, m_mass, energy * energy, j, s);
  const qes::Algebraization alg = qes::algebraize(c, n);
  if (!alg.quantized())
    throw qes::QuantizationViolated("wavefunction: (E, n) violates the quantization condition");
  if (!(std::abs(qes::normalized_tridiagonal_determinant(alg)) <= qes::kZeroTol))
    throw ConstraintViolated("wavefunction: determinant constraint fails at this level");
  return trial_solution(p, m_mass, j, s, n, energy);
}

std::vector<double> solve_determinant_constraint(const PotentialParams& p, double m_mass, int j,
                                                 SectorId s, int n, FreeParameter which, double lo,
                                                 double hi) {
  validate_common(m_mass, j, n);
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
    throw std::invalid_argument("solve_determinant_constraint: need a finite interval with lo <= hi");

  const auto objective = [&](double value) -> double {
    try {
      const PotentialParams trial = with_parameter(p, which, value);
      return qes::normalized_tridiagonal_determinant(quantized_algebraization(trial, j, s, n));
    } catch (const std::exception&) {
      return kNaN;
    }
  };

  const int samples = kConstraintGridSamples;
  const double step = (hi - lo) / (samples - 1);
  std::vector<double> grid(samples), value(samples);
  bool any_finite = false;
  for (int i = 0; i < samples; ++i) {
    grid[i] = (i == samples - 1) ? hi : lo + i * step;
    value[i] = objective(grid[i]);
    any_finite = any_finite || std::isfinite(value[i]);
  }
  if (!any_finite)
    throw InadmissibleThroughoutInterval(
        "solve_determinant_constraint: no algebraizable point in the interval");

  std::vector<double> roots;
  for (int i = 0; i < samples; ++i)
    if (std::isfinite(value[i]) && value[i] == 0.0) roots.push_back(grid[i]);

  for (int i = 0; i + 1 < samples; ++i) {
    if (!std::isfinite(value[i]) || !std::isfinite(value[i + 1])) continue;
    if (!(value[i] * value[i + 1] < 0.0)) continue;
    double a = grid[i], b = grid[i + 1], fa = value[i];
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      const double fm = objective(mid);
      if (!std::isfinite(fm)) break;
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if ((fm > 0.0) == (fa > 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }

  std::sort(roots.begin(), roots.end());
  std::vector<double> unique_roots;
  for (double r : roots) {
    if (unique_roots.empty() ||
        r - unique_roots.back() > 1e3 * kRootRefineTol * std::max(1.0, std::abs(r)))
      unique_roots.push_back(r);
  }
  if (unique_roots.empty())
    throw NoRootInInterval("solve_determinant_constraint: no sign change in the interval");
  return unique_roots;
}

}  // namespace dkpqes::dkp
