#include "dkpqes/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "dkpqes/oracles.hpp"

namespace dkpqes::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using nlohmann::json;

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config: '" + key + "' must be a number");
  return v.get<double>();
}

int as_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config: '" + key + "' must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config: '" + key + "' must be a string");
  return v.get<std::string>();
}

struct LevelRange {
  int lo = 0;
  int hi = 0;
};

std::optional<LevelRange> level_range(const RunConfig& cfg, std::ostream& err) {
  if (cfg.n) return LevelRange{*cfg.n, *cfg.n};
  if (cfg.n_min && cfg.n_max) return LevelRange{*cfg.n_min, *cfg.n_max};
  err << "config: level range required ('n' or 'n_min'/'n_max')\n";
  return std::nullopt;
}

std::string joined(const std::vector<std::string>& parts) {
  std::string text;
  for (const std::string& p : parts) {
    if (!text.empty()) text += "; ";
    text += p;
  }
  return text;
}

int pick_level(std::mt19937_64& rng, int n_max) {
  const int n = static_cast<int>(oracle::uniform_real(rng, 0.0, n_max + 1.0));
  return n > n_max ? n_max : n;
}

}  // namespace

std::vector<VerifyCase> verify_cases(dkp::SectorId sector) {
  switch (sector) {
    case dkp::SectorId::F0Normal:
      return {
          {sector, {-0.5, 1.0, 1.0, 1.0, -0.8, 0.5}, 1, dkp::FreeParameter::X0, 2.3, 2.5, 5},
          {sector, {-0.5, 1.0, 1.0, 1.0, -0.8, 0.5}, 1, dkp::FreeParameter::X0, 1.2, 1.6, 6},
      };
    case dkp::SectorId::H0Abnormal:
      return {{sector, {-0.5, 1.0, 1.0, 0.0, 0.0, 0.0}, 0, dkp::FreeParameter::YR, 0.1, 1.0, 6}};
    case dkp::SectorId::PhiAbnormal:
      return {{sector, {-0.05, 1.0, -2.0, 0.0, 0.0, 0.0}, 0, dkp::FreeParameter::YR, 0.1, 10.0, 6}};
  }
  return {};
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");

  RunConfig cfg;
  bool has_xyz = false, has_depth = false, has_radius = false, has_structure = false;
  dkp::KratzerPhysical kratzer;
  heun::RationalPotential structure;

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    const json& v = it.value();
    if (key == "sector") {
      cfg.sector = dkp::sector_from_string(as_string(v, key));
    } else if (key == "x_r") {
      cfg.params.x_r = as_number(v, key);
      has_xyz = true;
    } else if (key == "y_r") {
      cfg.params.y_r = as_number(v, key);
      has_xyz = true;
    } else if (key == "z_r") {
      cfg.params.z_r = as_number(v, key);
      has_xyz = true;
    } else if (key == "x_0") {
      cfg.params.x_0 = as_number(v, key);
    } else if (key == "y_0") {
      cfg.params.y_0 = as_number(v, key);
    } else if (key == "z_0") {
      cfg.params.z_0 = as_number(v, key);
    } else if (key == "D_e") {
      kratzer.well_depth = as_number(v, key);
      has_depth = true;
    } else if (key == "r_e") {
      kratzer.equilibrium_radius = as_number(v, key);
      has_radius = true;
    } else if (key == "M") {
      cfg.mass = as_number(v, key);
    } else if (key == "j") {
      cfg.j = as_integer(v, key);
    } else if (key == "n") {
      cfg.n = as_integer(v, key);
    } else if (key == "n_min") {
      cfg.n_min = as_integer(v, key);
    } else if (key == "n_max") {
      cfg.n_max = as_integer(v, key);
    } else if (key == "energy") {
      cfg.energy = as_number(v, key);
    } else if (key == "free_parameter") {
      cfg.free_parameter = dkp::free_parameter_from_string(as_string(v, key));
    } else if (key == "lo") {
      cfg.lo = as_number(v, key);
    } else if (key == "hi") {
      cfg.hi = as_number(v, key);
    } else if (key == "scan_parameter") {
      cfg.scan_parameter = dkp::free_parameter_from_string(as_string(v, key));
    } else if (key == "points") {
      cfg.points = as_integer(v, key);
    } else if (key == "r_min") {
      cfg.r_min = as_number(v, key);
    } else if (key == "r_max") {
      cfg.r_max = as_number(v, key);
    } else if (key == "r_points") {
      cfg.r_points = as_integer(v, key);
    } else if (key == "sectors") {
      if (!v.is_array()) throw ConfigError("config: 'sectors' must be an array of sector names");
      for (const json& entry : v) cfg.verify_sectors.push_back(dkp::sector_from_string(as_string(entry, key)));
    } else if (key == "verify_n_max") {
      cfg.verify_n_max = as_integer(v, key);
    } else if (key == "seed") {
      if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0))
        throw ConfigError("config: 'seed' must be a non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "quantization_perturbation") {
      cfg.quantization_perturbation = as_number(v, key);
    } else if (key == "constant") {
      structure.constant = as_number(v, key);
      has_structure = true;
    } else if (key == "linear") {
      structure.linear = as_number(v, key);
      has_structure = true;
    } else if (key == "quadratic") {
      structure.quadratic = as_number(v, key);
      has_structure = true;
    } else if (key == "exponential") {
      if (!v.is_boolean()) throw ConfigError("config: 'exponential' must be a boolean");
      structure.exponential_marker = v.get<bool>();
      has_structure = true;
    } else if (key == "poles") {
      if (!v.is_array()) throw ConfigError("config: 'poles' must be an array");
      for (const json& entry : v) {
        if (!entry.is_object()) throw ConfigError("config: each pole must be an object");
        heun::PoleTerms pole;
        for (auto pit = entry.begin(); pit != entry.end(); ++pit) {
          if (pit.key() == "location") {
            pole.location = as_number(pit.value(), "location");
          } else if (pit.key() == "coefficients") {
            const json& coeffs = pit.value();
            if (!coeffs.is_array() || coeffs.empty() || coeffs.size() > 4)
              throw ConfigError("config: pole 'coefficients' must hold 1..4 numbers");
            for (size_t k = 0; k < coeffs.size(); ++k)
              pole.inverse_coefficients[k] = as_number(coeffs[k], "coefficients");
          } else {
            throw ConfigError("config: unknown pole key '" + pit.key() + "'");
          }
        }
        structure.poles.push_back(pole);
      }
      has_structure = true;
    } else if (key == "out") {
      cfg.out = as_string(v, key);
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  if (has_depth != has_radius)
    throw ConfigError("config: 'D_e' and 'r_e' must be given together");
  if (has_depth && has_xyz)
    throw ConfigError("config: give either x_r/y_r/z_r or D_e/r_e, not both");
  if (has_depth) {
    try {
      const dkp::KratzerCoefficients c = dkp::kratzer_from_physical(kratzer);
      cfg.params.x_r = c.x;
      cfg.params.y_r = c.y;
      cfg.params.z_r = c.z;
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }

  if (!(cfg.mass > 0.0) || !std::isfinite(cfg.mass)) throw ConfigError("config: 'M' must be positive");
  if (cfg.j < 0) throw ConfigError("config: 'j' must be non-negative");
  for (const auto& level : {cfg.n, cfg.n_min, cfg.n_max})
    if (level && *level < 0) throw ConfigError("config: levels must be non-negative");
  if (cfg.n && (cfg.n_min || cfg.n_max))
    throw ConfigError("config: give 'n' or 'n_min'/'n_max', not both");
  if (static_cast<bool>(cfg.n_min) != static_cast<bool>(cfg.n_max))
    throw ConfigError("config: 'n_min' and 'n_max' must be given together");
  if (cfg.n_min && *cfg.n_min > *cfg.n_max) throw ConfigError("config: empty n range");
  if (cfg.points && *cfg.points < 0) throw ConfigError("config: 'points' must be non-negative");
  if (!(cfg.r_min > 0.0) || !(cfg.r_max > cfg.r_min))
    throw ConfigError("config: radial grid needs 0 < r_min < r_max");
  if (cfg.r_points < 2) throw ConfigError("config: 'r_points' must be at least 2");
  if (cfg.verify_n_max < 0) throw ConfigError("config: 'verify_n_max' must be non-negative");
  if (!std::isfinite(cfg.quantization_perturbation))
    throw ConfigError("config: 'quantization_perturbation' must be finite");
  if (has_structure) cfg.potential_structure = structure;
  return cfg;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.sector) {
    err << "spectrum: 'sector' required in config\n";
    return kExitUsage;
  }
  const auto range = level_range(cfg, err);
  if (!range) return kExitUsage;

  std::vector<dkp::SectorSpectrumPoint> rows;
  try {
    for (int n = range->lo; n <= range->hi; ++n)
      rows.push_back(dkp::energy_levels(cfg.params, cfg.mass, cfg.j, *cfg.sector, n));
  } catch (const qes::NonAlgebraizable& e) {
    err << e.what() << "\n";
    return kExitInadmissible;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  out << "sector " << dkp::to_string(*cfg.sector) << ", M = " << cfg.mass << ", j = " << cfg.j
      << "\n";
  out << std::left << std::setw(4) << "n" << std::setw(20) << "epsilon2" << std::setw(20)
      << "E_plus" << std::setw(20) << "E_minus" << std::setw(16) << "status" << "admissible"
      << "\n";
  out << std::setprecision(12);
  bool any_admissible = false;
  for (const auto& row : rows) {
    const bool real = row.status == dkp::EnergyStatus::RealPair;
    const double e_plus = real ? row.energy : kNaN;
    const double e_minus = real ? -row.energy : kNaN;
    out << std::setw(4) << row.n << std::setw(20) << row.epsilon_squared << std::setw(20) << e_plus
        << std::setw(20) << e_minus << std::setw(16) << dkp::to_string(row.status)
        << (row.admissible ? "yes" : "no");
    if (!row.failures.empty()) out << "  [" << joined(row.failures) << "]";
    out << "\n";
    any_admissible = any_admissible || row.admissible;
  }
  return any_admissible ? kExitOk : kExitInadmissible;
}

int cmd_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.sector || !cfg.n) {
    err << "wavefunction: 'sector' and 'n' required in config\n";
    return kExitUsage;
  }

  try {
    double energy;
    if (cfg.energy) {
      energy = *cfg.energy;
    } else {
      const dkp::SectorSpectrumPoint point =
          dkp::energy_levels(cfg.params, cfg.mass, cfg.j, *cfg.sector, *cfg.n);
      if (point.status != dkp::EnergyStatus::RealPair) {
        err << "wavefunction: level has no real energy (" << dkp::to_string(point.status) << ")\n";
        return kExitInadmissible;
      }
      energy = point.energy;
    }

    const dkp::RadialSolution sol =
        dkp::wavefunction(cfg.params, cfg.mass, cfg.j, *cfg.sector, *cfg.n, energy);
    out << "r,psi,dpsi,d2psi\n";
    for (double r : oracle::log_grid(cfg.r_min, cfg.r_max, cfg.r_points)) {
      const qes::SolutionValues v = qes::evaluate_solution(sol.algebraization, sol.polynomial, r);
      out << format_double(r) << ',' << format_double(v.psi) << ',' << format_double(v.dpsi) << ','
          << format_double(v.d2psi) << "\n";
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    // NonAlgebraizable, QuantizationViolated, ConstraintViolated: the
    // requested state does not exist for these parameters.
    err << e.what() << "\n";
    return kExitInadmissible;
  }
}

int cmd_constraint(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.sector || !cfg.n || !cfg.free_parameter || !cfg.lo || !cfg.hi) {
    err << "constraint: 'sector', 'n', 'free_parameter', 'lo', 'hi' required in config\n";
    return kExitUsage;
  }
  try {
    const std::vector<double> roots = dkp::solve_determinant_constraint(
        cfg.params, cfg.mass, cfg.j, *cfg.sector, *cfg.n, *cfg.free_parameter, *cfg.lo, *cfg.hi);
    out << "n,free_parameter,root,det_normalized\n";
    for (double root : roots) {
      double det = kNaN;
      try {
        const dkp::PotentialParams at_root = dkp::with_parameter(cfg.params, *cfg.free_parameter, root);
        det = qes::normalized_tridiagonal_determinant(
            dkp::quantized_algebraization(at_root, cfg.j, *cfg.sector, *cfg.n));
      } catch (const std::exception&) {
      }
      out << *cfg.n << ',' << dkp::to_string(*cfg.free_parameter) << ',' << format_double(root)
          << ',' << format_double(det) << "\n";
    }
    return kExitOk;
  } catch (const dkp::NoRootInInterval& e) {
    err << e.what() << "\n";
    return kExitNothingFound;
  } catch (const dkp::InadmissibleThroughoutInterval& e) {
    err << e.what() << "\n";
    return kExitInadmissible;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.sector || !cfg.scan_parameter || !cfg.lo || !cfg.hi || !cfg.points) {
    err << "scan: 'sector', 'scan_parameter', 'lo', 'hi', 'points' required in config\n";
    return kExitUsage;
  }
  const auto range = level_range(cfg, err);
  if (!range) return kExitUsage;
  if (*cfg.lo > *cfg.hi) {
    err << "scan: need lo <= hi\n";
    return kExitUsage;
  }

  const int points = *cfg.points;
  out << "n,param,epsilon2,E_plus,E_minus,det_normalized,admissible\n";
  for (int n = range->lo; n <= range->hi; ++n) {
    for (int i = 0; i < points; ++i) {
      const double value =
          points == 1 ? *cfg.lo : *cfg.lo + i * (*cfg.hi - *cfg.lo) / (points - 1);
      const dkp::PotentialParams p = dkp::with_parameter(cfg.params, *cfg.scan_parameter, value);
      double eps2 = kNaN, e_plus = kNaN, e_minus = kNaN, det = kNaN;
      int admissible = 0;
      try {
        const dkp::SectorSpectrumPoint point = dkp::energy_levels(p, cfg.mass, cfg.j, *cfg.sector, n);
        eps2 = point.epsilon_squared;
        if (point.status == dkp::EnergyStatus::RealPair) {
          e_plus = point.energy;
          e_minus = -point.energy;
        }
        admissible = point.admissible ? 1 : 0;
      } catch (const std::exception&) {
      }
      try {
        det = qes::normalized_tridiagonal_determinant(
            dkp::quantized_algebraization(p, cfg.j, *cfg.sector, n));
      } catch (const std::exception&) {
      }
      out << n << ',' << format_double(value) << ',' << format_double(eps2) << ','
          << format_double(e_plus) << ',' << format_double(e_minus) << ',' << format_double(det)
          << ',' << admissible << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  (void)err;
  bool all_pass = true;
  std::ostringstream detail;

  bool commutators_ok = true;
  for (int n = 0; n <= 10; ++n)
    commutators_ok = commutators_ok && oracle::commutator_audit(qes::build_generators(n));
  all_pass = all_pass && commutators_ok;
  out << (commutators_ok ? "PASS" : "FAIL") << " commutator audit: exact sl(2) relations for n <= 10\n";

  std::mt19937_64 rng(cfg.seed);
  double max_deviation = 0.0;
  double max_leak = 0.0;
  bool quantized_ok = true;
  for (int i = 0; i < 100; ++i) {
    qes::Algebraization alg = oracle::random_quantized_algebraization(rng, pick_level(rng, 10));
    alg.a += cfg.quantization_perturbation;
    quantized_ok = quantized_ok && alg.quantized();
    max_leak = std::max(max_leak, std::abs(qes::subspace_leak(alg)));
    max_deviation = std::max(max_deviation, oracle::operator_equivalence(alg));
  }
  const bool equivalence_ok = quantized_ok && max_deviation <= 1e-12;
  all_pass = all_pass && equivalence_ok;
  if (equivalence_ok) {
    out << "PASS operator equivalence: max entrywise deviation " << max_deviation
        << " over 100 samples\n";
  } else if (!quantized_ok) {
    out << "FAIL operator equivalence: invariant subspace leaks, |a + 2n sqrt(-alpha)| up to "
        << max_leak << "\n";
  } else {
    out << "FAIL operator equivalence: max entrywise deviation " << max_deviation << "\n";
  }

  double max_det_mismatch = 0.0;
  for (int i = 0; i < 100; ++i) {
    const qes::Algebraization alg = oracle::random_quantized_algebraization(rng, pick_level(rng, 12));
    const double recurrence = qes::tridiagonal_determinant(alg);
    const double dense = oracle::dense_determinant(qes::quantization_matrix(alg));
    max_det_mismatch =
        std::max(max_det_mismatch, std::abs(recurrence - dense) / std::max(1.0, std::abs(dense)));
  }
  int duality_agreements = 0, duality_total = 0;
  for (const dkp::SectorId s :
       {dkp::SectorId::F0Normal, dkp::SectorId::H0Abnormal, dkp::SectorId::PhiAbnormal}) {
    for (int i = 0; i < 200; ++i) {
      const oracle::SectorDraw draw = oracle::random_admissible_draw(rng, s, 6);
      const qes::Algebraization alg = dkp::quantized_algebraization(draw.params, draw.j, s, draw.n);
      const qes::PolynomialSolution poly = qes::recursion_coefficients(alg);
      const bool tail_zero = poly.admissible();
      const bool det_zero = std::abs(qes::normalized_tridiagonal_determinant(alg)) <= qes::kZeroTol;
      ++duality_total;
      if (tail_zero == det_zero) ++duality_agreements;
    }
  }
  const bool duality_ok = max_det_mismatch <= 1e-10 && duality_agreements == duality_total;
  all_pass = all_pass && duality_ok;
  out << (duality_ok ? "PASS" : "FAIL") << " determinant duality: recurrence vs dense LU rel "
      << max_det_mismatch << ", tail/determinant agreement " << duality_agreements << "/"
      << duality_total << "\n";

  int eigenpairs = 0;
  double max_residual = 0.0;
  const std::vector<double> grid = oracle::log_grid();
  for (const dkp::SectorId s : cfg.verify_sectors) {
    for (const VerifyCase& scenario : verify_cases(s)) {
      for (int n = 0; n <= std::min(cfg.verify_n_max, scenario.n_cap); ++n) {
        std::vector<double> roots;
        try {
          roots = dkp::solve_determinant_constraint(scenario.params, cfg.mass, scenario.j, s, n,
                                                    scenario.free_param, scenario.lo, scenario.hi);
        } catch (const dkp::NoRootInInterval&) {
          continue;
        } catch (const dkp::InadmissibleThroughoutInterval&) {
          continue;
        }
        for (double root : roots) {
          const dkp::PotentialParams p = dkp::with_parameter(scenario.params, scenario.free_param, root);
          const dkp::SectorSpectrumPoint point = dkp::energy_levels(p, cfg.mass, scenario.j, s, n);
          if (point.status != dkp::EnergyStatus::RealPair || !point.admissible) continue;
          try {
            const dkp::RadialSolution sol =
                dkp::wavefunction(p, cfg.mass, scenario.j, s, n, point.energy);
            const oracle::ResidualReport report =
                oracle::ode_residual(s, p, cfg.mass, scenario.j, point.energy, sol, grid);
            ++eigenpairs;
            max_residual = std::max(max_residual, report.max_relative_residual);
          } catch (const std::exception&) {
            all_pass = false;
            detail << "FAIL residual case: " << dkp::to_string(s) << " n=" << n
                   << " root=" << root << " rejected by the wavefunction gates\n";
          }
        }
      }
    }
  }
  out << detail.str();
  if (cfg.verify_sectors.empty()) {
    out << "no sector cases configured (set 'sectors' in the config)\n";
    return all_pass ? kExitNothingFound : kExitVerifyFailed;
  }
  if (eigenpairs == 0) {
    out << "FAIL ode residuals: no admissible eigenpair found\n";
    return kExitNothingFound;
  }
  const bool residual_ok = max_residual < 1e-8;
  all_pass = all_pass && residual_ok;
  out << (residual_ok ? "PASS" : "FAIL") << " ode residuals: " << eigenpairs
      << " eigenpairs, max relative residual " << max_residual << "\n";

  out << (all_pass ? "verify: all checks passed\n" : "verify: failures detected\n");
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  heun::RationalPotential v;
  if (cfg.potential_structure) {
    v = *cfg.potential_structure;
  } else if (cfg.sector) {
    try {
      v = heun::from_inverse_quartic(
          dkp::sector_coefficients(cfg.params, cfg.mass, 0.0, cfg.j, *cfg.sector));
    } catch (const std::exception& e) {
      err << e.what() << "\n";
      return kExitInadmissible;
    }
  } else {
    err << "classify: provide a 'sector' or a potential structure ('poles', 'constant', ...)\n";
    return kExitUsage;
  }

  try {
    out << "class: " << heun::to_string(heun::classify(v)) << "\n";
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dkpqes::cli
