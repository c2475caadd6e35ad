#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dkpqes/cli.hpp"
#include "dkpqes/dkp_sectors.hpp"
#include "dkpqes/heun.hpp"
#include "dkpqes/oracles.hpp"
#include "dkpqes/qes_core.hpp"

// Acceptance gate: each criterion prints exactly one PASS/FAIL line and the
// process exits nonzero when any of them fails.

using namespace dkpqes;

namespace {

constexpr dkp::SectorId kSectors[] = {dkp::SectorId::F0Normal, dkp::SectorId::H0Abnormal,
                                      dkp::SectorId::PhiAbnormal};

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format(const char* fmt, ...) {
  char buffer[512];
  va_list args;
  va_start(args, fmt);
  vsnprintf(buffer, sizeof(buffer), fmt, args);
  va_end(args);
  return buffer;
}

int random_level(std::mt19937_64& rng, int n_max) {
  const int n = static_cast<int>(oracle::uniform_real(rng, 0.0, n_max + 0.999));
  return n > n_max ? n_max : n;
}

// 1. Exact sl(2) commutators in rational arithmetic for all n <= 10.
CriterionResult criterion_commutators() {
  const auto start = std::chrono::steady_clock::now();
  for (int n = 0; n <= 10; ++n) {
    if (!oracle::commutator_audit(qes::build_generators(n)))
      return {false, format("commutator identity broken at n = %d", n)};
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 1.0) return {false, format("runtime %.2f s exceeds the 1 s budget", elapsed)};
  return {true, format("sl(2) commutators exact for n <= 10 (%.3f s)", elapsed)};
}

// 2. Bilinear vs direct operator assembly to 1e-12 over 100 random draws.
CriterionResult criterion_operator_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const qes::Algebraization alg =
        oracle::random_quantized_algebraization(rng, random_level(rng, 10));
    worst = std::max(worst, oracle::operator_equivalence(alg));
  }
  if (worst > 1e-12) return {false, format("max entrywise deviation %.3e > 1e-12", worst)};
  const double elapsed = seconds_since(start);
  if (elapsed >= 5.0) return {false, format("runtime %.2f s exceeds the 5 s budget", elapsed)};
  return {true, format("max entrywise deviation %.3e over 100 draws, n <= 10 (%.3f s)", worst,
                       elapsed)};
}

// 3. Recursion tail <=> normalized determinant over 200 admissible draws per
//    sector (n <= 6), at constraint roots, and recurrence vs dense LU (n <= 12).
CriterionResult criterion_determinant_duality() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(103);
  int agreements = 0;
  for (dkp::SectorId s : kSectors) {
    for (int i = 0; i < 200; ++i) {
      const oracle::SectorDraw d = oracle::random_admissible_draw(rng, s, 6);
      const qes::Algebraization alg = dkp::quantized_algebraization(d.params, d.j, s, d.n);
      const bool tail_zero = qes::recursion_coefficients(alg).admissible();
      const bool det_zero = std::abs(qes::normalized_tridiagonal_determinant(alg)) <= qes::kZeroTol;
      if (tail_zero != det_zero)
        return {false, format("tail/determinant verdicts disagree (%s draw %d)", dkp::to_string(s),
                              i)};
      ++agreements;
    }
  }
  // Roots of the constraint exercise the both-zero branch of the equivalence.
  const dkp::PotentialParams h0{-0.5, 0.0, 1.0, 0.0, 0.0, 0.0};
  for (int n = 0; n <= 3; ++n) {
    const std::vector<double> roots = dkp::solve_determinant_constraint(
        h0, 1.0, 0, dkp::SectorId::H0Abnormal, n, dkp::FreeParameter::YR, 0.1, 10.0);
    for (double root : roots) {
      const qes::Algebraization alg = dkp::quantized_algebraization(
          dkp::with_parameter(h0, dkp::FreeParameter::YR, root), 0, dkp::SectorId::H0Abnormal, n);
      const bool tail_zero = qes::recursion_coefficients(alg).admissible();
      const bool det_zero = std::abs(qes::normalized_tridiagonal_determinant(alg)) <= qes::kZeroTol;
      if (!tail_zero || !det_zero)
        return {false, format("root of the n = %d constraint fails the duality", n)};
      ++agreements;
    }
  }
  double worst_rel = 0.0;
  for (int i = 0; i < 100; ++i) {
    const qes::Algebraization alg =
        oracle::random_quantized_algebraization(rng, random_level(rng, 12));
    const double rec = qes::tridiagonal_determinant(alg);
    const double dense = oracle::dense_determinant(qes::quantization_matrix(alg));
    worst_rel = std::max(worst_rel, std::abs(rec - dense) / std::max(1.0, std::abs(dense)));
  }
  if (worst_rel > 1e-10)
    return {false, format("recurrence vs dense LU relative deviation %.3e > 1e-10", worst_rel)};
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) return {false, format("runtime %.2f s exceeds the 10 s budget", elapsed)};
  return {true, format("%d duality agreements, LU deviation %.3e (%.3f s)", agreements, worst_rel,
                       elapsed)};
}

// 4. Raw-equation residuals of every gated eigenpair, plus energy sensitivity.
CriterionResult criterion_ode_residuals() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> grid = oracle::log_grid(0.05, 30.0, 60);
  int eigenpairs = 0;
  double worst = 0.0;
  double worst_inflation = std::numeric_limits<double>::infinity();
  for (dkp::SectorId s : kSectors) {
    for (const cli::VerifyCase& vc : cli::verify_cases(s)) {
      for (int n = 0; n <= vc.n_cap; ++n) {
        std::vector<double> roots;
        try {
          roots = dkp::solve_determinant_constraint(vc.params, 1.0, vc.j, s, n, vc.free_param,
                                                    vc.lo, vc.hi);
        } catch (const dkp::NoRootInInterval&) {
          continue;
        } catch (const dkp::InadmissibleThroughoutInterval&) {
          continue;
        }
        for (double root : roots) {
          const dkp::PotentialParams p = dkp::with_parameter(vc.params, vc.free_param, root);
          const dkp::SectorSpectrumPoint pt = dkp::energy_levels(p, 1.0, vc.j, s, n);
          if (pt.status != dkp::EnergyStatus::RealPair || !pt.admissible) continue;
          const dkp::RadialSolution sol = dkp::wavefunction(p, 1.0, vc.j, s, n, pt.energy);
          const double on_shell =
              oracle::ode_residual(s, p, 1.0, vc.j, pt.energy, sol, grid).max_relative_residual;
          const double off_shell =
              oracle::ode_residual(s, p, 1.0, vc.j, pt.energy + 1e-3, sol, grid)
                  .max_relative_residual;
          ++eigenpairs;
          worst = std::max(worst, on_shell);
          const double inflation = off_shell / std::max(on_shell, 1e-14);
          worst_inflation = std::min(worst_inflation, inflation);
          if (on_shell >= 1e-8)
            return {false, format("%s n = %d residual %.3e >= 1e-8", dkp::to_string(s), n,
                                  on_shell)};
          if (inflation < 1e3)
            return {false, format("%s n = %d energy perturbation inflates only %.1fx",
                                  dkp::to_string(s), n, inflation)};
        }
      }
    }
  }
  if (eigenpairs == 0) return {false, "no eigenpair passed both gates"};
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) return {false, format("runtime %.2f s exceeds the 10 s budget", elapsed)};
  return {true, format("%d eigenpairs, max residual %.3e, min inflation %.1ex (%.3f s)",
                       eigenpairs, worst, worst_inflation, elapsed)};
}

// 5. Natural-parity circle identity E^2 + eps^2 = M^2 with +-E symmetry.
CriterionResult criterion_circle_identity() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const oracle::SectorDraw d = oracle::random_admissible_draw(rng, dkp::SectorId::F0Normal, 6);
    const double m2 = d.m_mass * d.m_mass;
    const double e2 = dkp::pipeline_energy_squared(d.params, d.m_mass, dkp::SectorId::F0Normal,
                                                   d.n);
    const double eps2 = dkp::closed_form_epsilon_squared(d.params, dkp::SectorId::F0Normal, d.n);
    worst = std::max(worst, std::abs(e2 + eps2 - m2) / std::max(1.0, m2));
    if (worst > 1e-12)
      return {false, format("E^2 + eps^2 - M^2 deviates by %.3e on draw %d", worst, i)};
    if (i % 10 == 0) {
      const dkp::SectorSpectrumPoint pt =
          dkp::energy_levels(d.params, d.m_mass, d.j, dkp::SectorId::F0Normal, d.n);
      const dkp::RadialSolution plus =
          dkp::trial_solution(d.params, d.m_mass, d.j, dkp::SectorId::F0Normal, d.n, pt.energy);
      const dkp::RadialSolution minus =
          dkp::trial_solution(d.params, d.m_mass, d.j, dkp::SectorId::F0Normal, d.n, -pt.energy);
      for (double r : {0.3, 1.0, 4.0}) {
        const double a = qes::evaluate_solution(plus.algebraization, plus.polynomial, r).psi;
        const double b = qes::evaluate_solution(minus.algebraization, minus.polynomial, r).psi;
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
          return {false, format("+-E solutions differ at r = %.1f on draw %d", r, i)};
      }
    }
  }
  return {true, format("E^2 + eps^2 = M^2 to %.3e over 200 draws, +-E symmetric", worst)};
}

// 6. H0 hyperbola identity E^2 - eps^2 = M^2; no E < |M| zone for shallow wells.
CriterionResult criterion_hyperbola_identity() {
  std::mt19937_64 rng(107);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const oracle::SectorDraw d = oracle::random_admissible_draw(rng, dkp::SectorId::H0Abnormal, 6);
    const double m2 = d.m_mass * d.m_mass;
    const double e2 = dkp::pipeline_energy_squared(d.params, d.m_mass, dkp::SectorId::H0Abnormal,
                                                   d.n);
    const double eps2 = dkp::closed_form_epsilon_squared(d.params, dkp::SectorId::H0Abnormal, d.n);
    worst = std::max(worst, std::abs(e2 - eps2 - m2) / std::max(1.0, m2));
    if (worst > 1e-12)
      return {false, format("E^2 - eps^2 - M^2 deviates by %.3e on draw %d", worst, i)};
  }
  for (int i = 0; i < 100; ++i) {
    dkp::PotentialParams p;
    p.x_r = oracle::uniform_real(rng, -0.999, -0.001);
    p.y_r = oracle::uniform_real(rng, 0.5, 3.0);
    p.z_r = oracle::uniform_real(rng, 0.1, 2.0);
    const double m_mass = oracle::uniform_real(rng, 0.5, 2.0);
    for (int n = 0; n <= 10; ++n) {
      const dkp::SectorSpectrumPoint pt =
          dkp::energy_levels(p, m_mass, 0, dkp::SectorId::H0Abnormal, n);
      if (pt.status != dkp::EnergyStatus::RealPair ||
          pt.energy * pt.energy - m_mass * m_mass < -1e-12)
        return {false, format("x_r = %.3f, n = %d enters the E < |M| region", p.x_r, n)};
    }
  }
  return {true, format("E^2 - eps^2 = M^2 to %.3e; E^2 >= M^2 for x_r in (-1, 0)", worst)};
}

// 7. phi sector: no real spectrum for x_r in (-1/2, 0) with z_r > 0.
CriterionResult criterion_phi_emptiness() {
  std::mt19937_64 rng(109);
  for (int i = 0; i < 100; ++i) {
    dkp::PotentialParams p;
    p.x_r = oracle::uniform_real(rng, -0.499, -0.001);
    p.y_r = oracle::uniform_real(rng, 0.5, 3.0);
    p.z_r = oracle::uniform_real(rng, 0.01, 3.0);
    for (int n = 0; n <= 10; ++n) {
      const dkp::SectorSpectrumPoint pt =
          dkp::energy_levels(p, 1.0, 0, dkp::SectorId::PhiAbnormal, n);
      if (pt.status != dkp::EnergyStatus::NoRealSpectrum)
        return {false, format("x_r = %.3f, z_r = %.3f, n = %d has status %s", p.x_r, p.z_r, n,
                              dkp::to_string(pt.status))};
    }
  }
  return {true, "all 100 draws give NoRealSpectrum for every n <= 10"};
}

// 8. Worked dual-path ground state of the natural-parity example.
CriterionResult criterion_worked_example() {
  const dkp::PotentialParams p{-0.2, 1.0, 0.5, 1.0, -0.8, 0.1};
  const double eps2 = dkp::closed_form_epsilon_squared(p, dkp::SectorId::F0Normal, 0);
  const double e2 = dkp::pipeline_energy_squared(p, 1.0, dkp::SectorId::F0Normal, 0);
  const dkp::SectorSpectrumPoint pt = dkp::energy_levels(p, 1.0, 0, dkp::SectorId::F0Normal, 0);
  if (std::abs(eps2 - 0.12) > 1e-12)
    return {false, format("closed-form eps^2 = %.15f, expected 0.12", eps2)};
  if (std::abs(e2 - 0.88) > 1e-12)
    return {false, format("pipeline E^2 = %.15f, expected 0.88", e2)};
  if (std::abs(pt.energy - std::sqrt(0.88)) > 1e-12)
    return {false, format("level energy %.15f, expected sqrt(0.88)", pt.energy)};
  return {true, format("eps^2 = 0.12 and E = +-sqrt(0.88) agree across both paths to %.1e",
                       std::max(std::abs(eps2 - 0.12), std::abs(e2 - 0.88)))};
}

// 9. Heun taxonomy of the four canonical forms and the sector potentials.
CriterionResult criterion_classifier() {
  heun::RationalPotential three_pole;
  three_pole.constant = 0.25;
  three_pole.poles = {{0.0, {1.0, -0.5, 0.0, 0.0}},
                      {1.0, {0.75, 0.3, 0.0, 0.0}},
                      {2.5, {-0.2, 1.1, 0.0, 0.0}}};

  heun::RationalPotential cornell;
  cornell.constant = -1.0;
  cornell.linear = 0.8;
  cornell.quadratic = -0.25;
  cornell.poles = {{0.0, {1.5, -2.0, 0.0, 0.0}}};

  heun::RationalPotential soft_core;
  soft_core.constant = 0.5;
  soft_core.poles = {{0.0, {1.0, -0.4, 0.0, 0.0}}, {1.0, {-0.7, 0.9, 0.0, 0.0}}};

  heun::RationalPotential quartic;
  quartic.constant = -0.3;
  quartic.poles = {{0.0, {0.2, -1.0, 0.6, -0.09}}};

  const struct {
    const heun::RationalPotential* v;
    heun::HeunClass expected;
  } canon[] = {{&three_pole, heun::HeunClass::GeneralHeun},
               {&cornell, heun::HeunClass::BiconfluentHeun},
               {&soft_core, heun::HeunClass::ConfluentHeun},
               {&quartic, heun::HeunClass::DoublyConfluentHeun}};
  for (const auto& c : canon) {
    const heun::HeunClass got = heun::classify(*c.v);
    if (got != c.expected)
      return {false, format("canonical form expected %s, got %s", heun::to_string(c.expected),
                            heun::to_string(got))};
  }

  const dkp::PotentialParams f0{-0.2, 1.0, 0.5, 1.0, -0.8, 0.1};
  const dkp::PotentialParams abn{-0.5, 1.0, 1.0, 0.0, 0.0, 0.0};
  for (dkp::SectorId s : kSectors) {
    const dkp::PotentialParams& p = (s == dkp::SectorId::F0Normal) ? f0 : abn;
    const heun::HeunClass got =
        heun::classify(heun::from_inverse_quartic(dkp::sector_coefficients(p, 1.0, 0.0, 0, s)));
    if (got != heun::HeunClass::DoublyConfluentHeun)
      return {false, format("%s potential classifies %s", dkp::to_string(s),
                            heun::to_string(got))};
  }
  return {true, "four canonical forms and all three sector potentials classify correctly"};
}

// 10. Kratzer well sign pattern and depth round trip.
CriterionResult criterion_kratzer() {
  std::mt19937_64 rng(111);
  for (int i = 0; i < 100; ++i) {
    const dkp::KratzerPhysical phys{oracle::uniform_real(rng, 0.01, 10.0),
                                    oracle::uniform_real(rng, 0.01, 10.0)};
    const dkp::KratzerCoefficients c = dkp::kratzer_from_physical(phys);
    if (!(c.x < 0.0 && c.y > 0.0 && c.z > 0.0))
      return {false, format("sign pattern broken for D_e = %.3f, r_e = %.3f", phys.well_depth,
                            phys.equilibrium_radius)};
    const double depth = dkp::well_depth_from_coefficients(c.x, c.y);
    if (std::abs(depth - phys.well_depth) > 1e-12 * std::max(1.0, phys.well_depth))
      return {false, format("x^2/(4y) = %.15f, expected %.15f", depth, phys.well_depth)};
  }
  return {true, "100 draws: x < 0, y > 0, z > 0 and x^2/(4y) recovers D_e to 1e-12"};
}

}  // namespace

int main() {
  const auto suite_start = std::chrono::steady_clock::now();
  const struct {
    const char* label;
    CriterionResult (*run)();
  } criteria[] = {
      {"criterion 1 (sl(2) commutators)", criterion_commutators},
      {"criterion 2 (operator equivalence)", criterion_operator_equivalence},
      {"criterion 3 (determinant duality)", criterion_determinant_duality},
      {"criterion 4 (ode residuals)", criterion_ode_residuals},
      {"criterion 5 (normal-sector circle)", criterion_circle_identity},
      {"criterion 6 (H0 hyperbola)", criterion_hyperbola_identity},
      {"criterion 7 (phi emptiness)", criterion_phi_emptiness},
      {"criterion 8 (dual-path example)", criterion_worked_example},
      {"criterion 9 (Heun classifier)", criterion_classifier},
      {"criterion 10 (Kratzer mapping)", criterion_kratzer},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    CriterionResult result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", result.pass ? "PASS" : "FAIL", c.label, result.detail.c_str());
    if (!result.pass) ++failures;
  }

  const double total = seconds_since(suite_start);
  const bool on_time = total < 60.0;
  std::printf("%s suite runtime: %.2f s (budget 60 s)\n", on_time ? "PASS" : "FAIL", total);
  if (!on_time) ++failures;
  return failures == 0 ? 0 : 1;
}
