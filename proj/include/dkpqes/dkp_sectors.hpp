#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dkpqes/qes_core.hpp"

// Parity sectors of the spin-one DKP radial problem with the non-minimal
// vector coupling A(r) = x/r + y/r^2 + z for the space component A_r and,
// in the natural-parity sector only, the time component A_0.  Each sector's
// second-order radial equation expands into the inverse-quartic form handled
// by dkpqes::qes, with sector-specific coefficient maps, closed-form level
// energies, and a determinant constraint tying the potential parameters.
namespace dkpqes::dkp {

// Bisection refinement stops at |hi - lo| <= kRootRefineTol * max(1, |root|).
inline constexpr double kRootRefineTol = 1e-13;
// Uniform bracketing grid for the determinant constraint search.
inline constexpr int kConstraintGridSamples = 1024;

enum class SectorId {
  F0Normal,     // natural parity, component F0, time coupling allowed
  H0Abnormal,   // abnormal parity, component H0, requires A_0 = 0
  PhiAbnormal,  // abnormal parity, component phi, requires A_0 = 0
};

const char* to_string(SectorId s);
SectorId sector_from_string(std::string_view name);
bool is_abnormal(SectorId s);

enum class FreeParameter { XR, YR, ZR, X0, Y0, Z0 };

const char* to_string(FreeParameter p);
FreeParameter free_parameter_from_string(std::string_view name);

// Abnormal sectors are derived under A_0 = 0; nonzero x_0/y_0/z_0 there.
struct SectorConstraintViolated : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Requested state fails the tridiagonal determinant constraint.
struct ConstraintViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoRootInInterval : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InadmissibleThroughoutInterval : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PotentialParams {
  double x_r = 0.0;
  double y_r = 0.0;
  double z_r = 0.0;
  double x_0 = 0.0;
  double y_0 = 0.0;
  double z_0 = 0.0;

  // Sign pattern of the attractive Kratzer well.
  bool physical_kratzer() const { return x_r < 0.0 && y_r > 0.0 && z_r > 0.0; }
};

double get_parameter(const PotentialParams& p, FreeParameter which);
PotentialParams with_parameter(PotentialParams p, FreeParameter which, double value);

// Modified Kratzer well D_e ((r - r_e)/r)^2.
struct KratzerPhysical {
  double well_depth = 0.0;          // D_e
  double equilibrium_radius = 0.0;  // r_e
};

struct KratzerCoefficients {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Expands D_e ((r - r_e)/r)^2 = D_e - 2 D_e r_e / r + D_e r_e^2 / r^2 into
// the (x, y, z) coupling triple.  Throws std::domain_error unless both
// inputs are positive.
KratzerCoefficients kratzer_from_physical(const KratzerPhysical& k);

// Inverts the expansion: x^2 / (4y) recovers the well depth.
double well_depth_from_coefficients(double x, double y);

// Inverse-quartic coefficients of the sector radial equation at fixed
// squared energy.  Pure map; throws SectorConstraintViolated when an
// abnormal sector is given a nonzero time coupling.
qes::InverseQuarticCoefficients sector_coefficients(const PotentialParams& p, double m_mass,
                                                    double e_squared, int j, SectorId s);

enum class EnergyStatus {
  RealPair,        // energies +E and -E, symmetric about zero
  ComplexEnergy,   // E^2 < 0, levels pick up a phase
  NoRealSpectrum,  // decay-rate root non-positive (phi sector)
};

const char* to_string(EnergyStatus s);

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<std::string> failures;
};

struct SectorSpectrumPoint {
  SectorId sector = SectorId::F0Normal;
  int n = 0;
  double epsilon_squared = 0.0;
  EnergyStatus status = EnergyStatus::RealPair;
  // Non-negative member of the +-E pair; NaN unless status is RealPair.
  double energy = 0.0;
  double eta = 0.0;
  // Signed decay rate selected by the quantization condition.
  double sqrt_minus_alpha = 0.0;
  bool admissible = false;
  std::vector<std::string> failures;
};

struct RadialSolution {
  SectorId sector = SectorId::F0Normal;
  int n = 0;
  double energy = 0.0;
  double prefactor_exponent = 0.0;  // 1 - eta
  double decay_rate = 0.0;          // sqrt(-alpha)
  double inner_decay = 0.0;         // sqrt(-sigma)
  qes::PolynomialSolution polynomial;
  qes::Algebraization algebraization;
};

// epsilon_n^2 bookkeeping per sector (F0: M^2 - E^2; abnormal: E^2 - M^2),
// evaluated from the closed-form level expressions only.
double closed_form_epsilon_squared(const PotentialParams& p, SectorId s, int n);

// Principal root s = sqrt(M^2 - E^2 + z_r^2) of the phi-sector level
// condition, s = -(2 x_r + 1) z_r / (2n + 2 x_r + 1); non-positive values
// signal an empty real spectrum.
double phi_decay_root(const PotentialParams& p, int n);

// Level energies from the closed forms plus the admissibility verdict.
// Throws NonAlgebraizable when the sector cannot be algebraized at all
// (F0: |y_r| <= |y_0|; abnormal: y_r <= 0).
SectorSpectrumPoint energy_levels(const PotentialParams& p, double m_mass, int j, SectorId s, int n);

// Diagnostic list of failed conditions among: sigma < 0, alpha < 0 at the
// computed energy, 1 - eta > 0, positive quantized sqrt(-alpha), real energy
// pair.  Reports, never throws.
AdmissibilityReport admissibility(const PotentialParams& p, double m_mass, int j, SectorId s, int n);

// Gauge data on the quantized shell a = -2n sqrt(-alpha), assembled without
// reference to the energy (b depends only on the potential, j, and n).
qes::Algebraization quantized_algebraization(const PotentialParams& p, int j, SectorId s, int n);

// Squared level energy reached through algebraize -> solve_quantization,
// the independent counterpart of closed_form_epsilon_squared.
double pipeline_energy_squared(const PotentialParams& p, double m_mass, SectorId s, int n);

// Full radial solution for a level that passes both the quantization check
// and the determinant constraint; throws QuantizationViolated or
// ConstraintViolated otherwise.
RadialSolution wavefunction(const PotentialParams& p, double m_mass, int j, SectorId s, int n,
                            double energy);

// Same assembly with both gates skipped, for perturbation probes that need
// the (non-)solution at an off-shell energy.
RadialSolution trial_solution(const PotentialParams& p, double m_mass, int j, SectorId s, int n,
                              double energy);

// Roots of the normalized determinant constraint in `which` over [lo, hi],
// located by sign-change bracketing on a uniform grid and refined by
// bisection.  Throws InadmissibleThroughoutInterval when no grid point is
// algebraizable and NoRootInInterval when no root is found.
std::vector<double> solve_determinant_constraint(const PotentialParams& p, double m_mass, int j,
                                                 SectorId s, int n, FreeParameter which, double lo,
                                                 double hi);

}  // namespace dkpqes::dkp
