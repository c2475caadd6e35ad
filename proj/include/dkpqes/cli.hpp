#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dkpqes/dkp_sectors.hpp"
#include "dkpqes/heun.hpp"

// Command implementations behind the executable: each takes a parsed run
// configuration plus output/error streams and returns a process exit code,
// so the whole surface stays testable without spawning processes.
namespace dkpqes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInadmissible = 2;
inline constexpr int kExitNothingFound = 3;
inline constexpr int kExitVerifyFailed = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  dkp::PotentialParams params;
  double mass = 1.0;
  int j = 0;
  std::optional<dkp::SectorId> sector;
  std::optional<int> n;
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::optional<double> energy;
  std::optional<dkp::FreeParameter> free_parameter;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<dkp::FreeParameter> scan_parameter;
  std::optional<int> points;
  double r_min = 0.05;
  double r_max = 30.0;
  int r_points = 60;
  std::vector<dkp::SectorId> verify_sectors;
  int verify_n_max = 6;
  std::uint64_t seed = 0;
  double quantization_perturbation = 0.0;
  std::optional<heun::RationalPotential> potential_structure;
  std::optional<std::string> out;
};

// One verification scenario: a fixed potential with one parameter freed over
// an interval whose determinant roots give residual-checkable eigenpairs.
// n_cap bounds the level sweep; the intervals and caps are chosen so the
// resulting states decay well inside the residual grid, because slow-decay
// high-n states amplify coefficient rounding by r^(n-1) at the outer radii.
struct VerifyCase {
  dkp::SectorId sector;
  dkp::PotentialParams params;
  int j = 0;
  dkp::FreeParameter free_param = dkp::FreeParameter::YR;
  double lo = 0.0;
  double hi = 0.0;
  int n_cap = 6;
};

// The built-in residual scenarios for one sector.
std::vector<VerifyCase> verify_cases(dkp::SectorId sector);

// Parses and validates the flat JSON configuration document; unknown keys
// are rejected.  Throws ConfigError with a human-readable message.
RunConfig parse_config(const std::string& json_text);

// Fixed formatting for CSV cells: up to 17 significant digits, '.' decimal
// separator, byte-identical across runs.
std::string format_double(double value);

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_constraint(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace dkpqes::cli
