#pragma once

#include <array>
#include <vector>

#include "dkpqes/qes_core.hpp"

// Singularity-structure classifier for rational effective potentials V(r)
// in psi'' + V psi = 0.  The taxonomy distinguishes the Heun equation and
// its confluent degenerations by the number of finite poles, their maximal
// orders, and the polynomial growth at infinity.
namespace dkpqes::heun {

// Coefficients at or below this fraction of the largest magnitude are
// treated as absent, so near-degenerate inputs fall to the simplest class.
inline constexpr double kCoeffZeroTol = 1e-14;

enum class HeunClass {
  GeneralHeun,              // three finite poles of order <= 2
  ConfluentHeun,            // two finite poles of order <= 2, constant tail
  BiconfluentHeun,          // one pole of order <= 2 plus linear/quadratic growth
  DoublyConfluentHeun,      // one pole with order-3/4 terms, constant tail
  HypergeometricReducible,  // one pole of order <= 2, constant tail
  Unsupported,              // anything else, including exponential tails
};

const char* to_string(HeunClass c);

struct PoleTerms {
  double location = 0.0;
  // Coefficients of (r - location)^{-1} .. (r - location)^{-4}.
  std::array<double, 4> inverse_coefficients{};
};

struct RationalPotential {
  double constant = 0.0;
  double linear = 0.0;
  double quadratic = 0.0;
  std::vector<PoleTerms> poles;
  // Exponential/Yukawa tails have no rational normal form here; carriers of
  // this marker always classify Unsupported.
  bool exponential_marker = false;
};

// Deterministic classification by pole count, pole order, and polynomial
// degree, after relative pruning of negligible coefficients.  Throws
// std::invalid_argument on coincident pole locations.
HeunClass classify(const RationalPotential& v);

// The inverse-quartic sector form as a single fourth-order pole at the
// origin plus the constant alpha.
RationalPotential from_inverse_quartic(const qes::InverseQuarticCoefficients& c);

}  // namespace dkpqes::heun
