#include "dkpqes/heun.hpp"

#include <cmath>
#include <stdexcept>

namespace dkpqes::heun {

const char* to_string(HeunClass c) {
  switch (c) {
    case HeunClass::GeneralHeun: return "GeneralHeun";
    case HeunClass::ConfluentHeun: return "ConfluentHeun";
    case HeunClass::BiconfluentHeun: return "BiconfluentHeun";
    case HeunClass::DoublyConfluentHeun: return "DoublyConfluentHeun";
    case HeunClass::HypergeometricReducible: return "HypergeometricReducible";
    case HeunClass::Unsupported: return "Unsupported";
  }
  return "?";
}

HeunClass classify(const RationalPotential& v) {
  for (size_t i = 0; i < v.poles.size(); ++i)
    for (size_t k = i + 1; k < v.poles.size(); ++k) {
      const double a = v.poles[i].location, b = v.poles[k].location;
      if (std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
        throw std::invalid_argument("classify: coincident pole locations");
    }

  if (v.exponential_marker) return HeunClass::Unsupported;

  double magnitude = std::max({std::abs(v.constant), std::abs(v.linear), std::abs(v.quadratic)});
  for (const PoleTerms& pole : v.poles)
    for (double c : pole.inverse_coefficients) magnitude = std::max(magnitude, std::abs(c));
  if (magnitude == 0.0) return HeunClass::Unsupported;
  const double cutoff = kCoeffZeroTol * magnitude;

  int degree = 0;
  if (std::abs(v.quadratic) > cutoff) degree = 2;
  else if (std::abs(v.linear) > cutoff) degree = 1;

  int pole_count = 0;
  int max_order = 0;
  for (const PoleTerms& pole : v.poles) {
    int order = 0;
    for (int k = 3; k >= 0; --k)
      if (std::abs(pole.inverse_coefficients[static_cast<size_t>(k)]) > cutoff) {
        order = k + 1;
        break;
      }
    if (order == 0) continue;
    ++pole_count;
    max_order = std::max(max_order, order);
  }

  if (pole_count == 3 && max_order <= 2 && degree == 0) return HeunClass::GeneralHeun;
  if (pole_count == 2 && max_order <= 2 && degree == 0) return HeunClass::ConfluentHeun;
  if (pole_count == 1 && max_order <= 2 && degree >= 1) return HeunClass::BiconfluentHeun;
  if (pole_count == 1 && max_order >= 3 && degree == 0) return HeunClass::DoublyConfluentHeun;
  if (pole_count == 1 && max_order <= 2 && degree == 0) return HeunClass::HypergeometricReducible;
  return HeunClass::Unsupported;
}

RationalPotential from_inverse_quartic(const qes::InverseQuarticCoefficients& c) {
  RationalPotential v;
  v.constant = c.alpha;
  PoleTerms origin;
  origin.location = 0.0;
  origin.inverse_coefficients = {c.beta, c.omega, c.delta, c.sigma};
  v.poles.push_back(origin);
  return v;
}

}  // namespace dkpqes::heun
