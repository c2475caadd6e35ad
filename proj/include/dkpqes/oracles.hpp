#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "dkpqes/dkp_sectors.hpp"
#include "dkpqes/qes_core.hpp"

// Independent verification engines: dense determinants against the
// tridiagonal recurrence, residuals of the raw sector ODEs (assembled from
// A_r and A_0 directly, not from the expanded inverse-quartic coefficients),
// exact commutator audits, and the operator-assembly cross-check.
namespace dkpqes::oracle {

struct ResidualReport {
  std::vector<double> grid;
  double max_relative_residual = 0.0;
  double worst_radius = 0.0;
};

// LU with partial pivoting; closed form for sizes 1 and 2.  Square input,
// size at most 64.
double dense_determinant(const Eigen::MatrixXd& m);

// Geometrically spaced radii, endpoints included.
std::vector<double> log_grid(double lo = 0.05, double hi = 30.0, int points = 60);

// Coefficient V(r) in psi'' + V psi = 0 for the raw sector equation.
double raw_ode_bracket(const dkp::PotentialParams& p, double m_mass, int j, dkp::SectorId s,
                       double e_squared, double r);

// max over the grid of |psi'' + V psi| / max(|psi''|, |V psi|, 1e-30).
// The energy argument enters V only, so callers can probe off-shell energies
// against a fixed solution.
ResidualReport ode_residual(dkp::SectorId s, const dkp::PotentialParams& p, double m_mass, int j,
                            double energy, const dkp::RadialSolution& sol,
                            const std::vector<double>& grid);

// Exact rational check of [J+,J-] = -2 J0, [J+,J0] = -J+, [J-,J0] = +J-.
bool commutator_audit(const qes::GeneratorMatrices& g);

// Entrywise deviation between the sl(2)-bilinear assembly and the direct
// monomial-action assembly; the recorded convention makes them opposite in
// sign, so this is max |qes_hamiltonian_matrix + tilde_h_matrix|.
double operator_equivalence(const qes::Algebraization& alg);

// Uniform double in [lo, hi) built from raw mt19937_64 output so sequences
// are identical across standard library implementations.
double uniform_real(std::mt19937_64& rng, double lo, double hi);

// Random synthetic algebraization on the quantized shell (a = -2n sqrt(-alpha)
// by construction), for operator-equivalence and determinant sampling.
qes::Algebraization random_quantized_algebraization(std::mt19937_64& rng, int n);

// Random sector parameter draw guaranteed to pass every admissibility
// condition (generic draws do not satisfy the determinant constraint).
struct SectorDraw {
  dkp::PotentialParams params;
  double m_mass = 1.0;
  int j = 0;
  int n = 0;
};

SectorDraw random_admissible_draw(std::mt19937_64& rng, dkp::SectorId s, int n_max);

}  // namespace dkpqes::oracle
