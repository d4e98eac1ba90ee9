#pragma once

#include "uclab/discrete_laplace.hpp"
#include "uclab/field.hpp"
#include "uclab/geometry.hpp"

namespace uclab {

/// Random harmonic function: a0 + sum_k r^k (a_k cos k theta + b_k sin k theta),
/// coefficients uniform in [-1, 1]. Exactly harmonic; both the closed form and
/// a sampled grid copy are returned.
struct HarmonicSample {
  Field2 analytic;
  ScalarField field;
  std::vector<double> cos_coeffs;  // a_0 .. a_n
  std::vector<double> sin_coeffs;  // b_1 .. b_n
};

HarmonicSample random_harmonic(unsigned seed, int max_degree, GridSpec grid);
/// Same family conditioned to vanish at the origin (constant term dropped).
HarmonicSample random_harmonic_vanishing(unsigned seed, int max_degree,
                                         GridSpec grid);

/// Discrete divergence-form solution: solve_dirichlet on the domain with
/// random low-frequency trigonometric boundary data.
ScalarField random_solution(unsigned seed, const GridDomain& domain,
                            const CoefficientMatrixField& a);

/// Random 4-connected blob mask grown from seeded walks inside the grid's
/// interior; guaranteed nonempty and connected.
GridDomain random_masked_domain(unsigned seed, GridSpec spec);

/// Scattered-node subset mask covering roughly `fraction` of the nodes in Q.
std::vector<std::uint8_t> random_cell_mask(unsigned seed, const GridSpec& spec,
                                           const Cube& q, double fraction);

}  // namespace uclab
