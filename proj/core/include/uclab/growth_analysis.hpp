#pragma once

#include <vector>

#include "uclab/discrete_laplace.hpp"
#include "uclab/field.hpp"
#include "uclab/geometry.hpp"

namespace uclab {

/// H, I, N along a ladder of radii around one center.
/// H(r) = r^{1-d} int_{dB_r} mu |u|^2 ds with mu = (A(x)x, x)/|x|^2
/// (center-relative), I(r) = r^{1-d} int_{B_r} (A grad u, grad u),
/// N = r I / H.
struct RadialGrowthProfile {
  Point center;
  std::vector<double> radii;
  std::vector<double> H;
  std::vector<double> I;
  std::vector<double> N;
  std::vector<double> quad_err;  // relative quadrature-error estimate for H
  bool truncated = false;        // ladder cut where H underflowed

  std::size_t size() const { return radii.size(); }
};

struct FrequencyOptions {
  int ntheta = 512;
  int nr = 256;
};

RadialGrowthProfile frequency_profile(const ScalarField& u,
                                      const CoefficientMatrixField& a,
                                      Point center,
                                      const std::vector<double>& radii,
                                      const FrequencyOptions& opts = {});

/// Closed-form variant (A = I): u evaluated directly, gradient by small-step
/// central differences. Much tighter than the grid route.
RadialGrowthProfile frequency_profile_analytic(const Field2& u, Point center,
                                               const std::vector<double>& radii,
                                               const FrequencyOptions& opts = {});

struct MonotoneCheck {
  bool pass = false;
  double worst_violation = 0.0;  // largest e^{Cr_i}N_i - e^{Cr_{i+1}}N_{i+1}
  int worst_index = -1;
  double tolerance = 0.0;
};
MonotoneCheck check_frequency_monotone(const RadialGrowthProfile& profile,
                                       double c);
/// Smallest C >= 0 making the profile monotone (bisection; c_max on failure).
double smallest_monotone_c(const RadialGrowthProfile& profile,
                           double c_max = 64.0);

struct GrowthBracket {
  double lower = 0.0;  // (R/r)^{2N(r)}
  double upper = 0.0;  // (R/r)^{2N(R)}
  double ratio = 0.0;  // H(R)/H(r)
  bool pass = false;
};
GrowthBracket growth_bracket(const RadialGrowthProfile& profile, double r,
                             double big_r, double rel_tol = 1e-3);

struct DoublingRecord {
  double value = 0.0;    // the doubling index
  int family_size = 0;   // subcubes examined (cube version; 1 for balls)
  Cube argmax;           // maximizing subcube (cube version)
};

/// log(max_{2B}|u| / max_B|u|) over grid nodes.
DoublingRecord doubling_ball(const ScalarField& u, const Ball& b);
/// Same, but with dense polar sampling of a closed-form field.
DoublingRecord doubling_ball_analytic(const Field2& f, const Ball& b,
                                      int nr = 512, int ntheta = 1024);

/// sup over dyadic subcubes up to `depth` levels plus seeded jittered cubes
/// (a lower bound of the mathematical sup).
DoublingRecord doubling_cube(const ScalarField& u, const Cube& q, int depth,
                             int jitter_per_level = 64, unsigned seed = 1);

struct ThreeSphereResult {
  double h_r = 0.0, h_2r = 0.0, h_4r = 0.0;
  double defect = 0.0;      // H(2r)^2 / (H(r) H(4r)) - 1
  double alpha_star = 0.0;  // exponent matching the three circles
  double c_star = 0.0;
  double tol = 0.0;         // 3x quadrature-error budget
  bool pass = false;
};
ThreeSphereResult three_sphere_check(const ScalarField& u,
                                     const CoefficientMatrixField& a,
                                     Point center, double r, int ntheta = 512);

struct ChainResult {
  double gamma_hat = 1.0;
  double c_hat = 1.0;
  int chain_length = 0;
  double ball_radius = 0.0;
  bool direct_pass = false;  // sup_K <= c_hat sup_B^gamma sup_Omega^(1-gamma)
};
/// Greedy lattice chain of balls from B toward K with k * ball inside Omega.
ChainResult chain_propagation(const ScalarField& u, const Ball& b,
                              const Cube& k_set, const Cube& omega,
                              int k_factor = 8);

struct PowerLawFit {
  double c = 0.0;         // slope of N_max against sqrt(lambda)
  double c0 = 0.0;        // intercept
  double exponent = 0.0;  // free power-law fit N_max ~ lambda^exponent
  double residual = 0.0;  // rms residual of the sqrt fit
  std::vector<double> lambdas;
  std::vector<double> doublings;
};
/// Lifted circle eigenfunctions cos(n theta) e^{n t}; max doubling over a
/// fixed ball family per mode, then the sqrt(lambda) and free power fits.
PowerLawFit df_doubling_scan(const std::vector<int>& modes);

struct PartitionResult {
  double n_min = 0.0;  // min over subcubes of log(max_{2q}/max_q)
  Cube argmin;
  std::vector<double> nf;  // all K^2 subcube values, row-major
  double doubling_q_min = 0.0;
  double doubling_big = 0.0;
  bool halved = false;     // doubling_q_min <= doubling_big / 2
  double lemma_lhs = 0.0;  // N_f(Q/2)
  double lemma_rhs = 0.0;  // (K/8) N_min
  bool lemma_pass = false;
};
PartitionResult min_doubling_partition(const ScalarField& u, const Cube& q,
                                       int k, int depth = 3, unsigned seed = 1);

struct TransformedProblem {
  ScalarField u;
  CoefficientMatrixField a;
  std::array<double, 4> s;  // the linear map, row-major
};
/// Recenters at x0 and applies S = A(x0)^{1/2} so the new matrix is I at 0.
TransformedProblem change_of_variables(const ScalarField& u,
                                       const CoefficientMatrixField& a,
                                       Point x0);

}  // namespace uclab
