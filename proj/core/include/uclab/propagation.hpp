#pragma once

#include <cstdint>
#include <vector>

#include "uclab/field.hpp"
#include "uclab/geometry.hpp"

namespace uclab {

/// Fraction of Q below e^{-a} sup_Q |u| (sup-normalized sublevel set).
struct SublevelStatistic {
  double a = 0.0;
  double n = 0.0;         // doubling index supplied by the caller
  double fraction = 0.0;  // m in [0, 1]
};
SublevelStatistic sublevel_measure(const ScalarField& u, const Cube& q,
                                   double a, double n = 0.0);

struct DecayFit {
  double beta_scaled = 0.0;  // slope of -log m against a/N
  double beta_raw = 0.0;     // slope of -log m against a (= beta_scaled/N)
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> a_used;
  std::vector<double> log_m;
};
/// Fits log m over the a-range with 0 < m < 1; throws when no such range
/// exists (constant fields).
DecayFit decay_fit(const ScalarField& u, const Cube& q,
                   const std::vector<double>& a_grid, double n);

struct RemezSolutionsCheck {
  double sup_q = 0.0;
  double sup_e = 0.0;
  double volume_ratio = 0.0;  // |Q| / |E| by node counting
  double rhs = 0.0;           // C sup_E (C |Q|/|E|)^{C N}
  bool pass = false;
};
/// e_mask marks nodes of u's grid belonging to E; only nodes inside Q count.
RemezSolutionsCheck remez_solutions_check(const ScalarField& u,
                                          const std::vector<std::uint8_t>& e_mask,
                                          const Cube& q, double n,
                                          double frozen_c);

struct PropagationCheck {
  double max_k = 0.0;
  double sup_omega = 0.0;
  double eps = 0.0;
  double alpha_used = 0.0;
  double c0_used = 0.0;
  double bound = 0.0;
  bool pass = false;
  // the reduction from the solutions-Remez inequality: alpha = 1/(C1+1)
  double alpha_derived = 0.0;
  double bound_derived = 0.0;
  bool pass_derived = false;
};
/// Requires |u| <= eps on E (within slack) and a nonempty mask.
PropagationCheck propagation_constant(const ScalarField& u,
                                      const std::vector<std::uint8_t>& e_mask,
                                      const Cube& k_set, const Cube& omega,
                                      double eps, double frozen_c0,
                                      double frozen_alpha, double remez_c,
                                      double n_doubling, double a1 = 1.0);

struct BasePartitionCheck {
  double doubling = 0.0;  // measured doubling index of Q
  double b = 0.0;         // min over subcubes of sup_q / sup_Q
  Cube q0;                // subcube holding the max over Q/2
  double m = 0.0;         // inf_{q0} |u| / sup_Q
  bool pass = false;      // m > 0
};
/// Precondition: measured doubling index of Q at most n0 (throws otherwise).
BasePartitionCheck base_partition_check(const ScalarField& u, const Cube& q,
                                        int k, double n0);

struct RecursionParams {
  double s = 0.0;        // (J^d - 1) J^{-d} for the declared J
  double a0 = 0.0;
  double c_base = 1.0;   // constant covering the base region a <= k0 a0 N
  double n0 = 1.0;       // base doubling threshold (reported only)
  int j = 0;             // declared J, 0 when s given directly
};

struct TraceEntry {
  int k = 0;
  double lhs = 0.0;  // e^{-beta a0 (k-2)} + s e^{beta a0}
  bool ok = false;   // lhs <= 1
};

struct BoundCertificate {
  double c = 0.0;
  double beta = 0.0;
  int k0 = 0;
  double s = 0.0;
  double a0 = 0.0;
  std::vector<TraceEntry> trace;
  bool verified = false;
};

/// Largest beta (bisection on (0, beta_max], tolerance tol) for which
/// e^{-beta a0 (k-2)} + s e^{beta a0} <= 1 closes at some finite k0;
/// C = e^{beta k0 a0} c_base.
BoundCertificate induction_engine(const RecursionParams& params,
                                  double beta_max = 10.0, double tol = 1e-9);
/// Recomputes every trace inequality; true iff the certificate re-verifies.
bool replay_certificate(const BoundCertificate& cert);

struct RecursionOracle {
  int k_max = 0;
  int j_max = 0;
  double c_boundary = 0.0;
  std::vector<std::vector<double>> table;  // table[k-1][j], worst case m(k, j)
  double c_prime = 0.0;                    // max m(k, j) e^j over the table
  bool envelope_holds = false;
};
/// Worst-case table: equality in m(k,j) <= m(k-1, 2(j-1)) + m(k, j-1)/4 with
/// m(1,j) = e^{-j} and m(k,j) = c_boundary for j < 4.
RecursionOracle recursion_oracle(int k_max, int j_max, double c_boundary = 1.0);

}  // namespace uclab
