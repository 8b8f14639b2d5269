#pragma once

#include <array>

#include "tripsim/moment_table.hpp"

namespace tripsim {

// Witness thresholds. A value strictly below the bound means the witness
// fired (entanglement / EPR correlations demonstrated).
inline constexpr double kVlfBound = 4.0;
inline constexpr double kDuanBound = 4.0;
inline constexpr double kEprTwoModeBound = 1.0;
inline constexpr double kEprOneModeBound = 4.0;

enum class Sign { plus, minus };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

struct VlfTriplet {
  double v12, v13, v23;
};

// The three sum-variance combinations
//   V_jk = V(X_j - X_k) + V(Y_1 + Y_2 + Y_3),
// each bounded below by 4 for states separable across the corresponding
// bipartition; violation of any two certifies genuine tripartite
// entanglement. Requires exactly three modes.
VlfTriplet vlf_triplet(const MomentTable& t);

// Bipartite sum-variance witness V(X_i - X_j) + V(Y_i + Y_j), bound 4.
double duan_pair(const MomentTable& t, int i, int j);

struct InferenceGain {
  double a_min;            // optimal linear gain
  double variance_at_min;  // conditional variance at that gain
};

// Optimal gain a and minimal variance for estimating quadrature `target` of
// mode i linearly from the combination A_j +/- A_k:
//   a_min = V(A_i, A_j +/- A_k) / V(A_j +/- A_k).
// A zero combination variance makes the inference degenerate and is rejected.
InferenceGain optimal_gain(const MomentTable& t, Axis axis, int target, int j,
                           int k, Sign sign);

struct EprProduct {
  double vinf_x;
  double vinf_y;
  double product;
};

// Two-mode inference: V^inf(X_i) = V(X_i) - V(X_i, X_j±X_k)^2 / V(X_j±X_k),
// same for Y; product below 1 demonstrates the EPR paradox for mode i.
EprProduct epr_two_mode(const MomentTable& t, int target, int j, int k, Sign sign);

// One-mode inference of the combined quadrature X_j±X_k from mode i:
//   V^inf(X_j±X_k) = V(X_j±X_k) - [V(X_i,X_j) ± V(X_i,X_k)]^2 / V(X_i),
// same for Y; product below 4 demonstrates the combined-quadrature paradox.
EprProduct epr_one_mode(const MomentTable& t, int j, int k, int inferring, Sign sign);

struct SignedEprEntry {
  int a = 0, b = 0, c = 0;  // two-mode: infer a from (b,c); one-mode: infer (a,b) from c
  Sign sign = Sign::plus;
  double vinf_x = 0.0, vinf_y = 0.0, product = 0.0;
  bool violated = false;
};

struct DuanEntry {
  int i = 0, j = 0;
  double value = 0.0;
  bool violated = false;
};

// All criteria evaluated on one three-mode table. EPR entries carry the sign
// choice that minimised the product (both signs are legitimate witnesses;
// the better one is reported).
struct CriterionReport {
  double v12 = 0.0, v13 = 0.0, v23 = 0.0;
  std::array<bool, 3> vlf_violated{};

  std::array<DuanEntry, 3> duan{};           // pairs (0,1), (0,2), (1,2)
  std::array<SignedEprEntry, 3> epr_two_mode{};  // inferred mode 0, 1, 2
  std::array<SignedEprEntry, 3> epr_one_mode{};  // inferring mode 0, 1, 2

  bool vlf_confirmed = false;       // at least two of three below 4
  bool epr_two_confirmed = false;   // all three products below 1
  bool epr_one_confirmed = false;   // all three products below 4
  bool tripartite_confirmed = false;

  bool permutation_symmetric = false;
  bool vxy_nonzero = false;  // criteria stay valid, but flagged
};

CriterionReport full_report(const MomentTable& t);

}  // namespace tripsim
