#pragma once

#include "tripsim/moment_table.hpp"

namespace tripsim {

// Coefficients of the linear Heisenberg solution for the triply concurrent
// interaction with undepleted pumps, at scaled time tau = xi * t:
//   A = cosh 2tau + 2 cosh tau      B = sinh 2tau - 2 sinh tau
//   C = cosh 2tau - cosh tau        D = sinh tau + sinh 2tau
// They satisfy A^2 - B^2 + 2(C^2 - D^2) = 9 and 2(AC - BD) + C^2 - D^2 = 0
// (commutator preservation of the Bogoliubov map).
struct UndepletedPoint {
  double tau;
  double a, b, c, d;
};

UndepletedPoint abcd(double tau);

// Three-mode moment table from the solution above; all modes and all pairs
// are identical by the symmetry of the interaction. Entries grow like
// exp(4 tau) / 9, which stays in double range up to tau ~ 150.
MomentTable undepleted_moments(double tau);

// The shared value of the three sum-variance combinations, as a single
// closed-form expression in A, B, C, D. Cross-checked in the tests against
// the moment-table route, which is treated as ground truth.
double v3_closed(double tau);

struct EprCurvePoint {
  double one_mode;
  double two_mode;
};

// EPR products computed via the criteria on the moment table (plus sign,
// representative permutation; all permutations are equal here). The one-mode
// product equals exactly four times the two-mode product for this scheme.
EprCurvePoint epr_curves(double tau);

}  // namespace tripsim
