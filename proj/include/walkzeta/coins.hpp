#pragma once

#include <string>

#include "walkzeta/linalg.hpp"

namespace walkzeta {

enum class ShiftKind { moving, flipflop };

enum class CoinModel {
  qw,
  crw,
  rw,
  grover,
  fourier,
  positive_support_grover,
  three_state_grover,
  oqrw_reduced,
  custom,
};

std::string to_string(ShiftKind s);
std::string to_string(CoinModel m);
ShiftKind shift_kind_from_string(const std::string& s);
CoinModel coin_model_from_string(const std::string& s);

/// A coin matrix plus the metadata the evolution semantics depend on.
/// M-type and F-type can coincide numerically (symmetric RW), so the shift
/// kind is carried explicitly rather than inferred. oqrw_reduced coins step
/// with right-multiplied projections (A P_j instead of P_j A), a behavioural
/// fork keyed off the model tag.
struct Coin {
  CMatrix matrix;
  int states = 0;
  ShiftKind shift_kind = ShiftKind::moving;
  CoinModel model = CoinModel::custom;
  bool has_stay = false;

  /// Torus dimension this coin drives: states/2, or 1 for the 3-state walk.
  int dimension() const;
  /// Default measure exponent: 1 for stochastic models, 2 otherwise.
  int default_p() const;
};

/// Validates the model-specific invariant (unitarity or column stochasticity)
/// and returns the coin. Throws on violation.
Coin make_coin(CMatrix m, CoinModel model, ShiftKind shift, bool has_stay = false);

/// Kraus pair (B, C) with B*B + C*C = I_2, plus the vectorised 4x4 lifts.
struct OqrwPair {
  CMatrix b, c;          // 2x2
  CMatrix lifted_b, lifted_c;  // 4x4: B (x) conj(B), C (x) conj(C)
};

// --- coin families ---

Coin qw_coin(double xi);                      // [[cos, sin],[sin, -cos]]
Coin crw_coin(double xi);                     // [[cos^2, sin^2],[sin^2, cos^2]]
Coin rw_coin(double xi);                      // [[cos^2, cos^2],[sin^2, sin^2]]
Coin grover_matrix(int n);                    // diagonal 2/n-1, off-diagonal 2/n
Coin fourier_matrix(int n);                   // (a,b) -> omega^{(a-1)(b-1)}/sqrt(n)

/// Entry-wise indicator of strictly positive entries. Input must be real.
CMatrix positive_support(const CMatrix& a);

/// Positive support of the 2d-state Grover coin, wrapped as a coin.
Coin positive_support_grover_coin(int n);

/// Left-multiplies by I_d (x) sigma and toggles the shift kind. Involution.
Coin flip_flop(const Coin& coin, int d);

/// The 3-state Grover coin; the F-type form reverses the row order, as the
/// 3-state walk has no I_d (x) sigma factorisation.
Coin three_state_grover_coin(ShiftKind shift);

struct ThreeStateProjections {
  CMatrix p1;  // left
  CMatrix p0;  // stay
  CMatrix p2;  // right
};
ThreeStateProjections three_state_projections();

OqrwPair oqrw_lift(const CMatrix& b, const CMatrix& c);

/// Reduction of a column-structured Kraus pair (B with zero second column,
/// C with zero first column) to a 2-state stochastic coin.
Coin oqrw_reduce(const CMatrix& b, const CMatrix& c);

/// The worked OQRW example pair B = [[1,1],[0,1]]/sqrt(3), C = [[1,0],[-1,1]]/sqrt(3).
OqrwPair oqrw_example_pair();

}  // namespace walkzeta
