#pragma once

#include <span>
#include <vector>

#include "walkzeta/walk.hpp"

namespace walkzeta {

/// The Fourier-space block of the evolution operator at momentum k_tilde.
struct SymbolPoint {
  std::vector<double> k_tilde;
  CMatrix matrix;
};

SymbolPoint symbol(const StepFactors& f, std::span<const double> k_tilde);
SymbolPoint symbol(const Coin& coin, std::span<const double> k_tilde);

/// det(I - u * M) at one point, via LU.
cd det_one_minus_u(const SymbolPoint& s, cd u);

/// Coefficients of det(I - u M) in u: the reversed characteristic polynomial.
/// Trailing coefficients that vanish to rounding are trimmed, so e.g. the RW
/// symbol comes back with degree 1.
Polynomial det_polynomial(const SymbolPoint& s);

struct FactorizationSample {
  cd u;
  cd lhs;  // det(I - u M_A)
  cd rhs;  // prod_k det(I - u M(k))
  double rel_err;
};

struct FactorizationReport {
  double max_rel_err = 0.0;
  std::vector<FactorizationSample> samples;
};

/// Checks det(I - u M_A) = prod_{k in grid} det(I - u M(k~)) at each sample.
FactorizationReport verify_factorization(const Coin& coin, TorusConfig config,
                                         std::span<const cd> u_samples);
FactorizationReport verify_factorization(const StepFactors& f, TorusConfig config,
                                         std::span<const cd> u_samples);

/// All momentum points of the N^d grid in lexicographic order, as angles.
std::vector<std::vector<double>> momentum_grid(int dim, int n);

/// Grid traversal that visits conjugate momentum pairs (k, N-k) adjacently.
/// Self-conjugate points are visited once with paired = false. The symbol
/// determinants at paired points are complex conjugates for real coins, so
/// adjacent accumulation cancels imaginary parts.
struct PairedGridItem {
  std::vector<double> k;       // first point of the pair
  std::vector<double> k_conj;  // partner, valid when paired
  bool paired = false;
};
std::vector<PairedGridItem> paired_momentum_grid(int dim, int n);

}  // namespace walkzeta
