#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "walkzeta/symbol.hpp"

namespace walkzeta {

/// One evaluation of the inverse walk-type zeta function
/// zeta_bar^{-1} = exp[(1/N^d) sum_k Log det(I - u M(k~))].
struct ZetaEvaluation {
  cd u;
  cd log_zeta_inv;
  cd zeta_inv;
  double imag_residual = 0.0;  // |Im log_zeta_inv|; should vanish for real data
  std::string grid;
  bool branch_risk = false;  // some det had negative real part with tiny Im
};

ZetaEvaluation zeta_inv_finite(const StepFactors& f, TorusConfig config, cd u);
ZetaEvaluation zeta_inv_finite(const Coin& coin, TorusConfig config, cd u);

/// zeta_bar itself. The inverse is the primary quantity everywhere; the
/// reciprocal is guarded against vanishing evaluations.
cd zeta_value(const ZetaEvaluation& ev);

/// N -> infinity limit as the uniform grid_m^d rule (the periodic trapezoid,
/// spectrally accurate here). Convergence is checked against the doubled
/// grid; NotConverged carries the observed difference.
struct ZetaLimit {
  ZetaEvaluation eval;  // the grid_m evaluation
  cd value_refined;     // 2*grid_m evaluation
  double diff = 0.0;
  double tol = 0.0;
};
ZetaLimit zeta_inv_limit(const StepFactors& f, int d, cd u, int grid_m, double tol = 1e-8);
ZetaLimit zeta_inv_limit(const Coin& coin, int d, cd u, int grid_m, double tol = 1e-8);

enum class SeriesMethod { fourier_trace, direct_trace, dp_weight, closed_form, quadrature };
std::string to_string(SeriesMethod m);

/// C_1..C_rmax with the route that produced them.
struct SeriesTable {
  SeriesMethod method;
  std::vector<cd> values;  // values[r-1] = C_r

  cd at(int r) const { return values.at(r - 1); }
  int rmax() const { return static_cast<int>(values.size()); }
};

/// C_r = (1/N^d) sum_k Tr(M(k~)^r).
SeriesTable c_r_fourier(const StepFactors& f, TorusConfig config, int rmax);
SeriesTable c_r_fourier(const Coin& coin, TorusConfig config, int rmax);

/// C_r = (1/N^d) Tr(M_A^r) through the sparse operator; the independent
/// position-space route.
SeriesTable c_r_direct(const StepFactors& f, TorusConfig config, int rmax);
SeriesTable c_r_direct(const Coin& coin, TorusConfig config, int rmax);

/// lim_N C_r as the uniform-grid quadrature of Tr(M^r). Exact once
/// grid_m > rmax (the integrand is a trigonometric polynomial); refuses
/// coarser grids since aliasing would silently corrupt the limit.
SeriesTable c_r_limit(const StepFactors& f, int d, int rmax, int grid_m);
SeriesTable c_r_limit(const Coin& coin, int d, int rmax, int grid_m);

/// lim_N C_r = Tr(Phi_r(0)) on Z^d by the matrix-weight DP.
SeriesTable c_r_dp(const Coin& coin, int d, int rmax);

/// Closed-form lim_N C_{2l} for 1D 2-state coins with all entries nonzero:
///   2l (a11 a22)^l sum_m (1/m) binom(l-1,m-1)^2 (a12 a21 / a11 a22)^m,
/// cross-checked internally against the 2F1 form. Odd orders vanish.
cd c_2l_closed_1d(const Coin& coin, int l);
SeriesTable c_r_closed(const Coin& coin, int rmax);

/// Terminating 2F1(1-l, 1-l; 2; z), a degree l-1 polynomial.
cd hyp2f1_terminating(int l, cd z);

/// Exact binomial coefficient in 64-bit integers (n <= 62).
std::int64_t binomial(int n, int k);

struct SeriesConsistencySample {
  cd u;
  double residual;   // |exp(sum C_r u^r / r) * zeta_inv - 1|
  double tolerance;  // truncation-aware bound
  bool pass;
};
struct SeriesConsistencyReport {
  double spectral_bound;  // max_k ||M(k~)||_inf
  std::vector<SeriesConsistencySample> samples;
  bool all_pass = true;
};

/// Checks exp(sum_{r<=rmax} C_r u^r / r) * zeta_inv(u) = 1 within a
/// truncation-aware tolerance. Requires |u| * spectral_bound < 0.8.
SeriesConsistencyReport series_consistency(const StepFactors& f, TorusConfig config, int rmax,
                                           std::span<const cd> u_samples);
SeriesConsistencyReport series_consistency(const Coin& coin, TorusConfig config, int rmax,
                                           std::span<const cd> u_samples);

}  // namespace walkzeta
