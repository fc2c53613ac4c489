#pragma once

#include <optional>
#include <span>
#include <vector>

#include "walkzeta/coins.hpp"
#include "walkzeta/linalg.hpp"

namespace walkzeta {

/// d-dimensional torus with N sites per axis. Sites are ordered
/// lexicographically in (x_1, ..., x_d); x_1 varies slowest.
struct TorusConfig {
  int dim = 1;
  int n_sites = 2;

  long total_sites() const;
};

/// The one-step transfer decomposition every walk here reduces to:
///   Psi_{n+1}(x) = sum_j [ from_plus[j] Psi_n(x+e_j) + from_minus[j] Psi_n(x-e_j) ]
///                  + stay Psi_n(x).
/// 2d-state coins give from_plus[j] = P_{2j-1} A, from_minus[j] = P_{2j} A;
/// the 3-state walk adds the stay term; oqrw_reduced coins use A P_1 / A P_2;
/// the lifted OQRW uses the Kraus lifts B(x)conj(B) / C(x)conj(C).
struct StepFactors {
  struct Term {
    CMatrix m;
    std::vector<int> nz_rows;  // rows of m that are not identically zero
  };
  int states = 0;
  int dim = 0;
  std::vector<Term> from_plus;   // one per axis, reads Psi(x+e_j)
  std::vector<Term> from_minus;  // one per axis, reads Psi(x-e_j)
  std::optional<Term> stay;
};

StepFactors factors_of(const Coin& coin);
StepFactors factors_of(const OqrwPair& pair);

/// Vector field over the torus, one C^{states} block per site.
struct WalkState {
  TorusConfig config;
  int states = 0;
  std::vector<cd> amp;  // site-major: amp[site*states + component]

  static WalkState delta_origin(TorusConfig config, std::span<const cd> spin);
};

/// (1,...,1) normalised to unit measure: /sqrt(n) for p=2, /n for p=1.
std::vector<cd> uniform_spin(int states, int p);

WalkState step(const WalkState& state, const Coin& coin);
WalkState step_with_factors(const WalkState& state, const StepFactors& f);
WalkState evolve(const WalkState& state, const Coin& coin, int n);

/// mu_n(x) = sum_j |Psi^j(x)|^p for p in {1, 2}.
std::vector<double> measure(const WalkState& state, int p);
double total_measure(const WalkState& state, int p);

/// Per-site matrix weights Phi_n. Torus fields are periodic with origin 0;
/// infinite-lattice fields live on the window [-radius, radius]^d with
/// hard-zero boundary (exact: n-step support cannot leave the window).
struct MatrixWeightField {
  int dim = 1;
  int side = 1;
  bool periodic = true;
  int origin = 0;  // coordinate offset of the lattice origin on each axis
  int states = 0;
  std::vector<CMatrix> w;

  const CMatrix& at(std::span<const int> x) const;  // lattice coords
};

MatrixWeightField matrix_weight_torus(const Coin& coin, TorusConfig config, int n);

/// Phi_r at the origin for the walk on Z^d.
CMatrix matrix_weight_infinite(const Coin& coin, int d, int r);

/// Tr(Phi_r(0)) on Z^d for r = 1..rmax, one window pass.
std::vector<cd> return_weight_trace_series(const Coin& coin, int d, int rmax);
std::vector<cd> return_weight_trace_series(const StepFactors& f, int rmax);

/// Row-indexed sparse form of the one-step operator M_A.
struct SparseOp {
  struct Entry {
    int col;
    cd val;
  };
  long size = 0;
  std::vector<std::vector<Entry>> rows;

  std::vector<cd> apply(std::span<const cd> v) const;
  CMatrix dense() const;
};

SparseOp assemble_MA(const Coin& coin, TorusConfig config);
SparseOp assemble_operator(const StepFactors& f, TorusConfig config);

/// OQRW state: vectorised 2x2 density blocks (rho11, rho12, rho21, rho22).
struct OqrwState {
  WalkState s;
};

OqrwState oqrw_delta(TorusConfig config, const CMatrix& rho0);
OqrwState oqrw_step(const OqrwState& state, const OqrwPair& pair);
/// Tr rho(x) per site; throws if a trace drifts measurably off the real axis.
std::vector<double> oqrw_measure(const OqrwState& state);

}  // namespace walkzeta
