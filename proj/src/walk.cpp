#include "walkzeta/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace walkzeta {

namespace {

constexpr long kOperatorSizeCap = 20000;
// Infinite-lattice DP radius caps, indexed by dimension.
constexpr int kWindowCap[4] = {0, 40, 32, 24};

std::vector<int> nonzero_rows(const CMatrix& m) {
  std::vector<int> rows;
  for (int i = 0; i < m.rows(); ++i) {
    bool nz = false;
    for (int j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != cd(0.0)) {
        nz = true;
        break;
      }
    if (nz) rows.push_back(i);
  }
  return rows;
}

StepFactors::Term make_term(CMatrix m) {
  StepFactors::Term t{std::move(m), {}};
  t.nz_rows = nonzero_rows(t.m);
  return t;
}

CMatrix keep_row(const CMatrix& a, int row) {
  CMatrix out(a.rows(), a.cols());
  for (int j = 0; j < a.cols(); ++j) out.at(row, j) = a.at(row, j);
  return out;
}

CMatrix keep_col(const CMatrix& a, int col) {
  CMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) out.at(i, col) = a.at(i, col);
  return out;
}

// Lattice walker over a hypercubic index space of the given side. Tracks the
// flat index and coordinates together; neighbour() returns the flat index one
// step along an axis, or -1 if it would leave a non-periodic window.
struct Grid {
  int dim;
  int side;
  bool periodic;
  std::vector<long> stride;

  Grid(int d, int s, bool p) : dim(d), side(s), periodic(p), stride(d) {
    long acc = 1;
    for (int j = d - 1; j >= 0; --j) {
      stride[j] = acc;
      acc *= s;
    }
  }

  long total() const {
    long t = 1;
    for (int j = 0; j < dim; ++j) t *= side;
    return t;
  }

  long neighbor(long idx, std::span<const int> coords, int axis, int delta) const {
    int x = coords[axis] + delta;
    if (periodic) {
      if (x < 0) x += side;
      if (x >= side) x -= side;
    } else if (x < 0 || x >= side) {
      return -1;
    }
    return idx + (static_cast<long>(x) - coords[axis]) * stride[axis];
  }

  void advance(std::vector<int>& coords) const {  // odometer in lexicographic order
    for (int j = dim - 1; j >= 0; --j) {
      if (++coords[j] < side) return;
      coords[j] = 0;
    }
  }
};

// out_block += term.m * in_block, visiting only the nonzero rows of term.m.
void accumulate_block(std::span<cd> out, const StepFactors::Term& t, std::span<const cd> in) {
  const int n = t.m.cols();
  for (int i : t.nz_rows) {
    cd s = 0.0;
    for (int j = 0; j < n; ++j) s += t.m.at(i, j) * in[j];
    out[i] += s;
  }
}

// dst += term.m * src for matrix blocks (rows of dst touched per nz row).
void accumulate_matrix(CMatrix& dst, const StepFactors::Term& t, const CMatrix& src) {
  const int n = t.m.cols();
  for (int i : t.nz_rows)
    for (int c = 0; c < n; ++c) {
      cd s = 0.0;
      for (int j = 0; j < n; ++j) s += t.m.at(i, j) * src.at(j, c);
      dst.at(i, c) += s;
    }
}

struct FieldStepper {
  const StepFactors& f;
  Grid grid;

  template <typename AccumulateFn>
  void run_site(long idx, std::span<const int> coords, AccumulateFn&& acc) const {
    for (int j = 0; j < f.dim; ++j) {
      const long plus = grid.neighbor(idx, coords, j, +1);
      if (plus >= 0) acc(f.from_plus[j], plus);
      const long minus = grid.neighbor(idx, coords, j, -1);
      if (minus >= 0) acc(f.from_minus[j], minus);
    }
    if (f.stay) acc(*f.stay, idx);
  }
};

void check_compatible(const StepFactors& f, const TorusConfig& config, int states) {
  if (f.states != states)
    throw DimensionMismatch("walk: state block size does not match the coin");
  if (f.dim != config.dim)
    throw DimensionMismatch("walk: coin dimension does not match the torus");
}

std::vector<cd> series_from_window(const StepFactors& f, int d, int rmax, bool trace_only,
                                   CMatrix* final_weight) {
  if (d < 1 || d > 3) throw DimensionMismatch("infinite-lattice weights support d in {1,2,3}");
  if (rmax > kWindowCap[d]) throw CapExceeded("infinite-lattice radius above the cap for this d");
  const int side = 2 * rmax + 1;
  Grid grid(d, side, false);
  const long total = grid.total();
  const int dc = f.states;

  std::vector<CMatrix> cur(total, CMatrix::zero(dc, dc)), next(total, CMatrix::zero(dc, dc));
  long origin = 0;
  for (int j = 0; j < d; ++j) origin += rmax * grid.stride[j];
  cur[origin] = CMatrix::identity(dc);

  FieldStepper stepper{f, grid};
  std::vector<cd> traces;
  traces.reserve(rmax);
  std::vector<int> coords(d, 0);
  for (int n = 1; n <= rmax; ++n) {
    std::fill(coords.begin(), coords.end(), 0);
    for (long idx = 0; idx < total; ++idx) {
      CMatrix& dst = next[idx];
      dst = CMatrix::zero(dc, dc);
      stepper.run_site(idx, coords,
                       [&](const StepFactors::Term& t, long src) { accumulate_matrix(dst, t, cur[src]); });
      grid.advance(coords);
    }
    cur.swap(next);
    traces.push_back(cur[origin].trace());
  }
  if (!trace_only && final_weight) *final_weight = cur[origin];
  return traces;
}

}  // namespace

long TorusConfig::total_sites() const {
  if (dim < 1 || n_sites < 2) throw BadSize("TorusConfig: need dim >= 1 and N >= 2");
  long t = 1;
  for (int j = 0; j < dim; ++j) t *= n_sites;
  return t;
}

StepFactors factors_of(const Coin& coin) {
  StepFactors f;
  f.states = coin.states;
  f.dim = coin.dimension();
  const CMatrix& a = coin.matrix;
  if (coin.has_stay) {
    if (coin.states != 3) throw DimensionMismatch("stay walks are 3-state only");
    f.from_plus.push_back(make_term(keep_row(a, 0)));   // P_1 A, mover toward -x
    f.stay = make_term(keep_row(a, 1));                 // P_0 A
    f.from_minus.push_back(make_term(keep_row(a, 2)));  // P_2 A
    return f;
  }
  if (coin.model == CoinModel::oqrw_reduced) {
    f.from_plus.push_back(make_term(keep_col(a, 0)));   // A P_1
    f.from_minus.push_back(make_term(keep_col(a, 1)));  // A P_2
    return f;
  }
  for (int j = 0; j < f.dim; ++j) {
    f.from_plus.push_back(make_term(keep_row(a, 2 * j)));
    f.from_minus.push_back(make_term(keep_row(a, 2 * j + 1)));
  }
  return f;
}

StepFactors factors_of(const OqrwPair& pair) {
  StepFactors f;
  f.states = 4;
  f.dim = 1;
  f.from_plus.push_back(make_term(pair.lifted_b));
  f.from_minus.push_back(make_term(pair.lifted_c));
  return f;
}

WalkState WalkState::delta_origin(TorusConfig config, std::span<const cd> spin) {
  WalkState st;
  st.config = config;
  st.states = static_cast<int>(spin.size());
  st.amp.assign(config.total_sites() * spin.size(), cd(0.0));
  for (size_t j = 0; j < spin.size(); ++j) st.amp[j] = spin[j];
  return st;
}

std::vector<cd> uniform_spin(int states, int p) {
  const double v = p == 2 ? 1.0 / std::sqrt(static_cast<double>(states))
                          : 1.0 / static_cast<double>(states);
  return std::vector<cd>(states, cd(v));
}

WalkState step_with_factors(const WalkState& state, const StepFactors& f) {
  check_compatible(f, state.config, state.states);
  Grid grid(state.config.dim, state.config.n_sites, true);
  const long total = grid.total();
  const int dc = state.states;

  WalkState out;
  out.config = state.config;
  out.states = dc;
  out.amp.assign(state.amp.size(), cd(0.0));

  FieldStepper stepper{f, grid};
  std::vector<int> coords(state.config.dim, 0);
  for (long idx = 0; idx < total; ++idx) {
    std::span<cd> dst(out.amp.data() + idx * dc, dc);
    stepper.run_site(idx, coords, [&](const StepFactors::Term& t, long src) {
      accumulate_block(dst, t, std::span<const cd>(state.amp.data() + src * dc, dc));
    });
    grid.advance(coords);
  }
  return out;
}

WalkState step(const WalkState& state, const Coin& coin) {
  return step_with_factors(state, factors_of(coin));
}

WalkState evolve(const WalkState& state, const Coin& coin, int n) {
  const StepFactors f = factors_of(coin);
  WalkState cur = state;
  for (int i = 0; i < n; ++i) cur = step_with_factors(cur, f);
  return cur;
}

std::vector<double> measure(const WalkState& state, int p) {
  if (p != 1 && p != 2) throw BadSize("measure: p must be 1 or 2");
  const long total = state.config.total_sites();
  std::vector<double> mu(total, 0.0);
  for (long idx = 0; idx < total; ++idx) {
    double s = 0.0;
    for (int j = 0; j < state.states; ++j) {
      const cd z = state.amp[idx * state.states + j];
      s += p == 2 ? std::norm(z) : std::abs(z);
    }
    mu[idx] = s;
  }
  return mu;
}

double total_measure(const WalkState& state, int p) {
  double t = 0.0;
  for (double v : measure(state, p)) t += v;
  return t;
}

const CMatrix& MatrixWeightField::at(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != dim) throw DimensionMismatch("MatrixWeightField::at");
  long idx = 0;
  for (int j = 0; j < dim; ++j) {
    long c = x[j] + origin;
    if (periodic) {
      c %= side;
      if (c < 0) c += side;
    } else if (c < 0 || c >= side) {
      throw BadSize("MatrixWeightField::at: coordinate outside the window");
    }
    idx = idx * side + c;
  }
  return w[idx];
}

MatrixWeightField matrix_weight_torus(const Coin& coin, TorusConfig config, int n) {
  const StepFactors f = factors_of(coin);
  check_compatible(f, config, coin.states);
  Grid grid(config.dim, config.n_sites, true);
  const long total = grid.total();
  const int dc = coin.states;

  MatrixWeightField field;
  field.dim = config.dim;
  field.side = config.n_sites;
  field.periodic = true;
  field.origin = 0;
  field.states = dc;
  field.w.assign(total, CMatrix::zero(dc, dc));
  field.w[0] = CMatrix::identity(dc);

  FieldStepper stepper{f, grid};
  std::vector<CMatrix> next(total, CMatrix::zero(dc, dc));
  std::vector<int> coords(config.dim, 0);
  for (int s = 0; s < n; ++s) {
    std::fill(coords.begin(), coords.end(), 0);
    for (long idx = 0; idx < total; ++idx) {
      CMatrix& dst = next[idx];
      dst = CMatrix::zero(dc, dc);
      stepper.run_site(idx, coords, [&](const StepFactors::Term& t, long src) {
        accumulate_matrix(dst, t, field.w[src]);
      });
      grid.advance(coords);
    }
    field.w.swap(next);
  }
  return field;
}

CMatrix matrix_weight_infinite(const Coin& coin, int d, int r) {
  const StepFactors f = factors_of(coin);
  if (f.dim != d) throw DimensionMismatch("matrix_weight_infinite: coin dimension mismatch");
  if (r == 0) return CMatrix::identity(coin.states);
  CMatrix out;
  series_from_window(f, d, r, false, &out);
  return out;
}

std::vector<cd> return_weight_trace_series(const StepFactors& f, int rmax) {
  return series_from_window(f, f.dim, rmax, true, nullptr);
}

std::vector<cd> return_weight_trace_series(const Coin& coin, int d, int rmax) {
  const StepFactors f = factors_of(coin);
  if (f.dim != d) throw DimensionMismatch("return_weight_trace_series: coin dimension mismatch");
  return series_from_window(f, d, rmax, true, nullptr);
}

std::vector<cd> SparseOp::apply(std::span<const cd> v) const {
  if (static_cast<long>(v.size()) != size) throw DimensionMismatch("SparseOp::apply");
  std::vector<cd> out(size, cd(0.0));
  for (long r = 0; r < size; ++r) {
    cd s = 0.0;
    for (const Entry& e : rows[r]) s += e.val * v[e.col];
    out[r] = s;
  }
  return out;
}

CMatrix SparseOp::dense() const {
  CMatrix m(static_cast<int>(size), static_cast<int>(size));
  for (long r = 0; r < size; ++r)
    for (const Entry& e : rows[r]) m.at(static_cast<int>(r), e.col) += e.val;
  return m;
}

SparseOp assemble_operator(const StepFactors& f, TorusConfig config) {
  Grid grid(config.dim, config.n_sites, true);
  const long total = grid.total();
  const long size = total * f.states;
  if (size > kOperatorSizeCap) throw SizeExceeded("assemble_operator: 2d N^d above 20000");

  SparseOp op;
  op.size = size;
  op.rows.assign(size, {});
  FieldStepper stepper{f, grid};
  std::vector<int> coords(config.dim, 0);
  for (long idx = 0; idx < total; ++idx) {
    stepper.run_site(idx, coords, [&](const StepFactors::Term& t, long src) {
      for (int i : t.nz_rows) {
        auto& row = op.rows[idx * f.states + i];
        for (int j = 0; j < f.states; ++j) {
          const cd v = t.m.at(i, j);
          if (v == cd(0.0)) continue;
          const int col = static_cast<int>(src * f.states + j);
          // merge duplicates (N=2 tori alias the two neighbours)
          bool merged = false;
          for (SparseOp::Entry& e : row)
            if (e.col == col) {
              e.val += v;
              merged = true;
              break;
            }
          if (!merged) row.push_back(SparseOp::Entry{col, v});
        }
      }
    });
    grid.advance(coords);
  }
  for (auto& row : op.rows)
    std::sort(row.begin(), row.end(), [](const SparseOp::Entry& a, const SparseOp::Entry& b) { return a.col < b.col; });
  return op;
}

SparseOp assemble_MA(const Coin& coin, TorusConfig config) {
  const StepFactors f = factors_of(coin);
  check_compatible(f, config, coin.states);
  return assemble_operator(f, config);
}

OqrwState oqrw_delta(TorusConfig config, const CMatrix& rho0) {
  if (config.dim != 1) throw DimensionMismatch("OQRW states are one-dimensional");
  if (rho0.rows() != 2 || rho0.cols() != 2) throw DimensionMismatch("oqrw_delta: rho0 must be 2x2");
  const cd spin[4] = {rho0.at(0, 0), rho0.at(0, 1), rho0.at(1, 0), rho0.at(1, 1)};
  return OqrwState{WalkState::delta_origin(config, spin)};
}

OqrwState oqrw_step(const OqrwState& state, const OqrwPair& pair) {
  return OqrwState{step_with_factors(state.s, factors_of(pair))};
}

std::vector<double> oqrw_measure(const OqrwState& state) {
  const long total = state.s.config.total_sites();
  std::vector<double> mu(total);
  for (long x = 0; x < total; ++x) {
    const cd t = state.s.amp[x * 4 + 0] + state.s.amp[x * 4 + 3];
    if (std::abs(t.imag()) > 1e-10)
      throw Error("oqrw_measure: density trace drifted off the real axis");
    mu[x] = t.real();
  }
  return mu;
}

}  // namespace walkzeta
