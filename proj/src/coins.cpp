#include "walkzeta/coins.hpp"

#include <cmath>
#include <numbers>

namespace walkzeta {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kStochasticTol = 1e-12;
constexpr double kRealTol = 1e-14;

bool is_unitary(const CMatrix& a, double tol) {
  CMatrix g = matmul(a.adjoint(), a);
  for (int i = 0; i < g.rows(); ++i) g.at(i, i) -= 1.0;
  return g.max_abs() <= tol;
}

bool is_column_stochastic(const CMatrix& a, double tol) {
  for (int j = 0; j < a.cols(); ++j) {
    double colsum = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
      const cd z = a.at(i, j);
      if (std::abs(z.imag()) > tol) return false;
      if (z.real() < -tol || z.real() > 1.0 + tol) return false;
      colsum += z.real();
    }
    if (std::abs(colsum - 1.0) > tol) return false;
  }
  return true;
}

CMatrix sigma_matrix() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }

}  // namespace

std::string to_string(ShiftKind s) { return s == ShiftKind::moving ? "moving" : "flipflop"; }

std::string to_string(CoinModel m) {
  switch (m) {
    case CoinModel::qw: return "qw";
    case CoinModel::crw: return "crw";
    case CoinModel::rw: return "rw";
    case CoinModel::grover: return "grover";
    case CoinModel::fourier: return "fourier";
    case CoinModel::positive_support_grover: return "positive_support_grover";
    case CoinModel::three_state_grover: return "three_state_grover";
    case CoinModel::oqrw_reduced: return "oqrw_reduced";
    case CoinModel::custom: return "custom";
  }
  return "custom";
}

ShiftKind shift_kind_from_string(const std::string& s) {
  if (s == "moving" || s == "m") return ShiftKind::moving;
  if (s == "flipflop" || s == "f") return ShiftKind::flipflop;
  throw ParseError("unknown shift kind: " + s);
}

CoinModel coin_model_from_string(const std::string& s) {
  for (CoinModel m : {CoinModel::qw, CoinModel::crw, CoinModel::rw, CoinModel::grover,
                      CoinModel::fourier, CoinModel::positive_support_grover,
                      CoinModel::three_state_grover, CoinModel::oqrw_reduced, CoinModel::custom})
    if (to_string(m) == s) return m;
  throw ParseError("unknown coin model: " + s);
}

int Coin::dimension() const {
  if (has_stay) return 1;
  if (states % 2 != 0)
    throw DimensionMismatch("coin with odd state count and no stay has no torus dimension");
  return states / 2;
}

int Coin::default_p() const {
  switch (model) {
    case CoinModel::crw:
    case CoinModel::rw:
    case CoinModel::oqrw_reduced:
      return 1;
    default:
      return 2;
  }
}

Coin make_coin(CMatrix m, CoinModel model, ShiftKind shift, bool has_stay) {
  if (!m.square()) throw NotSquare("make_coin: coin matrix must be square");
  if (!m.all_finite()) throw Error("make_coin: non-finite entry");
  Coin c{std::move(m), 0, shift, model, has_stay};
  c.states = c.matrix.rows();
  switch (model) {
    case CoinModel::qw:
    case CoinModel::grover:
    case CoinModel::fourier:
    case CoinModel::three_state_grover:
      if (!is_unitary(c.matrix, kUnitaryTol))
        throw Error("make_coin: matrix not unitary for model " + to_string(model));
      break;
    case CoinModel::crw:
    case CoinModel::rw:
    case CoinModel::oqrw_reduced:
      if (!is_column_stochastic(c.matrix, kStochasticTol))
        throw Error("make_coin: matrix not column-stochastic for model " + to_string(model));
      break;
    default:
      break;
  }
  return c;
}

Coin qw_coin(double xi) {
  const double c = std::cos(xi), s = std::sin(xi);
  return make_coin(CMatrix{{c, s}, {s, -c}}, CoinModel::qw, ShiftKind::moving);
}

Coin crw_coin(double xi) {
  const double c2 = std::cos(xi) * std::cos(xi), s2 = std::sin(xi) * std::sin(xi);
  return make_coin(CMatrix{{c2, s2}, {s2, c2}}, CoinModel::crw, ShiftKind::moving);
}

Coin rw_coin(double xi) {
  const double c2 = std::cos(xi) * std::cos(xi), s2 = std::sin(xi) * std::sin(xi);
  return make_coin(CMatrix{{c2, c2}, {s2, s2}}, CoinModel::rw, ShiftKind::moving);
}

Coin grover_matrix(int n) {
  if (n < 2) throw BadSize("grover_matrix: n must be >= 2");
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.at(i, j) = (i == j) ? 2.0 / n - 1.0 : 2.0 / n;
  const CoinModel model = (n == 3) ? CoinModel::three_state_grover : CoinModel::grover;
  return make_coin(std::move(g), model, ShiftKind::moving, n == 3);
}

Coin fourier_matrix(int n) {
  if (n < 2) throw BadSize("fourier_matrix: n must be >= 2");
  CMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double phase = 2.0 * std::numbers::pi * ((static_cast<long>(a) * b) % n) / n;
      f.at(a, b) = norm * cd(std::cos(phase), std::sin(phase));
    }
  return make_coin(std::move(f), CoinModel::fourier, ShiftKind::moving, n == 3);
}

CMatrix positive_support(const CMatrix& a) {
  CMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cd z = a.at(i, j);
      if (std::abs(z.imag()) >= kRealTol)
        throw NotReal("positive_support: input has complex entries");
      out.at(i, j) = z.real() > 0.0 ? 1.0 : 0.0;
    }
  return out;
}

Coin positive_support_grover_coin(int n) {
  CMatrix m = positive_support(grover_matrix(n).matrix);
  return make_coin(std::move(m), CoinModel::positive_support_grover, ShiftKind::moving, n == 3);
}

Coin flip_flop(const Coin& coin, int d) {
  if (coin.states != 2 * d)
    throw DimensionMismatch("flip_flop: coin.states must equal 2d");
  CMatrix m = matmul(kron(CMatrix::identity(d), sigma_matrix()), coin.matrix);
  Coin out = coin;
  out.matrix = std::move(m);
  out.shift_kind =
      coin.shift_kind == ShiftKind::moving ? ShiftKind::flipflop : ShiftKind::moving;
  return out;
}

Coin three_state_grover_coin(ShiftKind shift) {
  Coin m = grover_matrix(3);
  if (shift == ShiftKind::moving) return m;
  CMatrix f(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f.at(i, j) = m.matrix.at(2 - i, j);
  return make_coin(std::move(f), CoinModel::three_state_grover, ShiftKind::flipflop, true);
}

ThreeStateProjections three_state_projections() {
  ThreeStateProjections p{CMatrix::zero(3, 3), CMatrix::zero(3, 3), CMatrix::zero(3, 3)};
  p.p1.at(0, 0) = 1.0;
  p.p0.at(1, 1) = 1.0;
  p.p2.at(2, 2) = 1.0;
  return p;
}

OqrwPair oqrw_lift(const CMatrix& b, const CMatrix& c) {
  if (b.rows() != 2 || b.cols() != 2 || c.rows() != 2 || c.cols() != 2)
    throw DimensionMismatch("oqrw_lift: B and C must be 2x2");
  CMatrix g = matmul(b.adjoint(), b) + matmul(c.adjoint(), c);
  for (int i = 0; i < 2; ++i) g.at(i, i) -= 1.0;
  if (g.max_abs() > kUnitaryTol)
    throw NotTracePreserving("oqrw_lift: B*B + C*C != I_2");
  return OqrwPair{b, c, kron(b, b.conjugated()), kron(c, c.conjugated())};
}

Coin oqrw_reduce(const CMatrix& b, const CMatrix& c) {
  if (b.rows() != 2 || b.cols() != 2 || c.rows() != 2 || c.cols() != 2)
    throw DimensionMismatch("oqrw_reduce: B and C must be 2x2");
  if (std::abs(b.at(0, 1)) > kRealTol || std::abs(b.at(1, 1)) > kRealTol ||
      std::abs(c.at(0, 0)) > kRealTol || std::abs(c.at(1, 0)) > kRealTol)
    throw NotReducible("oqrw_reduce: B needs zero second column and C zero first column");
  oqrw_lift(b, c);  // validates trace preservation
  const double b11 = std::norm(b.at(0, 0)), b21 = std::norm(b.at(1, 0));
  const double c12 = std::norm(c.at(0, 1)), c22 = std::norm(c.at(1, 1));
  return make_coin(CMatrix{{b11, c12}, {b21, c22}}, CoinModel::oqrw_reduced, ShiftKind::moving);
}

OqrwPair oqrw_example_pair() {
  const double s = 1.0 / std::sqrt(3.0);
  CMatrix b{{s, s}, {0.0, s}};
  CMatrix c{{s, 0.0}, {-s, s}};
  return oqrw_lift(b, c);
}

}  // namespace walkzeta
