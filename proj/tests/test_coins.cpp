#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "walkzeta/coins.hpp"

using namespace walkzeta;

namespace {

const double kPi = std::numbers::pi;

double unitarity_defect(const CMatrix& a) {
  CMatrix g = matmul(a.adjoint(), a);
  for (int i = 0; i < g.rows(); ++i) g.at(i, i) -= 1.0;
  return g.max_abs();
}

}  // namespace

TEST_CASE("qw coin") {
  const Coin had = qw_coin(kPi / 4);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(oracles::max_abs_diff(had.matrix, CMatrix{{r, r}, {r, -r}}) < 1e-15);
  CHECK(had.model == CoinModel::qw);
  CHECK(had.shift_kind == ShiftKind::moving);

  const Coin z = qw_coin(0.0);
  CHECK(oracles::max_abs_diff(z.matrix, CMatrix{{1.0, 0.0}, {0.0, -1.0}}) == 0.0);
  CHECK(unitarity_defect(qw_coin(0.3).matrix) < 1e-12);
}

TEST_CASE("crw and rw coins") {
  CHECK(oracles::max_abs_diff(crw_coin(kPi / 4).matrix,
                              cd(0.5) * CMatrix{{1.0, 1.0}, {1.0, 1.0}}) < 1e-15);
  CHECK(oracles::max_abs_diff(crw_coin(kPi / 2).matrix, CMatrix{{0.0, 1.0}, {1.0, 0.0}}) < 1e-15);
  const Coin rw = rw_coin(0.7);
  for (int j = 0; j < 2; ++j) {
    const cd colsum = rw.matrix.at(0, j) + rw.matrix.at(1, j);
    CHECK(std::abs(colsum - cd(1.0)) < 1e-12);
  }
}

TEST_CASE("grover matrices") {
  const Coin g3 = grover_matrix(3);
  CHECK(oracles::max_abs_diff(
            g3.matrix, cd(1.0 / 3.0) * CMatrix{{-1, 2, 2}, {2, -1, 2}, {2, 2, -1}}) < 1e-15);
  CHECK(g3.has_stay);
  CHECK(g3.model == CoinModel::three_state_grover);

  const Coin g4 = grover_matrix(4);
  CHECK(oracles::max_abs_diff(
            g4.matrix,
            cd(0.5) * CMatrix{{-1, 1, 1, 1}, {1, -1, 1, 1}, {1, 1, -1, 1}, {1, 1, 1, -1}}) <
        1e-15);

  CHECK(oracles::max_abs_diff(grover_matrix(2).matrix, CMatrix{{0.0, 1.0}, {1.0, 0.0}}) < 1e-15);
  CHECK_THROWS_AS(grover_matrix(1), BadSize);
}

TEST_CASE("fourier matrices") {
  const Coin f4 = fourier_matrix(4);
  const cd i(0.0, 1.0);
  const CMatrix expect =
      cd(0.5) * CMatrix{{1, 1, 1, 1}, {1, i, -1, -i}, {1, -1, 1, -1}, {1, -i, -1, i}};
  CHECK(oracles::max_abs_diff(f4.matrix, expect) < 1e-15);

  const double r = 1.0 / std::sqrt(2.0);
  CHECK(oracles::max_abs_diff(fourier_matrix(2).matrix, CMatrix{{r, r}, {r, -r}}) < 1e-15);

  const CMatrix f6 = fourier_matrix(6).matrix;
  CHECK(oracles::max_abs_diff(matmul(f6.adjoint(), f6), CMatrix::identity(6)) < 1e-12);
  CHECK_THROWS_AS(fourier_matrix(0), BadSize);
}

TEST_CASE("grover and fourier unitarity across sizes") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(unitarity_defect(grover_matrix(n).matrix) < 1e-10);
    CHECK(unitarity_defect(fourier_matrix(n).matrix) < 1e-10);
  }
}

TEST_CASE("positive support") {
  const CMatrix g4p = positive_support(grover_matrix(4).matrix);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(g4p.at(i, j) == cd(i == j ? 0.0 : 1.0));
  CHECK(oracles::max_abs_diff(positive_support(CMatrix::identity(2)), CMatrix::identity(2)) ==
        0.0);
  const CMatrix neg{{-1.0, -1.0}, {-1.0, -1.0}};
  CHECK(positive_support(neg).max_abs() == 0.0);
  CHECK_THROWS_AS(positive_support(CMatrix{{cd(0.0, 1.0)}}), NotReal);
}

TEST_CASE("flip flop") {
  std::mt19937_64 rng(11);
  const Coin a = oracles::random_unitary_coin(rng);
  const Coin f = flip_flop(a, 1);
  CHECK(f.shift_kind == ShiftKind::flipflop);
  CHECK(f.matrix.at(0, 0) == a.matrix.at(1, 0));
  CHECK(f.matrix.at(0, 1) == a.matrix.at(1, 1));
  CHECK(f.matrix.at(1, 0) == a.matrix.at(0, 0));
  CHECK(f.matrix.at(1, 1) == a.matrix.at(0, 1));

  // 2D Grover F-type: row pairs swapped within each axis block
  const Coin g4f = flip_flop(grover_matrix(4), 2);
  const CMatrix expect =
      cd(0.5) * CMatrix{{1, -1, 1, 1}, {-1, 1, 1, 1}, {1, 1, 1, -1}, {1, 1, -1, 1}};
  CHECK(oracles::max_abs_diff(g4f.matrix, expect) < 1e-15);

  // involution, and shift kind round-trips
  const Coin back = flip_flop(g4f, 2);
  CHECK(oracles::max_abs_diff(back.matrix, grover_matrix(4).matrix) < 1e-15);
  CHECK(back.shift_kind == ShiftKind::moving);

  CHECK_THROWS_AS(flip_flop(grover_matrix(3), 1), DimensionMismatch);
}

TEST_CASE("three-state projections") {
  const auto [p1, p0, p2] = three_state_projections();
  CHECK(oracles::max_abs_diff(p1 + p0 + p2, CMatrix::identity(3)) == 0.0);
  CHECK(matmul(p1, p0).max_abs() == 0.0);
  const CMatrix a = grover_matrix(3).matrix;
  CHECK(oracles::max_abs_diff(matmul(p1, a) + matmul(p0, a) + matmul(p2, a), a) < 1e-15);
}

TEST_CASE("three-state grover F-type reverses the rows") {
  const Coin f = three_state_grover_coin(ShiftKind::flipflop);
  CHECK(oracles::max_abs_diff(f.matrix,
                              cd(1.0 / 3.0) * CMatrix{{2, 2, -1}, {2, -1, 2}, {-1, 2, 2}}) <
        1e-15);
  CHECK(f.shift_kind == ShiftKind::flipflop);
}

TEST_CASE("oqrw lift") {
  const OqrwPair pair = oqrw_example_pair();
  const CMatrix pc_expect = cd(1.0 / 3.0) * CMatrix{{1, 0, 0, 0},
                                                    {-1, 1, 0, 0},
                                                    {-1, 0, 1, 0},
                                                    {1, -1, -1, 1}};
  CHECK(oracles::max_abs_diff(pair.lifted_c, pc_expect) < 1e-15);
  const CMatrix pb_expect =
      cd(1.0 / 3.0) * CMatrix{{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}};
  CHECK(oracles::max_abs_diff(pair.lifted_b, pb_expect) < 1e-15);

  const double r = 1.0 / std::sqrt(2.0);
  const OqrwPair half = oqrw_lift(cd(r) * CMatrix::identity(2), cd(r) * CMatrix::identity(2));
  CHECK(oracles::max_abs_diff(half.lifted_b, cd(0.5) * CMatrix::identity(4)) < 1e-15);
  CHECK(oracles::max_abs_diff(half.lifted_c, cd(0.5) * CMatrix::identity(4)) < 1e-15);

  CHECK_THROWS_AS(oqrw_lift(CMatrix::identity(2), CMatrix::identity(2)), NotTracePreserving);
}

TEST_CASE("oqrw lift of a column-structured pair matches the sparse displays") {
  const double xi = 0.7;
  const double c = std::cos(xi), s = std::sin(xi);
  const CMatrix b{{c, 0.0}, {s, 0.0}};
  const CMatrix cc{{0.0, s}, {0.0, c}};
  const OqrwPair pair = oqrw_lift(b, cc);
  // lifted_b has only its first column populated, lifted_c only its last
  for (int i = 0; i < 4; ++i)
    for (int j = 1; j < 4; ++j) CHECK(pair.lifted_b.at(i, j) == cd(0.0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) CHECK(pair.lifted_c.at(i, j) == cd(0.0));
  CHECK(std::abs(pair.lifted_b.at(0, 0) - cd(c * c)) < 1e-15);
  CHECK(std::abs(pair.lifted_b.at(3, 0) - cd(s * s)) < 1e-15);
  CHECK(std::abs(pair.lifted_c.at(0, 3) - cd(s * s)) < 1e-15);
  CHECK(std::abs(pair.lifted_c.at(3, 3) - cd(c * c)) < 1e-15);
}

TEST_CASE("oqrw reduce") {
  const double xi = 0.7;
  const double c = std::cos(xi), s = std::sin(xi);
  const CMatrix b{{c, 0.0}, {s, 0.0}};
  const CMatrix cc{{0.0, s}, {0.0, c}};
  const Coin a = oqrw_reduce(b, cc);
  CHECK(a.model == CoinModel::oqrw_reduced);
  CHECK(oracles::max_abs_diff(a.matrix, CMatrix{{c * c, s * s}, {s * s, c * c}}) < 1e-15);
  for (int j = 0; j < 2; ++j)
    CHECK(std::abs(a.matrix.at(0, j) + a.matrix.at(1, j) - cd(1.0)) < 1e-14);

  // A = P~_B^(r) + P~_C^(r), and the right-projected splits reproduce them
  const CMatrix pbr{{c * c, 0.0}, {s * s, 0.0}};
  const CMatrix pcr{{0.0, s * s}, {0.0, c * c}};
  CHECK(oracles::max_abs_diff(a.matrix, pbr + pcr) == 0.0);
  const CMatrix p1{{1.0, 0.0}, {0.0, 0.0}};
  const CMatrix p2{{0.0, 0.0}, {0.0, 1.0}};
  CHECK(oracles::max_abs_diff(matmul(a.matrix, p1), pbr) == 0.0);
  CHECK(oracles::max_abs_diff(matmul(a.matrix, p2), pcr) == 0.0);

  CHECK_THROWS_AS(oqrw_reduce(CMatrix{{c, 0.01}, {s, 0.0}}, cc), NotReducible);
}

TEST_CASE("stochastic and unitary construction rejects bad matrices") {
  CHECK_THROWS(make_coin(CMatrix{{0.5, 0.5}, {0.4, 0.5}}, CoinModel::crw, ShiftKind::moving));
  CHECK_THROWS(make_coin(CMatrix{{1.0, 0.0}, {0.0, 1.1}}, CoinModel::qw, ShiftKind::moving));
}
