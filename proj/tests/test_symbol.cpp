#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "walkzeta/symbol.hpp"

using namespace walkzeta;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("1D symbol puts the momentum phases on the projection rows") {
  std::mt19937_64 rng(31);
  const Coin coin = oracles::random_unitary_coin(rng);
  const double k = 1.1;
  const double karr[1] = {k};
  const SymbolPoint s = symbol(coin, karr);
  const cd up(std::cos(k), std::sin(k));
  const cd dn = std::conj(up);
  CHECK(std::abs(s.matrix.at(0, 0) - up * coin.matrix.at(0, 0)) < 1e-15);
  CHECK(std::abs(s.matrix.at(0, 1) - up * coin.matrix.at(0, 1)) < 1e-15);
  CHECK(std::abs(s.matrix.at(1, 0) - dn * coin.matrix.at(1, 0)) < 1e-15);
  CHECK(std::abs(s.matrix.at(1, 1) - dn * coin.matrix.at(1, 1)) < 1e-15);
}

TEST_CASE("zero momentum collapses the symbol to the coin") {
  const Coin g4 = grover_matrix(4);
  const double k[2] = {0.0, 0.0};
  CHECK(oracles::max_abs_diff(symbol(g4, k).matrix, g4.matrix) < 1e-15);
}

TEST_CASE("the OQRW symbol of the worked pair has the 2 cos k diagonal") {
  const OqrwPair pair = oqrw_example_pair();
  const double k = 0.8;
  const double karr[1] = {k};
  const SymbolPoint s = symbol(factors_of(pair), karr);
  const cd up(std::cos(k), std::sin(k));
  const cd dn = std::conj(up);
  const cd third(1.0 / 3.0);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(s.matrix.at(i, i) - third * 2.0 * std::cos(k)) < 1e-15);
  CHECK(std::abs(s.matrix.at(0, 1) - third * up) < 1e-15);
  CHECK(std::abs(s.matrix.at(1, 0) + third * dn) < 1e-15);
  CHECK(std::abs(s.matrix.at(1, 2)) == 0.0);
  CHECK(std::abs(s.matrix.at(3, 0) - third * dn) < 1e-15);
}

TEST_CASE("oqrw_reduced coins phase the projection columns instead of rows") {
  const double xi = 0.7;
  const double c = std::cos(xi), s = std::sin(xi);
  const Coin reduced = oqrw_reduce(CMatrix{{c, 0.0}, {s, 0.0}}, CMatrix{{0.0, s}, {0.0, c}});
  const double k = 0.9;
  const double karr[1] = {k};
  const SymbolPoint sp = symbol(reduced, karr);
  const cd up(std::cos(k), std::sin(k));
  const cd dn = std::conj(up);
  CHECK(std::abs(sp.matrix.at(0, 0) - up * cd(c * c)) < 1e-15);
  CHECK(std::abs(sp.matrix.at(1, 0) - up * cd(s * s)) < 1e-15);
  CHECK(std::abs(sp.matrix.at(0, 1) - dn * cd(s * s)) < 1e-15);
  CHECK(std::abs(sp.matrix.at(1, 1) - dn * cd(c * c)) < 1e-15);
}

TEST_CASE("det at u=0 is 1; Hadamard point value") {
  const Coin had = qw_coin(kPi / 4);
  const double karr[1] = {kPi / 2};
  const SymbolPoint s = symbol(had, karr);
  CHECK(det_one_minus_u(s, cd(0.0)) == cd(1.0));
  // 1 - 2 i cos xi sin k * u - u^2 at xi=pi/4, k=pi/2, u=1/2
  const cd expect = cd(0.75, -1.0 / std::sqrt(2.0));
  CHECK(std::abs(det_one_minus_u(s, cd(0.5)) - expect) < 1e-14);
}

TEST_CASE("2D Grover F-type determinant at the origin is (1-u)^3 (1+u)") {
  const Coin g4f = flip_flop(grover_matrix(4), 2);
  const double k[2] = {0.0, 0.0};
  const SymbolPoint s = symbol(g4f, k);
  for (const cd u : {cd(0.2), cd(-0.6), cd(0.0, 0.4), cd(0.3, 0.3), cd(0.95)}) {
    const cd expect = (1.0 - u) * (1.0 - u) * (1.0 - u) * (1.0 + u);
    CHECK(std::abs(det_one_minus_u(s, u) - expect) < 1e-12);
  }
}

TEST_CASE("det polynomial of the 1D families") {
  const double xi = 0.6;
  const double k = 1.3;
  const double karr[1] = {k};

  const Polynomial qm = det_polynomial(symbol(qw_coin(xi), karr));
  REQUIRE(qm.degree() == 2);
  CHECK(std::abs(qm.coeffs[0] - cd(1.0)) == 0.0);
  CHECK(std::abs(qm.coeffs[1] - cd(0.0, -2.0 * std::cos(xi) * std::sin(k))) < 1e-14);
  CHECK(std::abs(qm.coeffs[2] + cd(1.0)) < 1e-14);

  const Polynomial qf = det_polynomial(symbol(flip_flop(qw_coin(xi), 1), karr));
  REQUIRE(qf.degree() == 2);
  CHECK(std::abs(qf.coeffs[1] - cd(-2.0 * std::sin(xi) * std::cos(k))) < 1e-14);
  CHECK(std::abs(qf.coeffs[2] - cd(1.0)) < 1e-14);

  // the RW symbol is rank deficient: degree drops to 1
  const Polynomial rm = det_polynomial(symbol(rw_coin(xi), karr));
  REQUIRE(rm.degree() == 1);
  const double c2 = std::cos(xi) * std::cos(xi);
  const cd expect = -(cd(0.0, 2.0 * c2 * std::sin(k)) + std::exp(cd(0.0, -k)));
  CHECK(std::abs(rm.coeffs[1] - expect) < 1e-14);
}

TEST_CASE("det polynomial has constant term 1 and matches pointwise dets") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> box(-0.6, 0.6);
  for (const Coin& coin : {grover_matrix(4), fourier_matrix(4), flip_flop(grover_matrix(6), 3)}) {
    std::vector<double> k(coin.dimension());
    for (auto& v : k) v = angle(rng);
    const SymbolPoint s = symbol(coin, k);
    const Polynomial p = det_polynomial(s);
    CHECK(p.coeffs[0] == cd(1.0));
    for (int t = 0; t < 10; ++t) {
      const cd u(box(rng), box(rng));
      CHECK(std::abs(p.eval(u) - det_one_minus_u(s, u)) < 1e-10);
    }
  }
}

TEST_CASE("conjugate momenta give conjugate det polynomials for real coins") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (const Coin& coin : {grover_matrix(4), crw_coin(0.8), positive_support_grover_coin(4)}) {
    const int d = coin.dimension();
    std::vector<double> k(d), kc(d);
    for (int j = 0; j < d; ++j) {
      k[j] = angle(rng);
      kc[j] = 2.0 * kPi - k[j];
    }
    const Polynomial a = det_polynomial(symbol(coin, k));
    const Polynomial b = det_polynomial(symbol(coin, kc));
    REQUIRE(a.coeffs.size() == b.coeffs.size());
    for (size_t i = 0; i < a.coeffs.size(); ++i)
      CHECK(std::abs(a.coeffs[i] - std::conj(b.coeffs[i])) < 1e-12);
  }
}

TEST_CASE("unitary symbols keep det(I - uM) away from zero inside the unit disk") {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> rad(0.0, 0.97);
  const Coin had = qw_coin(kPi / 4);
  for (int t = 0; t < 50; ++t) {
    const double karr[1] = {angle(rng)};
    const double phi = angle(rng);
    const cd u = rad(rng) * cd(std::cos(phi), std::sin(phi));
    CHECK(std::abs(det_one_minus_u(symbol(had, karr), u)) > 0.0);
  }
}

TEST_CASE("2D Grover F-type det polynomial divides by 1 - u^2") {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  const Coin g4f = flip_flop(grover_matrix(4), 2);
  const Polynomial pre{{1.0, 0.0, -1.0}};
  for (int t = 0; t < 10; ++t) {
    const double k[2] = {angle(rng), angle(rng)};
    const auto [q, r] = det_polynomial(symbol(g4f, k)).divrem(pre);
    for (const cd& c : r.coeffs) CHECK(std::abs(c) < 1e-10);
    const double cw = std::cos(k[0]) + std::cos(k[1]);
    REQUIRE(q.degree() == 2);
    CHECK(std::abs(q.coeffs[0] - cd(1.0)) < 1e-10);
    CHECK(std::abs(q.coeffs[1] + cd(cw)) < 1e-10);
    CHECK(std::abs(q.coeffs[2] - cd(1.0)) < 1e-10);
  }
}

TEST_CASE("factorization check: 1D Hadamard") {
  const std::vector<cd> us{cd(0.1), cd(0.0, 0.3), cd(0.2, 0.2)};
  const auto report = verify_factorization(qw_coin(kPi / 4), TorusConfig{1, 4}, us);
  CHECK(report.max_rel_err < 1e-9);
  REQUIRE(report.samples.size() == 3);

  const std::vector<cd> zero{cd(0.0)};
  const auto trivial = verify_factorization(qw_coin(kPi / 4), TorusConfig{1, 4}, zero);
  CHECK(trivial.samples[0].lhs == cd(1.0));
  CHECK(trivial.samples[0].rhs == cd(1.0));
}

TEST_CASE("factorization check: 2D Grover M-type on a 3-torus") {
  const std::vector<cd> us{cd(0.15), cd(0.1, -0.2)};
  const auto report = verify_factorization(grover_matrix(4), TorusConfig{2, 3}, us);
  CHECK(report.max_rel_err < 1e-8);
}

TEST_CASE("factorization refuses oversized dense determinants") {
  const std::vector<cd> us{cd(0.1)};
  CHECK_THROWS_AS(verify_factorization(grover_matrix(4), TorusConfig{2, 40}, us), SizeExceeded);
}

TEST_CASE("symbol dimension mismatch") {
  const double k[2] = {0.1, 0.2};
  CHECK_THROWS_AS(symbol(qw_coin(0.3), k), DimensionMismatch);
}
