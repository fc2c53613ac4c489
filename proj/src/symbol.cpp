#include "walkzeta/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace walkzeta {

namespace {
constexpr long kFactorizationDenseCap = 4096;
}

SymbolPoint symbol(const StepFactors& f, std::span<const double> k_tilde) {
  if (static_cast<int>(k_tilde.size()) != f.dim)
    throw DimensionMismatch("symbol: momentum dimension does not match the walk");
  CMatrix m(f.states, f.states);
  for (int j = 0; j < f.dim; ++j) {
    const cd up(std::cos(k_tilde[j]), std::sin(k_tilde[j]));
    const cd dn = std::conj(up);
    for (int i : f.from_plus[j].nz_rows)
      for (int c = 0; c < f.states; ++c) m.at(i, c) += up * f.from_plus[j].m.at(i, c);
    for (int i : f.from_minus[j].nz_rows)
      for (int c = 0; c < f.states; ++c) m.at(i, c) += dn * f.from_minus[j].m.at(i, c);
  }
  if (f.stay)
    for (int i : f.stay->nz_rows)
      for (int c = 0; c < f.states; ++c) m.at(i, c) += f.stay->m.at(i, c);
  return SymbolPoint{std::vector<double>(k_tilde.begin(), k_tilde.end()), std::move(m)};
}

SymbolPoint symbol(const Coin& coin, std::span<const double> k_tilde) {
  return symbol(factors_of(coin), k_tilde);
}

cd det_one_minus_u(const SymbolPoint& s, cd u) {
  CMatrix m = CMatrix::identity(s.matrix.rows());
  m -= u * CMatrix(s.matrix);
  return det(m);
}

Polynomial det_polynomial(const SymbolPoint& s) {
  if (s.matrix.rows() > 16) throw SizeExceeded("det_polynomial: symbol larger than 16x16");
  const Polynomial cp = charpoly(s.matrix);
  // det(I - uM) = u^n det((1/u)I - M): reverse the lambda coefficients.
  std::vector<cd> rev(cp.coeffs.rbegin(), cp.coeffs.rend());
  return Polynomial(std::move(rev)).trimmed();
}

std::vector<std::vector<double>> momentum_grid(int dim, int n) {
  const double step = 2.0 * std::numbers::pi / n;
  long total = 1;
  for (int j = 0; j < dim; ++j) total *= n;
  std::vector<std::vector<double>> grid;
  grid.reserve(total);
  std::vector<int> idx(dim, 0);
  for (long t = 0; t < total; ++t) {
    std::vector<double> k(dim);
    for (int j = 0; j < dim; ++j) k[j] = idx[j] * step;
    grid.push_back(std::move(k));
    for (int j = dim - 1; j >= 0; --j) {
      if (++idx[j] < n) break;
      idx[j] = 0;
    }
  }
  return grid;
}

std::vector<PairedGridItem> paired_momentum_grid(int dim, int n) {
  const double step = 2.0 * std::numbers::pi / n;
  std::vector<PairedGridItem> items;
  std::vector<int> idx(dim, 0), conj(dim, 0);
  long total = 1;
  for (int j = 0; j < dim; ++j) total *= n;
  for (long t = 0; t < total; ++t) {
    bool self = true, canonical = true;
    for (int j = 0; j < dim; ++j) {
      conj[j] = (n - idx[j]) % n;
      if (conj[j] != idx[j]) self = false;
    }
    for (int j = 0; j < dim; ++j) {
      if (idx[j] < conj[j]) break;
      if (idx[j] > conj[j]) {
        canonical = false;
        break;
      }
    }
    if (canonical) {
      PairedGridItem item;
      item.paired = !self;
      item.k.resize(dim);
      item.k_conj.resize(dim);
      for (int j = 0; j < dim; ++j) {
        item.k[j] = idx[j] * step;
        item.k_conj[j] = conj[j] * step;
      }
      items.push_back(std::move(item));
    }
    for (int j = dim - 1; j >= 0; --j) {
      if (++idx[j] < n) break;
      idx[j] = 0;
    }
  }
  return items;
}

FactorizationReport verify_factorization(const StepFactors& f, TorusConfig config,
                                         std::span<const cd> u_samples) {
  const long size = config.total_sites() * f.states;
  if (size > kFactorizationDenseCap)
    throw SizeExceeded("verify_factorization: dense determinant above size 4096");
  const CMatrix ma = assemble_operator(f, config).dense();
  const auto grid = momentum_grid(config.dim, config.n_sites);

  FactorizationReport report;
  for (const cd u : u_samples) {
    CMatrix lhs_m = CMatrix::identity(static_cast<int>(size));
    lhs_m -= u * CMatrix(ma);
    const cd lhs = det(lhs_m);
    cd rhs = 1.0;
    for (const auto& k : grid) rhs *= det_one_minus_u(symbol(f, k), u);
    const double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    const double rel = std::abs(lhs - rhs) / denom;
    report.samples.push_back(FactorizationSample{u, lhs, rhs, rel});
    report.max_rel_err = std::max(report.max_rel_err, rel);
  }
  return report;
}

FactorizationReport verify_factorization(const Coin& coin, TorusConfig config,
                                         std::span<const cd> u_samples) {
  return verify_factorization(factors_of(coin), config, u_samples);
}

}  // namespace walkzeta
