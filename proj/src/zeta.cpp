#include "walkzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "walkzeta/parallel.hpp"

namespace walkzeta {

namespace {

constexpr double kDetFloor = 1e-12;
constexpr int kSeriesCap = 64;
constexpr int kClosedFormCap = 30;
constexpr long kDirectTraceCap = 4096;

cd pow_int(cd base, int e) {
  cd acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

struct LogSumAcc {
  cd sum{0.0};
  double min_abs = std::numeric_limits<double>::infinity();
  bool branch_risk = false;

  void add_det(cd d) {
    min_abs = std::min(min_abs, std::abs(d));
    if (d.real() < 0.0 && std::abs(d.imag()) <= 1e-9 * std::max(1.0, std::abs(d.real())))
      branch_risk = true;
    sum += std::log(d);
  }
};

std::string grid_label(const TorusConfig& c) {
  return "T^" + std::to_string(c.dim) + "_" + std::to_string(c.n_sites);
}

}  // namespace

std::string to_string(SeriesMethod m) {
  switch (m) {
    case SeriesMethod::fourier_trace: return "fourier";
    case SeriesMethod::direct_trace: return "direct";
    case SeriesMethod::dp_weight: return "dp";
    case SeriesMethod::closed_form: return "closed";
    case SeriesMethod::quadrature: return "quadrature";
  }
  return "fourier";
}

ZetaEvaluation zeta_inv_finite(const StepFactors& f, TorusConfig config, cd u) {
  const auto items = paired_momentum_grid(config.dim, config.n_sites);
  // Conjugate pairs are summed adjacently so imaginary parts cancel for real
  // data instead of surviving as grid-ordering noise.
  LogSumAcc total = deterministic_map_reduce<LogSumAcc>(
      static_cast<long>(items.size()), LogSumAcc{},
      [&](long i, LogSumAcc& acc) {
        const PairedGridItem& item = items[i];
        acc.add_det(det_one_minus_u(symbol(f, item.k), u));
        if (item.paired) acc.add_det(det_one_minus_u(symbol(f, item.k_conj), u));
      },
      [](LogSumAcc& a, const LogSumAcc& b) {
        a.sum += b.sum;
        a.min_abs = std::min(a.min_abs, b.min_abs);
        a.branch_risk = a.branch_risk || b.branch_risk;
      });
  if (total.min_abs < kDetFloor)
    throw DetNearZero("zeta_inv_finite: a grid determinant vanishes at this u");

  ZetaEvaluation ev;
  ev.u = u;
  ev.log_zeta_inv = total.sum / static_cast<double>(config.total_sites());
  ev.zeta_inv = std::exp(ev.log_zeta_inv);
  ev.imag_residual = std::abs(ev.log_zeta_inv.imag());
  ev.grid = grid_label(config);
  ev.branch_risk = total.branch_risk;
  return ev;
}

ZetaEvaluation zeta_inv_finite(const Coin& coin, TorusConfig config, cd u) {
  return zeta_inv_finite(factors_of(coin), config, u);
}

cd zeta_value(const ZetaEvaluation& ev) {
  if (std::abs(ev.zeta_inv) < 1e-300)
    throw DetNearZero("zeta_value: the inverse evaluation vanished");
  return 1.0 / ev.zeta_inv;
}

ZetaLimit zeta_inv_limit(const StepFactors& f, int d, cd u, int grid_m, double tol) {
  if (grid_m < 2) throw BadSize("zeta_inv_limit: grid_m must be >= 2");
  ZetaLimit lim;
  lim.eval = zeta_inv_finite(f, TorusConfig{d, grid_m}, u);
  lim.eval.grid = "quadrature " + std::to_string(grid_m) + "^" + std::to_string(d);
  const ZetaEvaluation refined = zeta_inv_finite(f, TorusConfig{d, 2 * grid_m}, u);
  lim.value_refined = refined.zeta_inv;
  lim.diff = std::abs(lim.value_refined - lim.eval.zeta_inv);
  lim.tol = tol * std::max(std::abs(lim.value_refined), 1e-300);
  if (lim.diff > lim.tol)
    throw NotConverged("zeta_inv_limit: grid_m and 2*grid_m disagree by " +
                       std::to_string(lim.diff));
  return lim;
}

ZetaLimit zeta_inv_limit(const Coin& coin, int d, cd u, int grid_m, double tol) {
  return zeta_inv_limit(factors_of(coin), d, u, grid_m, tol);
}

SeriesTable c_r_fourier(const StepFactors& f, TorusConfig config, int rmax) {
  if (rmax < 1 || rmax > kSeriesCap) throw BadSize("c_r series: rmax must be in 1..64");
  const auto items = paired_momentum_grid(config.dim, config.n_sites);

  using Acc = std::vector<cd>;
  auto add_point = [&](const std::vector<double>& k, Acc& acc) {
    const SymbolPoint s = symbol(f, k);
    CMatrix p = s.matrix;
    acc[0] += p.trace();
    for (int r = 2; r <= rmax; ++r) {
      p = matmul(p, s.matrix);
      acc[r - 1] += p.trace();
    }
  };
  Acc total = deterministic_map_reduce<Acc>(
      static_cast<long>(items.size()), Acc(rmax, cd(0.0)),
      [&](long i, Acc& acc) {
        add_point(items[i].k, acc);
        if (items[i].paired) add_point(items[i].k_conj, acc);
      },
      [](Acc& a, const Acc& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      });
  const double scale = 1.0 / static_cast<double>(config.total_sites());
  for (cd& v : total) v *= scale;
  return SeriesTable{SeriesMethod::fourier_trace, std::move(total)};
}

SeriesTable c_r_fourier(const Coin& coin, TorusConfig config, int rmax) {
  return c_r_fourier(factors_of(coin), config, rmax);
}

SeriesTable c_r_direct(const StepFactors& f, TorusConfig config, int rmax) {
  if (rmax < 1 || rmax > kSeriesCap) throw BadSize("c_r series: rmax must be in 1..64");
  const SparseOp op = assemble_operator(f, config);
  if (op.size > kDirectTraceCap)
    throw SizeExceeded("c_r_direct: operator above size 4096");

  using Acc = std::vector<cd>;
  Acc total = deterministic_map_reduce<Acc>(
      op.size, Acc(rmax, cd(0.0)),
      [&](long i, Acc& acc) {
        std::vector<cd> v(op.size, cd(0.0));
        v[i] = 1.0;
        for (int r = 1; r <= rmax; ++r) {
          v = op.apply(v);
          acc[r - 1] += v[i];
        }
      },
      [](Acc& a, const Acc& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      },
      /*chunk_size=*/8);
  const double scale = 1.0 / static_cast<double>(config.total_sites());
  for (cd& v : total) v *= scale;
  return SeriesTable{SeriesMethod::direct_trace, std::move(total)};
}

SeriesTable c_r_direct(const Coin& coin, TorusConfig config, int rmax) {
  return c_r_direct(factors_of(coin), config, rmax);
}

SeriesTable c_r_limit(const StepFactors& f, int d, int rmax, int grid_m) {
  if (grid_m <= rmax)
    throw GridTooCoarse("c_r_limit: grid_m must exceed rmax (aliasing corrupts the limit)");
  SeriesTable t = c_r_fourier(f, TorusConfig{d, grid_m}, rmax);
  t.method = SeriesMethod::quadrature;
  return t;
}

SeriesTable c_r_limit(const Coin& coin, int d, int rmax, int grid_m) {
  return c_r_limit(factors_of(coin), d, rmax, grid_m);
}

SeriesTable c_r_dp(const Coin& coin, int d, int rmax) {
  return SeriesTable{SeriesMethod::dp_weight, return_weight_trace_series(coin, d, rmax)};
}

std::int64_t binomial(int n, int k) {
  if (n < 0 || n > 62) throw CapExceeded("binomial: n must be in 0..62 for exact int64");
  if (k < 0 || k > n) return 0;
  // Pascal row walk; every intermediate fits because the final row does.
  std::vector<std::int64_t> row(static_cast<size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

cd hyp2f1_terminating(int l, cd z) {
  if (l < 1) throw BadSize("hyp2f1_terminating: l must be >= 1");
  if (l > kClosedFormCap) throw CapExceeded("hyp2f1_terminating: l above 30");
  cd sum = 0.0;
  cd zpow = 1.0;  // z^{k-1}
  for (int k = 1; k <= l; ++k) {
    const double b = static_cast<double>(binomial(l - 1, k - 1));
    sum += (b * b / static_cast<double>(k)) * zpow;
    zpow *= z;
  }
  return sum;
}

cd c_2l_closed_1d(const Coin& coin, int l) {
  if (coin.states != 2) throw DimensionMismatch("c_2l_closed_1d: needs a 2x2 coin");
  if (l < 1) throw BadSize("c_2l_closed_1d: l must be >= 1");
  if (l > kClosedFormCap) throw CapExceeded("c_2l_closed_1d: l above 30");
  const cd a11 = coin.matrix.at(0, 0), a12 = coin.matrix.at(0, 1);
  const cd a21 = coin.matrix.at(1, 0), a22 = coin.matrix.at(1, 1);
  for (const cd& a : {a11, a12, a21, a22})
    if (std::abs(a) < 1e-14)
      throw ZeroEntry("c_2l_closed_1d: formula requires a11 a12 a21 a22 != 0");

  const cd diag = a11 * a22;
  const cd ratio = (a12 * a21) / diag;
  cd sum = 0.0;
  cd rpow = ratio;  // ratio^m
  for (int m = 1; m <= l; ++m) {
    const double b = static_cast<double>(binomial(l - 1, m - 1));
    sum += (b * b / static_cast<double>(m)) * rpow;
    rpow *= ratio;
  }
  const cd finite_form = 2.0 * static_cast<double>(l) * pow_int(diag, l) * sum;
  const cd hyp_form =
      2.0 * static_cast<double>(l) * pow_int(diag, l - 1) * (a12 * a21) * hyp2f1_terminating(l, ratio);
  const double scale = std::max({std::abs(finite_form), std::abs(hyp_form), 1.0});
  if (std::abs(finite_form - hyp_form) > 1e-12 * scale)
    throw Error("c_2l_closed_1d: finite-sum and 2F1 routes disagree");
  return finite_form;
}

SeriesTable c_r_closed(const Coin& coin, int rmax) {
  if (rmax < 1 || rmax > kSeriesCap) throw BadSize("c_r series: rmax must be in 1..64");
  std::vector<cd> values(rmax, cd(0.0));
  for (int l = 1; 2 * l <= rmax; ++l) values[2 * l - 1] = c_2l_closed_1d(coin, l);
  return SeriesTable{SeriesMethod::closed_form, std::move(values)};
}

SeriesConsistencyReport series_consistency(const StepFactors& f, TorusConfig config, int rmax,
                                           std::span<const cd> u_samples) {
  double bound = 0.0;
  for (const auto& k : momentum_grid(config.dim, config.n_sites))
    bound = std::max(bound, symbol(f, k).matrix.norm_inf());

  SeriesConsistencyReport report;
  report.spectral_bound = bound;
  const SeriesTable series = c_r_fourier(f, config, rmax);
  for (const cd u : u_samples) {
    const double x = std::abs(u) * bound;
    if (x >= 0.8)
      throw RadiusViolation("series_consistency: |u| * spectral bound must stay below 0.8");
    cd logsum = 0.0;
    cd upow = 1.0;
    for (int r = 1; r <= rmax; ++r) {
      upow *= u;
      logsum += series.at(r) * upow / static_cast<double>(r);
    }
    const cd product = std::exp(logsum) * zeta_inv_finite(f, config, u).zeta_inv;
    const double residual = std::abs(product - 1.0);
    const double dc = static_cast<double>(f.states);
    const double tolerance =
        4.0 * dc * std::pow(x, rmax + 1) / ((rmax + 1) * (1.0 - x)) + 1e-12;
    report.samples.push_back(SeriesConsistencySample{u, residual, tolerance,
                                                     residual <= tolerance});
    report.all_pass = report.all_pass && report.samples.back().pass;
  }
  return report;
}

SeriesConsistencyReport series_consistency(const Coin& coin, TorusConfig config, int rmax,
                                           std::span<const cd> u_samples) {
  return series_consistency(factors_of(coin), config, rmax, u_samples);
}

}  // namespace walkzeta
