#include "walkzeta/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace walkzeta {

namespace {

const cd kI(0.0, 1.0);

Polynomial poly(std::initializer_list<cd> c) { return Polynomial(std::vector<cd>(c)); }

Polynomial one_minus_u2_pow(int e) {
  Polynomial acc = poly({1.0});
  const Polynomial base = poly({1.0, 0.0, -1.0});
  for (int i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

CatalogEntry entry(std::string id, const Coin& coin, Polynomial prefactor, FPoly f,
                   std::string note = {}) {
  CatalogEntry e;
  e.id = std::move(id);
  e.factors = factors_of(coin);
  e.dim = e.factors.dim;
  e.states = coin.states;
  e.shift = coin.shift_kind;
  e.prefactor = std::move(prefactor);
  e.f = std::move(f);
  e.note = std::move(note);
  return e;
}

}  // namespace

double elementary_symmetric_cos(int j, std::span<const double> w) {
  const int n = static_cast<int>(w.size());
  if (j < 0 || j > n) throw BadSize("elementary_symmetric_cos: j out of range");
  // e_j via the coefficient recurrence of prod (1 + x cos w_t).
  std::vector<double> e(static_cast<size_t>(n) + 1, 0.0);
  e[0] = 1.0;
  for (int t = 0; t < n; ++t) {
    const double c = std::cos(w[t]);
    for (int m = t + 1; m >= 1; --m) e[m] += c * e[m - 1];
  }
  return e[j];
}

std::vector<CatalogEntry> catalog(double xi, int d_high) {
  if (d_high < 3) throw BadSize("catalog: d_high must be >= 3");
  std::vector<CatalogEntry> out;
  const double c = std::cos(xi), s = std::sin(xi);
  const double c2 = c * c, s2 = s * s;

  // 1D QW, M and F
  out.push_back(entry("qw-1d-m", qw_coin(xi), poly({1.0}), [c](std::span<const double> w, cd u) {
    return 1.0 - 2.0 * kI * c * std::sin(w[0]) * u - u * u;
  }));
  out.push_back(entry("qw-1d-f", flip_flop(qw_coin(xi), 1), poly({1.0}),
                      [s](std::span<const double> w, cd u) {
                        return 1.0 - 2.0 * s * std::cos(w[0]) * u + u * u;
                      }));

  // 1D CRW, M and F
  out.push_back(entry("crw-1d-m", crw_coin(xi), poly({1.0}),
                      [c2, xi](std::span<const double> w, cd u) {
                        return 1.0 - 2.0 * c2 * std::cos(w[0]) * u + std::cos(2.0 * xi) * u * u;
                      }));
  out.push_back(entry("crw-1d-f", flip_flop(crw_coin(xi), 1), poly({1.0}),
                      [s2, xi](std::span<const double> w, cd u) {
                        return 1.0 - 2.0 * s2 * std::cos(w[0]) * u - std::cos(2.0 * xi) * u * u;
                      }));

  // 1D RW, M and F (degree-1 determinants)
  out.push_back(entry("rw-1d-m", rw_coin(xi), poly({1.0}), [c2](std::span<const double> w, cd u) {
    return 1.0 - (2.0 * kI * c2 * std::sin(w[0]) + std::exp(-kI * w[0])) * u;
  }));
  out.push_back(entry("rw-1d-f", flip_flop(rw_coin(xi), 1), poly({1.0}),
                      [c2](std::span<const double> w, cd u) {
                        return 1.0 + (2.0 * kI * c2 * std::sin(w[0]) - std::exp(kI * w[0])) * u;
                      }));

  // symmetric RW
  out.push_back(entry("sym-rw-1d", rw_coin(std::numbers::pi / 4), poly({1.0}),
                      [](std::span<const double> w, cd u) { return 1.0 - std::cos(w[0]) * u; }));

  // 3-state Grover, M (prefactor 1-u) and F (prefactor 1+u)
  out.push_back(entry("three-state-grover-m", three_state_grover_coin(ShiftKind::moving),
                      poly({1.0, -1.0}), [](std::span<const double> w, cd u) {
                        return 1.0 + (2.0 / 3.0) * (2.0 + std::cos(w[0])) * u + u * u;
                      }));
  out.push_back(entry("three-state-grover-f", three_state_grover_coin(ShiftKind::flipflop),
                      poly({1.0, 1.0}), [](std::span<const double> w, cd u) {
                        return 1.0 - (2.0 / 3.0) * (1.0 + 2.0 * std::cos(w[0])) * u + u * u;
                      }));

  // OQRW with the worked Kraus pair: quartic in u
  {
    CatalogEntry e;
    e.id = "oqrw-example";
    e.factors = factors_of(oqrw_example_pair());
    e.dim = 1;
    e.states = 4;
    e.shift = ShiftKind::moving;
    e.prefactor = poly({1.0});
    e.f = [](std::span<const double> w, cd u) {
      const double cw = std::cos(w[0]);
      return 1.0 - (8.0 * cw / 3.0) * u + ((8.0 * cw * cw + 1.0) / 3.0) * u * u -
             (16.0 / 27.0) * cw * (2.0 * cw * cw + 1.0) * u * u * u +
             (4.0 / 81.0) * cw * cw * (4.0 * cw * cw + 5.0) * u * u * u * u;
    };
    out.push_back(std::move(e));
  }

  // OQRW reduced to the CRW: right-projection symbol, same F as crw-1d-m
  {
    CMatrix b{{c, 0.0}, {s, 0.0}};
    CMatrix cc{{0.0, s}, {0.0, c}};
    out.push_back(entry("oqrw-crw-1d", oqrw_reduce(b, cc), poly({1.0}),
                        [c2, xi](std::span<const double> w, cd u) {
                          return 1.0 - 2.0 * c2 * std::cos(w[0]) * u + std::cos(2.0 * xi) * u * u;
                        }));
  }

  // 2D Grover, both shifts localized by (1 - u^2)
  out.push_back(entry("grover-2d-m", grover_matrix(4), one_minus_u2_pow(1),
                      [](std::span<const double> w, cd u) {
                        return 1.0 + (std::cos(w[0]) + std::cos(w[1])) * u + u * u;
                      }));
  out.push_back(entry("grover-2d-f", flip_flop(grover_matrix(4), 2), one_minus_u2_pow(1),
                      [](std::span<const double> w, cd u) {
                        return 1.0 - (std::cos(w[0]) + std::cos(w[1])) * u + u * u;
                      }));

  // 2D Fourier walk. The published M-type u^2 coefficient (1 - cos(w1-w2))
  // fails the determinant by O(1); the determinant gives (1 + cos(w1-w2)).
  // The corrected form is canonical, the published one kept as a variant.
  {
    auto q = [](std::span<const double> w) {
      return std::cos(w[0]) + std::sin(w[0]) + std::cos(w[1]) + std::sin(w[1]);
    };
    CatalogEntry e = entry(
        "fourier-2d-m", fourier_matrix(4), poly({1.0}),
        [q](std::span<const double> w, cd u) {
          return 1.0 - (1.0 + kI) / 2.0 * q(w) * u -
                 (1.0 - kI) / 2.0 * (1.0 + std::cos(w[0] - w[1])) * u * u +
                 (1.0 + kI) / 2.0 * q(w) * u * u * u - kI * u * u * u * u;
        },
        "canonical u^2 term uses 1 + cos(w1-w2); the published 1 - cos(w1-w2) is kept as "
        "variant 'published'");
    e.variants.push_back({"published", [q](std::span<const double> w, cd u) {
                            return 1.0 - (1.0 + kI) / 2.0 * q(w) * u -
                                   (1.0 - kI) / 2.0 * (1.0 - std::cos(w[0] - w[1])) * u * u +
                                   (1.0 + kI) / 2.0 * q(w) * u * u * u - kI * u * u * u * u;
                          }});
    out.push_back(std::move(e));
  }
  out.push_back(entry("fourier-2d-f", flip_flop(fourier_matrix(4), 2), poly({1.0}),
                      [](std::span<const double> w, cd u) {
                        const double dc = std::cos(w[0]) - std::cos(w[1]);
                        return 1.0 - dc * u +
                               (1.0 - kI) / 2.0 * (1.0 - std::cos(w[0] - w[1])) * u * u +
                               kI * dc * u * u * u - kI * u * u * u * u;
                      }));

  // 2D positive-support Grover: M-type has no localization factor, F-type does
  out.push_back(entry("ps-grover-2d-m", positive_support_grover_coin(4), poly({1.0}),
                      [](std::span<const double> w, cd u) {
                        const double c1 = std::cos(w[0]), cw2 = std::cos(w[1]);
                        return 1.0 - 2.0 * (1.0 + 2.0 * c1 * cw2) * u * u -
                               4.0 * (c1 + cw2) * u * u * u - 3.0 * u * u * u * u;
                      }));
  out.push_back(entry("ps-grover-2d-f", flip_flop(positive_support_grover_coin(4), 2),
                      one_minus_u2_pow(1), [](std::span<const double> w, cd u) {
                        return 1.0 - 2.0 * (std::cos(w[0]) + std::cos(w[1])) * u + 3.0 * u * u;
                      }));

  // d-dimensional Grover F-type, prefactor (1-u^2)^{d-1}
  {
    const int d = d_high;
    out.push_back(entry("grover-" + std::to_string(d) + "d-f",
                        flip_flop(grover_matrix(2 * d), d), one_minus_u2_pow(d - 1),
                        [d](std::span<const double> w, cd u) {
                          return 1.0 - (2.0 / d) * elementary_symmetric_cos(1, w) * u + u * u;
                        }));
  }

  // 3D Grover M-type
  out.push_back(entry("grover-3d-m", grover_matrix(6), one_minus_u2_pow(1),
                      [](std::span<const double> w, cd u) {
                        const double e1 = elementary_symmetric_cos(1, w);
                        const double e2 = elementary_symmetric_cos(2, w);
                        return 1.0 + (4.0 / 3.0) * e1 * u + (2.0 + (4.0 / 3.0) * e2) * u * u +
                               (4.0 / 3.0) * e1 * u * u * u + u * u * u * u;
                      }));

  // d-dimensional positive-support Grover F-type
  {
    const int d = d_high;
    out.push_back(entry("ps-grover-" + std::to_string(d) + "d-f",
                        flip_flop(positive_support_grover_coin(2 * d), d),
                        one_minus_u2_pow(d - 1), [d](std::span<const double> w, cd u) {
                          return 1.0 - 2.0 * elementary_symmetric_cos(1, w) * u +
                                 (2.0 * d - 1.0) * u * u;
                        }));
  }

  // 3D positive-support Grover M-type. The published u^5 term reads
  // e_1^(2,cos)(w) inside a d=3 formula; kept verbatim as canonical, with the
  // e_1^(3,cos) substitution as a variant. catalog_verify reports which one
  // the determinant supports.
  {
    auto base = [](std::span<const double> w, cd u) {
      const double e1 = elementary_symmetric_cos(1, w);
      const double e2 = elementary_symmetric_cos(2, w);
      const double e3 = elementary_symmetric_cos(3, w);
      return 1.0 - (3.0 + 4.0 * e2) * u * u - 8.0 * (e1 + 2.0 * e3) * u * u * u -
             3.0 * (3.0 + 4.0 * e2) * u * u * u * u - 5.0 * pow(u, 6);
    };
    CatalogEntry e = entry(
        "ps-grover-3d-m", positive_support_grover_coin(6), poly({1.0}),
        [base](std::span<const double> w, cd u) {
          const double e1_2 = std::cos(w[0]) + std::cos(w[1]);  // verbatim e_1^(2,cos)
          return base(w, u) - 8.0 * e1_2 * pow(u, 5);
        },
        "canonical stores the published e_1^(2,cos) u^5 term; variant 'e1-3cos' substitutes "
        "e_1^(3,cos)");
    e.variants.push_back({"e1-3cos", [base](std::span<const double> w, cd u) {
                            return base(w, u) - 8.0 * elementary_symmetric_cos(1, w) * pow(u, 5);
                          }});
    out.push_back(std::move(e));
  }

  return out;
}

const CatalogEntry& catalog_find(const std::vector<CatalogEntry>& entries, const std::string& id) {
  for (const CatalogEntry& e : entries)
    if (e.id == id) return e;
  throw ParseError("catalog entry not found: " + id);
}

cd catalog_f(const CatalogEntry& e, std::span<const double> w, cd u) {
  if (static_cast<int>(w.size()) != e.dim)
    throw DimensionMismatch("catalog_f: momentum dimension does not match the entry");
  return e.prefactor.eval(u) * e.f(w, u);
}

CatalogVerifyReport catalog_verify(const CatalogEntry& e, int n_samples, unsigned seed,
                                   double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> box(-0.7, 0.7);

  CatalogVerifyReport report;
  report.id = e.id;
  report.note = e.note;
  std::vector<double> variant_max(e.variants.size(), 0.0);
  std::vector<double> w(e.dim);
  for (int t = 0; t < n_samples; ++t) {
    for (int j = 0; j < e.dim; ++j) w[j] = angle(rng);
    const cd u(box(rng), box(rng));
    const cd oracle = det_one_minus_u(symbol(e.factors, w), u);
    const cd pre = e.prefactor.eval(u);
    report.max_abs_err = std::max(report.max_abs_err, std::abs(pre * e.f(w, u) - oracle));
    for (size_t v = 0; v < e.variants.size(); ++v)
      variant_max[v] = std::max(variant_max[v], std::abs(pre * e.variants[v].f(w, u) - oracle));
  }
  for (size_t v = 0; v < e.variants.size(); ++v)
    report.variant_errs.emplace_back(e.variants[v].label, variant_max[v]);

  report.pass = report.max_abs_err < tol;
  report.matched = "none";
  double best = tol;
  if (report.max_abs_err < best) {
    report.matched = "canonical";
    best = report.max_abs_err;
  }
  for (const auto& [label, err] : report.variant_errs)
    if (err < best) {
      report.matched = label;
      best = err;
    }
  return report;
}

}  // namespace walkzeta
