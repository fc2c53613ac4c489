#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "walkzeta/zeta.hpp"

namespace walkzeta {

using FPoly = std::function<cd(std::span<const double>, cd)>;

/// One closed-form factorization det(I - u M(w)) = prefactor(u) * F(w, u).
/// Entries whose published form is suspect carry the alternate readings as
/// variants; catalog_verify measures every variant against the determinant
/// and reports which one matches.
struct CatalogEntry {
  std::string id;
  int dim = 1;
  int states = 2;
  ShiftKind shift = ShiftKind::moving;
  Polynomial prefactor;  // localization factor; constant 1 when absent
  FPoly f;               // canonical F(w, u)
  struct Variant {
    std::string label;
    FPoly f;
  };
  std::vector<Variant> variants;
  StepFactors factors;  // the walk this entry describes (determinant oracle)
  std::string note;
};

/// Every catalog entry. xi parametrises the 1D QW/CRW/RW families;
/// d_high instantiates the general-d F-type entries (d_high >= 3).
std::vector<CatalogEntry> catalog(double xi = 0.6, int d_high = 3);

const CatalogEntry& catalog_find(const std::vector<CatalogEntry>& entries, const std::string& id);

/// prefactor(u) * F(w, u).
cd catalog_f(const CatalogEntry& e, std::span<const double> w, cd u);

/// e_j of (cos w_1, ..., cos w_n).
double elementary_symmetric_cos(int j, std::span<const double> w);

struct CatalogVerifyReport {
  std::string id;
  double max_abs_err = 0.0;  // canonical F against the determinant
  std::vector<std::pair<std::string, double>> variant_errs;
  std::string matched;  // which form matches to < tol ("canonical", a variant label, or "none")
  bool pass = false;    // canonical error below tol
  std::string note;
};

CatalogVerifyReport catalog_verify(const CatalogEntry& e, int n_samples = 100,
                                   unsigned seed = 20240901, double tol = 1e-9);

}  // namespace walkzeta
