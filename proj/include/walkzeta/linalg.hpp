#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "walkzeta/errors.hpp"

namespace walkzeta {

using cd = std::complex<double>;

/// Dense complex matrix, row-major. The one carrier for every coin,
/// projection, symbol and weight in the library.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
  CMatrix(int rows, int cols, std::vector<cd> entries);
  CMatrix(std::initializer_list<std::initializer_list<cd>> rows);

  static CMatrix identity(int n);
  static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cd& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const cd& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const std::vector<cd>& entries() const { return e_; }
  std::vector<cd>& entries() { return e_; }

  CMatrix conjugated() const;
  CMatrix adjoint() const;
  CMatrix transposed() const;
  cd trace() const;
  bool all_finite() const;

  /// max_ij |a_ij|
  double max_abs() const;
  /// induced infinity norm (max absolute row sum); cheap spectral-radius bound
  double norm_inf() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cd s);
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cd s, CMatrix a) { return a *= s; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cd> e_;
};

/// Polynomial over C, coefficients ascending (index 0 = constant term).
struct Polynomial {
  std::vector<cd> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<cd> c) : coeffs(std::move(c)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  cd eval(cd x) const;

  /// Drops trailing coefficients with |c_j| <= eps * max(1, max |c|).
  Polynomial trimmed(double eps = 1e-12) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);

  /// Long division: *this = q * divisor + r, deg(r) < deg(divisor).
  std::pair<Polynomial, Polynomial> divrem(const Polynomial& divisor) const;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Determinant by LU with partial pivoting. A pivot below 1e-14 in magnitude
/// yields exactly 0.
cd det(const CMatrix& a);

/// Coefficients of det(lambda I - a), ascending in lambda, by
/// Faddeev-LeVerrier. Size capped at 16.
Polynomial charpoly(const CMatrix& a);

/// Tr(a^r) by repeated multiplication, r >= 1.
cd matpow_trace(const CMatrix& a, int r);

}  // namespace walkzeta
