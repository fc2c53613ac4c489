#include "walkzeta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace walkzeta {

namespace {
constexpr double kPivotZero = 1e-14;
constexpr int kCharpolyCap = 16;
}  // namespace

CMatrix::CMatrix(int rows, int cols, std::vector<cd> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (e_.size() != static_cast<size_t>(rows_) * cols_)
    throw DimensionMismatch("CMatrix: entry count does not match rows*cols");
  if (!all_finite()) throw Error("CMatrix: non-finite entry");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cd>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  e_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_)
      throw DimensionMismatch("CMatrix: ragged initializer");
    e_.insert(e_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::conjugated() const {
  CMatrix m(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = std::conj(e_[i]);
  return m;
}

CMatrix CMatrix::adjoint() const { return conjugated().transposed(); }

CMatrix CMatrix::transposed() const {
  CMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  return m;
}

cd CMatrix::trace() const {
  if (!square()) throw NotSquare("trace: matrix not square");
  cd t = 0.0;
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

bool CMatrix::all_finite() const {
  for (const cd& z : e_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cd& z : e_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::norm_inf() const {
  double m = 0.0;
  for (int r = 0; r < rows_; ++r) {
    double s = 0.0;
    for (int c = 0; c < cols_; ++c) s += std::abs(at(r, c));
    m = std::max(m, s);
  }
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("operator+=: shape mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("operator-=: shape mismatch");
  for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cd s) {
  for (cd& z : e_) z *= s;
  return *this;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matmul: inner dimensions differ");
  CMatrix out(a.rows(), b.cols());
  // Fixed ascending-k accumulation: results are reproducible bit for bit.
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      cd s = 0.0;
      for (int k = 0; k < a.cols(); ++k) s += a.at(i, k) * b.at(k, j);
      out.at(i, j) = s;
    }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cd aij = a.at(i, j);
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c)
          out.at(i * b.rows() + r, j * b.cols() + c) = aij * b.at(r, c);
    }
  return out;
}

cd det(const CMatrix& a) {
  if (!a.square()) throw NotSquare("det: matrix not square");
  const int n = a.rows();
  CMatrix lu = a;
  cd d = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(lu.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(lu.at(r, col));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < kPivotZero) return 0.0;
    if (piv != col) {
      for (int c = col; c < n; ++c) std::swap(lu.at(piv, c), lu.at(col, c));
      d = -d;
    }
    const cd pivot = lu.at(col, col);
    d *= pivot;
    for (int r = col + 1; r < n; ++r) {
      const cd factor = lu.at(r, col) / pivot;
      for (int c = col + 1; c < n; ++c) lu.at(r, c) -= factor * lu.at(col, c);
    }
  }
  return d;
}

Polynomial charpoly(const CMatrix& a) {
  if (!a.square()) throw NotSquare("charpoly: matrix not square");
  const int n = a.rows();
  if (n > kCharpolyCap) throw SizeExceeded("charpoly: size above 16");
  // Faddeev-LeVerrier: M_1 = A, c_{n-k} = -Tr(M_k)/k, M_{k+1} = A(M_k + c_{n-k} I).
  std::vector<cd> c(static_cast<size_t>(n) + 1);
  c[n] = 1.0;
  CMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    c[n - k] = -m.trace() / static_cast<double>(k);
    if (k == n) break;
    for (int i = 0; i < n; ++i) m.at(i, i) += c[n - k];
    m = matmul(a, m);
  }
  return Polynomial(std::move(c));
}

cd matpow_trace(const CMatrix& a, int r) {
  if (!a.square()) throw NotSquare("matpow_trace: matrix not square");
  if (r < 1) throw BadSize("matpow_trace: r must be >= 1");
  CMatrix p = a;
  for (int i = 1; i < r; ++i) p = matmul(p, a);
  return p.trace();
}

cd Polynomial::eval(cd x) const {
  cd acc = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

Polynomial Polynomial::trimmed(double eps) const {
  double scale = 1.0;
  for (const cd& z : coeffs) scale = std::max(scale, std::abs(z));
  size_t n = coeffs.size();
  while (n > 1 && std::abs(coeffs[n - 1]) <= eps * scale) --n;
  return Polynomial(std::vector<cd>(coeffs.begin(), coeffs.begin() + n));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return Polynomial{};
  std::vector<cd> c(a.coeffs.size() + b.coeffs.size() - 1);
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<cd> c(std::max(a.coeffs.size(), b.coeffs.size()));
  for (size_t i = 0; i < c.size(); ++i) {
    cd v = 0.0;
    if (i < a.coeffs.size()) v += a.coeffs[i];
    if (i < b.coeffs.size()) v -= b.coeffs[i];
    c[i] = v;
  }
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divrem(const Polynomial& divisor) const {
  Polynomial d = divisor.trimmed(0.0);
  if (d.coeffs.empty() || (d.coeffs.size() == 1 && d.coeffs[0] == cd(0.0)))
    throw ZeroEntry("divrem: division by zero polynomial");
  std::vector<cd> rem = coeffs;
  const int dn = d.degree();
  const cd lead = d.coeffs[dn];
  if (static_cast<int>(rem.size()) - 1 < dn) return {Polynomial{{cd(0.0)}}, Polynomial(rem)};
  std::vector<cd> quot(rem.size() - dn);
  for (int i = static_cast<int>(rem.size()) - 1; i >= dn; --i) {
    const cd q = rem[i] / lead;
    quot[i - dn] = q;
    for (int j = 0; j <= dn; ++j) rem[i - dn + j] -= q * d.coeffs[j];
  }
  rem.resize(dn > 0 ? dn : 1);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

}  // namespace walkzeta
