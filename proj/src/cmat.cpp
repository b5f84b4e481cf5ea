#include "qstc/cmat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qstc {

namespace {
[[noreturn]] void dim_error(const std::string& what) {
  throw std::invalid_argument("cmat: " + what);
}
}  // namespace

CMat::CMat(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) dim_error("matrix dimensions must be positive");
  entries_.assign(static_cast<std::size_t>(rows) * cols, cxd{0.0, 0.0});
}

CMat::CMat(int rows, int cols, std::initializer_list<cxd> entries)
    : rows_(rows), cols_(cols), entries_(entries) {
  if (rows <= 0 || cols <= 0) dim_error("matrix dimensions must be positive");
  if (entries_.size() != static_cast<std::size_t>(rows) * cols)
    dim_error("entry count does not match rows*cols");
}

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::column(std::initializer_list<cxd> entries) {
  CMat m(static_cast<int>(entries.size()), 1);
  int i = 0;
  for (cxd v : entries) m(i++, 0) = v;
  return m;
}

CMat CMat::operator*(const CMat& rhs) const {
  if (cols_ != rhs.rows_) dim_error("matmul shape mismatch");
  CMat out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cxd aik = (*this)(i, k);
      if (aik == cxd{0.0, 0.0}) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
    }
  }
  return out;
}

CMat CMat::operator+(const CMat& rhs) const {
  CMat out = *this;
  out += rhs;
  return out;
}

CMat CMat::operator-(const CMat& rhs) const {
  CMat out = *this;
  out -= rhs;
  return out;
}

CMat CMat::operator*(cxd scalar) const {
  CMat out = *this;
  out *= scalar;
  return out;
}

CMat& CMat::operator+=(const CMat& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) dim_error("add shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) dim_error("sub shape mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

CMat& CMat::operator*=(cxd scalar) {
  for (cxd& e : entries_) e *= scalar;
  return *this;
}

CMat operator*(cxd scalar, const CMat& m) { return m * scalar; }

CMat CMat::adjoint() const {
  CMat out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

CMat CMat::transpose() const {
  CMat out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

CMat CMat::conjugate() const {
  CMat out = *this;
  for (cxd& e : out.entries_) e = std::conj(e);
  return out;
}

cxd CMat::trace() const {
  if (rows_ != cols_) dim_error("trace requires a square matrix");
  cxd t{0.0, 0.0};
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMat::frobenius_norm_sq() const {
  double s = 0.0;
  for (const cxd& e : entries_) s += std::norm(e);
  return s;
}

cxd CMat::det_2x2() const {
  if (rows_ != 2 || cols_ != 2) dim_error("det_2x2 requires a 2x2 matrix");
  return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
}

bool CMat::is_finite() const {
  for (const cxd& e : entries_)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

CMat kron(const CMat& a, const CMat& b) {
  if (a.empty() || b.empty()) dim_error("kron of empty matrix");
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cxd aij = a(i, j);
      if (aij == cxd{0.0, 0.0}) continue;
      for (int p = 0; p < b.rows(); ++p)
        for (int q = 0; q < b.cols(); ++q)
          out(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return out;
}

CMat vec(const CMat& m) {
  if (m.empty()) dim_error("vec of empty matrix");
  CMat out(m.rows() * m.cols(), 1);
  int idx = 0;
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out(idx++, 0) = m(i, j);
  return out;
}

CMat unvec_2x4(const CMat& v) {
  if (v.cols() != 1 || v.rows() != 8)
    dim_error("unvec_2x4 requires an 8-entry column vector");
  CMat out(2, 4);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 2; ++i) out(i, j) = v(j * 2 + i, 0);
  return out;
}

double max_abs_diff(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    dim_error("max_abs_diff shape mismatch");
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

bool approx_equal(const CMat& a, const CMat& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs_diff(a, b) <= tol;
}

}  // namespace qstc
