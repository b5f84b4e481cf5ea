#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace qstc {

using cxd = std::complex<double>;

/// Dense row-major complex matrix for the small fixed shapes used throughout
/// the library (2x2 channels, 2x4 codewords, 8x1 statistics, 8x8 projectors).
/// All operations are value-semantic and dimension-checked.
class CMat {
 public:
  CMat() = default;
  CMat(int rows, int cols);  // zero-filled
  CMat(int rows, int cols, std::initializer_list<cxd> entries);

  static CMat identity(int n);
  static CMat column(std::initializer_list<cxd> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return entries_.empty(); }

  cxd& operator()(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const cxd& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  CMat operator*(const CMat& rhs) const;
  CMat operator+(const CMat& rhs) const;
  CMat operator-(const CMat& rhs) const;
  CMat operator*(cxd scalar) const;
  CMat& operator+=(const CMat& rhs);
  CMat& operator-=(const CMat& rhs);
  CMat& operator*=(cxd scalar);
  bool operator==(const CMat& rhs) const = default;

  CMat adjoint() const;  // conjugate transpose
  CMat transpose() const;
  CMat conjugate() const;
  cxd trace() const;
  double frobenius_norm_sq() const;
  cxd det_2x2() const;
  bool is_finite() const;

  std::span<const cxd> data() const { return entries_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cxd> entries_;
};

CMat operator*(cxd scalar, const CMat& m);

/// Kronecker product: [kron(a,b)]_{(i*b.rows+p),(j*b.cols+q)} = a_{ij} b_{pq}.
CMat kron(const CMat& a, const CMat& b);

/// Column-stacking vectorization; the inverse of unvec_2x4 on 2x4 inputs.
CMat vec(const CMat& m);

/// Inverse vectorization onto a 2x4 matrix. Requires exactly 8 entries.
CMat unvec_2x4(const CMat& v);

double max_abs_diff(const CMat& a, const CMat& b);
bool approx_equal(const CMat& a, const CMat& b, double tol);

}  // namespace qstc
