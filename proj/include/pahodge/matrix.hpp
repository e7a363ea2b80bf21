#pragma once

// Dense matrices over an exact or capped-precision coefficient ring, and
// Gaussian elimination with minimal-valuation pivoting.
//
// Coefficient types provide +, -, *, unary -, zero_like(), one_like(),
// is_zero(); elimination additionally needs / and valuation().

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "valuation.hpp"

namespace pahodge {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& zero)
      : rows_(rows), cols_(cols), zero_(zero.zero_like()), data_(static_cast<std::size_t>(rows) * cols, zero_) {}

  static Matrix identity(int n, const T& proto) {
    Matrix m(n, n, proto);
    for (int i = 0; i < n; ++i) m(i, i) = proto.one_like();
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty() || rows[0].empty()) throw ParseError("matrix needs at least one entry");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), rows[0][0]);
    for (int r = 0; r < m.rows_; ++r) {
      if (static_cast<int>(rows[r].size()) != m.cols_) throw ParseError("ragged matrix rows");
      for (int c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const T& zero() const { return zero_; }

  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  Matrix zero_like() const { return Matrix(rows_, cols_, zero_); }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x.is_zero(); });
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product: shape mismatch");
    Matrix r(a.rows_, b.cols_, a.zero_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        for (int j = 0; j < b.cols_; ++j) r(i, j) += x * b(k, j);
      }
    return r;
  }
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
  Matrix& operator-=(const Matrix& o) { return *this = *this - o; }

  /// Every entry multiplied by the scalar s (on the left).
  Matrix scaled(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = s * x;
    return r;
  }

  template <class F>
  Matrix map(F&& f) const {
    Matrix r = *this;
    for (auto& x : r.data_) x = f(x);
    return r;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, zero_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix r(nr, nc, zero_);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  Matrix column(int c) const { return block(0, c, rows_, 1); }
  Matrix columns(int c0, int n) const { return block(0, c0, rows_, n); }

  void set_block(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  /// [a | b]
  friend Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw Error("hstack: row mismatch");
    Matrix r(a.rows_, a.cols_ + b.cols_, a.zero_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
  }

  T trace() const {
    T s = zero_;
    for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  /// Entries equal at the smaller of the two precisions.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix shapes differ");
  }

  int rows_ = 0;
  int cols_ = 0;
  T zero_{};
  std::vector<T> data_;
};

/// Reduced row echelon form.  Within each column the pivot is the remaining
/// entry of least valuation; an entry that is zero at its precision is never
/// used as a pivot.
template <class T>
struct Echelon {
  Matrix<T> form;
  std::vector<int> pivot_cols;
  bool odd_permutation = false;
};

template <class T>
Echelon<T> row_reduce(Matrix<T> a) {
  Echelon<T> out;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int best = -1;
    Valuation best_v = Valuation::infinite();
    for (int r = row; r < a.rows(); ++r) {
      if (a(r, col).is_zero()) continue;
      const Valuation v = a(r, col).valuation();
      if (best < 0 || v < best_v) {
        best = r;
        best_v = v;
      }
    }
    if (best < 0) continue;
    if (best != row) {
      for (int c = 0; c < a.cols(); ++c) std::swap(a(row, c), a(best, c));
      out.odd_permutation = !out.odd_permutation;
    }
    const T inv = a(row, col).one_like() / a(row, col);
    for (int c = col; c < a.cols(); ++c) a(row, c) = a(row, c) * inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const T f = a(r, col);
      for (int c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.form = std::move(a);
  return out;
}

template <class T>
int rank(const Matrix<T>& a) {
  return static_cast<int>(row_reduce(a).pivot_cols.size());
}

/// Columns form a basis of {v : a v = 0}.  Returns a matrix with zero
/// columns when the kernel is trivial.
template <class T>
Matrix<T> kernel(const Matrix<T>& a) {
  const auto ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<T> k(a.cols(), static_cast<int>(free_cols.size()), a.zero());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const int fc = free_cols[j];
    k(fc, static_cast<int>(j)) = a.zero().one_like();
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i)
      k(ech.pivot_cols[i], static_cast<int>(j)) = -ech.form(static_cast<int>(i), fc);
  }
  return k;
}

/// Some solution of a x = b (b may have several columns).
template <class T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw Error("solve: shape mismatch");
  const auto ech = row_reduce(hstack(a, b));
  const int n = a.cols();
  Matrix<T> x(n, b.cols(), a.zero());
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) {
    const int pc = ech.pivot_cols[i];
    if (pc >= n) throw DomainError("solve: the linear system is inconsistent");
    for (int j = 0; j < b.cols(); ++j) x(pc, j) = ech.form(static_cast<int>(i), n + j);
  }
  for (int r = static_cast<int>(ech.pivot_cols.size()); r < ech.form.rows(); ++r)
    for (int j = 0; j < ech.form.cols(); ++j)
      if (!ech.form(r, j).is_zero()) throw DomainError("solve: the linear system is inconsistent");
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  if (a.rows() != a.cols()) throw Error("inverse of a non-square matrix");
  const int n = a.rows();
  const auto ech = row_reduce(hstack(a, Matrix<T>::identity(n, a.zero())));
  if (static_cast<int>(ech.pivot_cols.size()) < n || ech.pivot_cols[n - 1] != n - 1)
    throw PrecisionError("matrix is singular at the working precision");
  return ech.form.block(0, n, n, n);
}

template <class T>
T determinant(Matrix<T> a) {
  if (a.rows() != a.cols()) throw Error("determinant of a non-square matrix");
  const int n = a.rows();
  T det = a.zero().one_like();
  bool odd = false;
  for (int col = 0; col < n; ++col) {
    int best = -1;
    Valuation best_v = Valuation::infinite();
    for (int r = col; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const Valuation v = a(r, col).valuation();
      if (best < 0 || v < best_v) {
        best = r;
        best_v = v;
      }
    }
    if (best < 0) {
      // Determinant is zero at working precision; report its known bound.
      T z = a.zero();
      for (int r = col; r < n; ++r) z = z + a(r, col);
      return det * z;
    }
    if (best != col) {
      for (int c = 0; c < n; ++c) std::swap(a(col, c), a(best, c));
      odd = !odd;
    }
    det = det * a(col, col);
    const T inv = a(col, col).one_like() / a(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (a(r, col).is_zero()) continue;
      const T f = a(r, col) * inv;
      for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return odd ? -det : det;
}

/// Coefficients c_0, ..., c_n (lowest first, c_n = 1) of det(T I - a),
/// computed with Berkowitz's division-free algorithm.
template <class T>
std::vector<T> charpoly(const Matrix<T>& a) {
  if (a.rows() != a.cols()) throw Error("charpoly of a non-square matrix");
  const int n = a.rows();
  const T one = a.zero().one_like();
  if (n == 0) return {one};
  std::vector<T> v{one, -a(0, 0)};  // highest degree first
  for (int r = 1; r < n; ++r) {
    std::vector<T> col(r + 2, a.zero());
    col[0] = one;
    col[1] = -a(r, r);
    std::vector<T> x(r, a.zero());
    for (int i = 0; i < r; ++i) x[i] = a(i, r);
    for (int k = 2; k <= r + 1; ++k) {
      T s = a.zero();
      for (int i = 0; i < r; ++i) s += a(r, i) * x[i];
      col[k] = -s;
      if (k == r + 1) break;
      std::vector<T> nx(r, a.zero());
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) nx[i] += a(i, j) * x[j];
      x = std::move(nx);
    }
    std::vector<T> nv(r + 2, a.zero());
    for (int i = 0; i < r + 2; ++i)
      for (int j = 0; j <= std::min(i, r); ++j) nv[i] += col[i - j] * v[j];
    v = std::move(nv);
  }
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace pahodge
