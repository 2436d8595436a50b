#pragma once

// Dense vectors and matrices over Scalar, sized for k <= 8 lattice work.
// Everything is by-value and exact in rational mode.

#include "badforms/scalar.hpp"

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace badforms {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : c_(dim, Scalar(0)) {}
  Vector(std::initializer_list<Scalar> init) : c_(init) {}
  explicit Vector(std::vector<Scalar> c) : c_(std::move(c)) {}

  std::size_t dim() const { return c_.size(); }
  Scalar& operator[](std::size_t i) { return c_[i]; }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Scalar>& coords() const { return c_; }

  // Particle part: first m coordinates; time part: the remaining ones.
  Vector particle(std::size_t m) const { return slice(0, m); }
  Vector time(std::size_t m) const { return slice(m, dim() - m); }

  friend Vector operator+(const Vector& a, const Vector& b) {
    check_dims(a, b);
    Vector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  friend Vector operator-(const Vector& a, const Vector& b) {
    check_dims(a, b);
    Vector r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
    return r;
  }
  friend Vector operator*(const Scalar& s, const Vector& v) {
    Vector r(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
    return r;
  }
  Vector operator-() const { return Scalar(-1) * *this; }

  friend Scalar dot(const Vector& a, const Vector& b) {
    check_dims(a, b);
    Scalar s(0);
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
  }

  Scalar norm2_sq() const { return dot(*this, *this); }
  Scalar sup_norm() const {
    Scalar s(0);
    for (const auto& x : c_) s = max(s, x.abs());
    return s;
  }
  Scalar l1_norm() const {
    Scalar s(0);
    for (const auto& x : c_) s += x.abs();
    return s;
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x.sign() != 0) return false;
    return true;
  }
  bool is_exact() const {
    for (const auto& x : c_)
      if (!x.is_exact()) return false;
    return true;
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  }

 private:
  Vector slice(std::size_t from, std::size_t len) const {
    if (from + len > dim()) throw std::out_of_range("Vector::slice");
    Vector r(len);
    for (std::size_t i = 0; i < len; ++i) r[i] = c_[from + i];
    return r;
  }
  static void check_dims(const Vector& a, const Vector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Vector: dimension mismatch");
  }

  std::vector<Scalar> c_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows, Vector(cols)) {}
  explicit Matrix(std::vector<Vector> rows) : rows_(std::move(rows)) {
    for (const auto& r : rows_)
      if (r.dim() != cols()) throw std::invalid_argument("Matrix: ragged rows");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }
  static Matrix diagonal(const std::vector<Scalar>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return rows_.empty() ? 0 : rows_[0].dim(); }
  Scalar& at(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Vector& row(std::size_t i) { return rows_[i]; }
  const Vector& row(std::size_t i) const { return rows_[i]; }
  const std::vector<Vector>& row_list() const { return rows_; }

  bool is_exact() const {
    for (const auto& r : rows_)
      if (!r.is_exact()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols(), rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("Matrix: size mismatch in product");
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a.at(i, k).sign() == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j)
          r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return r;
  }

  // Row vector times matrix.
  friend Vector operator*(const Vector& v, const Matrix& m) {
    if (v.dim() != m.rows()) throw std::invalid_argument("Matrix: size mismatch in v*M");
    Vector r(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (v[i].sign() == 0) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m.at(i, j);
    }
    return r;
  }
  // Matrix times column vector.
  friend Vector operator*(const Matrix& m, const Vector& v) {
    if (v.dim() != m.cols()) throw std::invalid_argument("Matrix: size mismatch in M*v");
    Vector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) r[i] = dot(m.row(i), v);
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_;
  }

  Scalar det() const;
  Matrix inverse() const;

 private:
  std::vector<Vector> rows_;
};

inline Scalar Matrix::det() const {
  if (rows() != cols()) throw std::invalid_argument("Matrix::det: not square");
  std::size_t n = rows();
  Matrix a = *this;
  Scalar d(1);
  for (std::size_t col = 0; col < n; ++col) {
    // Pivot: first row with nonzero entry (largest magnitude in approx mode).
    std::size_t piv = col;
    bool found = false;
    for (std::size_t i = col; i < n; ++i) {
      if (a.at(i, col).sign() != 0) {
        if (!found || a.at(i, col).abs() > a.at(piv, col).abs()) piv = i;
        found = true;
        if (a.is_exact()) break;  // any nonzero pivot is fine exactly
      }
    }
    if (!found) return Scalar(0);
    if (piv != col) {
      std::swap(a.row(piv), a.row(col));
      d = -d;
    }
    d *= a.at(col, col);
    Scalar inv_piv = Scalar(1) / a.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a.at(i, col).sign() == 0) continue;
      Scalar f = a.at(i, col) * inv_piv;
      for (std::size_t j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
    }
  }
  return d;
}

inline Matrix Matrix::inverse() const {
  if (rows() != cols()) throw std::invalid_argument("Matrix::inverse: not square");
  std::size_t n = rows();
  Matrix a = *this;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    bool found = false;
    for (std::size_t i = col; i < n; ++i) {
      if (a.at(i, col).sign() != 0) {
        if (!found || a.at(i, col).abs() > a.at(piv, col).abs()) piv = i;
        found = true;
        if (a.is_exact()) break;
      }
    }
    if (!found) throw std::domain_error("Matrix::inverse: singular basis");
    if (piv != col) {
      std::swap(a.row(piv), a.row(col));
      std::swap(inv.row(piv), inv.row(col));
    }
    Scalar inv_piv = Scalar(1) / a.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a.at(col, j) *= inv_piv;
      inv.at(col, j) *= inv_piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a.at(i, col).sign() == 0) continue;
      Scalar f = a.at(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(col, j);
        inv.at(i, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// Row-major flattening between M_{m,n} and R^{mn}.
inline Vector matrix_to_vector(const Matrix& A) {
  Vector v(A.rows() * A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) v[i * A.cols() + j] = A.at(i, j);
  return v;
}

inline Matrix vector_to_matrix(const Vector& v, std::size_t rows, std::size_t cols) {
  if (v.dim() != rows * cols) throw std::invalid_argument("vector_to_matrix: size mismatch");
  Matrix A(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) A.at(i, j) = v[i * cols + j];
  return A;
}

// Gram matrix of a list of row vectors.
inline Matrix gram_of_rows(const std::vector<Vector>& rows) {
  Matrix g(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) g.at(i, j) = dot(rows[i], rows[j]);
  return g;
}

}  // namespace badforms
