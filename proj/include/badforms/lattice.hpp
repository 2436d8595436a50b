#pragma once

// Unimodular lattices in R^k (rows of `basis` are the lattice generators),
// affine translates, and rational hyperplanes represented by primitive dual
// vectors.  Covolume bookkeeping follows the dual correspondence |H| = ||w||_2.

#include "badforms/errors.hpp"
#include "badforms/linalg.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace badforms {

inline constexpr std::size_t kMaxLatticeDim = 8;

class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(Matrix basis) : basis_(std::move(basis)) {
    if (basis_.rows() != basis_.cols()) throw std::invalid_argument("Lattice: basis not square");
    gram_ = gram_of_rows(basis_.row_list());
  }

  static Lattice integers(std::size_t k) { return Lattice(Matrix::identity(k)); }

  std::size_t k() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const Matrix& gram() const { return gram_; }

  Scalar det() const { return basis_.det(); }

  bool is_unimodular(double rel_tol = kApproxRelTol) const {
    Scalar d = det().abs();
    if (basis_.is_exact()) return d == Scalar(1);
    return approx_equal(d, Scalar(1), rel_tol);
  }

  // Lattice point with the given integer coefficients.
  Vector point(const std::vector<mpz_class>& coeffs) const {
    Vector v(k());
    for (std::size_t i = 0; i < k(); ++i) {
      if (coeffs[i] == 0) continue;
      v = v + Scalar(mpq_class(coeffs[i])) * basis_.row(i);
    }
    return v;
  }

 private:
  Matrix basis_;
  Matrix gram_;
};

// Basis of the dual lattice: rows d_j with <b_i, d_j> = delta_ij.
inline Lattice dual_lattice(const Lattice& L) {
  Matrix inv;
  try {
    inv = L.basis().inverse();
  } catch (const std::domain_error&) {
    throw SingularBasisError("dual_lattice: basis not invertible");
  }
  return Lattice(inv.transpose());
}

struct AffineLattice {
  Lattice lattice;
  Vector shift;  // represents lattice + shift

  std::size_t k() const { return lattice.k(); }
  Vector point(const std::vector<mpz_class>& coeffs) const {
    return lattice.point(coeffs) + shift;
  }
};

// A lattice-rational hyperplane H = w^perp, with w primitive in the dual
// lattice; covolume_sq = ||w||_2^2 equals the Gram determinant of a Z-basis
// of H intersect Lambda.
struct Hyperplane {
  Vector dual_vector;
  Scalar covolume_sq;
  std::vector<mpz_class> dual_coeffs;  // coordinates of w in the dual basis

  bool contains_time_space(std::size_t m) const {
    // H contains {0}^m x R^n iff the dual vector has zero time component.
    for (std::size_t i = m; i < dual_vector.dim(); ++i)
      if (dual_vector[i].sign() != 0) return false;
    return true;
  }
};

namespace detail {

inline mpz_class gcd_all(const std::vector<mpz_class>& v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

// Round a Scalar known to be (near-)integral to mpz; throws if it is not.
inline mpz_class integral_value(const Scalar& s, const char* what) {
  mpz_class r = s.round_nearest();
  Scalar err = (s - Scalar(r)).abs();
  if (s.is_exact()) {
    if (err.sign() != 0) throw NotRationalError(std::string(what) + ": non-integer pairing");
  } else if (!err.near_zero()) {
    throw NotRationalError(std::string(what) + ": non-integer pairing (approx)");
  }
  return r;
}

}  // namespace detail

// Integer coordinates of w in the dual basis of L (throws NotRational if
// w is not a dual-lattice vector).
inline std::vector<mpz_class> dual_coefficients(const Vector& w, const Lattice& L) {
  // c = w * B^T since the dual basis D satisfies D * B^T = I.
  Vector c = w * L.basis().transpose();
  std::vector<mpz_class> out(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i)
    out[i] = detail::integral_value(c[i], "dual_coefficients");
  return out;
}

// Build the hyperplane with the given (not necessarily primitive) dual-basis
// coefficients; the stored dual vector is the primitive representative.
inline Hyperplane hyperplane_from_coeffs(const Lattice& L, std::vector<mpz_class> coeffs) {
  mpz_class g = detail::gcd_all(coeffs);
  if (g == 0) throw std::invalid_argument("hyperplane_from_coeffs: zero coefficients");
  for (auto& c : coeffs) c /= g;
  // canonical sign: first nonzero coefficient positive
  for (const auto& c : coeffs) {
    if (c != 0) {
      if (c < 0)
        for (auto& x : coeffs) x = -x;
      break;
    }
  }
  Lattice dual = dual_lattice(L);
  Vector w = dual.point(coeffs);
  return Hyperplane{w, w.norm2_sq(), coeffs};
}

// Covolume^2 of H with respect to L: the primitive dual vector's squared
// Euclidean norm.  Smallness test is covolume_sq <= k (xi0 = sqrt(k)).
inline Scalar covolume_sq(const Hyperplane& H, const Lattice& L) {
  auto coeffs = dual_coefficients(H.dual_vector, L);
  return hyperplane_from_coeffs(L, coeffs).covolume_sq;
}

// Unimodular completion: returns U in GL_k(Z) with U * c = (1, 0, ..., 0)^T
// for primitive c.  Rows 1..k-1 of U then span the integer kernel of c.
inline std::vector<std::vector<mpz_class>> unimodular_completion(std::vector<mpz_class> c) {
  std::size_t k = c.size();
  std::vector<std::vector<mpz_class>> U(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) U[i][i] = 1;
  // Gaussian gcd sweep: combine entries pairwise until c = g * e_1.
  for (std::size_t j = 1; j < k; ++j) {
    if (c[j] == 0) continue;
    if (c[0] == 0) {
      std::swap(c[0], c[j]);
      std::swap(U[0], U[j]);
      continue;
    }
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c[0].get_mpz_t(), c[j].get_mpz_t());
    mpz_class a = c[0] / g, b = c[j] / g;
    // new row0 = s*row0 + t*rowj ; new rowj = -b*row0 + a*rowj  (det = 1)
    std::vector<mpz_class> r0(k), rj(k);
    for (std::size_t i = 0; i < k; ++i) {
      r0[i] = s * U[0][i] + t * U[j][i];
      rj[i] = -b * U[0][i] + a * U[j][i];
    }
    U[0] = std::move(r0);
    U[j] = std::move(rj);
    c[0] = g;
    c[j] = 0;
  }
  if (c[0] < 0) {
    for (auto& x : U[0]) x = -x;
    c[0] = -c[0];
  }
  if (c[0] != 1) throw std::invalid_argument("unimodular_completion: input not primitive");
  return U;
}

// A Z-basis of H n L (k-1 lattice vectors) plus a lattice vector v with
// <v, w> = 1, i.e. v generates the coset adjacent to H.
struct HyperplaneBasis {
  std::vector<Vector> basis;  // k-1 vectors spanning H n L over Z
  Vector adjacent;            // v in L with <v, w> = 1
};

inline HyperplaneBasis hyperplane_lattice_basis(const Hyperplane& H, const Lattice& L) {
  auto coeffs = dual_coefficients(H.dual_vector, L);
  mpz_class g = detail::gcd_all(coeffs);
  if (g == 0) throw std::invalid_argument("hyperplane_lattice_basis: zero dual vector");
  if (g != 1 && g != -1)
    throw std::invalid_argument("hyperplane_lattice_basis: dual vector not primitive");
  auto U = unimodular_completion(coeffs);
  HyperplaneBasis out;
  out.adjacent = L.point(U[0]);
  for (std::size_t i = 1; i < coeffs.size(); ++i) out.basis.push_back(L.point(U[i]));
  return out;
}

// Gram-determinant covolume^2 of the spanned sublattice; the independent
// route used to cross-check covolume_sq.
inline Scalar gram_covolume_sq(const std::vector<Vector>& zbasis) {
  return gram_of_rows(zbasis).det();
}

}  // namespace badforms
