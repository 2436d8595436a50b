#pragma once

// The diagonal flow g_t sampled on the rational grid t = steps * T, with
// alpha*beta = u^n so that e^{T/m} = u^{-n} and e^{-T/n} = u^m are exact
// rationals.  Each step expands particle coordinates by u^{-n} and contracts
// time coordinates by u^m; the step matrix has determinant 1.

#include "badforms/lattice.hpp"

#include <vector>

namespace badforms {

struct FlowSchedule {
  long m = 1;
  long n = 1;
  Scalar u;  // rational in (0,1); alpha*beta = u^n

  FlowSchedule() : u(1, 2) {}
  FlowSchedule(long m_, long n_, Scalar u_) : m(m_), n(n_), u(std::move(u_)) {
    if (m < 1 || n < 1) throw std::invalid_argument("FlowSchedule: m, n must be positive");
    if (!u.is_exact() || u.sign() <= 0 || u >= Scalar(1))
      throw std::invalid_argument("FlowSchedule: u must be rational in (0,1)");
  }

  std::size_t k() const { return static_cast<std::size_t>(m + n); }

  // e^{T/m} = u^{-n}: particle expansion per step.
  Scalar expand_factor() const { return Scalar::pow_int(u, -n); }
  // e^{-T/n} = u^{m}: time contraction per step.
  Scalar contract_factor() const { return Scalar::pow_int(u, m); }

  // diag(u^{-n*steps} I_m, u^{m*steps} I_n)
  Matrix step_matrix(long steps) const {
    std::vector<Scalar> d(k());
    Scalar e = Scalar::pow_int(u, -n * steps);
    Scalar c = Scalar::pow_int(u, m * steps);
    for (long i = 0; i < m; ++i) d[static_cast<std::size_t>(i)] = e;
    for (long j = 0; j < n; ++j) d[static_cast<std::size_t>(m + j)] = c;
    return Matrix::diagonal(d);
  }

  Vector apply(long steps, const Vector& v) const {
    if (v.dim() != k()) throw std::invalid_argument("FlowSchedule: dimension mismatch");
    Vector r(v.dim());
    Scalar e = Scalar::pow_int(u, -n * steps);
    Scalar c = Scalar::pow_int(u, m * steps);
    for (long i = 0; i < m; ++i) r[static_cast<std::size_t>(i)] = e * v[static_cast<std::size_t>(i)];
    for (long j = 0; j < n; ++j)
      r[static_cast<std::size_t>(m + j)] = c * v[static_cast<std::size_t>(m + j)];
    return r;
  }
};

inline Lattice apply_flow(const FlowSchedule& F, long steps, const Lattice& L) {
  std::vector<Vector> rows;
  rows.reserve(L.k());
  for (std::size_t i = 0; i < L.k(); ++i) rows.push_back(F.apply(steps, L.basis().row(i)));
  return Lattice(Matrix(std::move(rows)));
}

inline AffineLattice apply_flow(const FlowSchedule& F, long steps, const AffineLattice& X) {
  return AffineLattice{apply_flow(F, steps, X.lattice), F.apply(steps, X.shift)};
}

// Covolume^2 of the flowed hyperplane g_{steps*T} H with respect to the flowed
// lattice, computed directly on the dual vector (dual coordinates transform by
// the inverse factors).
inline Scalar flowed_covolume_sq(const FlowSchedule& F, long steps, const Hyperplane& H) {
  Scalar ep = Scalar::pow_int(F.u, F.n * steps);   // particle dual factor u^{n*steps}
  Scalar ct = Scalar::pow_int(F.u, -F.m * steps);  // time dual factor u^{-m*steps}
  Scalar acc(0);
  for (long i = 0; i < F.m; ++i) {
    const Scalar& w = H.dual_vector[static_cast<std::size_t>(i)];
    acc += w * w * ep * ep;
  }
  for (long j = 0; j < F.n; ++j) {
    const Scalar& w = H.dual_vector[static_cast<std::size_t>(F.m + j)];
    acc += w * w * ct * ct;
  }
  return acc;
}

// k-dimensional volume of the parallelepiped spanned by a hyperplane basis
// (k-1 vectors) and one more vector; invariant under the flow (det g = 1).
inline Scalar pyramid_volume(const std::vector<Vector>& h_basis, const Vector& v) {
  if (h_basis.empty()) throw std::invalid_argument("pyramid_volume: empty base");
  std::size_t k = h_basis[0].dim();
  if (h_basis.size() != k - 1)
    throw std::invalid_argument("pyramid_volume: base must have k-1 vectors");
  if (gram_of_rows(h_basis).det().sign() == 0)
    throw DegenerateBaseError("pyramid_volume: dependent base vectors");
  std::vector<Vector> rows = h_basis;
  rows.push_back(v);
  return Matrix(std::move(rows)).det().abs();
}

// The affine lattice L_A(b) Z^k = {(p + A q - b, q) : p in Z^m, q in Z^n}.
// Rows 0..m-1 of the basis are (e_i, 0); row m+j is (col_j(A), e_j).
inline AffineLattice affine_form_lattice(long m, long n, const Matrix& A, const Vector& b) {
  if (A.rows() != static_cast<std::size_t>(m) || A.cols() != static_cast<std::size_t>(n))
    throw std::invalid_argument("affine_form_lattice: A must be m x n");
  if (b.dim() != static_cast<std::size_t>(m))
    throw std::invalid_argument("affine_form_lattice: b must have m entries");
  std::size_t k = static_cast<std::size_t>(m + n);
  Matrix basis(k, k);
  for (long i = 0; i < m; ++i) basis.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Scalar(1);
  for (long j = 0; j < n; ++j) {
    std::size_t r = static_cast<std::size_t>(m + j);
    for (long i = 0; i < m; ++i)
      basis.at(r, static_cast<std::size_t>(i)) = A.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    basis.at(r, r) = Scalar(1);
  }
  Vector shift(k);
  for (long i = 0; i < m; ++i) shift[static_cast<std::size_t>(i)] = -b[static_cast<std::size_t>(i)];
  return AffineLattice{Lattice(std::move(basis)), std::move(shift)};
}

inline Lattice linear_form_lattice(long m, long n, const Matrix& A) {
  return affine_form_lattice(m, n, A, Vector(static_cast<std::size_t>(m))).lattice;
}

}  // namespace badforms
