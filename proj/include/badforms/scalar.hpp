#pragma once

// Scalar: the one number type used everywhere. Exact rational (GMP mpq)
// by default; inputs that are genuinely irrational (golden ratio, sqrt2)
// live in approx mode as high-precision floats (>= 100-bit mantissa).
// Arithmetic promotes to approx mode as soon as one operand is approx,
// and the mode is carried with every value.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace badforms {

// Relative tolerance that replaces exact-equality invariants in approx mode.
inline constexpr double kApproxRelTol = 1e-9;

inline mp_bitcnt_t& default_precision_ref() {
  static mp_bitcnt_t bits = 128;
  return bits;
}
inline mp_bitcnt_t default_precision() { return default_precision_ref(); }
inline void set_default_precision(mp_bitcnt_t bits) {
  if (bits < 100) throw std::invalid_argument("precision must be >= 100 bits");
  default_precision_ref() = bits;
}

class Scalar {
 public:
  Scalar() : q_(0), exact_(true) {}
  Scalar(int v) : q_(v), exact_(true) {}
  Scalar(long v) : q_(static_cast<signed long>(v)), exact_(true) {}
  Scalar(long num, long den) : exact_(true) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Scalar(const mpq_class& q) : q_(q), exact_(true) { q_.canonicalize(); }
  explicit Scalar(const mpz_class& z) : q_(z), exact_(true) {}

  // mpf_class assignment keeps the *destination* precision, which would
  // silently truncate values; route all copies through precision-preserving
  // construction + swap instead.
  Scalar(const Scalar&) = default;
  Scalar(Scalar&&) = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      Scalar tmp(o);
      swap_with(tmp);
    }
    return *this;
  }
  Scalar& operator=(Scalar&& o) noexcept {
    swap_with(o);
    return *this;
  }
  void swap_with(Scalar& o) noexcept {
    std::swap(exact_, o.exact_);
    mpq_swap(q_.get_mpq_t(), o.q_.get_mpq_t());
    mpf_swap(f_.get_mpf_t(), o.f_.get_mpf_t());
  }

  static Scalar from_mpf(const mpf_class& f) {
    Scalar s;
    s.exact_ = false;
    s.f_.set_prec(f.get_prec());
    s.f_ = f;
    return s;
  }

  bool is_exact() const { return exact_; }

  const mpq_class& rat() const {
    if (!exact_) throw std::logic_error("Scalar: rat() on approx value");
    return q_;
  }
  mpz_class num() const { return rat().get_num(); }
  mpz_class den() const { return rat().get_den(); }

  // Value as a float at the given precision (default: the global one).
  mpf_class to_mpf(mp_bitcnt_t prec = 0) const {
    if (prec == 0) prec = exact_ ? default_precision() : f_.get_prec();
    mpf_class out(0, prec);
    if (exact_)
      out = mpf_class(q_, prec);
    else
      out = mpf_class(f_, prec);
    return out;
  }
  double to_double() const { return exact_ ? q_.get_d() : f_.get_d(); }

  // The stored bits as an exact rational (every mpf value is one); lossless.
  mpq_class to_exact_rational() const {
    if (exact_) return q_;
    mpq_class q;
    mpq_set_f(q.get_mpq_t(), f_.get_mpf_t());
    return q;
  }

  bool is_integer() const { return exact_ && q_.get_den() == 1; }

  // ---- arithmetic ----

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(mpq_class(a.q_ + b.q_));
    return from_mpf(a.promote(b) + b.promote(a));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(mpq_class(a.q_ - b.q_));
    return from_mpf(a.promote(b) - b.promote(a));
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return Scalar(mpq_class(a.q_ * b.q_));
    return from_mpf(a.promote(b) * b.promote(a));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.sign() == 0) throw std::domain_error("Scalar: division by zero");
    if (a.exact_ && b.exact_) return Scalar(mpq_class(a.q_ / b.q_));
    return from_mpf(a.promote(b) / b.promote(a));
  }
  Scalar operator-() const {
    if (exact_) return Scalar(mpq_class(-q_));
    return from_mpf(-f_);
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  int sign() const { return exact_ ? sgn(q_) : sgn(f_); }

  // ---- comparisons (exact in exact mode, plain mpf compare otherwise) ----

  friend int cmp_scalars(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return cmp(a.q_, b.q_);
    mpf_class fa = a.promote(b), fb = b.promote(a);
    return fa < fb ? -1 : (fa > fb ? 1 : 0);
  }
  friend bool operator<(const Scalar& a, const Scalar& b) { return cmp_scalars(a, b) < 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return cmp_scalars(a, b) > 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return cmp_scalars(a, b) <= 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return cmp_scalars(a, b) >= 0; }
  friend bool operator==(const Scalar& a, const Scalar& b) { return cmp_scalars(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return cmp_scalars(a, b) != 0; }

  // |a - b| <= rel * max(1, |a|, |b|); the equality notion for approx mode.
  friend bool approx_equal(const Scalar& a, const Scalar& b, double rel = kApproxRelTol) {
    if (a.exact_ && b.exact_) return a == b;
    mpf_class fa = a.promote(b), fb = b.promote(a);
    mpf_class diff = ::abs(fa - fb);
    mpf_class scale = ::abs(fa);
    if (::abs(fb) > scale) scale = ::abs(fb);
    if (scale < 1) scale = 1;
    return diff <= scale * rel;
  }
  bool near_zero(double abs_tol = kApproxRelTol) const {
    if (exact_) return sign() == 0;
    return ::abs(f_) <= mpf_class(abs_tol, f_.get_prec());
  }

  // ---- rounding ----

  mpz_class floor_int() const {
    if (exact_) {
      mpz_class r;
      mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
      return r;
    }
    mpf_class fl = ::floor(f_);
    mpz_class r;
    mpz_set_f(r.get_mpz_t(), fl.get_mpf_t());
    return r;
  }
  mpz_class ceil_int() const { return -((-*this).floor_int()); }
  // Nearest integer; half-way cases round down (distance is symmetric anyway).
  mpz_class round_nearest() const {
    if (exact_) {
      // floor((2p + q) / (2q))
      mpz_class t = 2 * q_.get_num() + q_.get_den();
      mpz_class r;
      mpz_class d = 2 * q_.get_den();
      mpz_fdiv_q(r.get_mpz_t(), t.get_mpz_t(), d.get_mpz_t());
      return r;
    }
    return (*this + Scalar(1, 2)).floor_int();
  }

  // ---- powers ----

  static Scalar pow_int(const Scalar& base, long e) {
    if (e == 0) return Scalar(1);
    if (e < 0) return Scalar(1) / pow_int(base, -e);
    if (base.exact_) {
      mpz_class n, d;
      mpz_pow_ui(n.get_mpz_t(), base.q_.get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(d.get_mpz_t(), base.q_.get_den_mpz_t(), static_cast<unsigned long>(e));
      mpq_class r(n, d);
      r.canonicalize();
      return Scalar(r);
    }
    mpf_class acc(1, base.f_.get_prec());
    mpf_pow_ui(acc.get_mpf_t(), base.f_.get_mpf_t(), static_cast<unsigned long>(e));
    return from_mpf(acc);
  }

  // Square root, always in approx mode (exactness users compare squares).
  Scalar sqrt_approx(mp_bitcnt_t prec = 0) const {
    if (sign() < 0) throw std::domain_error("Scalar: sqrt of negative");
    mpf_class f = to_mpf(prec == 0 ? default_precision() : prec);
    return from_mpf(::sqrt(f));
  }

  // ---- serialization ----
  //
  // Exact values print as canonical "p/q" (or "p" when integral).  Approx
  // values print as "~<sign>0x<manthex>@<limbexp>p<precbits>" where the
  // mantissa is the raw limb content, value = mant * 2^(limb_bits * limbexp);
  // this round-trips bit-exactly at any precision.

  std::string str() const {
    if (exact_) return q_.get_str();
    const auto* f = f_.get_mpf_t();
    long size = static_cast<long>(f->_mp_size);
    bool neg = size < 0;
    if (neg) size = -size;
    mpz_class mant;
    if (size > 0)
      mpz_import(mant.get_mpz_t(), static_cast<std::size_t>(size), -1, sizeof(mp_limb_t), 0, 0,
                 f->_mp_d);
    long shift = static_cast<long>(f->_mp_exp) - size;
    return std::string("~") + (neg ? "-" : "") + "0x" + mant.get_str(16) + "@" +
           std::to_string(shift) + "p" + std::to_string(f_.get_prec());
  }

  static Scalar parse(const std::string& s);

 private:
  mpf_class promote(const Scalar& other) const {
    mp_bitcnt_t prec = exact_ ? default_precision() : f_.get_prec();
    if (!other.exact_ && other.f_.get_prec() > prec) prec = other.f_.get_prec();
    return to_mpf(prec);
  }

  mpq_class q_;   // active when exact_
  mpf_class f_;   // active when !exact_
  bool exact_;
};

inline Scalar Scalar::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("Scalar::parse: empty string");
  if (s[0] != '~') {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Scalar::parse: bad rational '" + s + "'");
    q.canonicalize();
    return Scalar(q);
  }
  // ~[-]0x<manthex>@<limbexp>p<prec>
  std::string body = s.substr(1);
  bool neg = false;
  if (!body.empty() && body[0] == '-') {
    neg = true;
    body = body.substr(1);
  }
  if (body.rfind("0x", 0) != 0) throw std::invalid_argument("Scalar::parse: bad float '" + s + "'");
  body = body.substr(2);
  auto epos = body.find('@');
  auto ppos = body.find('p');
  if (epos == std::string::npos || ppos == std::string::npos || ppos < epos)
    throw std::invalid_argument("Scalar::parse: bad float '" + s + "'");
  std::string digits = body.substr(0, epos);
  long shift = std::stol(body.substr(epos + 1, ppos - epos - 1));
  unsigned long prec = std::stoul(body.substr(ppos + 1));
  mpz_class mant;
  if (mant.set_str(digits, 16) != 0)
    throw std::invalid_argument("Scalar::parse: bad mantissa '" + s + "'");
  mpf_class f(0, prec);
  mpf_set_z(f.get_mpf_t(), mant.get_mpz_t());
  long bits = shift * static_cast<long>(sizeof(mp_limb_t) * 8);
  if (bits > 0)
    mpf_mul_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<unsigned long>(bits));
  else if (bits < 0)
    mpf_div_2exp(f.get_mpf_t(), f.get_mpf_t(), static_cast<unsigned long>(-bits));
  if (neg) f = -f;
  return Scalar::from_mpf(f);
}

// Named irrational constants, evaluated once at the requested precision.
// gmpxx expression templates size results by the *default* mpf precision,
// so assign into an explicitly sized destination.
inline Scalar golden_ratio(mp_bitcnt_t prec = 0) {
  if (prec == 0) prec = default_precision();
  mpf_class out(0, prec), five(5, prec);
  out = sqrt(five);
  out = (1 + out) / 2;
  return Scalar::from_mpf(out);
}
inline Scalar sqrt2(mp_bitcnt_t prec = 0) {
  if (prec == 0) prec = default_precision();
  mpf_class out(0, prec), two(2, prec);
  out = sqrt(two);
  return Scalar::from_mpf(out);
}

inline Scalar min(const Scalar& a, const Scalar& b) { return a <= b ? a : b; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a >= b ? a : b; }

}  // namespace badforms
