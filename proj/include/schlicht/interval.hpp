#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

#include "schlicht/rational.hpp"

namespace schlicht {

/// Raised when a computation cannot resolve a comparison or reach a width
/// target at the current working precision; callers retry with more bits.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed interval [lo, hi] of MPFR floats at a stated working precision.
/// Every operation rounds outward, so the result always contains the true
/// image of the inputs. Strict predicates (positive, less-than) hold only
/// when the whole interval is on the claimed side, which is what makes a
/// "certified" verdict sound.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128) : prec_(check_prec(prec)) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }

  Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  Interval& operator=(const Interval& o) {
    if (this != &o) {
      Interval tmp(o);
      swap(tmp);
    }
    return *this;
  }

  Interval& operator=(Interval&& o) noexcept {
    swap(o);
    return *this;
  }

  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  void swap(Interval& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    std::swap(prec_, o.prec_);
  }

  /// Tight two-sided enclosure of an exact rational.
  static Interval point(const BigRational& q, mpfr_prec_t prec = 128) {
    Interval r(prec);
    mpfr_set_q(r.lo_, q.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.raw().get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Interval hull(const BigRational& lo, const BigRational& hi,
                       mpfr_prec_t prec = 128) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    Interval r(prec);
    mpfr_set_q(r.lo_, lo.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, hi.raw().get_mpq_t(), MPFR_RNDU);
    return r;
  }

  /// [a.lo, b.hi]: the sandwich of a lower-evidence interval and an
  /// upper-evidence interval around a common true value.
  static Interval envelope(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_set(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_set(r.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_cmp(r.lo_, r.hi_) > 0)
      throw std::invalid_argument("Interval::envelope: crossed endpoints");
    return r;
  }

  mpfr_prec_t precision() const { return prec_; }

  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  /// Decimal endpoint strings, rounded outward so the printed pair still
  /// encloses the true value.
  std::string lo_string(int digits = 17) const {
    return format(lo_, digits, MPFR_RNDD);
  }
  std::string hi_string(int digits = 17) const {
    return format(hi_, digits, MPFR_RNDU);
  }

  bool contains(const BigRational& q) const {
    return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) <= 0 &&
           mpfr_cmp_q(hi_, q.raw().get_mpq_t()) >= 0;
  }

  bool contains(const Interval& o) const {
    return mpfr_cmp(lo_, o.lo_) <= 0 && mpfr_cmp(hi_, o.hi_) >= 0;
  }

  bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool strictly_negative() const { return mpfr_sgn(hi_) < 0; }

  /// Whole interval strictly below q / strictly above q.
  bool strictly_below(const BigRational& q) const {
    return mpfr_cmp_q(hi_, q.raw().get_mpq_t()) < 0;
  }
  bool strictly_above(const BigRational& q) const {
    return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) > 0;
  }

  /// a < b as intervals: every point of a below every point of b.
  friend bool strictly_less(const Interval& a, const Interval& b) {
    return mpfr_cmp(a.hi_, b.lo_) < 0;
  }

  /// Upper bound on the interval width, as a double (rounded up).
  double width_upper() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
  }

  friend Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator-(const Interval& a) {
    Interval r(a.prec_);
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    minmax_over_pairs(r, a, b, mpfr_mul);
    return r;
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
      throw std::domain_error("Interval: division by interval containing 0");
    Interval r(std::max(a.prec_, b.prec_));
    minmax_over_pairs(r, a, b, mpfr_div);
    return r;
  }

  /// Exact-rational scaling (sound: multiplies endpoints with directed
  /// rounding, swapping them for negative factors).
  friend Interval scale(const Interval& a, const BigRational& q) {
    Interval r(a.prec_);
    if (q.sign() >= 0) {
      mpfr_mul_q(r.lo_, a.lo_, q.raw().get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(r.hi_, a.hi_, q.raw().get_mpq_t(), MPFR_RNDU);
    } else {
      mpfr_mul_q(r.lo_, a.hi_, q.raw().get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(r.hi_, a.lo_, q.raw().get_mpq_t(), MPFR_RNDU);
    }
    return r;
  }

  friend Interval shift(const Interval& a, const BigRational& q) {
    Interval r(a.prec_);
    mpfr_add_q(r.lo_, a.lo_, q.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_add_q(r.hi_, a.hi_, q.raw().get_mpq_t(), MPFR_RNDU);
    return r;
  }

  friend Interval pi_interval(mpfr_prec_t prec);
  friend Interval exp_interval(const Interval& x, mpfr_prec_t prec);
  friend Interval log_interval(const Interval& x, mpfr_prec_t prec);
  friend Interval atanh_interval(const Interval& x, mpfr_prec_t prec);

 private:
  // Endpoint bound for * and /: extreme of op over the four endpoint pairs,
  // each evaluated once rounded down (for lo) and once rounded up (for hi).
  static void minmax_over_pairs(Interval& r, const Interval& a,
                                const Interval& b,
                                int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr,
                                          mpfr_rnd_t)) {
    const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    bool first = true;
    for (const mpfr_srcptr x : xs)
      for (const mpfr_srcptr y : ys) {
        op(t, x, y, MPFR_RNDD);
        if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
        first = false;
      }
    first = true;
    for (const mpfr_srcptr x : xs)
      for (const mpfr_srcptr y : ys) {
        op(t, x, y, MPFR_RNDU);
        if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(t);
  }

  static mpfr_prec_t check_prec(mpfr_prec_t p) {
    if (p < MPFR_PREC_MIN || p > 1 << 24)
      throw std::invalid_argument("Interval: unreasonable precision");
    return p;
  }

  static std::string format(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    char* s = nullptr;
    // The %R* conversions accept an explicit rounding mode letter.
    int n = mpfr_asprintf(&s, rnd == MPFR_RNDD ? "%.*RDg" : "%.*RUg", digits,
                          x);
    if (n < 0 || !s) throw std::runtime_error("Interval: formatting failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
};

/// Enclosure of pi.
inline Interval pi_interval(mpfr_prec_t prec = 128) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

/// exp is increasing: map endpoints with outward rounding.
inline Interval exp_interval(const Interval& x, mpfr_prec_t prec = 0) {
  Interval r(prec ? prec : x.precision());
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

/// log is increasing on (0, inf); requires x.lo > 0.
inline Interval log_interval(const Interval& x, mpfr_prec_t prec = 0) {
  if (mpfr_sgn(x.lo_) <= 0)
    throw std::domain_error("log_interval: argument must be positive");
  Interval r(prec ? prec : x.precision());
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

/// arctanh via the identity arctanh t = (1/2) log((1+t)/(1-t)), increasing
/// on (-1, 1); each endpoint is computed with a fully directed chain.
inline Interval atanh_interval(const Interval& x, mpfr_prec_t prec = 0) {
  mpfr_prec_t p = prec ? prec : x.precision();
  if (mpfr_cmp_si(x.lo_, -1) <= 0 || mpfr_cmp_si(x.hi_, 1) >= 0)
    throw std::domain_error("atanh_interval: argument must lie in (-1, 1)");
  Interval r(p);
  mpfr_t num, den;
  mpfr_init2(num, p);
  mpfr_init2(den, p);

  // Lower endpoint: round every step down (denominator up).
  mpfr_add_si(num, x.lo_, 1, MPFR_RNDD);
  mpfr_si_sub(den, 1, x.lo_, MPFR_RNDU);
  mpfr_div(r.lo_, num, den, MPFR_RNDD);
  mpfr_log(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_div_ui(r.lo_, r.lo_, 2, MPFR_RNDD);

  // Upper endpoint: round every step up (denominator down).
  mpfr_add_si(num, x.hi_, 1, MPFR_RNDU);
  mpfr_si_sub(den, 1, x.hi_, MPFR_RNDD);
  mpfr_div(r.hi_, num, den, MPFR_RNDU);
  mpfr_log(r.hi_, r.hi_, MPFR_RNDU);
  mpfr_div_ui(r.hi_, r.hi_, 2, MPFR_RNDU);

  mpfr_clear(num);
  mpfr_clear(den);
  return r;
}

/// Dispatcher used by callers that take the operation kind as data.
enum class Elementary { Pi, Exp, Log, Arctanh };

inline Interval enclose_elementary(Elementary kind, const Interval& x,
                                   mpfr_prec_t precision) {
  switch (kind) {
    case Elementary::Pi:
      return pi_interval(precision);
    case Elementary::Exp:
      return exp_interval(x, precision);
    case Elementary::Log:
      return log_interval(x, precision);
    case Elementary::Arctanh:
      return atanh_interval(x, precision);
  }
  throw std::invalid_argument("enclose_elementary: unknown kind");
}

}  // namespace schlicht
