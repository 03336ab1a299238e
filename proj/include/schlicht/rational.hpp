#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace schlicht {

/// Exact arbitrary-precision rational number.
///
/// Invariants: denominator > 0 and gcd(|num|, den) = 1 at all times.
/// This is a thin value wrapper over GMP's mpq_class; every constructor
/// canonicalizes, and GMP's rational arithmetic keeps canonical operands
/// canonical, so the invariant survives all operations.
class BigRational {
 public:
  BigRational() : q_(0) {}
  BigRational(long n) : q_(n) {}
  BigRational(long n, long d) : q_(n, d) {
    if (d == 0) throw std::domain_error("BigRational: zero denominator");
    q_.canonicalize();
  }
  BigRational(mpz_class n, mpz_class d) : q_(std::move(n), std::move(d)) {
    if (sgn(q_.get_den()) == 0)
      throw std::domain_error("BigRational: zero denominator");
    q_.canonicalize();
  }

  /// Parses "p/q" or "p" with an optional leading minus sign.
  /// Decimal points, whitespace, exponents and a leading '+' are rejected.
  static BigRational from_string(std::string_view s) {
    auto bad = [&] {
      return std::invalid_argument("BigRational: cannot parse \"" +
                                   std::string(s) + "\"");
    };
    std::string_view num = s, den;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      num = s.substr(0, slash);
      den = s.substr(slash + 1);
      if (den.empty()) throw bad();
    }
    auto digits_ok = [](std::string_view t, bool allow_sign) {
      if (allow_sign && !t.empty() && t.front() == '-') t.remove_prefix(1);
      if (t.empty()) return false;
      for (char ch : t)
        if (ch < '0' || ch > '9') return false;
      return true;
    };
    if (!digits_ok(num, true)) throw bad();
    if (!den.empty() && !digits_ok(den, false)) throw bad();

    mpz_class n(std::string(num), 10);
    mpz_class d = den.empty() ? mpz_class(1) : mpz_class(std::string(den), 10);
    if (d == 0) throw bad();  // "p/0" is a parse error, not a math error
    return BigRational(std::move(n), std::move(d));
  }

  /// Exact conversion: every finite double is a dyadic rational.
  static BigRational from_double(double x) {
    if (!std::isfinite(x))
      throw std::invalid_argument("BigRational: non-finite double");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), x);  // exact, already canonical
    return BigRational(std::move(q));
  }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// "p/q", or just "p" when the denominator is 1. Sign on the numerator.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  friend BigRational operator+(const BigRational& a, const BigRational& b) {
    return BigRational(mpq_class(a.q_ + b.q_));
  }
  friend BigRational operator-(const BigRational& a, const BigRational& b) {
    return BigRational(mpq_class(a.q_ - b.q_));
  }
  friend BigRational operator*(const BigRational& a, const BigRational& b) {
    return BigRational(mpq_class(a.q_ * b.q_));
  }
  friend BigRational operator/(const BigRational& a, const BigRational& b) {
    if (b.is_zero()) throw std::domain_error("BigRational: division by zero");
    return BigRational(mpq_class(a.q_ / b.q_));
  }
  BigRational operator-() const { return BigRational(mpq_class(-q_)); }

  BigRational& operator+=(const BigRational& b) {
    q_ += b.q_;
    return *this;
  }
  BigRational& operator-=(const BigRational& b) {
    q_ -= b.q_;
    return *this;
  }
  BigRational& operator*=(const BigRational& b) {
    q_ *= b.q_;
    return *this;
  }
  BigRational& operator/=(const BigRational& b) {
    if (b.is_zero()) throw std::domain_error("BigRational: division by zero");
    q_ /= b.q_;
    return *this;
  }

  BigRational reciprocal() const {
    if (is_zero()) throw std::domain_error("BigRational: reciprocal of zero");
    return BigRational(mpz_class(q_.get_den()), mpz_class(q_.get_num()));
  }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend bool operator!=(const BigRational& a, const BigRational& b) {
    return !(a == b);
  }
  friend bool operator<(const BigRational& a, const BigRational& b) {
    return cmp(a.q_, b.q_) < 0;
  }
  friend bool operator<=(const BigRational& a, const BigRational& b) {
    return cmp(a.q_, b.q_) <= 0;
  }
  friend bool operator>(const BigRational& a, const BigRational& b) {
    return cmp(a.q_, b.q_) > 0;
  }
  friend bool operator>=(const BigRational& a, const BigRational& b) {
    return cmp(a.q_, b.q_) >= 0;
  }

 private:
  explicit BigRational(mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;  // canonical at all times
};

inline BigRational abs(const BigRational& x) { return x.sign() < 0 ? -x : x; }

}  // namespace schlicht
