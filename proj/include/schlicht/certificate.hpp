#pragma once

#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schlicht/grunsky.hpp"
#include "schlicht/power_series.hpp"
#include "schlicht/rational.hpp"

namespace schlicht {

/// Double-precision shadow of an exact matrix. Used only to *discover*
/// candidate negative directions; every verdict is re-established exactly,
/// so nothing here affects soundness.
struct FloatMatrix {
  int order = 0;
  std::vector<double> entries;  // row-major, order * order

  double at(int i, int j) const {
    return entries[static_cast<size_t>(i) * static_cast<size_t>(order) +
                   static_cast<size_t>(j)];
  }
  double& at(int i, int j) {
    return entries[static_cast<size_t>(i) * static_cast<size_t>(order) +
                   static_cast<size_t>(j)];
  }
};

/// Nearest-double rounding of every entry (round to nearest, ties to even).
/// Throws on overflow to infinity rather than saturating silently.
inline FloatMatrix float_project(const GrunskyMatrix& g) {
  FloatMatrix f;
  f.order = g.order();
  f.entries.reserve(g.entries().size());
  mpfr_t t;
  mpfr_init2(t, 53);
  for (const BigRational& q : g.entries()) {
    mpfr_set_q(t, q.raw().get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(t, MPFR_RNDN);
    if (!std::isfinite(d)) {
      mpfr_clear(t);
      throw std::overflow_error("float_project: entry exceeds double range");
    }
    f.entries.push_back(d);
  }
  mpfr_clear(t);
  return f;
}

struct MinEigenpair {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;  // unit length
  bool converged = false;           // off-diagonal norm fell below tolerance
  int sweeps = 0;
};

/// Smallest eigenvalue and eigenvector of a symmetric matrix by the cyclic
/// Jacobi rotation method. Sweeps are capped (default 100); on cap the best
/// iterate is returned with converged = false so callers can decide — the
/// discovery pipeline may still try it, since verification is exact anyway.
inline MinEigenpair min_eigenpair(const FloatMatrix& m, double tolerance,
                                  int sweep_cap = 100) {
  if (!(tolerance > 0))
    throw std::invalid_argument("min_eigenpair: tolerance must be positive");
  const int n = m.order;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m.at(i, j) != m.at(j, i))
        throw std::invalid_argument("min_eigenpair: matrix not symmetric");

  FloatMatrix a = m;
  std::vector<double> v(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0);
  auto vat = [&](int i, int j) -> double& {
    return v[static_cast<size_t>(i) * static_cast<size_t>(n) +
             static_cast<size_t>(j)];
  };
  for (int i = 0; i < n; ++i) vat(i, i) = 1.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a.at(i, j) * a.at(i, j);
    return std::sqrt(2.0 * s);
  };

  MinEigenpair out;
  for (out.sweeps = 0; out.sweeps < sweep_cap; ++out.sweeps) {
    if (off_norm() < tolerance) {
      out.converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a.at(p, q);
        if (apq == 0.0) continue;
        // Classical rotation choice zeroing a_pq.
        double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = vat(k, p), vkq = vat(k, q);
          vat(k, p) = c * vkp - s * vkq;
          vat(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!out.converged && off_norm() < tolerance) out.converged = true;

  int best = 0;
  for (int i = 1; i < n; ++i)
    if (a.at(i, i) < a.at(best, best)) best = i;
  out.eigenvalue = a.at(best, best);
  out.eigenvector.resize(static_cast<size_t>(n));
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    out.eigenvector[static_cast<size_t>(i)] = vat(i, best);
    norm += vat(i, best) * vat(i, best);
  }
  norm = std::sqrt(norm);
  if (norm > 0)
    for (double& x : out.eigenvector) x /= norm;
  return out;
}

/// Best rational approximation of x with denominator <= max_denominator,
/// taken over continued-fraction convergents. Exact for dyadic inputs that
/// already satisfy the bound.
inline BigRational rationalize_one(double x, std::uint64_t max_denominator) {
  if (max_denominator < 1)
    throw std::invalid_argument("rationalize: max_denominator < 1");
  BigRational r = BigRational::from_double(x);
  if (r.denominator() <= mpz_class(static_cast<unsigned long>(
          std::min<std::uint64_t>(max_denominator, UINT64_MAX))))
    return r;

  // Convergents p_i/q_i of the floor-based continued fraction.
  mpz_class p0 = 1, q0 = 0;  // p_{-1}, q_{-1}
  mpz_class num = r.numerator(), den = r.denominator();
  mpz_class a0 = num / den;  // GMP: truncation; fix toward floor below
  if (num < 0 && a0 * den != num) a0 -= 1;
  mpz_class p1 = a0, q1 = 1;  // p_0, q_0
  mpz_class rem = num - a0 * den;
  mpz_class bound(static_cast<unsigned long>(max_denominator));
  while (rem != 0) {
    // invert: x := den/rem, next partial quotient
    mpz_class nnum = den, nden = rem;
    mpz_class ai = nnum / nden;  // rem > 0 by floor step, so this is floor
    mpz_class p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > bound) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    num = nnum;
    den = nden;
    rem = num - ai * den;
  }
  return BigRational(p1, q1);
}

inline std::vector<BigRational> rationalize(const std::vector<double>& v,
                                            std::uint64_t max_denominator) {
  std::vector<BigRational> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(rationalize_one(x, max_denominator));
  return out;
}

/// An exact, self-contained witness of non-univalence: a rational direction
/// along which the order-n test matrix of F_a takes a negative value.
struct Certificate {
  BigRational a;
  int order = 0;
  std::vector<BigRational> vector;
  std::optional<BigRational> value;  // exact quadratic-form value when known
  bool verified = false;
};

struct FindResult {
  enum class Status {
    Found,                // verified certificate attached
    NoNegativeDirection,  // float stage saw no negative eigenvalue
    VerificationFailed,   // no rationalization within the bound certified
  };
  Status status = Status::NoNegativeDirection;
  std::optional<Certificate> certificate;
  double float_eigenvalue = 0.0;  // diagnostic from the discovery stage
};

namespace detail {

/// Discovery on a prebuilt table (shared by scans over many orders).
inline FindResult find_certificate_with_table(const GrunskyTable& table,
                                              const BigRational& a, int order,
                                              std::uint64_t max_denominator) {
  const GrunskyMatrix g = grunsky_matrix(table, order);
  const FloatMatrix fm = float_project(g);
  const MinEigenpair ep = min_eigenpair(fm, 1e-12);

  FindResult res;
  res.float_eigenvalue = ep.eigenvalue;
  if (ep.eigenvalue >= 0.0) {
    res.status = FindResult::Status::NoNegativeDirection;
    return res;
  }
  // Escalate the denominator bound by doubling; 4096 is the hard ceiling
  // unless the caller started above it.
  const std::uint64_t ceiling = std::max<std::uint64_t>(max_denominator, 4096);
  for (std::uint64_t d = max_denominator; d <= ceiling; d *= 2) {
    std::vector<BigRational> v = rationalize(ep.eigenvector, d);
    bool all_zero = true;
    for (const auto& x : v)
      if (!x.is_zero()) {
        all_zero = false;
        break;
      }
    if (!all_zero) {
      BigRational val = quadratic_form(g, v);
      if (val.sign() < 0) {
        res.status = FindResult::Status::Found;
        res.certificate =
            Certificate{a, order, std::move(v), std::move(val), true};
        return res;
      }
    }
    if (d > ceiling / 2) break;  // avoid overflow past the ceiling
  }
  res.status = FindResult::Status::VerificationFailed;
  return res;
}

}  // namespace detail

/// Full discovery pipeline: exact matrix -> double shadow -> smallest
/// eigenpair -> continued-fraction rounding -> exact re-verification.
inline FindResult find_certificate(const BigRational& a, int order,
                                   std::uint64_t max_denominator = 30) {
  if (order < 1) throw std::invalid_argument("find_certificate: order < 1");
  PowerSeries<> f = f_a_series(a, 2 * order + 1);
  GrunskyTable table = grunsky_table(f, 2 * order);
  return detail::find_certificate_with_table(table, a, order,
                                             max_denominator);
}

struct VerifyResult {
  bool ok = false;
  std::optional<BigRational> value;  // exact recomputed value when reachable
  std::string diagnostic;
};

/// Independent exact check: rebuilds everything from (a, order, vector) and
/// accepts iff the recomputed value is negative and matches any stored value.
/// Never throws — failures come back as ok=false with a diagnostic.
inline VerifyResult verify_certificate(const Certificate& cert) {
  VerifyResult r;
  try {
    if (cert.order < 1) {
      r.diagnostic = "order must be >= 1";
      return r;
    }
    if (cert.vector.size() != static_cast<size_t>(cert.order)) {
      r.diagnostic = "vector length does not match order";
      return r;
    }
    PowerSeries<> f = f_a_series(cert.a, 2 * cert.order + 1);
    GrunskyTable table = grunsky_table(f, 2 * cert.order);
    GrunskyMatrix g = grunsky_matrix(table, cert.order);
    BigRational val = quadratic_form(g, cert.vector);
    r.value = val;
    if (val.sign() >= 0) {
      r.diagnostic = "quadratic form is not negative: " + val.str();
      return r;
    }
    if (cert.value && *cert.value != val) {
      r.diagnostic = "stored value " + cert.value->str() +
                     " differs from recomputed " + val.str();
      return r;
    }
    r.ok = true;
    r.diagnostic = "verified: value " + val.str() + " < 0";
  } catch (const std::exception& e) {
    r.ok = false;
    r.diagnostic = std::string("verification error: ") + e.what();
  }
  return r;
}

struct ScanEntry {
  BigRational a;
  std::optional<int> first_order;  // smallest order with a certificate
  std::optional<Certificate> certificate;
};

/// For each a, the smallest order in 1..max_order with a verified
/// certificate. One table per a is shared across all orders.
inline std::vector<ScanEntry> scan_upper_bound(
    const std::vector<BigRational>& a_values, int max_order,
    std::uint64_t max_denominator = 30) {
  if (max_order < 1)
    throw std::invalid_argument("scan_upper_bound: max_order < 1");
  std::vector<ScanEntry> out;
  out.reserve(a_values.size());
  for (const BigRational& a : a_values) {
    ScanEntry entry{a, std::nullopt, std::nullopt};
    PowerSeries<> f = f_a_series(a, 2 * max_order + 1);
    GrunskyTable table = grunsky_table(f, 2 * max_order);
    for (int n = 1; n <= max_order; ++n) {
      FindResult res =
          detail::find_certificate_with_table(table, a, n, max_denominator);
      if (res.status == FindResult::Status::Found) {
        entry.first_order = n;
        entry.certificate = std::move(res.certificate);
        break;
      }
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace schlicht
