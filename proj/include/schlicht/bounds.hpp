#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "schlicht/interval.hpp"
#include "schlicht/rational.hpp"

namespace schlicht {

/// Which inner-radius functional the certified inequality concerns: the
/// one-point version (delta0, with c = e^{delta/2}) or the two-point
/// version (delta1, with c = e^{delta}).
enum class BoundMode { Delta0, Delta1 };

inline const char* bound_mode_name(BoundMode m) {
  return m == BoundMode::Delta0 ? "delta0" : "delta1";
}

/// H(x, c) = ((1-c)/2) x + ((1+c)/2) / x for rational x in (0, 1).
/// This majorizes the sup defining Phi(c) once the slack condition below
/// holds, and is exactly evaluable up to the enclosure of c.
inline Interval h_function(const BigRational& x, const Interval& c) {
  if (x.sign() <= 0 || x >= BigRational(1))
    throw std::domain_error("h_function: x must lie in (0, 1)");
  Interval one_minus_c = -shift(c, BigRational(-1));  // 1 - c
  Interval one_plus_c = shift(c, BigRational(1));
  return scale(one_minus_c, x / BigRational(2)) +
         scale(one_plus_c, (BigRational(2) * x).reciprocal());
}

/// Slack of the majorization hypothesis: (1+c)/(2c) - x1*arctanh(x1).
/// Strict positivity certifies Phi(c) < H(x1, c).
inline Interval lemma_tech_check(const Interval& c, const BigRational& x1) {
  if (!c.strictly_above(BigRational(1)))
    throw std::domain_error("lemma_tech_check: need c > 1 certified");
  if (x1.sign() <= 0 || x1 >= BigRational(1))
    throw std::domain_error("lemma_tech_check: x1 must lie in (0, 1)");
  Interval ratio = shift(c, BigRational(1)) / scale(c, BigRational(2));
  Interval xt = scale(atanh_interval(Interval::point(x1, c.precision()),
                                     c.precision()),
                      x1);
  return ratio - xt;
}

/// g(x, c) = x + c (1 - x^2) arctanh x — the function whose supremum over
/// 0 < x < 1 is Phi(c). Any evaluation is a valid lower bound for Phi.
inline Interval phi_integrand(const BigRational& x, const Interval& c) {
  if (x.sign() <= 0 || x >= BigRational(1))
    throw std::domain_error("phi_integrand: x must lie in (0, 1)");
  Interval at = atanh_interval(Interval::point(x, c.precision()),
                               c.precision());
  return shift(scale(c * at, BigRational(1) - x * x), x);
}

/// g'(x, c) = 1 + c (1 - 2 x arctanh x): sign of the slope of the
/// integrand; has a single zero x0 in (0, 1) when c > 1.
inline Interval phi_slope(const BigRational& x, const Interval& c) {
  if (x.sign() <= 0 || x >= BigRational(1))
    throw std::domain_error("phi_slope: x must lie in (0, 1)");
  Interval at = atanh_interval(Interval::point(x, c.precision()),
                               c.precision());
  Interval factor = shift(scale(at, BigRational(-2) * x), BigRational(1));
  return shift(c * factor, BigRational(1));
}

struct PhiEnclosure {
  Interval value;   // encloses Phi(c)
  BigRational x1;   // certified slope-positive point used for the upper bound
};

/// Encloses Phi(c) = sup_{0<r<1} { r + c (1-r^2) arctanh r } to width <= tol.
///
/// Lower bound: evaluate the integrand at a point. Upper bound: H(x1, c)
/// for any x1 left of the maximizer (certified via the slack condition).
/// Both points come from bisecting on the certified sign of the slope; the
/// sandwich pinches because the majorant and the integrand meet at the
/// maximizer. Throws PrecisionError when tol is unreachable at this
/// precision.
inline PhiEnclosure phi_enclose_with_point(const Interval& c, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("phi_enclose: tol <= 0");
  if (!c.strictly_above(BigRational(1)))
    throw std::domain_error("phi_enclose: need c > 1 certified");

  BigRational lo(1, 2);  // slope certified positive here for every c > 1
  if (!phi_slope(lo, c).strictly_positive())
    throw PrecisionError("phi_enclose: cannot certify slope sign at 1/2");

  BigRational hi;
  {
    BigRational x(3, 4);
    bool found = false;
    for (int k = 0; k < 40; ++k) {
      if (phi_slope(x, c).strictly_negative()) {
        hi = x;
        found = true;
        break;
      }
      x = (x + BigRational(1)) / BigRational(2);
    }
    if (!found)
      throw PrecisionError("phi_enclose: no certified negative slope < 1");
  }

  for (int iter = 0; iter < 200; ++iter) {
    Interval lower = phi_integrand(lo, c);
    Interval upper = h_function(lo, c);
    Interval sandwich = Interval::envelope(lower, upper);
    if (sandwich.width_upper() <= tol) {
      if (!lemma_tech_check(c, lo).strictly_positive())
        throw PrecisionError("phi_enclose: majorization slack indeterminate");
      return PhiEnclosure{std::move(sandwich), lo};
    }
    BigRational mid = (lo + hi) / BigRational(2);
    Interval slope = phi_slope(mid, c);
    if (slope.strictly_positive())
      lo = mid;
    else if (slope.strictly_negative())
      hi = mid;
    else
      throw PrecisionError("phi_enclose: slope sign indeterminate");
  }
  throw PrecisionError("phi_enclose: tolerance unreachable in 200 steps");
}

inline Interval phi_enclose(const Interval& c, double tol) {
  return phi_enclose_with_point(c, tol).value;
}

/// Everything needed to audit one certified-lower-bound check.
struct BoundReport {
  BoundMode mode = BoundMode::Delta0;
  BigRational delta_q;        // the checked delta equals delta_q * pi
  BigRational x1;             // majorization point used
  Interval lemma_margin;      // slack (1+c)/(2c) - x1 arctanh x1
  Interval threshold_value;   // 2 delta_q * H(x1, c), compared against 1
  bool certified = false;     // margin > 0 and threshold < 1, both strict
  bool indeterminate = false; // neither certified nor determinately failed
  mpfr_prec_t precision_bits = 128;
};

namespace detail {

inline Interval mode_exponent(const Interval& pi, const BigRational& q,
                              BoundMode mode) {
  return scale(pi, mode == BoundMode::Delta0 ? q / BigRational(2) : q);
}

inline BoundReport assemble_report(BoundMode mode, const BigRational& q,
                                   const BigRational& x1, Interval margin,
                                   Interval threshold, mpfr_prec_t prec) {
  BoundReport rep;
  rep.mode = mode;
  rep.delta_q = q;
  rep.x1 = x1;
  rep.certified = margin.strictly_positive() &&
                  threshold.strictly_below(BigRational(1));
  // Determinate failure: the slack test fails outright, or the threshold is
  // provably at least 1 even though only an upper-evidence value is at hand.
  bool refuted = margin.strictly_negative() ||
                 threshold.strictly_above(BigRational(1));
  rep.indeterminate = !rep.certified && !refuted;
  rep.lemma_margin = std::move(margin);
  rep.threshold_value = std::move(threshold);
  rep.precision_bits = prec;
  return rep;
}

}  // namespace detail

/// Checks the certified condition "2 delta_q * H(x1, c) < 1 with positive
/// majorization slack", where c = e^{delta/2} (delta0) or e^{delta}
/// (delta1) and delta = delta_q * pi. Success certifies that delta is a
/// lower bound for the corresponding constant.
inline BoundReport check_lower_bound(const BigRational& delta_q,
                                     BoundMode mode, const BigRational& x1,
                                     mpfr_prec_t precision = 128) {
  if (delta_q.sign() <= 0)
    throw std::domain_error("check_lower_bound: delta must be positive");
  Interval pi = pi_interval(precision);
  Interval c = exp_interval(detail::mode_exponent(pi, delta_q, mode),
                            precision);
  Interval margin = lemma_tech_check(c, x1);
  Interval threshold = scale(h_function(x1, c), BigRational(2) * delta_q);
  return detail::assemble_report(mode, delta_q, x1, std::move(margin),
                                 std::move(threshold), precision);
}

/// Variant that locates x1 automatically by the slope bisection, instead of
/// requiring a hand-picked majorization point.
inline BoundReport check_lower_bound_auto(const BigRational& delta_q,
                                          BoundMode mode,
                                          mpfr_prec_t precision = 128) {
  if (delta_q.sign() <= 0)
    throw std::domain_error("check_lower_bound: delta must be positive");
  Interval pi = pi_interval(precision);
  Interval c = exp_interval(detail::mode_exponent(pi, delta_q, mode),
                            precision);
  // Enclose Phi tightly enough that the comparison with 1 is typically
  // decisive; precision escalation (in certify_lower_bound) covers the rest.
  double tol = std::max(1e-30, std::pow(0.5, static_cast<double>(precision) / 3));
  try {
    PhiEnclosure phi = phi_enclose_with_point(c, tol);
    Interval margin = lemma_tech_check(c, phi.x1);
    Interval threshold =
        scale(h_function(phi.x1, c), BigRational(2) * delta_q);
    return detail::assemble_report(mode, delta_q, phi.x1, std::move(margin),
                                   std::move(threshold), precision);
  } catch (const PrecisionError&) {
    BoundReport rep;
    rep.mode = mode;
    rep.delta_q = delta_q;
    rep.x1 = BigRational(1, 2);
    rep.lemma_margin = Interval(precision);
    rep.threshold_value = Interval(precision);
    rep.certified = false;
    rep.indeterminate = true;
    rep.precision_bits = precision;
    return rep;
  }
}

/// Escalation driver: doubles the working precision until the check is
/// decisive or max_precision is exhausted (the final, possibly
/// indeterminate, report is returned either way).
inline BoundReport certify_lower_bound(const BigRational& delta_q,
                                       BoundMode mode,
                                       const std::optional<BigRational>& x1,
                                       mpfr_prec_t start_precision = 128,
                                       mpfr_prec_t max_precision = 1024) {
  mpfr_prec_t prec = start_precision;
  while (true) {
    BoundReport rep = x1 ? check_lower_bound(delta_q, mode, *x1, prec)
                         : check_lower_bound_auto(delta_q, mode, prec);
    if (!rep.indeterminate || prec >= max_precision) return rep;
    prec = std::min<mpfr_prec_t>(prec * 2, max_precision);
  }
}

/// Brackets the unique solution of 2 delta_q * Phi(c(delta)) = 1 in delta
/// (monotone in delta), returning an interval of width <= tol around it.
/// Bisection runs on exact rational delta_q values; each comparison against
/// 1 is made by strict interval predicates, with the Phi tolerance and the
/// working precision escalated when a comparison is indeterminate.
inline Interval solve_threshold(BoundMode mode, double tol,
                                mpfr_prec_t precision = 128,
                                mpfr_prec_t max_precision = 1024) {
  if (!(tol > 0)) throw std::invalid_argument("solve_threshold: tol <= 0");
  mpfr_prec_t prec = precision;
  double phi_tol = std::min(tol / 8, 1e-4);

  // +1: value provably above 1; -1: provably below; throws when precision
  // and tolerance escalation are exhausted.
  auto side = [&](const BigRational& q) -> int {
    for (int attempt = 0; attempt < 60; ++attempt) {
      Interval pi = pi_interval(prec);
      Interval c = exp_interval(detail::mode_exponent(pi, q, mode), prec);
      try {
        Interval f = scale(phi_enclose(c, phi_tol), BigRational(2) * q);
        if (f.strictly_below(BigRational(1))) return -1;
        if (f.strictly_above(BigRational(1))) return +1;
      } catch (const PrecisionError&) {
        // fall through to escalate
      }
      if (phi_tol > std::pow(0.5, static_cast<double>(prec) / 2))
        phi_tol /= 16;
      else if (prec < max_precision)
        prec = std::min<mpfr_prec_t>(prec * 2, max_precision);
      else
        break;
    }
    throw PrecisionError("solve_threshold: comparison with 1 indeterminate");
  };

  BigRational qlo, qhi;
  if (mode == BoundMode::Delta0) {
    qlo = BigRational(1, 3);
    qhi = BigRational(1, 2);
  } else {
    qlo = BigRational(1, 4);
    qhi = BigRational(1, 3);
  }
  if (side(qlo) != -1 || side(qhi) != +1)
    throw std::logic_error("solve_threshold: initial bracket invalid");

  // q-space width target: (qhi-qlo)*pi <= tol follows from
  // qhi-qlo <= tol * 7/22 because pi < 22/7.
  BigRational tol_q = BigRational::from_double(tol) * BigRational(7, 22);
  for (int iter = 0; iter < 200 && qhi - qlo > tol_q; ++iter) {
    BigRational mid = (qlo + qhi) / BigRational(2);
    (side(mid) == -1 ? qlo : qhi) = mid;
  }

  Interval pi = pi_interval(prec);
  return Interval::envelope(scale(pi, qlo), scale(pi, qhi));
}

/// (2/pi) (1 + L) log(L / l): certified norm bound for a map whose image
/// annulus has inner radius l and outer radius L, with l <= 1 <= L.
inline Interval preschwarzian_bound(const Interval& L, const Interval& l) {
  if (!l.strictly_positive())
    throw std::domain_error("preschwarzian_bound: need l > 0");
  if (l.strictly_above(BigRational(1)) || L.strictly_below(BigRational(1)))
    throw std::domain_error("preschwarzian_bound: need l <= 1 <= L");
  mpfr_prec_t prec = std::max(L.precision(), l.precision());
  Interval lg = log_interval(L / l, prec);
  Interval prod = shift(L, BigRational(1)) * lg;
  return scale(prod, BigRational(2)) / pi_interval(prec);
}

/// Image-annulus radii of the extremal family member with parameter a:
/// l = e^{-pi a / 2} and L = e^{pi a / 2}.
inline std::pair<Interval, Interval> annulus_bounds(const BigRational& a,
                                                    mpfr_prec_t prec = 128) {
  if (a.sign() <= 0)
    throw std::domain_error("annulus_bounds: a must be positive");
  Interval half = scale(pi_interval(prec), a / BigRational(2));
  return {exp_interval(-half, prec), exp_interval(half, prec)};
}

}  // namespace schlicht
