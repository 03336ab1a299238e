// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures. Exercises the installed CLI binary where a criterion concerns
// the command-line surface, and the library directly elsewhere.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "schlicht/bounds.hpp"
#include "schlicht/certificate.hpp"
#include "schlicht/grunsky.hpp"
#include "schlicht/power_series.hpp"
#include "schlicht/rational.hpp"
#include "schlicht/serialize.hpp"

using nlohmann::json;
using schlicht::BigRational;
using schlicht::BoundMode;
using schlicht::Interval;
using schlicht::PowerSeries;

namespace {

BigRational r(long n, long d = 1) { return BigRational(n, d); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  CmdResult res;
  std::string cmd = "\"" SCHLICHT_CLI_PATH "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' ||
                        s.back() == ' '))
    s.pop_back();
  return s;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

// Independent bivariate construction of the table entries: expand
// log[(f(z)-f(w))/(z-w)] with series-of-series arithmetic and read off
// c_{j,k} = -[z^j w^k]. Cross-checks the column recursion end to end.
std::vector<std::vector<BigRational>> bivariate_log_oracle(
    const PowerSeries<>& f, int depth) {
  using Inner = PowerSeries<BigRational>;
  using Outer = PowerSeries<Inner>;
  require(f.order() >= 2 * depth + 1, "oracle needs a longer series");

  std::vector<Inner> bk;
  for (int k = 0; k <= depth; ++k) {
    Inner b = Inner::zeros(depth);
    for (int i = 0; i <= depth; ++i) b.set(i, f[k + 1 + i]);
    bk.push_back(std::move(b));
  }
  Outer ratio(bk);

  auto lift = [&](const Inner& s) {
    std::vector<Inner> v{s};
    for (int k = 1; k <= depth; ++k) v.push_back(Inner::zeros(depth));
    return Outer(std::move(v));
  };

  Outer normalized = ratio * lift(schlicht::series_inverse(bk[0]));
  Outer lg = schlicht::series_log1p_composed(normalized) +
             lift(schlicht::series_log1p_composed(bk[0]));

  std::vector<std::vector<BigRational>> c(static_cast<size_t>(depth) + 1);
  for (int j = 0; j <= depth; ++j) {
    c[static_cast<size_t>(j)].resize(static_cast<size_t>(depth) + 1);
    for (int k = 0; k <= depth; ++k)
      c[static_cast<size_t>(j)][static_cast<size_t>(k)] = -lg[k][j];
  }
  return c;
}

struct Gate {
  int failures = 0;

  template <class Fn>
  void criterion(int num, const std::string& name, Fn&& body) {
    try {
      std::string detail = body();
      std::printf("PASS %2d  %s%s%s\n", num, name.c_str(),
                  detail.empty() ? "" : " — ", detail.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL %2d  %s — %s\n", num, name.c_str(), e.what());
    }
    std::fflush(stdout);
  }
};

bool within(const Interval& x, double lo, double hi) {
  return x.lo_double() >= lo && x.hi_double() <= hi;
}

}  // namespace

int main() {
  Gate gate;

  // Shared state reused by later criteria.
  schlicht::BoundReport rep_d0, rep_d1;
  bool fixture_ok = false;

  gate.criterion(1, "series golden values through the CLI", [&] {
    auto t0 = std::chrono::steady_clock::now();
    CmdResult fa = run_cli("coeffs --a 1/1 --function fa --order 5");
    require(fa.exit_code == 0, "fa command exited nonzero");
    require(trimmed(fa.out) == "0, 1, 2, 3, 32/9, 31/9",
            "fa coefficients mismatch: got '" + trimmed(fa.out) + "'");
    CmdResult qa = run_cli("coeffs --a 1/1 --function qa --order 4");
    require(qa.exit_code == 0, "qa command exited nonzero");
    require(trimmed(qa.out) == "1, 2, 2, 2/3, -2/3",
            "qa coefficients mismatch: got '" + trimmed(qa.out) + "'");
    double dt = seconds_since(t0);
    require(dt < 1.0, "exceeded 1 s");
    std::ostringstream os;
    os << "exact strings matched in " << dt << " s";
    return os.str();
  });

  gate.criterion(2, "order-1 and order-2 matrices vs closed forms", [&] {
    auto t0 = std::chrono::steady_clock::now();
    for (const BigRational& a : {r(1, 2), r(5, 7), r(1)}) {
      auto f = schlicht::f_a_series(a, 5);
      auto table = schlicht::grunsky_table(f, 4);
      auto g1 = schlicht::grunsky_matrix(table, 1);
      auto g2 = schlicht::grunsky_matrix(table, 2);

      BigRational a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
      BigRational a6 = a4 * a2, a8 = a4 * a4;
      require(g1.gamma(1, 1) == r(1) - a4, "order-1 entry mismatch");

      BigRational e11 = (r(81) - r(8) * a2 - r(97) * a4 - r(8) * a6) / r(81);
      BigRational e12 =
          r(-14) * a3 * (r(1) + a2) * (r(1) + a2) / r(81);
      BigRational e22 = (r(81, 2) - r(4) * a2 - r(10) * a4 + r(10) * a6 -
                         r(49, 2) * a8) /
                        r(81);
      require(g2.gamma(1, 1) == e11, "order-2 (1,1) mismatch at a=" + a.str());
      require(g2.gamma(1, 2) == e12, "order-2 (1,2) mismatch at a=" + a.str());
      require(g2.gamma(2, 1) == e12, "order-2 (2,1) mismatch at a=" + a.str());
      require(g2.gamma(2, 2) == e22, "order-2 (2,2) mismatch at a=" + a.str());
    }
    double dt = seconds_since(t0);
    require(dt < 5.0, "exceeded 5 s");
    std::ostringstream os;
    os << "exact equality at a = 1/2, 5/7, 1 in " << dt << " s";
    return os.str();
  });

  gate.criterion(3, "bundled order-18 certificate verifies exactly", [&] {
    auto t0 = std::chrono::steady_clock::now();
    std::ifstream in(std::string(SCHLICHT_DATA_DIR) + "/paper_v.json");
    require(in.good(), "fixture missing");
    auto cert = schlicht::certificate_from_json(json::parse(in));
    require(cert.a == r(5, 7) && cert.order == 18, "fixture header wrong");

    auto vr = schlicht::verify_certificate(cert);
    require(vr.ok, "verification failed: " + vr.diagnostic);
    require(vr.value.has_value() && vr.value->sign() < 0,
            "value not negative");

    mpz_class den = 1;
    auto mul_pow = [&den](unsigned long b, unsigned long e) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), b, e);
      den *= p;
    };
    mul_pow(3, 49);
    mul_pow(5, 16);
    mul_pow(7, 92);
    mul_pow(11, 12);
    mul_pow(13, 4);
    mul_pow(17, 3);
    mul_pow(19, 4);
    mul_pow(23, 4);
    mul_pow(29, 2);
    mul_pow(31, 4);
    require(vr.value->denominator() == den,
            "denominator is not the expected prime-power product");
    for (const char* f : {"37", "61", "102353087", "29977321169"})
      require(vr.value->numerator() % mpz_class(f) == 0,
              std::string("numerator not divisible by ") + f);
    fixture_ok = true;
    double dt = seconds_since(t0);
    require(dt < 300.0, "exceeded 5 min");
    std::ostringstream os;
    os << "value, denominator factorization, and numerator factors all "
          "check in "
       << dt << " s";
    return os.str();
  });

  gate.criterion(4, "certificate discovery at a=5/7, order 18", [&] {
    auto t0 = std::chrono::steady_clock::now();
    auto res = schlicht::find_certificate(r(5, 7), 18);
    require(res.status == schlicht::FindResult::Status::Found,
            "discovery found nothing");
    require(res.certificate->verified, "certificate not verified");

    CmdResult cli = run_cli("certify --a 5/7 --order 18");
    require(cli.exit_code == 0, "CLI exit code not 0");
    require(json::parse(cli.out).at("verified") == true,
            "CLI certificate not verified");
    double dt = seconds_since(t0);
    require(dt < 600.0, "exceeded 10 min");
    std::ostringstream os;
    os << "library and CLI both verified in " << dt << " s";
    return os.str();
  });

  gate.criterion(5, "one-point lower bound pi/3 with x1 = 17/22", [&] {
    rep_d0 = schlicht::check_lower_bound(r(1, 3), BoundMode::Delta0,
                                         r(17, 22));
    require(rep_d0.certified, "not certified");
    require(within(rep_d0.lemma_margin, 0.00250, 0.00260),
            "margin enclosure misses 0.00255 +- 5e-5");
    require(within(rep_d0.threshold_value, 0.981, 0.983),
            "threshold enclosure misses 0.982 +- 1e-3");
    return std::string("certified; margin in [0.00250, 0.00260], "
                       "threshold in [0.981, 0.983]");
  });

  gate.criterion(6, "two-point lower bound 7pi/25 with x1 = 20/27", [&] {
    rep_d1 = schlicht::check_lower_bound(r(7, 25), BoundMode::Delta1,
                                         r(20, 27));
    require(rep_d1.certified, "not certified");
    require(within(rep_d1.lemma_margin, 0.00214, 0.00224),
            "margin enclosure misses 0.00219 +- 5e-5");
    require(within(rep_d1.threshold_value, 0.9955, 0.9975),
            "threshold enclosure misses 0.9965 +- 1e-3");
    return std::string("certified; margin in [0.00214, 0.00224], "
                       "threshold in [0.9955, 0.9975]");
  });

  gate.criterion(7, "all four published (delta, x1) pairs certify", [&] {
    struct Pair {
      BigRational q;
      BoundMode mode;
      BigRational x1;
      double stated;
    };
    const Pair pairs[] = {
        {r(22, 65), BoundMode::Delta0, r(17, 22), 1.06330},
        {r(87, 257), BoundMode::Delta0, r(2765, 3578), 1.06349},
        {r(25, 89), BoundMode::Delta1, r(622, 839), 0.882469},
        {r(127, 452), BoundMode::Delta1, r(321, 433), 0.882704},
    };
    Interval pi = schlicht::pi_interval(128);
    for (const Pair& p : pairs) {
      auto rep = schlicht::check_lower_bound(p.q, p.mode, p.x1);
      require(rep.certified, "pair q=" + p.q.str() + " did not certify");
      Interval delta = scale(pi, p.q);
      require(within(delta, p.stated - 1e-5, p.stated + 1e-5),
              "q=" + p.q.str() + " pi not within 1e-5 of stated decimal");
    }
    return std::string(
        "lower bounds 1.06330, 1.06349, 0.882469, 0.882704 all certified");
  });

  gate.criterion(8, "threshold solver brackets at tol 1e-5", [&] {
    auto t0 = std::chrono::steady_clock::now();
    Interval b0 = schlicht::solve_threshold(BoundMode::Delta0, 1e-5);
    double dt0 = seconds_since(t0);
    require(dt0 < 30.0, "one-point solve exceeded 30 s");
    require(b0.width_upper() <= 1e-5, "one-point bracket too wide");
    require(b0.contains(BigRational::from_double(1.0635213)),
            "one-point bracket misses 1.0635213");

    auto t1 = std::chrono::steady_clock::now();
    Interval b1 = schlicht::solve_threshold(BoundMode::Delta1, 1e-5);
    double dt1 = seconds_since(t1);
    require(dt1 < 30.0, "two-point solve exceeded 30 s");
    require(b1.width_upper() <= 1e-5, "two-point bracket too wide");
    require(b1.contains(BigRational::from_double(0.8827139)),
            "two-point bracket misses 0.8827139");
    std::ostringstream os;
    os << "brackets contain 1.0635213 and 0.8827139 (" << dt0 << " s, "
       << dt1 << " s)";
    return os.str();
  });

  gate.criterion(9, "column recursion matches the bivariate oracle", [&] {
    const int depth = 6;
    const PowerSeries<> maps[] = {
        schlicht::koebe_series(2 * depth + 1),
        schlicht::f_a_series(r(1, 2), 2 * depth + 1),
        schlicht::f_a_series(r(5, 7), 2 * depth + 1),
    };
    for (const auto& f : maps) {
      auto table = schlicht::grunsky_table(f, depth);
      auto oracle = bivariate_log_oracle(f, depth);
      for (int j = 0; j <= depth; ++j)
        for (int k = 0; j + k <= depth; ++k)
          require(table.c(j, k) ==
                      oracle[static_cast<size_t>(j)][static_cast<size_t>(k)],
                  "entry mismatch at j=" + std::to_string(j) +
                      ", k=" + std::to_string(k));
    }
    return std::string("exact equality on three maps through depth 6");
  });

  gate.criterion(10, "exactness property suite", [&] {
    auto t0 = std::chrono::steady_clock::now();

    // Unit-coefficient map: every matrix through order 8 vanishes.
    auto kt = schlicht::grunsky_table(schlicht::koebe_series(17), 16);
    for (int n = 1; n <= 8; ++n) {
      auto g = schlicht::grunsky_matrix(kt, n);
      for (const auto& e : g.entries())
        require(e.is_zero(), "nonzero entry in vanishing matrix");
    }

    // Identity map: diagonal 1/j, positive semidefinite.
    auto it = schlicht::grunsky_table(schlicht::f_a_series(r(0), 13), 12);
    auto ig = schlicht::grunsky_matrix(it, 6);
    for (int j = 1; j <= 6; ++j)
      for (int k = 1; k <= 6; ++k)
        require(ig.gamma(j, k) == (j == k ? BigRational(1, j) : r(0)),
                "identity-map matrix not diagonal 1/j");
    require(schlicht::psd_check(ig).verdict ==
                schlicht::PSDReport::Verdict::PSD,
            "identity-map matrix not PSD");

    // Table symmetry on a generic member.
    auto st = schlicht::grunsky_table(schlicht::f_a_series(r(5, 7), 9), 8);
    for (int j = 0; j <= 8; ++j)
      for (int k = 0; j + k <= 8; ++k)
        require(st.c(j, k) == st.c(k, j), "table symmetry violated");

    // Coefficient bound holds for the unit-coefficient map.
    auto kt10 = schlicht::grunsky_table(schlicht::koebe_series(11), 10);
    require(schlicht::coefficient_bound_check(kt10, 5),
            "coefficient bound failed on unit-coefficient map");

    // exp/log round-trip on 100 random series, exact.
    std::mt19937 rng(20260819u);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    for (int trial = 0; trial < 100; ++trial) {
      PowerSeries<> s = PowerSeries<>::zeros(8);
      for (int k = 1; k <= 8; ++k) s.set(k, BigRational(num(rng), den(rng)));
      require(schlicht::series_log1p_composed(schlicht::exp_series(s)) == s,
              "exp/log round-trip not exact");
    }

    double dt = seconds_since(t0);
    require(dt < 60.0, "exceeded 1 min");
    std::ostringstream os;
    os << "all exact in " << dt << " s";
    return os.str();
  });

  gate.criterion(11, "two-sided consistency of the certified results", [&] {
    require(rep_d0.certified && rep_d1.certified,
            "lower-bound reports unavailable");
    require(fixture_ok, "upper-bound certificate unavailable");

    Interval pi = schlicht::pi_interval(128);
    Interval lower0 = scale(pi, r(1, 3));
    Interval lower1 = scale(pi, r(7, 25));
    Interval upper = scale(pi, r(5, 7));
    require(strictly_less(lower0, upper) && strictly_less(lower1, upper),
            "bound chain out of order");

    std::printf("        delta0: %.10f (= pi/3, certified lower bound) "
                "< delta0 < %.10f (= 5pi/7, from the order-18 "
                "certificate)\n",
                lower0.lo_double(), upper.hi_double());
    std::printf("        delta1: %.10f (= 7pi/25, certified lower bound) "
                "< delta1 <= delta0 < %.10f (= 5pi/7, same certificate)\n",
                lower1.lo_double(), upper.hi_double());
    return std::string("both chains printed from certified outputs");
  });

  if (gate.failures == 0) std::printf("ALL 11 CRITERIA PASSED\n");
  return gate.failures;
}
