// Command-line surface for the toolkit: series dumps, matrix export, PSD
// checks, certificate discovery/verification, certified lower bounds,
// threshold solving, and batch scans.
//
// Exit codes are a stable contract:
//   0  success / certified
//   2  determinate no-evidence outcome (no certificate, check refuted)
//   3  indeterminate at maximum precision
//   1  internal failure or bad input

#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schlicht/serialize.hpp"

namespace {

using nlohmann::json;
using schlicht::BigRational;
using schlicht::BoundMode;

constexpr long kMinPrecision = 64;
constexpr long kMaxPrecision = 4096;
constexpr int kMaxOrder = 64;

long default_precision() {
  if (const char* env = std::getenv("SCHLICHT_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= kMinPrecision && v <= kMaxPrecision)
      return v;
    std::cerr << "warning: ignoring SCHLICHT_PRECISION=" << env
              << " (want an integer in [" << kMinPrecision << ", "
              << kMaxPrecision << "])\n";
  }
  return 128;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

BigRational parse_rational(const std::string& s, const char* what) {
  try {
    return BigRational::from_string(s);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": '" + s +
                                "' is not an exact rational (decimals are "
                                "rejected; write p/q)");
  }
}

std::vector<BigRational> parse_rational_list(const std::string& s,
                                             const char* what) {
  std::vector<BigRational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw std::invalid_argument(std::string(what) + ": empty element");
    out.push_back(parse_rational(item.substr(b, e - b + 1), what));
  }
  if (out.empty())
    throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

BoundMode parse_mode(const std::string& s) {
  if (s == "delta0") return BoundMode::Delta0;
  if (s == "delta1") return BoundMode::Delta1;
  throw std::invalid_argument("mode must be delta0 or delta1");
}

/// Factor n by trial division over primes below the limit; returns
/// base^exponent pairs plus whatever cofactor is left over.
struct SmoothFactorization {
  std::vector<std::pair<unsigned long, unsigned long>> factors;
  mpz_class cofactor;
};

SmoothFactorization factor_smooth(mpz_class n, unsigned long limit = 1000) {
  SmoothFactorization out;
  if (n < 0) n = -n;
  for (unsigned long p = 2; p <= limit && n > 1; p += (p == 2 ? 1 : 2)) {
    unsigned long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.factors.emplace_back(p, e);
  }
  out.cofactor = n;
  return out;
}

std::string factorization_string(const SmoothFactorization& f) {
  std::string s;
  for (const auto& [p, e] : f.factors) {
    if (!s.empty()) s += " * ";
    s += std::to_string(p);
    if (e > 1) s += "^" + std::to_string(e);
  }
  if (f.cofactor != 1 || s.empty()) {
    if (!s.empty()) s += " * ";
    s += f.cofactor.get_str();
  }
  return s;
}

/// Resolve a fixture path: as given, then under ./data, then under the
/// directory the repository bundles its fixtures in.
std::string resolve_fixture(const std::string& path) {
  auto exists = [](const std::string& p) {
    std::ifstream f(p);
    return f.good();
  };
  if (exists(path)) return path;
  if (exists("data/" + path)) return "data/" + path;
#ifdef SCHLICHT_DATA_DIR
  if (exists(std::string(SCHLICHT_DATA_DIR) + "/" + path))
    return std::string(SCHLICHT_DATA_DIR) + "/" + path;
#endif
  throw std::runtime_error("fixture not found: " + path);
}

// ---------------------------------------------------------------------------
// Subcommand configuration
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string a = "0/1";
  std::string a_list;
  std::string function = "fa";
  std::string mode = "delta0";
  std::string x1;
  std::string fixture;
  std::string in_path;
  std::string out_path;
  std::string format;  // per-command default when empty: coeffs/scan csv-ish,
                       // everything else json
  int order = 1;
  int max_order = 18;
  long precision = default_precision();
  double tol = 1e-5;
  std::uint64_t max_denominator = 30;
};

void check_order(int order) {
  if (order < 1 || order > kMaxOrder)
    throw std::invalid_argument("order must lie in [1, " +
                                std::to_string(kMaxOrder) + "]");
}

void check_precision(long bits) {
  if (bits < kMinPrecision || bits > kMaxPrecision)
    throw std::invalid_argument("precision must lie in [" +
                                std::to_string(kMinPrecision) + ", " +
                                std::to_string(kMaxPrecision) + "]");
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_coeffs(const RunConfig& cfg) {
  check_order(cfg.order);
  BigRational a = parse_rational(cfg.a, "--a");
  schlicht::PowerSeries<> s = [&] {
    if (cfg.function == "qa") return schlicht::q_a_series(a, cfg.order);
    if (cfg.function == "fa") return schlicht::f_a_series(a, cfg.order);
    if (cfg.function == "logfa")
      return schlicht::log_fa_over_z_series(a, cfg.order);
    throw std::invalid_argument("--function must be qa, fa, or logfa");
  }();

  if (cfg.format == "json") {
    json j{{"schema_version", schlicht::kSchemaVersion},
           {"a", a.str()},
           {"function", cfg.function},
           {"order", cfg.order},
           {"coefficients", schlicht::series_to_json(s)}};
    write_output(cfg.out_path, j.dump(2));
  } else {
    std::string line;
    for (int k = 0; k <= s.order(); ++k) {
      if (k) line += ", ";
      line += s[k].str();
    }
    write_output(cfg.out_path, line);
  }
  return 0;
}

int cmd_grunsky(const RunConfig& cfg) {
  check_order(cfg.order);
  BigRational a = parse_rational(cfg.a, "--a");
  auto f = schlicht::f_a_series(a, 2 * cfg.order + 1);
  auto table = schlicht::grunsky_table(f, 2 * cfg.order);
  auto g = schlicht::grunsky_matrix(table, cfg.order);

  if (cfg.format != "csv") {
    write_output(cfg.out_path, schlicht::matrix_to_json(g, a).dump(2));
  } else {
    std::string text;
    for (int j = 1; j <= g.order(); ++j) {
      for (int k = 1; k <= g.order(); ++k) {
        if (k > 1) text += ",";
        text += g.gamma(j, k).str();
      }
      text += "\n";
    }
    write_output(cfg.out_path, text);
  }
  return 0;
}

int cmd_psd(const RunConfig& cfg) {
  schlicht::GrunskyMatrix g = [&] {
    if (!cfg.in_path.empty()) {
      std::ifstream in(resolve_fixture(cfg.in_path));
      return schlicht::matrix_from_json(json::parse(in)).matrix;
    }
    check_order(cfg.order);
    BigRational a = parse_rational(cfg.a, "--a");
    auto f = schlicht::f_a_series(a, 2 * cfg.order + 1);
    auto table = schlicht::grunsky_table(f, 2 * cfg.order);
    return schlicht::grunsky_matrix(table, cfg.order);
  }();

  auto rep = schlicht::psd_check(g);
  write_output(cfg.out_path, schlicht::psd_report_to_json(rep).dump(2));
  return 0;
}

int cmd_certify(const RunConfig& cfg) {
  check_order(cfg.order);
  BigRational a = parse_rational(cfg.a, "--a");
  auto res = schlicht::find_certificate(a, cfg.order, cfg.max_denominator);

  if (res.status == schlicht::FindResult::Status::Found) {
    json j = schlicht::certificate_to_json(*res.certificate, "jacobi+cfrac",
                                           utc_timestamp());
    write_output(cfg.out_path, j.dump(2));
    return 0;
  }
  json j{{"schema_version", schlicht::kSchemaVersion},
         {"a", a.str()},
         {"order", cfg.order},
         {"status",
          res.status == schlicht::FindResult::Status::NoNegativeDirection
              ? "no_negative_direction"
              : "verification_failed"},
         {"float_eigenvalue", res.float_eigenvalue}};
  write_output(cfg.out_path, j.dump(2));
  return 2;
}

int cmd_verify(const RunConfig& cfg) {
  std::string path = cfg.fixture.empty() ? cfg.in_path : cfg.fixture;
  if (path.empty())
    throw std::invalid_argument("verify needs --fixture FILE (or --in FILE)");
  std::ifstream in(resolve_fixture(path));
  auto cert = schlicht::certificate_from_json(json::parse(in));

  auto vr = schlicht::verify_certificate(cert);
  json j{{"schema_version", schlicht::kSchemaVersion},
         {"a", cert.a.str()},
         {"order", cert.order},
         {"ok", vr.ok}};
  if (vr.value) {
    j["value"] = schlicht::value_to_json(*vr.value);
    j["denominator_factorization"] =
        factorization_string(factor_smooth(vr.value->denominator()));
  }
  if (!vr.ok) j["diagnostic"] = vr.diagnostic;
  write_output(cfg.out_path, j.dump(2));
  return vr.ok ? 0 : 2;
}

int cmd_bounds(const RunConfig& cfg) {
  check_precision(cfg.precision);
  BigRational q = parse_rational(cfg.a, "--delta");
  std::optional<BigRational> x1;
  if (!cfg.x1.empty()) x1 = parse_rational(cfg.x1, "--x1");

  auto rep = schlicht::certify_lower_bound(
      q, parse_mode(cfg.mode), x1, cfg.precision,
      std::max<long>(cfg.precision, 1024));
  write_output(cfg.out_path, schlicht::bound_report_to_json(rep).dump(2));
  if (rep.certified) return 0;
  return rep.indeterminate ? 3 : 2;
}

int cmd_solve(const RunConfig& cfg) {
  check_precision(cfg.precision);
  if (!(cfg.tol > 0)) throw std::invalid_argument("--tol must be positive");
  try {
    auto bracket = schlicht::solve_threshold(
        parse_mode(cfg.mode), cfg.tol, cfg.precision,
        std::max<long>(cfg.precision, 1024));
    json j{{"schema_version", schlicht::kSchemaVersion},
           {"mode", cfg.mode},
           {"tol", cfg.tol},
           {"bracket", schlicht::interval_to_json(bracket)}};
    write_output(cfg.out_path, j.dump(2));
    return 0;
  } catch (const schlicht::PrecisionError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return 3;
  }
}

int cmd_scan(const RunConfig& cfg) {
  check_order(cfg.max_order);
  auto grid = parse_rational_list(cfg.a_list, "--a-list");

  // Rows are independent; run them concurrently and collect in grid order.
  struct Row {
    json j;
    std::string csv;
  };
  std::vector<std::future<Row>> futures;
  futures.reserve(grid.size());
  for (const BigRational& a : grid) {
    futures.push_back(std::async(std::launch::async, [&cfg, a]() -> Row {
      Row row;
      try {
        auto entries =
            schlicht::scan_upper_bound({a}, cfg.max_order,
                                       cfg.max_denominator);
        const auto& e = entries.at(0);
        row.j = schlicht::scan_entry_to_json(e);
        row.csv = e.a.str() + "," +
                  (e.first_order ? std::to_string(*e.first_order) : "") +
                  "," + (e.first_order ? e.a.str() + " pi" : "");
      } catch (const std::exception& ex) {
        row.j = json{{"a", a.str()}, {"error", ex.what()}};
        row.csv = a.str() + ",,error: " + ex.what();
      }
      return row;
    }));
  }

  json rows = json::array();
  std::string csv = "a,first_order,implied_upper_bound\n";
  for (auto& f : futures) {
    Row row = f.get();
    rows.push_back(std::move(row.j));
    csv += row.csv + "\n";
  }

  if (cfg.format != "csv") {
    json j{{"schema_version", schlicht::kSchemaVersion},
           {"max_order", cfg.max_order},
           {"rows", std::move(rows)}};
    write_output(cfg.out_path, j.dump(2));
  } else {
    write_output(cfg.out_path, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and certified computations for a family of disk maps: "
               "series coefficients, quadratic-form matrices, rational "
               "non-positivity certificates, and interval-certified "
               "lower bounds."};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub, bool with_format = true) {
    sub->add_option("--out", cfg.out_path, "Write output to FILE (default: stdout)");
    if (with_format)
      sub->add_option("--format", cfg.format, "Output format")
          ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* coeffs = app.add_subcommand(
      "coeffs", "Print exact series coefficients of qa, fa, or log(fa/z)");
  coeffs->add_option("--a", cfg.a, "Family parameter as p/q")->required();
  coeffs->add_option("--function", cfg.function, "qa | fa | logfa")
      ->check(CLI::IsMember({"qa", "fa", "logfa"}));
  coeffs->add_option("--order", cfg.order, "Highest power of z")->required();
  add_common(coeffs);

  CLI::App* grunsky = app.add_subcommand(
      "grunsky", "Export the order-n quadratic-form matrix exactly");
  grunsky->add_option("--a", cfg.a, "Family parameter as p/q")->required();
  grunsky->add_option("--order", cfg.order, "Matrix order n")->required();
  add_common(grunsky);

  CLI::App* psd = app.add_subcommand(
      "psd", "Decide positive semidefiniteness with an exact witness");
  psd->add_option("--a", cfg.a, "Family parameter as p/q");
  psd->add_option("--order", cfg.order, "Matrix order n");
  psd->add_option("--in", cfg.in_path, "Check a matrix JSON file instead");
  add_common(psd, false);

  CLI::App* certify = app.add_subcommand(
      "certify", "Search for a rational negative-direction certificate");
  certify->add_option("--a", cfg.a, "Family parameter as p/q")->required();
  certify->add_option("--order", cfg.order, "Matrix order n")->required();
  certify->add_option("--max-denominator", cfg.max_denominator,
                      "Starting denominator bound for rationalization");
  add_common(certify, false);

  CLI::App* verify = app.add_subcommand(
      "verify", "Re-verify a stored certificate from first principles");
  verify->add_option("--fixture", cfg.fixture, "Certificate JSON file");
  verify->add_option("--in", cfg.in_path, "Certificate JSON file");
  add_common(verify, false);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Certify a lower bound delta = q*pi for delta0 or delta1");
  bounds->add_option("--mode", cfg.mode, "delta0 | delta1")
      ->check(CLI::IsMember({"delta0", "delta1"}));
  bounds->add_option("--delta", cfg.a, "Quotient q in delta = q*pi (exact p/q)")
      ->required();
  bounds->add_option("--x1", cfg.x1,
                     "Majorization point in (0,1) (exact p/q); "
                     "auto-selected when omitted");
  bounds->add_option("--precision", cfg.precision, "Working precision in bits");
  add_common(bounds, false);

  CLI::App* solve = app.add_subcommand(
      "solve", "Bracket the crossover delta where the certified check tips");
  solve->add_option("--mode", cfg.mode, "delta0 | delta1")
      ->check(CLI::IsMember({"delta0", "delta1"}));
  solve->add_option("--tol", cfg.tol, "Bracket width target");
  solve->add_option("--precision", cfg.precision, "Working precision in bits");
  add_common(solve, false);

  CLI::App* scan = app.add_subcommand(
      "scan", "Scan a parameter grid for smallest certifying orders");
  scan->add_option("--a-list", cfg.a_list,
                   "Comma-separated rational parameters, e.g. 0,1,5/7")
      ->required();
  scan->add_option("--max-order", cfg.max_order, "Largest order to try");
  scan->add_option("--max-denominator", cfg.max_denominator,
                   "Starting denominator bound for rationalization");
  add_common(scan);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(coeffs)) return cmd_coeffs(cfg);
    if (app.got_subcommand(grunsky)) return cmd_grunsky(cfg);
    if (app.got_subcommand(psd)) return cmd_psd(cfg);
    if (app.got_subcommand(certify)) return cmd_certify(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(bounds)) return cmd_bounds(cfg);
    if (app.got_subcommand(solve)) return cmd_solve(cfg);
    if (app.got_subcommand(scan)) return cmd_scan(cfg);
  } catch (const schlicht::PrecisionError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
