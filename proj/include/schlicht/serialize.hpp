#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "schlicht/bounds.hpp"
#include "schlicht/certificate.hpp"
#include "schlicht/grunsky.hpp"
#include "schlicht/interval.hpp"
#include "schlicht/power_series.hpp"
#include "schlicht/rational.hpp"

namespace schlicht {

/// Version stamp written into every JSON document this library emits.
inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

/// Exact rational as {"numerator": "...", "denominator": "..."} with decimal
/// digit strings, sign on the numerator. Used where the magnitude routinely
/// exceeds what a "p/q" display string is pleasant for.
inline nlohmann::json value_to_json(const BigRational& v) {
  return nlohmann::json{{"numerator", v.numerator().get_str()},
                        {"denominator", v.denominator().get_str()}};
}

inline BigRational value_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("numerator") || !j.contains("denominator"))
    throw std::invalid_argument(
        "value_from_json: expected {numerator, denominator}");
  return BigRational::from_string(j.at("numerator").get<std::string>() + "/" +
                                  j.at("denominator").get<std::string>());
}

/// Interval as a [lo, hi] pair of decimal strings, outward-rounded so the
/// printed pair still encloses the represented value.
inline nlohmann::json interval_to_json(const Interval& x, int digits = 17) {
  return nlohmann::json::array({x.lo_string(digits), x.hi_string(digits)});
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

/// Array of "p/q" strings, index = power of z.
inline nlohmann::json series_to_json(const PowerSeries<>& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (int k = 0; k <= s.order(); ++k) arr.push_back(s[k].str());
  return arr;
}

inline PowerSeries<> series_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("series_from_json: expected non-empty array");
  std::vector<BigRational> coeffs;
  coeffs.reserve(j.size());
  for (const auto& e : j)
    coeffs.push_back(BigRational::from_string(e.get<std::string>()));
  return PowerSeries<>(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// A matrix together with the family parameter it was computed from.
struct LabeledMatrix {
  BigRational a;
  GrunskyMatrix matrix;
};

inline nlohmann::json matrix_to_json(const GrunskyMatrix& m,
                                     const BigRational& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (int j = 1; j <= m.order(); ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 1; k <= m.order(); ++k) row.push_back(m.gamma(j, k).str());
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"a", a.str()},
                        {"order", m.order()},
                        {"entries", std::move(rows)}};
}

inline LabeledMatrix matrix_from_json(const nlohmann::json& j) {
  const int order = j.at("order").get<int>();
  if (order < 1) throw std::invalid_argument("matrix_from_json: order < 1");
  const auto& rows = j.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != order)
    throw std::invalid_argument("matrix_from_json: entries/order mismatch");
  std::vector<BigRational> flat;
  flat.reserve(static_cast<size_t>(order) * order);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != order)
      throw std::invalid_argument("matrix_from_json: ragged entries");
    for (const auto& e : row)
      flat.push_back(BigRational::from_string(e.get<std::string>()));
  }
  return LabeledMatrix{BigRational::from_string(j.at("a").get<std::string>()),
                       GrunskyMatrix(order, std::move(flat))};
}

// ---------------------------------------------------------------------------
// Semidefiniteness reports
// ---------------------------------------------------------------------------

inline nlohmann::json psd_report_to_json(const PSDReport& rep) {
  nlohmann::json j{
      {"schema_version", kSchemaVersion},
      {"verdict",
       rep.verdict == PSDReport::Verdict::PSD ? "psd" : "not_psd"}};
  if (rep.witness) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& x : *rep.witness) w.push_back(x.str());
    j["witness"] = std::move(w);
  }
  if (rep.witness_value) j["witness_value"] = value_to_json(*rep.witness_value);
  return j;
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

inline nlohmann::json certificate_to_json(
    const Certificate& c, const std::string& generator = "jacobi+cfrac",
    const std::string& timestamp = "") {
  nlohmann::json vec = nlohmann::json::array();
  for (const auto& x : c.vector) vec.push_back(x.str());
  nlohmann::json j{{"schema_version", kSchemaVersion},
                   {"a", c.a.str()},
                   {"order", c.order},
                   {"vector", std::move(vec)},
                   {"verified", c.verified},
                   {"generator", generator}};
  if (c.value) j["value"] = value_to_json(*c.value);
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.a = BigRational::from_string(j.at("a").get<std::string>());
  c.order = j.at("order").get<int>();
  for (const auto& e : j.at("vector"))
    c.vector.push_back(BigRational::from_string(e.get<std::string>()));
  if (j.contains("value")) c.value = value_from_json(j.at("value"));
  c.verified = j.value("verified", false);
  return c;
}

// ---------------------------------------------------------------------------
// Bound reports
// ---------------------------------------------------------------------------

/// The checked delta prints as "q pi" (e.g. "1/3 pi" for pi/3).
inline std::string delta_to_string(const BigRational& q) {
  return q.str() + " pi";
}

inline BigRational delta_from_string(const std::string& s) {
  std::string body = s;
  const auto pos = body.find(" pi");
  if (pos != std::string::npos) body = body.substr(0, pos);
  return BigRational::from_string(body);
}

inline nlohmann::json bound_report_to_json(const BoundReport& r,
                                           int digits = 17) {
  return nlohmann::json{{"schema_version", kSchemaVersion},
                        {"mode", bound_mode_name(r.mode)},
                        {"delta", delta_to_string(r.delta_q)},
                        {"x1", r.x1.str()},
                        {"lemma_margin", interval_to_json(r.lemma_margin, digits)},
                        {"threshold", interval_to_json(r.threshold_value, digits)},
                        {"certified", r.certified},
                        {"indeterminate", r.indeterminate},
                        {"precision_bits", static_cast<long>(r.precision_bits)}};
}

// ---------------------------------------------------------------------------
// Scan rows
// ---------------------------------------------------------------------------

/// One row of a parameter scan: the parameter, the smallest order carrying a
/// certificate (when any), and the implied upper bound "a pi" on the
/// one-point constant when certified.
inline nlohmann::json scan_entry_to_json(const ScanEntry& e) {
  nlohmann::json j{{"schema_version", kSchemaVersion}, {"a", e.a.str()}};
  if (e.first_order) {
    j["first_order"] = *e.first_order;
    j["implied_upper_bound"] = delta_to_string(e.a);
    if (e.certificate) j["certificate"] = certificate_to_json(*e.certificate);
  } else {
    j["first_order"] = nullptr;
  }
  return j;
}

}  // namespace schlicht
