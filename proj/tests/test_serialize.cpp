// JSON serialization: exact rationals, series, matrices, semidefiniteness
// reports, certificates (including the bundled order-18 fixture), bound
// reports, and scan rows. Everything exact must round-trip bit-for-bit.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>

#include "schlicht/serialize.hpp"

using nlohmann::json;
using schlicht::BigRational;
using schlicht::BoundMode;
using schlicht::Certificate;
using schlicht::GrunskyMatrix;
using schlicht::PSDReport;

namespace {

BigRational r(long n, long d = 1) { return BigRational(n, d); }

json load_fixture(const std::string& name) {
  std::ifstream in(std::string(SCHLICHT_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("exact values serialize as digit-string pairs") {
  json j = schlicht::value_to_json(r(-32, 81));
  CHECK(j.at("numerator") == "-32");
  CHECK(j.at("denominator") == "81");
  CHECK(schlicht::value_from_json(j) == r(-32, 81));

  SECTION("round-trips preserve reduction") {
    BigRational big = BigRational::from_string(
        "-123456789012345678901234567891/333");
    CHECK(schlicht::value_from_json(schlicht::value_to_json(big)) == big);
  }

  SECTION("malformed objects are rejected") {
    CHECK_THROWS_AS(schlicht::value_from_json(json::array()),
                    std::invalid_argument);
    CHECK_THROWS_AS(schlicht::value_from_json(json{{"numerator", "1"}}),
                    std::invalid_argument);
  }
}

TEST_CASE("series serialize as arrays of p/q strings") {
  auto f = schlicht::f_a_series(r(1), 5);
  json j = schlicht::series_to_json(f);
  CHECK(j == json::array({"0", "1", "2", "3", "32/9", "31/9"}));
  CHECK(schlicht::series_from_json(j) == f);

  SECTION("integer coefficients drop the denominator") {
    CHECK(schlicht::series_to_json(schlicht::koebe_series(3)) ==
          json::array({"0", "1", "2", "3"}));
  }

  SECTION("empty arrays are rejected") {
    CHECK_THROWS_AS(schlicht::series_from_json(json::array()),
                    std::invalid_argument);
  }
}

TEST_CASE("matrix documents round-trip exactly") {
  auto f = schlicht::f_a_series(r(1), 5);
  auto table = schlicht::grunsky_table(f, 4);
  GrunskyMatrix g = schlicht::grunsky_matrix(table, 2);

  json j = schlicht::matrix_to_json(g, r(1));
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("a") == "1");
  CHECK(j.at("order") == 2);
  CHECK(j.at("entries")[0][0] == "-32/81");
  CHECK(j.at("entries")[0][1] == "-56/81");
  CHECK(j.at("entries")[1][0] == "-56/81");
  CHECK(j.at("entries")[1][1] == "4/27");

  auto back = schlicht::matrix_from_json(j);
  CHECK(back.a == r(1));
  CHECK(back.matrix.order() == g.order());
  CHECK(back.matrix.entries() == g.entries());

  SECTION("shape violations are rejected") {
    json bad = j;
    bad["order"] = 3;
    CHECK_THROWS_AS(schlicht::matrix_from_json(bad), std::invalid_argument);
    json ragged = j;
    ragged["entries"][0] = json::array({"1"});
    CHECK_THROWS_AS(schlicht::matrix_from_json(ragged),
                    std::invalid_argument);
    json neg = j;
    neg["order"] = 0;
    neg["entries"] = json::array();
    CHECK_THROWS_AS(schlicht::matrix_from_json(neg), std::invalid_argument);
  }
}

TEST_CASE("semidefiniteness reports carry the verdict and any witness") {
  auto f = schlicht::f_a_series(r(1), 5);
  auto table = schlicht::grunsky_table(f, 4);

  SECTION("positive case has no witness fields") {
    auto diag = schlicht::grunsky_matrix(schlicht::grunsky_table(
                                             schlicht::koebe_series(9), 8),
                                         4);
    json j = schlicht::psd_report_to_json(schlicht::psd_check(diag));
    CHECK(j.at("verdict") == "psd");
    CHECK_FALSE(j.contains("witness"));
    CHECK_FALSE(j.contains("witness_value"));
  }

  SECTION("negative case exposes the exact witness") {
    auto g = schlicht::grunsky_matrix(table, 2);
    PSDReport rep = schlicht::psd_check(g);
    json j = schlicht::psd_report_to_json(rep);
    CHECK(j.at("verdict") == "not_psd");
    REQUIRE(j.contains("witness"));
    CHECK(j.at("witness").size() == 2);
    CHECK(schlicht::value_from_json(j.at("witness_value")).sign() < 0);
  }
}

TEST_CASE("certificate JSON round-trips and the bundled fixture verifies") {
  json j = load_fixture("paper_v.json");
  CHECK(j.at("schema_version") == 1);

  Certificate c = schlicht::certificate_from_json(j);
  CHECK(c.a == r(5, 7));
  CHECK(c.order == 18);
  CHECK(c.vector.size() == 18);
  REQUIRE(c.value.has_value());

  SECTION("verification reproduces the stored exact value") {
    auto vr = schlicht::verify_certificate(c);
    REQUIRE(vr.ok);
    REQUIRE(vr.value.has_value());
    CHECK(*vr.value == *c.value);
    CHECK(vr.value->sign() < 0);
  }

  SECTION("the stored denominator is the expected prime-power product") {
    mpz_class den = 1;
    auto mul_pow = [&den](unsigned long base, unsigned long e) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), base, e);
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
    CHECK(c.value->denominator() == den);
  }

  SECTION("the stored numerator carries the expected factors") {
    mpz_class num = -c.value->numerator();
    for (const char* f : {"37", "61", "102353087", "29977321169"}) {
      INFO("factor " << f);
      CHECK(num % mpz_class(f) == 0);
    }
  }

  SECTION("re-serialization preserves the exact content") {
    json out = schlicht::certificate_to_json(c, "published");
    CHECK(out.at("a") == j.at("a"));
    CHECK(out.at("order") == j.at("order"));
    CHECK(out.at("vector") == j.at("vector"));
    CHECK(out.at("value") == j.at("value"));
    CHECK(out.at("verified") == true);
    CHECK(out.at("generator") == "published");
    CHECK_FALSE(out.contains("timestamp"));
  }

  SECTION("timestamps are carried when supplied") {
    json out =
        schlicht::certificate_to_json(c, "jacobi+cfrac",
                                      "2026-08-19T00:00:00Z");
    CHECK(out.at("generator") == "jacobi+cfrac");
    CHECK(out.at("timestamp") == "2026-08-19T00:00:00Z");
  }
}

TEST_CASE("discovered certificates round-trip through JSON") {
  auto res = schlicht::find_certificate(r(1), 2);
  REQUIRE(res.status == schlicht::FindResult::Status::Found);
  json j = schlicht::certificate_to_json(*res.certificate);
  Certificate back = schlicht::certificate_from_json(j);
  CHECK(back.a == res.certificate->a);
  CHECK(back.order == res.certificate->order);
  CHECK(back.vector == res.certificate->vector);
  CHECK(*back.value == *res.certificate->value);
  CHECK(schlicht::verify_certificate(back).ok);
}

TEST_CASE("bound reports serialize mode, delta, and intervals") {
  auto rep = schlicht::check_lower_bound(r(1, 3), BoundMode::Delta0,
                                         r(17, 22));
  json j = schlicht::bound_report_to_json(rep);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("mode") == "delta0");
  CHECK(j.at("delta") == "1/3 pi");
  CHECK(j.at("x1") == "17/22");
  CHECK(j.at("certified") == true);
  CHECK(j.at("indeterminate") == false);
  CHECK(j.at("precision_bits") == 128);

  REQUIRE(j.at("lemma_margin").size() == 2);
  double mlo = std::stod(j.at("lemma_margin")[0].get<std::string>());
  double mhi = std::stod(j.at("lemma_margin")[1].get<std::string>());
  CHECK(mlo <= 0.0025538);
  CHECK(mhi >= 0.0025537);
  CHECK(mlo > 0.0);

  double tlo = std::stod(j.at("threshold")[0].get<std::string>());
  double thi = std::stod(j.at("threshold")[1].get<std::string>());
  CHECK(tlo <= 0.9823333);
  CHECK(thi >= 0.9823332);
  CHECK(thi < 1.0);
}

TEST_CASE("delta strings parse back to exact quotients") {
  CHECK(schlicht::delta_from_string("1/3 pi") == r(1, 3));
  CHECK(schlicht::delta_from_string("22/65 pi") == r(22, 65));
  CHECK(schlicht::delta_from_string("5/7") == r(5, 7));
  CHECK(schlicht::delta_to_string(r(7, 25)) == "7/25 pi");
  CHECK_THROWS_AS(schlicht::delta_from_string("0.33 pi"),
                  std::invalid_argument);
}

TEST_CASE("scan rows serialize per-parameter outcomes") {
  auto entries = schlicht::scan_upper_bound({r(0), r(1)}, 4);
  REQUIRE(entries.size() == 2);

  json none = schlicht::scan_entry_to_json(entries[0]);
  CHECK(none.at("a") == "0");
  CHECK(none.at("first_order").is_null());
  CHECK_FALSE(none.contains("implied_upper_bound"));

  json hit = schlicht::scan_entry_to_json(entries[1]);
  CHECK(hit.at("a") == "1");
  CHECK(hit.at("first_order") == 2);
  CHECK(hit.at("implied_upper_bound") == "1 pi");
  CHECK(hit.at("certificate").at("verified") == true);
}
