#include <doctest.h>

#include <sstream>

#include "cubic/io.hpp"

using namespace cubic;

TEST_CASE("moment CSV round trip") {
  const FieldCtx ctx = make_field(7);
  const MomentReport r = moment(ctx, 1, 0.5, MomentOptions{});
  std::stringstream ss;
  ss << kMomentCsvHeader << '\n';
  write_moment_csv_row(ss, r);
  const auto rows = read_csv(ss);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].size() == rows[1].size());
  CHECK(rows[1][0] == "7");
  CHECK(rows[1][3] == "exhaustive");
  CHECK(std::stod(rows[1][6]) == r.mean.real());
  CHECK(std::stod(rows[1][9]) == r.prediction);
}

TEST_CASE("double formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) CHECK(std::stod(fmt_double(x)) == x);
}

TEST_CASE("L-data JSON") {
  const FieldCtx ctx = make_field(7);
  const LData L = compute_coeffs(ctx, Character(ctx, parse_poly(ctx, "T^4+T+3")));
  const Json j = ldata_json(ctx, L);
  CHECK(j["q"] == 7);
  CHECK(j["F"] == "T^4+T+3");
  CHECK(j["genus"] == 3);
  CHECK(j["a"].size() == L.a.size());
  CHECK(j["a"][0] == Json::array({1, 0}));
}

TEST_CASE("digest") {
  CHECK(digest_hex("") == "cbf29ce484222325");
  CHECK(digest_hex("a") == "af63dc4c8601ec8c");
  CHECK(digest_hex("a") != digest_hex("b"));
}
