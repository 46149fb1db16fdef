#include <doctest.h>

#include "skalab/report.hpp"

using namespace skalab;
using namespace skalab::report;

TEST_CASE("twelve significant digits") {
  CHECK(round12(0.1 + 0.2) == 0.3);
  CHECK(round12(1.0 / 3.0) == 0.333333333333);
  CHECK(round12(0.0) == 0.0);
  CHECK(round12(-0.0) == 0.0);
  CHECK(format_double(43.03121249168) == "43.0312124917");
  CHECK(format_double(52) == "52");
  CHECK(dump(Json{{"x", 0.1 + 0.2}}) == "{\n  \"x\": 0.3\n}\n");
  CHECK(rounded(Json::array({1.0 / 3.0, 7}))[1] == 7);
}

TEST_CASE("canonical key order") {
  Json a;
  a["zeta"] = 1;
  a["alpha"] = Json{{"b", 2}, {"a", 1}};
  Json b;
  b["alpha"] = Json{{"a", 1}, {"b", 2}};
  b["zeta"] = 1;
  CHECK(dump(a) == dump(b));
  CHECK(dump(a).find("alpha") < dump(a).find("zeta"));
}

TEST_CASE("envelope") {
  const Json doc = envelope(Json{{"points", 13}}, Json{{"command", "plane"}}, 9);
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["version"] == std::string(kVersion));
  CHECK(doc["seed"] == 9);
  CHECK(doc["config"]["command"] == "plane");
  CHECK(doc["points"] == 13);
}

TEST_CASE("CSV quoting") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  CHECK(csv_line({"1", "x,y", ""}) == "1,\"x,y\",\r\n");
  CHECK(bound_csv_header().size() == bound_csv_row(BoundReport{}).size());
}

TEST_CASE("session and halving documents") {
  const FieldSpec f9 = field_for_order(9);
  const Flag flag = from_chart(f9, ChartCoords{1, 2, 0, 1, 2, 1});
  const auto s = ska::run_session(flag);
  const Json doc = session_json(s, flag);
  CHECK(doc["q"] == 9);
  CHECK(doc["transcript"] == Json::array({1, 2}));
  CHECK(doc["alice_key"] == 1);
  CHECK(doc["bob_key"] == 1);
  CHECK(doc["status"] == "ok");
  CHECK(doc["bits"]["alice"] == 2);
  CHECK(doc["flag"]["line"] == Json::array({"1", "1+2x", "0"}));

  halving::HalveReport rep;
  rep.nx = rep.ny = 4;
  rep.status = "not_covered";
  rep.winding = 0;
  const Json h = halve_json(rep);
  for (const char* key : {"nx", "ny", "target", "winding", "alpha", "beta", "achieved", "residual", "lipschitz"})
    CHECK(h.contains(key));
  CHECK(h["alpha"].is_null());
  CHECK(h["lipschitz"].contains("measured_max"));
}

TEST_CASE("cover document") {
  const Plane plane = Plane::of_order(9);
  const auto fam = cover_with_maps(plane, {Automorphism::identity(plane.spec())});
  const Json doc = cover_json(fam, true);
  CHECK(doc["N"] == 1);
  CHECK(doc["uncovered_flag_ids"].size() == 910 - 52);
  CHECK(doc["maps"][0][0] == Json::array({"1", "0", "0"}));
  CHECK_FALSE(cover_json(fam).contains("maps"));
}
