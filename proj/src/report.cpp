#include "skalab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace skalab::report {

double round12(double v) {
  if (!std::isfinite(v) || v == 0) return v == 0 ? 0.0 : v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json rounded(Json doc) {
  if (doc.is_number_float()) return round12(doc.get<double>());
  if (doc.is_structured())
    for (auto& item : doc) item = rounded(std::move(item));
  return doc;
}

std::string dump(const Json& doc) { return rounded(doc).dump(2) + "\n"; }

Json envelope(Json body, const Json& config, std::uint64_t seed) {
  body["schema_version"] = kSchemaVersion;
  body["version"] = std::string(kVersion);
  body["config"] = config;
  body["seed"] = seed;
  return body;
}

Json field_json(const FieldSpec& spec) {
  return Json{{"p", spec.p}, {"degree", spec.degree}, {"u", spec.u}, {"v", spec.v}};
}

namespace {

template <class T>
Json triple_json(const T& h) {
  return Json::array({format_elt(h[0]), format_elt(h[1]), format_elt(h[2])});
}

}  // namespace

Json flag_json(const Flag& flag) { return Json{{"line", triple_json(flag.line)}, {"point", triple_json(flag.point)}}; }

Json matrix_json(const Matrix3& m) {
  Json rows = Json::array();
  for (const auto& row : m) rows.push_back(triple_json(row));
  return rows;
}

Json bound_json(const BoundReport& r) {
  return Json{{"left_size", r.left_size},
              {"right_size", r.right_size},
              {"edges", r.edges},
              {"sdz_value", r.sdz_value},
              {"sdz_ratio", r.sdz_ratio},
              {"regime_balanced", r.regime_balanced},
              {"regime_small", r.regime_small},
              {"field_prime", r.field_prime},
              {"host_c4_free", r.host_c4_free},
              {"kst_value", r.kst_value},
              {"kst_bound", r.kst_bound},
              {"density_exponent", r.density_exponent},
              {"q", r.q},
              {"n", r.n}};
}

Json cover_json(const CoverFamily& fam, bool include_maps) {
  Json doc{{"q", fam.q},
           {"p", fam.p},
           {"N", fam.sample_count},
           {"c", fam.c},
           {"seed", fam.seed},
           {"covered_count", fam.covered_count},
           {"flag_count", fam.covered.size()},
           {"coverage_fraction", fam.coverage_fraction},
           {"uncovered_flag_ids", fam.uncovered_flag_ids()}};
  if (include_maps) {
    Json maps = Json::array();
    for (const auto& m : fam.maps) maps.push_back(matrix_json(m.matrix()));
    doc["maps"] = std::move(maps);
  }
  return doc;
}

Json session_json(const ska::SessionResult& s, const Flag& flag) {
  Json transcript = Json::array();
  if (s.m1) transcript.push_back(s.m1->payload);
  if (s.m2) transcript.push_back(s.m2->payload);
  Json doc{{"q", s.spec.order()},
           {"flag", flag_json(flag)},
           {"transcript", transcript},
           {"alice_key", s.alice_key ? Json(*s.alice_key) : Json()},
           {"bob_key", s.bob_key ? Json(*s.bob_key) : Json()},
           {"status", std::string(ska::to_string(s.status))}};
  if (s.status == ska::Status::ok) {
    const auto acc = ska::transcript_accounting(s);
    doc["bits"] = Json{{"alice", acc.bits_alice}, {"bob", acc.bits_bob}, {"key", acc.key_bits}};
  } else {
    doc["bits"] = nullptr;
  }
  return doc;
}

Json audit_json(const ska::SecrecyAudit& a) {
  return Json{{"q", a.q},
              {"p", a.p},
              {"uniform", a.uniform},
              {"per_key_count", a.expected_per_key},
              {"min_count", a.min_count},
              {"max_count", a.max_count},
              {"transcripts", a.transcripts},
              {"tuples", a.tuples},
              {"key_mismatches", a.key_mismatches},
              {"identity_violations", a.identity_violations}};
}

Json halve_json(const halving::HalveReport& r) {
  Json doc{{"nx", r.nx},
           {"ny", r.ny},
           {"target", Json::array({r.target[0], r.target[1]})},
           {"status", r.status},
           {"estimator", r.estimator},
           {"winding", r.winding ? Json(*r.winding) : Json()},
           {"lipschitz",
            Json{{"declared", r.lipschitz.declared},
                 {"measured_max", r.lipschitz.measured_max},
                 {"violations", r.lipschitz.violations}}}};
  if (r.preimage) {
    const auto& p = *r.preimage;
    doc["alpha"] = p.alpha;
    doc["beta"] = p.beta;
    doc["achieved"] = Json::array({p.achieved[0], p.achieved[1]});
    doc["residual"] = p.residual;
  } else {
    doc["alpha"] = doc["beta"] = doc["achieved"] = doc["residual"] = nullptr;
  }
  return doc;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::vector<std::string> bound_csv_header() {
  return {"q",          "n",           "left_size",        "right_size",      "edges",
          "sdz_value",  "sdz_ratio",   "density_exponent", "regime_balanced", "regime_small",
          "field_prime", "host_c4_free", "kst_value",      "kst_bound"};
}

std::vector<std::string> bound_csv_row(const BoundReport& r) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {std::to_string(r.q),
          std::to_string(r.n),
          std::to_string(r.left_size),
          std::to_string(r.right_size),
          std::to_string(r.edges),
          format_double(r.sdz_value),
          format_double(r.sdz_ratio),
          format_double(r.density_exponent),
          b(r.regime_balanced),
          b(r.regime_small),
          b(r.field_prime),
          b(r.host_c4_free),
          format_double(r.kst_value),
          std::to_string(r.kst_bound)};
}

}  // namespace skalab::report
