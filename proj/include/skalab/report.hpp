#pragma once

// JSON and CSV renderings of the experiment results. JSON objects keep their
// keys sorted and doubles are rounded to 12 significant digits, so identical
// inputs always give byte-identical text.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "skalab/cover.hpp"
#include "skalab/halving.hpp"
#include "skalab/incidence.hpp"
#include "skalab/plane.hpp"
#include "skalab/ska.hpp"

namespace skalab::report {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kVersion = "0.3.1";

double round12(double v);
/// Text of `v` after round12, without trailing noise digits.
std::string format_double(double v);

/// Recursively rounds every floating-point value in `doc`.
Json rounded(Json doc);
/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& doc);

/// Adds schema_version, version, config and seed to `body`.
Json envelope(Json body, const Json& config, std::uint64_t seed);

Json field_json(const FieldSpec& spec);
Json flag_json(const Flag& flag);
Json matrix_json(const Matrix3& m);

Json bound_json(const BoundReport& r);
Json cover_json(const CoverFamily& fam, bool include_maps = false);
Json session_json(const ska::SessionResult& s, const Flag& flag);
Json audit_json(const ska::SecrecyAudit& a);
Json halve_json(const halving::HalveReport& r);

/// RFC 4180: quote when the field holds a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

std::vector<std::string> bound_csv_header();
std::vector<std::string> bound_csv_row(const BoundReport& r);

}  // namespace skalab::report
