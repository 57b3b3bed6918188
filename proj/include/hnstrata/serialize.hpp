#pragma once

// JSON, CSV and Markdown renderings of atlases, single strata and check
// reports. Integers within 2^53 are JSON numbers, larger ones decimal
// strings; rationals are always "p" or "p/q" strings.

#include "hnstrata/atlas.hpp"
#include "hnstrata/oracle.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace hnstrata {

using Json = nlohmann::json;

inline constexpr std::string_view kAtlasSchema = "hnstrata-atlas/1";

Json integer_to_json(const Integer& x);
/// Accepts a JSON integer or a decimal string.
Integer integer_from_json(const Json& j);

Json to_json(const Verdict& v);
Json to_json(const StratumReport& r);
Json to_json(const Atlas& a);
Json to_json(const oracle::CheckReport& r);

Verdict verdict_from_json(const Json& j);
StratumReport stratum_from_json(const Json& j);
/// Throws std::invalid_argument (or a nlohmann::json exception) on malformed input.
Atlas atlas_from_json(const Json& j);

/// Pretty-printed, newline-terminated; byte-stable for equal atlases.
std::string atlas_to_json_string(const Atlas& a);
Atlas atlas_from_json_string(const std::string& text);

std::string atlas_to_csv(const Atlas& a);
std::string atlas_to_markdown(const Atlas& a);

/// A single stratum of an atlas (the atlas's own strata are ignored).
std::string stratum_to_json_string(const Atlas& context, const StratumReport& r);
std::string stratum_to_csv(const Atlas& context, const StratumReport& r);
std::string stratum_to_markdown(const Atlas& context, const StratumReport& r);

std::string types_to_json_string(const std::vector<HNType>& types);
std::string types_to_csv(const std::vector<HNType>& types);
std::string types_to_markdown(const std::vector<HNType>& types);

}  // namespace hnstrata
