#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "semiframe/exponentials/exponentials.hpp"
#include "semiframe/hilbert/family.hpp"
#include "semiframe/muckenhoupt/weight.hpp"
#include "semiframe/translates/translates.hpp"

namespace semiframe::lab {

// "orthonormal", "diana", "stoeva", "interleaved-chi", "diagonal:p[:c]", "random-frame:seed", "random-lsf:seed".
hilbert::VectorFamily parse_family(const std::string& spec);

// "unit-indicator", "band:c:lo:hi", "sqrt-power", "dyadic-plateau", "gaussian:center:width:shift",
// or a JSON object {"name": ..., parameters...}.
translates::Profile parse_profile(const std::string& spec);
translates::Profile profile_from_json(const nlohmann::json& j);

// Weight::parse specs, or a path ending in .csv: one positive value per line (cells of [0, 1)),
// optionally with a header line.
muckenhoupt::Weight load_weight(const std::string& spec);

// Translate system from a profile spec, or from a CSV of phi^ samples ("node,re,im") on a line grid.
translates::TranslateSystem load_translates(const std::string& spec, double a, Index nodes, double omega);

// JSON config: {"weight": spec, "b": 1, "nodes": M} or
// {"profile": spec-or-object, "a": 1, "nodes": M, "omega": W}.
nlohmann::json read_json_file(const std::string& path);

}  // namespace semiframe::lab
