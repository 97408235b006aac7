#pragma once
#include <string>

#include "json.hpp"
#include "qalg/presentation.hpp"

namespace qalg {

using json = nlohmann::json;

Field field_from_json(const json& j);
json field_to_json(const Field& f);

// Path lists in the JSON format are written as products, rightmost arrow first.
template <class K>
Presentation<K> presentation_from_json(const json& j, const Field& field);
template <class K>
json presentation_to_json(const Presentation<K>& p);

json read_json_file(const std::string& path);

}  // namespace qalg
