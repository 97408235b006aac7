#include "qalg/io.hpp"

#include <fstream>

namespace qalg {

Field field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("field must be an object with a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "Q") return Field::rationals();
  if (kind == "GF") {
    if (!j.contains("p") || !j.at("p").is_number_unsigned()) throw InputError("GF field needs a positive p");
    const auto p = j.at("p").get<std::uint64_t>();
    if (p > 0xffffffffULL || !is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not a prime");
    return Field::prime(static_cast<std::uint32_t>(p));
  }
  throw InputError("unknown field kind '" + kind + "'");
}

json field_to_json(const Field& f) {
  if (f.kind == Field::Kind::Rationals) return {{"kind", "Q"}};
  return {{"kind", "GF"}, {"p", f.p}};
}

template <class K>
Presentation<K> presentation_from_json(const json& j, const Field& field) {
  try {
    Presentation<K> p;
    p.field = field;
    if constexpr (std::is_same_v<K, Zp>) {
      if (field.kind != Field::Kind::Prime) throw InputError("GF(p) arithmetic requested for a rational field");
      Zp::set_modulus(field.p);
    }
    for (const auto& v : j.at("vertices")) p.vertices.push_back(v.get<std::string>());
    for (const auto& a : j.at("arrows"))
      p.arrows.push_back({a.at("name").get<std::string>(), p.vertex_index(a.at("from").get<std::string>()),
                          p.vertex_index(a.at("to").get<std::string>())});
    for (const auto& r : j.at("relations")) {
      Relation<K> rel;
      for (const auto& t : r) {
        Term<K> term;
        const json& c = t.at("coeff");
        try {
          term.coeff = parse_scalar<K>(c.is_string() ? c.get<std::string>() : c.dump());
        } catch (const std::exception& e) {
          throw InputError(e.what());
        }
        const auto& path = t.at("path");
        for (auto it = path.rbegin(); it != path.rend(); ++it) term.word.push_back(p.arrow_index(it->get<std::string>()));
        if (!is_zero(term.coeff)) rel.push_back(std::move(term));
      }
      if (!rel.empty()) p.relations.push_back(std::move(rel));
    }
    if (j.contains("order"))
      for (const auto& v : j.at("order")) p.order.push_back(p.vertex_index(v.get<std::string>()));
    else
      for (size_t i = 0; i < p.vertices.size(); ++i) p.order.push_back(static_cast<int>(i));
    if (j.contains("max_path_length")) p.max_path_length = j.at("max_path_length").get<int>();
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed presentation: ") + e.what());
  }
}

template <class K>
json presentation_to_json(const Presentation<K>& p) {
  json j;
  j["field"] = field_to_json(p.field);
  j["vertices"] = p.vertices;
  j["arrows"] = json::array();
  for (const auto& a : p.arrows) j["arrows"].push_back({{"name", a.name}, {"from", p.vertices[a.from]}, {"to", p.vertices[a.to]}});
  j["relations"] = json::array();
  for (const auto& r : p.relations) {
    json rel = json::array();
    for (const auto& t : r) {
      json path = json::array();
      for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) path.push_back(p.arrows[*it].name);
      rel.push_back({{"coeff", t.coeff.str()}, {"path", path}});
    }
    j["relations"].push_back(rel);
  }
  j["order"] = json::array();
  for (int v : p.order) j["order"].push_back(p.vertices[v]);
  j["max_path_length"] = p.max_path_length;
  return j;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("invalid JSON in '" + path + "': " + e.what());
  }
}

template Presentation<Rational> presentation_from_json(const json&, const Field&);
template Presentation<Zp> presentation_from_json(const json&, const Field&);
template json presentation_to_json(const Presentation<Rational>&);
template json presentation_to_json(const Presentation<Zp>&);

}  // namespace qalg
