#pragma once
#include <string>

#include "qalg/io.hpp"

namespace qalg::test {

inline std::string fixture_path(const std::string& name) { return std::string(QALG_FIXTURE_DIR) + "/" + name; }

template <class K = Rational>
AlgPtr<K> load_fixture(const std::string& name) {
  json j = read_json_file(fixture_path(name));
  return build_algebra(presentation_from_json<K>(j, field_from_json(j.at("field"))));
}

template <class K = Rational>
AlgPtr<K> algebra_from_json(const std::string& text) {
  json j = json::parse(text);
  return build_algebra(presentation_from_json<K>(j, field_from_json(j.at("field"))));
}

template <class K = Rational>
Mat<K> mat(std::initializer_list<std::initializer_list<long>> rows) {
  Mat<K> m(static_cast<Eigen::Index>(rows.size()), rows.size() ? static_cast<Eigen::Index>(rows.begin()->size()) : 0);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = K(v);
    ++i;
  }
  return m;
}

}  // namespace qalg::test
