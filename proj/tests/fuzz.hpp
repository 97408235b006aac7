#pragma once
#include <random>
#include <string>
#include <vector>

#include "qalg/presentation.hpp"

namespace qalg::test {

// Random bound quiver algebras tensored with a small local algebra, all over the field of
// the current Zp modulus.
struct FuzzCase {
  AlgPtr<Zp> algebra;
  std::string description;
};

inline AlgPtr<Zp> local_algebra(int kind) {
  Presentation<Zp> p;
  p.field = Field::prime(Zp::modulus());
  p.vertices = {"o"};
  p.order = {0};
  if (kind == 0) return build_algebra(p);
  if (kind == 1) {
    p.arrows = {{"x", 0, 0}};
    p.relations = {{{Zp(1), {0, 0}}}};
    return build_algebra(p);
  }
  p.arrows = {{"x", 0, 0}, {"y", 0, 0}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p.relations.push_back({{Zp(1), {i, j}}});
  return build_algebra(p);
}

inline Presentation<Zp> random_presentation(std::mt19937_64& rng) {
  Presentation<Zp> p;
  p.field = Field::prime(Zp::modulus());
  const int n = rng() % 4 == 0 ? 3 : 2;
  for (int v = 0; v < n; ++v) p.vertices.push_back(std::to_string(v + 1));
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int chance = s == t ? 4 : 2;
      int copies = rng() % chance == 0 ? 1 : 0;
      if (s != t && copies && rng() % 4 == 0) copies = 2;
      for (int c = 0; c < copies; ++c) p.arrows.push_back({"a" + std::to_string(p.arrows.size()), s, t});
    }
  if (p.arrows.empty()) p.arrows.push_back({"a0", 0, 1});
  const int na = static_cast<int>(p.arrows.size());
  const int depth = 2 + static_cast<int>(rng() % 2);
  std::vector<std::vector<int>> words;
  for (int a = 0; a < na; ++a) words.push_back({a});
  for (int len = 1; len < depth; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      for (int a = 0; a < na; ++a)
        if (p.arrows[a].from == p.arrows[w.back()].to) {
          auto x = w;
          x.push_back(a);
          next.push_back(std::move(x));
        }
    if (len == 1) {
      for (const auto& w : next)
        if (rng() % 3 == 0) p.relations.push_back({{Zp(1), w}});
    }
    words = std::move(next);
  }
  for (const auto& w : words) p.relations.push_back({{Zp(1), w}});
  p.order.resize(n);
  for (int v = 0; v < n; ++v) p.order[v] = v;
  std::shuffle(p.order.begin(), p.order.end(), rng);
  return p;
}

}  // namespace qalg::test
