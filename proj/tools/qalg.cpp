#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qalg/io.hpp"
#include "qalg/twostep.hpp"

using namespace qalg;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kUndecided = 3, kViolation = 4 };

struct Options {
  std::string command;
  std::string file;
  std::string field;
  bool json = false;
  bool certificates = false;
  long cap = 10000;
  std::uint64_t seed = 0;
};

std::string resolve_input(const std::string& file) {
  namespace fs = std::filesystem;
  if (fs::exists(file)) return file;
#ifdef QALG_FIXTURE_DIR
  for (const std::string& name : {file, file + ".json"}) {
    const fs::path p = fs::path(QALG_FIXTURE_DIR) / name;
    if (fs::exists(p)) return p.string();
  }
#endif
  throw InputError("cannot open '" + file + "'");
}

Field parse_field(const std::string& s) {
  if (s == "q" || s == "Q") return Field::rationals();
  if (s.rfind("gf:", 0) == 0 || s.rfind("GF:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      size_t used = 0;
      p = std::stoull(s.substr(3), &used);
      if (used != s.size() - 3) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw InputError("bad field '" + s + "'");
    }
    if (p > 0xffffffffULL || !is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not a prime");
    return Field::prime(static_cast<std::uint32_t>(p));
  }
  throw InputError("bad field '" + s + "', expected gf:p or q");
}

template <class K>
class Reporter {
 public:
  Reporter(const Options& o, const json& input, AlgPtr<K> a) : opt_(o), input_(input), a_(std::move(a)) {}

  ojson run() {
    ojson out;
    out["command"] = opt_.command;
    out["input"] = ojson::parse(input_.dump());
    out["algebra"] = algebra_json(a_, "A");
    const bool all = opt_.command == "report";
    family_ = strat_family(a_);
    cls_ = classify(*family_, opt_.cap);
    out["classification"] = classification_json(*cls_);
    if (opt_.command == "analyze") out["modules"] = family_table();
    if (opt_.command == "analyze") return out;

    if (cls_->sss != Verdict::Yes) {
      if (!all) throw InputError("the algebra is not standardly stratified for the given order");
      out["ringel_dual"] = nullptr;
      out["two_step"] = nullptr;
      out["findim"] = nullptr;
      return out;
    }
    data_ = two_step_core(a_, opt_.cap);
    auto& d = *data_;
    if (d.ringel_ps == Verdict::Yes) complete_two_step(d, opt_.cap);
    if (opt_.command == "ringel" || all) out["ringel_dual"] = ringel_json();
    if (opt_.command == "twostep" || all) out["two_step"] = two_step_json();
    if (opt_.command == "findim" || all) {
      if (!d.has_H()) {
        if (!all) throw Undecided("the Ringel dual is not properly stratified, so H and the fin.dim formula are unavailable");
        out["findim"] = nullptr;
      } else {
        out["findim"] = findim_json();
      }
    }
    if (all) out["tables"] = full_table();
    return out;
  }

  bool undecided() const { return undecided_; }

 private:
  ojson verdict(Verdict v) {
    if (v == Verdict::Undecided) {
      undecided_ = true;
      return "undecided";
    }
    return v == Verdict::Yes;
  }

  ojson layers(const Module<K>& m) { return layer_labels(m, radical_layers(m)); }

  ojson module_json(const Module<K>& m) {
    ojson j;
    j["dim"] = m.dim();
    j["radical_layers"] = layers(m);
    return j;
  }

  ojson algebra_json(const AlgPtr<K>& a, const std::string& name) {
    ojson j;
    j["name"] = name;
    j["dim"] = a->dim();
    j["field"] = a->field().str();
    ojson arrows = ojson::array();
    for (const auto& ar : a->pres.arrows) arrows.push_back(ar.name + ": " + a->label(ar.from) + " -> " + a->label(ar.to));
    j["arrows"] = arrows;
    ojson rel = ojson::array();
    for (const auto& r : a->pres.relations) rel.push_back(relation_str(a->pres, r) + " = 0");
    j["relations"] = rel;
    ojson order = ojson::array();
    for (int v : a->order()) order.push_back(a->label(v));
    j["order"] = order;
    j["cartan"] = cartan_matrix(*a);
    return j;
  }

  ojson presentation_json(const AlgPtr<K>& a, const std::string& name) {
    ojson j = algebra_json(a, name);
    j["presentation"] = ojson::parse(presentation_to_json(a->pres).dump());
    return j;
  }

  ojson classification_json(const Classification<K>& c) {
    ojson j;
    j["sss"] = verdict(c.sss);
    j["properly_stratified"] = verdict(c.properly_stratified);
    j["quasi_hereditary"] = verdict(c.quasi_hereditary);
    if (opt_.certificates) {
      ojson k = ojson::array(), s = ojson::array();
      for (const auto& r : c.kernel_filtrations) k.push_back(certificate_json(r));
      for (const auto& r : c.standard_filtrations) s.push_back(certificate_json(r));
      j["kernel_filtrations"] = k;
      j["standard_filtrations"] = s;
    }
    return j;
  }

  ojson certificate_json(const FiltrationResult<K>& r) {
    ojson j;
    j["member"] = verdict(r.member);
    if (r.certificate) {
      ojson l = ojson::array(), chain = ojson::array();
      for (const auto& [v, mult] : r.certificate->layers) l.push_back(a_->label(v) + "^" + std::to_string(mult));
      for (const auto& s : r.certificate->chain) chain.push_back(s.dim());
      j["layers"] = l;
      j["chain_dims"] = chain;
    } else {
      j["layers"] = nullptr;
    }
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    return j;
  }

  template <class F>
  ojson per_vertex(F&& row) {
    ojson t = ojson::array();
    for (int v : a_->order()) {
      ojson j;
      j["vertex"] = a_->label(v);
      row(v, j);
      t.push_back(j);
    }
    return t;
  }

  void family_row(int v, ojson& j) {
    const auto& f = *family_;
    j["P"] = module_json(f.P[v]);
    j["I"] = module_json(f.I[v]);
    j["Delta"] = module_json(f.Delta[v]);
    j["ProperDelta"] = module_json(f.ProperDelta[v]);
    j["Nabla"] = module_json(f.Nabla[v]);
    j["ProperNabla"] = module_json(f.ProperNabla[v]);
    j["Delta_is_projective"] = is_isomorphic(f.Delta[v], f.P[v]);
    j["Nabla_is_injective"] = is_isomorphic(f.Nabla[v], f.I[v]);
  }

  ojson family_table() {
    return per_vertex([&](int v, ojson& j) { family_row(v, j); });
  }

  ojson ringel_json() {
    const auto& d = *data_;
    ojson j = presentation_json(d.ringel.algebra(), "R");
    j["classification"] = classification_json(classify(d.ringel_family, opt_.cap));
    j["tilting"] = per_vertex([&](int v, ojson& row) {
      row["T"] = module_json(d.tilting.T[v]);
      if (opt_.certificates) {
        row["Delta_filtration"] = certificate_json(d.tilting.delta[v]);
        row["ProperNabla_filtration"] = certificate_json(d.tilting.proper_costandard[v]);
      }
    });
    return j;
  }

  ojson two_step_json() {
    const auto& d = *data_;
    ojson j;
    j["condition_III"] = verdict(d.condition_III);
    j["ringel_dual_properly_stratified"] = verdict(d.ringel_ps);
    j["decided_by_transport"] = d.decided_by_transport;
    j["modules"] = per_vertex([&](int v, ojson& row) {
      row["T"] = module_json(d.tilting.T[v]);
      row["S"] = module_json(d.sn.S[v]);
      row["N"] = module_json(d.sn.N[v]);
      row["H"] = d.has_H() ? module_json(d.H[v]) : ojson(nullptr);
      if (opt_.certificates) {
        row["N_filtration"] = certificate_json(d.sn.N_filtrations[v]);
        row["S_filtration"] = certificate_json(d.sn.S_filtrations[v]);
        row["T_in_FN"] = certificate_json(d.T_in_FN[v]);
      }
    });
    if (!d.B) {
      j["two_step_dual"] = nullptr;
      return j;
    }
    const auto& b = d.B->algebra();
    ojson bj = presentation_json(b, "B(A)");
    bj["classification"] = classification_json(classify(b, opt_.cap));
    auto bop = opposite(b);
    bj["opposite_classification"] = classification_json(classify(bop, opt_.cap));
    j["two_step_dual"] = bj;
    ojson cmp;
    if (bop->dim() != a_->dim()) {
      cmp["isomorphic"] = false;
      cmp["reason"] = "dimension mismatch (" + std::to_string(a_->dim()) + " vs " + std::to_string(bop->dim()) + ")";
    } else if (cartan_matrix(*bop) != cartan_matrix(*a_)) {
      cmp["isomorphic"] = false;
      cmp["reason"] = "Cartan matrix mismatch";
    } else if (find_algebra_isomorphism(*a_, *bop).has_value()) {
      cmp["isomorphic"] = true;
      cmp["reason"] = "isomorphism found";
    } else {
      cmp["isomorphic"] = "undecided";
      cmp["reason"] = "no isomorphism within the search space";
    }
    j["A_vs_B_opposite"] = cmp;
    return j;
  }

  ojson findim_json() {
    auto r = findim(*data_);
    ojson j;
    j["pd_H"] = r.pd_H.str();
    j["findim"] = r.value;
    j["duality_A"] = to_string(r.witness_A.kind);
    if (r.witness_A.kind == DualityKind::Witness) j["duality_A_witness"] = r.witness_A.description;
    j["duality_R"] = to_string(r.kind_R);
    j["pd_TR"] = r.pd_TR ? ojson(*r.pd_TR) : ojson(nullptr);
    j["pd_T"] = r.pd_T ? ojson(*r.pd_T) : ojson(nullptr);
    ojson ids = ojson::object();
    for (const auto& [name, ok] : r.identities) ids[name] = ok;
    j["identities"] = ids;
    j["unchecked"] = r.unchecked;
    return j;
  }

  ojson full_table() {
    const auto& d = *data_;
    const auto& f = *family_;
    std::optional<std::vector<Module<K>>> cot;
    if (cls_->properly_stratified == Verdict::Yes) cot = cotilting_modules(f);
    return per_vertex([&](int v, ojson& j) {
      family_row(v, j);
      j["T"] = module_json(d.tilting.T[v]);
      j["C"] = cot ? module_json((*cot)[v]) : ojson(nullptr);
      j["S"] = module_json(d.sn.S[v]);
      j["N"] = module_json(d.sn.N[v]);
      j["H"] = d.has_H() ? module_json(d.H[v]) : ojson(nullptr);
    });
  }

  const Options& opt_;
  json input_;
  AlgPtr<K> a_;
  std::optional<StratFamily<K>> family_;
  std::optional<Classification<K>> cls_;
  std::optional<TwoStepData<K>> data_;
  bool undecided_ = false;
};

std::string scalar_text(const ojson& v) {
  if (v.is_null()) return "-";
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_layers(const ojson& v) {
  if (!v.is_array()) return false;
  for (const auto& row : v)
    if (!row.is_array()) return false;
  return true;
}

std::string inline_text(const ojson& v) {
  if (is_layers(v) && !v.empty()) {
    std::string s;
    for (const auto& row : v) {
      s += "[";
      for (size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + scalar_text(row[i]);
      s += "]";
    }
    return s;
  }
  if (v.is_array()) {
    bool long_strings = false;
    for (const auto& x : v) long_strings = long_strings || (x.is_string() && x.get<std::string>().size() > 40);
    if (long_strings) {
      std::string s;
      for (const auto& x : v) s += "\n    " + x.get<std::string>();
      return s;
    }
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    return s.empty() ? "-" : s;
  }
  return scalar_text(v);
}

bool is_flat(const ojson& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& x : v)
    if (x.is_object()) return false;
  return true;
}

void print_text(std::ostream& os, const ojson& v, int indent) {
  const std::string pad(indent, ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    if (it.key() == "input" || it.key() == "presentation") continue;
    const auto& x = it.value();
    if (x.is_object() && x.contains("dim") && x.contains("radical_layers") && x.size() == 2) {
      os << pad << it.key() << ": dim " << x["dim"].get<int>() << "  " << inline_text(x["radical_layers"]) << "\n";
    } else if (is_flat(x)) {
      os << pad << it.key() << ": " << inline_text(x) << "\n";
    } else if (x.is_object()) {
      os << pad << it.key() << ":\n";
      print_text(os, x, indent + 2);
    } else {
      os << pad << it.key() << ":\n";
      for (const auto& item : x) {
        if (item.contains("vertex")) {
          os << pad << "  vertex " << item["vertex"].get<std::string>() << ":\n";
          ojson rest = item;
          rest.erase("vertex");
          print_text(os, rest, indent + 4);
        } else if (item.is_object()) {
          os << pad << "  -\n";
          print_text(os, item, indent + 4);
        } else {
          os << pad << "  " << inline_text(item) << "\n";
        }
      }
    }
  }
}

template <class K>
int execute(const Options& opt, const json& input, const Field& field) {
  auto pres = presentation_from_json<K>(input, field);
  auto a = build_algebra(pres);
  Reporter<K> r(opt, input, a);
  ojson out = r.run();
  if (opt.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    print_text(std::cout, out, 0);
  }
  return r.undecided() ? kUndecided : kOk;
}

int dispatch(const Options& opt) {
  const json input = read_json_file(resolve_input(opt.file));
  if (!input.is_object() || !input.contains("field")) throw InputError("presentation needs a field");
  const Field field = opt.field.empty() ? field_from_json(input.at("field")) : parse_field(opt.field);
  set_search_seed(opt.seed);
  if (field.kind == Field::Kind::Prime) {
    ModulusScope scope(field.p);
    return execute<Zp>(opt, input, field);
  }
  return execute<Rational>(opt, input, field);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratified algebras, tilting modules, Ringel and two-step duals"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.json, "Emit the report as JSON");
  app.add_flag("--certificates", opt.certificates, "Include filtration certificates");
  app.add_option("--field", opt.field, "Override the field: gf:p or q");
  app.add_option("--cap", opt.cap, "Search budget for filtrations")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for randomized isomorphism searches");

  const std::pair<const char*, const char*> commands[] = {
      {"analyze", "Classification and standard/costandard modules"},
      {"ringel", "Ringel dual presentation and classification"},
      {"twostep", "S, N, H, B(A) and the Ringel dual criterion"},
      {"findim", "Finitistic dimension and its identities"},
      {"report", "Everything"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", opt.file, "Presentation JSON (path or fixture name)")->required();
    sub->callback([&opt, n = std::string(name)] { opt.command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    return dispatch(opt);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const Undecided& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const TheoremViolation& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
