// io.hpp - JSON instance descriptions, the facet-list file format, and
// report serialization. Every command of the CLI speaks these formats.
#pragma once

#include "kneser/coloring.hpp"
#include "kneser/homology.hpp"
#include "kneser/scomplex.hpp"
#include "kneser/tucker.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace kneser {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Instance descriptions
// {"variant": "uniform_s"|"general_s"|"partition", "n":, "k":, "r":,
//  "s": int | [int...], "blocks": [[int...]...]}
// ---------------------------------------------------------------------------
inline HypergraphSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw input_error("instance: expected a JSON object");
  for (const char* key : {"variant", "n", "k", "r"})
    if (!j.contains(key)) throw input_error(std::string("instance: missing ") + key);
  std::string variant = j.at("variant").get<std::string>();
  int n = j.at("n").get<int>();
  int k = j.at("k").get<int>();
  int r = j.at("r").get<int>();

  if (variant == "uniform_s") {
    if (!j.contains("s")) throw input_error("instance: uniform_s needs s");
    int s;
    if (j.at("s").is_number()) {
      s = j.at("s").get<int>();
    } else {
      auto arr = j.at("s").get<std::vector<int>>();
      if (arr.size() != 1)
        throw input_error("instance: uniform_s takes a single s value");
      s = arr[0];
    }
    return HypergraphSpec::uniform_s(n, k, r, s);
  }
  if (variant == "general_s") {
    if (!j.contains("s") || !j.at("s").is_array())
      throw input_error("instance: general_s needs the s array");
    return HypergraphSpec::general_s(n, k, SVector(j.at("s").get<std::vector<int>>(), r));
  }
  if (variant == "partition") {
    if (!j.contains("blocks"))
      throw input_error("instance: partition needs blocks");
    auto blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
    return HypergraphSpec::partition(n, k, r, Partition(n, std::move(blocks)));
  }
  throw input_error("instance: unknown variant '" + variant + "'");
}

inline json spec_to_json(const HypergraphSpec& spec) {
  json j;
  j["n"] = spec.n();
  j["k"] = spec.k();
  j["r"] = spec.r();
  switch (spec.variant()) {
    case Variant::uniform_s:
      j["variant"] = "uniform_s";
      j["s"] = spec.swise_s();
      break;
    case Variant::general_s:
      j["variant"] = "general_s";
      j["s"] = spec.svec().s;
      break;
    case Variant::partition:
      j["variant"] = "partition";
      j["blocks"] = spec.blocks().blocks;
      break;
  }
  return j;
}

inline HypergraphSpec load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open instance file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw input_error("instance parse error: " + std::string(e.what()));
  }
  return spec_from_json(j);
}

// ---------------------------------------------------------------------------
// Facet-list files: header "n_vertices dimension_hint", one facet per line,
// then the vertex-label table as one compact JSON array.
// ---------------------------------------------------------------------------
inline void write_facet_file(std::ostream& out, const SimplicialComplex& sc) {
  out << sc.n_vertices << " " << sc.dim() << "\n";
  for (const auto& f : sc.facets) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
    out << "\n";
  }
  json labels = sc.labels;
  out << labels.dump() << "\n";
}

inline SimplicialComplex read_facet_file(std::istream& in) {
  SimplicialComplex sc;
  std::string line;
  if (!std::getline(in, line)) throw input_error("facet file: missing header");
  {
    std::istringstream hs(line);
    int dim_hint;
    if (!(hs >> sc.n_vertices >> dim_hint))
      throw input_error("facet file: bad header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '[') {
      auto labels = json::parse(line);
      sc.labels = labels.get<std::vector<std::string>>();
      break;
    }
    std::istringstream ls(line);
    std::vector<int> facet;
    int id;
    while (ls >> id) {
      if (id < 0 || id >= sc.n_vertices)
        throw input_error("facet file: vertex id out of range");
      facet.push_back(id);
    }
    if (facet.empty()) throw input_error("facet file: empty facet line");
    sc.facets.push_back(std::move(facet));
  }
  sc.facets = canonicalize_facets(std::move(sc.facets));
  if (!sc.labels.empty() && static_cast<int>(sc.labels.size()) != sc.n_vertices)
    throw input_error("facet file: label count mismatch");
  return sc;
}

// ---------------------------------------------------------------------------
// Colorings: {"t":, "classes": [[vertex-as-int-list, ...], ...]}
// ---------------------------------------------------------------------------
inline json coloring_to_json(const HypergraphSpec& spec, const Coloring& c) {
  auto verts = enumerate_vertices(spec);
  check_total(spec, c, verts);
  json classes = json::array();
  for (int color = 1; color <= c.t; ++color) {
    json cls = json::array();
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (c.color[i] == color) cls.push_back(verts[i].elements());
    classes.push_back(std::move(cls));
  }
  json j;
  j["schema"] = 1;
  j["t"] = c.t;
  j["classes"] = std::move(classes);
  return j;
}

inline Coloring coloring_from_json(const HypergraphSpec& spec, const json& j) {
  auto verts = enumerate_vertices(spec);
  Coloring c;
  c.t = j.at("t").get<int>();
  c.color.assign(verts.size(), 0);
  const auto& classes = j.at("classes");
  if (static_cast<int>(classes.size()) != c.t)
    throw input_error("coloring: class count differs from t");
  for (int color = 1; color <= c.t; ++color) {
    for (const auto& elems : classes[color - 1]) {
      KSubset v = KSubset::from_elements(spec.n(), elems.get<std::vector<int>>());
      auto it = std::lower_bound(verts.begin(), verts.end(), v);
      if (it == verts.end() || !(*it == v))
        throw input_error("coloring: " + v.str() + " is not a vertex");
      std::size_t idx = static_cast<std::size_t>(it - verts.begin());
      if (c.color[idx] != 0) throw input_error("coloring: vertex colored twice");
      c.color[idx] = color;
    }
  }
  for (int v : c.color)
    if (v == 0) throw input_error("coloring: not total on the vertex set");
  return c;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------
struct ChromaticReport {
  std::optional<int> formula_lower;
  std::optional<int> greedy_upper;
  ChromaticValue exact;
  std::optional<Edge> witness_edge;   // a monochromatic edge, if one was found
  std::optional<Coloring> witness_coloring;
  bool consistent = false;
};

inline json edge_to_json(const Edge& e) {
  json out = json::array();
  for (const auto& m : e.members) out.push_back(m.elements());
  return out;
}

inline json chromatic_report_to_json(const HypergraphSpec& spec,
                                     const ChromaticReport& rep) {
  json j;
  j["schema"] = 1;
  j["instance"] = spec_to_json(spec);
  if (rep.formula_lower)
    j["formula_lower"] = *rep.formula_lower;
  else
    j["formula_lower"] = nullptr;
  if (rep.greedy_upper)
    j["greedy_upper"] = *rep.greedy_upper;
  else
    j["greedy_upper"] = nullptr;
  if (rep.exact.infinite)
    j["exact"] = "inf";
  else
    j["exact"] = rep.exact.value;
  if (rep.witness_coloring)
    j["witness"] = coloring_to_json(spec, *rep.witness_coloring);
  else if (rep.witness_edge)
    j["witness"] = edge_to_json(*rep.witness_edge);
  else
    j["witness"] = nullptr;
  j["consistent"] = rep.consistent;
  return j;
}

inline json homology_profile_to_json(const HomologyProfile& p, int hconn) {
  json j;
  j["schema"] = 1;
  j["betti"] = p.reduced_betti;
  j["torsion"] = p.torsion;
  j["euler"] = p.euler;
  if (hconn == kConnInfinite)
    j["hconn"] = "inf";
  else
    j["hconn"] = hconn;
  j["empty"] = p.empty_complex;
  return j;
}

inline json nerve_report_to_json(const NerveIsoReport& rep) {
  json j;
  j["schema"] = 1;
  j["pass"] = rep.pass;
  j["cs_vertices"] = rep.cs_vertices;
  j["ks_facets"] = rep.ks_facets;
  j["detail"] = rep.detail;
  return j;
}

inline json tucker_report_to_json(const HypergraphSpec& spec, const TuckerReport& rep) {
  auto violation = [](bool ok, const std::optional<TuckerViolation>& v) -> json {
    if (ok) return "pass";
    json j;
    j["faces"] = v ? json(v->faces) : json(nullptr);
    j["detail"] = v ? json(v->detail) : json(nullptr);
    return j;
  };
  json j;
  j["schema"] = 1;
  j["instance"] = spec_to_json(spec);
  j["p"] = spec.r();
  j["alpha"] = rep.alpha;
  j["m"] = rep.m;
  j["faces"] = rep.faces;
  j["equivariance"] = violation(rep.equivariance_ok, rep.equivariance_violation);
  j["cond1"] = violation(rep.cond1_ok, rep.cond1_violation);
  j["cond2"] = violation(rep.cond2_ok, rep.cond2_violation);
  j["inequality"] = {{"lhs", rep.inequality_lhs},
                     {"rhs", rep.inequality_rhs},
                     {"holds", rep.inequality_holds}};
  j["pass"] = rep.pass;
  return j;
}

// Assembles the full chromatic report for an instance.
inline ChromaticReport make_chromatic_report(const HypergraphSpec& spec,
                                             const Budget& budget = {}) {
  ChromaticReport rep;
  try {
    rep.formula_lower = formula_lower_bound(spec);
  } catch (const input_error&) {
    rep.formula_lower = std::nullopt;
  }
  if (spec.variant() == Variant::partition) {
    rep.greedy_upper = standard_kneser_coloring(spec).t;
  } else {
    const SVector& s = spec.svec();
    bool all_below = true;
    for (int v : s.s) all_below = all_below && v < s.r;
    if (all_below && s.nbar() >= static_cast<long long>(s.r) * spec.k())
      rep.greedy_upper = erdos_greedy_coloring(s, spec.k()).coloring.t;
  }
  auto exact = chromatic_number_exact(spec, budget);
  rep.exact = exact.chi;
  if (!exact.chi.infinite) rep.witness_coloring = exact.witness;

  rep.consistent = true;
  if (!rep.exact.infinite) {
    if (rep.formula_lower && *rep.formula_lower > rep.exact.value) rep.consistent = false;
    if (rep.greedy_upper && rep.exact.value > *rep.greedy_upper) rep.consistent = false;
  }
  return rep;
}

}  // namespace kneser
