#pragma once

// JSON documents for every object kind the command line reads or writes.
//
// A document is an object with a "kind" tag. Rationals are "p/q" strings,
// labels are explicit integers. Loading validates the whole document and
// throws SchemaError on the first problem. Writing is canonical: keys sorted,
// fixed indentation, so equal objects give identical bytes.

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "inscribe/errors.hpp"
#include "inscribe/pipeline.hpp"

namespace inscribe::io {

using Json = nlohmann::json;

/// A lifting plus the body it was K-lifted for, if any.
struct LiftingDocument {
  Lifting lifting;
  std::optional<KBody> body;
  friend bool operator==(const LiftingDocument&, const LiftingDocument&) = default;
};

using Document = std::variant<PointConfiguration, PipelineSpec, ConstructionCertificate, Triangulation, FacetSet,
                              InscribedRealization, LiftingDocument>;

inline const char* kind_name(const Document& doc) {
  static constexpr const char* names[] = {"configuration", "pipeline_spec", "certificate", "triangulation",
                                          "facet_set",     "realization",   "lifting"};
  return names[doc.index()];
}

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

inline const Json& field(const Json& j, const std::string& where, const char* key) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

inline void only_fields(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(where, "unknown field '" + it.key() + "'");
  }
}

inline long long integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<long long>();
}

inline int small_int(const Json& j, const std::string& where, long long lo, long long hi) {
  const long long v = integer(j, where);
  if (v < lo || v > hi) fail(where, "integer out of range");
  return static_cast<int>(v);
}

inline Rational rational(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "rationals are written as \"p/q\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const SchemaError& e) {
    fail(where, e.what());
  }
}

inline Json rational(const Rational& r) { return to_string(r); }

inline Point point(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of rationals");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(rational(j[i], where + "[" + std::to_string(i) + "]"));
  return p;
}

inline Json point(const Point& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(rational(x));
  return a;
}

inline LabelSet labels(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of labels");
  LabelSet out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(small_int(j[i], where, 1, 1 << 30));
  return out;
}

inline std::vector<LabelSet> label_sets(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of label lists");
  std::vector<LabelSet> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(labels(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::map<Label, Rational> label_rationals(const Json& j, const std::string& where, const char* value_key) {
  if (!j.is_array()) fail(where, "expected an array");
  std::map<Label, Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    only_fields(j[i], w, {"label", value_key});
    const Label l = small_int(field(j[i], w, "label"), w, 1, 1 << 30);
    if (!out.emplace(l, rational(field(j[i], w, value_key), w)).second) fail(w, "duplicate label");
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Point configurations.

inline Json to_json(const PointConfiguration& c) {
  Json pts = Json::array();
  for (const auto& p : c.points()) pts.push_back({{"label", p.label}, {"coords", detail::point(p.coords)}});
  return {{"dim", c.dim()}, {"points", pts}};
}

inline PointConfiguration configuration_from_json(const Json& j, const std::string& where = "configuration") {
  detail::only_fields(j, where, {"kind", "dim", "points"});
  const int dim = detail::small_int(detail::field(j, where, "dim"), where + ".dim", 1, 64);
  const Json& pts = detail::field(j, where, "points");
  if (!pts.is_array()) detail::fail(where + ".points", "expected an array");
  std::vector<LabeledPoint> lp;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string w = where + ".points[" + std::to_string(i) + "]";
    detail::only_fields(pts[i], w, {"label", "coords"});
    LabeledPoint p;
    p.label = detail::small_int(detail::field(pts[i], w, "label"), w + ".label", 1, 1 << 30);
    p.coords = detail::point(detail::field(pts[i], w, "coords"), w + ".coords");
    lp.push_back(std::move(p));
  }
  try {
    return PointConfiguration(dim, std::move(lp));
  } catch (const DimensionMismatch& e) {
    detail::fail(where, e.what());
  }
}

// ---------------------------------------------------------------------------
// Facet sets and triangulations.

inline Json to_json(const FacetSet& f) { return {{"dim", f.dim}, {"n", f.n}, {"facets", f.facets}}; }

inline FacetSet facet_set_from_json(const Json& j, const std::string& where = "facet_set") {
  detail::only_fields(j, where, {"kind", "dim", "n", "facets"});
  const int dim = detail::small_int(detail::field(j, where, "dim"), where + ".dim", 1, 64);
  const int n = detail::small_int(detail::field(j, where, "n"), where + ".n", 0, 1 << 30);
  auto facets = detail::label_sets(detail::field(j, where, "facets"), where + ".facets");
  for (const auto& f : facets) {
    if (f.size() != static_cast<std::size_t>(dim)) detail::fail(where, "every facet needs exactly dim labels");
    if (std::set<Label>(f.begin(), f.end()).size() != f.size()) detail::fail(where, "repeated label in a facet");
    for (Label l : f) {
      if (l > n) detail::fail(where, "facet label exceeds n");
    }
  }
  return FacetSet(dim, n, std::move(facets));
}

inline Json to_json(const Triangulation& t) {
  return {{"dim", t.dim}, {"n", t.n}, {"cells", t.cells}, {"unused", t.unused}};
}

inline Triangulation triangulation_from_json(const Json& j, const std::string& where = "triangulation") {
  detail::only_fields(j, where, {"kind", "dim", "n", "cells", "unused"});
  const int dim = detail::small_int(detail::field(j, where, "dim"), where + ".dim", 1, 64);
  const int n = detail::small_int(detail::field(j, where, "n"), where + ".n", 0, 1 << 30);
  auto cells = detail::label_sets(detail::field(j, where, "cells"), where + ".cells");
  LabelSet unused;
  if (j.contains("unused")) unused = detail::labels(j["unused"], where + ".unused");
  for (const auto& c : cells) {
    if (c.size() != static_cast<std::size_t>(dim) + 1) detail::fail(where, "every cell needs exactly dim+1 labels");
    if (std::set<Label>(c.begin(), c.end()).size() != c.size()) detail::fail(where, "repeated label in a cell");
  }
  return Triangulation(dim, n, std::move(cells), std::move(unused));
}

// ---------------------------------------------------------------------------
// Bodies, realizations, liftings.

inline Json to_json(const KBody& b) {
  switch (b.kind()) {
    case KBody::Kind::UnitBall:
      return {{"type", "unit_ball"}, {"dim", b.dim()}};
    case KBody::Kind::Ellipsoid: {
      Json form = Json::array();
      for (const auto& x : b.form()) form.push_back(detail::rational(x));
      return {{"type", "ellipsoid"}, {"dim", b.dim()}, {"form", form}, {"tolerance", detail::rational(b.tolerance())}};
    }
    case KBody::Kind::PNormBall:
      return {{"type", "p_norm_ball"}, {"dim", b.dim()}, {"p", b.p()}, {"tolerance", detail::rational(b.tolerance())}};
  }
  return {};
}

inline KBody body_from_json(const Json& j, const std::string& where = "body") {
  const Json& type = detail::field(j, where, "type");
  if (!type.is_string()) detail::fail(where + ".type", "expected a string");
  const std::string t = type.get<std::string>();
  const int dim = detail::small_int(detail::field(j, where, "dim"), where + ".dim", 2, 64);
  if (t == "unit_ball") {
    detail::only_fields(j, where, {"type", "dim"});
    return KBody::unit_ball(dim);
  }
  if (t == "ellipsoid") {
    detail::only_fields(j, where, {"type", "dim", "form", "tolerance"});
    const Point form = detail::point(detail::field(j, where, "form"), where + ".form");
    const Rational tol = detail::rational(detail::field(j, where, "tolerance"), where + ".tolerance");
    try {
      return KBody::ellipsoid(dim, form, tol);
    } catch (const DimensionMismatch& e) {
      detail::fail(where, e.what());
    }
  }
  if (t == "p_norm_ball") {
    detail::only_fields(j, where, {"type", "dim", "p", "tolerance"});
    const int p = detail::small_int(detail::field(j, where, "p"), where + ".p", 1, 1 << 20);
    return KBody::p_norm_ball(dim, p, detail::rational(detail::field(j, where, "tolerance"), where + ".tolerance"));
  }
  detail::fail(where + ".type", "unknown body type '" + t + "'");
}

inline Json to_json(const InscribedRealization& r) {
  return {{"body", to_json(r.body)},
          {"vertices", to_json(r.vertices)},
          {"facets", to_json(r.facets)},
          {"pole", r.pole_label}};
}

inline InscribedRealization realization_from_json(const Json& j, const std::string& where = "realization") {
  detail::only_fields(j, where, {"kind", "body", "vertices", "facets", "pole"});
  InscribedRealization r;
  r.body = body_from_json(detail::field(j, where, "body"), where + ".body");
  r.vertices = configuration_from_json(detail::field(j, where, "vertices"), where + ".vertices");
  r.facets = facet_set_from_json(detail::field(j, where, "facets"), where + ".facets");
  r.pole_label = j.contains("pole") ? detail::small_int(j["pole"], where + ".pole", 0, 1 << 30) : 0;
  if (r.vertices.dim() != r.body.dim()) detail::fail(where, "vertex and body dimensions differ");
  return r;
}

inline Json to_json(const Lifting& l, const std::optional<KBody>& body = std::nullopt) {
  Json signs = Json::array();
  for (const auto& [lab, s] : l.signs) signs.push_back({{"label", lab}, {"sign", s}});
  Json heights = Json::array();
  for (const auto& [lab, h] : l.heights) heights.push_back({{"label", lab}, {"height", detail::rational(h)}});
  Json j = {{"base", to_json(l.base)}, {"signs", signs}, {"heights", heights}, {"lifted", to_json(l.lifted)}};
  if (body) j["body"] = to_json(*body);
  return j;
}

inline Json to_json(const LiftingDocument& d) { return to_json(d.lifting, d.body); }

inline LiftingDocument lifting_from_json(const Json& j, const std::string& where = "lifting") {
  detail::only_fields(j, where, {"kind", "base", "signs", "heights", "lifted", "body"});
  LiftingDocument d;
  d.lifting.base = configuration_from_json(detail::field(j, where, "base"), where + ".base");
  const Json& signs = detail::field(j, where, "signs");
  if (!signs.is_array()) detail::fail(where + ".signs", "expected an array");
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const std::string w = where + ".signs[" + std::to_string(i) + "]";
    detail::only_fields(signs[i], w, {"label", "sign"});
    const Label l = detail::small_int(detail::field(signs[i], w, "label"), w + ".label", 1, 1 << 30);
    const int s = detail::small_int(detail::field(signs[i], w, "sign"), w + ".sign", -1, 1);
    if (s == 0) detail::fail(w, "sign must be +1 or -1");
    if (!d.lifting.signs.emplace(l, s).second) detail::fail(w, "duplicate label");
  }
  d.lifting.heights = detail::label_rationals(detail::field(j, where, "heights"), where + ".heights", "height");
  d.lifting.lifted = configuration_from_json(detail::field(j, where, "lifted"), where + ".lifted");
  if (j.contains("body")) d.body = body_from_json(j["body"], where + ".body");
  return d;
}

// ---------------------------------------------------------------------------
// Pipeline specs and certificates.

inline Json to_json(const PipelineSpec& s) {
  Json its = Json::array();
  for (const auto& it : s.iterations) {
    Json e = {{"sigma", it.sigma}, {"signs", it.signs}};
    if (it.added_point) e["added_point"] = detail::point(*it.added_point);
    if (it.added_lifted_point) e["added_lifted_point"] = detail::point(*it.added_lifted_point);
    its.push_back(std::move(e));
  }
  Json j = {{"d", s.d}, {"n", s.n}, {"seed", s.seed}, {"iterations", its}};
  if (s.base) j["base"] = to_json(*s.base);
  return j;
}

inline PipelineSpec spec_from_json(const Json& j, const std::string& where = "pipeline_spec") {
  detail::only_fields(j, where, {"kind", "d", "n", "seed", "base", "iterations"});
  PipelineSpec s;
  s.d = detail::small_int(detail::field(j, where, "d"), where + ".d", 2, 64);
  s.n = detail::small_int(detail::field(j, where, "n"), where + ".n", 3, 4096);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) detail::fail(where + ".seed", "expected a nonnegative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("base")) s.base = configuration_from_json(j["base"], where + ".base");
  if (j.contains("iterations")) {
    const Json& its = j["iterations"];
    if (!its.is_array()) detail::fail(where + ".iterations", "expected an array");
    for (std::size_t i = 0; i < its.size(); ++i) {
      const std::string w = where + ".iterations[" + std::to_string(i) + "]";
      detail::only_fields(its[i], w, {"sigma", "signs", "added_point", "added_lifted_point"});
      IterationSpec it;
      if (its[i].contains("sigma")) it.sigma = detail::labels(its[i]["sigma"], w + ".sigma");
      if (its[i].contains("signs")) {
        const Json& sg = its[i]["signs"];
        if (!sg.is_array()) detail::fail(w + ".signs", "expected an array");
        for (const auto& x : sg) {
          const int v = detail::small_int(x, w + ".signs", -1, 1);
          if (v == 0) detail::fail(w + ".signs", "sign must be +1 or -1");
          it.signs.push_back(v);
        }
      }
      if (its[i].contains("added_point")) it.added_point = detail::point(its[i]["added_point"], w + ".added_point");
      if (its[i].contains("added_lifted_point")) {
        it.added_lifted_point = detail::point(its[i]["added_lifted_point"], w + ".added_lifted_point");
      }
      s.iterations.push_back(std::move(it));
    }
  }
  return s;
}

inline Json to_json(const ConstructionCertificate& c) {
  Json stages = Json::array();
  for (const auto& st : c.stages) {
    stages.push_back({{"sigma", st.sigma}, {"first", to_json(st.first)}, {"second", to_json(st.second)}});
  }
  return {{"spec", to_json(c.spec)},
          {"base", to_json(c.base)},
          {"stages", stages},
          {"final_config", to_json(c.final_config)},
          {"facets", to_json(c.facets)},
          {"neighborliness_checked", c.neighborliness_checked}};
}

inline ConstructionCertificate certificate_from_json(const Json& j, const std::string& where = "certificate") {
  detail::only_fields(j, where, {"kind", "spec", "base", "stages", "final_config", "facets", "neighborliness_checked"});
  ConstructionCertificate c;
  c.spec = spec_from_json(detail::field(j, where, "spec"), where + ".spec");
  c.base = configuration_from_json(detail::field(j, where, "base"), where + ".base");
  const Json& stages = detail::field(j, where, "stages");
  if (!stages.is_array()) detail::fail(where + ".stages", "expected an array");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string w = where + ".stages[" + std::to_string(i) + "]";
    detail::only_fields(stages[i], w, {"sigma", "first", "second"});
    Stage st;
    st.sigma = detail::labels(detail::field(stages[i], w, "sigma"), w + ".sigma");
    st.first = lifting_from_json(detail::field(stages[i], w, "first"), w + ".first").lifting;
    st.second = lifting_from_json(detail::field(stages[i], w, "second"), w + ".second").lifting;
    c.stages.push_back(std::move(st));
  }
  c.final_config = configuration_from_json(detail::field(j, where, "final_config"), where + ".final_config");
  c.facets = facet_set_from_json(detail::field(j, where, "facets"), where + ".facets");
  c.neighborliness_checked =
      detail::small_int(detail::field(j, where, "neighborliness_checked"), where + ".neighborliness_checked", 0, 64);
  return c;
}

// ---------------------------------------------------------------------------
// Tagged documents.

inline Json to_document(const Document& doc) {
  Json j = std::visit([](const auto& x) { return to_json(x); }, doc);
  j["kind"] = kind_name(doc);
  return j;
}

inline Document from_document(const Json& j) {
  const Json& kind = detail::field(j, "document", "kind");
  if (!kind.is_string()) detail::fail("document.kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "configuration") return configuration_from_json(j);
  if (k == "pipeline_spec") return spec_from_json(j);
  if (k == "certificate") return certificate_from_json(j);
  if (k == "triangulation") return triangulation_from_json(j);
  if (k == "facet_set") return facet_set_from_json(j);
  if (k == "realization") return realization_from_json(j);
  if (k == "lifting") return lifting_from_json(j);
  detail::fail("document.kind", "unknown kind '" + k + "'");
}

/// Canonical text: two-space indentation, sorted keys, trailing newline.
inline std::string dump(const Document& doc) { return to_document(doc).dump(2) + "\n"; }

inline Document parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  return from_document(j);
}

inline Document load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

inline void save(const std::string& path, const Document& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << dump(doc);
  if (!out) throw SchemaError("write to '" + path + "' failed");
}

template <class T>
const T& expect(const Document& doc, const char* what) {
  if (const T* p = std::get_if<T>(&doc)) return *p;
  throw SchemaError(std::string("expected a ") + what + " document, got " + kind_name(doc));
}

}  // namespace inscribe::io
