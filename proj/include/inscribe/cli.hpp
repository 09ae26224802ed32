#pragma once

// The `inscribe` command line: construct, verify, count, lift, triangulate
// and export. Everything goes through run(), which returns the exit code
// instead of exiting so tests can drive it in-process.
//
// Exit codes: 0 success, 1 a requested verification failed, 2 bad input
// (usage, schema, degenerate or undecidable input), 3 internal invariant breach.

#include <functional>
#include <iostream>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "inscribe/io.hpp"
#include "inscribe/pipeline.hpp"

namespace inscribe::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kInputError = 2, kInternalError = 3 };

namespace detail {

using io::Json;

inline std::string realization_path(const std::string& out) {
  const std::string ext = ".json";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
    return out.substr(0, out.size() - ext.size()) + ".inscribed.json";
  }
  return out + ".inscribed.json";
}

inline void emit(const std::string& path, const io::Document& doc, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << io::dump(doc);
  } else {
    io::save(path, doc);
  }
}

// ---------------------------------------------------------------------------
// construct

/// Largest bit length of any numerator or denominator.
inline std::size_t coordinate_bits(const PointConfiguration& c) {
  std::size_t bits = 0;
  for (const auto& p : c.points()) {
    for (const auto& x : p.coords) {
      bits = std::max({bits, mpz_sizeinbase(x.get_num_mpz_t(), 2), mpz_sizeinbase(x.get_den_mpz_t(), 2)});
    }
  }
  return bits;
}

struct ConstructArgs {
  std::string spec_file;
  std::string out_file;
  std::string inscribed_out;
  std::string k_lift_out;
  bool inscribe = false;
  std::optional<std::uint64_t> seed;
};

inline int construct(const ConstructArgs& a, std::ostream& out) {
  PipelineSpec spec = io::expect<PipelineSpec>(io::load(a.spec_file), "pipeline_spec");
  if (a.seed) spec.seed = *a.seed;
  const ConstructionCertificate cert = construct_neighborly(spec);
  const bool to_stdout = a.out_file.empty() || a.out_file == "-";
  emit(a.out_file, cert, out);
  if (!to_stdout) {
    out << "certificate: d=" << cert.spec.d << " n=" << cert.spec.n << " facets=" << cert.facets.facets.size()
        << " neighborly=" << cert.neighborliness_checked << " coordinate-bits=" << coordinate_bits(cert.final_config)
        << " -> " << a.out_file << "\n";
  }
  if (a.inscribe) {
    const InscribedRealization r = inscribed_realization(cert);
    if (!verify_inscribed(r, cert.facets)) throw InvariantViolation("construct: inscribed realization does not verify");
    std::string path = a.inscribed_out;
    if (path.empty()) {
      if (to_stdout) throw SchemaError("construct: --inscribe with output on stdout needs --inscribed-out");
      path = realization_path(a.out_file);
    }
    emit(path, r, out);
    if (path != "-") {
      out << "realization: " << r.vertices.size() << " vertices on the unit sphere, coordinate-bits="
          << coordinate_bits(r.vertices) << " -> " << path << "\n";
    }
  }
  if (!a.k_lift_out.empty()) {
    const Lifting k = k_lifted_stage(cert);
    emit(a.k_lift_out, io::LiftingDocument{k, KBody::unit_ball(k.base.dim() + 2)}, out);
    if (a.k_lift_out != "-") out << "k-lift: " << k.lifted.size() << " points -> " << a.k_lift_out << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string file;
  std::optional<int> neighborly;
  bool inscribed = false;
  bool delaunay_eq = false;
  bool lift = false;
};

struct Check {
  std::string name;
  std::function<bool()> run;
};

inline bool placing_is_delaunay(const PointConfiguration& c) {
  return placing_triangulation(c) == delaunay_triangulation(c);
}

inline bool triangulation_k_neighborly(const Triangulation& t, int k) {
  const LabelSet used = t.used_labels();
  std::set<LabelSet> covered;
  for (const auto& c : t.cells) {
    for (auto& s : subsets_of(c, static_cast<std::size_t>(k))) covered.insert(std::move(s));
  }
  return covered.size() == binomial(used.size(), static_cast<std::uint64_t>(k));
}

inline std::vector<Check> checks_for(const io::Document& doc, const VerifyArgs& a) {
  const bool none = !a.neighborly && !a.inscribed && !a.delaunay_eq && !a.lift;
  std::vector<Check> checks;
  auto unsupported = [&](const char* flag) {
    throw SchemaError(std::string("verify: ") + flag + " does not apply to a " + io::kind_name(doc) + " document");
  };
  auto neighborly_name = [](int k) { return "neighborly(" + std::to_string(k) + ")"; };

  if (const auto* c = std::get_if<PointConfiguration>(&doc)) {
    if (a.inscribed) unsupported("--inscribed");
    if (a.lift) unsupported("--lift");
    if (a.neighborly) {
      const int k = *a.neighborly;
      checks.push_back({neighborly_name(k), [c, k] { return is_k_neighborly(convex_hull(*c), k); }});
    }
    if (a.delaunay_eq || none) checks.push_back({"delaunay-eq", [c] { return placing_is_delaunay(*c); }});
  } else if (std::holds_alternative<PipelineSpec>(doc)) {
    throw SchemaError("verify: a pipeline_spec has nothing to verify; construct it first");
  } else if (const auto* f = std::get_if<FacetSet>(&doc)) {
    if (a.inscribed) unsupported("--inscribed");
    if (a.lift) unsupported("--lift");
    if (a.delaunay_eq) unsupported("--delaunay-eq");
    const int k = a.neighborly.value_or(f->dim / 2);
    checks.push_back({neighborly_name(k), [f, k] { return is_k_neighborly(*f, k); }});
  } else if (const auto* t = std::get_if<Triangulation>(&doc)) {
    if (a.inscribed) unsupported("--inscribed");
    if (a.lift) unsupported("--lift");
    if (a.delaunay_eq) unsupported("--delaunay-eq");
    if (a.neighborly) {
      const int k = *a.neighborly;
      checks.push_back({neighborly_name(k), [t, k] { return triangulation_k_neighborly(*t, k); }});
    } else {
      checks.push_back({"neighborly-triangulation", [t] { return is_neighborly_triangulation(*t); }});
    }
  } else if (const auto* r = std::get_if<InscribedRealization>(&doc)) {
    if (a.lift) unsupported("--lift");
    if (a.delaunay_eq) unsupported("--delaunay-eq");
    if (a.neighborly) {
      const int k = *a.neighborly;
      checks.push_back({neighborly_name(k), [r, k] { return is_k_neighborly(r->facets, k); }});
    }
    if (a.inscribed || none) checks.push_back({"inscribed", [r] { return verify_inscribed(*r, r->facets); }});
  } else if (const auto* l = std::get_if<io::LiftingDocument>(&doc)) {
    if (a.inscribed) unsupported("--inscribed");
    if (a.neighborly) unsupported("--neighborly");
    if (a.lift || none) {
      checks.push_back({l->body ? "k-lift" : "lift", [l] { return verify_lift(l->lifting, l->body); }});
    }
    if (a.delaunay_eq || (none && l->body)) {
      checks.push_back({"delaunay-eq", [l] { return placing_is_delaunay(l->lifting.lifted); }});
    }
  } else if (const auto* cert = std::get_if<ConstructionCertificate>(&doc)) {
    if (a.neighborly || none) {
      const int k = a.neighborly.value_or(cert->spec.d / 2);
      checks.push_back({neighborly_name(k), [cert, k] {
                          return is_k_neighborly(cert->facets, k) && convex_hull(cert->final_config) == cert->facets;
                        }});
    }
    if (a.lift || none) {
      checks.push_back({"lift", [cert] {
                          for (const auto& st : cert->stages) {
                            if (!verify_lift(st.first) || !verify_lift(st.second) || !st.second.positive()) return false;
                          }
                          return true;
                        }});
    }
    if (a.inscribed || none) {
      checks.push_back({"inscribed", [cert] { return verify_inscribed(inscribed_realization(*cert), cert->facets); }});
    }
    if (a.delaunay_eq || (none && !cert->stages.empty())) {
      checks.push_back({"delaunay-eq", [cert] { return placing_is_delaunay(k_lifted_stage(*cert).lifted); }});
    }
  }
  return checks;
}

inline int verify(const VerifyArgs& a, std::ostream& out) {
  const io::Document doc = io::load(a.file);
  const auto checks = checks_for(doc, a);
  Json summary = {{"kind", io::kind_name(doc)}, {"checks", Json::object()}};
  bool all = true;
  for (const auto& c : checks) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const DegenerateInput& e) {
      out << c.name << ": FAIL (" << e.what() << ")\n";
      summary["checks"][c.name] = false;
      all = false;
      continue;
    }
    out << c.name << ": " << (ok ? "pass" : "FAIL") << "\n";
    summary["checks"][c.name] = ok;
    all = all && ok;
  }
  summary["pass"] = all;
  out << summary.dump() << "\n";
  return all ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// count

struct CountArgs {
  int d = 4;
  int n = 6;
  std::string perms = "all";
  std::string signs = "positive";
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::string spec_file;
};

inline std::vector<std::vector<Label>> all_permutations(int m) {
  std::vector<Label> p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  std::vector<std::vector<Label>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<std::vector<Label>> random_permutations(int m, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 engine(inscribe::detail::mix_seed(seed, 0x70657273));
  std::vector<std::vector<Label>> out;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<Label> p(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i + 1;
    for (std::size_t i = p.size(); i > 1; --i) std::swap(p[i - 1], p[engine() % i]);
    out.push_back(std::move(p));
  }
  return out;
}

inline Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// The bound the enumeration is compared against: the product bound when there
/// is no lifting, otherwise (m+1)!/(k+2)! for the last iteration's m points in R^k.
inline Integer count_target(const PipelineSpec& proto) {
  if (proto.iteration_count() == 0) return lower_bound(proto.n, proto.d);
  const int m = proto.n - 2;
  const int k = proto.d - 2;
  return factorial(m + 1) / factorial(k + 2);
}

inline std::string join(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

inline int count(const CountArgs& a, std::ostream& out) {
  PipelineSpec proto;
  if (!a.spec_file.empty()) {
    proto = io::expect<PipelineSpec>(io::load(a.spec_file), "pipeline_spec");
  } else {
    proto.d = a.d;
    proto.n = a.n;
    proto.seed = a.seed;
  }
  const int iters = proto.iteration_count();
  const int m = iters == 0 ? proto.base_size() : proto.n - 2;

  std::vector<std::vector<Label>> perms;
  std::size_t perm_count = 0;
  if (a.perms == "all") {
    perm_count = 1;
    for (int i = 2; i <= m; ++i) {
      perm_count *= static_cast<std::size_t>(i);
      if (perm_count > enumeration_cap()) break;
    }
  } else if (a.perms.rfind("random:", 0) == 0) {
    const std::string k = a.perms.substr(7);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) {
      throw SchemaError("count: --perms random:K needs a nonnegative integer K");
    }
    perm_count = std::stoull(k);
  } else {
    throw SchemaError("count: --perms must be 'all' or 'random:K'");
  }

  std::vector<std::vector<int>> sign_vectors;
  if (a.signs == "all" && iters > 0) {
    const int free = m - (proto.d - 2);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free); ++mask) {
      std::vector<int> v;
      for (int b = 0; b < free; ++b) v.push_back((mask >> b) & 1 ? -1 : 1);
      sign_vectors.push_back(std::move(v));
    }
  } else if (a.signs != "all" && a.signs != "positive") {
    throw SchemaError("count: --signs must be 'positive' or 'all'");
  }

  const std::size_t total = perm_count * std::max<std::size_t>(1, sign_vectors.size());
  if (total > enumeration_cap()) {
    throw SchemaError("count: enumeration of " + std::to_string(total) + " specs exceeds the cap of " +
                      std::to_string(enumeration_cap()) + " (INSCRIBE_ENUM_CAP)");
  }
  perms = a.perms == "all" ? all_permutations(m) : random_permutations(m, perm_count, a.seed);
  const auto specs = relabeling_enumeration(proto, perms, sign_vectors);
  const CountResult r = count_labeled_types(specs, a.jobs);

  out << "enumeration: " << specs.size() << " specs (d=" << proto.d << ", n=" << proto.n << ", perms " << a.perms
      << ", signs " << a.signs << ")\n";
  out << r.count << (r.count == 1 ? " type" : " types") << "\n";
  try {
    out << "lower bound at (n=" << proto.n << ", d=" << proto.d << "): " << lower_bound(proto.n, proto.d) << "\n";
  } catch (const std::invalid_argument&) {
    out << "lower bound at (n=" << proto.n << ", d=" << proto.d << "): undefined\n";
  }
  const Integer target = count_target(proto);
  out << "count \xe2\x89\xa5 " << target << ": " << (r.count >= target ? "holds" : "FAILS") << "\n";
  const std::size_t per_perm = std::max<std::size_t>(1, sign_vectors.size());
  for (const auto& [i, type] : r.witnesses) {
    out << "witness #" << i << ": " << (iters == 0 ? "labels " : "sigma ") << join(perms[i / per_perm]);
    if (iters > 0) out << " signs " << join(specs[i].iterations.back().signs);
    out << " (" << type.facets.size() << " facets)\n";
  }
  for (const auto& [i, msg] : r.errors) out << "error #" << i << ": " << msg << "\n";
  return r.errors.empty() ? kOk : kInputError;
}

// ---------------------------------------------------------------------------
// lift, triangulate, export

struct LiftArgs {
  std::string file;
  std::string out_file;
  std::string signs;
  bool ball = false;
};

inline int lift(const LiftArgs& a, std::ostream& out) {
  const auto base = io::expect<PointConfiguration>(io::load(a.file), "configuration");
  SignVector signs = positive_signs(base);
  if (!a.signs.empty()) {
    std::vector<int> given;
    for (char ch : a.signs) {
      if (ch == '+') given.push_back(1);
      else if (ch == '-') given.push_back(-1);
      else if (ch != ',') throw SchemaError("lift: --signs takes '+' and '-' characters");
    }
    if (given.size() != signs.size()) {
      throw SchemaError("lift: expected " + std::to_string(signs.size()) + " signs, got " + std::to_string(given.size()));
    }
    std::size_t i = 0;
    for (auto& [l, s] : signs) s = given[i++];
  }
  io::LiftingDocument doc;
  if (a.ball) {
    doc.body = KBody::unit_ball(base.dim() + 2);
    doc.lifting = k_lift(base, signs, *doc.body);
  } else {
    doc.lifting = lex_lift(base, signs);
  }
  emit(a.out_file, doc, out);
  return kOk;
}

struct TriangulateArgs {
  std::string file;
  std::string out_file;
  std::string method = "placing";
};

inline int triangulate(const TriangulateArgs& a, std::ostream& out) {
  const auto c = io::expect<PointConfiguration>(io::load(a.file), "configuration");
  Triangulation t;
  if (a.method == "placing") {
    t = placing_triangulation(c);
  } else if (a.method == "delaunay") {
    t = delaunay_triangulation(c);
  } else if (a.method == "lower-envelope") {
    t = lower_envelope(c);
  } else if (a.method == "k-delaunay") {
    t = k_delaunay(c, KProjection(KBody::unit_ball(c.dim() + 1))).triangulation;
  } else {
    throw SchemaError("triangulate: unknown method '" + a.method + "'");
  }
  emit(a.out_file, t, out);
  return kOk;
}

struct ExportArgs {
  std::string file;
  std::string out_file;
  std::string format = "off";
  int digits = 6;
};

inline std::string export_text(const InscribedRealization& r, const std::string& format, int digits) {
  const PointConfiguration& v = r.vertices;
  std::map<Label, std::size_t> index;
  for (std::size_t i = 0; i < v.size(); ++i) index[v.label(i)] = i;
  std::ostringstream s;
  if (format == "off") {
    if (v.dim() == 3) {
      s << "OFF\n";
    } else {
      s << "nOFF\n" << v.dim() << "\n";
    }
    s << v.size() << " " << r.facets.facets.size() << " 0\n";
    for (const auto& p : v.points()) {
      for (std::size_t i = 0; i < p.coords.size(); ++i) s << (i ? " " : "") << to_decimal(p.coords[i], digits);
      s << "\n";
    }
    for (const auto& f : r.facets.facets) {
      s << f.size();
      for (Label l : f) s << " " << index.at(l);
      s << "\n";
    }
  } else if (format == "json-approx") {
    Json verts = Json::array();
    for (const auto& p : v.points()) {
      Json coords = Json::array();
      for (const auto& x : p.coords) coords.push_back(std::stod(to_decimal(x, digits)));
      verts.push_back({{"label", p.label}, {"coords", coords}});
    }
    s << Json{{"dim", v.dim()}, {"vertices", verts}, {"facets", r.facets.facets}}.dump(2) << "\n";
  } else {
    throw SchemaError("export: --format must be 'off' or 'json-approx'");
  }
  return s.str();
}

inline int export_realization(const ExportArgs& a, std::ostream& out) {
  const auto r = io::expect<InscribedRealization>(io::load(a.file), "realization");
  const std::string text = export_text(r, a.format, a.digits);
  if (a.out_file.empty() || a.out_file == "-") {
    out << text;
  } else {
    std::ofstream f(a.out_file, std::ios::binary);
    if (!f) throw SchemaError("cannot write '" + a.out_file + "'");
    f << text;
  }
  return kOk;
}

}  // namespace detail

/// Runs the command line. args[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact construction and verification of neighborly and inscribed polytopes", "inscribe"};
  app.require_subcommand(1);

  detail::ConstructArgs ca;
  std::uint64_t seed_value = 0;
  auto* construct = app.add_subcommand("construct", "Run the construction pipeline on a spec file");
  construct->add_option("spec", ca.spec_file, "pipeline_spec JSON file")->required();
  construct->add_option("-o,--out", ca.out_file, "certificate output file (default: stdout)");
  construct->add_flag("--inscribe", ca.inscribe, "also write an inscribed realization");
  construct->add_option("--inscribed-out", ca.inscribed_out, "realization output file");
  construct->add_option("--k-lift-out", ca.k_lift_out, "write the unit-ball K-lift of the last stage");
  auto* seed_opt = construct->add_option("--seed", seed_value, "override the spec seed");

  detail::VerifyArgs va;
  int neighborly_k = 0;
  auto* verify = app.add_subcommand("verify", "Check a document");
  verify->add_option("file", va.file, "JSON document")->required();
  auto* neighborly_opt = verify->add_option("--neighborly", neighborly_k, "every k-subset of vertices is a face");
  verify->add_flag("--inscribed", va.inscribed, "vertices on the body boundary with the recorded facets");
  verify->add_flag("--delaunay-eq", va.delaunay_eq, "placing triangulation equals Delaunay triangulation");
  verify->add_flag("--lift", va.lift, "lifting conditions hold");

  detail::CountArgs na;
  auto* count = app.add_subcommand("count", "Count labeled types over an enumeration of relabelings");
  count->add_option("--d", na.d, "target dimension");
  count->add_option("--n", na.n, "target vertex count");
  count->add_option("--spec", na.spec_file, "prototype pipeline_spec instead of --d/--n");
  count->add_option("--perms", na.perms, "all | random:K");
  count->add_option("--signs", na.signs, "positive | all");
  count->add_option("--jobs", na.jobs, "worker threads")->check(CLI::PositiveNumber);
  count->add_option("--seed", na.seed, "seed for default points and random permutations");

  detail::LiftArgs la;
  auto* lift = app.add_subcommand("lift", "Lexicographic lifting of a configuration");
  lift->add_option("file", la.file, "configuration JSON file")->required();
  lift->add_option("-o,--out", la.out_file, "output file (default: stdout)");
  lift->add_option("--signs", la.signs, "signs for labels from position d+2 on, e.g. +,-,+");
  lift->add_flag("--ball", la.ball, "K-lift for the unit ball");

  detail::TriangulateArgs ta;
  auto* triangulate = app.add_subcommand("triangulate", "Triangulate a configuration");
  triangulate->add_option("file", ta.file, "configuration JSON file")->required();
  triangulate->add_option("-o,--out", ta.out_file, "output file (default: stdout)");
  triangulate->add_option("--method", ta.method, "placing | delaunay | lower-envelope | k-delaunay");

  detail::ExportArgs ea;
  auto* exporter = app.add_subcommand("export", "Decimal export of a realization");
  exporter->add_option("file", ea.file, "realization JSON file")->required();
  exporter->add_option("-o,--out", ea.out_file, "output file (default: stdout)");
  exporter->add_option("--format", ea.format, "off | json-approx");
  exporter->add_option("--digits", ea.digits, "fractional digits")->check(CLI::Range(0, 1000));

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*construct) {
      if (*seed_opt) ca.seed = seed_value;
      return detail::construct(ca, out);
    }
    if (*verify) {
      if (*neighborly_opt) va.neighborly = neighborly_k;
      return detail::verify(va, out);
    }
    if (*count) return detail::count(na, out);
    if (*lift) return detail::lift(la, out);
    if (*triangulate) return detail::triangulate(ta, out);
    if (*exporter) return detail::export_realization(ea, out);
  } catch (const InvariantViolation& e) {
    err << "internal invariant breach: " << e.what() << "\n";
    return kInternalError;
  } catch (const NumericUndecided& e) {
    err << "undecided: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace inscribe::cli
