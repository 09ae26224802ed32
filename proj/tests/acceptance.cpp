// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "inscribe.hpp"
#include "inscribe/cli.hpp"
#include "test_support.hpp"

using namespace inscribe;
using inscribe::testing::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.pass = false;
    o.detail += " [over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit]";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.c_str());
  std::fflush(stdout);
}

SignVector random_signs(Rng& rng, const PointConfiguration& base) {
  SignVector s = positive_signs(base);
  for (auto& [l, v] : s) v = rng.uniform(0, 1) ? 1 : -1;
  return s;
}

bool has_cocircular_quadruple(const PointConfiguration& c) {
  for (const auto& q : subsets_of(c.labels(), 4)) {
    const auto pts = c.coords_of(q);
    if (inscribe::testing::circumsphere_side({pts[0], pts[1], pts[2]}, pts[3]) == Side::On) return true;
  }
  return false;
}

/// Triangles whose circumcircle has no other point strictly inside.
std::vector<LabelSet> brute_force_delaunay(const PointConfiguration& c) {
  std::vector<LabelSet> cells;
  for (const auto& t : subsets_of(c.labels(), 3)) {
    const auto pts = c.coords_of(t);
    if (orientation(pts) == 0) continue;
    bool empty = true;
    for (const auto& p : c.points()) {
      if (std::binary_search(t.begin(), t.end(), p.label)) continue;
      if (inscribe::testing::circumsphere_side(pts, p.coords) == Side::Inside) empty = false;
    }
    if (empty) cells.push_back(t);
  }
  canonicalize(cells);
  return cells;
}

std::set<LabelSet> faces_of(const std::vector<LabelSet>& maximal) {
  std::set<LabelSet> out;
  for (const auto& f : maximal) {
    for (std::size_t k = 1; k <= f.size(); ++k) {
      for (auto& s : subsets_of(f, k)) out.insert(std::move(s));
    }
  }
  return out;
}

/// Every in-circle test of the configuration is far from a tie: the squared
/// distance to each circumcenter differs from the squared radius by at least r^2/5.
bool robustly_generic(const PointConfiguration& c) {
  for (const auto& t : subsets_of(c.labels(), 3)) {
    const auto pts = c.coords_of(t);
    if (orientation(pts) == 0) return false;
    const auto [center, r2] = inscribe::testing::circumsphere(pts);
    for (const auto& p : c.points()) {
      if (std::binary_search(t.begin(), t.end(), p.label)) continue;
      Rational dq = 0;
      for (std::size_t j = 0; j < 2; ++j) dq += (p.coords[j] - center[j]) * (p.coords[j] - center[j]);
      if (abs(dq - r2) * 5 < r2) return false;
    }
  }
  return true;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::vector<std::string> full{"inscribe"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  code = cli::run(full, out, err);
  return out.str() + err.str();
}

long types_in(const std::string& report_text) {
  std::smatch m;
  if (std::regex_search(report_text, m, std::regex("\\n(\\d+) types?\\n"))) return std::stol(m[1]);
  return -1;
}

}  // namespace

int main() {
  std::vector<ConstructionCertificate> random_certs;

  report(1, "cyclic recovery", 30, [] {
    Outcome o;
    for (auto [d, n] : std::vector<std::pair<int, int>>{{4, 6}, {4, 7}, {4, 8}, {4, 10}, {6, 9}, {6, 10}}) {
      PipelineSpec s;
      s.d = d;
      s.n = n;
      const bool ok = construct_neighborly(s).facets == gale_evenness_facets(n, d);
      o.pass = o.pass && ok;
      o.detail += "C(" + std::to_string(n) + "," + std::to_string(d) + ")" + (ok ? "=" : "!=") + " ";
    }
    return o;
  });

  report(2, "neighborly and inscribed on 50 random specs", 300, [&] {
    Outcome o;
    int good = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const int d = seed % 2 ? 4 : 6;
      const int n = d == 4 ? 7 + static_cast<int>(seed % 4) : 9 + static_cast<int>((seed / 2) % 2);
      const auto cert = construct_neighborly(random_spec(d, n, seed));
      random_certs.push_back(cert);
      bool ok = is_k_neighborly(cert.facets, d / 2) && cert.facets.vertices().size() == static_cast<std::size_t>(n);
      const auto r = inscribed_realization(cert);
      for (const auto& p : r.vertices.points()) ok = ok && squared_norm(p.coords) == 1;
      ok = ok && simplicial_hull(r.vertices) == cert.facets;
      if (ok) {
        ++good;
      } else {
        o.pass = false;
        o.detail += "seed " + std::to_string(seed) + " failed; ";
      }
    }
    o.detail += std::to_string(good) + "/50 specs verified";
    return o;
  });

  report(3, "K-lift placing equals Delaunay", 0, [] {
    Outcome o;
    Rng rng(3003);
    int good = 0;
    for (int i = 0; i < 30; ++i) {
      const int dim = 1 + i % 2;
      const int n = static_cast<int>(rng.uniform(dim + 2, dim == 1 ? 9 : 8));
      const auto base = inscribe::testing::random_general_config(rng, dim, n);
      const Lifting k = k_lift(base, random_signs(rng, base), KBody::unit_ball(dim + 2));
      if (placing_triangulation(k.lifted) == delaunay_triangulation(k.lifted)) {
        ++good;
      } else {
        o.pass = false;
      }
    }
    o.detail = std::to_string(good) + "/30 lifts agree";
    return o;
  });

  report(4, "Brown correspondence against oracles", 0, [] {
    Outcome o;
    Rng rng(4004);
    int good = 0;
    for (int i = 0; i < 30; ++i) {
      const int n = 4 + i % 5;
      PointConfiguration c;
      do c = inscribe::testing::random_general_config(rng, 2, n);
      while (has_cocircular_quadruple(c));
      const auto r = brown_polytope(c);
      const Label pole = r.pole_label;
      std::set<LabelSet> pole_free, with_pole;
      for (const auto& f : all_faces(r.facets)) {
        if (std::binary_search(f.begin(), f.end(), pole)) {
          with_pole.insert(f);
        } else {
          pole_free.insert(f);
        }
      }
      std::set<LabelSet> expected_pole{{pole}};
      for (const auto& f : faces_of(inscribe::testing::brute_force_facets(c))) {
        LabelSet g = f;
        g.push_back(pole);
        std::sort(g.begin(), g.end());
        expected_pole.insert(g);
      }
      if (pole_free == faces_of(brute_force_delaunay(c)) && with_pole == expected_pole) {
        ++good;
      } else {
        o.pass = false;
      }
    }
    o.detail = std::to_string(good) + "/30 configurations match";
    return o;
  });

  report(5, "desk-scale counts", 120, [] {
    Outcome o;
    int code = 0;
    const std::string small = run_cli({"count", "--d", "2", "--n", "5", "--perms", "all"}, code);
    const long pentagons = types_in(small);
    const bool first = code == 0 && pentagons == 12 && lower_bound(5, 2) == 12;
    const std::string square =
        run_cli({"count", "--d", "4", "--n", "6", "--perms", "all", "--signs", "positive", "--jobs", "4"}, code);
    const long squares = types_in(square);
    const bool line = square.find("count \xe2\x89\xa5 5") != std::string::npos;
    const bool second = code == 0 && line && squares >= 5;
    o.pass = first && second;
    o.detail = "d=2 n=5: " + std::to_string(pentagons) + " types (lower_bound 12); d=4 n=6 over S4: " +
               std::to_string(squares) + " types (needs >= 5)";
    return o;
  });

  report(6, "product bound evaluator", 0, [] {
    Outcome o;
    o.pass = lower_bound(5, 2) == 12 && lower_bound(6, 4) == 15 && lower_bound(8, 4) == 12600;
    int pairs = 0;
    for (int d = 4; d <= 38; d += 2) {
      for (int n = d + 2; n <= 40; ++n) {
        ++pairs;
        if (lower_bound(n, d) < closed_form_ceiling_upper(n, d)) {
          o.pass = false;
          o.detail += "(" + std::to_string(n) + "," + std::to_string(d) + ") below; ";
        }
      }
    }
    o.detail += "values 12, 15, 12600; dominance on " + std::to_string(pairs) + " (n,d) pairs";
    return o;
  });

  report(7, "height policy independence", 0, [] {
    Outcome o;
    Rng rng(7007);
    int good = 0;
    for (int i = 0; i < 20; ++i) {
      const int dim = 2 + i % 2;
      const int n = static_cast<int>(rng.uniform(dim + 3, dim + 5));
      const auto base = inscribe::testing::random_general_config(rng, dim, n);
      const SignVector s = random_signs(rng, base);
      HeightPolicy margin{HeightPolicy::Mode::BoundPlusMargin, Rational(rng.uniform(1, 50), rng.uniform(1, 7))};
      HeightPolicy doubling{HeightPolicy::Mode::Doubling, 1};
      const Lifting a = lex_lift(base, s, margin);
      const Lifting b = lex_lift(base, s, doubling);
      if (chirotope_of(a.lifted) == chirotope_of(b.lifted) && convex_hull(a.lifted) == convex_hull(b.lifted)) {
        ++good;
      } else {
        o.pass = false;
      }
    }
    o.detail = std::to_string(good) + "/20 pairs identical";
    return o;
  });

  report(8, "stacked inscribed family", 0, [] {
    Outcome o;
    for (auto [d, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 3}}) {
      const StackedResult s = stacked_universal(d, m);
      bool ok = s.realization.facets.facets.size() == static_cast<std::size_t>(d * m + 2);
      for (const auto& p : s.realization.vertices.points()) ok = ok && squared_norm(p.coords) == 1;
      ok = ok && dual_graph(s.stacking).is_path();
      o.pass = o.pass && ok;
      o.detail += "(" + std::to_string(d) + "," + std::to_string(m) + "): " +
                  std::to_string(s.realization.facets.facets.size()) + " facets" + (ok ? " ok; " : " WRONG; ");
    }
    return o;
  });

  report(9, "K-Delaunay triangulations are neighborly", 0, [&] {
    Outcome o;
    int good = 0;
    for (const auto& cert : random_certs) {
      const Lifting k = k_lifted_stage(cert);
      const auto t = k_delaunay(k.lifted, KProjection(KBody::unit_ball(k.lifted.dim() + 1)));
      if (is_neighborly_triangulation(t.triangulation)) {
        ++good;
      } else {
        o.pass = false;
      }
    }
    o.pass = o.pass && !random_certs.empty();
    o.detail = std::to_string(good) + "/" + std::to_string(random_certs.size()) + " stages";
    return o;
  });

  report(10, "near-spherical ellipsoid smoke test", 0, [] {
    Outcome o;
    Rng rng(1010);
    const KProjection ball(KBody::unit_ball(3));
    const KProjection ell(
        KBody::axis_ellipsoid({Rational(101, 100), Rational(99, 100), Rational(1)}, Rational(1, 1000000000)));
    int decided = 0, aborted = 0, draws = 0;
    while (decided < 10 && draws < 500) {
      ++draws;
      const auto c = inscribe::testing::random_general_config(rng, 2, 5, 3);
      if (!robustly_generic(c)) continue;
      try {
        const auto a = k_delaunay(c, ell).triangulation;
        ++decided;
        if (a != k_delaunay(c, ball).triangulation) o.pass = false;
      } catch (const NumericUndecided&) {
        ++aborted;
      }
    }
    o.pass = o.pass && decided == 10;
    o.detail = std::to_string(decided) + " configurations decided, " + std::to_string(aborted) + " aborted as undecided";
    return o;
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
