#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "arrays.hpp"
#include "forbflex.hpp"
#include "plane_graph.hpp"
#include "reducible.hpp"
#include "rules.hpp"

namespace oddcolor {

enum class Stage { mu, mu_prime, mu_double_prime };

inline auto to_string(Stage s) -> std::string {
  switch (s) {
    case Stage::mu: return "mu";
    case Stage::mu_prime: return "mu_prime";
    case Stage::mu_double_prime: return "mu_double_prime";
  }
  return "?";
}

// An element of V(g) ∪ F(g).
struct Element {
  bool face = false;
  int id = 0;

  auto name() const -> std::string { return (face ? "f" : "v") + std::to_string(id); }
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct Transfer {
  std::string rule;
  Element source;
  Element target;
  Rational amount;
};

struct ChargeState {
  Stage stage = Stage::mu;
  std::vector<Rational> vertex;
  std::vector<Rational> face;
  std::vector<Transfer> ledger;

  auto at(Element e) const -> const Rational& { return e.face ? face[e.id] : vertex[e.id]; }
  auto at(Element e) -> Rational& { return e.face ? face[e.id] : vertex[e.id]; }
  auto total() const -> Rational {
    Rational s = 0;
    for (const auto& x : vertex) s += x;
    for (const auto& x : face) s += x;
    return s;
  }
};

inline auto initial_charge(const PlaneGraph& g) -> ChargeState {
  if (!g.connected()) throw Error(Errc::disconnected, std::to_string(g.component_count()) + " components");
  ChargeState s;
  for (Vertex v = 0; v < g.vertex_count(); ++v) s.vertex.push_back(Rational(2 * g.degree(v) - 6));
  for (const Face& f : g.faces()) s.face.push_back(Rational(f.length() - 6));
  return s;
}

struct RuleOptions {
  // Treat faces without an array representation as rich instead of failing.
  bool lenient = false;
};

namespace detail {

inline void settle(ChargeState& s, std::vector<Transfer> moves) {
  std::sort(moves.begin(), moves.end(), [](const Transfer& a, const Transfer& b) {
    return std::tie(a.rule, a.source, a.target) < std::tie(b.rule, b.source, b.target);
  });
  for (const auto& t : moves) {
    s.at(t.source) -= t.amount;
    s.at(t.target) += t.amount;
  }
  s.ledger.insert(s.ledger.end(), moves.begin(), moves.end());
}

inline auto poor_faces(const PlaneGraph& g, bool lenient) -> std::vector<char> {
  std::vector<char> poor(g.faces().size(), 0);
  for (const Face& f : g.faces()) {
    auto reps = parse_arrays(f.degree_walk);
    if (reps.empty()) {
      if (lenient) continue;
      throw Error(Errc::rule_precondition_failed, "face " + std::to_string(f.id) + " has no array representation");
    }
    for (const auto& r : reps)
      if (is_poor_pattern(r.symbols())) poor[f.id] = 1;
  }
  return poor;
}

inline void require_representable(const PlaneGraph& g, bool lenient) {
  if (lenient) return;
  for (const Face& f : g.faces())
    if (parse_arrays(f.degree_walk).empty())
      throw Error(Errc::rule_precondition_failed, "face " + std::to_string(f.id) + " has no array representation");
}

}  // namespace detail

// V1-V5 and F1-F5; result is at stage mu_prime.
inline auto odd_first_pass(const PlaneGraph& g, const ChargeState& mu, RuleOptions opt = {}) -> ChargeState {
  if (mu.stage != Stage::mu) throw Error(Errc::rule_precondition_failed, "expected stage mu");
  detail::require_representable(g, opt.lenient);
  std::vector<Transfer> moves;
  auto V = [](Vertex v) { return Element{false, v}; };
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 4) continue;
    for (Vertex x : g.neighbors(v)) {
      if (g.degree(x) == 2) {
        const Thread* t = g.thread_at(x);
        if (!t) continue;
        if (t->kind == 3) moves.push_back({"V1", V(v), V(x), odd_rules::v1()});
        else if (t->kind == 2) moves.push_back({"V2", V(v), V(x), odd_rules::v2()});
        else if (t->kind == 1) moves.push_back({"V3", V(v), V(x), odd_rules::v3()});
      } else if (g.degree(x) == 3) {
        const VertexClass c = classify_vertex(g, x);
        const bool strong = c == VertexClass::worst3 || c == VertexClass::bad3;
        if (!strong && c != VertexClass::sbad3) continue;
        for (Vertex y : g.neighbors(x))
          if (g.degree(y) == 2)
            moves.push_back({strong ? "V4" : "V5", V(v), V(y), strong ? odd_rules::v4() : odd_rules::v5()});
      }
    }
  }
  for (const Face& f : g.faces()) {
    const Element src{true, f.id};
    for (Vertex x : f.walk) {
      if (g.degree(x) != 2) continue;
      const Thread* t = g.thread_at(x);
      if (!t) continue;
      if (t->kind == 1) {
        switch (classify_vertex(g, x)) {
          case VertexClass::good2: moves.push_back({"F1", src, V(x), odd_rules::f1()}); break;
          case VertexClass::bad2: moves.push_back({"F2", src, V(x), odd_rules::f2()}); break;
          case VertexClass::worst2: moves.push_back({"F3", src, V(x), odd_rules::f3()}); break;
          default: break;
        }
      } else if (t->kind == 2) {
        moves.push_back({"F4", src, V(x), odd_rules::f4()});
      } else if (t->kind == 3) {
        const bool mid = t->interior[1] == x;
        moves.push_back({"F5", src, V(x), mid ? odd_rules::f5_mid() : odd_rules::f5_end()});
      }
    }
  }
  ChargeState s = mu;
  detail::settle(s, std::move(moves));
  s.stage = Stage::mu_prime;
  return s;
}

// R1: each 4+-vertex splits its remaining charge evenly over its distinct
// incident poor faces. Vertices with no poor face keep their charge.
inline auto odd_redistribute(const PlaneGraph& g, const ChargeState& mu1, RuleOptions opt = {}) -> ChargeState {
  if (mu1.stage != Stage::mu_prime) throw Error(Errc::rule_precondition_failed, "expected stage mu_prime");
  const auto poor = detail::poor_faces(g, opt.lenient);
  std::vector<Transfer> moves;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 4) continue;
    std::vector<int> mine;
    for (int f : g.faces_at(v))
      if (poor[f]) mine.push_back(f);
    if (mine.empty()) continue;
    const Rational eta = mu1.vertex[v] / Rational(static_cast<long>(mine.size()));
    for (int f : mine) moves.push_back({"R1", Element{false, v}, Element{true, f}, eta});
  }
  ChargeState s = mu1;
  detail::settle(s, std::move(moves));
  s.stage = Stage::mu_double_prime;
  return s;
}

inline auto apply_odd_rules(const PlaneGraph& g, const ChargeState& mu, RuleOptions opt = {}) -> ChargeState {
  return odd_redistribute(g, odd_first_pass(g, mu, opt), opt);
}

// PCF rules V1-V3 and F1-F3; result is final at stage mu_prime.
inline auto apply_pcf_rules(const PlaneGraph& g, const ChargeState& mu, RuleOptions opt = {}) -> ChargeState {
  if (mu.stage != Stage::mu) throw Error(Errc::rule_precondition_failed, "expected stage mu");
  detail::require_representable(g, opt.lenient);
  std::vector<Transfer> moves;
  auto V = [](Vertex v) { return Element{false, v}; };
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) < 4) continue;
    for (Vertex x : g.neighbors(v)) {
      const Thread* t = g.degree(x) == 2 ? g.thread_at(x) : nullptr;
      if (!t) continue;
      if (t->kind == 3) moves.push_back({"V1", V(v), V(x), pcf_rules::v1()});
      else if (t->kind == 2) {
        if (is_supported(g, x)) moves.push_back({"V2", V(v), V(x), pcf_rules::v2()});
        else moves.push_back({"V3", V(v), V(x), pcf_rules::v3()});
      }
    }
  }
  for (const Face& f : g.faces()) {
    const Element src{true, f.id};
    for (Vertex x : f.walk) {
      if (g.degree(x) != 2) continue;
      const Thread* t = g.thread_at(x);
      if (!t) continue;
      if (t->kind == 1) moves.push_back({"F1", src, V(x), pcf_rules::f1()});
      else if (t->kind == 2)
        moves.push_back({"F2", src, V(x), is_supported(g, x) ? pcf_rules::f2_supported() : pcf_rules::f2_unsupported()});
      else if (t->kind == 3)
        moves.push_back({"F3", src, V(x), t->interior[1] == x ? pcf_rules::f3_mid() : pcf_rules::f3_end()});
    }
  }
  ChargeState s = mu;
  detail::settle(s, std::move(moves));
  s.stage = Stage::mu_prime;
  return s;
}

struct NegativeElement {
  Element element;
  Rational value;
  int local_hits = 0;  // hits whose witness touches the element
};

struct AuditReport {
  Theorem theorem = Theorem::odd10;
  bool applicable = true;
  std::string note;
  std::optional<int> girth;
  std::vector<std::pair<Stage, Rational>> totals;
  std::vector<NegativeElement> negatives;
  std::vector<int> unrepresentable_faces;
  std::vector<ConfigurationHit> hits;
  std::vector<std::pair<std::string, bool>> claims;
  ChargeState final_state;
  bool critical = false;

  auto conserved() const -> bool {
    for (const auto& [st, t] : totals)
      if (t != Rational(-12)) return false;
    return !totals.empty();
  }
};

struct AuditOptions {
  bool check_girth = true;
};

inline auto audit(const PlaneGraph& g, Theorem th, AuditOptions opt = {}) -> AuditReport {
  AuditReport r;
  r.theorem = th;
  ChargeState mu = initial_charge(g);
  r.girth = girth(g);
  const int need = required_girth(th);
  if (opt.check_girth && r.girth && *r.girth < need)
    throw Error(Errc::precondition_failed, "girth " + std::to_string(*r.girth) + " < " + std::to_string(need));
  r.totals.emplace_back(Stage::mu, mu.total());
  r.hits = detect_all(g, th);

  bool any_big = false;
  for (Vertex v = 0; v < g.vertex_count(); ++v) any_big = any_big || g.degree(v) >= 3;
  if (!any_big) {
    r.applicable = false;
    r.note = "no 3+-vertex; rule system inapplicable";
    r.final_state = mu;
  } else {
    for (const Face& f : g.faces())
      if (parse_arrays(f.degree_walk).empty()) r.unrepresentable_faces.push_back(f.id);
    RuleOptions ro{true};
    if (th == Theorem::odd10) {
      ChargeState m1 = odd_first_pass(g, mu, ro);
      r.totals.emplace_back(Stage::mu_prime, m1.total());
      r.final_state = odd_redistribute(g, m1, ro);
      r.totals.emplace_back(Stage::mu_double_prime, r.final_state.total());
    } else {
      r.final_state = apply_pcf_rules(g, mu, ro);
      r.totals.emplace_back(Stage::mu_prime, r.final_state.total());
    }
  }

  std::vector<int> vhits(g.vertex_count(), 0), fhits(g.faces().size(), 0);
  for (const auto& h : r.hits) {
    for (Vertex v : h.witness) ++vhits[v];
    if (h.face >= 0) ++fhits[h.face];
  }
  const auto& fs = r.final_state;
  bool vert_ok = true, rich_ok = true, poor_ok = true;
  const auto poor = detail::poor_faces(g, true);
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (fs.vertex[v] < 0) {
      vert_ok = false;
      r.negatives.push_back({{false, v}, fs.vertex[v], vhits[v]});
    }
  for (std::size_t f = 0; f < fs.face.size(); ++f)
    if (fs.face[f] < 0) {
      (poor[f] ? poor_ok : rich_ok) = false;
      int local = fhits[f];
      for (Vertex v : g.faces()[f].walk) local += vhits[v];
      r.negatives.push_back({{true, static_cast<int>(f)}, fs.face[f], local});
    }
  if (th == Theorem::odd10) {
    r.claims = {{"vertices_nonnegative", vert_ok}, {"rich_faces_nonnegative", rich_ok}, {"poor_faces_nonnegative", poor_ok}};
  } else {
    r.claims = {{"vertices_nonnegative", vert_ok}, {"faces_nonnegative", rich_ok && poor_ok}};
  }
  r.critical = r.applicable && !r.negatives.empty() && r.hits.empty();
  return r;
}

inline auto ledger_csv(const ChargeState& s) -> std::string {
  std::ostringstream os;
  os << "rule,source,target,amount\n";
  for (const auto& t : s.ledger)
    os << t.rule << ',' << t.source.name() << ',' << t.target.name() << ',' << to_string(t.amount) << '\n';
  return os.str();
}

}  // namespace oddcolor
