#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "plane_graph.hpp"
#include "rules.hpp"

namespace oddcolor {

enum class ArraySymbol { a4, a3, a2_worst, a2_bad, a2_good, a1 };

inline auto render(ArraySymbol s) -> std::string {
  switch (s) {
    case ArraySymbol::a4: return "a4";
    case ArraySymbol::a3: return "a3";
    case ArraySymbol::a2_worst: return "a2w";
    case ArraySymbol::a2_bad: return "a2b";
    case ArraySymbol::a2_good: return "a2g";
    case ArraySymbol::a1: return "a1";
  }
  return "?";
}

// One array occurrence. For a2_bad, `leading_three` separates 3-2 (before 4+)
// from 4+-2 (before 3).
struct ArrayItem {
  ArraySymbol symbol;
  bool leading_three = false;
  int length = 0;  // walk positions covered

  friend auto operator==(const ArrayItem&, const ArrayItem&) -> bool = default;
};

struct ArrayRepresentation {
  std::vector<ArrayItem> items;  // cyclic
  int start = 0;                 // index into the walk
  bool reversed = false;

  auto symbols() const -> std::vector<ArraySymbol> {
    std::vector<ArraySymbol> out;
    for (const auto& it : items) out.push_back(it.symbol);
    return out;
  }
  auto render() const -> std::string {
    std::string s;
    for (const auto& it : items) {
      if (!s.empty()) s += "·";
      s += oddcolor::render(it.symbol);
    }
    return s;
  }
  auto covered() const -> int {
    int n = 0;
    for (const auto& it : items) n += it.length;
    return n;
  }
};

namespace detail {

// Read one array starting at `lead` followed by `twos` 2-vertices, with `next`
// the degree of the following leader.
inline auto read_array(int lead, int twos, int next) -> std::optional<ArrayItem> {
  if (lead < 3 || next < 3) return std::nullopt;
  switch (twos) {
    case 0: return ArrayItem{ArraySymbol::a1, false, 1};
    case 1:
      if (lead == 3 && next == 3) return ArrayItem{ArraySymbol::a2_worst, true, 2};
      if (lead == 3) return ArrayItem{ArraySymbol::a2_bad, true, 2};
      if (next == 3) return ArrayItem{ArraySymbol::a2_bad, false, 2};
      return ArrayItem{ArraySymbol::a2_good, false, 2};
    case 2:
      if (lead >= 4 && next >= 4) return ArrayItem{ArraySymbol::a3, false, 3};
      return std::nullopt;
    case 3:
      if (lead >= 4 && next >= 4) return ArrayItem{ArraySymbol::a4, false, 4};
      return std::nullopt;
    default: return std::nullopt;
  }
}

inline auto parse_from(const std::vector<int>& w, int start) -> std::optional<ArrayRepresentation> {
  const int n = static_cast<int>(w.size());
  auto at = [&](int i) { return w[(start + i) % n]; };
  if (at(0) < 3) return std::nullopt;
  ArrayRepresentation rep;
  rep.start = start;
  int i = 0;
  while (i < n) {
    int lead = at(i);
    int twos = 0;
    while (i + 1 + twos < n && at(i + 1 + twos) == 2) ++twos;
    int j = i + 1 + twos;
    if (j < n && at(j) < 3) return std::nullopt;  // degree <= 1
    auto item = read_array(lead, twos, at(j % n));
    if (!item) return std::nullopt;
    rep.items.push_back(*item);
    i = j;
  }
  return rep;
}

}  // namespace detail

// All array representations over every start and both orientations. Empty
// means the walk has no representation.
inline auto parse_arrays(const std::vector<int>& walk) -> std::vector<ArrayRepresentation> {
  std::vector<ArrayRepresentation> out;
  const int n = static_cast<int>(walk.size());
  if (n == 0) return out;
  std::vector<int> rev(walk.rbegin(), walk.rend());
  for (int dir = 0; dir < 2; ++dir) {
    const auto& w = dir == 0 ? walk : rev;
    for (int s = 0; s < n; ++s) {
      auto rep = detail::parse_from(w, s);
      if (!rep) continue;
      rep->reversed = dir == 1;
      // report start as a position in the original walk
      if (rep->reversed) rep->start = n - 1 - s;
      out.push_back(std::move(*rep));
    }
  }
  return out;
}

enum class FaceClass { poor, rich };

inline auto is_poor_pattern(std::vector<ArraySymbol> s) -> bool {
  std::sort(s.begin(), s.end());
  using A = ArraySymbol;
  std::vector<A> p1{A::a4, A::a4, A::a1, A::a1}, p2{A::a4, A::a3, A::a2_good, A::a1};
  std::sort(p1.begin(), p1.end());
  std::sort(p2.begin(), p2.end());
  return s == p1 || s == p2;
}

inline auto classify_walk(const std::vector<int>& walk) -> FaceClass {
  auto reps = parse_arrays(walk);
  if (reps.empty()) throw Error(Errc::unrepresentable, "walk of length " + std::to_string(walk.size()));
  for (const auto& r : reps)
    if (is_poor_pattern(r.symbols())) return FaceClass::poor;
  return FaceClass::rich;
}

inline auto classify_face(const PlaneGraph& g, int f) -> FaceClass {
  try {
    return classify_walk(g.faces().at(f).degree_walk);
  } catch (const Error&) {
    throw Error(Errc::unrepresentable, "face " + std::to_string(f));
  }
}

// Average charge a face sends to the vertices an array represents.
// `supported` counts supported 2-vertices inside an a3 (PCF only).
inline auto average_charge(ArraySymbol s, RuleSet rules = RuleSet::odd, int supported = 0) -> Rational {
  using A = ArraySymbol;
  if (rules == RuleSet::odd) {
    switch (s) {
      case A::a4: return (odd_rules::f5_end() * 2 + odd_rules::f5_mid()) / 4;
      case A::a3: return odd_rules::f4() * 2 / 3;
      case A::a2_worst: return odd_rules::f3() / 2;
      case A::a2_bad: return odd_rules::f2() / 2;
      case A::a2_good: return odd_rules::f1() / 2;
      case A::a1: return q(0);
    }
  }
  switch (s) {
    case A::a4: return (pcf_rules::f3_end() * 2 + pcf_rules::f3_mid()) / 4;
    case A::a3:
      if (supported < 0 || supported > 2) throw Error(Errc::precondition_failed, "supported count");
      return (pcf_rules::f2_supported() * supported + pcf_rules::f2_unsupported() * (2 - supported)) / 3;
    case A::a2_worst:
    case A::a2_bad:
    case A::a2_good: return pcf_rules::f1() / 2;
    case A::a1: return q(0);
  }
  return q(0);
}

}  // namespace oddcolor
