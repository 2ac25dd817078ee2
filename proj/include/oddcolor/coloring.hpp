#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plane_graph.hpp"

namespace oddcolor {

using Color = int;  // 1..k; 0 means unassigned

class ColorSet {
 public:
  constexpr ColorSet() = default;
  constexpr ColorSet(std::initializer_list<Color> cs) {
    for (Color c : cs) insert(c);
  }
  static constexpr auto palette(int k) -> ColorSet {
    ColorSet s;
    for (Color c = 1; c <= k; ++c) s.insert(c);
    return s;
  }

  constexpr void insert(Color c) {
    if (c > 0) bits_ |= 1u << c;
  }
  constexpr void erase(Color c) {
    if (c > 0) bits_ &= ~(1u << c);
  }
  constexpr auto contains(Color c) const -> bool { return c > 0 && (bits_ >> c) & 1u; }
  constexpr auto size() const -> int { return std::popcount(bits_); }
  constexpr auto empty() const -> bool { return bits_ == 0; }
  constexpr auto bits() const -> std::uint32_t { return bits_; }
  auto min() const -> std::optional<Color> {
    if (!bits_) return std::nullopt;
    return std::countr_zero(bits_);
  }
  auto to_vector() const -> std::vector<Color> {
    std::vector<Color> out;
    for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr auto operator|(ColorSet a, ColorSet b) -> ColorSet { return from_bits(a.bits_ | b.bits_); }
  friend constexpr auto operator&(ColorSet a, ColorSet b) -> ColorSet { return from_bits(a.bits_ & b.bits_); }
  friend constexpr auto operator-(ColorSet a, ColorSet b) -> ColorSet { return from_bits(a.bits_ & ~b.bits_); }
  friend constexpr auto operator==(ColorSet a, ColorSet b) -> bool { return a.bits_ == b.bits_; }

 private:
  static constexpr auto from_bits(std::uint32_t b) -> ColorSet {
    ColorSet s;
    s.bits_ = b;
    return s;
  }
  std::uint32_t bits_ = 0;
};

class PartialColoring {
 public:
  PartialColoring() = default;
  explicit PartialColoring(int n, int k = 4) : k_(k), c_(n, 0) {
    if (k < 1 || k > 30) throw Error(Errc::precondition_failed, "palette size " + std::to_string(k));
  }

  auto palette_size() const -> int { return k_; }
  auto vertex_count() const -> int { return static_cast<int>(c_.size()); }
  auto operator[](Vertex v) const -> Color { return c_[v]; }
  auto has(Vertex v) const -> bool { return c_[v] != 0; }
  void set(Vertex v, Color c) {
    if (c < 1 || c > k_)
      throw Error(Errc::precondition_failed, "color " + std::to_string(c) + " outside 1.." + std::to_string(k_));
    c_[v] = c;
  }
  void unset(Vertex v) { c_[v] = 0; }
  auto domain() const -> std::vector<Vertex> {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < vertex_count(); ++v)
      if (c_[v]) out.push_back(v);
    return out;
  }
  auto domain_size() const -> int {
    int s = 0;
    for (Color c : c_) s += c != 0;
    return s;
  }
  auto is_total() const -> bool { return domain_size() == vertex_count(); }
  auto values() const -> const std::vector<Color>& { return c_; }

  friend auto operator==(const PartialColoring& a, const PartialColoring& b) -> bool {
    return a.k_ == b.k_ && a.c_ == b.c_;
  }

 private:
  int k_ = 4;
  std::vector<Color> c_;
};

struct ColorMultiset {
  std::vector<int> counts;  // indexed by color, slot 0 unused

  explicit ColorMultiset(int k = 4) : counts(k + 1, 0) {}
  ColorMultiset(int k, std::initializer_list<Color> cs) : counts(k + 1, 0) {
    for (Color c : cs) add(c);
  }
  void add(Color c) { ++counts.at(c); }
  auto total() const -> int {
    int t = 0;
    for (int x : counts) t += x;
    return t;
  }
  auto odd_elements() const -> ColorSet {
    ColorSet s;
    for (Color c = 1; c < static_cast<int>(counts.size()); ++c)
      if (counts[c] % 2) s.insert(c);
    return s;
  }
  auto unique_elements() const -> ColorSet {
    ColorSet s;
    for (Color c = 1; c < static_cast<int>(counts.size()); ++c)
      if (counts[c] == 1) s.insert(c);
    return s;
  }
};

inline auto neighbor_multiset(const PlaneGraph& g, const PartialColoring& phi, Vertex v) -> ColorMultiset {
  ColorMultiset m(phi.palette_size());
  for (Vertex x : g.neighbors(v))
    if (phi.has(x)) m.add(phi[x]);
  return m;
}

inline auto odd_colors(const PlaneGraph& g, const PartialColoring& phi, Vertex v) -> ColorSet {
  std::uint32_t parity = 0;
  for (Vertex x : g.neighbors(v))
    if (phi.has(x)) parity ^= 1u << phi[x];
  ColorSet s;
  for (Color c = 1; c <= phi.palette_size(); ++c)
    if ((parity >> c) & 1u) s.insert(c);
  return s;
}

inline auto unique_colors(const PlaneGraph& g, const PartialColoring& phi, Vertex v) -> ColorSet {
  return neighbor_multiset(g, phi, v).unique_elements();
}

// The designated odd color: smallest member of odd_colors.
inline auto odd_color(const PlaneGraph& g, const PartialColoring& phi, Vertex v) -> std::optional<Color> {
  return odd_colors(g, phi, v).min();
}

enum class CheckFailure { none, improper, no_odd_color, no_unique_color };

struct CheckResult {
  bool ok = true;
  CheckFailure failure = CheckFailure::none;
  Vertex witness = -1;
  std::pair<Vertex, Vertex> edge{-1, -1};

  explicit operator bool() const { return ok; }
};

namespace detail {

template <class HasColor>
auto check_coloring(const PlaneGraph& g, const PartialColoring& phi, HasColor has_color, CheckFailure miss)
    -> CheckResult {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!phi.has(v)) continue;
    for (Vertex x : g.neighbors(v))
      if (x > v && phi.has(x) && phi[x] == phi[v])
        return {false, CheckFailure::improper, v, {v, x}};
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (!phi.has(v) || g.degree(v) == 0) continue;
    bool closed = true;
    for (Vertex x : g.neighbors(v)) closed = closed && phi.has(x);
    if (closed && !has_color(v)) return {false, miss, v, {-1, -1}};
  }
  return {};
}

}  // namespace detail

// Partial semantics: only vertices whose whole neighborhood is colored must
// have an odd color.
inline auto is_odd_coloring(const PlaneGraph& g, const PartialColoring& phi) -> CheckResult {
  return detail::check_coloring(
      g, phi, [&](Vertex v) { return !odd_colors(g, phi, v).empty(); }, CheckFailure::no_odd_color);
}

inline auto is_pcf_coloring(const PlaneGraph& g, const PartialColoring& phi) -> CheckResult {
  return detail::check_coloring(
      g, phi, [&](Vertex v) { return !unique_colors(g, phi, v).empty(); }, CheckFailure::no_unique_color);
}

struct ParityFlipResult {
  bool original_has_odd = false;
  bool flipped_has_odd = false;
  Color witness = 0;
  bool witness_in_flipped = false;
};

// Changing one element of a multiset leaves an odd-multiplicity element in
// the original or in the changed copy.
inline auto parity_flip(const ColorMultiset& x, Color from, Color to) -> ParityFlipResult {
  const int k = static_cast<int>(x.counts.size()) - 1;
  if (from == to) throw Error(Errc::same_color, "from == to == " + std::to_string(from));
  if (from < 1 || from > k || x.counts[from] == 0)
    throw Error(Errc::from_absent, "color " + std::to_string(from));
  if (to < 1 || to > k) throw Error(Errc::precondition_failed, "target color " + std::to_string(to));
  ColorMultiset y = x;
  --y.counts[from];
  ++y.counts[to];
  ParityFlipResult r;
  ColorSet a = x.odd_elements(), b = y.odd_elements();
  r.original_has_odd = !a.empty();
  r.flipped_has_odd = !b.empty();
  if (r.original_has_odd) r.witness = *a.min();
  else if (r.flipped_has_odd) r.witness = *b.min(), r.witness_in_flipped = true;
  return r;
}

namespace detail {

inline void require_k4(const PartialColoring& phi) {
  if (phi.palette_size() != 4)
    throw Error(Errc::precondition_failed, "procedure requires k = 4, got " + std::to_string(phi.palette_size()));
}

inline auto first_free(ColorSet used, int k) -> std::optional<Color> { return (ColorSet::palette(k) - used).min(); }

// Candidate designated odd colors; {0} stands for "none exists".
inline auto odd_choices(const PlaneGraph& g, const PartialColoring& phi, Vertex v) -> std::vector<Color> {
  auto s = odd_colors(g, phi, v).to_vector();
  if (s.empty()) s.push_back(0);
  return s;
}

}  // namespace detail

// Colors the interior of a 2-thread y1 x1 x2 y2 following the constructive
// case analysis; tries every choice of odd colors at the anchors.
inline auto extend_over_2thread(const PlaneGraph& g, const PartialColoring& phi_in, const Thread& t)
    -> PartialColoring {
  detail::require_k4(phi_in);
  if (t.kind != 2) throw Error(Errc::precondition_failed, "not a 2-thread");
  PartialColoring phi = phi_in;
  const Vertex x1 = t.interior[0], x2 = t.interior[1], y1 = t.u, y2 = t.w;
  phi.unset(x1);
  phi.unset(x2);
  if (!phi.has(y1) || !phi.has(y2)) throw Error(Errc::precondition_failed, "anchors must be colored");
  const Color c1 = phi[y1], c2 = phi[y2];
  for (Color o1 : detail::odd_choices(g, phi, y1)) {
    for (Color o2 : detail::odd_choices(g, phi, y2)) {
      ColorSet a{o1, c1, c2};
      Color a1 = 0;
      if (c1 == c2 || o2 == 0 || o2 == c1) a1 = *detail::first_free(a, 4);
      else if (!a.contains(o2)) a1 = o2;
      else continue;
      auto a2 = detail::first_free(ColorSet{a1, o2, c1, c2}, 4);
      if (!a2) continue;
      phi.set(x1, a1);
      phi.set(x2, *a2);
      return phi;
    }
  }
  throw Error(Errc::cannot_extend, "phi(y1)=" + std::to_string(c1) + " != phi(y2)=" + std::to_string(c2) +
                                       ", unique odd colors both " + std::to_string(odd_colors(g, phi, y1).min().value_or(0)));
}

// Colors the interior of a 3-thread y1 x1 x2 x3 y2; fails only on the cross
// pattern odd(y1) = phi(y2), odd(y2) = phi(y1) with unique odd colors.
inline auto extend_over_3thread(const PlaneGraph& g, const PartialColoring& phi_in, const Thread& t)
    -> PartialColoring {
  detail::require_k4(phi_in);
  if (t.kind != 3) throw Error(Errc::precondition_failed, "not a 3-thread");
  PartialColoring phi = phi_in;
  const Vertex x1 = t.interior[0], x2 = t.interior[1], x3 = t.interior[2], y1 = t.u, y2 = t.w;
  for (Vertex x : t.interior) phi.unset(x);
  if (!phi.has(y1) || !phi.has(y2)) throw Error(Errc::precondition_failed, "anchors must be colored");
  const Color c1 = phi[y1], c2 = phi[y2];
  for (Color o1 : detail::odd_choices(g, phi, y1)) {
    for (Color o2 : detail::odd_choices(g, phi, y2)) {
      Color a1 = 0, a2 = 0, a3 = 0;
      if (o1 != c2) {
        a2 = o1 ? o1 : *detail::first_free(ColorSet{c1, c2}, 4);
        a3 = *detail::first_free(ColorSet{a2, c2, o2}, 4);
        auto f = detail::first_free(ColorSet{a2, a3, c1, o1}, 4);
        if (!f) continue;
        a1 = *f;
      } else if (o2 != c1) {
        a2 = o2 ? o2 : *detail::first_free(ColorSet{c1, c2}, 4);
        a1 = *detail::first_free(ColorSet{a2, c1, o1}, 4);
        auto f = detail::first_free(ColorSet{a2, a1, c2, o2}, 4);
        if (!f) continue;
        a3 = *f;
      } else {
        continue;
      }
      phi.set(x1, a1);
      phi.set(x2, a2);
      phi.set(x3, a3);
      return phi;
    }
  }
  throw Error(Errc::cannot_extend, "cross pattern: odd(y1)=phi(y2)=" + std::to_string(c2) +
                                       ", odd(y2)=phi(y1)=" + std::to_string(c1));
}

}  // namespace oddcolor
