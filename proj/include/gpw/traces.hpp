#ifndef GPW_TRACES_HPP
#define GPW_TRACES_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gpw/basegroups.hpp"
#include "gpw/errors.hpp"

namespace gpw {

using Vertex = std::uint32_t;
/// Set of vertices as a bit mask; specs are limited to 64 vertices.
using VertexMask = std::uint64_t;

inline VertexMask bit(Vertex v) { return VertexMask{1} << v; }

struct Letter {
  Vertex vertex;
  BaseElement elem;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using GammaWord = std::vector<Letter>;

/**
 * The graph (L, I) with its base groups. Vertex ids are positions in the
 * vertex order, so comparing ids compares vertices.
 */
class GraphProductSpec {
 public:
  static constexpr std::size_t kMaxVertices = 64;

  GraphProductSpec(std::vector<std::string> names, std::vector<BaseGroup> bases,
                   const std::vector<std::pair<Vertex, Vertex>>& independence)
      : names_(std::move(names)), bases_(std::move(bases)) {
    const std::size_t n = names_.size();
    if (n == 0) throw DomainError("a graph product needs at least one vertex");
    if (n > kMaxVertices) throw DomainError("at most 64 vertices are supported");
    if (bases_.size() != n) throw DomainError("one base group per vertex required");
    indep_.assign(n, 0);
    for (auto [a, b] : independence) {
      if (a >= n || b >= n) throw SpecMismatch("independence pair names an unknown vertex");
      if (a == b) throw DomainError("independence must be irreflexive");
      indep_[a] |= bit(b);
      indep_[b] |= bit(a);
    }
    all_ = n == 64 ? ~VertexMask{0} : (bit(static_cast<Vertex>(n)) - 1);
    dep_.resize(n);
    for (Vertex v = 0; v < n; ++v) dep_[v] = all_ & ~indep_[v];
    for (Vertex a = 0; a < n; ++a) {
      bool isolated = true;
      for (Vertex b = a + 1; b < n; ++b)
        if (!(indep_[a] & bit(b))) cliques_.push_back(bit(a) | bit(b));
      for (Vertex b = 0; b < n; ++b)
        if (b != a && !(indep_[a] & bit(b))) isolated = false;
      if (isolated) cliques_.push_back(bit(a));
    }
  }

  std::size_t sigma() const noexcept { return names_.size(); }
  const std::string& name(Vertex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const BaseGroup& base(Vertex v) const { return bases_.at(v); }
  VertexMask all() const noexcept { return all_; }

  bool independent(Vertex a, Vertex b) const { return (indep_[a] >> b) & 1U; }
  /// Vertices dependent on v, v included.
  VertexMask dependents(Vertex v) const { return dep_[v]; }
  VertexMask independents(Vertex v) const { return indep_[v]; }

  /// Vertices dependent on at least one vertex of m.
  VertexMask dep_closure(VertexMask m) const {
    VertexMask r = 0;
    for (; m; m &= m - 1) r |= dep_[std::countr_zero(m)];
    return r;
  }

  /// Clique cover: dependent pairs plus isolated vertices.
  const std::vector<VertexMask>& cliques() const noexcept { return cliques_; }

  bool has_involution() const {
    return std::any_of(bases_.begin(), bases_.end(),
                       [](const BaseGroup& g) { return g.has_involution(); });
  }

  void require_involution_free(const std::string& op) const {
    for (Vertex v = 0; v < sigma(); ++v)
      if (bases_[v].has_involution())
        throw UnsupportedGroup(op + ": base group of vertex '" + names_[v] +
                               "' has an element of order two");
  }

  bool is_raag() const {
    return std::all_of(bases_.begin(), bases_.end(), [](const BaseGroup& g) {
      return g.kind() == BaseGroup::Kind::Integer;
    });
  }

  void check_letter(const Letter& a) const {
    if (a.vertex >= sigma())
      throw SpecMismatch("letter refers to unknown vertex " + std::to_string(a.vertex));
    if (!bases_[a.vertex].contains(a.elem))
      throw SpecMismatch("letter element " + a.elem.code.str() + " is not a non-identity element of vertex '" +
                         names_[a.vertex] + "'");
  }

  void check_word(const GammaWord& w) const {
    for (const auto& a : w) check_letter(a);
  }

 private:
  std::vector<std::string> names_;
  std::vector<BaseGroup> bases_;
  std::vector<VertexMask> indep_;
  std::vector<VertexMask> dep_;
  std::vector<VertexMask> cliques_;
  VertexMask all_ = 0;
};

// ---------------------------------------------------------------------------
// Letter and word helpers

/// Total order on Gamma: vertex order first, then the base group order.
inline bool letter_less(const GraphProductSpec& spec, const Letter& a, const Letter& b) {
  if (a.vertex != b.vertex) return a.vertex < b.vertex;
  return spec.base(a.vertex).less(a.elem, b.elem);
}

/// Lexicographic comparison of words under the Gamma order.
inline bool word_less(const GraphProductSpec& spec, const GammaWord& u, const GammaWord& v) {
  return std::lexicographical_compare(
      u.begin(), u.end(), v.begin(), v.end(),
      [&](const Letter& a, const Letter& b) { return letter_less(spec, a, b); });
}

inline Letter inverse(const GraphProductSpec& spec, const Letter& a) {
  return {a.vertex, spec.base(a.vertex).invert(a.elem)};
}

inline GammaWord inverse(const GraphProductSpec& spec, const GammaWord& w) {
  GammaWord r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(inverse(spec, *it));
  return r;
}

/// [ab] for same-vertex letters, nullopt when it is the identity.
inline std::optional<Letter> merge(const GraphProductSpec& spec, const Letter& a, const Letter& b) {
  auto m = spec.base(a.vertex).multiply(a.elem, b.elem);
  if (!m) return std::nullopt;
  return Letter{a.vertex, std::move(*m)};
}

inline GammaWord concat(GammaWord u, const GammaWord& v) {
  u.insert(u.end(), v.begin(), v.end());
  return u;
}

inline GammaWord word_power(const GammaWord& w, std::size_t k) {
  GammaWord r;
  r.reserve(w.size() * k);
  for (std::size_t i = 0; i < k; ++i) r.insert(r.end(), w.begin(), w.end());
  return r;
}

inline VertexMask alph(const GammaWord& w) {
  VertexMask m = 0;
  for (const auto& a : w) m |= bit(a.vertex);
  return m;
}

/// Whether the dependence graph restricted to m is connected (empty counts as connected).
inline bool mask_connected(const GraphProductSpec& spec, VertexMask m) {
  if (!m) return true;
  VertexMask seen = m & (~m + 1);
  VertexMask frontier = seen;
  while (frontier) {
    VertexMask next = spec.dep_closure(frontier) & m & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == m;
}

// ---------------------------------------------------------------------------
// Trace operations

inline std::vector<GammaWord> projections(const GammaWord& u, const GraphProductSpec& spec) {
  spec.check_word(u);
  std::vector<GammaWord> out(spec.cliques().size());
  for (const auto& a : u)
    for (std::size_t i = 0; i < out.size(); ++i)
      if (spec.cliques()[i] & bit(a.vertex)) out[i].push_back(a);
  return out;
}

inline bool trace_equal(const GammaWord& u, const GammaWord& v, const GraphProductSpec& spec) {
  if (u.size() != v.size()) {
    spec.check_word(u);
    spec.check_word(v);
    return false;
  }
  return projections(u, spec) == projections(v, spec);
}

/// Positions of minimal letters (movable to the front).
inline std::vector<std::size_t> min_letters(const GammaWord& u, const GraphProductSpec& spec) {
  std::vector<std::size_t> out;
  VertexMask blocked = 0;  // vertices dependent on some earlier letter
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(blocked & bit(u[i].vertex))) out.push_back(i);
    blocked |= spec.dependents(u[i].vertex);
    if (blocked == spec.all()) break;
  }
  return out;
}

/// Positions of maximal letters (movable to the back), ascending.
inline std::vector<std::size_t> max_letters(const GammaWord& u, const GraphProductSpec& spec) {
  std::vector<std::size_t> out;
  VertexMask blocked = 0;
  for (std::size_t i = u.size(); i-- > 0;) {
    if (!(blocked & bit(u[i].vertex))) out.push_back(i);
    blocked |= spec.dependents(u[i].vertex);
    if (blocked == spec.all()) break;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

inline bool is_connected(const GammaWord& u, const GraphProductSpec& spec) {
  return mask_connected(spec, alph(u));
}

/// Distinct vertices in alph(u) >= 2.
inline bool is_composite(const GammaWord& u) { return std::popcount(alph(u)) >= 2; }

/// Splits u into its dependence components, ordered by smallest vertex.
inline std::vector<GammaWord> connected_components(const GammaWord& u, const GraphProductSpec& spec) {
  spec.check_word(u);
  VertexMask rest = alph(u);
  std::vector<GammaWord> out;
  while (rest) {
    VertexMask comp = rest & (~rest + 1);
    for (VertexMask frontier = comp; frontier;) {
      VertexMask next = spec.dep_closure(frontier) & rest & ~comp;
      comp |= next;
      frontier = next;
    }
    GammaWord w;
    for (const auto& a : u)
      if (comp & bit(a.vertex)) w.push_back(a);
    out.push_back(std::move(w));
    rest &= ~comp;
  }
  return out;
}

/// Whether v is a prefix of u as traces; on success `rest` holds u with v removed.
inline bool trace_prefix(const GammaWord& u, const GammaWord& v, const GraphProductSpec& spec,
                         GammaWord* rest = nullptr) {
  if (v.size() > u.size()) return false;
  std::vector<char> used(u.size(), 0);
  for (const auto& a : v) {
    VertexMask blocked = 0;
    bool found = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (used[i]) continue;
      if (u[i].vertex == a.vertex) {
        if (blocked & bit(a.vertex) || !(u[i] == a)) return false;
        used[i] = 1;
        found = true;
        break;
      }
      blocked |= spec.dependents(u[i].vertex);
      if (blocked & bit(a.vertex)) return false;
    }
    if (!found) return false;
  }
  if (rest) {
    rest->clear();
    for (std::size_t i = 0; i < u.size(); ++i)
      if (!used[i]) rest->push_back(u[i]);
  }
  return true;
}

/// Whether v is a suffix of u as traces; on success `rest` holds u with v removed.
inline bool trace_suffix(const GammaWord& u, const GammaWord& v, const GraphProductSpec& spec,
                         GammaWord* rest = nullptr) {
  GammaWord ur(u.rbegin(), u.rend()), vr(v.rbegin(), v.rend());
  GammaWord r;
  if (!trace_prefix(ur, vr, spec, rest ? &r : nullptr)) return false;
  if (rest) rest->assign(r.rbegin(), r.rend());
  return true;
}

}  // namespace gpw

#endif
