#ifndef GPW_GRAPHPRODUCT_HPP
#define GPW_GRAPHPRODUCT_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "gpw/errors.hpp"
#include "gpw/traces.hpp"

namespace gpw {

/// Appends a to the reduced word `out`, merging it with the same-vertex
/// letter it can commute back to, if any. Keeps `out` reduced.
inline void push_reduced(GammaWord& out, const Letter& a, const GraphProductSpec& spec) {
  for (std::size_t j = out.size(); j-- > 0;) {
    if (out[j].vertex == a.vertex) {
      if (auto m = merge(spec, out[j], a))
        out[j] = std::move(*m);
      else
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(j));
      return;
    }
    if (!spec.independent(out[j].vertex, a.vertex)) break;
  }
  out.push_back(a);
}

/// Some linearization of the reduced trace of u (stack with lookback).
inline GammaWord t_reduce(const GammaWord& u, const GraphProductSpec& spec) {
  spec.check_word(u);
  GammaWord out;
  out.reserve(u.size());
  for (const auto& a : u) push_reduced(out, a, spec);
  return out;
}

inline bool is_reduced(const GammaWord& u, const GraphProductSpec& spec) {
  return t_reduce(u, spec).size() == u.size();
}

/// Lexicographically smallest linearization of a trace.
inline GammaWord lex_linearization(const GammaWord& u, const GraphProductSpec& spec) {
  std::vector<char> done(u.size(), 0);
  GammaWord out;
  out.reserve(u.size());
  std::size_t first = 0;
  while (out.size() < u.size()) {
    while (done[first]) ++first;
    VertexMask blocked = 0;
    std::size_t best = u.size();
    for (std::size_t i = first; i < u.size() && blocked != spec.all(); ++i) {
      if (done[i]) continue;
      if (!(blocked & bit(u[i].vertex)) && (best == u.size() || letter_less(spec, u[i], u[best])))
        best = i;
      blocked |= spec.dependents(u[i].vertex);
    }
    done[best] = 1;
    out.push_back(u[best]);
  }
  return out;
}

inline GammaWord length_lex_nf(const GammaWord& u, const GraphProductSpec& spec) {
  return lex_linearization(t_reduce(u, spec), spec);
}

/// The reduced trace of u, returned as its lex-smallest linearization.
inline GammaWord t_normal_form(const GammaWord& u, const GraphProductSpec& spec) {
  return length_lex_nf(u, spec);
}

inline bool word_problem(const GammaWord& u, const GraphProductSpec& spec) {
  return t_reduce(u, spec).empty();
}

namespace detail {

// A (minimal, maximal) pair of distinct positions on the same vertex,
// smallest vertex first. Returns false when the trace is cyclically reduced.
inline bool find_peel_pair(const GammaWord& core, const GraphProductSpec& spec, std::size_t& i,
                           std::size_t& j) {
  const auto mins = min_letters(core, spec);
  const auto maxs = max_letters(core, spec);
  bool found = false;
  for (std::size_t a : mins)
    for (std::size_t b : maxs)
      if (a != b && core[a].vertex == core[b].vertex &&
          (!found || core[a].vertex < core[i].vertex)) {
        i = a;
        j = b;
        found = true;
      }
  return found;
}

}  // namespace detail

inline bool is_cyclically_reduced(const GammaWord& u, const GraphProductSpec& spec) {
  if (!is_reduced(u, spec)) return false;
  std::size_t i = 0, j = 0;
  return !detail::find_peel_pair(u, spec, i, j);
}

struct CyclicReduction {
  GammaWord y;     ///< conjugator, u =_G y core y^-1
  GammaWord core;  ///< cyclically reduced
};

/// Peels same-vertex (minimal, maximal) pairs until the core is cyclically
/// reduced. The core equals y^-1 u y in G, and y is a prefix of u.
inline CyclicReduction cyclically_reduce(const GammaWord& u, const GraphProductSpec& spec) {
  CyclicReduction r{{}, t_reduce(u, spec)};
  std::size_t i = 0, j = 0;
  while (detail::find_peel_pair(r.core, spec, i, j)) {
    const Letter a = r.core[i];
    const Letter b = r.core[j];
    GammaWord q;
    q.reserve(r.core.size());
    for (std::size_t k = 0; k < r.core.size(); ++k)
      if (k != i && k != j) q.push_back(r.core[k]);
    if (auto ba = merge(spec, b, a)) q.push_back(*ba);
    r.core = t_reduce(q, spec);
    r.y.push_back(a);
  }
  return r;
}

namespace detail {

inline void require_cc(const GammaWord& w, const GraphProductSpec& spec, const std::string& op) {
  spec.check_word(w);
  if (!is_composite(w)) throw DomainError(op + ": input is not composite");
  if (!is_connected(w, spec)) throw DomainError(op + ": input is not connected");
  if (!is_cyclically_reduced(w, spec)) throw DomainError(op + ": input is not cyclically reduced");
}

inline GammaWord rotate(const GammaWord& w, std::size_t k) {
  GammaWord r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

}  // namespace detail

struct CyclicNormalForm {
  GammaWord u;     ///< cyclic normal form
  GammaWord conj;  ///< rotation prefix; u =_G conj^-1 w conj
};

inline CyclicNormalForm cyclic_normal_form(const GammaWord& w, const GraphProductSpec& spec) {
  detail::require_cc(w, spec, "cyclic_normal_form");
  const std::size_t s = spec.sigma();
  const GammaWord wt = length_lex_nf(word_power(w, s), spec);
  const Vertex top = static_cast<Vertex>(63 - std::countl_zero(alph(w)));
  std::size_t k = 0;
  while (wt[k].vertex != top) ++k;
  GammaWord y(wt.begin(), wt.begin() + static_cast<std::ptrdiff_t>(k));
  const GammaWord n = length_lex_nf(detail::rotate(wt, k), spec);
  GammaWord u(n.begin(), n.begin() + static_cast<std::ptrdiff_t>(w.size()));
  if (n.size() != w.size() * s || n != word_power(u, s))
    throw InternalInvariant("cyclic_normal_form: rotated normal form is not a sigma-th power");
  return {std::move(u), std::move(y)};
}

inline bool is_length_lex_nf(const GammaWord& w, const GraphProductSpec& spec) {
  return length_lex_nf(w, spec) == w;
}

/// Composite word whose every cyclic permutation is a length-lex normal form.
inline bool is_cyclic_normal_form(const GammaWord& w, const GraphProductSpec& spec) {
  if (!is_composite(w)) return false;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (!is_length_lex_nf(detail::rotate(w, k), spec)) return false;
  return true;
}

struct PrimitiveRoot {
  GammaWord r;
  std::size_t k;
};

inline PrimitiveRoot primitive_root(const GammaWord& q) {
  const std::size_t n = q.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = q[i] == q[i - d];
    if (periodic) return {GammaWord(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(d)), n / d};
  }
  return {q, 1};
}

struct OmegaForm {
  GammaWord p;  ///< the element of Omega
  int iota;     ///< +1 or -1
  GammaWord t;  ///< p^x =_G t^-1 p^(iota x) t
};

/**
 * Canonical representative of the conjugacy classes of p and p^-1: the
 * lexicographically least cyclic permutation of p or of the cyclic normal
 * form of p^-1.
 */
inline OmegaForm omega_canonicalize(const GammaWord& p, const GraphProductSpec& spec) {
  spec.require_involution_free("omega_canonicalize");
  detail::require_cc(p, spec, "omega_canonicalize");
  if (primitive_root(p).k != 1) throw DomainError("omega_canonicalize: input is not primitive");
  const CyclicNormalForm inv = cyclic_normal_form(inverse(spec, p), spec);
  const std::size_t n = p.size();
  GammaWord best;
  int iota = 0;
  std::size_t rot = 0;
  auto consider = [&](const GammaWord& base, int sign) {
    for (std::size_t k = 0; k < n; ++k) {
      GammaWord c = detail::rotate(base, k);
      if (iota != 0 && c == best && sign != iota)
        throw InternalInvariant("omega_canonicalize: element conjugate to its inverse");
      if (iota == 0 || word_less(spec, c, best)) {
        best = std::move(c);
        iota = sign;
        rot = k;
      }
    }
  };
  consider(p, +1);
  consider(inv.u, -1);
  const GammaWord& src = iota > 0 ? p : inv.u;
  // src = A B and best = B A, so src = B^-1 best B.
  GammaWord t(src.begin() + static_cast<std::ptrdiff_t>(rot), src.end());
  if (iota < 0) t = t_reduce(concat(t, inverse(spec, inv.conj)), spec);
  GammaWord check = inverse(spec, t);
  check = concat(check, iota > 0 ? best : inverse(spec, best));
  check = concat(check, t);
  check = concat(check, inverse(spec, p));
  if (!word_problem(check, spec))
    throw InternalInvariant("omega_canonicalize: conjugator does not verify");
  return {std::move(best), iota, std::move(t)};
}

/// Whether p is in Omega: a primitive cyclic normal form that is least among
/// the cyclic permutations of itself and of the cyclic normal form of p^-1.
inline bool is_omega(const GammaWord& p, const GraphProductSpec& spec) {
  if (!is_composite(p) || !is_connected(p, spec) || !is_cyclically_reduced(p, spec)) return false;
  if (!is_cyclic_normal_form(p, spec) || primitive_root(p).k != 1) return false;
  return omega_canonicalize(p, spec).p == p;
}

/// Conjugacy of cyclically reduced, connected, composite elements.
inline bool conjugate_cc(const GammaWord& u, const GammaWord& v, const GraphProductSpec& spec) {
  detail::require_cc(u, spec, "conjugate_cc");
  detail::require_cc(v, spec, "conjugate_cc");
  if (u.size() != v.size()) return false;
  const GammaWord cu = cyclic_normal_form(u, spec).u;
  const GammaWord cv = cyclic_normal_form(v, spec).u;
  for (std::size_t k = 0; k < cv.size(); ++k)
    if (detail::rotate(cv, k) == cu) return true;
  return false;
}

}  // namespace gpw

#endif
