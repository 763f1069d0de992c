#ifndef GPW_PREPROCESS_HPP
#define GPW_PREPROCESS_HPP

#include <utility>

#include "gpw/graphproduct.hpp"
#include "gpw/symbolic.hpp"

namespace gpw {

namespace detail {

inline void append_plain(SymbolicWord& out, const GammaWord& w) {
  for (const auto& a : w) out.letters.emplace_back(a);
}

// A connected, cyclically reduced component raised to x.
inline void append_component_power(SymbolicWord& out, const GammaWord& comp, const BigInt& x,
                                   const GraphProductSpec& spec) {
  if (comp.size() == 1) {
    out.letters.emplace_back(SingleLetterPower{comp[0], x});
    return;
  }
  // comp = t5 q t5^-1, q = r^k, r^y = t6^-1 p^(iota y) t6
  const CyclicNormalForm cnf = cyclic_normal_form(comp, spec);
  const PrimitiveRoot root = primitive_root(cnf.u);
  const OmegaForm om = omega_canonicalize(root.r, spec);
  const GammaWord left = t_reduce(concat(cnf.conj, inverse(spec, om.t)), spec);
  append_plain(out, left);
  out.letters.emplace_back(PowerLetter{{}, om.p, x * root.k * om.iota, {}});
  append_plain(out, inverse(spec, left));
}

}  // namespace detail

/**
 * Rewrites a power word into a symbolic word whose powers have bases in
 * Omega: cyclic reduction, splitting into connected components, single
 * letter powers, cyclic normal forms with primitive roots, and Omega
 * representatives. Conjugators become plain letters around each power.
 */
inline SymbolicWord preprocess(const PowerWord& w, const GraphProductSpec& spec) {
  spec.require_involution_free("preprocess");
  SymbolicWord out;
  for (const auto& f : w.factors) {
    if (f.exponent == 0) continue;
    const GammaWord u = t_reduce(f.word, spec);
    if (u.empty()) continue;
    if (f.exponent == 1 || f.exponent == -1) {
      detail::append_plain(out, f.exponent > 0 ? u : inverse(spec, u));
      continue;
    }
    if (u.size() == 1) {
      out.letters.emplace_back(SingleLetterPower{u[0], f.exponent});
      continue;
    }
    const CyclicReduction cr = cyclically_reduce(u, spec);
    detail::append_plain(out, cr.y);
    for (const auto& comp : connected_components(cr.core, spec))
      detail::append_component_power(out, comp, f.exponent, spec);
    detail::append_plain(out, inverse(spec, cr.y));
  }
  return out;
}

}  // namespace gpw

#endif
