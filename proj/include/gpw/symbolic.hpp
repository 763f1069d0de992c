#ifndef GPW_SYMBOLIC_HPP
#define GPW_SYMBOLIC_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "gpw/bigint.hpp"
#include "gpw/graphproduct.hpp"
#include "gpw/traces.hpp"

namespace gpw {

/// A factor u^x of a power word; plain segments use exponent 1.
struct Factor {
  GammaWord word;
  BigInt exponent;
};

struct PowerWord {
  std::vector<Factor> factors;
};

/// (beta, base^exp, alpha) with base in Omega.
struct PowerLetter {
  GammaWord beta;
  GammaWord base;
  BigInt exp;
  GammaWord alpha;

  friend bool operator==(const PowerLetter&, const PowerLetter&) = default;
};

/// A letter of Gamma x Z: stands for [letter^exp].
struct SingleLetterPower {
  Letter letter;
  BigInt exp;

  friend bool operator==(const SingleLetterPower&, const SingleLetterPower&) = default;
};

using SymbolicLetter = std::variant<Letter, PowerLetter, SingleLetterPower>;

struct SymbolicWord {
  std::vector<SymbolicLetter> letters;

  std::size_t delta_length() const { return letters.size(); }

  /// Longest Power base, 2 when there is none.
  std::size_t mu() const {
    std::size_t m = 2;
    for (const auto& l : letters)
      if (auto* p = std::get_if<PowerLetter>(&l)) m = std::max(m, p->base.size());
    return m;
  }

  friend bool operator==(const SymbolicWord&, const SymbolicWord&) = default;
};

inline bool is_power(const SymbolicLetter& l) { return std::holds_alternative<PowerLetter>(l); }

/// base^sign(exp) as a word; for exp = 0 the base itself.
inline GammaWord oriented_base(const PowerLetter& p, const GraphProductSpec& spec) {
  return p.exp < 0 ? inverse(spec, p.base) : p.base;
}

inline VertexMask letter_alph(const SymbolicLetter& l) {
  if (auto* p = std::get_if<PowerLetter>(&l)) return alph(p->base);
  if (auto* a = std::get_if<Letter>(&l)) return bit(a->vertex);
  return bit(std::get<SingleLetterPower>(l).letter.vertex);
}

/// pi of one letter with the power truncated to at most `cap` copies.
inline GammaWord materialize(const SymbolicLetter& l, const GraphProductSpec& spec,
                             std::size_t cap = std::numeric_limits<std::size_t>::max()) {
  if (auto* a = std::get_if<Letter>(&l)) return {*a};
  if (auto* s = std::get_if<SingleLetterPower>(&l)) {
    auto e = spec.base(s->letter.vertex).power(s->letter.elem, s->exp);
    if (!e) return {};
    return {Letter{s->letter.vertex, std::move(*e)}};
  }
  const auto& p = std::get<PowerLetter>(l);
  const BigInt n = abs_big(p.exp);
  const std::size_t c = n > cap ? cap : static_cast<std::size_t>(n);
  GammaWord out = p.beta;
  const GammaWord b = oriented_base(p, spec);
  for (std::size_t k = 0; k < c; ++k) out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), p.alpha.begin(), p.alpha.end());
  return out;
}

/// pi of a whole symbolic word, each power truncated to `cap` copies.
inline GammaWord materialize(const SymbolicWord& w, const GraphProductSpec& spec,
                             std::size_t cap = std::numeric_limits<std::size_t>::max()) {
  GammaWord out;
  for (const auto& l : w.letters) {
    GammaWord m = materialize(l, spec, cap);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

/// Letter count of the full expansion of w.
inline BigInt expanded_length(const SymbolicWord& w) {
  BigInt n = 0;
  for (const auto& l : w.letters) {
    if (auto* p = std::get_if<PowerLetter>(&l))
      n += p->beta.size() + p->alpha.size() + abs_big(p->exp) * p->base.size();
    else
      n += 1;
  }
  return n;
}

inline BigInt expanded_length(const PowerWord& w) {
  BigInt n = 0;
  for (const auto& f : w.factors) n += abs_big(f.exponent) * f.word.size();
  return n;
}

/// Full expansion of a power word (no size check).
inline GammaWord expand(const PowerWord& w, const GraphProductSpec& spec) {
  GammaWord out;
  for (const auto& f : w.factors) {
    const GammaWord b = f.exponent < 0 ? inverse(spec, f.word) : f.word;
    const BigInt n = abs_big(f.exponent);
    for (BigInt k = 0; k < n; ++k) out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

}  // namespace gpw

#endif
