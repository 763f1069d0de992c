#ifndef GPW_SIMPLE_PWP_HPP
#define GPW_SIMPLE_PWP_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gpw/graphproduct.hpp"

namespace gpw {

/// a^x for a single letter a.
struct SimpleFactor {
  Letter letter;
  BigInt exponent;
};

using SimplePowerWord = std::vector<SimpleFactor>;

inline GammaWord evaluate(const SimplePowerWord& w, const GraphProductSpec& spec) {
  GammaWord out;
  out.reserve(w.size());
  for (const auto& f : w) {
    spec.check_letter(f.letter);
    if (auto e = spec.base(f.letter.vertex).power(f.letter.elem, f.exponent))
      out.push_back({f.letter.vertex, std::move(*e)});
  }
  return out;
}

inline bool simple_pwp_direct(const SimplePowerWord& w, const GraphProductSpec& spec) {
  return word_problem(evaluate(w, spec), spec);
}

/**
 * Sparse vector over the basis Gamma + {chi}. Per vertex the coefficients
 * are stored under a translation offset so that sigma_a costs O(sigma + log n)
 * for cyclic and integer vertices.
 */
class SigmaVector {
 public:
  using Basis = std::optional<Letter>;  ///< nullopt is chi

  explicit SigmaVector(const GraphProductSpec& spec) : spec_(&spec), blocks_(spec.sigma()) {}

  static SigmaVector chi(const GraphProductSpec& spec) {
    SigmaVector v(spec);
    v.chi_ = 1;
    return v;
  }

  void add(const Basis& b, const BigInt& c) {
    if (c == 0) return;
    if (!b) {
      chi_ += c;
      return;
    }
    spec_->check_letter(*b);
    Block& blk = blocks_[b->vertex];
    const BigInt key = stored(b->vertex, b->elem.code);
    auto [it, fresh] = blk.entries.emplace(key, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) blk.entries.erase(it);
    }
    blk.total += c;
  }

  BigInt coefficient(const Basis& b) const {
    if (!b) return chi_;
    const Block& blk = blocks_.at(b->vertex);
    auto it = blk.entries.find(stored(b->vertex, b->elem.code));
    return it == blk.entries.end() ? BigInt(0) : it->second;
  }

  /// Entries with nonzero coefficient, chi first, then by (vertex, code).
  std::vector<std::pair<Basis, BigInt>> entries() const {
    std::vector<std::pair<Basis, BigInt>> out;
    if (chi_ != 0) out.emplace_back(std::nullopt, chi_);
    for (Vertex v = 0; v < blocks_.size(); ++v) {
      std::vector<std::pair<Basis, BigInt>> part;
      for (const auto& [k, c] : blocks_[v].entries) part.emplace_back(Letter{v, {actual(v, k)}}, c);
      std::sort(part.begin(), part.end(),
                [](const auto& x, const auto& y) { return x.first->elem.code < y.first->elem.code; });
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  bool is_chi() const {
    if (chi_ != 1) return false;
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.entries.empty(); });
  }

  /// In-place sigma_a.
  void apply(const Letter& a) {
    spec_->check_letter(a);
    const Vertex z = a.vertex;
    Block& blk = blocks_[z];
    const BigInt same = blk.total;
    BigInt dep = chi_;
    for (VertexMask m = spec_->dependents(z) & ~bit(z); m; m &= m - 1)
      dep += blocks_[static_cast<std::size_t>(std::countr_zero(m))].total;
    // b -> [ab] for every b on vertex z; the entry landing on 1 disappears.
    const BaseGroup& g = spec_->base(z);
    switch (g.kind()) {
      case BaseGroup::Kind::Integer: blk.offset += a.elem.code; break;
      case BaseGroup::Kind::CyclicOdd: blk.offset = floor_mod(blk.offset + a.elem.code, g.modulus()); break;
      case BaseGroup::Kind::FiniteTable: {
        std::map<BigInt, BigInt> moved;
        for (auto& [k, c] : blk.entries) {
          auto m = g.multiply(a.elem, BaseElement{k});
          moved.emplace(m ? m->code : BigInt(0), std::move(c));
        }
        blk.entries.swap(moved);
        break;
      }
    }
    if (auto it = blk.entries.find(stored(z, 0)); it != blk.entries.end()) {
      blk.total -= it->second;
      blk.entries.erase(it);
    }
    add(a, 2 * dep - same);
  }

  friend SigmaVector operator+(SigmaVector x, const SigmaVector& y) {
    for (const auto& [b, c] : y.entries()) x.add(b, c);
    return x;
  }

  friend bool operator==(const SigmaVector& x, const SigmaVector& y) {
    const auto ex = x.entries(), ey = y.entries();
    if (ex.size() != ey.size()) return false;
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex[i].first != ey[i].first || ex[i].second != ey[i].second) return false;
    return true;
  }

 private:
  struct Block {
    std::map<BigInt, BigInt> entries;
    BigInt offset = 0;
    BigInt total = 0;
  };

  BigInt stored(Vertex v, const BigInt& code) const {
    const BaseGroup& g = spec_->base(v);
    switch (g.kind()) {
      case BaseGroup::Kind::Integer: return code - blocks_[v].offset;
      case BaseGroup::Kind::CyclicOdd: return floor_mod(code - blocks_[v].offset, g.modulus());
      case BaseGroup::Kind::FiniteTable: return code;
    }
    return code;
  }

  BigInt actual(Vertex v, const BigInt& key) const {
    const BaseGroup& g = spec_->base(v);
    switch (g.kind()) {
      case BaseGroup::Kind::Integer: return key + blocks_[v].offset;
      case BaseGroup::Kind::CyclicOdd: return floor_mod(key + blocks_[v].offset, g.modulus());
      case BaseGroup::Kind::FiniteTable: return key;
    }
    return key;
  }

  const GraphProductSpec* spec_;
  BigInt chi_ = 0;
  std::vector<Block> blocks_;
};

inline SigmaVector sigma_apply(const Letter& a, SigmaVector v) {
  v.apply(a);
  return v;
}

/// sigma_w(chi) == chi, with the rightmost letter applied first.
inline bool sigma_check(const SimplePowerWord& w, const GraphProductSpec& spec) {
  const GammaWord b = evaluate(w, spec);
  SigmaVector v = SigmaVector::chi(spec);
  for (auto it = b.rbegin(); it != b.rend(); ++it) v.apply(*it);
  return v.is_chi();
}

}  // namespace gpw

#endif
