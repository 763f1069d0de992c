#ifndef GPW_REWRITING_HPP
#define GPW_REWRITING_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gpw/graphproduct.hpp"
#include "gpw/symbolic.hpp"

namespace gpw {

/// Counters and the largest observed rule parameters of an R run.
struct RStats {
  std::size_t steps = 0;   ///< applications of rules 1-7
  std::size_t budget = 0;  ///< 10 sigma^2 |w|^2 mu(w) of the input
  std::array<std::size_t, 8> by_rule{};  ///< index 0 counts Gamma x Z evaluations
  std::size_t max_f = 0;    ///< rule 1, |f|
  std::size_t max_de2 = 0;  ///< rule 2, max(d, e)
  std::size_t max_de3 = 0;  ///< rule 3, max(d, e)
  std::size_t max_d56 = 0;  ///< rules 5 and 6, d
  std::size_t splits = 0;   ///< rule 1 results re-split into plain boundary letters
};

struct RStep {
  SymbolicWord word;
  int rule;  ///< 1-7, or 0 for evaluating Gamma x Z letters
};

namespace detail {

/// Exponent f with w =_M base^f for a reduced w, if any.
inline std::optional<long long> power_of_base(const GammaWord& w, const GammaWord& base,
                                              const GraphProductSpec& spec) {
  if (w.empty()) return 0;
  if (base.empty() || w.size() % base.size()) return std::nullopt;
  const std::size_t f = w.size() / base.size();
  if (trace_equal(w, word_power(base, f), spec)) return static_cast<long long>(f);
  if (trace_equal(w, word_power(inverse(spec, base), f), spec)) return -static_cast<long long>(f);
  return std::nullopt;
}

/// Splits w = P^m rest with m maximal.
inline std::size_t strip_prefix_powers(GammaWord& w, const GammaWord& p, const GraphProductSpec& spec) {
  std::size_t m = 0;
  GammaWord rest;
  while (!p.empty() && trace_prefix(w, p, spec, &rest)) {
    w.swap(rest);
    ++m;
  }
  return m;
}

/// Splits w = rest P^m with m maximal.
inline std::size_t strip_suffix_powers(GammaWord& w, const GammaWord& p, const GraphProductSpec& spec) {
  std::size_t m = 0;
  GammaWord rest;
  while (!p.empty() && trace_suffix(w, p, spec, &rest)) {
    w.swap(rest);
    ++m;
  }
  return m;
}

inline BigInt step_toward_zero(const BigInt& x, std::size_t d) {
  return x > 0 ? BigInt(x - d) : BigInt(x + d);
}

class RuleEngine {
 public:
  RuleEngine(const SymbolicWord& w, const GraphProductSpec& spec, RStats* stats)
      : w_(w), spec_(spec), stats_(stats), n_(w.letters.size()) {
    alph_.reserve(n_);
    dep_.reserve(n_);
    for (const auto& l : w_.letters) {
      alph_.push_back(letter_alph(l));
      dep_.push_back(spec_.dep_closure(alph_.back()));
    }
  }

  std::optional<RStep> step() {
    if (auto r = evaluate_single_letter_powers()) return r;
    if (auto r = rule1()) return r;
    if (auto r = rule4()) return r;
    if (auto r = rule7()) return r;
    if (auto r = rule5()) return r;
    if (auto r = rule6()) return r;
    if (auto r = rule23(true)) return r;
    if (auto r = rule23(false)) return r;
    return std::nullopt;
  }

 private:
  const PowerLetter* power(std::size_t i) const { return std::get_if<PowerLetter>(&w_.letters[i]); }
  const Letter* plain(std::size_t i) const { return std::get_if<Letter>(&w_.letters[i]); }

  [[noreturn]] void fail(const std::string& what) const {
    throw InternalInvariant("R: " + what);
  }

  // Positions j > i such that t_i t_j can be made a factor by commutations.
  std::vector<std::size_t> adjacent_after(std::size_t i) const {
    std::vector<std::size_t> out;
    VertexMask inner = 0;       // dependents of letters strictly between that are above t_i
    VertexMask reach = dep_[i];  // dependents of t_i and of those letters
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!(alph_[j] & inner)) out.push_back(j);
      if (alph_[j] & reach) {
        inner |= dep_[j];
        reach |= dep_[j];
      }
      if (inner == spec_.all()) break;
    }
    return out;
  }

  // Letters strictly between i and j that lie above t_i (A) and below t_j (Z).
  void between(std::size_t i, std::size_t j, std::vector<char>& above, std::vector<char>& below) const {
    above.assign(n_, 0);
    below.assign(n_, 0);
    VertexMask reach = dep_[i];
    for (std::size_t k = i + 1; k < j; ++k)
      if (alph_[k] & reach) {
        above[k] = 1;
        reach |= dep_[k];
      }
    reach = dep_[j];
    for (std::size_t k = j; k-- > i + 1;)
      if (alph_[k] & reach) {
        below[k] = 1;
        reach |= dep_[k];
      }
  }

  // Replaces t_i ... t_j by `mid`: letters between that are not above t_i go
  // in front, letters above t_i but not below t_j go behind. Letters in both
  // sets must already be part of `mid`.
  SymbolicWord rebuild(std::size_t i, std::size_t j, std::vector<SymbolicLetter> mid) const {
    std::vector<char> above, below;
    between(i, j, above, below);
    SymbolicWord out;
    out.letters.reserve(n_ + mid.size());
    for (std::size_t k = 0; k < i; ++k) out.letters.push_back(w_.letters[k]);
    for (std::size_t k = i + 1; k < j; ++k)
      if (!above[k]) out.letters.push_back(w_.letters[k]);
    for (auto& l : mid) out.letters.push_back(std::move(l));
    for (std::size_t k = i + 1; k < j; ++k)
      if (above[k] && !below[k]) out.letters.push_back(w_.letters[k]);
    for (std::size_t k = j + 1; k < n_; ++k) out.letters.push_back(w_.letters[k]);
    return out;
  }

  SymbolicWord replace_at(std::size_t i, std::vector<SymbolicLetter> mid) const {
    SymbolicWord out;
    out.letters.reserve(n_ + mid.size());
    for (std::size_t k = 0; k < i; ++k) out.letters.push_back(w_.letters[k]);
    for (auto& l : mid) out.letters.push_back(std::move(l));
    for (std::size_t k = i + 1; k < n_; ++k) out.letters.push_back(w_.letters[k]);
    return out;
  }

  RStep done(SymbolicWord w, int rule) const {
    if (stats_) {
      ++stats_->by_rule[static_cast<std::size_t>(rule)];
      if (rule) ++stats_->steps;
    }
    return {std::move(w), rule};
  }

  // Whether (beta, base^exp, alpha) satisfies the boundary invariants.
  bool boundary_valid(const PowerLetter& p) const {
    if (p.exp == 0) return true;
    const GammaWord b = oriented_base(p, spec_);
    const std::size_t lim = (spec_.sigma() - 1) * b.size();
    if (!p.alpha.empty() && p.alpha.size() >= lim) return false;
    if (!p.beta.empty() && p.beta.size() >= lim) return false;
    const GammaWord bs = word_power(b, spec_.sigma());
    if (!p.alpha.empty() && (!trace_prefix(bs, p.alpha, spec_) || trace_prefix(p.alpha, b, spec_)))
      return false;
    if (!p.beta.empty() && (!trace_suffix(bs, p.beta, spec_) || trace_suffix(p.beta, b, spec_)))
      return false;
    return true;
  }

  void require_valid(const PowerLetter& p, int rule) const {
    if (!boundary_valid(p)) fail("rule " + std::to_string(rule) + " produced a letter outside Delta'");
  }

  std::optional<RStep> evaluate_single_letter_powers() const {
    bool any = false;
    for (const auto& l : w_.letters) any |= std::holds_alternative<SingleLetterPower>(l);
    if (!any) return std::nullopt;
    SymbolicWord out;
    for (const auto& l : w_.letters) {
      if (std::holds_alternative<SingleLetterPower>(l)) {
        for (auto& a : materialize(l, spec_)) out.letters.emplace_back(std::move(a));
      } else {
        out.letters.push_back(l);
      }
    }
    return done(std::move(out), 0);
  }

  // (beta,p^x,alpha)(delta,p^y,gamma) -> (beta,p^(x+y+f),gamma) if alpha delta ->* p^f
  std::optional<RStep> rule1() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const PowerLetter* a = power(i);
      if (!a) continue;
      for (std::size_t j : adjacent_after(i)) {
        const PowerLetter* b = power(j);
        if (!b || b->base != a->base) continue;
        const auto f = power_of_base(t_reduce(concat(a->alpha, b->beta), spec_), a->base, spec_);
        if (!f) continue;
        const std::size_t af = static_cast<std::size_t>(*f < 0 ? -*f : *f);
        if (af > 2 * spec_.sigma()) fail("rule 1 exponent shift exceeds 2 sigma");
        if (stats_) stats_->max_f = std::max(stats_->max_f, af);
        PowerLetter m{a->beta, a->base, a->exp + b->exp + *f, b->alpha};
        std::vector<SymbolicLetter> mid;
        if (boundary_valid(m)) {
          mid.emplace_back(std::move(m));
        } else {
          if (stats_) ++stats_->splits;
          for (const auto& l : m.beta) mid.emplace_back(l);
          mid.emplace_back(PowerLetter{{}, m.base, m.exp, {}});
          for (const auto& l : m.alpha) mid.emplace_back(l);
        }
        return done(rebuild(i, j, std::move(mid)), 1);
      }
    }
    return std::nullopt;
  }

  // (beta,p^0,alpha) -> beta alpha
  std::optional<RStep> rule4() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const PowerLetter* a = power(i);
      if (!a || a->exp != 0) continue;
      std::vector<SymbolicLetter> mid;
      for (const auto& l : a->beta) mid.emplace_back(l);
      for (const auto& l : a->alpha) mid.emplace_back(l);
      return done(replace_at(i, std::move(mid)), 4);
    }
    return std::nullopt;
  }

  // ab -> [ab]
  std::optional<RStep> rule7() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const Letter* a = plain(i);
      if (!a) continue;
      for (std::size_t j : adjacent_after(i)) {
        const Letter* b = plain(j);
        if (!b || b->vertex != a->vertex) continue;
        std::vector<SymbolicLetter> mid;
        if (auto m = merge(spec_, *a, *b)) mid.emplace_back(std::move(*m));
        return done(rebuild(i, j, std::move(mid)), 7);
      }
    }
    return std::nullopt;
  }

  // a(beta,p^x,alpha) -> a'(beta',p^(x-d),alpha) with a beta p^x ->_T a' beta' p^(x-d)
  std::optional<RStep> rule5() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const Letter* a = plain(i);
      if (!a) continue;
      for (std::size_t j : adjacent_after(i)) {
        const PowerLetter* p = power(j);
        if (!p || !(alph_[j] & bit(a->vertex))) continue;
        const GammaWord b = oriented_base(*p, spec_);
        const std::size_t c = abs_big(p->exp) > 2 ? 2 : static_cast<std::size_t>(abs_big(p->exp));
        GammaWord m = p->beta;
        for (std::size_t k = 0; k < c; ++k) m.insert(m.end(), b.begin(), b.end());
        std::size_t pos = m.size();
        for (std::size_t q : min_letters(m, spec_))
          if (m[q].vertex == a->vertex) pos = q;
        if (pos == m.size()) continue;
        auto merged = merge(spec_, *a, m[pos]);
        m.erase(m.begin() + static_cast<std::ptrdiff_t>(pos));
        const std::size_t left = strip_suffix_powers(m, b, spec_);
        if (left > c || c - left > 1) fail("rule 5 consumed more than one period");
        const std::size_t d = c - left;
        if (stats_) stats_->max_d56 = std::max(stats_->max_d56, d);
        PowerLetter np{std::move(m), p->base, step_toward_zero(p->exp, d), p->alpha};
        require_valid(np, 5);
        std::vector<SymbolicLetter> mid;
        if (merged) mid.emplace_back(std::move(*merged));
        mid.emplace_back(std::move(np));
        return done(rebuild(i, j, std::move(mid)), 5);
      }
    }
    return std::nullopt;
  }

  // (beta,p^x,alpha)b -> (beta,p^(x-d),alpha')a' with p^x alpha b ->_T p^(x-d) alpha' a'
  std::optional<RStep> rule6() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const PowerLetter* p = power(i);
      if (!p) continue;
      for (std::size_t j : adjacent_after(i)) {
        const Letter* a = plain(j);
        if (!a || !(alph_[i] & bit(a->vertex))) continue;
        const GammaWord b = oriented_base(*p, spec_);
        const std::size_t c = abs_big(p->exp) > 2 ? 2 : static_cast<std::size_t>(abs_big(p->exp));
        GammaWord m;
        for (std::size_t k = 0; k < c; ++k) m.insert(m.end(), b.begin(), b.end());
        m.insert(m.end(), p->alpha.begin(), p->alpha.end());
        std::size_t pos = m.size();
        for (std::size_t q : max_letters(m, spec_))
          if (m[q].vertex == a->vertex) pos = q;
        if (pos == m.size()) continue;
        auto merged = merge(spec_, m[pos], *a);
        m.erase(m.begin() + static_cast<std::ptrdiff_t>(pos));
        const std::size_t left = strip_prefix_powers(m, b, spec_);
        if (left > c || c - left > 1) fail("rule 6 consumed more than one period");
        const std::size_t d = c - left;
        if (stats_) stats_->max_d56 = std::max(stats_->max_d56, d);
        PowerLetter np{p->beta, p->base, step_toward_zero(p->exp, d), std::move(m)};
        require_valid(np, 6);
        std::vector<SymbolicLetter> mid;
        mid.emplace_back(std::move(np));
        if (merged) mid.emplace_back(std::move(*merged));
        return done(rebuild(i, j, std::move(mid)), 6);
      }
    }
    return std::nullopt;
  }

  // Rules 2 (same base) and 3 (different bases):
  // (beta,p^x,alpha) u (delta,q^y,gamma) -> (beta,p^(x-d),alpha') v u (delta',q^(y-e),gamma)
  std::optional<RStep> rule23(bool same_base) const {
    std::vector<char> above, below;
    for (std::size_t i = 0; i < n_; ++i) {
      const PowerLetter* p = power(i);
      if (!p) continue;
      for (std::size_t j = i + 1; j < n_; ++j) {
        const PowerLetter* q = power(j);
        if (!q || (p->base == q->base) != same_base) continue;
        if (!(alph_[i] & alph_[j])) continue;
        between(i, j, above, below);
        std::vector<std::size_t> u;
        for (std::size_t k = i + 1; k < j; ++k)
          if (above[k] && below[k]) u.push_back(k);
        if (auto r = try_rule23(i, j, u, same_base ? 2 : 3)) return r;
      }
    }
    return std::nullopt;
  }

  std::optional<RStep> try_rule23(std::size_t i, std::size_t j, const std::vector<std::size_t>& u,
                                  int rule) const {
    const PowerLetter& p = *power(i);
    const PowerLetter& q = *power(j);
    GammaWord uw;
    VertexMask ualph = 0;
    for (std::size_t k : u) {
      GammaWord m = materialize(w_.letters[k], spec_, 2);
      uw.insert(uw.end(), m.begin(), m.end());
      ualph |= alph_[k];
    }
    const VertexMask udep = spec_.dep_closure(alph(uw));
    const VertexMask shared = alph_[i] & alph_[j] & ~udep;
    if (!shared) return std::nullopt;

    const GammaWord pb = oriented_base(p, spec_);
    const GammaWord qb = oriented_base(q, spec_);
    const std::size_t sigma = spec_.sigma();

    // Cheap look at the interface before materializing long prefixes.
    {
      GammaWord l = materialize(w_.letters[i], spec_, 2);
      GammaWord r = materialize(w_.letters[j], spec_, 2);
      VertexMask lm = 0, rm = 0;
      for (std::size_t k : max_letters(l, spec_)) lm |= bit(l[k].vertex);
      for (std::size_t k : min_letters(r, spec_)) rm |= bit(r[k].vertex);
      if (!(lm & rm & shared)) return std::nullopt;
      if (!is_reduced(concat(l, uw), spec_) || !is_reduced(concat(uw, r), spec_)) return std::nullopt;
    }
    if (rule == 2) {
      const bool commutes = !(spec_.dep_closure(alph_[i]) & ualph);
      if (commutes && power_of_base(t_reduce(concat(p.alpha, q.beta), spec_), p.base, spec_))
        return std::nullopt;
    }

    const std::size_t cap =
        rule == 2 ? 6 * sigma : 4 * sigma * std::max(p.base.size(), q.base.size()) + sigma;
    const std::size_t bound_d = rule == 2 ? 5 * sigma : 4 * sigma * q.base.size();
    const std::size_t bound_e = rule == 2 ? 5 * sigma : 4 * sigma * p.base.size();
    const auto copies = [&](const BigInt& x) {
      const BigInt a = abs_big(x);
      return a > cap ? cap : static_cast<std::size_t>(a);
    };
    const std::size_t c1 = copies(p.exp), c2 = copies(q.exp);
    GammaWord left;
    for (std::size_t k = 0; k < c1; ++k) left.insert(left.end(), pb.begin(), pb.end());
    left.insert(left.end(), p.alpha.begin(), p.alpha.end());
    GammaWord right = q.beta;
    for (std::size_t k = 0; k < c2; ++k) right.insert(right.end(), qb.begin(), qb.end());

    std::vector<Letter> v;
    if (!cancel(left, right, udep, shared, v)) return std::nullopt;

    const std::size_t m1 = strip_prefix_powers(left, pb, spec_);
    const std::size_t m2 = strip_suffix_powers(right, qb, spec_);
    if (m1 > c1 || m2 > c2) fail("rule " + std::to_string(rule) + " read-back grew a power");
    const std::size_t d = c1 - m1, e = c2 - m2;
    if (d > bound_d || e > bound_e)
      fail("rule " + std::to_string(rule) + " cancellation exceeds its bound");
    if (stats_) {
      auto& mx = rule == 2 ? stats_->max_de2 : stats_->max_de3;
      mx = std::max({mx, d, e});
    }
    PowerLetter np{p.beta, p.base, step_toward_zero(p.exp, d), std::move(left)};
    PowerLetter nq{std::move(right), q.base, step_toward_zero(q.exp, e), q.alpha};
    require_valid(np, rule);
    require_valid(nq, rule);
    std::vector<SymbolicLetter> mid;
    mid.emplace_back(std::move(np));
    for (auto& a : v) mid.emplace_back(std::move(a));
    for (std::size_t k : u) mid.push_back(w_.letters[k]);
    mid.emplace_back(std::move(nq));
    return done(rebuild(i, j, std::move(mid)), rule);
  }

  // Cancels maximal letters of `left` against minimal letters of `right`
  // through a middle part whose dependents are `blocked`. Merged letters
  // that survive are collected in v. Returns whether anything happened.
  bool cancel(GammaWord& left, GammaWord& right, VertexMask blocked, VertexMask shared,
              std::vector<Letter>& v) const {
    const std::size_t s = spec_.sigma();
    std::vector<std::vector<std::size_t>> lpos(s);
    std::vector<std::deque<std::size_t>> rpos(s);
    for (std::size_t k = 0; k < left.size(); ++k) lpos[left[k].vertex].push_back(k);
    for (std::size_t k = 0; k < right.size(); ++k) rpos[right[k].vertex].push_back(k);
    std::vector<char> lgone(left.size(), 0), rgone(right.size(), 0);
    auto is_max = [&](Vertex z) {
      if (lpos[z].empty()) return false;
      const std::size_t at = lpos[z].back();
      for (VertexMask m = spec_.dependents(z) & ~bit(z); m; m &= m - 1) {
        const auto x = static_cast<Vertex>(std::countr_zero(m));
        if (!lpos[x].empty() && lpos[x].back() > at) return false;
      }
      return true;
    };
    auto is_min = [&](Vertex z) {
      if (rpos[z].empty()) return false;
      const std::size_t at = rpos[z].front();
      for (VertexMask m = spec_.dependents(z) & ~bit(z); m; m &= m - 1) {
        const auto x = static_cast<Vertex>(std::countr_zero(m));
        if (!rpos[x].empty() && rpos[x].front() < at) return false;
      }
      return true;
    };
    bool any = false;
    for (bool progress = true; progress;) {
      progress = false;
      for (VertexMask m = shared & ~blocked; m; m &= m - 1) {
        const auto z = static_cast<Vertex>(std::countr_zero(m));
        if (!is_max(z) || !is_min(z)) continue;
        const std::size_t a = lpos[z].back(), b = rpos[z].front();
        lpos[z].pop_back();
        rpos[z].pop_front();
        lgone[a] = rgone[b] = 1;
        if (auto c = merge(spec_, left[a], right[b])) {
          v.push_back(std::move(*c));
          blocked |= spec_.dependents(z);
        }
        progress = any = true;
        break;
      }
    }
    if (!any) return false;
    GammaWord l2, r2;
    for (std::size_t k = 0; k < left.size(); ++k)
      if (!lgone[k]) l2.push_back(left[k]);
    for (std::size_t k = 0; k < right.size(); ++k)
      if (!rgone[k]) r2.push_back(right[k]);
    left.swap(l2);
    right.swap(r2);
    std::sort(v.begin(), v.end(), [](const Letter& x, const Letter& y) { return x.vertex < y.vertex; });
    return true;
  }

  const SymbolicWord& w_;
  const GraphProductSpec& spec_;
  RStats* stats_;
  std::size_t n_;
  std::vector<VertexMask> alph_;
  std::vector<VertexMask> dep_;
};

}  // namespace detail

/// One R step under the priority 1 > 4 > 7 > 5 > 6 > 2 > 3, leftmost first.
/// Gamma x Z letters are first evaluated to plain letters (reported as rule 0).
inline std::optional<RStep> r_apply_once(const SymbolicWord& w, const GraphProductSpec& spec,
                                         RStats* stats = nullptr) {
  return detail::RuleEngine(w, spec, stats).step();
}

inline std::size_t r_step_budget(const SymbolicWord& w, const GraphProductSpec& spec) {
  const std::size_t s = spec.sigma(), n = w.delta_length();
  return 10 * s * s * n * n * w.mu();
}

using RObserver = std::function<void(const SymbolicWord& before, const RStep& after)>;

inline SymbolicWord r_normal_form(SymbolicWord w, const GraphProductSpec& spec, RStats* stats = nullptr,
                                  const RObserver& observe = {}) {
  RStats local;
  RStats& st = stats ? *stats : local;
  st.budget = r_step_budget(w, spec);
  const std::size_t start = st.steps;
  while (auto next = r_apply_once(w, spec, &st)) {
    if (st.steps - start > st.budget) throw InternalInvariant("R: step budget exceeded");
    if (observe) observe(w, *next);
    w = std::move(next->word);
  }
  return w;
}

}  // namespace gpw

#endif
