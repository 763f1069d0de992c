#ifndef GPW_TESTS_SUPPORT_HPP
#define GPW_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gpw/gpw.hpp"

namespace gpw {

inline void PrintTo(const Letter& a, std::ostream* os) { *os << a.vertex << ":" << a.elem.code; }

}  // namespace gpw

namespace gpwtest {

using namespace gpw;
using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline GraphProductSpec make_spec(const std::vector<BaseGroup>& bases,
                                  const std::vector<std::pair<Vertex, Vertex>>& indep) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < bases.size(); ++i) names.push_back("v" + std::to_string(i));
  return GraphProductSpec(names, bases, indep);
}

inline GraphProductSpec free_group(std::size_t n) {
  return make_spec(std::vector<BaseGroup>(n, BaseGroup::integer()), {});
}

inline GraphProductSpec f2() { return free_group(2); }

/// Random involution-free spec with up to `max_vertices` vertices over Z, Z/3, Z/5, Z/7.
inline GraphProductSpec random_spec(Rng& rng, std::size_t max_vertices = 5, std::size_t min_vertices = 1,
                                    bool raag = false, double p_indep = 0.5) {
  const std::size_t n = static_cast<std::size_t>(uniform(rng, static_cast<long long>(min_vertices),
                                                         static_cast<long long>(max_vertices)));
  std::vector<BaseGroup> bases;
  for (std::size_t i = 0; i < n; ++i) {
    const long long k = raag ? 0 : uniform(rng, 0, 3);
    bases.push_back(k == 0 ? BaseGroup::integer() : BaseGroup::cyclic_odd(2 * k + 1));
  }
  std::vector<std::pair<Vertex, Vertex>> indep;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (coin(rng, p_indep)) indep.emplace_back(a, b);
  return make_spec(bases, indep);
}

inline Letter random_letter(Rng& rng, const GraphProductSpec& spec, long long zmax = 2) {
  const auto v = static_cast<Vertex>(uniform(rng, 0, static_cast<long long>(spec.sigma()) - 1));
  const BaseGroup& g = spec.base(v);
  switch (g.kind()) {
    case BaseGroup::Kind::Integer: {
      long long c = uniform(rng, 1, zmax);
      return {v, {coin(rng) ? c : -c}};
    }
    case BaseGroup::Kind::CyclicOdd:
      return {v, {uniform(rng, 1, static_cast<long long>(g.modulus()) - 1)}};
    case BaseGroup::Kind::FiniteTable:
      return {v, {uniform(rng, 1, static_cast<long long>(g.order()) - 1)}};
  }
  return {v, {1}};
}

inline GammaWord random_word(Rng& rng, const GraphProductSpec& spec, std::size_t max_len, std::size_t min_len = 1) {
  const std::size_t n = static_cast<std::size_t>(uniform(rng, static_cast<long long>(min_len),
                                                         static_cast<long long>(max_len)));
  GammaWord w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(random_letter(rng, spec));
  return w;
}

// ---------------------------------------------------------------------------
// Independent references

/// Quadratic reduction: merge any same-vertex pair separated only by independent letters.
inline GammaWord naive_reduce(GammaWord w, const GraphProductSpec& spec) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < w.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        if (w[j].vertex == w[i].vertex) {
          auto m = spec.base(w[i].vertex).multiply(w[i].elem, w[j].elem);
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(j));
          if (m)
            w[i].elem = *m;
          else
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
        if (!spec.independent(w[i].vertex, w[j].vertex)) break;
      }
    }
  }
  return w;
}

inline bool naive_identity(const GammaWord& w, const GraphProductSpec& spec) { return naive_reduce(w, spec).empty(); }

/// Letter order written out directly: vertex first, then 1 < -1 < 2 < -2 for Z, codes otherwise.
inline bool ref_letter_less(const GraphProductSpec& spec, const Letter& a, const Letter& b) {
  if (a.vertex != b.vertex) return a.vertex < b.vertex;
  if (spec.base(a.vertex).kind() == BaseGroup::Kind::Integer) {
    const BigInt x = abs_big(a.elem.code), y = abs_big(b.elem.code);
    if (x != y) return x < y;
    return a.elem.code > 0 && b.elem.code < 0;
  }
  return a.elem.code < b.elem.code;
}

/// A reduced word is the lex-least linearization iff no letter could move left past a larger one.
inline bool ref_is_lex_nf(const GammaWord& w, const GraphProductSpec& spec) {
  if (naive_reduce(w, spec).size() != w.size()) return false;
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (std::size_t i = j; i-- > 0;) {
      if (!spec.independent(w[i].vertex, w[j].vertex)) break;
      if (ref_letter_less(spec, w[j], w[i])) return false;
    }
  }
  return true;
}

inline GammaWord rotate(const GammaWord& w, std::size_t k) {
  GammaWord r(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  r.insert(r.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  return r;
}

inline bool ref_is_cyclic_nf(const GammaWord& w, const GraphProductSpec& spec) {
  if (std::popcount(alph(w)) < 2) return false;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (!ref_is_lex_nf(rotate(w, k), spec)) return false;
  return true;
}

/// Random connected, composite, cyclically reduced word, or empty if the draw fails.
inline GammaWord random_cc_word(Rng& rng, const GraphProductSpec& spec, std::size_t max_len) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    GammaWord w = t_reduce(random_word(rng, spec, max_len, 2), spec);
    w = cyclically_reduce(w, spec).core;
    if (w.size() < 2 || !is_composite(w) || !is_connected(w, spec)) continue;
    return w;
  }
  return {};
}

/// Random element of Omega via canonicalization of a primitive cc word.
inline GammaWord random_omega(Rng& rng, const GraphProductSpec& spec, std::size_t max_len) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    GammaWord w = random_cc_word(rng, spec, max_len);
    if (w.empty()) continue;
    const GammaWord u = cyclic_normal_form(w, spec).u;
    const PrimitiveRoot r = primitive_root(u);
    return omega_canonicalize(r.r, spec).p;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Power word samples

inline PowerWord inverse_pw(const PowerWord& w) {
  PowerWord r;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) r.factors.push_back({it->word, -it->exponent});
  return r;
}

inline BigInt random_exp(Rng& rng, long long m = 64) { return uniform(rng, -m, m); }

/// Mix of random power words and constructed identities (and near misses).
/// Factor words stay at length <= 6 and exponents in [-64, 64].
inline PowerWord random_power_word(Rng& rng, const GraphProductSpec& spec) {
  const int kind = static_cast<int>(uniform(rng, 0, 9));
  PowerWord w;
  auto word = [&](std::size_t max_len) { return random_word(rng, spec, max_len); };
  switch (kind) {
    case 0:
    case 1:
    case 2: {  // uniform
      const long long n = uniform(rng, 1, 4);
      for (long long i = 0; i < n; ++i) w.factors.push_back({word(6), random_exp(rng)});
      break;
    }
    case 3: {  // u^x v^y (v^y)^-1 (u^x)^-1 style
      PowerWord h;
      const long long n = uniform(rng, 1, 2);
      for (long long i = 0; i < n; ++i) h.factors.push_back({word(6), random_exp(rng)});
      w = h;
      for (const auto& f : inverse_pw(h).factors)
        w.factors.push_back(coin(rng) ? f : Factor{inverse(spec, f.word), -f.exponent});
      break;
    }
    case 4: {  // (t u t^-1)^x t u^-x t^-1
      GammaWord t = word(2), u = word(2);
      const BigInt x = random_exp(rng);
      w.factors.push_back({concat(concat(t, u), inverse(spec, t)), x});
      w.factors.push_back({t, 1});
      w.factors.push_back({u, -x});
      w.factors.push_back({inverse(spec, t), 1});
      break;
    }
    case 5: {  // u^a u^b u^-(a+b)
      GammaWord u = word(6);
      const BigInt a = random_exp(rng, 32), b = random_exp(rng, 32);
      w.factors = {{u, a}, {u, b}, {u, -(a + b)}};
      break;
    }
    case 6: {  // (u1 u2)^x = u1 (u2 u1)^x u1^-1
      GammaWord u1 = word(3), u2 = word(3);
      const BigInt x = random_exp(rng);
      w.factors = {{concat(u1, u2), x}, {u1, 1}, {concat(u2, u1), -x}, {inverse(spec, u1), 1}};
      break;
    }
    case 7: {  // commutator of powers of words on independent supports, or anything
      GammaWord u = word(3), v = word(3);
      const BigInt x = random_exp(rng), y = random_exp(rng);
      w.factors = {{u, x}, {v, y}, {u, -x}, {v, -y}};
      break;
    }
    case 8: {  // periodicity in a cyclic vertex
      GammaWord u = word(6);
      const BigInt x = random_exp(rng, 20);
      BigInt period = 1;
      for (const auto& a : u)
        if (spec.base(a.vertex).kind() == BaseGroup::Kind::CyclicOdd) period = spec.base(a.vertex).modulus();
      w.factors = {{u, x}, {u, period}, {u, -x}};
      break;
    }
    default: {  // near identity: construct, then perturb
      GammaWord u = word(6);
      const BigInt x = random_exp(rng, 63);
      w.factors = {{u, x}, {inverse(spec, u), x + (coin(rng) ? 1 : -1)}};
      break;
    }
  }
  for (auto& f : w.factors)
    if (f.exponent > 64 || f.exponent < -64) f.exponent = f.exponent > 0 ? 64 : -64;
  return w;
}

// ---------------------------------------------------------------------------
// Knapsack reference: every vector in [0, bound]^n, shells of increasing max-norm.

inline std::vector<std::vector<BigInt>> ref_knapsack_solutions(const KnapsackInstance& inst,
                                                               const GraphProductSpec& spec, long long bound) {
  std::vector<std::vector<BigInt>> sols;
  const std::size_t n = inst.factors.size();
  std::vector<long long> x(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n) {
      PowerWord w;
      for (std::size_t i = 0; i < n; ++i) w.factors.push_back({inst.factors[i], x[i]});
      w.factors.push_back({inst.target, -1});
      if (oracle::expand_reduce(w, spec)) {
        std::vector<BigInt> s;
        for (long long v : x) s.push_back(v);
        sols.push_back(std::move(s));
      }
      return;
    }
    for (long long v = 0; v <= bound; ++v) {
      x[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(sols.begin(), sols.end(), [](const auto& a, const auto& b) {
    const BigInt ma = a.empty() ? BigInt(0) : *std::max_element(a.begin(), a.end());
    const BigInt mb = b.empty() ? BigInt(0) : *std::max_element(b.begin(), b.end());
    if (ma != mb) return ma < mb;
    return a < b;
  });
  return sols;
}

}  // namespace gpwtest

#endif
