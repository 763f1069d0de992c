#ifndef GPW_SHORTENING_HPP
#define GPW_SHORTENING_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "gpw/bigint.hpp"
#include "gpw/errors.hpp"
#include "gpw/symbolic.hpp"

namespace gpw {

/// Closed integer interval [l, r].
struct Interval {
  BigInt l;
  BigInt r;

  BigInt size() const { return r - l + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct IntervalSet {
  std::vector<Interval> intervals;  ///< sorted, disjoint, non-empty
  BigInt K;
};

/// K = 50 sigma^3 |u|^2 mu(u)^2 + 1.
inline BigInt shortening_constant(const SymbolicWord& u, const GraphProductSpec& spec) {
  const BigInt s = spec.sigma(), n = u.delta_length(), mu = u.mu();
  return 50 * s * s * s * n * n * mu * mu + 1;
}

/// Prefix sums of the exponents of the powers with base p, starting at 0.
inline std::vector<BigInt> eta_profile(const SymbolicWord& u, const GammaWord& p) {
  std::vector<BigInt> eta{0};
  for (const auto& l : u.letters)
    if (auto* q = std::get_if<PowerLetter>(&l); q && q->base == p) eta.push_back(eta.back() + q->exp);
  return eta;
}

/// Gaps of width >= 2K between consecutive distinct eta values, shrunk by K on both sides.
inline IntervalSet build_intervals(const SymbolicWord& u, const GammaWord& p, const GraphProductSpec& spec) {
  IntervalSet c;
  c.K = shortening_constant(u, spec);
  std::vector<BigInt> eta = eta_profile(u, p);
  std::sort(eta.begin(), eta.end());
  eta.erase(std::unique(eta.begin(), eta.end()), eta.end());
  for (std::size_t i = 0; i + 1 < eta.size(); ++i)
    if (eta[i + 1] - eta[i] >= 2 * c.K) c.intervals.push_back({eta[i] + c.K, eta[i + 1] - c.K});
  return c;
}

/**
 * Replaces each p-exponent y_i by y_i - sgn(y_i) * (total size of the
 * intervals strictly between eta^(i-1) and eta^i). Other letters are kept.
 */
inline SymbolicWord shorten(const SymbolicWord& u, const GammaWord& p, const IntervalSet& c) {
  const auto& iv = c.intervals;
  for (std::size_t k = 0; k < iv.size(); ++k)
    if (iv[k].l > iv[k].r || (k && iv[k - 1].r >= iv[k].l))
      throw InternalInvariant("shorten: interval set is not sorted and disjoint");
  std::vector<BigInt> mass{0};
  for (const auto& i : iv) mass.push_back(mass.back() + i.size());
  // Number of intervals lying entirely below x; x must not lie inside one.
  auto below = [&](const BigInt& x) {
    auto it = std::lower_bound(iv.begin(), iv.end(), x, [](const Interval& i, const BigInt& v) { return i.r < v; });
    if (it != iv.end() && it->l <= x) throw InternalInvariant("shorten: word is not compatible with the intervals");
    return static_cast<std::size_t>(it - iv.begin());
  };
  SymbolicWord out = u;
  BigInt eta = 0;
  for (auto& l : out.letters) {
    auto* q = std::get_if<PowerLetter>(&l);
    if (!q || q->base != p) continue;
    const BigInt next = eta + q->exp;
    const std::size_t a = below(eta), b = below(next);
    const BigInt removed = a < b ? mass[b] - mass[a] : mass[a] - mass[b];
    const BigInt z = q->exp > 0 ? BigInt(q->exp - removed) : BigInt(q->exp + removed);
    if (sgn(z) != sgn(q->exp)) throw InternalInvariant("shorten: exponent changed sign");
    eta = next;
    q->exp = z;
  }
  return out;
}

/// Distinct power bases of u in order of first occurrence.
inline std::vector<GammaWord> power_bases(const SymbolicWord& u) {
  std::vector<GammaWord> bases;
  for (const auto& l : u.letters)
    if (auto* q = std::get_if<PowerLetter>(&l))
      if (std::find(bases.begin(), bases.end(), q->base) == bases.end()) bases.push_back(q->base);
  return bases;
}

struct ShorteningReport {
  SymbolicWord word;
  BigInt K;
  std::size_t intervals = 0;
  std::vector<BigInt> exponents;  ///< shortened exponents in word order
};

/**
 * Shortens every base independently against the eta profile of u and checks
 * |z_i| <= 2 m K for the m powers of each base.
 */
inline ShorteningReport shorten_all(const SymbolicWord& u, const GraphProductSpec& spec) {
  ShorteningReport r{u, shortening_constant(u, spec), 0, {}};
  const BigInt s = spec.sigma(), n = u.delta_length(), mu = u.mu();
  for (const auto& p : power_bases(u)) {
    const IntervalSet c = build_intervals(u, p, spec);
    r.intervals += c.intervals.size();
    r.word = shorten(r.word, p, c);
    const std::size_t m = eta_profile(u, p).size() - 1;
    const BigInt cap = 2 * BigInt(m) * c.K;
    if (cap > 101 * BigInt(m) * s * s * s * n * n * mu * mu)
      throw InternalInvariant("shorten: 2mK exceeds 101 m sigma^3 |u|^2 mu^2");
    for (const auto& l : r.word.letters)
      if (auto* q = std::get_if<PowerLetter>(&l); q && q->base == p && abs_big(q->exp) > cap)
        throw InternalInvariant("shorten: exponent above 2mK");
  }
  for (const auto& l : r.word.letters)
    if (auto* q = std::get_if<PowerLetter>(&l)) r.exponents.push_back(q->exp);
  return r;
}

}  // namespace gpw

#endif
