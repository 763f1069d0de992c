#ifndef GPW_GRIGORCHUK_HPP
#define GPW_GRIGORCHUK_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gpw/bigint.hpp"
#include "gpw/errors.hpp"

namespace gpw::grig {

/// Symbols: 0 = a, 1 = b, 2 = c, 3 = d. {1, b, c, d} is the Klein group under XOR.
using GrigWord = std::vector<std::uint8_t>;

struct GrigFactor {
  GrigWord word;
  BigInt exponent;
};

using GrigPowerWord = std::vector<GrigFactor>;

inline GrigWord parse_word(std::string_view s) {
  GrigWord w;
  for (char ch : s) {
    if (ch == ' ') continue;
    if (ch < 'a' || ch > 'd') throw ParseError(std::string("grigorchuk: unknown symbol '") + ch + "'");
    w.push_back(static_cast<std::uint8_t>(ch - 'a'));
  }
  return w;
}

inline std::string to_string(const GrigWord& w) {
  std::string s;
  for (auto x : w) s.push_back(static_cast<char>('a' + x));
  return s;
}

/// `factor := sym+ | sym '^' int | '(' sym+ ')' '^' int` over the symbols a, b, c, d.
inline GrigPowerWord parse_power_word(std::string_view s) {
  GrigPowerWord w;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && s[i] == ' ') ++i;
  };
  auto exponent = [&] {
    skip();
    if (i >= s.size() || s[i] != '^') throw ParseError("grigorchuk: expected '^' at column " + std::to_string(i + 1));
    ++i;
    skip();
    const std::size_t b = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    return parse_bigint(s.substr(b, i - b));
  };
  for (skip(); i < s.size(); skip()) {
    if (s[i] == '(') {
      const std::size_t close = s.find(')', i);
      if (close == std::string_view::npos) throw ParseError("grigorchuk: missing ')'");
      GrigWord u = parse_word(s.substr(i + 1, close - i - 1));
      i = close + 1;
      w.push_back({std::move(u), exponent()});
      continue;
    }
    GrigWord u = parse_word(s.substr(i, 1));
    ++i;
    skip();
    const bool powered = i < s.size() && s[i] == '^';
    w.push_back({std::move(u), powered ? exponent() : BigInt(1)});
  }
  return w;
}

/// Free reduction under a^2 = 1 and the Klein relations; result alternates a and {b,c,d}.
inline GrigWord reduce(const GrigWord& w) {
  GrigWord out;
  for (auto x : w) {
    if (x > 3) throw DomainError("grigorchuk: symbol out of range");
    if (x == 0) {
      if (!out.empty() && out.back() == 0) out.pop_back();
      else out.push_back(0);
    } else if (!out.empty() && out.back() != 0) {
      out.back() ^= x;
      if (out.back() == 0) out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

// b = (a, c), c = (a, d), d = (1, b): section of each symbol at child 0 and 1, -1 for the identity.
inline constexpr int kSection[4][2] = {{-1, -1}, {0, 2}, {0, 3}, {-1, 1}};

/// Sections of w at the two children, reading w left to right as a right action.
inline void sections(const GrigWord& w, GrigWord& left, GrigWord& right) {
  for (int side = 0; side < 2; ++side) {
    GrigWord& out = side == 0 ? left : right;
    int cur = side;
    for (auto x : w) {
      if (x == 0) cur ^= 1;
      else if (kSection[x][cur] >= 0) out.push_back(static_cast<std::uint8_t>(kSection[x][cur]));
    }
  }
}

inline bool grig_wp(const GrigWord& w) {
  const GrigWord r = reduce(w);
  if (r.empty()) return true;
  std::size_t as = 0;
  for (auto x : r) as += x == 0;
  if (as % 2) return false;
  GrigWord l, rr;
  sections(r, l, rr);
  return grig_wp(l) && grig_wp(rr);
}

inline GrigWord power(const GrigWord& u, const BigInt& n) {
  if (n < 0) throw DomainError("grigorchuk: negative repetition count");
  GrigWord out;
  for (BigInt k = 0; k < n; ++k) out.insert(out.end(), u.begin(), u.end());
  return out;
}

inline constexpr unsigned kDefaultEll = 8;
inline constexpr unsigned kMinEll = 1;

/// Number of low exponent bits kept: 2k + ell with 2^k >= max factor length.
inline unsigned kept_bits(const GrigPowerWord& w, unsigned ell) {
  std::size_t m = 0;
  for (const auto& f : w) m = std::max(m, f.word.size());
  unsigned k = 0;
  while ((std::size_t{1} << k) < m) ++k;
  return 2 * k + ell;
}

inline bool grig_pwp(const GrigPowerWord& w, unsigned ell = kDefaultEll) {
  if (ell < kMinEll || ell > 48) throw DomainError("grigorchuk: ell out of range");
  const BigInt mod = pow2(kept_bits(w, ell));
  GrigWord flat;
  for (const auto& f : w) {
    GrigWord p = power(reduce(f.word), floor_mod(f.exponent, mod));
    flat.insert(flat.end(), p.begin(), p.end());
    flat = reduce(flat);
  }
  return grig_wp(flat);
}

/// Order of u, found by repeated squaring; throws if it exceeds 2^max_log.
inline BigInt order(const GrigWord& u, unsigned max_log = 64) {
  GrigWord p = reduce(u);
  BigInt o = 1;
  for (unsigned i = 0; i <= max_log; ++i) {
    if (grig_wp(p)) return o;
    GrigWord sq = p;
    sq.insert(sq.end(), p.begin(), p.end());
    p = reduce(sq);
    o *= 2;
  }
  throw LimitExceeded("grigorchuk: order above 2^" + std::to_string(max_log));
}

/**
 * Action on the 2^level vertices of a tree level, vertices encoded as
 * integers whose top bit is the first letter.
 */
class TreeAction {
 public:
  explicit TreeAction(unsigned level) : level_(level) {
    if (level == 0 || level > 20) throw DomainError("grigorchuk: tree level out of range");
  }

  std::uint32_t apply(std::uint8_t g, std::uint32_t v) const { return act(g, v, level_); }

  /// Applies w letter by letter, left to right.
  std::vector<std::uint32_t> permutation(const GrigWord& w) const {
    std::vector<std::uint32_t> p(std::size_t{1} << level_);
    for (std::uint32_t v = 0; v < p.size(); ++v) {
      std::uint32_t x = v;
      for (auto g : w) x = act(g, x, level_);
      p[v] = x;
    }
    return p;
  }

  bool is_trivial(const GrigWord& w) const {
    const auto p = permutation(w);
    for (std::uint32_t v = 0; v < p.size(); ++v)
      if (p[v] != v) return false;
    return true;
  }

 private:
  // a(0v) = 1v; b(0v) = 0 a(v), b(1v) = 1 c(v); c: (a, d); d: (1, b).
  static std::uint32_t act(std::uint8_t g, std::uint32_t v, unsigned n) {
    if (n == 0) return v;
    const std::uint32_t top = std::uint32_t{1} << (n - 1);
    const std::uint32_t head = v & top, rest = v & (top - 1);
    if (g == 0) return (head ^ top) | rest;
    std::uint8_t h = 0;
    bool moves = true;
    switch (g) {
      case 1: h = head ? 2 : 0; break;
      case 2: h = head ? 3 : 0; break;
      default: moves = head != 0; h = 1; break;
    }
    return head | (moves ? act(h, rest, n - 1) : rest);
  }

  unsigned level_;
};

}  // namespace gpw::grig

#endif
