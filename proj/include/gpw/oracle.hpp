#ifndef GPW_ORACLE_HPP
#define GPW_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "gpw/errors.hpp"
#include "gpw/symbolic.hpp"
#include "gpw/traces.hpp"

// Brute-force deciders kept deliberately separate from the main pipeline:
// none of them calls into graphproduct.hpp.

namespace gpw::oracle {

inline constexpr std::size_t kDefaultLimit = 1'000'000;

/**
 * Reduces a word with one stack per vertex (heaps of pieces). A letter sits
 * on the stacks of every vertex it depends on; it can merge with the newest
 * letter of its own vertex only when that letter tops its own stack.
 * Returns the surviving letters in insertion order.
 */
inline GammaWord heap_reduce(const GammaWord& u, const GraphProductSpec& spec) {
  const std::size_t s = spec.sigma();
  std::vector<Letter> cell;
  std::vector<char> alive;
  std::vector<std::vector<std::size_t>> stack(s);
  for (const auto& a : u) {
    spec.check_letter(a);
    auto& own = stack[a.vertex];
    if (!own.empty() && cell[own.back()].vertex == a.vertex) {
      const std::size_t id = own.back();
      auto m = spec.base(a.vertex).multiply(cell[id].elem, a.elem);
      if (m) {
        cell[id].elem = *m;
      } else {
        alive[id] = 0;
        for (Vertex v = 0; v < s; ++v)
          if (!spec.independent(v, a.vertex)) stack[v].pop_back();
      }
      continue;
    }
    const std::size_t id = cell.size();
    cell.push_back(a);
    alive.push_back(1);
    for (Vertex v = 0; v < s; ++v)
      if (!spec.independent(v, a.vertex)) stack[v].push_back(id);
  }
  GammaWord out;
  for (std::size_t i = 0; i < cell.size(); ++i)
    if (alive[i]) out.push_back(cell[i]);
  return out;
}

inline GammaWord expand_checked(const PowerWord& w, const GraphProductSpec& spec, std::size_t limit) {
  if (expanded_length(w) > limit) throw LimitExceeded("expand_reduce: expansion exceeds " + std::to_string(limit));
  return expand(w, spec);
}

/// Full expansion then reduction; refuses above `limit` letters.
inline bool expand_reduce(const PowerWord& w, const GraphProductSpec& spec, std::size_t limit = kDefaultLimit) {
  for (const auto& f : w.factors) spec.check_word(f.word);
  return heap_reduce(expand_checked(w, spec, limit), spec).empty();
}

namespace detail {
inline bool raw_less(const GammaWord& a, const GammaWord& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Letter& x, const Letter& y) {
    return x.vertex != y.vertex ? x.vertex < y.vertex : x.elem.code < y.elem.code;
  });
}
}  // namespace detail

using WordSet = std::set<GammaWord, bool (*)(const GammaWord&, const GammaWord&)>;

/// All linearizations of u reachable by swapping adjacent independent letters.
inline WordSet swap_closure(const GammaWord& u, const GraphProductSpec& spec, std::size_t limit = 100'000) {
  WordSet seen(&detail::raw_less);
  std::deque<GammaWord> todo{u};
  seen.insert(u);
  while (!todo.empty()) {
    GammaWord w = std::move(todo.front());
    todo.pop_front();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!spec.independent(w[i].vertex, w[i + 1].vertex)) continue;
      std::swap(w[i], w[i + 1]);
      if (seen.insert(w).second) {
        if (seen.size() > limit) throw LimitExceeded("swap_closure: too many linearizations");
        todo.push_back(w);
      }
      std::swap(w[i], w[i + 1]);
    }
  }
  return seen;
}

/// Trace equality by exhaustive search over the commutation class of u.
inline bool trace_equal_bfs(const GammaWord& u, const GammaWord& v, const GraphProductSpec& spec,
                            std::size_t limit = 100'000) {
  if (u.size() != v.size()) return false;
  return swap_closure(u, spec, limit).count(v) > 0;
}

/**
 * Every word reachable from u by commuting independent neighbours and by
 * multiplying same-vertex neighbours. u = 1 iff the empty word is reachable.
 */
inline bool t_closure_identity(const GammaWord& u, const GraphProductSpec& spec, std::size_t limit = 200'000) {
  WordSet seen(&detail::raw_less);
  std::deque<GammaWord> todo{u};
  seen.insert(u);
  auto visit = [&](GammaWord w) {
    if (seen.insert(w).second) {
      if (seen.size() > limit) throw LimitExceeded("t_closure_identity: state limit");
      todo.push_back(std::move(w));
    }
  };
  while (!todo.empty()) {
    GammaWord w = std::move(todo.front());
    todo.pop_front();
    if (w.empty()) return true;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].vertex == w[i + 1].vertex) {
        GammaWord x(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        if (auto m = spec.base(w[i].vertex).multiply(w[i].elem, w[i + 1].elem)) x.push_back({w[i].vertex, *m});
        x.insert(x.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
        visit(std::move(x));
      } else if (spec.independent(w[i].vertex, w[i + 1].vertex)) {
        GammaWord x = w;
        std::swap(x[i], x[i + 1]);
        visit(std::move(x));
      }
    }
  }
  return false;
}

/**
 * Free group reducer on run-length blocks for the two-generator free
 * configuration. A block is a primitive cyclically reduced run sequence
 * raised to a positive exponent; cancellation between two long periodic
 * blocks is detected as a steady state and applied in bulk.
 */
class FreeRle {
 public:
  struct Run {
    int gen;
    BigInt count;
    friend bool operator==(const Run&, const Run&) = default;
  };
  using Runs = std::vector<Run>;

  static Runs runs_of(const GammaWord& w) {
    Runs r;
    for (const auto& a : w) append(r, {static_cast<int>(a.vertex), a.elem.code});
    return r;
  }

  static Runs inverse(const Runs& r) {
    Runs out(r.rbegin(), r.rend());
    for (auto& x : out) x.count = -x.count;
    return out;
  }

  void push_power(const GammaWord& word, const BigInt& x) {
    if (x == 0) return;
    Runs v = runs_of(word);
    Runs c;
    while (v.size() >= 2 && v.front().gen == v.back().gen) {
      const Run first = v.front();
      const BigInt sum = first.count + v.back().count;
      c.push_back(first);
      v.erase(v.begin());
      v.back().count = sum;
      if (sum == 0) v.pop_back();
    }
    if (v.empty()) return;
    if (x < 0) v = inverse(v);
    const BigInt n = abs_big(x);
    for (const auto& r : c) push_run(r);
    if (v.size() == 1) {
      push_run({v[0].gen, v[0].count * n});
    } else {
      std::size_t k = root_multiplicity(v);
      v.resize(v.size() / k);
      push_block(v, n * k);
    }
    for (const auto& r : inverse(c)) push_run(r);
  }

  bool empty() const { return items_.empty(); }

  /// Expanded reduced word as runs; only for small results.
  Runs flatten() const {
    Runs out;
    for (const auto& it : items_) {
      if (it.exp == 0) {
        out.push_back(it.runs[0]);
        continue;
      }
      for (BigInt k = 0; k < it.exp; ++k) out.insert(out.end(), it.runs.begin(), it.runs.end());
    }
    return out;
  }

 private:
  // exp == 0 marks a single run; otherwise runs^exp with runs.size() >= 2.
  struct Item {
    Runs runs;
    BigInt exp;
  };

  static void append(Runs& r, Run x) {
    if (x.count == 0) return;
    if (!r.empty() && r.back().gen == x.gen) {
      r.back().count += x.count;
      if (r.back().count == 0) r.pop_back();
    } else {
      r.push_back(std::move(x));
    }
  }

  static std::size_t root_multiplicity(const Runs& v) {
    const std::size_t n = v.size();
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d) continue;
      bool ok = true;
      for (std::size_t i = d; i < n && ok; ++i) ok = v[i] == v[i - d];
      if (ok) return n / d;
    }
    return 1;
  }

  int top_gen() const {
    const Item& t = items_.back();
    return t.exp == 0 ? t.runs[0].gen : t.runs.back().gen;
  }

  void peel_top_block() {
    Item& t = items_.back();
    Runs copy = t.runs;
    if (--t.exp == 0) items_.pop_back();
    for (auto& r : copy) items_.push_back({{std::move(r)}, 0});
  }

  void push_run(Run r) {
    if (r.count == 0) return;
    if (!items_.empty() && top_gen() == r.gen && items_.back().exp != 0) peel_top_block();
    if (!items_.empty() && items_.back().exp == 0 && items_.back().runs[0].gen == r.gen) {
      BigInt& c = items_.back().runs[0].count;
      c += r.count;
      if (c == 0) items_.pop_back();
      return;
    }
    items_.push_back({{std::move(r)}, 0});
  }

  std::ptrdiff_t top_block() const {
    for (std::size_t i = items_.size(); i-- > 0;)
      if (items_[i].exp != 0) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }

  Runs tail_after(std::ptrdiff_t b) const {
    Runs t;
    for (std::size_t i = static_cast<std::size_t>(b + 1); i < items_.size(); ++i) t.push_back(items_[i].runs[0]);
    return t;
  }

  void push_block(const Runs& v, BigInt m) {
    const Runs vinv = inverse(v);
    std::size_t unsteady = 0;
    while (m > 0) {
      if (!items_.empty() && items_.back().exp != 0) {
        Item& t = items_.back();
        if (t.runs == v) {
          t.exp += m;
          return;
        }
        if (t.runs == vinv) {
          const BigInt k = std::min(t.exp, m);
          t.exp -= k;
          m -= k;
          if (t.exp == 0) items_.pop_back();
          continue;
        }
      }
      if (items_.empty() || top_gen() != v.front().gen) {
        items_.push_back({v, m});
        return;
      }
      const std::ptrdiff_t b = top_block();
      const BigInt e = b >= 0 ? items_[static_cast<std::size_t>(b)].exp : BigInt(0);
      const Runs tail = b >= 0 ? tail_after(b) : Runs{};
      for (const auto& r : v) push_run(r);
      --m;
      if (b >= 0 && top_block() == b && items_[static_cast<std::size_t>(b)].exp + 1 == e && tail_after(b) == tail) {
        Item& t = items_[static_cast<std::size_t>(b)];
        const BigInt k = std::min(t.exp, m);
        t.exp -= k;
        m -= k;
        if (t.exp == 0) {
          items_.erase(items_.begin() + b);
          Runs rest = tail_after(b - 1);
          items_.resize(static_cast<std::size_t>(b));
          for (const auto& r : rest) push_run(r);
        }
      } else if (++unsteady > 100'000) {
        throw InternalInvariant("free_rle_reduce: no steady state");
      }
    }
  }

  std::vector<Item> items_;
};

/// Identity test for power words over the free group on two integer vertices.
inline bool free_rle_reduce(const PowerWord& w, const GraphProductSpec& spec) {
  if (spec.sigma() != 2 || spec.independent(0, 1) || !spec.is_raag())
    throw UnsupportedGroup("free_rle_reduce: needs the free group on two integer vertices");
  FreeRle st;
  for (const auto& f : w.factors) {
    spec.check_word(f.word);
    st.push_power(f.word, f.exponent);
  }
  return st.empty();
}

}  // namespace gpw::oracle

#endif
