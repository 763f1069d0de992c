#ifndef GPW_KNAPSACK_HPP
#define GPW_KNAPSACK_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "gpw/errors.hpp"
#include "gpw/graphproduct.hpp"
#include "gpw/powerword.hpp"

namespace gpw {

struct KnapsackInstance {
  std::vector<GammaWord> factors;
  GammaWord target;
  BigInt bound = 65536;
};

struct KnapsackOptions {
  unsigned threads = 1;
  /// Prefixes are reduced explicitly for length pruning while they stay below this size.
  std::size_t prune_expansion = 20'000;
};

struct KnapsackResult {
  bool sat = false;
  std::vector<BigInt> witness;
  std::size_t verified = 0;  ///< candidates handed to the power word solver
};

/// The power word g_1^x_1 ... g_n^x_n target^-1.
inline PowerWord knapsack_word(const KnapsackInstance& inst, const std::vector<BigInt>& x) {
  PowerWord w;
  for (std::size_t i = 0; i < inst.factors.size(); ++i) w.factors.push_back({inst.factors[i], x[i]});
  w.factors.push_back({inst.target, -1});
  return w;
}

namespace detail {

inline std::vector<BigInt> abelianize(const GammaWord& w, std::size_t sigma) {
  std::vector<BigInt> v(sigma, 0);
  for (const auto& a : w) v[a.vertex] += a.elem.code;
  return v;
}

class KnapsackSearch {
 public:
  KnapsackSearch(const KnapsackInstance& inst, const GraphProductSpec& spec, const KnapsackOptions& opt)
      : inst_(inst), spec_(spec), opt_(opt), n_(inst.factors.size()), sigma_(spec.sigma()) {
    for (const auto& g : inst.factors) {
      ab_.push_back(abelianize(g, sigma_));
      reduced_.push_back(t_reduce(g, spec));
    }
    target_ab_ = abelianize(inst.target, sigma_);
    target_len_ = t_reduce(inst.target, spec).size();
  }

  KnapsackResult run() {
    KnapsackResult res;
    for (BigInt s = 0; s <= inst_.bound; ++s) {
      shell_ = s;
      std::vector<BigInt> x(n_, 0);
      std::vector<BigInt> residual = target_ab_;
      bool found = enumerate(0, x, residual, false, GammaWord{}, true, res);
      if (!found) found = flush(res);
      if (found) return res;
    }
    return res;
  }

 private:
  // Range of sum_{i >= k} x_i * ab_i[v] over x_i in [0, shell].
  bool residual_reachable(std::size_t k, const std::vector<BigInt>& residual) const {
    for (std::size_t v = 0; v < sigma_; ++v) {
      BigInt lo = 0, hi = 0;
      for (std::size_t i = k; i < n_; ++i) {
        const BigInt c = ab_[i][v] * shell_;
        (c < 0 ? lo : hi) += c;
      }
      if (residual[v] < lo || residual[v] > hi) return false;
    }
    return true;
  }

  std::size_t remaining_letters(std::size_t k) const {
    std::size_t n = target_len_;
    for (std::size_t i = k; i < n_; ++i) n += reduced_[i].size() * static_cast<std::size_t>(shell_);
    return n;
  }

  bool enumerate(std::size_t k, std::vector<BigInt>& x, std::vector<BigInt>& residual, bool hit_shell,
                 const GammaWord& prefix, bool prefix_known, KnapsackResult& res) {
    if (!residual_reachable(k, residual)) return false;
    if (prefix_known && shell_ <= opt_.prune_expansion && prefix.size() > remaining_letters(k)) return false;
    if (k == n_) {
      if (!hit_shell) return false;
      pending_.push_back(x);
      return pending_.size() >= kChunk && flush(res);
    }
    // Last coordinate pinned by the abelianization when its image is nonzero.
    if (k + 1 == n_) {
      for (std::size_t v = 0; v < sigma_; ++v) {
        if (ab_[k][v] == 0) continue;
        if (residual[v] % ab_[k][v] != 0) return false;
        const BigInt xk = residual[v] / ab_[k][v];
        if (xk < 0 || xk > shell_ || (!hit_shell && xk != shell_)) return false;
        return visit(k, xk, x, residual, hit_shell, prefix, prefix_known, res);
      }
    }
    for (BigInt xk = 0; xk <= shell_; ++xk)
      if (visit(k, xk, x, residual, hit_shell, prefix, prefix_known, res)) return true;
    return false;
  }

  bool visit(std::size_t k, const BigInt& xk, std::vector<BigInt>& x, std::vector<BigInt>& residual, bool hit_shell,
             const GammaWord& prefix, bool prefix_known, KnapsackResult& res) {
    // A coordinate below the shell leaves room only if a later one can still reach it.
    if (!hit_shell && xk != shell_ && k + 1 == n_) return false;
    x[k] = xk;
    for (std::size_t v = 0; v < sigma_; ++v) residual[v] -= ab_[k][v] * xk;
    GammaWord next;
    bool known = prefix_known && prefix.size() + reduced_[k].size() * static_cast<std::size_t>(xk) <= opt_.prune_expansion;
    if (known) {
      next = prefix;
      for (BigInt j = 0; j < xk; ++j)
        for (const auto& a : reduced_[k]) push_reduced(next, a, spec_);
    }
    const bool found = enumerate(k + 1, x, residual, hit_shell || xk == shell_, next, known, res);
    for (std::size_t v = 0; v < sigma_; ++v) residual[v] += ab_[k][v] * xk;
    x[k] = 0;
    return found;
  }

  bool flush(KnapsackResult& res) {
    if (pending_.empty()) return false;
    std::vector<std::vector<BigInt>> batch;
    batch.swap(pending_);
    res.verified += batch.size();
    const unsigned t = std::max(1U, std::min<unsigned>(opt_.threads, static_cast<unsigned>(batch.size())));
    std::atomic<std::size_t> best{batch.size()};
    auto work = [&](unsigned id) {
      for (std::size_t i = id; i < batch.size() && i < best.load(); i += t) {
        if (power_word_problem(knapsack_word(inst_, batch[i]), spec_)) {
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    };
    if (t == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned id = 0; id < t; ++id) pool.emplace_back(work, id);
      for (auto& th : pool) th.join();
    }
    if (best.load() == batch.size()) return false;
    res.sat = true;
    res.witness = batch[best.load()];
    return true;
  }

  static constexpr std::size_t kChunk = 256;

  const KnapsackInstance& inst_;
  const GraphProductSpec& spec_;
  KnapsackOptions opt_;
  std::size_t n_, sigma_;
  std::vector<std::vector<BigInt>> ab_;
  std::vector<GammaWord> reduced_;
  std::vector<BigInt> target_ab_;
  std::size_t target_len_ = 0;
  BigInt shell_ = 0;
  std::vector<std::vector<BigInt>> pending_;
};

}  // namespace detail

/**
 * Searches x in [0, bound]^n with g_1^x_1 ... g_n^x_n = target, in order of
 * increasing max-norm and lexicographically within one norm. An unsat
 * answer only covers the searched box.
 */
inline KnapsackResult knapsack_solve(const KnapsackInstance& inst, const GraphProductSpec& spec,
                                     const KnapsackOptions& opt = {}) {
  spec.require_involution_free("knapsack");
  if (!spec.is_raag()) throw UnsupportedGroup("knapsack: every vertex group must be Z");
  if (inst.bound < 0) throw DomainError("knapsack: negative bound");
  for (const auto& g : inst.factors) spec.check_word(g);
  spec.check_word(inst.target);
  if (inst.factors.empty()) return {word_problem(inst.target, spec), {}, 0};
  return detail::KnapsackSearch(inst, spec, opt).run();
}

}  // namespace gpw

#endif
