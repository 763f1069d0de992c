#ifndef GPW_POWERWORD_HPP
#define GPW_POWERWORD_HPP

#include <string>
#include <vector>

#include "gpw/preprocess.hpp"
#include "gpw/rewriting.hpp"
#include "gpw/shortening.hpp"
#include "gpw/simple_pwp.hpp"
#include "gpw/symbolic.hpp"

namespace gpw {

/// Turns a symbolic word with polynomial exponents into a simple power word.
inline SimplePowerWord to_simple(const SymbolicWord& u, const GraphProductSpec& spec) {
  SimplePowerWord out;
  for (const auto& l : u.letters) {
    if (auto* a = std::get_if<Letter>(&l)) {
      out.push_back({*a, 1});
    } else if (auto* s = std::get_if<SingleLetterPower>(&l)) {
      out.push_back({s->letter, s->exp});
    } else {
      for (const auto& a : materialize(l, spec)) out.push_back({a, 1});
    }
  }
  return out;
}

struct PwpOptions {
  /// Above this many letters the shortened word is decided by R instead of expansion.
  std::size_t expansion_limit = 250'000;
  RStats* rstats = nullptr;
};

struct PwpReport {
  bool identity = false;
  std::string solver;  ///< "direct" or "rewriting"
  BigInt K;
  std::size_t intervals = 0;
  std::vector<BigInt> shortened_exponents;
  std::size_t delta_length = 0;
  std::size_t r_steps = 0;
};

inline PwpReport power_word_problem_report(const PowerWord& w, const GraphProductSpec& spec,
                                           const PwpOptions& opt = {}) {
  for (const auto& f : w.factors) spec.check_word(f.word);
  const SymbolicWord u = preprocess(w, spec);
  const ShorteningReport s = shorten_all(u, spec);
  PwpReport r;
  r.K = s.K;
  r.intervals = s.intervals;
  r.shortened_exponents = s.exponents;
  r.delta_length = u.delta_length();
  if (expanded_length(s.word) <= opt.expansion_limit) {
    r.solver = "direct";
    r.identity = simple_pwp_direct(to_simple(s.word, spec), spec);
    return r;
  }
  RStats local;
  RStats* st = opt.rstats ? opt.rstats : &local;
  r.solver = "rewriting";
  r.identity = r_normal_form(s.word, spec, st).letters.empty();
  r.r_steps = st->steps;
  return r;
}

inline bool power_word_problem(const PowerWord& w, const GraphProductSpec& spec) {
  return power_word_problem_report(w, spec).identity;
}

/// Decides w = 1 by preprocessing and R alone, without shortening.
inline bool rewriting_word_problem(const PowerWord& w, const GraphProductSpec& spec, RStats* stats = nullptr) {
  return r_normal_form(preprocess(w, spec), spec, stats).letters.empty();
}

}  // namespace gpw

#endif
