// Command line front end: gpw <command> [options].
// Exit codes: 0 identity / yes / SAT, 1 non-identity / no / UNSAT within bound, 2 error.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpw/gpw.hpp"

namespace {

using nlohmann::json;

constexpr std::size_t kWordExpansionLimit = 10'000'000;

struct Common {
  std::string group;
  bool json = false;
};

gpw::GammaWord expand_expr(const std::string& expr, const gpw::GroupSpecFile& g) {
  const gpw::PowerWord w = gpw::parse_pword(expr, g);
  if (gpw::expanded_length(w) > kWordExpansionLimit)
    throw gpw::LimitExceeded("expression expands to more than " + std::to_string(kWordExpansionLimit) +
                             " letters; use pwp for large exponents");
  return gpw::expand(w, g.spec);
}

int verdict(bool yes, const Common& c, json extra = json::object(), const char* yes_text = "identity",
            const char* no_text = "non-identity") {
  if (c.json) {
    extra["verdict"] = yes ? yes_text : no_text;
    std::cout << extra.dump() << "\n";
  } else {
    std::cout << (yes ? yes_text : no_text) << "\n";
  }
  return yes ? 0 : 1;
}

json strings(const std::vector<gpw::BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::vector<std::string> split_parts(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);) out.push_back(part);
  return out;
}

std::string substitute(std::string tpl, const std::string& n) {
  for (std::size_t pos; (pos = tpl.find('N')) != std::string::npos;) tpl.replace(pos, 1, n);
  return tpl;
}

int run_bench(const gpw::GroupSpecFile& g, const std::string& tpl, const std::vector<unsigned>& ks, unsigned reps,
              std::size_t limit) {
  using clock = std::chrono::steady_clock;
  std::cout << "exponent_bits,pipeline_ns,oracle_ns_or_refused\n";
  for (unsigned k : ks) {
    const gpw::PowerWord w = gpw::parse_pword(substitute(tpl, gpw::pow2(k).str()), g);
    long long best = -1;
    for (unsigned r = 0; r < reps; ++r) {
      const auto t0 = clock::now();
      (void)gpw::power_word_problem(w, g.spec);
      const long long ns = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count();
      best = best < 0 ? ns : std::min(best, ns);
    }
    std::string oracle = "refused";
    try {
      const auto t0 = clock::now();
      (void)gpw::oracle::expand_reduce(w, g.spec, limit);
      oracle = std::to_string(std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count());
    } catch (const gpw::LimitExceeded&) {
    }
    std::cout << k << "," << best << "," << oracle << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word and power word problems in graph products"};
  app.require_subcommand(1);
  Common c;
  std::string expr, expr2;

  auto add_common = [&](CLI::App* s, bool needs_expr = true) {
    s->add_option("-g,--group", c.group, "group file")->required()->check(CLI::ExistingFile);
    s->add_flag("--json", c.json, "JSON output");
    if (needs_expr) s->add_option("expr", expr, "power word expression")->required();
  };

  auto* wp = app.add_subcommand("wp", "word problem on the expanded expression");
  add_common(wp);
  auto* pwp = app.add_subcommand("pwp", "power word problem");
  add_common(pwp);
  std::size_t expansion_limit = gpw::PwpOptions{}.expansion_limit;
  pwp->add_option("--expansion-limit", expansion_limit, "largest shortened word expanded before falling back to R");
  auto* spwp = app.add_subcommand("spwp", "simple power word problem (every factor a single letter)");
  add_common(spwp);
  std::string solver = "direct";
  spwp->add_option("--solver", solver, "direct or sigma")->check(CLI::IsMember({"direct", "sigma"}));
  auto* nf = app.add_subcommand("nf", "length-lexicographic normal form");
  add_common(nf);
  auto* cnf = app.add_subcommand("cnf", "cyclic normal form with conjugator");
  add_common(cnf);
  auto* omega = app.add_subcommand("omega", "canonical conjugacy representative");
  add_common(omega);
  auto* conj = app.add_subcommand("conj", "conjugacy of two cyclically reduced connected composite elements");
  add_common(conj);
  conj->add_option("expr2", expr2, "second expression")->required();
  auto* knap = app.add_subcommand("knapsack", "exponent equation g1^x1 ... gn^xn = target, parts separated by ';'");
  add_common(knap);
  std::string bound = "65536";
  unsigned threads = 1;
  knap->add_option("--bound", bound, "search ceiling per exponent");
  knap->add_option("--threads", threads, "verification threads")->check(CLI::PositiveNumber);
  auto* orc = app.add_subcommand("oracle", "brute-force expansion oracle");
  add_common(orc);
  std::size_t limit = gpw::oracle::kDefaultLimit;
  bool rle = false;
  orc->add_option("--limit", limit, "expansion limit in letters");
  orc->add_flag("--rle", rle, "run-length free group reducer (two free integer vertices only)");

  auto* grig = app.add_subcommand("grig", "Grigorchuk group");
  grig->require_subcommand(1);
  std::string gexpr;
  unsigned ell = gpw::grig::kDefaultEll;
  auto* gwp = grig->add_subcommand("wp", "word problem");
  gwp->add_option("word", gexpr, "word over a, b, c, d")->required();
  gwp->add_flag("--json", c.json, "JSON output");
  auto* gpwp = grig->add_subcommand("pwp", "power word problem");
  gpwp->add_option("expr", gexpr, "power word over a, b, c, d")->required();
  gpwp->add_option("--ell", ell, "extra exponent bits kept");
  gpwp->add_flag("--json", c.json, "JSON output");

  auto* bench = app.add_subcommand("bench", "time pwp against the expansion oracle, CSV on stdout");
  add_common(bench, false);
  std::string tpl = "(x y)^N (y' x')^N";
  std::vector<unsigned> ks{8, 16, 32, 64, 128, 256};
  unsigned reps = 5;
  bench->add_option("--template", tpl, "expression with N standing for 2^k");
  bench->add_option("--bits", ks, "exponent bit lengths k")->delimiter(',');
  bench->add_option("--reps", reps, "repetitions, minimum is reported")->check(CLI::PositiveNumber);
  bench->add_option("--limit", limit, "oracle expansion limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (grig->parsed()) {
      if (gwp->parsed()) return verdict(gpw::grig::grig_wp(gpw::grig::parse_word(gexpr)), c);
      return verdict(gpw::grig::grig_pwp(gpw::grig::parse_power_word(gexpr), ell), c);
    }
    const gpw::GroupSpecFile g = gpw::parse_group(c.group);

    if (wp->parsed()) return verdict(gpw::word_problem(expand_expr(expr, g), g.spec), c);

    if (pwp->parsed()) {
      gpw::PwpOptions opt;
      opt.expansion_limit = expansion_limit;
      const auto r = gpw::power_word_problem_report(gpw::parse_pword(expr, g), g.spec, opt);
      json j;
      j["stats"] = {{"steps", r.r_steps},
                    {"K", r.K.str()},
                    {"intervals", r.intervals},
                    {"shortened_exponents", strings(r.shortened_exponents)},
                    {"solver", r.solver}};
      return verdict(r.identity, c, j);
    }

    if (spwp->parsed()) {
      gpw::SimplePowerWord sw;
      for (const auto& f : gpw::parse_pword(expr, g).factors) {
        if (f.exponent != 1 && f.word.size() > 1)
          throw gpw::DomainError("spwp: factor with more than one letter raised to a power");
        for (const auto& a : f.word) sw.push_back({a, f.exponent});
      }
      return verdict(solver == "sigma" ? gpw::sigma_check(sw, g.spec) : gpw::simple_pwp_direct(sw, g.spec), c);
    }

    if (nf->parsed()) {
      const auto n = gpw::length_lex_nf(expand_expr(expr, g), g.spec);
      if (c.json)
        std::cout << json{{"nf", gpw::render_word(n, g)}, {"length", n.size()}}.dump() << "\n";
      else
        std::cout << gpw::render_word(n, g) << "\n";
      return 0;
    }

    if (cnf->parsed()) {
      const auto r = gpw::cyclic_normal_form(expand_expr(expr, g), g.spec);
      if (c.json)
        std::cout << json{{"cnf", gpw::render_word(r.u, g)}, {"conj", gpw::render_word(r.conj, g)}}.dump() << "\n";
      else
        std::cout << "cnf: " << gpw::render_word(r.u, g) << "\nconj: " << gpw::render_word(r.conj, g) << "\n";
      return 0;
    }

    if (omega->parsed()) {
      const auto r = gpw::omega_canonicalize(expand_expr(expr, g), g.spec);
      if (c.json)
        std::cout << json{{"p", gpw::render_word(r.p, g)}, {"iota", r.iota}, {"t", gpw::render_word(r.t, g)}}.dump()
                  << "\n";
      else
        std::cout << "p: " << gpw::render_word(r.p, g) << "\niota: " << r.iota << "\nt: " << gpw::render_word(r.t, g)
                  << "\n";
      return 0;
    }

    if (conj->parsed())
      return verdict(gpw::conjugate_cc(expand_expr(expr, g), expand_expr(expr2, g), g.spec), c, json::object(),
                     "conjugate", "not-conjugate");

    if (knap->parsed()) {
      const auto parts = split_parts(expr, ';');
      if (parts.size() < 2) throw gpw::ParseError("knapsack: expected 'g1 ; ... ; gn ; target'");
      gpw::KnapsackInstance inst;
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) inst.factors.push_back(expand_expr(parts[i], g));
      inst.target = expand_expr(parts.back(), g);
      inst.bound = gpw::parse_bigint(bound);
      gpw::KnapsackOptions opt;
      opt.threads = threads;
      const auto r = gpw::knapsack_solve(inst, g.spec, opt);
      if (c.json) {
        json j{{"verdict", r.sat ? "SAT" : "UNSAT_within_bound"}, {"stats", {{"verified", r.verified}}}};
        if (r.sat) j["witness"] = strings(r.witness);
        std::cout << j.dump() << "\n";
      } else if (r.sat) {
        std::cout << "SAT (";
        for (std::size_t i = 0; i < r.witness.size(); ++i) std::cout << (i ? "," : "") << r.witness[i];
        std::cout << ")\n";
      } else {
        std::cout << "UNSAT_within_bound\n";
      }
      return r.sat ? 0 : 1;
    }

    if (orc->parsed()) {
      const auto w = gpw::parse_pword(expr, g);
      return verdict(rle ? gpw::oracle::free_rle_reduce(w, g.spec) : gpw::oracle::expand_reduce(w, g.spec, limit), c);
    }

    if (bench->parsed()) return run_bench(g, tpl, ks, reps, limit);
  } catch (const gpw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
