#ifndef GPW_IO_HPP
#define GPW_IO_HPP

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpw/errors.hpp"
#include "gpw/symbolic.hpp"
#include "gpw/traces.hpp"

namespace gpw {

/// A parsed group file: the graph product plus the generator names bound to letters.
struct GroupSpecFile {
  GraphProductSpec spec;
  std::map<std::string, Letter> generators;

  std::optional<Letter> lookup(const std::string& name) const {
    auto it = generators.find(name);
    if (it == generators.end()) return std::nullopt;
    return it->second;
  }
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace detail

/**
 * Line grammar, `#` starts a comment:
 *   vertex <name> Z | Zq:<odd q> | table:<path>
 *   indep <name> <name>
 *   order <name> ...
 * Table paths are resolved against `base_dir`.
 */
inline GroupSpecFile parse_group_string(const std::string& text, const std::filesystem::path& base_dir = {}) {
  struct Decl {
    std::string name;
    BaseGroup group;
    std::size_t line;
  };
  std::vector<Decl> decls;
  std::vector<std::pair<std::string, std::string>> indep;
  std::vector<std::size_t> indep_line;
  std::optional<std::vector<std::string>> order;
  std::size_t order_line = 0;

  std::istringstream in(text);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() != 3) throw ParseError("expected: vertex <name> <kind>", lineno);
      if (!detail::valid_name(tok[1])) throw ParseError("invalid vertex name '" + tok[1] + "'", lineno);
      for (const auto& d : decls)
        if (d.name == tok[1]) throw ParseError("duplicate vertex '" + tok[1] + "'", lineno);
      const std::string& kind = tok[2];
      try {
        if (kind == "Z") {
          decls.push_back({tok[1], BaseGroup::integer(), lineno});
        } else if (kind.rfind("Zq:", 0) == 0) {
          const std::string q = kind.substr(3);
          if (q.empty() || q.size() > 18 || !std::all_of(q.begin(), q.end(), ::isdigit))
            throw ParseError("malformed modulus '" + q + "'", lineno);
          decls.push_back({tok[1], BaseGroup::cyclic_odd(std::stoll(q)), lineno});
        } else if (kind.rfind("table:", 0) == 0) {
          std::filesystem::path p = kind.substr(6);
          if (p.is_relative()) p = base_dir / p;
          BaseGroup g = BaseGroup::load_table(p.string());
          if (g.order() < 2) throw ParseError("table group of vertex '" + tok[1] + "' is trivial", lineno);
          decls.push_back({tok[1], std::move(g), lineno});
        } else {
          throw ParseError("unknown vertex kind '" + kind + "'", lineno);
        }
      } catch (const ParseError& e) {
        if (e.line()) throw;
        throw ParseError(std::string(e.what()), lineno);
      } catch (const MalformedDescriptor& e) {
        throw ParseError(e.what(), lineno);
      }
    } else if (tok[0] == "indep") {
      if (tok.size() != 3) throw ParseError("expected: indep <name> <name>", lineno);
      indep.emplace_back(tok[1], tok[2]);
      indep_line.push_back(lineno);
    } else if (tok[0] == "order") {
      if (order) throw ParseError("duplicate order line", lineno);
      order.emplace(tok.begin() + 1, tok.end());
      order_line = lineno;
    } else {
      throw ParseError("unknown directive '" + tok[0] + "'", lineno);
    }
  }
  if (decls.empty()) throw ParseError("no vertices declared");

  std::vector<std::size_t> perm(decls.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  if (order) {
    if (order->size() != decls.size()) throw ParseError("order must list every vertex exactly once", order_line);
    for (std::size_t i = 0; i < order->size(); ++i) {
      auto it = std::find_if(decls.begin(), decls.end(), [&](const Decl& d) { return d.name == (*order)[i]; });
      if (it == decls.end()) throw ParseError("order names unknown vertex '" + (*order)[i] + "'", order_line);
      perm[i] = static_cast<std::size_t>(it - decls.begin());
    }
    auto sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ParseError("order lists a vertex twice", order_line);
  }

  std::vector<std::string> names;
  std::vector<BaseGroup> bases;
  std::map<std::string, Vertex> id;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    names.push_back(decls[perm[i]].name);
    bases.push_back(decls[perm[i]].group);
    id[names.back()] = static_cast<Vertex>(i);
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t k = 0; k < indep.size(); ++k) {
    auto a = id.find(indep[k].first), b = id.find(indep[k].second);
    if (a == id.end() || b == id.end()) throw ParseError("indep names an unknown vertex", indep_line[k]);
    if (a->second == b->second) throw ParseError("a vertex cannot be independent of itself", indep_line[k]);
    pairs.emplace_back(a->second, b->second);
  }

  GroupSpecFile g{GraphProductSpec(names, bases, pairs), {}};
  std::map<std::string, int> bare_count;
  for (Vertex v = 0; v < names.size(); ++v)
    if (bases[v].kind() == BaseGroup::Kind::FiniteTable)
      for (std::size_t e = 1; e < bases[v].order(); ++e) ++bare_count[bases[v].element_names()[e]];
  for (Vertex v = 0; v < names.size(); ++v) {
    if (bases[v].kind() != BaseGroup::Kind::FiniteTable) {
      g.generators[names[v]] = Letter{v, {1}};
      continue;
    }
    for (std::size_t e = 1; e < bases[v].order(); ++e) {
      const std::string& en = bases[v].element_names()[e];
      const Letter a{v, {e}};
      g.generators[names[v] + "." + en] = a;
      if (bare_count[en] == 1 && !id.count(en)) g.generators[en] = a;
    }
  }
  return g;
}

inline GroupSpecFile parse_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_string(ss.str(), std::filesystem::path(path).parent_path());
}

namespace detail {

class PwordLexer {
 public:
  explicit PwordLexer(std::string_view s) : s_(s) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  std::string name() {
    skip();
    const std::size_t b = i_;
    while (i_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.'))
      ++i_;
    if (b == i_) throw ParseError("expected a generator at column " + std::to_string(b + 1));
    return std::string(s_.substr(b, i_ - b));
  }
  BigInt integer() {
    skip();
    const std::size_t b = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    const std::string_view t = s_.substr(b, i_ - b);
    if (t.empty() || t == "-" || t == "+") throw ParseError("malformed exponent at column " + std::to_string(b + 1));
    return parse_bigint(t);
  }
  std::size_t column() const { return i_ + 1; }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

// Appends a letter, multiplying into a same-vertex neighbour.
inline void append_collapsed(GammaWord& w, const Letter& a, const GraphProductSpec& spec) {
  if (!w.empty() && w.back().vertex == a.vertex) {
    if (auto m = merge(spec, w.back(), a))
      w.back() = *m;
    else
      w.pop_back();
    return;
  }
  w.push_back(a);
}

}  // namespace detail

/**
 * pword  := factor+
 * factor := atom | atom '^' int | '(' atom+ ')' '^' int
 * atom   := name | name "'"
 * Consecutive plain atoms form one exponent-1 factor.
 */
inline PowerWord parse_pword(std::string_view expr, const GroupSpecFile& g) {
  detail::PwordLexer lx(expr);
  PowerWord w;
  GammaWord plain;
  auto flush_plain = [&] {
    if (!plain.empty()) w.factors.push_back({std::move(plain), 1});
    plain.clear();
  };
  auto atom = [&]() -> Letter {
    const std::size_t col = lx.column();
    const std::string n = lx.name();
    auto a = g.lookup(n);
    if (!a) throw ParseError("unknown generator '" + n + "' at column " + std::to_string(col));
    return lx.eat('\'') ? inverse(g.spec, *a) : *a;
  };
  if (lx.at_end()) return w;
  while (!lx.at_end()) {
    if (lx.eat('(')) {
      flush_plain();
      GammaWord inner;
      while (!lx.eat(')')) {
        if (lx.at_end()) throw ParseError("missing ')'");
        detail::append_collapsed(inner, atom(), g.spec);
      }
      if (!lx.eat('^')) throw ParseError("expected '^' after ')' at column " + std::to_string(lx.column()));
      w.factors.push_back({std::move(inner), lx.integer()});
      continue;
    }
    const Letter a = atom();
    if (lx.eat('^')) {
      flush_plain();
      w.factors.push_back({{a}, lx.integer()});
    } else {
      detail::append_collapsed(plain, a, g.spec);
    }
  }
  flush_plain();
  return w;
}

/// Generator text for one letter: repeated generators for Z and Z/q, element names for tables.
inline std::string render_letter(const Letter& a, const GroupSpecFile& g) {
  const BaseGroup& b = g.spec.base(a.vertex);
  const std::string& v = g.spec.name(a.vertex);
  if (b.kind() == BaseGroup::Kind::FiniteTable) {
    const std::string e = b.element_text(a.elem);
    auto bare = g.lookup(e);
    return bare && *bare == a ? e : v + "." + e;
  }
  const BigInt n = abs_big(a.elem.code);
  const std::string atom = a.elem.code < 0 ? v + "'" : v;
  std::string out;
  for (BigInt k = 0; k < n; ++k) out += (k ? " " : "") + atom;
  return out;
}

inline std::string render_word(const GammaWord& w, const GroupSpecFile& g) {
  std::string out;
  for (const auto& a : w) out += (out.empty() ? "" : " ") + render_letter(a, g);
  return out;
}

inline std::string render(const PowerWord& w, const GroupSpecFile& g) {
  std::string out;
  bool prev_plain = false;
  for (const auto& f : w.factors) {
    std::string part;
    if (f.exponent == 1 && !prev_plain && !f.word.empty()) {
      part = render_word(f.word, g);
      prev_plain = true;
    } else {
      part = "(" + render_word(f.word, g) + ")^" + f.exponent.str();
      prev_plain = false;
    }
    out += (out.empty() ? "" : " ") + part;
  }
  return out;
}

}  // namespace gpw

#endif
