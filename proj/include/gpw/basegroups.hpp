#ifndef GPW_BASEGROUPS_HPP
#define GPW_BASEGROUPS_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gpw/bigint.hpp"
#include "gpw/errors.hpp"

namespace gpw {

/**
 * A non-identity element of a base group. The meaning of `code` depends on
 * the group kind: a nonzero integer for Z, a residue in [1, q-1] for Z/q,
 * a table index other than 0 for finite tables.
 */
struct BaseElement {
  BigInt code;

  friend bool operator==(const BaseElement&, const BaseElement&) = default;
};

/// An element or the identity (std::nullopt).
using MaybeElement = std::optional<BaseElement>;

class BaseGroup {
 public:
  enum class Kind { Integer, CyclicOdd, FiniteTable };

  static BaseGroup integer() { return BaseGroup(Kind::Integer); }

  static BaseGroup cyclic_odd(std::int64_t q) {
    if (q < 3 || q % 2 == 0)
      throw MalformedDescriptor("cyclic modulus must be odd and >= 3, got " + std::to_string(q));
    BaseGroup g(Kind::CyclicOdd);
    g.modulus_ = static_cast<std::uint64_t>(q);
    return g;
  }

  /// `table[i][j]` is the index of e_i * e_j; index 0 must be the identity.
  static BaseGroup finite_table(std::vector<std::string> names,
                                std::vector<std::vector<std::size_t>> table) {
    auto t = std::make_shared<Table>();
    t->names = std::move(names);
    t->mul = std::move(table);
    validate(*t);
    BaseGroup g(Kind::FiniteTable);
    g.table_ = std::move(t);
    return g;
  }

  /// Reads the table file format: first line lists element names (identity
  /// first), then one row per element giving products by name. `#` starts a
  /// comment.
  static BaseGroup parse_table(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_of;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::istringstream ls(line);
      std::vector<std::string> toks;
      for (std::string tok; ls >> tok;) toks.push_back(tok);
      if (toks.empty()) continue;
      rows.push_back(std::move(toks));
      line_of.push_back(lineno);
    }
    if (rows.empty()) throw ParseError("empty group table");
    std::vector<std::string> names = rows[0];
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (!index.emplace(names[i], i).second)
        throw ParseError("duplicate element name '" + names[i] + "'", line_of[0]);
    if (rows.size() != names.size() + 1)
      throw ParseError("expected " + std::to_string(names.size()) + " table rows, got " +
                           std::to_string(rows.size() - 1),
                       line_of.back());
    std::vector<std::vector<std::size_t>> mul(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& row = rows[i + 1];
      if (row.size() != names.size())
        throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                             std::to_string(names.size()),
                         line_of[i + 1]);
      for (const auto& tok : row) {
        auto it = index.find(tok);
        if (it == index.end()) throw ParseError("unknown element '" + tok + "'", line_of[i + 1]);
        mul[i].push_back(it->second);
      }
    }
    try {
      return finite_table(std::move(names), std::move(mul));
    } catch (const MalformedDescriptor& e) {
      throw ParseError(e.what());
    }
  }

  static BaseGroup load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open group table '" + path + "'");
    return parse_table(in);
  }

  Kind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  /// Group order, 0 for Z.
  std::size_t order() const noexcept {
    switch (kind_) {
      case Kind::Integer: return 0;
      case Kind::CyclicOdd: return static_cast<std::size_t>(modulus_);
      case Kind::FiniteTable: return table_->names.size();
    }
    return 0;
  }

  const std::vector<std::string>& element_names() const {
    static const std::vector<std::string> none;
    return table_ ? table_->names : none;
  }

  bool contains(const BaseElement& g) const {
    switch (kind_) {
      case Kind::Integer: return g.code != 0;
      case Kind::CyclicOdd: return g.code > 0 && g.code < modulus_;
      case Kind::FiniteTable: return g.code > 0 && g.code < table_->names.size();
    }
    return false;
  }

  MaybeElement multiply(const MaybeElement& g, const MaybeElement& h) const {
    if (!g) return h;
    if (!h) return g;
    switch (kind_) {
      case Kind::Integer: return wrap(g->code + h->code);
      case Kind::CyclicOdd: return wrap((g->code + h->code) % modulus_);
      case Kind::FiniteTable: return wrap(table_->mul[index(*g)][index(*h)]);
    }
    return std::nullopt;
  }

  BaseElement invert(const BaseElement& g) const {
    switch (kind_) {
      case Kind::Integer: return {-g.code};
      case Kind::CyclicOdd: return {modulus_ - g.code};
      case Kind::FiniteTable: return {table_->inverse[index(g)]};
    }
    return g;
  }

  MaybeElement power(const BaseElement& g, const BigInt& x) const {
    switch (kind_) {
      case Kind::Integer: return wrap(g.code * x);
      case Kind::CyclicOdd: return wrap(floor_mod(g.code * x, modulus_));
      case Kind::FiniteTable: {
        std::size_t i = index(g);
        std::size_t r = static_cast<std::size_t>(floor_mod(x, table_->elem_order[i]));
        std::size_t acc = 0;
        for (std::size_t k = 0; k < r; ++k) acc = table_->mul[acc][i];
        return wrap(acc);
      }
    }
    return std::nullopt;
  }

  bool has_involution() const {
    if (kind_ != Kind::FiniteTable) return false;
    for (std::size_t i = 1; i < table_->names.size(); ++i)
      if (table_->elem_order[i] == 2) return true;
    return false;
  }

  /// Canonical strict total order: Z as 1 < -1 < 2 < -2 < ..., otherwise by code.
  bool less(const BaseElement& g, const BaseElement& h) const {
    if (kind_ == Kind::Integer) {
      const BigInt ag = abs_big(g.code), ah = abs_big(h.code);
      if (ag != ah) return ag < ah;
      return g.code > h.code;
    }
    return g.code < h.code;
  }

  /// Short human-readable element text (table name or integer code).
  std::string element_text(const BaseElement& g) const {
    if (kind_ == Kind::FiniteTable) return table_->names.at(index(g));
    return g.code.str();
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Integer: return "Z";
      case Kind::CyclicOdd: return "Zq:" + std::to_string(modulus_);
      case Kind::FiniteTable: return "table(" + std::to_string(table_->names.size()) + ")";
    }
    return "?";
  }

 private:
  struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> mul;
    std::vector<std::size_t> inverse;
    std::vector<std::size_t> elem_order;
  };

  explicit BaseGroup(Kind k) : kind_(k) {}

  static MaybeElement wrap(const BigInt& code) {
    if (code == 0) return std::nullopt;
    return BaseElement{code};
  }

  std::size_t index(const BaseElement& g) const {
    if (g.code < 0 || g.code >= table_->names.size())
      throw MalformedDescriptor("table index " + g.code.str() + " out of range");
    return static_cast<std::size_t>(g.code);
  }

  static void validate(Table& t) {
    const std::size_t n = t.names.size();
    if (n == 0) throw MalformedDescriptor("group table has no elements");
    if (t.mul.size() != n) throw MalformedDescriptor("group table has wrong number of rows");
    for (const auto& row : t.mul) {
      if (row.size() != n) throw MalformedDescriptor("group table row has wrong length");
      std::vector<bool> seen(n, false);
      for (std::size_t v : row) {
        if (v >= n || seen[v]) throw MalformedDescriptor("group table row is not a permutation");
        seen[v] = true;
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<bool> seen(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[t.mul[i][j]]) throw MalformedDescriptor("group table column is not a permutation");
        seen[t.mul[i][j]] = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (t.mul[0][i] != i || t.mul[i][0] != i)
        throw MalformedDescriptor("element 0 is not the identity");
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (t.mul[t.mul[a][b]][c] != t.mul[a][t.mul[b][c]])
            throw MalformedDescriptor("group table is not associative");
    t.inverse.assign(n, 0);
    t.elem_order.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (t.mul[i][j] == 0) t.inverse[i] = j;
      std::size_t acc = i, ord = 1;
      while (acc != 0) {
        acc = t.mul[acc][i];
        ++ord;
      }
      t.elem_order[i] = ord;
    }
  }

  Kind kind_;
  std::uint64_t modulus_ = 0;
  std::shared_ptr<const Table> table_;
};

}  // namespace gpw

#endif
