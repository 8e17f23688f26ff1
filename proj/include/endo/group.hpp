#pragma once

// Small finite groups given by multiplication tables, with element 0 the
// identity.

#include "endo/error.hpp"
#include "endo/weyl.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace endo {

struct FiniteGroup {
  std::string name;
  std::vector<std::vector<std::size_t>> table;  // table[a][b] = a * b
  std::vector<std::size_t> generators;

  std::size_t size() const { return table.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }

  std::size_t inverse(std::size_t a) const {
    for (std::size_t b = 0; b < size(); ++b)
      if (table[a][b] == 0) return b;
    fail(ErrorKind::ConfigError, "element without inverse");
  }

  std::size_t order(std::size_t a) const {
    std::size_t n = 1;
    for (std::size_t p = a; p != 0; p = mul(a, p)) ++n;
    return n;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Elements of <a>, in the order 1, a, a^2, ...
  std::vector<std::size_t> cyclic_subgroup(std::size_t a) const {
    std::vector<std::size_t> out{0};
    for (std::size_t p = a; p != 0; p = mul(a, p)) out.push_back(p);
    return out;
  }
};

/// Checks identity, closure, associativity, inverses, and that the generators
/// generate. Throws ConfigError naming the first violation.
inline void validate_group(const FiniteGroup& g) {
  const std::size_t n = g.size();
  ensure(n > 0, ErrorKind::ConfigError, "empty group table");
  for (std::size_t a = 0; a < n; ++a) {
    ensure(g.table[a].size() == n, ErrorKind::ConfigError, "group table is not square");
    for (auto b : g.table[a]) ensure(b < n, ErrorKind::ConfigError, "group table entry out of range");
    ensure(g.table[0][a] == a && g.table[a][0] == a, ErrorKind::ConfigError, "element 0 is not the identity");
    std::vector<std::size_t> row = g.table[a];
    std::sort(row.begin(), row.end());
    for (std::size_t i = 0; i < n; ++i)
      ensure(row[i] == i, ErrorKind::ConfigError, "row " + std::to_string(a) + " is not a permutation");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        ensure(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)), ErrorKind::ConfigError,
               "table is not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                   std::to_string(c) + ")");
  std::set<std::size_t> reached{0};
  std::vector<std::size_t> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (auto s : g.generators) {
      ensure(s < n, ErrorKind::ConfigError, "generator out of range");
      if (reached.insert(g.mul(s, queue[head])).second) queue.push_back(g.mul(s, queue[head]));
    }
  ensure(reached.size() == n, ErrorKind::ConfigError, "generators do not generate the group");
}

/// Closure of permutation generators; elements in breadth-first order from the
/// identity.
inline FiniteGroup permutation_group(const std::string& name, const std::vector<Perm>& gens, std::size_t degree) {
  std::vector<Perm> elems{identity_perm(degree)};
  std::map<Perm, std::size_t> index{{elems[0], 0}};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& s : gens) {
      Perm p = compose(s, elems[head]);
      if (index.emplace(p, elems.size()).second) elems.push_back(p);
    }
  FiniteGroup g;
  g.name = name;
  g.table.assign(elems.size(), std::vector<std::size_t>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) g.table[a][b] = index.at(compose(elems[a], elems[b]));
  for (const auto& s : gens) g.generators.push_back(index.at(s));
  return g;
}

inline FiniteGroup trivial_group() { return permutation_group("1", {}, 1); }

inline FiniteGroup cyclic_group(std::size_t n) {
  ensure(n >= 1, ErrorKind::ConfigError, "cyclic group order must be positive");
  Perm r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = (i + 1) % n;
  if (n == 1) return trivial_group();
  return permutation_group("Z" + std::to_string(n), {r}, n);
}

inline FiniteGroup klein_group() { return permutation_group("Z2xZ2", {{1, 0, 3, 2}, {2, 3, 0, 1}}, 4); }

inline FiniteGroup symmetric_group(std::size_t n) {
  ensure(n >= 1 && n <= 4, ErrorKind::ConfigError, "symmetric groups are available up to S4");
  if (n == 1) return trivial_group();
  Perm t = identity_perm(n), c(n);
  std::swap(t[0], t[1]);
  for (std::size_t i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return permutation_group("S" + std::to_string(n), n == 2 ? std::vector<Perm>{t} : std::vector<Perm>{t, c}, n);
}

/// "1", "Zn", "Z2xZ2", "Sn".
inline FiniteGroup standard_group(const std::string& name) {
  if (name == "1" || name == "trivial") return trivial_group();
  if (name == "Z2xZ2" || name == "klein") return klein_group();
  if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'S') &&
      std::all_of(name.begin() + 1, name.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    std::size_t n = std::stoul(name.substr(1));
    return name[0] == 'Z' ? cyclic_group(n) : symmetric_group(n);
  }
  fail(ErrorKind::ConfigError, "unknown standard group '" + name + "'");
}

}  // namespace endo
