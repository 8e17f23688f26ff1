#pragma once

// Adjoint based root data built from Cartan types, with pinned diagram
// automorphisms.

#include "endo/error.hpp"
#include "endo/linalg.hpp"
#include "endo/weyl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace endo {

using IntMat = std::vector<std::vector<int>>;

struct ComponentSpec {
  char type = 'A';
  int rank = 1;
  bool operator==(const ComponentSpec&) const = default;
};

struct CartanSpec {
  std::vector<ComponentSpec> components;
  Perm theta;  // permutation of all simple-root nodes, in input order
};

/// Cartan matrix of a simple type in Bourbaki numbering, Kac convention
/// A[i][j] = <alpha_j, coroot_i>.
inline IntMat cartan_matrix(char type, int n) {
  auto bad = [&] { fail(ErrorKind::InvalidCartanType, std::string(1, type) + std::to_string(n)); };
  bool ok = (type == 'A' && n >= 1) || (type == 'B' && n >= 2) || (type == 'C' && n >= 2) ||
            (type == 'D' && n >= 4) || (type == 'E' && n >= 6 && n <= 8) || (type == 'F' && n == 4) ||
            (type == 'G' && n == 2);
  if (!ok) bad();
  IntMat a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;  // alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;  // alpha_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(2, 3);
      a[1][2] = -1;
      a[2][1] = -2;
      break;
    case 'G':
      a[0][1] = -3;
      a[1][0] = -1;
      break;
  }
  return a;
}

inline std::size_t root_count(char type, int n) {
  switch (type) {
    case 'A': return static_cast<std::size_t>(n * (n + 1));
    case 'B':
    case 'C': return static_cast<std::size_t>(2 * n * n);
    case 'D': return static_cast<std::size_t>(2 * n * (n - 1));
    case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    case 'F': return 48;
    case 'G': return 12;
  }
  return 0;
}

struct Component {
  char type;
  int rank;
  std::vector<std::size_t> nodes;
};

struct BasedRootDatum {
  IntMat cartan;
  std::vector<QVec> roots;  // simple-root coordinates; positives (by height) then negatives
  std::vector<Component> components;        // canonical order: type, rank, first node
  std::vector<std::size_t> component_of;    // node -> index into components
  QMat gram;                                // W-invariant form on roots, simple-root basis
  Perm theta;
  std::size_t theta_order = 1;

  std::size_t rank() const { return cartan.size(); }
  std::size_t positive_count() const { return roots.size() / 2; }

  ReflectionSystem reflection_system() const {
    ReflectionSystem sys;
    for (const auto& row : cartan) {
      QVec r;
      for (int x : row) r.push_back(Rational(x));
      sys.coroots.push_back(std::move(r));
    }
    return sys;
  }

  std::set<QVec> root_set() const { return {roots.begin(), roots.end()}; }

  /// theta acting on simple-root coordinates.
  QVec apply_theta(const QVec& root) const { return permute_coords(theta, root); }

  static QVec permute_coords(const Perm& p, const QVec& v) {
    QVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[p[i]] = v[i];
    return out;
  }

  /// Smallest n > 0 with theta^n(root) = root.
  std::size_t theta_orbit_size(const QVec& root) const {
    QVec r = apply_theta(root);
    std::size_t n = 1;
    while (r != root) {
      r = apply_theta(r);
      ++n;
    }
    return n;
  }
};

inline bool preserves_cartan(const IntMat& a, const Perm& p) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[p[i]][p[j]] != a[i][j]) return false;
  return true;
}

namespace detail {

inline std::vector<QVec> reflection_closure(const IntMat& a) {
  const std::size_t n = a.size();
  std::set<QVec> seen;
  std::vector<QVec> queue;
  for (std::size_t i = 0; i < n; ++i) {
    queue.push_back(unit(n, i));
    seen.insert(queue.back());
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t i = 0; i < n; ++i) {
      QVec r = queue[head];
      Rational pairing = 0;
      for (std::size_t j = 0; j < n; ++j) pairing += r[j] * a[i][j];
      r[i] -= pairing;
      if (seen.insert(r).second) queue.push_back(r);
    }
  }
  return queue;
}

inline Rational height(const QVec& r) {
  Rational h = 0;
  for (const auto& x : r) h += x;
  return h;
}

}  // namespace detail

/// Positive roots first ordered by (height, coordinates), then their negatives
/// in the same order.
inline std::vector<QVec> order_roots(std::vector<QVec> all) {
  std::vector<QVec> pos;
  for (auto& r : all)
    if (detail::height(r) > 0) pos.push_back(r);
  std::sort(pos.begin(), pos.end(), [](const QVec& x, const QVec& y) {
    auto hx = detail::height(x), hy = detail::height(y);
    if (hx != hy) return hx < hy;
    return x > y;
  });
  std::vector<QVec> out = pos;
  for (auto& r : pos) out.push_back(-r);
  return out;
}

inline BasedRootDatum build_based_root_datum(const CartanSpec& spec, std::size_t max_rank_guard = 8) {
  ensure(!spec.components.empty(), ErrorKind::InvalidCartanType, "empty component list");
  BasedRootDatum d;
  std::size_t total = 0;
  for (const auto& c : spec.components) {
    cartan_matrix(c.type, c.rank);  // validates label and rank
    total += static_cast<std::size_t>(c.rank);
  }
  ensure(total <= max_rank_guard, ErrorKind::RankGuardExceeded,
         "total rank " + std::to_string(total) + " exceeds guard " + std::to_string(max_rank_guard));
  d.cartan.assign(total, std::vector<int>(total, 0));
  d.component_of.assign(total, 0);
  std::size_t offset = 0;
  std::vector<Component> comps;
  for (const auto& c : spec.components) {
    IntMat block = cartan_matrix(c.type, c.rank);
    Component comp{c.type, c.rank, {}};
    for (int i = 0; i < c.rank; ++i) {
      comp.nodes.push_back(offset + i);
      for (int j = 0; j < c.rank; ++j) d.cartan[offset + i][offset + j] = block[i][j];
    }
    comps.push_back(comp);
    offset += static_cast<std::size_t>(c.rank);
  }
  std::stable_sort(comps.begin(), comps.end(), [](const Component& x, const Component& y) {
    return std::tuple(x.type, x.rank, x.nodes.front()) < std::tuple(y.type, y.rank, y.nodes.front());
  });
  d.components = comps;
  for (std::size_t ci = 0; ci < comps.size(); ++ci)
    for (auto node : comps[ci].nodes) d.component_of[node] = ci;

  Perm theta = spec.theta.empty() ? identity_perm(total) : spec.theta;
  ensure(theta.size() == total && is_permutation(theta), ErrorKind::AutomorphismMismatch,
         "theta must be a permutation of all " + std::to_string(total) + " nodes");
  ensure(preserves_cartan(d.cartan, theta), ErrorKind::AutomorphismMismatch, "theta does not preserve the Cartan matrix");
  d.theta = theta;
  d.theta_order = perm_order(theta);

  d.roots = order_roots(detail::reflection_closure(d.cartan));
  std::size_t expected = 0;
  for (const auto& c : comps) expected += root_count(c.type, c.rank);
  ensure(d.roots.size() == expected, ErrorKind::InternalInconsistency, "root count mismatch");

  // (alpha_i, alpha_j) = l_i A[i][j] with l_i = |alpha_i|^2 / 2, normalized
  // per component so the shortest simple root has l = 1.
  std::vector<Rational> len(total, Rational(0));
  for (const auto& c : comps) {
    len[c.nodes.front()] = 1;
    std::vector<std::size_t> stack{c.nodes.front()};
    while (!stack.empty()) {
      auto i = stack.back();
      stack.pop_back();
      for (auto j : c.nodes)
        if (j != i && d.cartan[i][j] != 0 && len[j] == 0) {
          len[j] = len[i] * Rational(d.cartan[i][j]) / Rational(d.cartan[j][i]);
          stack.push_back(j);
        }
    }
    Rational lo = len[c.nodes.front()];
    for (auto j : c.nodes) lo = std::min(lo, len[j]);
    for (auto j : c.nodes) len[j] /= lo;
  }
  d.gram.assign(total, zeros(total));
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) d.gram[i][j] = len[i] * Rational(d.cartan[i][j]);
  return d;
}

/// A validated pinning-preserving automorphism together with its induced
/// linear maps on X^*(T)_Q (simple-root coordinates) and X_*(T)_Q
/// (fundamental-coweight coordinates).
struct PinnedAutomorphism {
  Perm perm;
  std::size_t order = 1;
  QMat on_characters;
  QMat on_cocharacters;
};

inline PinnedAutomorphism validate_pinned_automorphism(const BasedRootDatum& d, const Perm& perm,
                                                       const std::vector<Perm>& galois = {}) {
  ensure(perm.size() == d.rank() && is_permutation(perm), ErrorKind::NotDiagramAutomorphism,
         "not a permutation of the simple roots");
  ensure(preserves_cartan(d.cartan, perm), ErrorKind::NotDiagramAutomorphism, "permutation breaks the Cartan matrix");
  for (std::size_t g = 0; g < galois.size(); ++g)
    ensure(compose(perm, galois[g]) == compose(galois[g], perm), ErrorKind::NonCommuting,
           "fails to commute with Galois generator " + std::to_string(g));
  PinnedAutomorphism out;
  out.perm = perm;
  out.order = perm_order(perm);
  out.on_characters.assign(d.rank(), zeros(d.rank()));
  for (std::size_t i = 0; i < d.rank(); ++i) out.on_characters[perm[i]][i] = 1;
  out.on_cocharacters = out.on_characters;  // dual bases permute identically
  return out;
}

/// Generator set of W with reduction helpers; refuses oversized ranks.
struct WeylGroupHandle {
  ReflectionSystem system;
  std::set<QVec> roots;

  QMat reflection(std::size_t i) const { return system.reflection(i); }
  DominantReduction reduce(const QVec& v) const { return reduce_to_dominant(system, v); }
  std::optional<AutomorphismSplit> split(const QMat& m) const { return split_automorphism(system, roots, m); }
  std::vector<QMat> elements(std::size_t guard = 1000000) const { return enumerate_weyl_group(system, guard); }
};

inline WeylGroupHandle weyl_group_elements(const BasedRootDatum& d, std::size_t max_rank_guard = 8) {
  ensure(d.rank() <= max_rank_guard, ErrorKind::RankGuardExceeded, "rank exceeds Weyl group guard");
  return {d.reflection_system(), d.root_set()};
}

}  // namespace endo
