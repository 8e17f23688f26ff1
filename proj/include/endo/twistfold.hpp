#pragma once

// Folding an absolute root system by a diagram automorphism: the restricted
// (possibly non-reduced) root system on the fixed apartment, its affine level
// sets, the simple affine roots cutting out the alcove, their marks, and the
// translation lattice R.
//
// Coordinates on the apartment are taken in the basis of fundamental
// coweights dual to the restricted simple roots, so a restricted root is an
// integer row vector and evaluation is a dot product.

#include "endo/error.hpp"
#include "endo/linalg.hpp"
#include "endo/rootdata.hpp"
#include "endo/weyl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace endo {

/// Lambda(beta) = period * Z + offset, with 0 <= offset < period.
struct LevelSet {
  Rational period;
  Rational offset;

  bool contains(const Rational& lambda) const { return in_coset(lambda, period, offset); }
  Rational smallest_positive() const { return offset > 0 ? offset : period; }
  bool operator==(const LevelSet&) const = default;
};

struct RestrictedRoot {
  QVec vector;   // functional on the apartment
  QVec coroot;   // vector in the apartment
  int e = 1;     // size of the theta-orbit of any absolute root restricting here
  bool divisible = false;
  bool positive = true;
  std::size_t component = 0;              // index into RestrictedRootSystem::components
  std::vector<std::size_t> theta_orbit;   // indices into BasedRootDatum::roots
  LevelSet levels;

  bool indivisible() const { return !divisible; }
};

struct AffineSimpleRoot {
  std::size_t gradient = 0;  // index into RestrictedRootSystem::roots
  Rational constant = 0;
  Integer mark = 0;
  std::size_t component = 0;
  bool lowest = false;       // the node attached to the lowest root of its component
  QVec vertex;               // the opposite vertex s_beta (other components at 0)
};

/// One element of I(G)/Theta: a theta-orbit of absolute simple factors.
struct FoldComponent {
  std::vector<std::size_t> absolute_components;
  std::vector<std::size_t> nodes;         // restricted simple nodes
  std::vector<std::size_t> affine_nodes;  // indices into RestrictedRootSystem::affine
  std::size_t lowest_root = 0;            // beta_0 (negative restricted root)
  Rational lambda0 = 0;
};

struct RestrictedRootSystem {
  BasedRootDatum datum;
  std::vector<std::vector<std::size_t>> node_orbits;  // restricted node -> absolute nodes
  std::vector<std::size_t> restricted_node;           // absolute node -> restricted node
  std::vector<RestrictedRoot> roots;                  // positives then negatives
  std::map<QVec, std::size_t> index;
  QMat gram;                                           // invariant form on restricted functionals
  std::vector<FoldComponent> components;
  std::vector<AffineSimpleRoot> affine;                // Delta_a^nr, filled by build_affine_basis

  std::size_t dim() const { return node_orbits.size(); }
  std::size_t simple_root(std::size_t k) const { return index.at(unit(dim(), k)); }
  int e_simple(std::size_t k) const { return roots[simple_root(k)].e; }

  std::optional<std::size_t> find(const QVec& functional) const {
    auto it = index.find(functional);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  QVec coroot_of(const QVec& functional) const {
    QVec gb = mat_vec(gram, functional);
    Rational norm = dot(functional, gb);
    return (Rational(2) / norm) * gb;
  }

  Rational eval(std::size_t root, const QVec& x) const { return dot(roots[root].vector, x); }

  /// W^theta, the Weyl group of the indivisible restricted roots.
  ReflectionSystem weyl_system() const {
    ReflectionSystem sys;
    for (std::size_t k = 0; k < dim(); ++k) sys.coroots.push_back(roots[simple_root(k)].coroot);
    return sys;
  }

  std::set<QVec> indivisible_set() const {
    std::set<QVec> s;
    for (const auto& r : roots)
      if (r.indivisible()) s.insert(r.vector);
    return s;
  }

  // --- affine basis helpers (valid once `affine` is filled) ---

  QVec affine_gradient(std::size_t node) const { return roots[affine[node].gradient].vector; }
  QVec affine_coroot(std::size_t node) const { return roots[affine[node].gradient].coroot; }

  Rational affine_value(std::size_t node, const QVec& x) const {
    return dot(affine_gradient(node), x) + affine[node].constant;
  }

  /// Kac coordinates: values of every simple affine root at x.
  QVec kac(const QVec& x) const {
    QVec out(affine.size());
    for (std::size_t i = 0; i < affine.size(); ++i) out[i] = affine_value(i, x);
    return out;
  }

  /// Inverse of `kac` on the closed alcove: simple nodes carry the coordinates.
  QVec point_from_kac(const QVec& kac_values) const {
    QVec x = zeros(dim());
    for (std::size_t i = 0; i < affine.size(); ++i)
      if (!affine[i].lowest) {
        const QVec& g = affine_gradient(i);
        for (std::size_t k = 0; k < dim(); ++k)
          if (g[k] == 1) x[k] = kac_values[i];
      }
    return x;
  }

  /// Cartan pairing a_ij = <coroot of node i, gradient of node j>.
  std::vector<std::vector<Rational>> affine_cartan() const {
    std::vector<std::vector<Rational>> a(affine.size(), QVec(affine.size()));
    for (std::size_t i = 0; i < affine.size(); ++i)
      for (std::size_t j = 0; j < affine.size(); ++j) a[i][j] = dot(affine_gradient(j), affine_coroot(i));
    return a;
  }

  /// A point of the open alcove: equal Kac coordinates inside each component.
  QVec interior_point() const {
    QVec kv(affine.size());
    for (const auto& c : components) {
      Rational total = 0;
      for (auto n : c.affine_nodes) total += Rational(affine[n].mark);
      for (auto n : c.affine_nodes) kv[n] = Rational(1) / total;
    }
    return point_from_kac(kv);
  }
};

/// Lambda(beta): (1/e) Z for indivisible beta, (1/e)(1/2 + Z) for divisible beta.
inline LevelSet affine_levels(const RestrictedRoot& beta) {
  Rational period = Rational(1) / Rational(beta.e);
  return beta.divisible ? LevelSet{period, period / 2} : LevelSet{period, Rational(0)};
}

inline RestrictedRootSystem restrict_roots(const BasedRootDatum& datum) {
  RestrictedRootSystem sys;
  sys.datum = datum;
  const std::size_t n = datum.rank();

  // theta-orbits of absolute nodes, ordered by least member
  sys.restricted_node.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sys.restricted_node[i] != n) continue;
    std::vector<std::size_t> orbit;
    std::size_t j = i;
    do {
      orbit.push_back(j);
      sys.restricted_node[j] = sys.node_orbits.size();
      j = datum.theta[j];
    } while (j != i);
    std::sort(orbit.begin(), orbit.end());
    sys.node_orbits.push_back(orbit);
  }
  const std::size_t r = sys.node_orbits.size();

  auto restrict = [&](const QVec& abs) {
    QVec b = zeros(r);
    for (std::size_t i = 0; i < n; ++i) b[sys.restricted_node[i]] += abs[i];
    return b;
  };

  // fold components: theta-orbits of absolute simple factors
  std::vector<std::size_t> fold_of_abs(datum.components.size(), datum.components.size());
  for (std::size_t c = 0; c < datum.components.size(); ++c) {
    if (fold_of_abs[c] != datum.components.size()) continue;
    FoldComponent fc;
    std::size_t cur = c;
    do {
      fc.absolute_components.push_back(cur);
      fold_of_abs[cur] = sys.components.size();
      cur = datum.component_of[datum.theta[datum.components[cur].nodes.front()]];
    } while (cur != c);
    std::sort(fc.absolute_components.begin(), fc.absolute_components.end());
    sys.components.push_back(fc);
  }
  for (std::size_t k = 0; k < r; ++k)
    sys.components[fold_of_abs[datum.component_of[sys.node_orbits[k].front()]]].nodes.push_back(k);

  // group absolute roots by restriction
  std::map<QVec, std::vector<std::size_t>> preimage;
  for (std::size_t a = 0; a < datum.roots.size(); ++a) preimage[restrict(datum.roots[a])].push_back(a);

  std::vector<QVec> ordered;
  for (auto& [b, _] : preimage) ordered.push_back(b);
  ordered = order_roots(ordered);

  sys.gram.assign(r, zeros(r));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      Rational s = 0;
      for (auto i : sys.node_orbits[k])
        for (auto j : sys.node_orbits[l]) s += datum.gram[i][j];
      sys.gram[k][l] = s / Rational(static_cast<std::int64_t>(sys.node_orbits[k].size() * sys.node_orbits[l].size()));
    }

  for (const auto& b : ordered) {
    RestrictedRoot root;
    root.vector = b;
    root.theta_orbit = preimage[b];
    const QVec& alpha = datum.roots[root.theta_orbit.front()];
    root.e = static_cast<int>(datum.theta_orbit_size(alpha));
    ensure(root.theta_orbit.size() == static_cast<std::size_t>(root.e), ErrorKind::InternalInconsistency,
           "restricted root preimage is not a single theta-orbit");
    root.positive = detail::height(b) > 0;
    for (std::size_t k = 0; k < r; ++k)
      if (b[k] != 0) root.component = fold_of_abs[datum.component_of[sys.node_orbits[k].front()]];
    sys.index[b] = sys.roots.size();
    sys.roots.push_back(std::move(root));
  }
  for (auto& root : sys.roots) {
    QVec half = Rational(1, 2) * root.vector;
    root.divisible = sys.index.count(half) > 0;
    root.levels = affine_levels(root);
    root.coroot = sys.coroot_of(root.vector);
  }
  return sys;
}

inline std::vector<AffineSimpleRoot> build_affine_basis(const RestrictedRootSystem& sys) {
  std::vector<AffineSimpleRoot> basis;
  const std::size_t r = sys.dim();
  for (std::size_t j = 0; j < sys.components.size(); ++j) {
    const FoldComponent& comp = sys.components[j];
    // beta_0 = -beta* where beta*/l(beta*) dominates every beta/l(beta)
    // coefficientwise over positive roots of the component.
    std::vector<std::pair<std::size_t, QVec>> scaled;
    for (std::size_t i = 0; i < sys.roots.size(); ++i) {
      const auto& b = sys.roots[i];
      if (!b.positive || b.component != j) continue;
      scaled.emplace_back(i, (Rational(1) / b.levels.smallest_positive()) * b.vector);
    }
    std::vector<std::size_t> maxima;
    for (const auto& [i, f] : scaled) {
      bool dominates = true;
      for (const auto& [i2, g] : scaled) {
        for (std::size_t k = 0; k < r && dominates; ++k)
          if (f[k] < g[k]) dominates = false;
        if (!dominates) break;
      }
      if (dominates) maxima.push_back(i);
    }
    ensure(maxima.size() == 1, ErrorKind::DegenerateComponent,
           "no unique lowest affine root in component " + std::to_string(j));
    const auto& top = sys.roots[maxima.front()];
    std::size_t lowest = sys.index.at(-top.vector);

    std::vector<AffineSimpleRoot> nodes;
    AffineSimpleRoot zero;
    zero.gradient = lowest;
    zero.constant = top.levels.smallest_positive();
    zero.component = j;
    zero.lowest = true;
    nodes.push_back(zero);
    for (auto k : comp.nodes) {
      AffineSimpleRoot s;
      s.gradient = sys.simple_root(k);
      s.component = j;
      nodes.push_back(s);
    }
    // marks: sum d_beta beta^aff == 1 identically
    const std::size_t m = nodes.size();
    QMat a;
    QVec rhs;
    for (auto k : comp.nodes) {
      QVec row(m);
      for (std::size_t t = 0; t < m; ++t) row[t] = sys.roots[nodes[t].gradient].vector[k];
      a.push_back(row);
      rhs.push_back(0);
    }
    QVec row(m);
    for (std::size_t t = 0; t < m; ++t) row[t] = nodes[t].constant;
    a.push_back(row);
    rhs.push_back(1);
    auto d = solve_unique(a, rhs);
    ensure(d.has_value(), ErrorKind::DegenerateComponent, "marks are not uniquely determined");
    for (std::size_t t = 0; t < m; ++t) {
      ensure(is_integer((*d)[t]) && (*d)[t] > 0, ErrorKind::InternalInconsistency,
             "mark " + to_string((*d)[t]) + " is not a positive integer");
      nodes[t].mark = num((*d)[t]);
    }
    // vertex s_beta: every other affine root of the component vanishes
    for (std::size_t t = 0; t < m; ++t) {
      QMat va;
      QVec vb;
      for (std::size_t u = 0; u < m; ++u) {
        if (u == t) continue;
        QVec g(comp.nodes.size());
        for (std::size_t c = 0; c < comp.nodes.size(); ++c) g[c] = sys.roots[nodes[u].gradient].vector[comp.nodes[c]];
        va.push_back(g);
        vb.push_back(-nodes[u].constant);
      }
      auto sol = solve_unique(va, vb);
      ensure(sol.has_value(), ErrorKind::DegenerateComponent, "alcove vertex is not determined");
      nodes[t].vertex = zeros(r);
      for (std::size_t c = 0; c < comp.nodes.size(); ++c) nodes[t].vertex[comp.nodes[c]] = (*sol)[c];
    }
    for (auto& node : nodes) basis.push_back(node);
  }
  return basis;
}

/// Restricted roots with their affine basis in place.
inline RestrictedRootSystem fold(const BasedRootDatum& datum) {
  RestrictedRootSystem sys = restrict_roots(datum);
  sys.affine = build_affine_basis(sys);
  for (auto& c : sys.components) c.affine_nodes.clear();
  for (std::size_t i = 0; i < sys.affine.size(); ++i) {
    auto& c = sys.components[sys.affine[i].component];
    c.affine_nodes.push_back(i);
    if (sys.affine[i].lowest) {
      c.lowest_root = sys.affine[i].gradient;
      c.lambda0 = sys.affine[i].constant;
    }
  }
  return sys;
}

/// R = sum over restricted simple roots of (1/e_beta) Z fundamental coweights.
struct TranslationLattice {
  std::vector<int> e;  // e_beta per restricted simple node

  QMat basis() const {
    QMat b;
    for (std::size_t k = 0; k < e.size(); ++k) b.push_back(Rational(1, e[k]) * unit(e.size(), k));
    return b;
  }
  /// Coordinates of x in the basis above.
  QVec coordinates(const QVec& x) const {
    QVec c(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) c[k] = x[k] * Rational(e[k]);
    return c;
  }
  bool contains(const QVec& x) const {
    auto c = coordinates(x);
    return std::all_of(c.begin(), c.end(), [](const Rational& q) { return is_integer(q); });
  }
  /// Membership in the cocharacter lattice X_*(T^nr) = Z^dim.
  static bool in_cocharacters(const QVec& x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& q) { return is_integer(q); });
  }
  Integer index_over_cocharacters() const {
    Integer p = 1;
    for (int v : e) p *= v;
    return p;
  }
};

inline TranslationLattice translation_lattice(const RestrictedRootSystem& sys) {
  TranslationLattice lat;
  for (std::size_t k = 0; k < sys.dim(); ++k) lat.e.push_back(sys.e_simple(k));
  return lat;
}

}  // namespace endo
