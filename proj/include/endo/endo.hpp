#pragma once

// Pairs (omega_star, x): a finite Galois model acting on the folded diagram,
// cocycles into Omega, fixed points in the closed alcove, their equivalence,
// and the enumeration of elliptic and torsion classes.

#include "endo/affine.hpp"
#include "endo/error.hpp"
#include "endo/group.hpp"
#include "endo/twistfold.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace endo {

struct GaloisModel {
  RestrictedRootSystem sys;
  std::vector<OmegaElement> omega;
  FiniteGroup group;
  std::vector<Perm> action;                  // per element: permutation of absolute nodes
  std::vector<AffineWeylElement> sigma_G;    // per element: action on the apartment
  std::vector<Perm> sigma_nodes;             // per element: action on affine nodes
  std::vector<Perm> sigma_components;        // per element: action on fold components
  std::vector<std::vector<std::size_t>> omega_mul;   // Omega product table
  std::vector<std::size_t> omega_inv;
  std::vector<std::vector<std::size_t>> omega_conj;  // [q][w] = sigma_G w sigma_G^{-1}
  std::vector<std::size_t> component_orbit;  // fold component -> Q-orbit id
  std::size_t i_G = 0;                       // number of Q-orbits on fold components

  std::size_t nodes() const { return sys.affine.size(); }
};

namespace detail {

inline Perm induced_restricted_perm(const RestrictedRootSystem& sys, const Perm& abs) {
  Perm out(sys.dim());
  for (std::size_t k = 0; k < sys.dim(); ++k) out[k] = sys.restricted_node[abs[sys.node_orbits[k].front()]];
  return out;
}

}  // namespace detail

/// Assembles the model from a group and an absolute node permutation per
/// element. Every permutation must be a diagram automorphism commuting with
/// theta, and q -> action[q] must be a homomorphism.
inline GaloisModel make_galois_model(const RestrictedRootSystem& sys, const FiniteGroup& group,
                                     const std::vector<Perm>& action) {
  validate_group(group);
  const BasedRootDatum& d = sys.datum;
  ensure(action.size() == group.size(), ErrorKind::ModelMismatch, "one node permutation per group element expected");
  for (std::size_t q = 0; q < group.size(); ++q) {
    ensure(action[q].size() == d.rank() && is_permutation(action[q]) && preserves_cartan(d.cartan, action[q]),
           ErrorKind::NotDiagramAutomorphism, "action of element " + std::to_string(q) + " is not a diagram automorphism");
    ensure(compose(action[q], d.theta) == compose(d.theta, action[q]), ErrorKind::NonCommuting,
           "action of element " + std::to_string(q) + " does not commute with theta");
  }
  for (std::size_t a = 0; a < group.size(); ++a)
    for (std::size_t b = 0; b < group.size(); ++b)
      ensure(action[group.mul(a, b)] == compose(action[a], action[b]), ErrorKind::NotHomomorphism,
             "node action is not a homomorphism at (" + std::to_string(a) + "," + std::to_string(b) + ")");

  GaloisModel m;
  m.sys = sys;
  m.omega = compute_omega_group(sys);
  m.group = group;
  m.action = action;
  const std::size_t r = sys.dim();
  for (std::size_t q = 0; q < group.size(); ++q) {
    Perm rp = detail::induced_restricted_perm(sys, action[q]);
    AffineWeylElement s{QMat(r, zeros(r)), zeros(r)};
    for (std::size_t k = 0; k < r; ++k) s.linear[rp[k]][k] = 1;
    auto np = node_permutation(sys, s);
    ensure(np.has_value(), ErrorKind::InternalInconsistency, "Galois action does not preserve the alcove");
    Perm cp(sys.components.size());
    for (std::size_t i = 0; i < np->size(); ++i) cp[sys.affine[i].component] = sys.affine[(*np)[i]].component;
    m.sigma_G.push_back(s);
    m.sigma_nodes.push_back(*np);
    m.sigma_components.push_back(cp);
  }
  const std::size_t w = m.omega.size();
  m.omega_mul.assign(w, std::vector<std::size_t>(w));
  m.omega_inv.assign(w, 0);
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = 0; b < w; ++b) {
      m.omega_mul[a][b] = omega_index(m.omega, m.omega[a].map * m.omega[b].map);
      if (m.omega_mul[a][b] == 0) m.omega_inv[a] = b;
    }
  m.omega_conj.assign(group.size(), std::vector<std::size_t>(w));
  for (std::size_t q = 0; q < group.size(); ++q)
    for (std::size_t a = 0; a < w; ++a)
      m.omega_conj[q][a] = omega_index(m.omega, m.sigma_G[q] * m.omega[a].map * m.sigma_G[q].inverse());

  m.component_orbit.assign(sys.components.size(), sys.components.size());
  for (std::size_t j = 0; j < sys.components.size(); ++j) {
    if (m.component_orbit[j] != sys.components.size()) continue;
    for (std::size_t q = 0; q < group.size(); ++q) m.component_orbit[m.sigma_components[q][j]] = m.i_G;
    ++m.i_G;
  }
  return m;
}

/// Extends per-generator node permutations to the whole group.
inline std::vector<Perm> extend_action(const FiniteGroup& group, const std::vector<Perm>& generator_action,
                                       std::size_t degree) {
  ensure(generator_action.size() == group.generators.size(), ErrorKind::ModelMismatch,
         "one node permutation per generator expected");
  std::vector<std::optional<Perm>> act(group.size());
  act[0] = identity_perm(degree);
  std::vector<std::size_t> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::size_t g = 0; g < group.generators.size(); ++g) {
      ensure(generator_action[g].size() == degree && is_permutation(generator_action[g]),
             ErrorKind::NotDiagramAutomorphism, "generator action is not a permutation of the nodes");
      std::size_t b = group.mul(group.generators[g], queue[head]);
      Perm p = compose(generator_action[g], *act[queue[head]]);
      if (!act[b]) {
        act[b] = p;
        queue.push_back(b);
      } else {
        ensure(*act[b] == p, ErrorKind::NotHomomorphism, "generator actions violate a group relation");
      }
    }
  std::vector<Perm> out;
  for (auto& p : act) out.push_back(*p);
  return out;
}

inline GaloisModel make_galois_model_from_generators(const RestrictedRootSystem& sys, const FiniteGroup& group,
                                                     const std::vector<Perm>& generator_action) {
  return make_galois_model(sys, group, extend_action(group, generator_action, sys.datum.rank()));
}

inline GaloisModel trivial_model(const RestrictedRootSystem& sys) {
  return make_galois_model(sys, trivial_group(), {identity_perm(sys.datum.rank())});
}

// ---------------------------------------------------------------------------
// Pairs

/// omega_star as Omega indices per group element.
using Cocycle = std::vector<std::size_t>;

struct EndoPair {
  Cocycle omega_star;
  AlcovePoint x;
  std::vector<AffineWeylElement> star;  // sigma_star = omega_star(sigma) o sigma_G
  std::vector<Perm> star_nodes;         // sigma_{star,alg} on affine nodes
};

inline std::vector<AffineWeylElement> star_maps(const GaloisModel& m, const Cocycle& c) {
  std::vector<AffineWeylElement> out;
  for (std::size_t q = 0; q < m.group.size(); ++q) out.push_back(m.omega.at(c.at(q)).map * m.sigma_G[q]);
  return out;
}

inline std::vector<Perm> star_node_perms(const GaloisModel& m, const Cocycle& c) {
  std::vector<Perm> out;
  for (std::size_t q = 0; q < m.group.size(); ++q) out.push_back(compose(m.omega[c[q]].node_perm, m.sigma_nodes[q]));
  return out;
}

inline EndoPair validate_endo_pair(const GaloisModel& m, const Cocycle& c, const AlcovePoint& x) {
  ensure(c.size() == m.group.size(), ErrorKind::NotHomomorphism, "omega_star must be defined on every element");
  for (auto w : c) ensure(w < m.omega.size(), ErrorKind::NotHomomorphism, "omega_star value outside Omega");
  EndoPair p{c, x, star_maps(m, c), star_node_perms(m, c)};
  for (std::size_t a = 0; a < m.group.size(); ++a)
    for (std::size_t b = 0; b < m.group.size(); ++b)
      ensure(p.star[m.group.mul(a, b)] == p.star[a] * p.star[b], ErrorKind::NotHomomorphism,
             "sigma -> sigma_star fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  for (std::size_t q = 0; q < m.group.size(); ++q)
    ensure(p.star[q](x.x) == x.x, ErrorKind::NotFixed, "x is not fixed by element " + std::to_string(q));
  return p;
}

/// All cocycles: values on generators extended along the Cayley graph by
/// c(g a) = c(g) g(c(a)), then checked on every pair.
inline std::vector<Cocycle> enumerate_cocycles(const GaloisModel& m) {
  const auto& g = m.group;
  const std::size_t w = m.omega.size(), ngen = g.generators.size();
  std::vector<Cocycle> out;
  std::vector<std::size_t> choice(ngen, 0);
  while (true) {
    std::vector<std::optional<std::size_t>> c(g.size());
    c[0] = 0;
    bool ok = true;
    std::vector<std::size_t> queue{0};
    for (std::size_t head = 0; head < queue.size() && ok; ++head)
      for (std::size_t k = 0; k < ngen && ok; ++k) {
        std::size_t s = g.generators[k], a = queue[head], b = g.mul(s, a);
        std::size_t val = m.omega_mul[choice[k]][m.omega_conj[s][*c[a]]];
        if (!c[b]) {
          c[b] = val;
          queue.push_back(b);
        } else if (*c[b] != val) {
          ok = false;
        }
      }
    if (ok) {
      Cocycle cc;
      for (auto& v : c) cc.push_back(*v);
      for (std::size_t a = 0; a < g.size() && ok; ++a)
        for (std::size_t b = 0; b < g.size() && ok; ++b)
          ok = cc[g.mul(a, b)] == m.omega_mul[cc[a]][m.omega_conj[a][cc[b]]];
      if (ok) out.push_back(cc);
    }
    std::size_t k = 0;
    while (k < ngen && ++choice[k] == w) choice[k++] = 0;
    if (k == ngen) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Orbits of the group generated by `perms` on `domain`, each sorted, listed by least element.
inline std::vector<std::vector<std::size_t>> orbits(const std::vector<Perm>& perms, const std::vector<std::size_t>& domain) {
  std::vector<std::vector<std::size_t>> out;
  std::set<std::size_t> seen;
  for (auto start : domain) {
    if (seen.count(start)) continue;
    std::vector<std::size_t> orbit{start};
    seen.insert(start);
    for (std::size_t h = 0; h < orbit.size(); ++h)
      for (const auto& p : perms)
        if (seen.insert(p[orbit[h]]).second) orbit.push_back(p[orbit[h]]);
    std::sort(orbit.begin(), orbit.end());
    out.push_back(orbit);
  }
  return out;
}

inline std::vector<std::size_t> complement_of_S(const GaloisModel& m, const AlcovePoint& x) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.nodes(); ++i)
    if (x.kac[i] != 0) out.push_back(i);
  return out;
}

struct Ellipticity {
  std::size_t i_x = 0;
  bool elliptic = false;
};

inline Ellipticity ellipticity(const GaloisModel& m, const EndoPair& p) {
  std::size_t ix = orbits(p.star_nodes, complement_of_S(m, p.x)).size();
  ensure(ix >= m.i_G, ErrorKind::InternalInconsistency, "i(x) below i(G)");
  return {ix, ix == m.i_G};
}

// ---------------------------------------------------------------------------
// Equivalence

/// omega . (c, x): c'(sigma) = omega c(sigma) sigma(omega)^{-1}, x' = omega(x).
inline std::pair<Cocycle, QVec> act_on_pair(const GaloisModel& m, std::size_t w, const Cocycle& c, const QVec& x) {
  Cocycle out(c.size());
  for (std::size_t q = 0; q < c.size(); ++q)
    out[q] = m.omega_mul[m.omega_mul[w][c[q]]][m.omega_inv[m.omega_conj[q][w]]];
  return {out, m.omega[w].map(x)};
}

inline void check_same_model(const EndoPair& a, const EndoPair& b) {
  ensure(a.omega_star.size() == b.omega_star.size() && a.x.kac.size() == b.x.kac.size(), ErrorKind::ModelMismatch,
         "pairs come from different models");
}

/// Omega(x1; x2) = { omega : omega(x1) = x2 }.
inline std::vector<std::size_t> omega_between(const GaloisModel& m, const AlcovePoint& x1, const AlcovePoint& x2) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < m.omega.size(); ++w)
    if (m.omega[w].map(x1.x) == x2.x) out.push_back(w);
  return out;
}

/// Elements omega with omega(x1) = x2 and omega sigma_star1 omega^{-1} = sigma_star2.
inline std::vector<std::size_t> isom_set(const GaloisModel& m, const EndoPair& a, const EndoPair& b) {
  check_same_model(a, b);
  std::vector<std::size_t> out;
  for (auto w : omega_between(m, a.x, b.x))
    if (act_on_pair(m, w, a.omega_star, a.x.x).first == b.omega_star) out.push_back(w);
  return out;
}

inline std::optional<std::size_t> equivalence_witness(const GaloisModel& m, const EndoPair& a, const EndoPair& b) {
  auto s = isom_set(m, a, b);
  if (s.empty()) return std::nullopt;
  return s.front();
}

struct IsomAut {
  std::vector<std::size_t> omega_x1_x2, isom, omega_x, aut;
};

inline IsomAut isom_and_aut_sets(const GaloisModel& m, const EndoPair& a, const EndoPair& b) {
  IsomAut out{omega_between(m, a.x, b.x), isom_set(m, a, b), omega_between(m, b.x, b.x), isom_set(m, b, b)};
  if (!out.isom.empty())
    ensure(out.isom.size() == out.aut.size(), ErrorKind::InternalInconsistency, "Isom set is not an Aut-torsor");
  return out;
}

// ---------------------------------------------------------------------------
// Classes

struct EndoClass {
  EndoPair rep;  // canonical representative
  bool elliptic = false;
  std::size_t i_x = 0;
  std::vector<std::size_t> S;
  std::vector<std::vector<std::size_t>> complement_orbits;
  std::string id;
};

inline std::string canonical_string(const Cocycle& c, const QVec& kac) {
  std::string s = "c:";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  s += ";k:";
  for (std::size_t i = 0; i < kac.size(); ++i) s += (i ? "," : "") + to_string(kac[i]);
  return s;
}

/// 64-bit FNV-1a, rendered as 16 hex digits.
inline std::string stable_id(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline EndoClass make_class(const GaloisModel& m, const EndoPair& p) {
  std::optional<std::pair<Cocycle, QVec>> best;
  for (std::size_t w = 0; w < m.omega.size(); ++w) {
    auto [c, x] = act_on_pair(m, w, p.omega_star, p.x.x);
    std::pair<Cocycle, QVec> cand{c, m.sys.kac(x)};
    if (!best || cand < *best) best = cand;
  }
  EndoClass cls;
  cls.rep = validate_endo_pair(m, best->first, alcove_point_from_kac(m.sys, best->second));
  auto e = ellipticity(m, cls.rep);
  cls.elliptic = e.elliptic;
  cls.i_x = e.i_x;
  cls.S = cls.rep.x.S();
  cls.complement_orbits = orbits(cls.rep.star_nodes, complement_of_S(m, cls.rep.x));
  cls.id = stable_id(canonical_string(best->first, best->second));
  return cls;
}

namespace detail {

inline void add_class(const GaloisModel& m, const EndoPair& p, std::map<std::string, EndoClass>& out) {
  EndoClass c = make_class(m, p);
  out.emplace(c.id, std::move(c));
}

inline std::vector<EndoClass> sorted_classes(std::map<std::string, EndoClass>& by_id) {
  std::vector<EndoClass> out;
  for (auto& [id, c] : by_id) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const EndoClass& a, const EndoClass& b) {
    return std::tie(a.rep.omega_star, a.rep.x.kac) < std::tie(b.rep.omega_star, b.rep.x.kac);
  });
  return out;
}

}  // namespace detail

/// Elliptic classes: for each cocycle pick one sigma_star-orbit per Q-orbit of
/// components; x vanishes off the chosen orbits and takes the value
/// 1 / (sum of marks of the orbit inside the component) on them.
inline std::vector<EndoClass> enumerate_elliptic(const GaloisModel& m) {
  std::map<std::string, EndoClass> found;
  std::vector<std::size_t> all(m.nodes());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  for (const auto& c : enumerate_cocycles(m)) {
    auto perms = star_node_perms(m, c);
    auto orbs = orbits(perms, all);
    std::vector<std::vector<std::size_t>> per_J(m.i_G);
    for (std::size_t o = 0; o < orbs.size(); ++o)
      per_J[m.component_orbit[m.sys.affine[orbs[o].front()].component]].push_back(o);
    std::vector<std::size_t> pick(m.i_G, 0);
    while (true) {
      QVec kac = zeros(m.nodes());
      for (std::size_t J = 0; J < m.i_G; ++J) {
        const auto& orbit = orbs[per_J[J][pick[J]]];
        std::map<std::size_t, Rational> total;
        for (auto n : orbit) total[m.sys.affine[n].component] += Rational(m.sys.affine[n].mark);
        for (auto n : orbit) kac[n] = Rational(1) / total[m.sys.affine[n].component];
      }
      EndoPair p = validate_endo_pair(m, c, alcove_point_from_kac(m.sys, kac));
      detail::add_class(m, p, found);
      std::size_t J = 0;
      while (J < m.i_G && ++pick[J] == per_J[J].size()) pick[J++] = 0;
      if (J == m.i_G) break;
    }
  }
  return detail::sorted_classes(found);
}

/// Kac vectors n/N with sum d n = N on every component.
inline std::vector<QVec> torsion_points(const GaloisModel& m, std::size_t N) {
  std::vector<QVec> out{zeros(m.nodes())};
  for (const auto& comp : m.sys.components) {
    std::vector<QVec> next;
    const auto& nodes = comp.affine_nodes;
    std::vector<std::size_t> n(nodes.size(), 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
      if (i == nodes.size()) {
        if (left != 0) return;
        for (const auto& base : out) {
          QVec k = base;
          for (std::size_t t = 0; t < nodes.size(); ++t)
            k[nodes[t]] = Rational(static_cast<std::int64_t>(n[t]), static_cast<std::int64_t>(N));
          next.push_back(k);
        }
        return;
      }
      std::size_t d = static_cast<std::size_t>(m.sys.affine[nodes[i]].mark);
      for (std::size_t v = 0; v * d <= left; ++v) {
        n[i] = v;
        rec(i + 1, left - v * d);
      }
    };
    rec(0, N);
    out = std::move(next);
  }
  return out;
}

/// Every class with Kac coordinates in (1/N)Z, elliptic or not.
inline std::vector<EndoClass> enumerate_torsion(const GaloisModel& m, std::size_t N) {
  ensure(N >= 1, ErrorKind::ConfigError, "torsion order must be positive");
  std::map<std::string, EndoClass> found;
  auto cocycles = enumerate_cocycles(m);
  std::vector<std::vector<Perm>> perms;
  for (const auto& c : cocycles) perms.push_back(star_node_perms(m, c));
  for (const auto& kac : torsion_points(m, N)) {
    AlcovePoint x = alcove_point_from_kac(m.sys, kac);
    for (std::size_t i = 0; i < cocycles.size(); ++i) {
      bool fixed = true;
      for (const auto& p : perms[i])
        for (std::size_t n = 0; n < kac.size() && fixed; ++n) fixed = kac[p[n]] == kac[n];
      if (fixed) detail::add_class(m, validate_endo_pair(m, cocycles[i], x), found);
    }
  }
  return detail::sorted_classes(found);
}

/// Product over Q-orbits of components of the mark sum of one component:
/// every elliptic class has Kac denominators dividing some N up to this bound.
inline std::size_t elliptic_denominator_bound(const GaloisModel& m) {
  std::size_t bound = 1;
  std::vector<bool> seen(m.i_G, false);
  for (std::size_t j = 0; j < m.sys.components.size(); ++j) {
    if (seen[m.component_orbit[j]]) continue;
    seen[m.component_orbit[j]] = true;
    std::size_t s = 0;
    for (auto n : m.sys.components[j].affine_nodes) s += static_cast<std::size_t>(m.sys.affine[n].mark);
    bound *= s;
  }
  return bound;
}

}  // namespace endo
