#pragma once

// The endoscopic side of a class: Sigma(x), the torus-side oracle, the
// lattice lemma on torsion points, and the root datum read off S^aff(x).

#include "endo/affine.hpp"
#include "endo/endo.hpp"
#include "endo/error.hpp"
#include "endo/rootdata.hpp"
#include "endo/twistfold.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace endo {

/// A torsion point of the theta-fixed unitary torus, rot[k] in [0,1) for each
/// restricted simple node (s = exp(2 pi i rot)).
struct TorusElement {
  QVec rot;
  bool operator==(const TorusElement&) const = default;
};

inline TorusElement s_from_x(const QVec& x) {
  TorusElement s;
  for (const auto& q : x) s.rot.push_back(frac(q));
  return s;
}

inline QVec x_from_s(const TorusElement& s) { return s.rot; }

/// { beta : beta(x) in Lambda(beta) }, as restricted root vectors.
inline std::set<QVec> sigma_x(const RestrictedRootSystem& sys, const QVec& x) {
  std::set<QVec> out;
  for (std::size_t b = 0; b < sys.roots.size(); ++b)
    if (sys.roots[b].levels.contains(sys.eval(b, x))) out.insert(sys.roots[b].vector);
  return out;
}

/// Sigma(G') from the torus side alone. Works on absolute roots: for each
/// theta-orbit of size e, the class of e * alpha(s) in Q/Z must be 0 for
/// indivisible restrictions and 1/2 for divisible ones.
inline std::set<QVec> oracle_sigma_from_s(const RestrictedRootSystem& sys, const TorusElement& s) {
  const BasedRootDatum& d = sys.datum;
  const std::size_t n = d.rank();
  QVec lifted(n);
  for (std::size_t i = 0; i < n; ++i) lifted[i] = s.rot[sys.restricted_node[i]];
  auto restrict = [&](const QVec& alpha) {
    QVec b = zeros(sys.dim());
    for (std::size_t i = 0; i < n; ++i) b[sys.restricted_node[i]] += alpha[i];
    return b;
  };
  std::set<QVec> restrictions;
  for (const auto& a : d.roots) restrictions.insert(restrict(a));

  std::set<QVec> out, done;
  for (const auto& alpha : d.roots) {
    if (done.count(alpha)) continue;
    std::size_t e = 0;
    QVec r = alpha;
    do {
      done.insert(r);
      r = d.apply_theta(r);
      ++e;
    } while (r != alpha);
    QVec b = restrict(alpha);
    bool divisible = restrictions.count(Rational(1, 2) * b) > 0;
    Rational value = frac(Rational(static_cast<std::int64_t>(e)) * dot(alpha, lifted));
    if ((!divisible && value == 0) || (divisible && value == Rational(1, 2))) out.insert(b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lattice lemma

struct LatticeLemmaReport {
  bool passed = true;
  std::size_t torsion_points = 0;  // points of order <= B examined
  std::size_t left = 0;            // (1 - theta)(T) cap T^theta, within the bound
  std::size_t right = 0;           // R / X_*(T^nr), within the bound
  std::string witness;
};

namespace detail {

/// Numerators a_k over a common denominator n, all orders <= bound, each
/// point listed once (at its exact order).
inline void for_each_torsion_point(std::size_t dim, std::int64_t bound,
                                   const std::function<void(const std::vector<std::int64_t>&, std::int64_t)>& f) {
  std::vector<std::int64_t> a(dim);
  for (std::int64_t n = 1; n <= bound; ++n) {
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t k, std::int64_t g) {
      if (k == dim) {
        if (std::gcd(g, n) == 1) f(a, n);
        return;
      }
      for (std::int64_t v = 0; v < n; ++v) {
        a[k] = v;
        rec(k + 1, std::gcd(g, v));
      }
    };
    rec(0, 0);
  }
}

}  // namespace detail

/// Compares three descriptions of the torsion points (order <= B) of
/// (1 - theta)(T) cap T^theta: the mu_e criterion on absolute node orbits, the
/// image of (1 - theta) on the E-torsion of T (E the order of theta), and the
/// classes of R modulo the cocharacter lattice.
inline LatticeLemmaReport lattice_lemma_check(const RestrictedRootSystem& sys, std::int64_t bound) {
  const BasedRootDatum& d = sys.datum;
  const std::size_t n = d.rank(), r = sys.dim();
  LatticeLemmaReport rep;

  // brute-force image: u in T[E], (1 - theta)u has coordinates u_i - u_{theta^{-1} i}
  const std::int64_t E = static_cast<std::int64_t>(d.theta_order);
  Perm tinv = invert(d.theta);
  std::set<QVec> image;
  std::vector<std::int64_t> u(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      QVec w(n);
      for (std::size_t j = 0; j < n; ++j) w[j] = frac(Rational(u[j] - u[tinv[j]], E));
      QVec rot(r);
      for (std::size_t k = 0; k < r; ++k) {
        rot[k] = w[sys.node_orbits[k].front()];
        for (auto j : sys.node_orbits[k])
          if (w[j] != rot[k]) return;  // not theta-fixed
      }
      image.insert(rot);
      return;
    }
    for (std::int64_t v = 0; v < E; ++v) {
      u[i] = v;
      rec(i + 1);
    }
  };
  rec(0);

  TranslationLattice lat = translation_lattice(sys);
  std::set<QVec> left, right;
  detail::for_each_torsion_point(r, bound, [&](const std::vector<std::int64_t>& a, std::int64_t den) {
    ++rep.torsion_points;
    // mu_e: the common coordinate z on an absolute orbit of size m has z^m = 1
    bool mu = true;
    for (std::size_t k = 0; k < r && mu; ++k)
      mu = (a[k] * static_cast<std::int64_t>(sys.node_orbits[k].size())) % den == 0;
    QVec rot(r);
    for (std::size_t k = 0; k < r; ++k) rot[k] = Rational(a[k], den);
    bool in_image = image.count(rot) > 0;
    bool in_R = lat.contains(rot);
    if (mu) left.insert(rot);
    if (in_R) right.insert(rot);
    if ((mu != in_image || mu != in_R) && rep.witness.empty()) {
      rep.passed = false;
      rep.witness = "rot=(";
      for (std::size_t k = 0; k < r; ++k) rep.witness += (k ? "," : "") + to_string(rot[k]);
      rep.witness += ") mu=" + std::to_string(mu) + " image=" + std::to_string(in_image) + " R=" + std::to_string(in_R);
    }
  });
  rep.left = left.size();
  rep.right = right.size();
  if (left != right) rep.passed = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Endoscopic datum

/// Type label ("A2", "B3", ...) of an indecomposable finite-type Cartan matrix,
/// found by searching for a node ordering matching a standard matrix.
inline std::string classify_cartan(const std::vector<std::vector<Rational>>& a) {
  const int n = static_cast<int>(a.size());
  const std::vector<char> types{'A', 'B', 'C', 'D', 'E', 'F', 'G'};
  for (char t : types) {
    IntMat ref;
    try {
      ref = cartan_matrix(t, n);
    } catch (const Error&) {
      continue;
    }
    if (t == 'C' && n == 2) continue;  // same as B2
    Perm p(n);
    std::vector<bool> used(n, false);
    std::function<bool(int)> rec = [&](int i) {
      if (i == n) return true;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        bool ok = true;
        for (int k = 0; k <= i && ok; ++k) {
          std::size_t pk = k == i ? static_cast<std::size_t>(j) : p[k];
          ok = a[pk][j] == Rational(ref[k][i]) && a[j][pk] == Rational(ref[i][k]);
        }
        if (!ok) continue;
        used[j] = true;
        p[i] = static_cast<std::size_t>(j);
        if (rec(i + 1)) return true;
        used[j] = false;
      }
      return false;
    };
    if (rec(0)) return std::string(1, t) + std::to_string(n);
  }
  fail(ErrorKind::InternalInconsistency, "Cartan matrix of unknown type");
}

struct EndoscopicComponent {
  std::vector<std::size_t> nodes;  // affine node indices
  std::string type;
};

struct EndoscopicDatum {
  std::vector<std::size_t> nodes;                   // S(x)
  std::vector<std::vector<Rational>> cartan;        // over S^aff(x), in the order of `nodes`
  std::vector<EndoscopicComponent> components;
  std::vector<Perm> galois_node_action;             // per group element, on positions in `nodes`
  bool elliptic = false;
  std::size_t center_rank = 0;
  std::uint64_t weyl_order = 1;

  std::string type_label() const {
    if (components.empty()) return "T";
    std::vector<std::string> parts;
    for (const auto& c : components) parts.push_back(c.type);
    std::sort(parts.begin(), parts.end());
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "x" : "") + parts[i];
    return s;
  }
};

/// dim of the Q-invariants of the annihilator of S(x) in the apartment.
inline std::size_t center_rank_by_annihilator(const GaloisModel& m, const EndoPair& p) {
  const std::size_t r = m.sys.dim();
  QMat grads;
  for (auto n : p.x.S()) grads.push_back(m.sys.affine_gradient(n));
  QMat ann = grads.empty() ? identity(r) : nullspace(grads, r);
  if (ann.empty()) return 0;
  QMat avg(r, zeros(r));
  for (const auto& s : p.star)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) avg[i][j] += s.linear[i][j];
  QMat image;
  for (const auto& v : ann) image.push_back(mat_vec(avg, v));
  return rank(image);
}

inline EndoscopicDatum endoscopic_datum(const GaloisModel& m, const EndoClass& cls) {
  EndoscopicDatum out;
  const auto& sys = m.sys;
  out.nodes = cls.S;
  auto full = sys.affine_cartan();
  for (auto i : out.nodes) {
    std::vector<Rational> row;
    for (auto j : out.nodes) row.push_back(full[i][j]);
    out.cartan.push_back(row);
  }
  // connected components of the Dynkin diagram on S(x)
  std::vector<bool> seen(out.nodes.size(), false);
  for (std::size_t s = 0; s < out.nodes.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (std::size_t t = 0; t < out.nodes.size(); ++t)
        if (!seen[t] && out.cartan[comp[h]][t] != 0) {
          seen[t] = true;
          comp.push_back(t);
        }
    std::sort(comp.begin(), comp.end());
    std::vector<std::vector<Rational>> sub;
    for (auto i : comp) {
      std::vector<Rational> row;
      for (auto j : comp) row.push_back(out.cartan[i][j]);
      sub.push_back(row);
    }
    EndoscopicComponent c;
    for (auto i : comp) c.nodes.push_back(out.nodes[i]);
    c.type = classify_cartan(sub);
    out.weyl_order *= weyl_group_order(c.type[0], std::stoi(c.type.substr(1)));
    out.components.push_back(c);
  }
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < out.nodes.size(); ++i) pos[out.nodes[i]] = i;
  for (const auto& perm : cls.rep.star_nodes) {
    Perm local(out.nodes.size());
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
      auto it = pos.find(perm[out.nodes[i]]);
      ensure(it != pos.end(), ErrorKind::InternalInconsistency, "Galois action does not preserve S(x)");
      local[i] = it->second;
    }
    out.galois_node_action.push_back(local);
  }
  out.elliptic = cls.elliptic;
  std::size_t by_ann = center_rank_by_annihilator(m, cls.rep);
  std::size_t by_orbits = cls.i_x - m.i_G;
  ensure(by_ann == by_orbits, ErrorKind::InternalInconsistency,
         "center rank " + std::to_string(by_ann) + " from the annihilator, " + std::to_string(by_orbits) +
             " from the orbit count");
  out.center_rank = by_ann;
  return out;
}

}  // namespace endo
