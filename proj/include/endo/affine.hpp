#pragma once

// The extended affine Weyl group W^aff = W^theta x| R acting on the folded
// apartment: alcove reduction, local stabilizers, and the alcove stabilizer
// Omega.

#include "endo/error.hpp"
#include "endo/linalg.hpp"
#include "endo/twistfold.hpp"
#include "endo/weyl.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace endo {

/// x -> linear * x + translation.
struct AffineWeylElement {
  QMat linear;
  QVec translation;

  static AffineWeylElement identity(std::size_t n) { return {endo::identity(n), zeros(n)}; }

  QVec operator()(const QVec& x) const { return mat_vec(linear, x) + translation; }

  /// (*this) o other.
  AffineWeylElement operator*(const AffineWeylElement& other) const {
    return {mat_mul(linear, other.linear), mat_vec(linear, other.translation) + translation};
  }

  AffineWeylElement inverse() const {
    auto inv = endo::inverse(linear);
    ensure(inv.has_value(), ErrorKind::InternalInconsistency, "singular affine map");
    return {*inv, -mat_vec(*inv, translation)};
  }

  bool is_identity() const { return linear == endo::identity(linear.size()) && is_zero(translation); }

  bool operator==(const AffineWeylElement& o) const { return linear == o.linear && translation == o.translation; }
  bool operator<(const AffineWeylElement& o) const {
    if (linear != o.linear) return MatLess{}(linear, o.linear);
    return translation < o.translation;
  }
};

/// The affine function x -> beta(x) + level.
struct AffineRoot {
  std::size_t root = 0;
  Rational level = 0;
  bool operator==(const AffineRoot&) const = default;
  bool operator<(const AffineRoot& o) const { return std::tie(root, level) < std::tie(o.root, o.level); }
};

inline AffineWeylElement affine_reflection(const RestrictedRootSystem& sys, std::size_t root, const Rational& level) {
  const QVec& b = sys.roots[root].vector;
  const QVec& v = sys.roots[root].coroot;
  AffineWeylElement s = AffineWeylElement::identity(sys.dim());
  for (std::size_t i = 0; i < sys.dim(); ++i)
    for (std::size_t j = 0; j < sys.dim(); ++j) s.linear[i][j] -= v[i] * b[j];
  s.translation = (-level) * v;
  return s;
}

inline AffineWeylElement node_reflection(const RestrictedRootSystem& sys, std::size_t node) {
  return affine_reflection(sys, sys.affine[node].gradient, sys.affine[node].constant);
}

inline bool linear_in_weyl_group(const RestrictedRootSystem& sys, const QMat& m) {
  auto split = split_automorphism(sys.weyl_system(), sys.indivisible_set(), m);
  return split.has_value() && split->in_weyl_group();
}

inline bool in_waff(const RestrictedRootSystem& sys, const AffineWeylElement& v) {
  return translation_lattice(sys).contains(v.translation) && linear_in_weyl_group(sys, v.linear);
}

/// A point of the closed alcove together with its Kac coordinates.
struct AlcovePoint {
  QVec x;
  QVec kac;

  std::vector<std::size_t> S() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < kac.size(); ++i)
      if (kac[i] == 0) s.push_back(i);
    return s;
  }
  bool interior() const { return S().empty(); }
  bool operator==(const AlcovePoint& o) const { return kac == o.kac; }
};

inline bool in_closed_alcove(const RestrictedRootSystem& sys, const QVec& x) {
  for (std::size_t i = 0; i < sys.affine.size(); ++i)
    if (sys.affine_value(i, x) < 0) return false;
  return true;
}

inline AlcovePoint alcove_point(const RestrictedRootSystem& sys, const QVec& x) {
  AlcovePoint p{x, sys.kac(x)};
  for (const auto& k : p.kac) ensure(k >= 0, ErrorKind::InternalInconsistency, "point outside the closed alcove");
  return p;
}

inline AlcovePoint alcove_point_from_kac(const RestrictedRootSystem& sys, const QVec& kac) {
  return alcove_point(sys, sys.point_from_kac(kac));
}

struct AlcoveReduction {
  AffineWeylElement v;            // v(x) = point.x
  std::vector<std::size_t> word;  // affine nodes reflected in, first to last
  AlcovePoint point;
};

/// Reflect x into the closed alcove, always across the least-index simple
/// affine wall on whose negative side the current point lies.
inline AlcoveReduction alcove_reduce(const RestrictedRootSystem& sys, QVec x, std::size_t cap = 100000) {
  AlcoveReduction out{AffineWeylElement::identity(sys.dim()), {}, {}};
  for (std::size_t step = 0;; ++step) {
    ensure(step < cap, ErrorKind::NonTermination, "alcove reduction exceeded iteration cap");
    std::size_t i = 0;
    while (i < sys.affine.size() && sys.affine_value(i, x) >= 0) ++i;
    if (i == sys.affine.size()) break;
    AffineWeylElement s = node_reflection(sys, i);
    x = s(x);
    out.v = s * out.v;
    out.word.push_back(i);
  }
  out.point = alcove_point(sys, x);
  return out;
}

/// Affine roots vanishing at x: beta[lambda] with lambda = -beta(x) in Lambda(beta).
inline std::vector<AffineRoot> vanishing_affine_roots(const RestrictedRootSystem& sys, const QVec& x) {
  std::vector<AffineRoot> out;
  for (std::size_t b = 0; b < sys.roots.size(); ++b) {
    Rational lambda = -sys.eval(b, x);
    if (sys.roots[b].levels.contains(lambda)) out.push_back({b, lambda});
  }
  return out;
}

struct LocalStabilizer {
  std::vector<std::size_t> S;                 // nodes with zero Kac coordinate
  std::vector<AffineRoot> S_aff;              // the corresponding simple affine roots
  std::vector<AffineRoot> sigma_aff;          // all affine roots vanishing at x
  std::vector<AffineWeylElement> generators;  // reflections in S_aff
};

namespace detail {

inline QVec affine_vector(const RestrictedRootSystem& sys, const AffineRoot& a) {
  QVec v = sys.roots[a.root].vector;
  v.push_back(a.level);
  return v;
}

/// Coefficients of `target` as a combination of S^aff(x), if any.
inline std::optional<QVec> span_coefficients(const RestrictedRootSystem& sys, const std::vector<AffineRoot>& basis,
                                             const AffineRoot& target) {
  if (basis.empty()) return std::nullopt;
  QVec t = affine_vector(sys, target);
  QMat a(t.size(), zeros(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    QVec col = affine_vector(sys, basis[c]);
    for (std::size_t r = 0; r < t.size(); ++r) a[r][c] = col[r];
  }
  return solve_unique(a, t);
}

}  // namespace detail

/// Checks that the affine roots vanishing at x are exactly the affine roots
/// with integral coordinates over S^aff(x), scanning levels in [-bound, bound].
/// Returns a description of the first counterexample.
inline std::optional<std::string> span_violation(const RestrictedRootSystem& sys, const AlcovePoint& p,
                                                 int bound = 3) {
  std::vector<AffineRoot> basis;
  for (auto n : p.S()) basis.push_back({sys.affine[n].gradient, sys.affine[n].constant});
  for (std::size_t b = 0; b < sys.roots.size(); ++b) {
    const LevelSet& lv = sys.roots[b].levels;
    for (Rational lambda = lv.offset - Rational(bound); lambda <= Rational(bound); lambda += lv.period) {
      AffineRoot a{b, lambda};
      bool vanishes = sys.eval(b, p.x) + lambda == 0;
      auto c = detail::span_coefficients(sys, basis, a);
      bool integral = c && std::all_of(c->begin(), c->end(), [](const Rational& q) { return is_integer(q); });
      if (vanishes != integral)
        return "root #" + std::to_string(b) + " at level " + to_string(lambda) + (vanishes ? " vanishes but is not an integral combination"
                                             : " is an integral combination but does not vanish");
    }
  }
  return std::nullopt;
}

inline LocalStabilizer local_stabilizer(const RestrictedRootSystem& sys, const AlcovePoint& p) {
  LocalStabilizer out;
  out.S = p.S();
  for (auto n : out.S) {
    out.S_aff.push_back({sys.affine[n].gradient, sys.affine[n].constant});
    out.generators.push_back(node_reflection(sys, n));
  }
  out.sigma_aff = vanishing_affine_roots(sys, p.x);
  for (const auto& a : out.sigma_aff) {
    auto c = detail::span_coefficients(sys, out.S_aff, a);
    ensure(c && std::all_of(c->begin(), c->end(), [](const Rational& q) { return is_integer(q); }),
           ErrorKind::InternalInconsistency, "vanishing affine root outside the integral span of S^aff(x)");
  }
  return out;
}

/// W_sc(x), by closure from the reflections in S^aff(x).
inline std::vector<AffineWeylElement> local_weyl_group(const RestrictedRootSystem& sys, const AlcovePoint& p,
                                                       std::size_t guard = 1000000) {
  std::vector<AffineWeylElement> gens;
  for (auto n : p.S()) gens.push_back(node_reflection(sys, n));
  std::set<AffineWeylElement> seen;
  std::vector<AffineWeylElement> order{AffineWeylElement::identity(sys.dim())};
  seen.insert(order.front());
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const auto& g : gens) {
      AffineWeylElement next = g * order[head];
      if (seen.insert(next).second) {
        order.push_back(next);
        ensure(order.size() <= guard, ErrorKind::GroupTooLarge, "W_sc(x) exceeds guard");
      }
    }
  return order;
}

/// An alcove v(C), keyed by the image of the standard interior point.
struct Alcove {
  AffineWeylElement v;
  QVec center;
};

inline std::vector<Alcove> alcoves_containing(const RestrictedRootSystem& sys, const AlcovePoint& p,
                                              std::size_t guard = 1000000) {
  QVec c = sys.interior_point();
  std::vector<Alcove> out;
  std::set<QVec> centers;
  for (auto& v : local_weyl_group(sys, p, guard)) {
    QVec key = v(c);
    ensure(centers.insert(key).second, ErrorKind::InternalInconsistency, "two elements of W_sc(x) give one alcove");
    out.push_back({v, key});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Omega

/// pi_f(beta) is the node whose affine function composed with f is beta^aff;
/// nullopt when f does not permute the simple affine roots.
inline std::optional<Perm> node_permutation(const RestrictedRootSystem& sys, const AffineWeylElement& f) {
  const std::size_t n = sys.affine.size();
  std::map<std::pair<QVec, Rational>, std::size_t> lookup;
  for (std::size_t i = 0; i < n; ++i) lookup[{sys.affine_gradient(i), sys.affine[i].constant}] = i;
  Perm pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    // gamma^aff o f = beta^aff  <=>  gamma^aff = beta^aff o f^{-1}
    auto finv = f.inverse();
    QVec g = vec_mat(sys.affine_gradient(i), finv.linear);
    Rational c = dot(sys.affine_gradient(i), finv.translation) + sys.affine[i].constant;
    auto it = lookup.find({g, c});
    if (it == lookup.end()) return std::nullopt;
    pi[i] = it->second;
  }
  return pi;
}

/// Permutations of the affine nodes preserving marks and the affine Cartan
/// pairing: Aut(D_a).
inline std::vector<Perm> affine_diagram_automorphisms(const RestrictedRootSystem& sys) {
  const std::size_t n = sys.affine.size();
  auto a = sys.affine_cartan();
  std::vector<Perm> out;
  Perm pi(n);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.push_back(pi);
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || sys.affine[j].mark != sys.affine[i].mark || a[j][j] != a[i][i]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = a[pi[k]][j] == a[k][i] && a[j][pi[k]] == a[i][k];
      if (!ok) continue;
      used[j] = true;
      pi[i] = j;
      rec(i + 1);
      used[j] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Aut(D): the members of Aut(D_a) permuting the lowest-root nodes among themselves.
inline std::vector<Perm> finite_diagram_automorphisms(const RestrictedRootSystem& sys) {
  std::vector<Perm> out;
  for (auto& p : affine_diagram_automorphisms(sys)) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (sys.affine[i].lowest != sys.affine[p[i]].lowest) ok = false;
    if (ok) out.push_back(p);
  }
  return out;
}

/// The affine map f with pi(beta)^aff o f = beta^aff for every node, if unique.
inline std::optional<AffineWeylElement> realize_node_permutation(const RestrictedRootSystem& sys, const Perm& pi) {
  const std::size_t n = sys.affine.size(), r = sys.dim();
  QMat gp;  // rows: gradient of pi(beta)
  for (std::size_t i = 0; i < n; ++i) gp.push_back(sys.affine_gradient(pi[i]));
  AffineWeylElement f{QMat(r, zeros(r)), zeros(r)};
  for (std::size_t j = 0; j < r; ++j) {
    QVec rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = sys.affine_gradient(i)[j];
    auto col = solve_unique(gp, rhs);
    if (!col) return std::nullopt;
    for (std::size_t i = 0; i < r; ++i) f.linear[i][j] = (*col)[i];
  }
  QVec rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = sys.affine[i].constant - sys.affine[pi[i]].constant;
  auto t = solve_unique(gp, rhs);
  if (!t) return std::nullopt;
  f.translation = *t;
  return f;
}

struct OmegaElement {
  AffineWeylElement map;
  Perm node_perm;
};

/// Omega, ordered with the identity first and then by node permutation.
inline std::vector<OmegaElement> compute_omega_group(const RestrictedRootSystem& sys) {
  std::vector<OmegaElement> out;
  for (const auto& pi : affine_diagram_automorphisms(sys)) {
    auto f = realize_node_permutation(sys, pi);
    if (!f || !in_waff(sys, *f)) continue;
    out.push_back({*f, pi});
  }
  ensure(!out.empty() && out.front().map.is_identity(), ErrorKind::InternalInconsistency, "Omega lacks the identity");
  for (const auto& a : out)
    for (const auto& b : out) {
      AffineWeylElement ab = a.map * b.map;
      ensure(ab == b.map * a.map, ErrorKind::InternalInconsistency, "Omega is not abelian");
      bool found = std::any_of(out.begin(), out.end(), [&](const OmegaElement& c) { return c.map == ab; });
      ensure(found, ErrorKind::InternalInconsistency, "Omega is not closed under composition");
    }
  return out;
}

inline std::size_t omega_index(const std::vector<OmegaElement>& omega, const AffineWeylElement& f) {
  for (std::size_t i = 0; i < omega.size(); ++i)
    if (omega[i].map == f) return i;
  fail(ErrorKind::InternalInconsistency, "affine map is not in Omega");
}

/// [R : R_sc], with R_sc spanned by the translations l(beta) * coroot(beta).
inline Integer translation_index(const RestrictedRootSystem& sys) {
  TranslationLattice lat = translation_lattice(sys);
  std::vector<std::vector<Integer>> gens;
  for (const auto& b : sys.roots) {
    if (!b.positive) continue;
    QVec c = lat.coordinates(b.levels.smallest_positive() * b.coroot);
    std::vector<Integer> row;
    for (const auto& q : c) {
      ensure(is_integer(q), ErrorKind::InternalInconsistency, "W_sc translation outside R");
      row.push_back(num(q));
    }
    gens.push_back(row);
  }
  return lattice_index(gens, sys.dim());
}

struct Decomposition {
  AffineWeylElement v_sc;
  std::size_t omega = 0;  // index into the Omega list
};

/// v = v_sc o omega with v_sc in W^aff_sc and omega in Omega.
inline Decomposition decompose(const RestrictedRootSystem& sys, const std::vector<OmegaElement>& omega,
                               const AffineWeylElement& v) {
  ensure(translation_lattice(sys).contains(v.translation), ErrorKind::NotInWaff, "translation part outside R");
  ensure(linear_in_weyl_group(sys, v.linear), ErrorKind::NotInWaff, "linear part outside W^theta");
  auto red = alcove_reduce(sys, v(sys.interior_point()));
  AffineWeylElement w = red.v * v;
  return {red.v.inverse(), omega_index(omega, w)};
}

}  // namespace endo
