#pragma once

// Property and oracle checks over one model. Each returns a report carrying
// the first counterexample it met.

#include "endo/affine.hpp"
#include "endo/endo.hpp"
#include "endo/endogroup.hpp"
#include "endo/localglobal.hpp"
#include "endo/twistfold.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace endo {

struct CheckReport {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;
  std::string witness;

  CheckReport() = default;
  explicit CheckReport(std::string n) : name(std::move(n)) {}

  void fail_with(std::string w) {
    if (passed) witness = std::move(w);
    passed = false;
  }
};

inline std::string format_vec(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

/// Random torsion point of order <= max_order, shifted by a small cocharacter.
inline QVec random_torsion_point(std::size_t dim, std::int64_t max_order, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> order(1, max_order), shift(-2, 2);
  std::int64_t n = order(rng);
  std::uniform_int_distribution<std::int64_t> num(0, n - 1);
  QVec x(dim);
  for (auto& q : x) q = Rational(num(rng), n) + Rational(shift(rng));
  return x;
}

/// Random point of the closed alcove with a random zero pattern.
inline AlcovePoint random_alcove_point(const RestrictedRootSystem& sys, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 2), weight(1, 6);
  QVec kac = zeros(sys.affine.size());
  for (const auto& comp : sys.components) {
    std::vector<int> w;
    bool any = false;
    for (std::size_t i = 0; i < comp.affine_nodes.size(); ++i) {
      int v = coin(rng) == 0 ? 0 : weight(rng);
      any = any || v > 0;
      w.push_back(v);
    }
    if (!any) w[std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng)] = 1;
    Rational total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) total += Rational(w[i]) * Rational(sys.affine[comp.affine_nodes[i]].mark);
    for (std::size_t i = 0; i < w.size(); ++i) kac[comp.affine_nodes[i]] = Rational(w[i]) / total;
  }
  return alcove_point_from_kac(sys, kac);
}

/// sigma_x(x) against the torus-side oracle on random torsion points.
inline CheckReport check_oracle(const RestrictedRootSystem& sys, std::size_t samples, std::int64_t max_order,
                                std::mt19937_64& rng) {
  CheckReport r{"oracle"};
  for (std::size_t i = 0; i < samples; ++i) {
    QVec x = random_torsion_point(sys.dim(), max_order, rng);
    ++r.cases;
    if (sigma_x(sys, x) != oracle_sigma_from_s(sys, s_from_x(x))) {
      r.fail_with("x=" + format_vec(x));
      break;
    }
  }
  return r;
}

inline CheckReport check_lattice(const RestrictedRootSystem& sys, std::int64_t bound) {
  CheckReport r{"lattice"};
  auto rep = lattice_lemma_check(sys, bound);
  r.cases = rep.torsion_points;
  r.detail = "left=" + std::to_string(rep.left) + " right=" + std::to_string(rep.right);
  if (!rep.passed) r.fail_with(rep.witness.empty() ? r.detail : rep.witness);
  return r;
}

/// Marks, the identity sum d beta^aff = 1, simple transitivity of W_sc(x) on
/// the alcoves around sampled x, and the integral-span description of the
/// vanishing affine roots.
inline CheckReport check_alcove(const RestrictedRootSystem& sys, std::size_t samples, std::mt19937_64& rng) {
  CheckReport r{"alcove"};
  for (const auto& a : sys.affine)
    if (a.mark <= 0) r.fail_with("non-positive mark " + a.mark.str());
  // sum d beta^aff at dim + 1 affinely independent points
  std::vector<QVec> probes{zeros(sys.dim())};
  for (std::size_t k = 0; k < sys.dim(); ++k) probes.push_back(unit(sys.dim(), k));
  for (const auto& p : probes)
    for (std::size_t j = 0; j < sys.components.size(); ++j) {
      Rational total = 0;
      for (auto n : sys.components[j].affine_nodes) total += Rational(sys.affine[n].mark) * sys.affine_value(n, p);
      ++r.cases;
      if (total != 1) r.fail_with("component " + std::to_string(j) + " sums to " + to_string(total) + " at " + format_vec(p));
    }
  if (!r.passed) return r;

  std::uniform_int_distribution<int> tiny(-1000, 1000);
  for (std::size_t s = 0; s < samples && r.passed; ++s) {
    AlcovePoint x = random_alcove_point(sys, rng);
    ++r.cases;
    auto alcoves = alcoves_containing(sys, x);
    std::set<QVec> centers;
    for (const auto& a : alcoves) centers.insert(a.center);
    // independent count: Weyl order of the type of S^aff(x)
    std::uint64_t expected = 1;
    {
      auto full = sys.affine_cartan();
      auto S = x.S();
      std::vector<bool> seen(S.size(), false);
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> comp{i};
        seen[i] = true;
        for (std::size_t h = 0; h < comp.size(); ++h)
          for (std::size_t t = 0; t < S.size(); ++t)
            if (!seen[t] && full[S[comp[h]]][S[t]] != 0) {
              seen[t] = true;
              comp.push_back(t);
            }
        std::vector<std::vector<Rational>> sub;
        for (auto a : comp) {
          std::vector<Rational> row;
          for (auto b : comp) row.push_back(full[S[a]][S[b]]);
          sub.push_back(row);
        }
        std::string type = classify_cartan(sub);
        expected *= weyl_group_order(type[0], std::stoi(type.substr(1)));
      }
    }
    if (alcoves.size() != expected) {
      r.fail_with("kac=" + format_vec(x.kac) + " has " + std::to_string(alcoves.size()) + " alcoves, expected " +
                  std::to_string(expected));
      break;
    }
    // every alcove met by a small generic perturbation of x is in the list
    QVec c = sys.interior_point();
    for (int t = 0; t < 8; ++t) {
      QVec y = x.x;
      for (auto& q : y) q += Rational(tiny(rng), 1000000000);
      auto red = alcove_reduce(sys, y);
      if (!red.point.interior()) continue;
      if (!centers.count(red.v.inverse()(c))) {
        r.fail_with("perturbation of kac=" + format_vec(x.kac) + " lands in an unlisted alcove");
        break;
      }
    }
    if (auto v = span_violation(sys, x)) r.fail_with("kac=" + format_vec(x.kac) + ": " + *v);
  }
  return r;
}

/// Omega: abelian, stabilizes the alcove, |Omega| = [R : R_sc],
/// Aut(D_a) = Omega x| Aut(D) by cardinality, and decompose round-trips.
inline CheckReport check_omega(const RestrictedRootSystem& sys, std::size_t samples, std::mt19937_64& rng) {
  CheckReport r{"omega"};
  auto omega = compute_omega_group(sys);
  r.cases = omega.size();
  Integer idx = translation_index(sys);
  r.detail = "|Omega|=" + std::to_string(omega.size()) + " [R:R_sc]=" + idx.str();
  if (Integer(omega.size()) != idx) r.fail_with(r.detail);
  for (const auto& w : omega) {
    auto np = node_permutation(sys, w.map);
    if (!np || *np != w.node_perm) r.fail_with("Omega element does not permute the alcove walls");
    // vertices are stored with the other factors at 0, so compare on the target factor
    for (std::size_t i = 0; i < sys.affine.size(); ++i) {
      const auto& target = sys.affine[w.node_perm[i]];
      QVec image = w.map(sys.affine[i].vertex);
      for (auto k : sys.components[target.component].nodes)
        if (image[k] != target.vertex[k]) r.fail_with("vertex not mapped to vertex");
    }
  }
  auto aut = affine_diagram_automorphisms(sys);
  auto fin = finite_diagram_automorphisms(sys);
  if (aut.size() != omega.size() * fin.size())
    r.fail_with("|Aut(D_a)|=" + std::to_string(aut.size()) + " but |Omega||Aut(D)|=" +
                std::to_string(omega.size() * fin.size()));
  std::set<Perm> finset(fin.begin(), fin.end());
  for (std::size_t i = 1; i < omega.size(); ++i)
    if (finset.count(omega[i].node_perm)) r.fail_with("Omega meets Aut(D) nontrivially");

  std::uniform_int_distribution<std::size_t> pick_node(0, sys.affine.size() - 1), pick_w(0, omega.size() - 1),
      len(0, 12);
  for (std::size_t s = 0; s < samples && r.passed; ++s) {
    AffineWeylElement v_sc = AffineWeylElement::identity(sys.dim());
    for (std::size_t l = len(rng); l > 0; --l) v_sc = node_reflection(sys, pick_node(rng)) * v_sc;
    std::size_t w = pick_w(rng);
    auto dec = decompose(sys, omega, v_sc * omega[w].map);
    ++r.cases;
    if (dec.omega != w || !(dec.v_sc == v_sc)) r.fail_with("decompose does not round-trip");
  }
  return r;
}

inline std::vector<EndoClass> classes_for_checks(const GaloisModel& m, std::size_t max_torsion) {
  std::map<std::string, EndoClass> by_id;
  for (auto& c : enumerate_elliptic(m)) by_id.emplace(c.id, c);
  for (std::size_t N = 1; N <= max_torsion; ++N)
    for (auto& c : enumerate_torsion(m, N)) by_id.emplace(c.id, c);
  std::vector<EndoClass> out;
  for (auto& [id, c] : by_id) out.push_back(std::move(c));
  return out;
}

/// Elliptic enumeration against the elliptic filter of exhaustive torsion
/// enumeration; re-canonicalization is idempotent; i(x) bounds.
inline CheckReport check_classification(const GaloisModel& m) {
  CheckReport r{"classification"};
  auto ell = enumerate_elliptic(m);
  std::set<std::string> ids;
  for (const auto& c : ell) {
    ids.insert(c.id);
    if (make_class(m, c.rep).id != c.id) r.fail_with("class " + c.id + " is not stable under re-canonicalization");
    if (!c.elliptic || c.i_x != m.i_G) r.fail_with("class " + c.id + " has i(x)=" + std::to_string(c.i_x));
  }
  std::size_t bound = elliptic_denominator_bound(m);
  std::set<std::string> from_torsion;
  std::size_t all = 0;
  for (std::size_t N = 1; N <= bound; ++N)
    for (const auto& c : enumerate_torsion(m, N)) {
      ++all;
      if (c.i_x < m.i_G) r.fail_with("class " + c.id + " has i(x) below i(G)");
      if (c.elliptic) from_torsion.insert(c.id);
    }
  r.cases = all;
  r.detail = std::to_string(ell.size()) + " elliptic classes, denominators up to " + std::to_string(bound);
  if (ids != from_torsion)
    r.fail_with("elliptic enumeration found " + std::to_string(ids.size()) + " classes, torsion filter " +
                std::to_string(from_torsion.size()));
  return r;
}

/// Equivalence is an equivalence relation on enumerated classes; Isom sets are
/// Aut-torsors and Aut sets are groups.
inline CheckReport check_torsors(const GaloisModel& m, const std::vector<EndoClass>& classes) {
  CheckReport r{"torsors"};
  for (const auto& a : classes) {
    auto aut = isom_set(m, a.rep, a.rep);
    std::set<std::size_t> as(aut.begin(), aut.end());
    if (!as.count(0)) r.fail_with("Aut of " + a.id + " lacks the identity");
    for (auto u : aut) {
      if (!as.count(m.omega_inv[u])) r.fail_with("Aut of " + a.id + " is not closed under inverses");
      for (auto v : aut)
        if (!as.count(m.omega_mul[u][v])) r.fail_with("Aut of " + a.id + " is not closed under products");
    }
    auto omega_x = omega_between(m, a.rep.x, a.rep.x);
    for (auto u : aut)
      if (std::find(omega_x.begin(), omega_x.end(), u) == omega_x.end()) r.fail_with("Aut not inside Omega(x)");
    for (const auto& b : classes) {
      ++r.cases;
      auto sets = isom_and_aut_sets(m, a.rep, b.rep);
      if (!sets.isom.empty() && sets.isom.size() != isom_set(m, b.rep, b.rep).size())
        r.fail_with("Isom(" + a.id + "," + b.id + ") is not an Aut-torsor");
      if (a.id != b.id && !sets.isom.empty()) r.fail_with("distinct classes " + a.id + ", " + b.id + " are equivalent");
    }
  }
  // symmetry and transitivity on translated representatives
  for (const auto& a : classes)
    for (std::size_t w = 0; w < m.omega.size(); ++w) {
      auto [c, x] = act_on_pair(m, w, a.rep.omega_star, a.rep.x.x);
      auto moved = validate_endo_pair(m, c, alcove_point(m.sys, x));
      auto fwd = equivalence_witness(m, a.rep, moved);
      auto back = equivalence_witness(m, moved, a.rep);
      if (!fwd || !back) r.fail_with("translate of " + a.id + " by omega " + std::to_string(w) + " is not equivalent");
      if (make_class(m, moved).id != a.id) r.fail_with("translate of " + a.id + " changes the class id");
    }
  return r;
}

inline CheckReport check_hasse(const GaloisModel& m, const std::vector<EndoClass>& classes) {
  CheckReport r{"hasse"};
  auto rep = hasse_check(m, classes);
  r.cases = rep.pairs;
  r.detail = std::to_string(rep.pairs) + " pairs over " + std::to_string(rep.places) + " places";
  if (!rep.passed()) {
    const auto& v = rep.violations.front();
    r.fail_with(v.id1 + " vs " + v.id2 + " local=" + std::to_string(v.local) + " global=" + std::to_string(v.global) +
                " " + v.detail);
  }
  return r;
}

/// Endoscopic data of every class: center ranks agree, ellipticity matches a
/// zero center rank, and |W_sc(x)| is the Weyl order of the extracted type.
inline CheckReport check_endoscopic(const GaloisModel& m, const std::vector<EndoClass>& classes) {
  CheckReport r{"endoscopic"};
  for (const auto& c : classes) {
    ++r.cases;
    try {
      auto d = endoscopic_datum(m, c);
      if (d.elliptic != (d.center_rank == 0)) r.fail_with("class " + c.id + ": elliptic flag and center rank disagree");
      if (local_weyl_group(m.sys, c.rep.x).size() != d.weyl_order)
        r.fail_with("class " + c.id + ": |W_sc(x)| differs from the Weyl order of " + d.type_label());
      if (sigma_x(m.sys, c.rep.x.x) != oracle_sigma_from_s(m.sys, s_from_x(c.rep.x.x)))
        r.fail_with("class " + c.id + ": Sigma(x) disagrees with the oracle");
    } catch (const Error& e) {
      r.fail_with("class " + c.id + ": " + e.what());
    }
  }
  return r;
}

}  // namespace endo
