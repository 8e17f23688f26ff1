#pragma once

// Weyl groups of a based root system presented by its simple coroots.
//
// Conventions shared by the absolute and the restricted systems: vectors are
// written in the fundamental-coweight basis dual to the simple roots, so the
// k-th simple root is the k-th coordinate functional and a root with
// simple-root coordinates n evaluates as dot(n, v). Linear maps are matrices
// acting on these vectors; a functional f transforms as f -> f o w^{-1}.

#include "endo/error.hpp"
#include "endo/linalg.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace endo {

using Perm = std::vector<std::size_t>;

inline Perm identity_perm(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  return p;
}

/// (a o b)(i) = a(b(i)).
inline Perm compose(const Perm& a, const Perm& b) {
  Perm out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
  return out;
}

inline Perm invert(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = i;
  return out;
}

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

inline std::size_t perm_order(const Perm& p) {
  std::size_t order = 1;
  Perm q = p;
  const Perm id = identity_perm(p.size());
  while (q != id) {
    q = compose(p, q);
    ++order;
  }
  return order;
}

struct ReflectionSystem {
  /// coroots[i][j] = alpha_j(coroot_i); i.e. the Cartan matrix in Kac's convention.
  QMat coroots;

  std::size_t rank() const { return coroots.size(); }

  QMat reflection(std::size_t i) const {
    // v -> v - alpha_i(v) coroot_i
    QMat m = identity(rank());
    for (std::size_t r = 0; r < rank(); ++r) m[r][i] -= coroots[i][r];
    return m;
  }
};

struct DominantReduction {
  std::vector<std::size_t> word;  // simple reflections applied, first to last
  QMat element;                   // product, acting on vectors
  QVec dominant;
};

/// Reflect v into the closed dominant chamber, always using the least-index
/// simple root that is negative on the current vector.
inline DominantReduction reduce_to_dominant(const ReflectionSystem& sys, QVec v, std::size_t cap = 1000000) {
  DominantReduction out{{}, identity(sys.rank()), {}};
  for (std::size_t step = 0;; ++step) {
    ensure(step < cap, ErrorKind::NonTermination, "dominant reduction exceeded iteration cap");
    std::size_t i = 0;
    while (i < v.size() && v[i] >= 0) ++i;
    if (i == v.size()) break;
    QMat s = sys.reflection(i);
    v = mat_vec(s, v);
    out.element = mat_mul(s, out.element);
    out.word.push_back(i);
  }
  out.dominant = std::move(v);
  return out;
}

/// Total order on exact matrices so they can key ordered containers.
struct MatLess {
  bool operator()(const QMat& a, const QMat& b) const {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j)
        if (a[i][j] != b[i][j]) return a[i][j] < b[i][j];
    return false;
  }
};

/// All elements of the Weyl group, by closure from the simple reflections.
inline std::vector<QMat> enumerate_weyl_group(const ReflectionSystem& sys, std::size_t guard = 1000000) {
  std::set<QMat, MatLess> seen;
  std::vector<QMat> order;
  std::vector<QMat> gens;
  for (std::size_t i = 0; i < sys.rank(); ++i) gens.push_back(sys.reflection(i));
  QMat id = identity(sys.rank());
  seen.insert(id);
  order.push_back(id);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& g : gens) {
      QMat next = mat_mul(g, order[head]);
      if (seen.insert(next).second) {
        order.push_back(next);
        ensure(order.size() <= guard, ErrorKind::GroupTooLarge,
               "Weyl group exceeds guard of " + std::to_string(guard) + " elements");
      }
    }
  }
  return order;
}

/// w o delta decomposition of a root-system automorphism.
struct AutomorphismSplit {
  QMat weyl;         // element of W
  Perm diagram;      // delta permutes the simple roots: alpha_k o delta^{-1} = alpha_{diagram[k]}
  QMat diagram_map;  // delta as a matrix on vectors
  bool in_weyl_group() const { return diagram == identity_perm(diagram.size()); }
};

/// Split a linear map m that permutes the roots (given by simple-root
/// coordinates) into m = w o delta with w in W and delta a diagram
/// automorphism. Returns nullopt when m does not preserve the root set.
inline std::optional<AutomorphismSplit> split_automorphism(const ReflectionSystem& sys,
                                                           const std::set<QVec>& roots, const QMat& m) {
  auto minv = inverse(m);
  if (!minv) return std::nullopt;
  for (const auto& r : roots)
    if (!roots.count(vec_mat(r, *minv))) return std::nullopt;
  QVec rho(sys.rank(), Rational(1));
  auto red = reduce_to_dominant(sys, mat_vec(m, rho));
  QMat delta = mat_mul(red.element, m);
  auto dinv = inverse(delta);
  Perm perm(sys.rank());
  for (std::size_t k = 0; k < sys.rank(); ++k) {
    const QVec& row = (*dinv)[k];  // alpha_k o delta^{-1}
    std::size_t hit = sys.rank();
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 1 && hit == sys.rank()) hit = j;
      else if (row[j] != 0) hit = sys.rank() + 1;
    }
    if (hit >= sys.rank()) return std::nullopt;
    perm[k] = hit;
  }
  auto w = inverse(red.element);
  return AutomorphismSplit{*w, perm, delta};
}

inline std::uint64_t weyl_group_order(char type, int rank) {
  auto fact = [](int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  switch (type) {
    case 'A': return fact(rank + 1);
    case 'B':
    case 'C': return (std::uint64_t{1} << rank) * fact(rank);
    case 'D': return (std::uint64_t{1} << (rank - 1)) * fact(rank);
    case 'E': return rank == 6 ? 51840 : rank == 7 ? 2903040 : 696729600;
    case 'F': return 1152;
    case 'G': return 12;
  }
  return 0;
}

}  // namespace endo
