#pragma once

// Places of a finite Galois model are its cyclic subgroups. A class is
// localized by restricting omega_star; the Hasse check compares local
// equivalence at every place with global equivalence.

#include "endo/endo.hpp"
#include "endo/error.hpp"
#include "endo/group.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace endo {

struct PlaceModel {
  std::vector<std::size_t> elements;  // H, as indices into Q; identity first
  std::size_t generator = 0;          // least element generating H
};

/// Every cyclic subgroup <q>, listed once, by generator.
inline std::vector<PlaceModel> cyclic_places(const FiniteGroup& g) {
  std::vector<PlaceModel> out;
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t q = 0; q < g.size(); ++q) {
    auto h = g.cyclic_subgroup(q);
    auto key = h;
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) out.push_back({h, q});
  }
  return out;
}

/// The model over H, with H's elements re-indexed in the order of `place.elements`.
inline GaloisModel restrict_model(const GaloisModel& m, const PlaceModel& place) {
  const auto& h = place.elements;
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < h.size(); ++i) local[h[i]] = i;
  FiniteGroup sub;
  sub.name = m.group.name + "|<" + std::to_string(place.generator) + ">";
  sub.table.assign(h.size(), std::vector<std::size_t>(h.size()));
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = 0; b < h.size(); ++b) {
      auto it = local.find(m.group.mul(h[a], h[b]));
      ensure(it != local.end(), ErrorKind::ModelMismatch, "place is not a subgroup");
      sub.table[a][b] = it->second;
    }
  if (place.generator != 0) sub.generators = {local.at(place.generator)};
  std::vector<Perm> action;
  for (auto q : h) action.push_back(m.action[q]);
  return make_galois_model(m.sys, sub, action);
}

inline EndoPair localize(const GaloisModel& local, const PlaceModel& place, const EndoPair& p) {
  Cocycle c;
  for (auto q : place.elements) c.push_back(p.omega_star.at(q));
  return validate_endo_pair(local, c, p.x);
}

struct LocalVerdict {
  std::size_t place = 0;  // generator of the place
  std::optional<std::size_t> witness;
};

struct LocalGlobalResult {
  bool everywhere = true;
  std::vector<LocalVerdict> places;
};

/// Localized models, computed once per model.
struct PlaceFamily {
  std::vector<PlaceModel> places;
  std::vector<GaloisModel> models;
};

inline PlaceFamily place_family(const GaloisModel& m) {
  PlaceFamily f;
  f.places = cyclic_places(m.group);
  for (const auto& p : f.places) f.models.push_back(restrict_model(m, p));
  return f;
}

inline LocalGlobalResult locally_equivalent_everywhere(const PlaceFamily& f, const EndoPair& a, const EndoPair& b) {
  check_same_model(a, b);
  LocalGlobalResult out;
  for (std::size_t i = 0; i < f.places.size(); ++i) {
    const auto& lm = f.models[i];
    auto w = equivalence_witness(lm, localize(lm, f.places[i], a), localize(lm, f.places[i], b));
    out.places.push_back({f.places[i].generator, w});
    if (!w) out.everywhere = false;
  }
  return out;
}

struct HasseViolation {
  std::string id1, id2;
  bool local = false, global = false;
  std::string detail;
};

struct HasseReport {
  std::size_t pairs = 0;
  std::size_t places = 0;
  std::size_t locally_equivalent_pairs = 0;
  bool criterion_applies = false;  // theta != 1 on an absolutely simple datum
  std::vector<HasseViolation> violations;
  bool passed() const { return violations.empty(); }
};

inline bool absolutely_simple_twisted(const GaloisModel& m) {
  const auto& d = m.sys.datum;
  return d.components.size() == 1 && d.theta != identity_perm(d.rank());
}

/// For every ordered pair of classes: equivalent at every place iff globally
/// equivalent. On twisted absolutely simple data also compares global
/// equivalence with "Omega(x1;x2) nonempty and equal omega_star".
inline HasseReport hasse_check(const GaloisModel& m, const std::vector<EndoClass>& classes) {
  HasseReport rep;
  PlaceFamily f = place_family(m);
  rep.places = f.places.size();
  rep.criterion_applies = absolutely_simple_twisted(m);
  for (const auto& c1 : classes)
    for (const auto& c2 : classes) {
      ++rep.pairs;
      auto local = locally_equivalent_everywhere(f, c1.rep, c2.rep);
      bool global = equivalence_witness(m, c1.rep, c2.rep).has_value();
      if (local.everywhere) ++rep.locally_equivalent_pairs;
      if (local.everywhere != global) {
        std::string trail;
        for (const auto& v : local.places)
          trail += "<" + std::to_string(v.place) + ">:" + (v.witness ? std::to_string(*v.witness) : "none") + " ";
        rep.violations.push_back({c1.id, c2.id, local.everywhere, global, trail});
      }
      if (rep.criterion_applies) {
        bool crit = !omega_between(m, c1.rep.x, c2.rep.x).empty() && c1.rep.omega_star == c2.rep.omega_star;
        if (crit != global)
          rep.violations.push_back({c1.id, c2.id, local.everywhere, global, "twisted criterion disagrees"});
      }
    }
  return rep;
}

}  // namespace endo
