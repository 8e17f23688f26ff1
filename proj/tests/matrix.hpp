#pragma once

// Types and Galois models exercised by the unit tests and the acceptance run.

#include "endo/endo.hpp"
#include "endo/group.hpp"
#include "endo/rootdata.hpp"
#include "endo/twistfold.hpp"

#include <string>
#include <vector>

namespace endo::fixtures {

struct TypeCase {
  std::string name;
  CartanSpec spec;
};

inline std::vector<TypeCase> type_matrix() {
  return {
      {"A1", {{{'A', 1}}, {}}},
      {"A2", {{{'A', 2}}, {}}},
      {"A3", {{{'A', 3}}, {}}},
      {"A4", {{{'A', 4}}, {}}},
      {"B2", {{{'B', 2}}, {}}},
      {"B3", {{{'B', 3}}, {}}},
      {"C2", {{{'C', 2}}, {}}},
      {"C3", {{{'C', 3}}, {}}},
      {"D4", {{{'D', 4}}, {}}},
      {"G2", {{{'G', 2}}, {}}},
      {"2A2", {{{'A', 2}}, {1, 0}}},
      {"2A3", {{{'A', 3}}, {2, 1, 0}}},
      {"2A4", {{{'A', 4}}, {3, 2, 1, 0}}},
      {"2D4", {{{'D', 4}}, {0, 1, 3, 2}}},
      {"3D4", {{{'D', 4}}, {2, 1, 3, 0}}},
      {"A1xA1/swap", {{{'A', 1}, {'A', 1}}, {1, 0}}},
      {"A2xA2/swap", {{{'A', 2}, {'A', 2}}, {2, 3, 0, 1}}},
      {"A1xA1", {{{'A', 1}, {'A', 1}}, {}}},
  };
}

struct ModelCase {
  std::string name;
  CartanSpec spec;
  FiniteGroup group;
  std::vector<Perm> generator_action;

  GaloisModel build() const {
    return make_galois_model_from_generators(fold(build_based_root_datum(spec)), group, generator_action);
  }
};

/// Every type with trivial actions of 1, Z2, Z3, Z2xZ2, S3, plus the
/// admissible nontrivial diagram actions.
inline std::vector<ModelCase> model_matrix() {
  std::vector<ModelCase> out;
  const std::vector<FiniteGroup> groups{trivial_group(), cyclic_group(2), cyclic_group(3), klein_group(),
                                        symmetric_group(3)};
  for (const auto& t : type_matrix()) {
    std::size_t n = 0;
    for (const auto& c : t.spec.components) n += static_cast<std::size_t>(c.rank);
    for (const auto& g : groups)
      out.push_back({t.name + " Q=" + g.name + " trivial", t.spec, g, std::vector<Perm>(g.generators.size(), identity_perm(n))});
  }
  auto add = [&](std::string name, CartanSpec spec, FiniteGroup g, std::vector<Perm> act) {
    out.push_back({std::move(name), std::move(spec), std::move(g), std::move(act)});
  };
  const Perm id3{0, 1, 2}, id4{0, 1, 2, 3};
  add("A2 Q=Z2 flip", {{{'A', 2}}, {}}, cyclic_group(2), {{1, 0}});
  add("A3 Q=Z2 flip", {{{'A', 3}}, {}}, cyclic_group(2), {{2, 1, 0}});
  add("A4 Q=Z2 flip", {{{'A', 4}}, {}}, cyclic_group(2), {{3, 2, 1, 0}});
  add("A3 Q=Z2xZ2 flip,id", {{{'A', 3}}, {}}, klein_group(), {{2, 1, 0}, id3});
  add("2A2 Q=Z2 flip", {{{'A', 2}}, {1, 0}}, cyclic_group(2), {{1, 0}});
  add("2A3 Q=Z2 flip", {{{'A', 3}}, {2, 1, 0}}, cyclic_group(2), {{2, 1, 0}});
  add("2A4 Q=Z2 flip", {{{'A', 4}}, {3, 2, 1, 0}}, cyclic_group(2), {{3, 2, 1, 0}});
  add("2A3 Q=Z2xZ2 flip,id", {{{'A', 3}}, {2, 1, 0}}, klein_group(), {{2, 1, 0}, id3});
  add("D4 Q=Z2 legs", {{{'D', 4}}, {}}, cyclic_group(2), {{0, 1, 3, 2}});
  add("D4 Q=Z3 legs", {{{'D', 4}}, {}}, cyclic_group(3), {{2, 1, 3, 0}});
  add("D4 Q=S3 legs", {{{'D', 4}}, {}}, symmetric_group(3), {{2, 1, 0, 3}, {2, 1, 3, 0}});
  add("2D4 Q=Z2 centralizer", {{{'D', 4}}, {0, 1, 3, 2}}, cyclic_group(2), {{0, 1, 3, 2}});
  add("3D4 Q=Z3 centralizer", {{{'D', 4}}, {2, 1, 3, 0}}, cyclic_group(3), {{2, 1, 3, 0}});
  add("A1xA1 Q=Z2 swap", {{{'A', 1}, {'A', 1}}, {}}, cyclic_group(2), {{1, 0}});
  add("A1xA1 Q=Z2xZ2 swap,id", {{{'A', 1}, {'A', 1}}, {}}, klein_group(), {{1, 0}, {0, 1}});
  add("A1xA1/swap Q=Z2 swap", {{{'A', 1}, {'A', 1}}, {1, 0}}, cyclic_group(2), {{1, 0}});
  add("A2xA2/swap Q=Z2 swap", {{{'A', 2}, {'A', 2}}, {2, 3, 0, 1}}, cyclic_group(2), {{2, 3, 0, 1}});
  add("A2xA2/swap Q=Z2 flip", {{{'A', 2}, {'A', 2}}, {2, 3, 0, 1}}, cyclic_group(2), {{1, 0, 3, 2}});
  add("A2xA2/swap Q=Z2xZ2 swap,flip", {{{'A', 2}, {'A', 2}}, {2, 3, 0, 1}}, klein_group(), {{2, 3, 0, 1}, {1, 0, 3, 2}});
  add("A2xA2/swap Q=Z3 trivial", {{{'A', 2}, {'A', 2}}, {2, 3, 0, 1}}, cyclic_group(3), {id4});
  return out;
}

}  // namespace endo::fixtures
