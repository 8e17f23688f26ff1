// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "endo/checks.hpp"
#include "matrix.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>

using namespace endo;
using endo::fixtures::model_matrix;
using endo::fixtures::type_matrix;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& what) {
    if (passed) detail = what;
    passed = false;
  }
};

RestrictedRootSystem system_of(const endo::fixtures::TypeCase& tc) { return fold(build_based_root_datum(tc.spec)); }

bool absolutely_simple_twisted(const RestrictedRootSystem& sys) {
  return sys.datum.components.size() == 1 && sys.datum.theta != identity_perm(sys.datum.rank());
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t points = 0;
  for (const auto& tc : type_matrix()) {
    std::mt19937_64 rng(1000 + points);
    auto r = check_oracle(system_of(tc), 1000, 24, rng);
    points += r.cases;
    if (!r.passed) o.fail(tc.name + ": " + r.witness);
  }
  if (o.passed) o.detail = std::to_string(points) + " torsion points over " + std::to_string(type_matrix().size()) + " types";
  return o;
}

Outcome lattice_lemma() {
  Outcome o;
  std::size_t nontrivial = 0;
  for (const auto& tc : type_matrix()) {
    auto rep = lattice_lemma_check(system_of(tc), 24);
    if (!rep.passed) o.fail(tc.name + ": " + rep.witness + " left=" + std::to_string(rep.left) + " right=" + std::to_string(rep.right));
    nontrivial += rep.left > 1;
  }
  if (o.passed) o.detail = "bound 24, " + std::to_string(nontrivial) + " types with a nontrivial quotient";
  return o;
}

Outcome alcove_geometry() {
  Outcome o;
  std::size_t cases = 0;
  for (const auto& tc : type_matrix()) {
    std::mt19937_64 rng(2000 + cases);
    auto r = check_alcove(system_of(tc), 100, rng);
    cases += r.cases;
    if (!r.passed) o.fail(tc.name + ": " + r.witness);
  }
  if (o.passed) o.detail = std::to_string(cases) + " cases";
  return o;
}

Outcome omega_structure() {
  Outcome o;
  for (const auto& tc : type_matrix()) {
    auto sys = system_of(tc);
    std::mt19937_64 rng(3000);
    auto r = check_omega(sys, 100, rng);
    if (!r.passed) o.fail(tc.name + ": " + r.witness);
    auto n = compute_omega_group(sys).size();
    const auto& comps = sys.datum.components;
    bool untwisted_a = comps.size() == 1 && comps[0].type == 'A' && sys.datum.theta == identity_perm(sys.datum.rank());
    if (untwisted_a && n != static_cast<std::size_t>(comps[0].rank + 1))
      o.fail(tc.name + ": |Omega|=" + std::to_string(n) + ", expected " + std::to_string(comps[0].rank + 1));
    if (absolutely_simple_twisted(sys) && n > 2) o.fail(tc.name + ": twisted |Omega|=" + std::to_string(n));
  }
  if (o.passed) o.detail = std::to_string(type_matrix().size()) + " types";
  return o;
}

template <class F>
Outcome over_models(const F& run) {
  Outcome o;
  std::size_t models = 0, cases = 0;
  for (const auto& mc : model_matrix()) {
    auto m = mc.build();
    CheckReport r = run(m);
    ++models;
    cases += r.cases;
    if (!r.passed) o.fail(mc.name + ": " + r.witness);
  }
  if (o.passed) o.detail = std::to_string(models) + " models, " + std::to_string(cases) + " cases";
  return o;
}

Outcome negative_controls() {
  Outcome o;
  std::string witnesses;
  // Lambda offset: shift the level set of one positive root
  for (const auto& tc : type_matrix()) {
    auto sys = system_of(tc);
    auto& root = sys.roots.front();
    root.levels.offset = root.levels.offset == 0 ? root.levels.period / 2 : Rational(0);
    std::mt19937_64 rng(4000);
    auto r = check_oracle(sys, 1000, 24, rng);
    if (r.passed || r.witness.empty()) o.fail(tc.name + ": corrupted level offset went unnoticed");
    else if (tc.name == "2A2") witnesses += " offset[" + r.witness + "]";
  }
  // a mark
  for (const auto& tc : type_matrix()) {
    auto sys = system_of(tc);
    sys.affine.back().mark += 1;
    std::mt19937_64 rng(5000);
    auto r = check_alcove(sys, 10, rng);
    if (r.passed || r.witness.empty()) o.fail(tc.name + ": corrupted mark went unnoticed");
    else if (tc.name == "G2") witnesses += " mark[" + r.witness + "]";
  }
  // one omega_star value, on models where only the trivial cocycle exists
  std::vector<endo::fixtures::ModelCase> fixtures{
      {"A1 Q=Z3", {{{'A', 1}}, {}}, cyclic_group(3), {{0}}},
      {"D4 Q=Z3", {{{'D', 4}}, {}}, cyclic_group(3), {{0, 1, 2, 3}}},
      {"A3 Q=Z3", {{{'A', 3}}, {}}, cyclic_group(3), {{0, 1, 2}}},
  };
  std::size_t corruptions = 0;
  for (const auto& fx : fixtures) {
    auto m = fx.build();
    for (const auto& c : classes_for_checks(m, 2))
      for (std::size_t q = 1; q < m.group.size(); ++q)
        for (std::size_t w = 0; w < m.omega.size(); ++w) {
          if (w == c.rep.omega_star[q]) continue;
          Cocycle bad = c.rep.omega_star;
          bad[q] = w;
          ++corruptions;
          try {
            validate_endo_pair(m, bad, c.rep.x);
            o.fail(fx.name + ": corrupted omega_star accepted");
          } catch (const Error& e) {
            if (corruptions == 1) witnesses += std::string(" omega_star[") + e.what() + "]";
          }
        }
  }
  if (corruptions == 0) o.fail("no omega_star corruptions exercised");
  if (o.passed) o.detail = std::to_string(corruptions) + " omega_star corruptions;" + witnesses;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"lattice lemma", lattice_lemma},
      {"alcove geometry", alcove_geometry},
      {"Omega structure", omega_structure},
      {"classification coherence", [] { return over_models([](const GaloisModel& m) { return check_classification(m); }); }},
      {"Isom/Aut torsors",
       [] { return over_models([](const GaloisModel& m) { return check_torsors(m, classes_for_checks(m, 3)); }); }},
      {"local-global",
       [] { return over_models([](const GaloisModel& m) { return check_hasse(m, classes_for_checks(m, 3)); }); }},
      {"negative controls", negative_controls},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.passed;
    std::printf("%s %zu %s (%.1fs): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
