#pragma once

// Job configuration: a JSON document describing the root datum, the Galois
// model and command parameters. Parsing is strict; serialization is canonical.

#include "endo/endo.hpp"
#include "endo/error.hpp"
#include "endo/group.hpp"
#include "endo/rootdata.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace endo {

using Json = nlohmann::ordered_json;

struct GroupSpec {
  std::string name;                                    // standard group, or a label for a table
  std::vector<std::vector<std::size_t>> table;         // empty for standard groups
  std::vector<std::size_t> generators;                 // only with a table
};

struct JobConfig {
  CartanSpec datum;
  GroupSpec group{"1", {}, {}};
  std::vector<Perm> actions;  // per generator; empty means trivial
  std::optional<std::size_t> torsion;
  std::vector<std::string> checks;
  std::size_t samples = 100;
  std::int64_t max_order = 24;
  std::uint64_t seed = 1;
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"oracle",         "lattice", "alcove", "omega",
                                              "classification", "torsors", "hasse",  "endoscopic"};
  return names;
}

namespace detail {

[[noreturn]] inline void config_error(const std::string& path, const std::string& what) {
  fail(ErrorKind::ConfigError, (path.empty() ? std::string("<root>") : path) + ": " + what);
}

inline void only_fields(const Json& j, const std::string& path, const std::set<std::string>& allowed) {
  if (!j.is_object()) config_error(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) config_error(path + "." + it.key(), "unknown field");
}

inline std::size_t as_index(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) config_error(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::vector<std::size_t> as_index_list(const Json& j, const std::string& path) {
  if (!j.is_array()) config_error(path, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_index(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

inline JobConfig config_from_json(const Json& j) {
  using namespace detail;
  JobConfig c;
  only_fields(j, "", {"datum", "galois", "params"});
  if (!j.contains("datum")) config_error("datum", "missing");
  const Json& d = j["datum"];
  only_fields(d, "datum", {"components", "theta"});
  if (!d.contains("components") || !d["components"].is_array() || d["components"].empty())
    config_error("datum.components", "expected a non-empty array");
  for (std::size_t i = 0; i < d["components"].size(); ++i) {
    const Json& comp = d["components"][i];
    std::string path = "datum.components[" + std::to_string(i) + "]";
    only_fields(comp, path, {"type", "rank"});
    if (!comp.contains("type") || !comp["type"].is_string() || comp["type"].get<std::string>().size() != 1)
      config_error(path + ".type", "expected a one-letter type label");
    if (!comp.contains("rank")) config_error(path + ".rank", "missing");
    c.datum.components.push_back({comp["type"].get<std::string>()[0], static_cast<int>(as_index(comp["rank"], path + ".rank"))});
  }
  if (d.contains("theta")) c.datum.theta = as_index_list(d["theta"], "datum.theta");

  if (j.contains("galois")) {
    const Json& g = j["galois"];
    only_fields(g, "galois", {"group", "actions"});
    if (g.contains("group")) {
      const Json& grp = g["group"];
      if (grp.is_string()) {
        c.group.name = grp.get<std::string>();
      } else {
        only_fields(grp, "galois.group", {"name", "table", "generators"});
        if (grp.contains("name")) {
          if (!grp["name"].is_string()) config_error("galois.group.name", "expected a string");
          c.group.name = grp["name"].get<std::string>();
        } else {
          c.group.name = "custom";
        }
        if (!grp.contains("table") || !grp["table"].is_array()) config_error("galois.group.table", "expected an array");
        for (std::size_t i = 0; i < grp["table"].size(); ++i)
          c.group.table.push_back(as_index_list(grp["table"][i], "galois.group.table[" + std::to_string(i) + "]"));
        if (!grp.contains("generators")) config_error("galois.group.generators", "missing");
        c.group.generators = as_index_list(grp["generators"], "galois.group.generators");
      }
    }
    if (g.contains("actions")) {
      if (!g["actions"].is_array()) config_error("galois.actions", "expected an array");
      for (std::size_t i = 0; i < g["actions"].size(); ++i)
        c.actions.push_back(as_index_list(g["actions"][i], "galois.actions[" + std::to_string(i) + "]"));
    }
  }

  if (j.contains("params")) {
    const Json& p = j["params"];
    only_fields(p, "params", {"torsion", "checks", "samples", "max_order", "seed"});
    if (p.contains("torsion")) {
      c.torsion = as_index(p["torsion"], "params.torsion");
      if (*c.torsion == 0) config_error("params.torsion", "must be positive");
    }
    if (p.contains("checks")) {
      if (!p["checks"].is_array()) config_error("params.checks", "expected an array");
      for (std::size_t i = 0; i < p["checks"].size(); ++i) {
        std::string path = "params.checks[" + std::to_string(i) + "]";
        if (!p["checks"][i].is_string()) config_error(path, "expected a string");
        std::string name = p["checks"][i].get<std::string>();
        const auto& known = known_checks();
        if (std::find(known.begin(), known.end(), name) == known.end()) config_error(path, "unknown check '" + name + "'");
        c.checks.push_back(name);
      }
    }
    if (p.contains("samples")) c.samples = as_index(p["samples"], "params.samples");
    if (p.contains("max_order")) {
      c.max_order = static_cast<std::int64_t>(as_index(p["max_order"], "params.max_order"));
      if (c.max_order < 1) config_error("params.max_order", "must be positive");
    }
    if (p.contains("seed")) {
      if (!p["seed"].is_number_unsigned()) config_error("params.seed", "expected an unsigned integer");
      c.seed = p["seed"].get<std::uint64_t>();
    }
  }
  return c;
}

inline JobConfig parse_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ConfigError, std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

inline Json config_to_json(const JobConfig& c) {
  Json j;
  Json comps = Json::array();
  for (const auto& comp : c.datum.components) comps.push_back({{"type", std::string(1, comp.type)}, {"rank", comp.rank}});
  j["datum"]["components"] = comps;
  if (!c.datum.theta.empty()) j["datum"]["theta"] = c.datum.theta;
  if (c.group.table.empty()) {
    j["galois"]["group"] = c.group.name;
  } else {
    j["galois"]["group"] = {{"name", c.group.name}, {"table", c.group.table}, {"generators", c.group.generators}};
  }
  if (!c.actions.empty()) j["galois"]["actions"] = c.actions;
  Json p;
  if (c.torsion) p["torsion"] = *c.torsion;
  if (!c.checks.empty()) p["checks"] = c.checks;
  p["samples"] = c.samples;
  p["max_order"] = c.max_order;
  p["seed"] = c.seed;
  j["params"] = p;
  return j;
}

inline std::string serialize_config(const JobConfig& c) { return config_to_json(c).dump(2) + "\n"; }

inline FiniteGroup group_from_spec(const GroupSpec& g) {
  if (g.table.empty()) return standard_group(g.name);
  FiniteGroup out{g.name, g.table, g.generators};
  validate_group(out);
  return out;
}

inline GaloisModel model_from_config(const JobConfig& c) {
  BasedRootDatum datum = build_based_root_datum(c.datum);
  RestrictedRootSystem sys = fold(datum);
  FiniteGroup group = group_from_spec(c.group);
  std::vector<Perm> actions = c.actions;
  if (actions.empty()) actions.assign(group.generators.size(), identity_perm(datum.rank()));
  // node labels refer to the input order, which is also the datum's node order
  return make_galois_model_from_generators(sys, group, actions);
}

}  // namespace endo
