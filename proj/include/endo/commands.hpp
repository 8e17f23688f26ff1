#pragma once

// classify / check / explain, producing deterministic result bundles.

#include "endo/checks.hpp"
#include "endo/config.hpp"
#include "endo/endo.hpp"
#include "endo/endogroup.hpp"
#include "endo/error.hpp"

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace endo {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaMajor = 1;
inline constexpr int kSchemaMinor = 0;

inline Json fractions(const QVec& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

inline Json class_to_json(const GaloisModel& m, const EndoClass& c, const std::string& source) {
  Json j;
  j["id"] = c.id;
  j["source"] = source;
  j["elliptic"] = c.elliptic;
  j["i_x"] = c.i_x;
  j["kac"] = fractions(c.rep.x.kac);
  j["x"] = fractions(c.rep.x.x);
  j["omega_star"] = c.rep.omega_star;
  j["S"] = c.S;
  j["complement_orbits"] = c.complement_orbits;
  EndoscopicDatum d = endoscopic_datum(m, c);
  Json e;
  e["type"] = d.type_label();
  Json comps = Json::array();
  for (const auto& comp : d.components) comps.push_back({{"type", comp.type}, {"nodes", comp.nodes}});
  e["components"] = comps;
  e["galois_node_action"] = d.galois_node_action;
  e["center_rank"] = d.center_rank;
  e["weyl_order"] = d.weyl_order;
  j["endoscopic"] = e;
  return j;
}

inline Json model_to_json(const GaloisModel& m) {
  Json j;
  j["dim"] = m.sys.dim();
  j["group"] = m.group.name;
  j["group_order"] = m.group.size();
  j["omega_order"] = m.omega.size();
  j["i_G"] = m.i_G;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < m.nodes(); ++i) {
    const auto& a = m.sys.affine[i];
    nodes.push_back({{"gradient", fractions(m.sys.roots[a.gradient].vector)},
                     {"constant", to_string(a.constant)},
                     {"mark", a.mark.str()},
                     {"component", a.component},
                     {"e", m.sys.roots[a.gradient].e}});
  }
  j["affine_nodes"] = nodes;
  Json omega = Json::array();
  for (const auto& w : m.omega) omega.push_back(w.node_perm);
  j["omega"] = omega;
  return j;
}

inline Json check_to_json(const CheckReport& r) {
  return {{"name", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"detail", r.detail}, {"witness", r.witness}};
}

inline Json bundle_header(const JobConfig& c) {
  Json b;
  b["schema_version"] = std::to_string(kSchemaMajor) + "." + std::to_string(kSchemaMinor);
  b["tool_version"] = kToolVersion;
  b["config"] = config_to_json(c);
  b["seed"] = c.seed;
  return b;
}

/// All classes the configuration asks for: elliptic ones, plus torsion of
/// order N when given. Each appears once, tagged by where it was first found.
inline std::vector<std::pair<EndoClass, std::string>> configured_classes(const GaloisModel& m, const JobConfig& c) {
  std::vector<std::pair<EndoClass, std::string>> out;
  std::map<std::string, bool> seen;
  for (auto& cls : enumerate_elliptic(m)) {
    seen[cls.id] = true;
    out.emplace_back(cls, "elliptic");
  }
  if (c.torsion)
    for (auto& cls : enumerate_torsion(m, *c.torsion))
      if (!seen[cls.id]) {
        seen[cls.id] = true;
        out.emplace_back(cls, "torsion");
      }
  return out;
}

inline Json cmd_classify(const JobConfig& c) {
  GaloisModel m = model_from_config(c);
  Json b = bundle_header(c);
  b["model"] = model_to_json(m);
  Json classes = Json::array();
  for (const auto& [cls, source] : configured_classes(m, c)) classes.push_back(class_to_json(m, cls, source));
  b["classes"] = classes;
  return b;
}

struct CheckOutcome {
  Json bundle;
  bool passed = true;
};

inline CheckOutcome cmd_check(const JobConfig& c) {
  GaloisModel m = model_from_config(c);
  std::mt19937_64 rng(c.seed);
  std::vector<std::string> names = c.checks.empty() ? known_checks() : c.checks;
  std::vector<EndoClass> classes;
  bool need_classes = false;
  for (const auto& n : names) need_classes = need_classes || n == "torsors" || n == "hasse" || n == "endoscopic";
  if (need_classes) classes = classes_for_checks(m, c.torsion.value_or(2));
  CheckOutcome out;
  out.bundle = bundle_header(c);
  out.bundle["model"] = model_to_json(m);
  Json reports = Json::array();
  for (const auto& n : names) {
    CheckReport r;
    if (n == "oracle") r = check_oracle(m.sys, c.samples, c.max_order, rng);
    else if (n == "lattice") r = check_lattice(m.sys, c.max_order);
    else if (n == "alcove") r = check_alcove(m.sys, c.samples, rng);
    else if (n == "omega") r = check_omega(m.sys, c.samples, rng);
    else if (n == "classification") r = check_classification(m);
    else if (n == "torsors") r = check_torsors(m, classes);
    else if (n == "hasse") r = check_hasse(m, classes);
    else r = check_endoscopic(m, classes);
    out.passed = out.passed && r.passed;
    reports.push_back(check_to_json(r));
  }
  out.bundle["checks"] = reports;
  out.bundle["passed"] = out.passed;
  return out;
}

/// Parses a bundle, refusing schema majors newer than this reader.
inline Json read_bundle(const std::string& text) {
  Json b;
  try {
    b = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ConfigError, std::string("malformed bundle: ") + e.what());
  }
  if (!b.is_object() || !b.contains("schema_version") || !b["schema_version"].is_string())
    fail(ErrorKind::ConfigError, "bundle lacks a schema_version");
  std::string v = b["schema_version"].get<std::string>();
  int major = 0;
  try {
    major = std::stoi(v.substr(0, v.find('.')));
  } catch (const std::exception&) {
    fail(ErrorKind::ConfigError, "bad schema_version '" + v + "'");
  }
  if (major > kSchemaMajor) fail(ErrorKind::ConfigError, "bundle schema " + v + " is newer than this reader");
  return b;
}

// ---------------------------------------------------------------------------
// explain

inline const EndoClass& find_class(const std::vector<std::pair<EndoClass, std::string>>& classes, const std::string& id) {
  for (const auto& [c, s] : classes)
    if (c.id == id) return c;
  fail(ErrorKind::UnknownClassId, "no class with id " + id);
}

inline std::string explain_text(const GaloisModel& m, const EndoClass& c) {
  std::ostringstream os;
  const auto& sys = m.sys;
  std::map<std::size_t, std::size_t> orbit_of;
  for (std::size_t o = 0; o < c.complement_orbits.size(); ++o)
    for (auto n : c.complement_orbits[o]) orbit_of[n] = o;
  os << "class " << c.id << (c.elliptic ? " (elliptic)" : "") << "\n";
  os << "i(x) = " << c.i_x << ", i(G) = " << m.i_G << "\n";
  os << "omega_star:";
  for (std::size_t q = 0; q < c.rep.omega_star.size(); ++q) os << " " << q << "->" << c.rep.omega_star[q];
  os << "\n";
  for (std::size_t i = 0; i < m.nodes(); ++i) {
    const auto& a = sys.affine[i];
    os << (c.rep.x.kac[i] == 0 ? "  [*] " : "  [ ] ") << "node " << i << (a.lowest ? " (lowest)" : "") << "  gradient "
       << format_vec(sys.roots[a.gradient].vector) << " level " << to_string(a.constant) << "  e=" << sys.roots[a.gradient].e
       << " d=" << a.mark.str() << "  kac=" << to_string(c.rep.x.kac[i]);
    if (orbit_of.count(i)) os << "  orbit " << orbit_of[i];
    os << "\n";
  }
  auto d = endoscopic_datum(m, c);
  os << "endoscopic type " << d.type_label() << ", center rank " << d.center_rank << "\n";
  auto aut = isom_set(m, c.rep, c.rep);
  os << "Aut:";
  for (auto w : aut) os << " " << w;
  os << "\n";
  return os.str();
}

inline std::string explain_dot(const GaloisModel& m, const EndoClass& c) {
  static const char* palette[] = {"lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon", "lightcyan"};
  std::ostringstream os;
  const auto& sys = m.sys;
  std::map<std::size_t, std::size_t> orbit_of;
  for (std::size_t o = 0; o < c.complement_orbits.size(); ++o)
    for (auto n : c.complement_orbits[o]) orbit_of[n] = o;
  os << "graph \"" << c.id << "\" {\n";
  for (std::size_t i = 0; i < m.nodes(); ++i) {
    const auto& a = sys.affine[i];
    os << "  n" << i << " [label=\"" << i << "\\nd=" << a.mark.str() << " e=" << sys.roots[a.gradient].e;
    if (a.constant != 0) os << "\\nlevel " << to_string(a.constant);
    os << "\\nkac " << to_string(c.rep.x.kac[i]) << "\"";
    if (c.rep.x.kac[i] == 0) os << ", style=filled, fillcolor=gray40, fontcolor=white";
    else os << ", style=filled, fillcolor=" << palette[orbit_of[i] % 7];
    os << "];\n";
  }
  auto a = sys.affine_cartan();
  for (std::size_t i = 0; i < m.nodes(); ++i)
    for (std::size_t j = i + 1; j < m.nodes(); ++j) {
      if (a[i][j] == 0) continue;
      Rational bonds = a[i][j] * a[j][i];
      os << "  n" << i << " -- n" << j << " [label=\"" << to_string(a[i][j]) << "," << to_string(a[j][i]) << "\"";
      if (bonds > 1) os << ", penwidth=" << to_string(bonds);
      os << "];\n";
    }
  os << "}\n";
  return os.str();
}

inline std::string cmd_explain(const JobConfig& c, const std::string& id, const std::string& format) {
  GaloisModel m = model_from_config(c);
  auto classes = configured_classes(m, c);
  const EndoClass& cls = find_class(classes, id);
  if (format == "dot") return explain_dot(m, cls);
  if (format == "json") return class_to_json(m, cls, "explain").dump(2) + "\n";
  return explain_text(m, cls);
}

/// Plain-text rendering of a classify bundle.
inline std::string classify_text(const Json& b) {
  std::ostringstream os;
  const Json& m = b["model"];
  os << "group " << m["group"].get<std::string>() << ", |Omega| = " << m["omega_order"].get<std::size_t>()
     << ", i(G) = " << m["i_G"].get<std::size_t>() << "\n";
  for (const auto& c : b["classes"]) {
    os << c["id"].get<std::string>() << "  " << (c["elliptic"].get<bool>() ? "elliptic " : "         ") << " kac=(";
    for (std::size_t i = 0; i < c["kac"].size(); ++i) os << (i ? "," : "") << c["kac"][i].get<std::string>();
    os << ") omega_star=(";
    for (std::size_t i = 0; i < c["omega_star"].size(); ++i) os << (i ? "," : "") << c["omega_star"][i].get<std::size_t>();
    os << ") type " << c["endoscopic"]["type"].get<std::string>() << "\n";
  }
  return os.str();
}

inline std::string check_text(const Json& b) {
  std::ostringstream os;
  for (const auto& r : b["checks"]) {
    os << (r["passed"].get<bool>() ? "PASS " : "FAIL ") << r["name"].get<std::string>() << " ("
       << r["cases"].get<std::size_t>() << " cases)";
    if (!r["detail"].get<std::string>().empty()) os << " " << r["detail"].get<std::string>();
    if (!r["witness"].get<std::string>().empty()) os << " witness: " << r["witness"].get<std::string>();
    os << "\n";
  }
  return os.str();
}

}  // namespace endo
