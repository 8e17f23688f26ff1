#include "endo/commands.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace endo;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string config_path(const std::string& name) { return std::string(ENDO_CONFIG_DIR) + "/" + name; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InternalInconsistency;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Cli, ConfigRoundTripsByteIdentically) {
  for (const char* name : {"a1.json", "a2_twisted.json", "a3_twisted_n4.json", "a1xa1_swap_z2.json", "d4_s3.json",
                           "a3_klein_table.json"}) {
    JobConfig c = parse_config(slurp(config_path(name)));
    std::string once = serialize_config(c);
    std::string twice = serialize_config(parse_config(once));
    EXPECT_EQ(once, twice) << name;
  }
}

TEST(Cli, UnknownFieldsAreRejectedWithPath) {
  auto msg = message_of([] { parse_config(R"({"datum":{"components":[{"type":"A","rank":1,"twist":2}]}})"); });
  EXPECT_NE(msg.find("datum.components[0].twist"), std::string::npos) << msg;
  EXPECT_EQ(kind_of([] { parse_config(R"({"datum":{"components":[{"type":"A","rank":1}]},"x":1})"); }),
            ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { parse_config(R"({"datum":{"components":[{"type":"A","rank":1}]},"params":{"seeds":1}})"); }),
            ErrorKind::ConfigError);
}

TEST(Cli, MalformedJsonReportsPosition) {
  auto msg = message_of([] { parse_config("{\n  \"datum\": {\n    \"components\": [\n  ]\n"); });
  EXPECT_NE(msg.find("ConfigError"), std::string::npos);
  EXPECT_NE(msg.find("line"), std::string::npos) << msg;
}

TEST(Cli, FieldValidation) {
  EXPECT_EQ(kind_of([] { parse_config(R"({"datum":{"components":[]}})"); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { parse_config(R"({"datum":{"components":[{"type":"A","rank":-1}]}})"); }),
            ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { parse_config(R"({"datum":{"components":[{"type":"A","rank":1}]},"params":{"torsion":0}})"); }),
            ErrorKind::ConfigError);
  EXPECT_EQ(
      kind_of([] { parse_config(R"({"datum":{"components":[{"type":"A","rank":1}]},"params":{"checks":["nope"]}})"); }),
      ErrorKind::ConfigError);
}

TEST(Cli, StandardGroups) {
  EXPECT_EQ(standard_group("1").size(), 1u);
  EXPECT_EQ(standard_group("Z5").size(), 5u);
  EXPECT_EQ(standard_group("Z2xZ2").size(), 4u);
  EXPECT_EQ(standard_group("S3").size(), 6u);
  EXPECT_EQ(standard_group("S4").size(), 24u);
  EXPECT_FALSE(standard_group("S3").is_abelian());
  EXPECT_EQ(kind_of([] { standard_group("S5"); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { standard_group("Q8"); }), ErrorKind::ConfigError);
}

TEST(Cli, CustomTableIsValidated) {
  GroupSpec bad{"bad", {{0, 1}, {1, 1}}, {1}};
  EXPECT_EQ(kind_of([&] { group_from_spec(bad); }), ErrorKind::ConfigError);
  GroupSpec z2{"z2", {{0, 1}, {1, 0}}, {1}};
  EXPECT_EQ(group_from_spec(z2).size(), 2u);
}

TEST(Cli, ModelErrorsSurface) {
  JobConfig c = parse_config(R"({"datum":{"components":[{"type":"A","rank":3}]},"galois":{"group":"Z2","actions":[[1,0,2]]}})");
  EXPECT_EQ(kind_of([&] { model_from_config(c); }), ErrorKind::NotDiagramAutomorphism);
}

TEST(Cli, ClassifyA1) {
  auto b = cmd_classify(parse_config(slurp(config_path("a1.json"))));
  EXPECT_EQ(b["schema_version"], "1.0");
  ASSERT_EQ(b["classes"].size(), 1u);
  EXPECT_EQ(b["classes"][0]["endoscopic"]["type"], "A1");
  EXPECT_TRUE(b["classes"][0]["elliptic"].get<bool>());
}

TEST(Cli, ClassifyTwistedA2) {
  auto b = cmd_classify(parse_config(slurp(config_path("a2_twisted.json"))));
  EXPECT_EQ(b["classes"].size(), 2u);
}

TEST(Cli, ClassifyTwistedA3WithTorsion) {
  auto b = cmd_classify(parse_config(slurp(config_path("a3_twisted_n4.json"))));
  std::size_t non_elliptic = 0;
  for (const auto& c : b["classes"]) non_elliptic += !c["elliptic"].get<bool>();
  EXPECT_GT(non_elliptic, 0u);
}

TEST(Cli, FractionsAreStrings) {
  auto b = cmd_classify(parse_config(slurp(config_path("a3_twisted_n4.json"))));
  std::function<void(const Json&)> walk = [&](const Json& j) {
    EXPECT_FALSE(j.is_number_float());
    if (j.is_structured())
      for (const auto& v : j) walk(v);
  };
  walk(b);
  for (const auto& c : b["classes"])
    for (const auto& k : c["kac"]) EXPECT_TRUE(k.is_string());
}

TEST(Cli, BundlesAreDeterministic) {
  JobConfig c = parse_config(slurp(config_path("a1xa1_swap_z2.json")));
  EXPECT_EQ(cmd_classify(c).dump(2), cmd_classify(c).dump(2));
  JobConfig k = parse_config(slurp(config_path("a2_twisted.json")));
  k.checks = {"oracle", "alcove", "omega"};
  EXPECT_EQ(cmd_check(k).bundle.dump(2), cmd_check(k).bundle.dump(2));
  JobConfig k2 = k;
  k2.seed = k.seed + 1;
  EXPECT_NE(cmd_check(k).bundle.dump(2), cmd_check(k2).bundle.dump(2));
}

TEST(Cli, CheckOnProductSwapHasCleanHasse) {
  auto r = cmd_check(parse_config(slurp(config_path("a1xa1_swap_z2.json"))));
  EXPECT_TRUE(r.passed);
  bool found = false;
  for (const auto& c : r.bundle["checks"])
    if (c["name"] == "hasse") {
      found = true;
      EXPECT_TRUE(c["passed"].get<bool>());
    }
  EXPECT_TRUE(found);
}

TEST(Cli, ReadBundleRejectsNewerMajor) {
  auto b = cmd_classify(parse_config(slurp(config_path("a1.json"))));
  EXPECT_NO_THROW(read_bundle(b.dump()));
  b["schema_version"] = "1.7";
  EXPECT_NO_THROW(read_bundle(b.dump()));
  b["schema_version"] = "2.0";
  EXPECT_EQ(kind_of([&] { read_bundle(b.dump()); }), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { read_bundle("{}"); }), ErrorKind::ConfigError);
}

TEST(Cli, ExplainFormats) {
  JobConfig c = parse_config(slurp(config_path("a1.json")));
  std::string id = cmd_classify(c)["classes"][0]["id"];
  std::string dot = cmd_explain(c, id, "dot");
  EXPECT_EQ(dot.rfind("graph", 0), 0u);
  EXPECT_NE(dot.find("n0 -- n1"), std::string::npos);
  std::string text = cmd_explain(c, id, "text");
  EXPECT_NE(text.find("[*]"), std::string::npos);
  EXPECT_EQ(kind_of([&] { cmd_explain(c, "ffffffffffffffff", "text"); }), ErrorKind::UnknownClassId);
}
