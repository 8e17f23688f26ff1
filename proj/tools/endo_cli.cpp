// endo: classify, check and explain endoscopic pairs of a configured model.

#include "endo/commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) endo::fail(endo::ErrorKind::ConfigError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Endoscopic pairs on finite Galois models"};
  app.require_subcommand(1);

  std::string config_path, checks, format = "json", out_path, class_id;
  std::optional<std::size_t> torsion;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "job configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--torsion", torsion, "also enumerate classes of torsion order N")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "sampling seed");
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text", "dot"}));
    sub->add_option("--out", out_path, "write output here instead of stdout");
  };
  auto* classify = app.add_subcommand("classify", "enumerate classes and endoscopic data");
  add_common(classify);
  auto* check = app.add_subcommand("check", "run the property and oracle suite");
  add_common(check);
  check->add_option("--checks", checks, "comma-separated subset of checks");
  auto* explain = app.add_subcommand("explain", "describe one class");
  add_common(explain);
  explain->add_option("id", class_id, "class id from a classify bundle")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  int status = 0;
  std::string output;
  try {
    endo::JobConfig cfg = endo::parse_config(read_file(config_path));
    if (torsion) cfg.torsion = *torsion;
    if (seed) cfg.seed = *seed;
    if (!checks.empty()) {
      endo::Json patch = endo::config_to_json(cfg);
      patch["params"]["checks"] = split_list(checks);
      cfg = endo::config_from_json(patch);
    }
    if (classify->parsed()) {
      endo::Json b = endo::cmd_classify(cfg);
      output = format == "text" ? endo::classify_text(b) : b.dump(2) + "\n";
    } else if (check->parsed()) {
      auto r = endo::cmd_check(cfg);
      output = format == "text" ? endo::check_text(r.bundle) : r.bundle.dump(2) + "\n";
      status = r.passed ? 0 : 1;
    } else {
      output = endo::cmd_explain(cfg, class_id, format);
    }
  } catch (const endo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool ours = e.kind() == endo::ErrorKind::CheckFailed || e.kind() == endo::ErrorKind::InternalInconsistency ||
                e.kind() == endo::ErrorKind::NonTermination;
    return ours ? 1 : 2;
  }

  if (out_path.empty()) {
    std::cout << output;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    out << output;
  }
  return status;
}
