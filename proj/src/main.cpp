#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "pgeom/engine.hpp"

namespace {

pgeom::Manifest load(const std::string& spec) {
  std::string builtin = pgeom::builtin_fixture(spec);
  if (!builtin.empty()) return pgeom::load_manifest_text(builtin);
  return pgeom::load_manifest_file(spec);
}

int run(const std::string& manifest_spec, const pgeom::RunOptions& options,
        const std::string& json_path) {
  pgeom::Manifest m = load(manifest_spec);
  pgeom::Report report = pgeom::run_manifest(m, options);
  for (const auto& rec : report.checks) {
    std::printf("%-5s %-32s %4lld ms", pgeom::verdict_name(rec.verdict).c_str(),
                rec.name.c_str(), rec.millis);
    if (!rec.witness.empty()) std::printf("  %s", rec.witness.c_str());
    std::printf("\n");
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return 2;
    }
    out << report.to_json();
  }
  return report.exit_code(options.strict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pgeom - coordinate-chart checks for Poisson and Poisson-Lie data"};
  app.require_subcommand(1);

  pgeom::RunOptions options;
  std::string manifest_spec;
  std::string json_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("manifest", manifest_spec,
                    "manifest file, or a built-in fixture name")
        ->required();
    cmd->add_option("--samples", options.samples, "sample count for numeric checks");
    cmd->add_option("--tol", options.tol, "numeric tolerance");
    cmd->add_option("--seed", options.seed, "RNG seed");
    cmd->add_option("--step", options.step, "integration step size");
    cmd->add_option("--json", json_path, "write a JSON report to this path");
    cmd->add_flag("--strict", options.strict, "treat WARN verdicts as failures");
  };

  // Subcommand -> which check kinds it runs (empty = all).
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"run", {}},
      {"check", {}},  // kinds come from its own subcommands below
      {"dual", {"dual"}},
      {"dressing", {"dressing"}},
      {"reduce", {"reduce", "ideal"}},
      {"leaf", {"leaf"}},
  };
  const std::vector<std::string> check_kinds = {
      "jacobi", "cocycle", "multiplicative", "action", "moment", "poisson-map"};

  std::vector<std::string> selected;
  for (const auto& [name, kinds] : commands) {
    CLI::App* cmd = app.add_subcommand(
        name, name == "run" ? "run every check in the manifest"
                            : "run the manifest's " + name + " checks");
    if (name == "check") {
      cmd->require_subcommand(1);
      for (const auto& kind : check_kinds) {
        CLI::App* sub = cmd->add_subcommand(kind, "run " + kind + " checks");
        add_common(sub);
        sub->callback([&selected, kind] { selected = {kind}; });
      }
      continue;
    }
    add_common(cmd);
    cmd->callback([&selected, kinds = kinds] { selected = kinds; });
  }

  CLI11_PARSE(app, argc, argv);
  options.kinds = selected;

  try {
    return run(manifest_spec, options, json_path);
  } catch (const pgeom::ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 2;
  } catch (const pgeom::toml::TomlError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
