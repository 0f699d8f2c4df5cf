#pragma once

#include <map>

#include "pgeom/reduction.hpp"
#include "pgeom/toml.hpp"

namespace pgeom {

// Manifest problem: unreadable file, unresolved reference, or an expression
// that does not parse on its declared chart. Always names the symbol.
struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckRequest {
  std::string kind;
  std::string name;
  toml::Value params;  // the raw [[checks]] table
};

struct Manifest {
  int version = 1;
  std::map<std::string, Chart> charts;
  std::map<std::string, PoissonChart> bivectors;
  std::map<std::string, GroupChart> groups;
  std::map<std::string, LieBialgebra> bialgebras;
  std::map<std::string, ActionSpec> actions;
  std::map<std::string, MomentumMap> momentmaps;
  std::map<std::string, CoordinateIdeal> ideals;
  std::vector<CheckRequest> checks;

  const Chart& chart(const std::string& name) const;
  const PoissonChart& bivector(const std::string& name) const;
  const GroupChart& group(const std::string& name) const;
  const LieBialgebra& bialgebra(const std::string& name) const;
  const ActionSpec& action(const std::string& name) const;
  const MomentumMap& momentmap(const std::string& name) const;
  const CoordinateIdeal& ideal(const std::string& name) const;
};

Manifest load_manifest(const toml::Value& doc);
Manifest load_manifest_text(const std::string& text);
Manifest load_manifest_file(const std::string& path);

// The three §5 cases as named built-in fixtures; empty when unknown.
std::string builtin_fixture(const std::string& name);
std::vector<std::string> builtin_fixture_names();

}  // namespace pgeom
