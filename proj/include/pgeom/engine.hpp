#pragma once

#include "pgeom/manifest.hpp"

namespace pgeom {

struct RunOptions {
  int samples = 100;
  double tol = 1e-9;
  unsigned seed = 42;
  double step = 1e-3;
  bool strict = false;
  // Empty runs every check; otherwise only the listed kinds.
  std::vector<std::string> kinds;
};

enum class Verdict { Pass, Fail, Warn, Error };

std::string verdict_name(Verdict v);

struct CheckRecord {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string witness;  // point / value / expression, empty when none
  long long millis = 0;
};

struct Report {
  int version = 1;
  unsigned seed = 42;
  std::vector<CheckRecord> checks;

  // 2 when any check ERRORed, 1 when any FAILed (or WARNed under strict),
  // 0 otherwise.
  int exit_code(bool strict) const;
  // Deterministic serialization: millis is reported as 0.
  std::string to_json() const;
};

Report run_manifest(const Manifest& m, const RunOptions& options);

}  // namespace pgeom
