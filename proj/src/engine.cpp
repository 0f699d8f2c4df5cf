#include "pgeom/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <sstream>

namespace pgeom {

namespace {

std::string fmt(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

std::string fmt_point(const std::vector<double>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += fmt(p[i]);
  }
  return s + ")";
}

void apply_zero_verdict(CheckRecord& rec, const ZeroVerdict& v, const std::string& label) {
  switch (v.kind) {
    case ZeroVerdict::Kind::SymbolicZero:
      break;
    case ZeroVerdict::Kind::ProbablyZero:
      if (rec.verdict == Verdict::Pass) {
        rec.verdict = Verdict::Warn;
        rec.witness = label + ": numerically zero at " + std::to_string(v.samples) +
                      " samples (max " + fmt(v.max_abs) + ")";
      }
      break;
    case ZeroVerdict::Kind::NonZero:
      if (rec.verdict != Verdict::Fail) {
        rec.verdict = Verdict::Fail;
        rec.witness = label + ": nonzero at " + fmt_point(v.witness) + ", value " +
                      fmt(v.value);
      }
      break;
  }
}

using Params = toml::Value;

CheckRecord run_jacobi(const Manifest& m, const Params& p, const RunOptions& o) {
  CheckRecord rec;
  const PoissonChart& P = m.bivector(p.at("bivector").as_string());
  apply_zero_verdict(rec, P.check_jacobi(o.samples, o.tol, o.seed), "[pi,pi]");
  return rec;
}

CheckRecord run_cocycle(const Manifest& m, const Params& p, const RunOptions&) {
  CheckRecord rec;
  const LieBialgebra& b = m.bialgebra(p.at("bialgebra").as_string());
  if (auto w = b.algebra.jacobi_violation()) {
    rec.verdict = Verdict::Fail;
    rec.witness = "jacobi sum nonzero at indices (" + std::to_string((*w)[0]) + ", " +
                  std::to_string((*w)[1]) + ", " + std::to_string((*w)[2]) + ", " +
                  std::to_string((*w)[3]) + ")";
  } else if (auto w2 = cocycle_violation(b)) {
    rec.verdict = Verdict::Fail;
    rec.witness = "cocycle condition fails at basis pair (" +
                  b.algebra.basis()[static_cast<std::size_t>((*w2)[0])] + ", " +
                  b.algebra.basis()[static_cast<std::size_t>((*w2)[1])] + ")";
  }
  return rec;
}

CheckRecord run_dual(const Manifest& m, const Params& p, const RunOptions&) {
  CheckRecord rec;
  const LieBialgebra& b = m.bialgebra(p.at("bialgebra").as_string());
  LieBialgebra d = dualize(b);
  std::string constants;
  int n = d.algebra.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (!d.algebra.c(k, i, j).is_zero())
          constants += "[" + d.algebra.basis()[static_cast<std::size_t>(i)] + "," +
                       d.algebra.basis()[static_cast<std::size_t>(j)] + "]=" +
                       d.algebra.c(k, i, j).str() + "*" +
                       d.algebra.basis()[static_cast<std::size_t>(k)] + " ";
  if (!double_dual_roundtrip(b)) {
    rec.verdict = Verdict::Fail;
    rec.witness = "double dual differs from the original constants";
  } else {
    rec.witness = constants.empty() ? "abelian dual" : "dual bracket: " + constants;
  }
  return rec;
}

CheckRecord run_multiplicative(const Manifest& m, const Params& p, const RunOptions& o) {
  CheckRecord rec;
  const GroupChart& G = m.group(p.at("group").as_string());
  auto pi_e = G.poisson().pi().matrix_at(G.identity_point());
  for (const auto& row : pi_e)
    for (double x : row)
      if (std::abs(x) > o.tol) {
        rec.verdict = Verdict::Fail;
        rec.witness = "pi does not vanish at the identity " +
                      fmt_point(G.identity_point());
        return rec;
      }
  MultiplicativityResult r = check_multiplicative(G, o.samples, o.tol, o.seed);
  if (!r.pass) {
    rec.verdict = Verdict::Fail;
    rec.witness = "defect " + fmt(r.max_defect) + " at pair g=" +
                  fmt_point(r.witness_g) + ", h=" + fmt_point(r.witness_h);
  }
  return rec;
}

CheckRecord run_dressing(const Manifest& m, const Params& p, const RunOptions& o) {
  CheckRecord rec;
  const GroupChart& G = m.group(p.at("group").as_string());
  Side side = Side::Left;
  if (const toml::Value* s = p.find("side")) {
    if (s->as_string() == "right") side = Side::Right;
    else if (s->as_string() != "left")
      throw ManifestError("dressing: side must be 'left' or 'right'");
  }
  std::vector<MultivectorField> fields = dressing_fields(G, side);
  std::string desc;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    desc += (i ? "; " : "") + std::string("l") + std::to_string(i) + " = (";
    for (int j = 0; j < G.chart().dim(); ++j)
      desc += (j ? ", " : "") + fields[i].component({j}).simplify().str();
    desc += ")";
  }
  if (const toml::Value* bial = p.find("bialgebra")) {
    auto lin = linearize_at_identity(fields, G, o.tol);
    auto sign = match_coadjoint(lin, m.bialgebra(bial->as_string()).algebra, o.tol);
    if (!sign) {
      rec.verdict = Verdict::Fail;
      rec.witness = "linearization matches neither +ad* nor -ad*; fields " + desc;
      return rec;
    }
    rec.witness = "coadjoint sign " + std::string(*sign > 0 ? "+1" : "-1") + "; " + desc;
  } else {
    rec.witness = desc;
  }
  return rec;
}

CheckRecord run_action(const Manifest& m, const Params& p, const RunOptions&) {
  CheckRecord rec;
  const ActionSpec& A = m.action(p.at("action").as_string());
  const PoissonChart& P = m.bivector(p.at("bivector").as_string());
  HomomorphismReport hom = check_action_homomorphism(A);
  if (!hom.either()) {
    rec.verdict = Verdict::Fail;
    std::string pair = hom.witness ? " at basis pair (" + std::to_string((*hom.witness)[0]) +
                                         ", " + std::to_string((*hom.witness)[1]) + ")"
                                   : "";
    rec.witness = "neither homomorphism variant holds" + pair;
    return rec;
  }
  std::vector<ZeroVerdict> pa = check_infinitesimal_poisson(A, P);
  for (std::size_t i = 0; i < pa.size(); ++i)
    apply_zero_verdict(rec, pa[i],
                       "L_(xi" + std::to_string(i) + ")pi + (delta xi" +
                           std::to_string(i) + ")_M");
  if (rec.verdict == Verdict::Pass)
    rec.witness = hom.homomorphism ? "homomorphism" : "anti-homomorphism";
  return rec;
}

CheckRecord run_moment(const Manifest& m, const Params& p, const RunOptions&) {
  CheckRecord rec;
  const ActionSpec& A = m.action(p.at("action").as_string());
  const MomentumMap& mu = m.momentmap(p.at("momentmap").as_string());
  const PoissonChart& P = m.bivector(p.at("bivector").as_string());
  std::vector<ZeroVerdict> v = check_momentum_map(A, mu, P);
  for (std::size_t i = 0; i < v.size(); ++i)
    apply_zero_verdict(rec, v[i], "xi" + std::to_string(i) + "_M - sharp(mu* theta)");
  return rec;
}

CheckRecord run_poisson_map(const Manifest& m, const Params& p, const RunOptions& o) {
  CheckRecord rec;
  const MomentumMap& mu = m.momentmap(p.at("momentmap").as_string());
  const PoissonChart& P = m.bivector(p.at("bivector").as_string());
  PoissonMapResult r = check_poisson_map(mu, P, o.samples, o.tol, o.seed);
  if (!r.pass) {
    rec.verdict = Verdict::Fail;
    rec.witness = "pushforward defect " + fmt(r.max_defect) + " at " + fmt_point(r.witness);
  }
  return rec;
}

CheckRecord run_reduce(const Manifest& m, const Params& p, const RunOptions&) {
  CheckRecord rec;
  const CoordinateIdeal& I = m.ideal(p.at("ideal").as_string());
  const ActionSpec& A = m.action(p.at("action").as_string());
  const PoissonChart& P = m.bivector(p.at("bivector").as_string());
  ScalarExpr f = parse(p.at("f").as_string(), P.chart());
  ScalarExpr g = parse(p.at("g").as_string(), P.chart());
  ScalarExpr r = reduced_bracket(f, g, I, A, P);
  rec.witness = "reduced bracket = " + r.str();
  if (const toml::Value* expect = p.find("expect")) {
    ScalarExpr want = parse(expect->as_string(), P.chart());
    if (!(r - want).is_structurally_zero()) {
      rec.verdict = Verdict::Fail;
      rec.witness += ", expected " + want.simplify().str();
    }
  }
  return rec;
}

CheckRecord run_ideal(const Manifest& m, const Params& p, const RunOptions&) {
  CheckRecord rec;
  const CoordinateIdeal& I = m.ideal(p.at("ideal").as_string());
  const ActionSpec& A = m.action(p.at("action").as_string());
  IdealCheckResult inv = check_ideal_invariance(I, A);
  if (!inv.pass) {
    rec.verdict = Verdict::Fail;
    rec.witness = "invariance fails at (generator " +
                  std::to_string(inv.failures[0].first) + ", basis " +
                  std::to_string(inv.failures[0].second) + ")";
    return rec;
  }
  if (const toml::Value* tv = p.find("transversals")) {
    const PoissonChart& P = m.bivector(p.at("bivector").as_string());
    TransversalData t;
    for (const auto& name : tv->as_array()) {
      if (P.chart().index_of(name.as_string()) < 0)
        throw ManifestError("ideal check: unknown transversal coordinate '" +
                            name.as_string() + "'");
      t.names.push_back(name.as_string());
      t.H.push_back(ScalarExpr(P.chart(), make_coord(name.as_string())));
    }
    IdealCheckResult cl = check_ideal_poisson_closure(I, t, P);
    if (!cl.pass) {
      rec.verdict = Verdict::Fail;
      rec.witness = "bracket closure fails at transversal pair (" +
                    t.names[static_cast<std::size_t>(cl.failures[0].first)] + ", " +
                    t.names[static_cast<std::size_t>(cl.failures[0].second)] + ")";
    }
  }
  return rec;
}

CheckRecord run_leaf(const Manifest& m, const Params& p, const RunOptions&) {
  CheckRecord rec;
  const ActionSpec& A = m.action(p.at("action").as_string());
  std::vector<std::vector<double>> axes;
  for (const auto& axis : p.at("grid").as_array()) {
    std::vector<double> values;
    for (const auto& v : axis.as_array())
      values.push_back(v.kind == toml::Value::Kind::Number
                           ? v.num
                           : std::stod(v.as_string()));
    axes.push_back(std::move(values));
  }
  if (static_cast<int>(axes.size()) != A.chart().dim())
    throw ManifestError("leaf check: grid needs one axis per coordinate");
  std::vector<std::vector<double>> grid{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& partial : grid)
      for (double v : axis) {
        auto q = partial;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    grid = std::move(next);
  }
  auto scan = orbit_rank_scan(A.generators, grid);
  const PoissonChart* P = nullptr;
  if (const toml::Value* bv = p.find("bivector")) P = &m.bivector(bv->as_string());
  std::string desc;
  for (const auto& [point, rank] : scan) {
    desc += fmt_point(point) + " -> " + std::to_string(rank) + "; ";
    if (P && P->rank_at(point) != rank) {
      rec.verdict = Verdict::Fail;
      rec.witness = "orbit rank " + std::to_string(rank) + " != bivector rank " +
                    std::to_string(P->rank_at(point)) + " at " + fmt_point(point);
      return rec;
    }
  }
  rec.witness = desc;
  return rec;
}

using Runner = CheckRecord (*)(const Manifest&, const Params&, const RunOptions&);

const std::pair<const char*, Runner> kRunners[] = {
    {"jacobi", run_jacobi},       {"cocycle", run_cocycle},
    {"dual", run_dual},           {"multiplicative", run_multiplicative},
    {"dressing", run_dressing},   {"action", run_action},
    {"moment", run_moment},       {"poisson-map", run_poisson_map},
    {"reduce", run_reduce},       {"ideal", run_ideal},
    {"leaf", run_leaf},
};

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Warn: return "WARN";
    case Verdict::Error: return "ERROR";
  }
  return "ERROR";
}

int Report::exit_code(bool strict) const {
  int code = 0;
  for (const auto& rec : checks) {
    if (rec.verdict == Verdict::Error) return 2;
    if (rec.verdict == Verdict::Fail || (strict && rec.verdict == Verdict::Warn))
      code = 1;
  }
  return code;
}

std::string Report::to_json() const {
  nlohmann::ordered_json doc;
  doc["version"] = version;
  doc["seed"] = seed;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& rec : checks)
    doc["checks"].push_back({{"name", rec.name},
                             {"verdict", verdict_name(rec.verdict)},
                             {"witness", rec.witness},
                             {"millis", 0}});
  return doc.dump(2) + "\n";
}

Report run_manifest(const Manifest& m, const RunOptions& options) {
  Report report;
  report.version = m.version;
  report.seed = options.seed;
  for (const auto& req : m.checks) {
    if (!options.kinds.empty() &&
        std::find(options.kinds.begin(), options.kinds.end(), req.kind) ==
            options.kinds.end())
      continue;
    Runner runner = nullptr;
    for (const auto& [kind, fn] : kRunners)
      if (req.kind == kind) runner = fn;
    if (!runner) throw ManifestError("unknown check kind '" + req.kind + "'");

    auto started = std::chrono::steady_clock::now();
    CheckRecord rec;
    try {
      rec = runner(m, req.params, options);
    } catch (const ManifestError&) {
      throw;  // manifest problems abort the run with exit 2
    } catch (const toml::TomlError& e) {
      throw ManifestError("check '" + req.name + "': " + e.what());
    } catch (const UnknownIdentifier& e) {
      throw ManifestError("check '" + req.name + "': unknown identifier '" + e.name + "'");
    } catch (const ParseError& e) {
      throw ManifestError("check '" + req.name + "': " + e.what());
    } catch (const std::exception& e) {
      rec.verdict = Verdict::Error;
      rec.witness = e.what();
    }
    rec.name = req.name;
    rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
    report.checks.push_back(std::move(rec));
  }
  return report;
}

}  // namespace pgeom
