#include "pgeom/manifest.hpp"

namespace pgeom {

namespace {

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t used = 0;
      long long n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(n);
    }
    std::size_t un = 0, ud = 0;
    long long n = std::stoll(text.substr(0, slash), &un);
    long long d = std::stoll(text.substr(slash + 1), &ud);
    if (un != slash || ud != text.size() - slash - 1)
      throw std::invalid_argument(text);
    return Rational(n, d);
  } catch (const std::exception&) {
    throw ManifestError("malformed rational '" + text + "'");
  }
}

Domain parse_domain(const toml::Value& v) {
  if (v.kind == toml::Value::Kind::String) {
    if (v.str == "positive") return Domain::positive();
    if (v.str == "free" || v.str == "unconstrained") return Domain::unconstrained();
    throw ManifestError("unknown domain '" + v.str + "'");
  }
  if (v.kind == toml::Value::Kind::Table)
    return Domain::interval(parse_rational(v.at("lo").as_string()),
                            parse_rational(v.at("hi").as_string()));
  throw ManifestError("domain must be a string or {lo, hi} table");
}

ScalarExpr parse_on(const std::string& text, const Chart& chart,
                    const std::string& what) {
  try {
    return parse(text, chart);
  } catch (const UnknownIdentifier& e) {
    throw ManifestError(what + ": unknown identifier '" + e.name + "' in \"" +
                        text + "\"");
  } catch (const ParseError& e) {
    throw ManifestError(what + ": " + e.what());
  }
}

int basis_index(const LieBialgebra& b, const std::string& name,
                const std::string& what) {
  const auto& basis = b.algebra.basis();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == name) return static_cast<int>(i);
  throw ManifestError(what + ": unknown basis element '" + name + "'");
}

// Iterates the sub-tables of a section like [charts.gstar].
template <typename F>
void for_section(const toml::Value& doc, const std::string& section, F&& fn) {
  const toml::Value* sec = doc.find(section);
  if (!sec) return;
  if (sec->kind != toml::Value::Kind::Table)
    throw ManifestError("section '" + section + "' must be a table");
  for (const auto& [name, body] : sec->table) fn(name, body);
}

}  // namespace

const Chart& Manifest::chart(const std::string& name) const {
  auto it = charts.find(name);
  if (it == charts.end()) throw ManifestError("unknown chart '" + name + "'");
  return it->second;
}
const PoissonChart& Manifest::bivector(const std::string& name) const {
  auto it = bivectors.find(name);
  if (it == bivectors.end()) throw ManifestError("unknown bivector '" + name + "'");
  return it->second;
}
const GroupChart& Manifest::group(const std::string& name) const {
  auto it = groups.find(name);
  if (it == groups.end()) throw ManifestError("unknown group '" + name + "'");
  return it->second;
}
const LieBialgebra& Manifest::bialgebra(const std::string& name) const {
  auto it = bialgebras.find(name);
  if (it == bialgebras.end()) throw ManifestError("unknown bialgebra '" + name + "'");
  return it->second;
}
const ActionSpec& Manifest::action(const std::string& name) const {
  auto it = actions.find(name);
  if (it == actions.end()) throw ManifestError("unknown action '" + name + "'");
  return it->second;
}
const MomentumMap& Manifest::momentmap(const std::string& name) const {
  auto it = momentmaps.find(name);
  if (it == momentmaps.end()) throw ManifestError("unknown momentum map '" + name + "'");
  return it->second;
}
const CoordinateIdeal& Manifest::ideal(const std::string& name) const {
  auto it = ideals.find(name);
  if (it == ideals.end()) throw ManifestError("unknown ideal '" + name + "'");
  return it->second;
}

Manifest load_manifest(const toml::Value& doc) {
  Manifest m;
  try {
    if (const toml::Value* v = doc.find("version"))
      m.version = static_cast<int>(v->num);

    for_section(doc, "charts", [&](const std::string& name, const toml::Value& body) {
      std::vector<std::string> coords;
      for (const auto& c : body.at("coords").as_array()) coords.push_back(c.as_string());
      std::vector<Domain> domains;
      if (const toml::Value* d = body.find("domains"))
        for (const auto& dom : d->as_array()) domains.push_back(parse_domain(dom));
      try {
        m.charts.emplace(name, Chart(name, std::move(coords), std::move(domains)));
      } catch (const std::invalid_argument& e) {
        throw ManifestError("chart '" + name + "': " + e.what());
      }
    });

    for_section(doc, "bivectors", [&](const std::string& name, const toml::Value& body) {
      const Chart& chart = m.chart(body.at("chart").as_string());
      MultivectorField pi(chart, 2);
      for (const auto& term : body.at("terms").as_array()) {
        const auto& indices = term.at("indices").as_array();
        if (indices.size() != 2)
          throw ManifestError("bivector '" + name + "': terms need two indices");
        std::vector<int> idx;
        for (const auto& coord : indices) {
          int i = chart.index_of(coord.as_string());
          if (i < 0)
            throw ManifestError("bivector '" + name + "': unknown coordinate '" +
                                coord.as_string() + "'");
          idx.push_back(i);
        }
        pi.add_to(idx, parse_on(term.at("coeff").as_string(), chart,
                                "bivector '" + name + "'"));
      }
      m.bivectors.emplace(name, PoissonChart(chart, std::move(pi), name));
    });

    for_section(doc, "bialgebras", [&](const std::string& name, const toml::Value& body) {
      std::vector<std::string> basis;
      for (const auto& b : body.at("basis").as_array()) basis.push_back(b.as_string());
      LieAlgebraSC algebra(static_cast<int>(basis.size()), basis);
      Cobracket cobracket(static_cast<int>(basis.size()));
      LieBialgebra bial{std::move(algebra), std::move(cobracket)};
      std::string what = "bialgebra '" + name + "'";
      for (const auto& entry : body.at("brackets").as_array())
        bial.algebra.set_c(basis_index(bial, entry.at("k").as_string(), what),
                           basis_index(bial, entry.at("i").as_string(), what),
                           basis_index(bial, entry.at("j").as_string(), what),
                           parse_rational(entry.at("c").as_string()));
      for (const auto& entry : body.at("cobrackets").as_array())
        bial.cobracket.set_d(basis_index(bial, entry.at("i").as_string(), what),
                             basis_index(bial, entry.at("j").as_string(), what),
                             basis_index(bial, entry.at("k").as_string(), what),
                             parse_rational(entry.at("d").as_string()));
      m.bialgebras.emplace(name, std::move(bial));
    });

    for_section(doc, "groups", [&](const std::string& name, const toml::Value& body) {
      const PoissonChart& poisson = m.bivector(body.at("bivector").as_string());
      std::vector<std::string> mul;
      for (const auto& comp : body.at("mul").as_array()) mul.push_back(comp.as_string());
      std::vector<Rational> identity;
      for (const auto& v : body.at("identity").as_array())
        identity.push_back(parse_rational(v.as_string()));
      std::optional<std::vector<std::string>> inv;
      if (const toml::Value* iv = body.find("inv")) {
        inv.emplace();
        for (const auto& comp : iv->as_array()) inv->push_back(comp.as_string());
      }
      try {
        m.groups.emplace(name, GroupChart(poisson, mul, std::move(identity), std::move(inv)));
      } catch (const UnknownIdentifier& e) {
        throw ManifestError("group '" + name + "': unknown identifier '" + e.name + "'");
      } catch (const std::exception& e) {
        throw ManifestError("group '" + name + "': " + e.what());
      }
    });

    for_section(doc, "actions", [&](const std::string& name, const toml::Value& body) {
      const LieBialgebra& bial = m.bialgebra(body.at("bialgebra").as_string());
      const Chart& chart = m.chart(body.at("chart").as_string());
      std::vector<MultivectorField> gens;
      for (const auto& gen : body.at("generators").as_array()) {
        std::vector<ScalarExpr> comps;
        for (const auto& comp : gen.as_array())
          comps.push_back(parse_on(comp.as_string(), chart, "action '" + name + "'"));
        gens.push_back(MultivectorField::vector_field(chart, std::move(comps)));
      }
      try {
        m.actions.emplace(name, ActionSpec(bial, std::move(gens)));
      } catch (const std::exception& e) {
        throw ManifestError("action '" + name + "': " + e.what());
      }
    });

    for_section(doc, "momentmaps", [&](const std::string& name, const toml::Value& body) {
      const GroupChart& g = m.group(body.at("group").as_string());
      const Chart& source = m.chart(body.at("source").as_string());
      std::vector<ScalarExpr> comps;
      for (const auto& comp : body.at("components").as_array())
        comps.push_back(parse_on(comp.as_string(), source, "momentum map '" + name + "'"));
      try {
        m.momentmaps.emplace(name,
                             MomentumMap(ChartMap(source, g.chart(), std::move(comps)), g));
      } catch (const std::exception& e) {
        throw ManifestError("momentum map '" + name + "': " + e.what());
      }
    });

    for_section(doc, "ideals", [&](const std::string& name, const toml::Value& body) {
      const Chart& chart = m.chart(body.at("chart").as_string());
      std::vector<ScalarExpr> gens;
      for (const auto& gen : body.at("generators").as_array())
        gens.push_back(parse_on(gen.as_string(), chart, "ideal '" + name + "'"));
      try {
        m.ideals.emplace(name, CoordinateIdeal(chart, gens));
      } catch (const std::invalid_argument& e) {
        throw ManifestError("ideal '" + name + "': " + e.what());
      }
    });

    if (const toml::Value* checks = doc.find("checks")) {
      for (const auto& body : checks->as_array()) {
        CheckRequest req;
        req.kind = body.at("kind").as_string();
        req.name = body.at("name").as_string();
        req.params = body;
        // Resolve every by-name reference now; run time assumes validity.
        static const std::pair<const char*, int> ref_keys[] = {
            {"chart", 0}, {"bivector", 1}, {"group", 2},     {"bialgebra", 3},
            {"action", 4}, {"momentmap", 5}, {"ideal", 6}};
        for (const auto& [key, which] : ref_keys) {
          const toml::Value* ref = body.find(key);
          if (!ref) continue;
          const std::string& target = ref->as_string();
          switch (which) {
            case 0: m.chart(target); break;
            case 1: m.bivector(target); break;
            case 2: m.group(target); break;
            case 3: m.bialgebra(target); break;
            case 4: m.action(target); break;
            case 5: m.momentmap(target); break;
            case 6: m.ideal(target); break;
          }
        }
        m.checks.push_back(std::move(req));
      }
    }
  } catch (const toml::TomlError& e) {
    throw ManifestError(std::string("manifest structure: ") + e.what());
  }
  return m;
}

Manifest load_manifest_text(const std::string& text) {
  try {
    return load_manifest(toml::parse(text));
  } catch (const toml::TomlError& e) {
    throw ManifestError(std::string("manifest: ") + e.what());
  }
}

Manifest load_manifest_file(const std::string& path) {
  try {
    return load_manifest(toml::parse_file(path));
  } catch (const toml::TomlError& e) {
    throw ManifestError("manifest " + path + ": " + e.what());
  }
}

namespace {

const char* kGstarCommon = R"toml(
[charts.gstar]
coords = ["a", "b"]
domains = ["positive", "free"]

[bivectors.pi_gstar]
chart = "gstar"
terms = [{indices = ["a", "b"], coeff = "a*b"}]

[groups.gstar]
bivector = "pi_gstar"
mul = ["a1*a2", "a1*b2 + b1"]
identity = ["1", "0"]
inv = ["1/a", "-b/a"]
)toml";

const char* kCanonicalSource = R"toml(
[charts.pq]
coords = ["p", "q"]

[bivectors.canonical]
chart = "pq"
terms = [{indices = ["p", "q"], coeff = "1"}]

[bialgebras.trivial1]
basis = ["e"]
brackets = []
cobrackets = []

[actions.trivial]
bialgebra = "trivial1"
chart = "pq"
generators = [["0", "0"]]

[ideals.none]
chart = "pq"
generators = []
)toml";

const char* kCaseChecks = R"toml(
[[checks]]
kind = "poisson-map"
name = "poisson-map-into-gstar"
momentmap = "mu"
bivector = "canonical"

[[checks]]
kind = "reduce"
name = "reduced-bracket-p-q"
ideal = "none"
action = "trivial"
bivector = "canonical"
f = "p"
g = "q"
expect = "1"
)toml";

std::string case1() {
  return std::string("version = 1\n") + kGstarCommon + kCanonicalSource + R"toml(
[momentmaps.mu]
group = "gstar"
source = "pq"
components = ["exp(p)", "exp(q)"]
)toml" + kCaseChecks;
}

std::string case2() {
  // The b < 0 orbit: same chart, b = -exp(q).
  return std::string("version = 1\n") + kGstarCommon + kCanonicalSource + R"toml(
[momentmaps.mu]
group = "gstar"
source = "pq"
components = ["exp(p)", "-exp(q)"]
)toml" + kCaseChecks;
}

std::string case3() {
  return std::string("version = 1\n") + kGstarCommon + R"toml(
[bialgebras.r2]
basis = ["xi", "eta"]
brackets = [{k = "eta", i = "xi", j = "eta", c = "1"}]
cobrackets = [{i = "eta", j = "xi", k = "eta", d = "1"}]

[actions.dressing]
bialgebra = "r2"
chart = "gstar"
generators = [["0", "b"], ["-b", "0"]]

[ideals.case3]
chart = "gstar"
generators = ["a - 1", "b"]

[[checks]]
kind = "ideal"
name = "case3-ideal-invariance-and-closure"
ideal = "case3"
action = "dressing"
bivector = "pi_gstar"
transversals = ["a", "b"]

[[checks]]
kind = "reduce"
name = "case3-reduced-bracket-a-b"
ideal = "case3"
action = "dressing"
bivector = "pi_gstar"
f = "a"
g = "b"
expect = "0"
)toml";
}

}  // namespace

std::string builtin_fixture(const std::string& name) {
  if (name == "gstar-case1") return case1();
  if (name == "gstar-case2") return case2();
  if (name == "gstar-case3") return case3();
  return {};
}

std::vector<std::string> builtin_fixture_names() {
  return {"gstar-case1", "gstar-case2", "gstar-case3"};
}

}  // namespace pgeom
