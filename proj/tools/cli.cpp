#include "braidhopf/cli.hpp"

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "braidhopf/dsl.hpp"
#include "braidhopf/hopf.hpp"
#include "braidhopf/nichols.hpp"
#include "braidhopf/yd.hpp"

namespace braidhopf::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kFamilies{"small", "double", "torus", "bbh", "nichols", "generic", "torus-generic"};
const std::vector<std::string> kModules{"regular", "trivial", "multiplication", "twisted", "unbraided"};
constexpr int kDefaultGenericCutoff = 6;

// ---------------------------------------------------------------- parameters

struct Params {
  std::optional<json> datum;
  std::optional<int> l;  // unset: generic q
  std::optional<int> cutoff;
  std::vector<std::string> families;
  std::vector<std::string> checks;  // report filter, empty keeps all
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = AxiomOptions{}.samples;
  std::size_t exhaustive_limit = AxiomOptions{}.exhaustive_limit;
  std::string module = "regular";
  std::string theorem = "smallthm";
  std::vector<dsl::NamedIdentity> identities;
  std::optional<int> cyclic;
  json objects = json::array();
  fs::path manifest_dir = ".";
  std::optional<std::string> output;
};

// Raw command-line values; set fields override the manifest.
struct Flags {
  std::string manifest;
  std::optional<std::string> out, type, form, module, theorem, lhs, rhs, as, kind, suite, algebra;
  std::optional<int> l, cutoff, cyclic;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples, exhaustive_limit;
  std::vector<std::string> families, checks, loads;
  bool generic = false;
  std::string positional;
};

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw UsageError(path.string() + " is not valid JSON: " + e.what());
  }
}

json load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();

  rapidjson::Document schema_doc;
  schema_doc.Parse(manifest_schema().c_str());
  rapidjson::SchemaDocument schema(schema_doc);
  rapidjson::Document doc;
  doc.Parse(text.c_str());
  if (doc.HasParseError()) {
    throw UsageError("manifest is not valid JSON (offset " + std::to_string(doc.GetErrorOffset()) +
                     "): " + rapidjson::GetParseError_En(doc.GetParseError()));
  }
  rapidjson::SchemaValidator validator(schema);
  if (!doc.Accept(validator)) {
    rapidjson::StringBuffer where;
    validator.GetInvalidDocumentPointer().StringifyUriFragment(where);
    throw UsageError(std::string("manifest does not match the schema: keyword '") +
                     validator.GetInvalidSchemaKeyword() + "' fails at " + where.GetString());
  }
  return json::parse(text);
}

Params merge(const Flags& f) {
  Params p;
  if (!f.manifest.empty()) {
    json m = load_manifest(f.manifest);
    p.manifest_dir = fs::path(f.manifest).parent_path();
    if (m.contains("datum")) p.datum = m["datum"];
    if (m.contains("base") && m["base"].is_object()) p.l = m["base"]["root_of_unity"].get<int>();
    if (m.contains("cutoff")) p.cutoff = m["cutoff"].get<int>();
    if (m.contains("families")) p.families = m["families"].get<std::vector<std::string>>();
    if (m.contains("checks")) p.checks = m["checks"].get<std::vector<std::string>>();
    if (m.contains("seed")) p.seed = m["seed"].get<std::uint64_t>();
    if (m.contains("samples")) p.samples = m["samples"].get<std::size_t>();
    if (m.contains("exhaustive_limit")) p.exhaustive_limit = m["exhaustive_limit"].get<std::size_t>();
    if (m.contains("module")) p.module = m["module"].get<std::string>();
    if (m.contains("theorem")) p.theorem = m["theorem"].get<std::string>();
    if (m.contains("cyclic")) p.cyclic = m["cyclic"].get<int>();
    if (m.contains("objects")) p.objects = m["objects"];
    if (m.contains("output")) p.output = m["output"].get<std::string>();
    for (const auto& id : m.value("identities", json::array())) {
      p.identities.push_back({id.value("name", std::string("identity")), id["lhs"], id["rhs"]});
    }
  }
  if (f.type) p.datum = *f.type;
  if (f.form) {
    try {
      p.datum = json{{"form", json::parse(*f.form)}};
    } catch (const json::parse_error&) {
      throw UsageError("--form must be a JSON matrix such as [[2,-1],[-1,2]]");
    }
  }
  if (f.generic) p.l.reset();
  if (f.l) p.l = f.l;
  if (f.cutoff) p.cutoff = f.cutoff;
  if (!f.families.empty()) p.families = f.families;
  if (!f.checks.empty()) p.checks = f.checks;
  if (f.seed) p.seed = *f.seed;
  if (f.samples) p.samples = *f.samples;
  if (f.exhaustive_limit) p.exhaustive_limit = *f.exhaustive_limit;
  if (f.module) p.module = *f.module;
  if (f.theorem) p.theorem = *f.theorem;
  if (f.cyclic) p.cyclic = f.cyclic;
  if (f.lhs || f.rhs) {
    if (!f.lhs || !f.rhs) throw UsageError("--lhs and --rhs go together");
    p.identities = {{"identity", *f.lhs, *f.rhs}};
  }
  if (f.out) p.output = f.out;
  return p;
}

CartanDatum datum_of(const std::optional<json>& j) {
  if (!j) throw UsageError("a Cartan datum is required (--type or --form)");
  return CartanDatum::from_json(*j);
}

json base_json(const std::optional<int>& l) { return l ? json{{"root_of_unity", *l}} : json("generic"); }

json inputs_json(const Params& p) {
  json j;
  j["datum"] = p.datum ? datum_of(p.datum).to_json() : json(nullptr);
  j["base"] = base_json(p.l);
  j["cutoff"] = p.cutoff ? json(*p.cutoff) : json(nullptr);
  return j;
}

// ---------------------------------------------------------------- reports

struct Outcome {
  json report;
  bool pass = true;
  std::string default_name;  // file name used when no output path is given
};

fs::path output_path(const Params& p, const std::string& default_name) {
  if (p.output) return *p.output;
  const char* dir = std::getenv(kOutputDirVariable);
  return fs::path(dir && *dir ? dir : ".") / default_name;
}

void write_report(const fs::path& path, const json& report) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << report.dump(2) << "\n";
  if (!out) throw UsageError("cannot write " + path.string());
}

std::vector<CheckResult> filtered(const std::vector<CheckResult>& checks, const std::vector<std::string>& keep) {
  if (keep.empty()) return checks;
  std::vector<CheckResult> out;
  for (const auto& c : checks)
    if (std::find(keep.begin(), keep.end(), c.check) != keep.end()) out.push_back(c);
  return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json checks_json(const std::vector<CheckResult>& checks) {
  json a = json::array();
  for (const auto& c : checks) a.push_back(c.to_json());
  return a;
}

void print_checks(std::ostream& out, const std::string& title, const std::vector<CheckResult>& checks) {
  out << title << "\n";
  for (const auto& c : checks) {
    out << "  " << (c.pass ? "PASS " : "FAIL ") << c.check;
    if (!c.pass) out << "  witness " << c.witness.dump();
    out << "\n";
  }
}

// ---------------------------------------------------------------- builders

bool needs_root(const std::string& family) {
  return family != "generic" && family != "torus-generic";
}

std::shared_ptr<const HopfAlgebra> build_family(const std::string& family, const CartanDatum& d, const Params& p) {
  if (needs_root(family) && !p.l) throw UsageError("family " + family + " needs a root of unity (--l)");
  if (!needs_root(family) && p.l) throw UsageError("family " + family + " is defined at generic q; drop --l");
  int cutoff = p.cutoff.value_or(kDefaultGenericCutoff);
  if (family == "small") return build_small_quantum_group(d, *p.l);
  if (family == "double") return build_drinfeld_double(d, *p.l);
  if (family == "torus") return build_t_eps(d, *p.l);
  if (family == "bbh") return build_bbh(d, *p.l);
  if (family == "nichols") return build_nichols_hopf(nichols_at_root(d, *p.l)->raising(), "B(E)", "E");
  if (family == "generic") return build_generic_quantum_group(d, cutoff);
  if (family == "torus-generic") return build_t_q(d, cutoff);
  throw UsageError("unknown family " + family);
}

std::shared_ptr<const NicholsPair> build_nichols(const CartanDatum& d, const Params& p) {
  if (p.l) {
    validate_root_of_unity(d, *p.l);
    if (p.cutoff) return NicholsPair::build(d, primitive_root(*p.l), *p.l, *p.cutoff);
    return nichols_at_root(d, *p.l);
  }
  return NicholsPair::build(d, Scalar::q(), 0, p.cutoff.value_or(kDefaultGenericCutoff));
}

// The lower Nichols half: u(n-) at a root of unity, a truncation of U(n-) at generic q.
BasePtr lower_base(const CartanDatum& d, const Params& p) {
  if (p.l) return nichols_structure_maps(nichols_at_root(d, *p.l)->lowering(), "u(n-)", "F");
  auto pair = NicholsPair::build(d, Scalar::q(), 0, p.cutoff.value_or(4) + 2);
  return nichols_structure_maps(pair->lowering(), "U(n-)", "F", p.cutoff.value_or(4));
}

YDModule module_named(const std::string& name, const BasePtr& b) {
  if (name == "regular") return regular_yd(b);
  if (name == "trivial") return trivial_yd(b);
  if (name == "multiplication") return {"multiplication", b->space, b, b->m, b->delta};
  if (name == "twisted") {
    GroupElem g = b->space->bicharacter().group().zero();
    if (g.empty()) throw UsageError("the twisted module needs a graded base");
    g[0] = 1;
    return twist_coaction(regular_yd(b), g);
  }
  if (name == "unbraided") return regular_yd(with_unbraided_coproduct(b));
  throw UsageError("unknown module " + name);
}

json algebra_summary(const HopfAlgebra& a) {
  json j;
  j["name"] = a.name();
  j["field"] = a.field().to_json();
  j["dimension"] = a.dim() ? json(*a.dim()) : json(nullptr);
  json gens = json::array(), rels = json::array();
  for (const auto& g : a.generators()) gens.push_back(g.name);
  for (const auto& r : a.relations()) rels.push_back(r.name);
  j["generators"] = gens;
  j["relations"] = rels;
  return j;
}

std::pair<std::string, fs::path> split_load(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) throw UsageError("--load takes NAME=PATH");
  return {spec.substr(0, eq), spec.substr(eq + 1)};
}

// ---------------------------------------------------------------- commands

Outcome cmd_cartan(const Params& p, std::ostream& out) {
  CartanDatum d = datum_of(p.datum);
  int n = d.rank();
  json cartan = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(d.cartan(i, j));
    cartan.push_back(row);
  }
  // Symmetric elimination: the form is positive definite iff every pivot is positive.
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = Rational(d.dot(i, j));
  CheckResult definite{"positive_definite", true, nullptr};
  for (int k = 0; k < n; ++k) {
    if (a[k][k].sign() <= 0) {
      definite.pass = false;
      definite.witness = {{"leading_minor", k + 1}, {"pivot", a[k][k].str()}};
      break;
    }
    for (int i = k + 1; i < n; ++i) {
      Rational factor = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= factor * a[k][j];
    }
  }
  std::vector<CheckResult> checks{definite};
  Outcome o;
  o.report = {{"command", "cartan check"},
              {"datum", d.to_json()},
              {"rank", n},
              {"cartan_matrix", cartan},
              {"checks", checks_json(checks)}};
  o.pass = all_pass(checks);
  o.report["pass"] = o.pass;
  o.default_name = "cartan.json";
  out << "Cartan datum " << d.name() << " (rank " << n << ")\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out << "  a_" << i + 1 << j + 1 << " = " << d.cartan(i, j) << "\n";
  print_checks(out, "checks", checks);
  return o;
}

Outcome cmd_nichols(const Params& p, std::ostream& out) {
  CartanDatum d = datum_of(p.datum);
  auto pair = build_nichols(d, p);
  json r = pair->report();
  std::vector<CheckResult> checks{
      {"serre_in_radical", r["serre_in_radical"].get<bool>(), nullptr},
      {"nondegenerate", r["nondegenerate"].get<bool>(), nullptr},
      {"sides_agree", r["hilbert"] == r["lowering_hilbert"], nullptr},
  };
  if (!checks[2].pass) checks[2].witness = {{"raising", r["hilbert"]}, {"lowering", r["lowering_hilbert"]}};
  Outcome o;
  o.report = r;
  o.report["command"] = "nichols report";
  o.report["checks"] = checks_json(checks);
  o.pass = all_pass(checks);
  o.report["pass"] = o.pass;
  o.default_name = "nichols.json";
  out << "Nichols algebra of " << d.name() << " at " << (p.l ? "l = " + std::to_string(*p.l) : "generic q")
      << ", cutoff " << pair->cutoff() << "\n  hilbert:";
  for (const auto& h : r["hilbert"]) out << " " << h.get<std::size_t>();
  out << "\n  dimension in range: " << r["dimension"].get<std::size_t>() << "\n";
  print_checks(out, "checks", checks);
  return o;
}

Outcome cmd_algebra_build(const Params& p, std::ostream& out) {
  CartanDatum d = datum_of(p.datum);
  std::vector<std::string> families = p.families.empty() ? std::vector<std::string>{"small"} : p.families;
  json algebras = json::array();
  for (const auto& f : families) {
    auto a = build_family(f, d, p);
    json s = algebra_summary(*a);
    s["family"] = f;
    algebras.push_back(s);
    out << f << ": " << a->name() << ", dimension "
        << (a->dim() ? std::to_string(*a->dim()) : std::string("infinite")) << ", " << a->generators().size()
        << " generators, " << a->relations().size() << " relations\n";
  }
  Outcome o;
  o.report = {{"command", "algebra build"}, {"inputs", inputs_json(p)}, {"algebras", algebras}, {"pass", true}};
  o.default_name = "algebra.json";
  return o;
}

Outcome cmd_algebra_import(const std::string& file, std::ostream& out) {
  auto a = import_algebra(read_json_file(file));
  Outcome o;
  o.report = {{"command", "algebra import"}, {"algebra", algebra_summary(*a)}, {"pass", true}};
  o.default_name = "algebra.json";
  out << "imported " << a->name() << ", dimension " << *a->dim() << "\n";
  return o;
}

Outcome cmd_axioms(const Params& p, const std::vector<std::string>& loads, std::ostream& out) {
  AxiomOptions opt;
  opt.seed = p.seed;
  opt.samples = p.samples;
  opt.exhaustive_limit = p.exhaustive_limit;
  std::vector<std::pair<std::string, std::shared_ptr<const HopfAlgebra>>> targets;
  std::vector<std::string> families = p.families;
  if (families.empty() && loads.empty()) families = {"small"};
  if (!families.empty()) {
    CartanDatum d = datum_of(p.datum);
    for (const auto& f : families) targets.emplace_back(f, build_family(f, d, p));
  }
  for (const auto& spec : loads) {
    auto [name, path] = split_load(spec);
    targets.emplace_back(name, import_algebra(read_json_file(path)));
  }
  Outcome o;
  json reports = json::array();
  for (const auto& [label, a] : targets) {
    HopfReport r = check_hopf_axioms(*a, opt);
    r.checks = filtered(r.checks, p.checks);
    json j = r.to_json();
    j["source"] = label;
    reports.push_back(j);
    o.pass = o.pass && r.pass();
    print_checks(out, a->name(), r.checks);
  }
  json inputs = inputs_json(p);
  inputs["seed"] = p.seed;
  inputs["samples"] = p.samples;
  inputs["exhaustive_limit"] = p.exhaustive_limit;
  o.report = {{"command", "axioms check"}, {"inputs", inputs}, {"algebras", reports}, {"pass", o.pass}};
  o.default_name = "axioms.json";
  return o;
}

Outcome cmd_iso(const Params& p, std::ostream& out) {
  if (p.theorem != "smallthm") throw UsageError("unknown theorem " + p.theorem + " (known: smallthm)");
  CartanDatum d = datum_of(p.datum);
  if (!p.l) throw UsageError("the isomorphism is stated at a root of unity; pass --l");
  validate_root_of_unity(d, *p.l);
  auto drin = build_drinfeld_double(d, *p.l);
  auto small = build_small_quantum_group(d, *p.l);
  MorphismVerdict v = check_morphism(*drin, *small, double_to_small_images(*drin, *small));
  Outcome o;
  o.pass = v.all();
  o.report = {{"command", "iso verify"},
              {"theorem", p.theorem},
              {"inputs", inputs_json(p)},
              {"source", drin->name()},
              {"target", small->name()},
              {"verdict", v.to_json()},
              {"pass", o.pass}};
  o.default_name = "iso.json";
  print_checks(out, drin->name() + " -> " + small->name(), v.details);
  out << "  hopf isomorphism: " << (o.pass ? "yes" : "no") << "\n";
  return o;
}

dsl::Environment dsl_environment(const Params& p, std::optional<YDModule>& module_out) {
  dsl::Environment env;
  BasePtr b;
  if (p.cyclic) {
    b = structure_maps(*build_cyclic_group_algebra(*p.cyclic), "Z/" + std::to_string(*p.cyclic));
  } else {
    CartanDatum d = datum_of(p.datum);
    b = lower_base(d, p);
    // generator spaces of both halves over the same bicharacter
    auto chi = b->space->bicharacter_ptr();
    std::vector<BasisVector> e, f;
    for (int i = 0; i < d.rank(); ++i) {
      GroupElem g = chi->group().unit(i);
      e.push_back({"e" + std::to_string(i + 1), g});
      f.push_back({"f" + std::to_string(i + 1), chi->group().neg(g)});
    }
    env.bind_space("E", std::make_shared<const BraidedSpace>("E", chi, e));
    env.bind_space("F", std::make_shared<const BraidedSpace>("F", chi, f));
  }
  env.bind_algebra("B", b);
  module_out = module_named(p.module, b);
  env.bind_module("V", *module_out);
  env.bind_map("tau", swap_map(b->obj(), b->obj()));
  return env;
}

json dsl_inputs(const Params& p) {
  json j = p.cyclic ? json{{"cyclic", *p.cyclic}} : inputs_json(p);
  j["module"] = p.module;
  return j;
}

Outcome cmd_dsl_parse(const std::string& text, std::ostream& out) {
  auto e = dsl::parse(text);
  Outcome o;
  o.report = {{"command", "dsl parse"}, {"input", text}, {"printed", dsl::print(*e)}, {"pass", true}};
  o.default_name = "dsl.json";
  out << dsl::print(*e) << "\n";
  return o;
}

Outcome cmd_dsl_eval(const Params& p, const std::string& text, std::ostream& out) {
  std::optional<YDModule> v;
  dsl::Environment env = dsl_environment(p, v);
  GradedMap f = dsl::evaluate(text, env);
  Outcome o;
  o.report = {{"command", "dsl eval"},
              {"inputs", dsl_inputs(p)},
              {"expression", text},
              {"domain", f.domain().str()},
              {"codomain", f.codomain().str()},
              {"matrix", f.to_json()},
              {"pass", true}};
  o.default_name = "dsl.json";
  out << dsl::print(*dsl::parse(text)) << " : " << f.domain().str() << " -> " << f.codomain().str() << "\n";
  return o;
}

Outcome cmd_dsl_check(const Params& p, std::ostream& out) {
  if (p.identities.empty()) throw UsageError("no identity given (--lhs/--rhs or manifest identities)");
  std::optional<YDModule> v;
  dsl::Environment env = dsl_environment(p, v);
  std::vector<CheckResult> checks;
  json ids = json::array();
  for (const auto& id : p.identities) {
    dsl::IdentityVerdict verdict = dsl::check_identity(id.lhs, id.rhs, env);
    checks.push_back({id.check, verdict.equal, verdict.witness});
    json j = verdict.to_json();
    j["name"] = id.check;
    j["lhs"] = id.lhs;
    j["rhs"] = id.rhs;
    ids.push_back(j);
  }
  Outcome o;
  o.pass = all_pass(checks);
  o.report = {{"command", "dsl check"}, {"inputs", dsl_inputs(p)}, {"identities", ids}, {"pass", o.pass}};
  o.default_name = "dsl.json";
  print_checks(out, "identities", checks);
  return o;
}

Outcome cmd_dsl_suite(const Params& p, const std::string& suite, std::ostream& out) {
  std::optional<YDModule> v;
  dsl::Environment env = dsl_environment(p, v);
  std::vector<CheckResult> ours;
  HopfReport dedicated;
  if (suite == "yd") {
    ours = dsl::run_suite(dsl::yd_suite(), env);
    dedicated = check_yd(*v);
  } else if (suite == "hopf-module" || suite == "hopf-module-trivial") {
    HopfModuleKind kind = suite == "hopf-module" ? HopfModuleKind::Regular : HopfModuleKind::Trivial;
    ours = dsl::run_suite(dsl::hopf_module_suite(kind), env);
    dedicated = check_hopf_module(HopfModule{v->name, v->carrier, v->base, v->action, v->coaction}, kind);
  } else {
    ours = dsl::run_suite(dsl::bialgebra_suite(), env);
  }
  json rows = json::array();
  bool agree = true;
  for (const auto& c : ours) {
    json j = c.to_json();
    if (const CheckResult* d = dedicated.find(c.check)) {
      j["checker_pass"] = d->pass;
      agree = agree && d->pass == c.pass;
    }
    rows.push_back(j);
  }
  Outcome o;
  o.pass = all_pass(ours) && agree;
  o.report = {{"command", "dsl suite"}, {"suite", suite},         {"inputs", dsl_inputs(p)},
              {"checks", rows},         {"agrees_with_checker", agree}, {"pass", o.pass}};
  o.default_name = "dsl.json";
  print_checks(out, suite + " suite in the DSL", ours);
  out << "  agrees with the dedicated checker: " << (agree ? "yes" : "no") << "\n";
  return o;
}

Outcome cmd_yd_check(const Params& p, std::ostream& out) {
  CartanDatum d = datum_of(p.datum);
  BasePtr b = lower_base(d, p);
  YDModule v = module_named(p.module, b);
  HopfReport r = check_yd(v);
  std::vector<CheckResult> checks = r.checks;
  checks.push_back(yd_braid_relation(v, v, v));
  // the same suite evaluated through the DSL
  dsl::Environment env;
  env.bind_algebra("B", b);
  env.bind_module("V", v);
  auto ours = dsl::run_suite(dsl::yd_suite(), env);
  CheckResult agreement{"dsl_agreement", true, nullptr};
  for (const auto& c : ours) {
    const CheckResult* dc = r.find(c.check);
    if (!dc || dc->pass != c.pass) {
      agreement.pass = false;
      agreement.witness = {{"check", c.check}, {"dsl", c.pass}};
      break;
    }
  }
  checks.push_back(agreement);
  checks = filtered(checks, p.checks);
  Outcome o;
  o.pass = all_pass(checks);
  json inputs = inputs_json(p);
  inputs["module"] = p.module;
  o.report = {{"command", "yd check"},
              {"inputs", inputs},
              {"base", b->name},
              {"dimension", v.carrier->dim()},
              {"checks", checks_json(checks)},
              {"pass", o.pass}};
  o.default_name = "yd.json";
  print_checks(out, p.module + " YD module over " + b->name, checks);
  return o;
}

Outcome cmd_yd_center(const Params& p, const std::string& algebra, std::ostream& out) {
  CartanDatum d = datum_of(p.datum);
  BasePtr b = lower_base(d, p);
  YDModule v = module_named(p.module, b);
  bool regular = algebra == "regular";
  auto a = std::make_shared<const ComoduleAlgebra>(regular ? regular_comodule_algebra(b) : trivial_comodule_algebra(b));
  ComoduleModule w = regular_comodule_module(a);
  ComoduleModule vw = center_action(v, w);
  std::vector<CheckResult> checks = check_comodule_module(vw).checks;
  checks.push_back(
      hopf_module_condition(as_hopf_module(vw), regular ? HopfModuleKind::Regular : HopfModuleKind::Trivial));
  for (const auto& c : center_coherence(v, v, w)) checks.push_back(c);
  checks = filtered(checks, p.checks);
  Outcome o;
  o.pass = all_pass(checks);
  json inputs = inputs_json(p);
  inputs["module"] = p.module;
  inputs["algebra"] = algebra;
  o.report = {{"command", "yd center"}, {"inputs", inputs}, {"checks", checks_json(checks)}, {"pass", o.pass}};
  o.default_name = "yd-center.json";
  print_checks(out, p.module + " acting on the " + algebra + " comodule algebra", checks);
  return o;
}

// Objects known to export: manifest objects, the one described by flags, and loaded files.
Outcome cmd_export(const Params& p, const Flags& f, const std::string& name, std::ostream& out) {
  json objects = p.objects;
  if (f.kind || !f.families.empty()) {
    std::string kind = f.kind.value_or("algebra");
    json obj{{"kind", kind}};
    if (kind == "algebra") {
      if (p.families.size() != 1) throw UsageError("export builds exactly one --family");
      obj["family"] = p.families.front();
    }
    obj["name"] = f.as.value_or(kind == "algebra" ? p.families.front() : kind);
    objects.push_back(obj);
  }
  for (const auto& spec : f.loads) {
    auto [n, path] = split_load(spec);
    objects.push_back({{"name", n}, {"kind", "algebra"}, {"path", path.string()}, {"loaded_here", true}});
  }
  const json* target = nullptr;
  for (const auto& obj : objects)
    if (obj["name"] == name) target = &obj;
  if (!target) throw UsageError("no object named '" + name + "' was built or loaded");

  const json& obj = *target;
  Params q = p;
  if (obj.contains("datum")) q.datum = obj["datum"];
  if (obj.contains("base")) q.l = obj["base"].is_object() ? std::optional<int>(obj["base"]["root_of_unity"].get<int>())
                                                          : std::nullopt;
  if (obj.contains("cutoff")) q.cutoff = obj["cutoff"].get<int>();
  if (obj.contains("module")) q.module = obj["module"].get<std::string>();
  std::string kind = obj["kind"];
  json artifact;
  if (obj.contains("path")) {
    fs::path path = obj["path"].get<std::string>();
    if (!obj.contains("loaded_here") && path.is_relative()) path = p.manifest_dir / path;
    artifact = export_algebra(*import_algebra(read_json_file(path)));
  } else if (kind == "algebra") {
    if (!obj.contains("family")) throw UsageError("object '" + name + "' needs a family");
    artifact = export_algebra(*build_family(obj["family"], datum_of(q.datum), q));
  } else if (kind == "nichols") {
    artifact = build_nichols(datum_of(q.datum), q)->report();
  } else {
    artifact = module_named(q.module, lower_base(datum_of(q.datum), q)).to_json();
  }
  Outcome o;
  o.report = artifact;
  o.default_name = name + ".json";
  out << "exported " << name << " (" << kind << ")\n";
  return o;
}

// ---------------------------------------------------------------- command line

void add_datum_options(CLI::App* sc, Flags& f) {
  sc->add_option("--type", f.type, "named Cartan type such as A2, B2 or A1xA1");
  sc->add_option("--form", f.form, "symmetric form as a JSON matrix, e.g. [[2,-1],[-1,2]]");
  sc->add_option("--l", f.l, "order of the root of unity (odd, at least 3)");
  sc->add_flag("--generic", f.generic, "generic q (overrides a manifest root of unity)");
  sc->add_option("--cutoff", f.cutoff, "degree cutoff")->check(CLI::PositiveNumber);
}

void add_io_options(CLI::App* sc, Flags& f) {
  sc->add_option("--manifest", f.manifest, "JSON run manifest")->check(CLI::ExistingFile);
  sc->add_option("--out", f.out, std::string("report path (default: $") + kOutputDirVariable + "/<command>.json)");
}

}  // namespace

const std::string& manifest_schema() {
  static const std::string schema = R"({
  "$schema": "http://json-schema.org/draft-04/schema#",
  "title": "braidhopf run manifest",
  "type": "object",
  "additionalProperties": false,
  "definitions": {
    "datum": {
      "oneOf": [
        {"type": "string", "minLength": 2},
        {"type": "object", "additionalProperties": false, "required": ["type"],
         "properties": {"type": {"type": "string", "minLength": 2}}},
        {"type": "object", "additionalProperties": false, "required": ["form"],
         "properties": {
           "name": {"type": "string"},
           "form": {"type": "array", "minItems": 1,
                    "items": {"type": "array", "minItems": 1, "items": {"type": "integer"}}}}}
      ]
    },
    "base": {
      "oneOf": [
        {"enum": ["generic"]},
        {"type": "object", "additionalProperties": false, "required": ["root_of_unity"],
         "properties": {"root_of_unity": {"type": "integer"}}}
      ]
    },
    "family": {"enum": ["small", "double", "torus", "bbh", "nichols", "generic", "torus-generic"]},
    "module": {"enum": ["regular", "trivial", "multiplication", "twisted", "unbraided"]},
    "object": {
      "type": "object",
      "additionalProperties": false,
      "required": ["name", "kind"],
      "properties": {
        "name": {"type": "string", "minLength": 1},
        "kind": {"enum": ["algebra", "nichols", "yd"]},
        "family": {"$ref": "#/definitions/family"},
        "datum": {"$ref": "#/definitions/datum"},
        "base": {"$ref": "#/definitions/base"},
        "cutoff": {"type": "integer", "minimum": 1},
        "module": {"$ref": "#/definitions/module"},
        "path": {"type": "string", "minLength": 1}
      }
    }
  },
  "properties": {
    "datum": {"$ref": "#/definitions/datum"},
    "base": {"$ref": "#/definitions/base"},
    "cutoff": {"type": "integer", "minimum": 1, "maximum": 40},
    "families": {"type": "array", "minItems": 1, "items": {"$ref": "#/definitions/family"}},
    "checks": {"type": "array", "items": {"type": "string"}},
    "seed": {"type": "integer", "minimum": 0},
    "samples": {"type": "integer", "minimum": 1},
    "exhaustive_limit": {"type": "integer", "minimum": 0},
    "module": {"$ref": "#/definitions/module"},
    "theorem": {"enum": ["smallthm"]},
    "cyclic": {"type": "integer", "minimum": 1},
    "identities": {
      "type": "array",
      "items": {
        "type": "object",
        "additionalProperties": false,
        "required": ["lhs", "rhs"],
        "properties": {"name": {"type": "string"}, "lhs": {"type": "string"}, "rhs": {"type": "string"}}
      }
    },
    "objects": {"type": "array", "items": {"$ref": "#/definitions/object"}},
    "output": {"type": "string", "minLength": 1}
  }
})";
  return schema;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for braided Hopf algebras, their modules and Yetter-Drinfeld modules", "braidhopf"};
  app.require_subcommand(1);
  Flags f;
  std::function<Outcome(const Params&)> action;

  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                  std::function<Outcome(const Params&)> fn) {
    CLI::App* sc = parent->add_subcommand(name, desc);
    add_io_options(sc, f);
    sc->callback([&action, fn] { action = fn; });
    return sc;
  };
  auto group = [&](const std::string& name, const std::string& desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    return g;
  };

  CLI::App* cartan = group("cartan", "Cartan data");
  CLI::App* c = leaf(cartan, "check", "validate a datum and print its Cartan matrix",
                     [&](const Params& p) { return cmd_cartan(p, out); });
  add_datum_options(c, f);

  CLI::App* nichols = group("nichols", "Nichols algebras");
  c = leaf(nichols, "report", "Hilbert series, radical and Serre membership",
           [&](const Params& p) { return cmd_nichols(p, out); });
  add_datum_options(c, f);

  CLI::App* algebra = group("algebra", "Hopf algebra families");
  c = leaf(algebra, "build", "build algebras and summarize them",
           [&](const Params& p) { return cmd_algebra_build(p, out); });
  add_datum_options(c, f);
  c->add_option("-f,--family", f.families, "family")->check(CLI::IsMember(kFamilies));
  c = leaf(algebra, "import", "load an exported algebra",
           [&](const Params&) { return cmd_algebra_import(f.positional, out); });
  c->add_option("file", f.positional, "exported algebra JSON")->required();

  CLI::App* axioms = group("axioms", "Hopf axiom suites");
  c = leaf(axioms, "check", "run the Hopf axiom suite",
           [&](const Params& p) { return cmd_axioms(p, f.loads, out); });
  add_datum_options(c, f);
  c->add_option("-f,--family", f.families, "family (repeatable)")->check(CLI::IsMember(kFamilies));
  c->add_option("--load", f.loads, "NAME=PATH of an exported algebra (repeatable)");
  c->add_option("--seed", f.seed, "seed for sampled checks");
  c->add_option("--samples", f.samples, "sample count above the exhaustive limit");
  c->add_option("--exhaustive-limit", f.exhaustive_limit, "largest dimension checked exhaustively");
  c->add_option("--check", f.checks, "report only these checks (repeatable)");

  CLI::App* iso = group("iso", "isomorphism theorems");
  c = leaf(iso, "verify", "verify the double-to-small-quantum-group isomorphism",
           [&](const Params& p) { return cmd_iso(p, out); });
  add_datum_options(c, f);
  c->add_option("--theorem", f.theorem, "theorem name (smallthm)");

  CLI::App* yd = group("yd", "Yetter-Drinfeld modules over the lower Nichols half");
  c = leaf(yd, "check", "YD axioms, braid relation and DSL agreement",
           [&](const Params& p) { return cmd_yd_check(p, out); });
  add_datum_options(c, f);
  c->add_option("--module", f.module, "module")->check(CLI::IsMember(kModules));
  c->add_option("--check", f.checks, "report only these checks (repeatable)");
  c = leaf(yd, "center", "action on modules over a comodule algebra", [&](const Params& p) {
    return cmd_yd_center(p, f.algebra.value_or("regular"), out);
  });
  add_datum_options(c, f);
  c->add_option("--module", f.module, "module")->check(CLI::IsMember(kModules));
  c->add_option("--algebra", f.algebra, "comodule algebra: regular or trivial")
      ->check(CLI::IsMember({"regular", "trivial"}));
  c->add_option("--check", f.checks, "report only these checks (repeatable)");

  CLI::App* dslg = group("dsl", "morphism expressions");
  auto add_env = [&](CLI::App* sc) {
    add_datum_options(sc, f);
    sc->add_option("--module", f.module, "module bound as V")->check(CLI::IsMember(kModules));
    sc->add_option("--cyclic", f.cyclic, "bind the group algebra of Z/n as B instead")->check(CLI::PositiveNumber);
  };
  c = leaf(dslg, "parse", "parse and print", [&](const Params&) { return cmd_dsl_parse(f.positional, out); });
  c->add_option("expr", f.positional, "expression")->required();
  c = leaf(dslg, "eval", "evaluate an expression",
           [&](const Params& p) { return cmd_dsl_eval(p, f.positional, out); });
  c->add_option("expr", f.positional, "expression")->required();
  add_env(c);
  c = leaf(dslg, "check", "compare two expressions", [&](const Params& p) { return cmd_dsl_check(p, out); });
  c->add_option("--lhs", f.lhs, "left side");
  c->add_option("--rhs", f.rhs, "right side");
  add_env(c);
  c = leaf(dslg, "suite", "run an axiom suite written in the DSL", [&](const Params& p) {
    return cmd_dsl_suite(p, f.suite.value_or("yd"), out);
  });
  c->add_option("--suite", f.suite, "yd, hopf-module, hopf-module-trivial or bialgebra")
      ->check(CLI::IsMember({"yd", "hopf-module", "hopf-module-trivial", "bialgebra"}));
  add_env(c);

  CLI::App* exp = app.add_subcommand("export", "write a built or loaded object as JSON");
  add_io_options(exp, f);
  add_datum_options(exp, f);
  exp->add_option("name", f.positional, "object name")->required();
  exp->add_option("-f,--family", f.families, "family of the algebra to build")->check(CLI::IsMember(kFamilies));
  exp->add_option("--kind", f.kind, "algebra, nichols or yd")->check(CLI::IsMember({"algebra", "nichols", "yd"}));
  exp->add_option("--as", f.as, "name of the object built from the flags");
  exp->add_option("--module", f.module, "module for yd objects")->check(CLI::IsMember(kModules));
  exp->add_option("--load", f.loads, "NAME=PATH of an exported algebra (repeatable)");
  exp->callback([&] { action = [&](const Params& p) { return cmd_export(p, f, f.positional, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    Params p = merge(f);
    Outcome o = action(p);
    fs::path path = output_path(p, o.default_name);
    write_report(path, o.report);
    out << (o.pass ? "PASS" : "FAIL") << "  report: " << path.string() << "\n";
    return o.pass ? kPass : kCheckFailure;
  } catch (const std::exception& e) {
    // usage, schema, parameter, syntax, evaluation and IO errors alike
    err << "error: " << e.what() << "\n";
  }
  return kUsageError;
}

}  // namespace braidhopf::cli
