// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "braidhopf/dsl.hpp"
#include "braidhopf/yd.hpp"
#include "expr_generator.hpp"

using namespace braidhopf;
namespace fs = std::filesystem;

namespace {

// Collects failures of one criterion.
struct Verdict {
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void require(const HopfReport& r) {
    for (const auto& c : r.checks) require(c.pass, r.algebra + ": " + c.check + " " + c.witness.dump());
  }
  void require(const std::vector<CheckResult>& checks, const std::string& where) {
    for (const auto& c : checks) require(c.pass, where + ": " + c.check + " " + c.witness.dump());
  }
};

BasePtr lower_half(const CartanDatum& d, int l) {
  return nichols_structure_maps(nichols_at_root(d, l)->lowering(), "u(n-)", "F");
}

bool same(const GradedMap& a, const GradedMap& b) { return !matrix_difference(a, b); }

// [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}
Scalar symmetric_sum(long long n, const Scalar& q) {
  Scalar s;
  for (long long k = 0; k < n; ++k) s += q.pow(n - 1 - 2 * k);
  return s;
}

// Coefficients of prod over positive roots of 1/(1 - t^height), up to degree top.
std::vector<std::size_t> pbw_counts(const std::vector<int>& heights, int top) {
  std::vector<std::size_t> c(static_cast<std::size_t>(top) + 1, 0);
  c[0] = 1;
  for (int h : heights)
    for (int d = h; d <= top; ++d) c[static_cast<std::size_t>(d)] += c[static_cast<std::size_t>(d - h)];
  return c;
}

void criterion1(Verdict& v) {
  for (int l : {3, 5, 7}) {
    Scalar eps = primitive_root(l);
    for (int n = 0; n <= 3 * l; ++n) {
      Scalar qn = quantum_integer(n, eps);
      v.require(qn.is_zero() == (n % l == 0), "[" + std::to_string(n) + "] at l=" + std::to_string(l));
      v.require(qn == symmetric_sum(n, eps), "[n] against the symmetric sum, n=" + std::to_string(n));
    }
    for (int n = 0; n <= 8; ++n)
      for (int m = 0; m <= n; ++m)
        v.require(quantum_binomial(n, m, eps) == quantum_binomial(n, n - m, eps),
                  "binomial symmetry " + std::to_string(n) + "," + std::to_string(m));
  }
  Scalar q = Scalar::q();
  for (int n = 0; n <= 8; ++n)
    for (int m = 0; m <= n; ++m)
      v.require(quantum_binomial(n, m, q) == quantum_binomial(n, n - m, q), "generic binomial symmetry");
}

void criterion2(Verdict& v) {
  CartanDatum a1 = CartanDatum::named("A1"), a2 = CartanDatum::named("A2");
  auto g1 = NicholsPair::build(a1, Scalar::q(), 0, 8);
  v.require(g1->raising().hilbert_series() == std::vector<std::size_t>(9, 1), "A1 generic");
  auto r1 = NicholsPair::build(a1, primitive_root(3), 3, 4);
  v.require(r1->raising().hilbert_series() == std::vector<std::size_t>{1, 1, 1, 0, 0}, "A1 at l = 3");
  auto g2 = NicholsPair::build(a2, Scalar::q(), 0, 6);
  auto oracle = pbw_counts({1, 1, 2}, 6);
  v.require(oracle == std::vector<std::size_t>{1, 2, 4, 6, 9, 12, 16}, "PBW oracle");
  v.require(g2->raising().hilbert_series() == oracle, "A2 generic");
  v.require(nichols_at_root(a2, 3)->raising().dim() == 27, "A2 at l = 3 has dimension 3^3");
}

void criterion3(Verdict& v) {
  for (const char* type : {"A2", "B2"}) {
    CartanDatum d = CartanDatum::named(type);
    int top = 1 - std::min(d.cartan(0, 1), d.cartan(1, 0)) + 1;
    auto p = NicholsPair::build(d, Scalar::q(), 0, top);
    for (int i = 0; i < 2; ++i) {
      int j = 1 - i;
      WordPoly s = p->serre_element(i, j);
      bool right_degree = !s.empty();
      for (const auto& [w, c] : s) right_degree = right_degree && static_cast<int>(w.size()) == 1 - d.cartan(i, j) + 1;
      v.require(right_degree, std::string(type) + " Serre element degree");
      v.require(p->in_radical(s), std::string(type) + " Serre element in the radical");
    }
  }
}

void criterion4(Verdict& v) {
  auto t0 = std::chrono::steady_clock::now();
  CartanDatum a1 = CartanDatum::named("A1"), a2 = CartanDatum::named("A2");
  v.require(check_hopf_axioms(*build_small_quantum_group(a1, 3)));
  v.require(check_hopf_axioms(*build_small_quantum_group(a1, 5)));
  v.require(check_hopf_axioms(*build_small_quantum_group(a2, 3)));
  v.require(check_hopf_axioms(*build_t_eps(a1, 3)));
  v.require(check_hopf_axioms(*build_bbh(a1, 3)));
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  v.require(s < 60, "budget of 60 s exceeded");
}

void criterion5(Verdict& v) {
  for (auto [type, l] : {std::pair{"A1", 3}, {"A1", 5}, {"A2", 3}}) {
    CartanDatum d = CartanDatum::named(type);
    auto drin = build_drinfeld_double(d, l);
    auto small = build_small_quantum_group(d, l);
    MorphismVerdict m = check_morphism(*drin, *small, double_to_small_images(*drin, *small));
    v.require(m.all(), std::string(type) + " l=" + std::to_string(l) + " " + m.to_json().dump());
  }
}

void criterion6(Verdict& v) {
  for (auto [type, l] : {std::pair{"A1", 5}, {"A2", 3}}) {
    YDModule y = regular_yd(lower_half(CartanDatum::named(type), l));
    v.require(check_yd(y));
    v.require({yd_braid_relation(y, y, y)}, std::string(type) + " l=" + std::to_string(l));
  }
  auto b = lower_half(CartanDatum::named("A1"), 3);
  YDModule reg = regular_yd(b);
  v.require(check_yd(reg));
  v.require({yd_braid_relation(reg, reg, reg)}, "regular");
  YDModule sq = yd_tensor(reg, reg);
  v.require({yd_braid_relation(sq, reg, trivial_yd(b))}, "mixed triple");

  GroupElem g = b->space->bicharacter().group().zero();
  g[0] = 1;
  CheckResult wrong_coaction = yd_condition(twist_coaction(reg, g));
  v.require(!wrong_coaction.pass && !wrong_coaction.witness.is_null(), "wrong coaction is caught with a witness");
  CheckResult wrong_coproduct = yd_condition(regular_yd(with_unbraided_coproduct(b)));
  v.require(!wrong_coproduct.pass && !wrong_coproduct.witness.is_null(), "wrong coproduct is caught with a witness");
}

void criterion7(Verdict& v) {
  for (auto [type, l] : {std::pair{"A1", 3}, {"A1", 5}, {"A2", 3}}) {
    CartanDatum d = CartanDatum::named(type);
    std::string where = std::string(type) + " l=" + std::to_string(l);
    auto pair = nichols_at_root(d, l);
    auto b = nichols_structure_maps(pair->lowering(), "u(n-)", "F");
    auto u = build_small_quantum_group(d, l);
    for (const YDModule& y : {regular_yd(b), trivial_yd(b)}) {
      AlgebraModule w = yd_to_weight_module(y, *pair, u);
      v.require(check_algebra_module(w, 200));
      YDModule back = weight_module_to_yd(w, *pair, b);
      v.require(same(back.action, y.action) && same(back.coaction, y.coaction), where + " weight module round trip");
    }

    for (const LeftModule& m : {regular_left_module(b), trivial_left_module(b)}) {
      RightModule r = flip_module(m);
      v.require(check_right_module(b, Object(r.carrier), r.action), where + " flipped");
      v.require(same(unflip_module(r).action, m.action), where + " flip then unflip");
    }

    auto bbh = build_bbh(d, l);
    Bimodule reg = regular_bimodule(b), triv = trivial_bimodule(b);
    for (const Bimodule& m : {reg, triv}) v.require(check_algebra_module(bimodule_to_bbh_module(m, bbh), 0));
    for (auto [m, n] : {std::pair{reg, reg}, {reg, triv}, {triv, reg}}) {
      AlgebraModule lhs = bimodule_to_bbh_module(bimodule_tensor(m, n), bbh);
      AlgebraModule rhs = algebra_module_tensor(bimodule_to_bbh_module(m, bbh), bimodule_to_bbh_module(n, bbh));
      for (std::size_t i = 0; i < lhs.generator_action.size(); ++i)
        v.require(same(lhs.generator_action[i], rhs.generator_action[i]), where + " tensor compatibility");
    }
  }
  // generic q through truncated bases
  CartanDatum a1 = CartanDatum::named("A1");
  auto pair = NicholsPair::build(a1, Scalar::q(), 0, 6);
  auto uq = build_generic_quantum_group(a1, 6);
  auto b = nichols_structure_maps(pair->lowering(), "U(n-)", "F", 4);
  for (int n : {0, 2, 4}) {
    AlgebraModule irr = sl2_irreducible(uq, pair->lowering().bicharacter_ptr(), n);
    v.require(check_algebra_module(irr));
    YDModule y = weight_module_to_yd(irr, *pair, b);
    v.require(check_yd(y));
    AlgebraModule back = yd_to_weight_module(y, *pair, uq);
    for (std::size_t i = 0; i < irr.generator_action.size(); ++i)
      v.require(same(back.generator_action[i], irr.generator_action[i]), "generic round trip");
  }
}

void criterion8(Verdict& v) {
  for (int l : {3, 5}) {
    auto b = lower_half(CartanDatum::named("A1"), l);
    std::string where = "A1 l=" + std::to_string(l);
    auto reg = std::make_shared<const ComoduleAlgebra>(regular_comodule_algebra(b));
    ComoduleModule w = regular_comodule_module(reg);
    for (const YDModule& y : {regular_yd(b), trivial_yd(b)}) {
      ComoduleModule yw = center_action(y, w);
      v.require(check_comodule_module(yw));
      v.require({hopf_module_condition(as_hopf_module(yw), HopfModuleKind::Regular)}, where + " regular");
    }
    v.require(center_coherence(regular_yd(b), regular_yd(b), w), where + " coherence");

    auto triv = std::make_shared<const ComoduleAlgebra>(trivial_comodule_algebra(b));
    ComoduleModule tw = regular_comodule_module(triv);
    ComoduleModule ytw = center_action(regular_yd(b), tw);
    v.require(check_comodule_module(ytw));
    v.require({hopf_module_condition(as_hopf_module(ytw), HopfModuleKind::Trivial)}, where + " trivial");
    v.require(center_coherence(regular_yd(b), regular_yd(b), tw), where + " trivial coherence");
  }
}

void criterion9(Verdict& v) {
  using namespace braidhopf::dsl;
  auto b = lower_half(CartanDatum::named("A1"), 3);
  Environment env;
  env.bind_algebra("B", b);
  env.bind_module("V", regular_yd(b));
  env.bind_map("tau", swap_map(b->obj(), b->obj()));

  braidhopf::testing::ExprGenerator gen(20240917);
  for (int i = 0; i < 200; ++i) {
    auto t = gen.expr(braidhopf::testing::random_domain(gen), 3, 4);
    std::string text = print(*t.e);
    ExprPtr back = parse(text);
    v.require(*back == *t.e && print(*back) == text, "round trip of " + text);
    v.require(evaluate(*back, env).codomain().factors().size() == t.cod.size(), "type of " + text);
  }

  const std::string lhs = "m[B] ; delta[B]";
  v.require(check_identity(lhs, "delta[B] x delta[B] ; id(B) x psi(B,B) x id(B) ; m[B] x m[B]", env).equal,
            "coproduct is multiplicative");
  IdentityVerdict swapped = check_identity(lhs, "delta[B] x delta[B] ; id(B) x tau x id(B) ; m[B] x m[B]", env);
  v.require(!swapped.equal && !swapped.witness.is_null(), "plain swap is caught with a witness");

  GroupElem g = b->space->bicharacter().group().zero();
  g[0] = 1;
  YDModule mult{"multiplication", b->space, b, b->m, b->delta};
  for (const YDModule& y : {regular_yd(b), trivial_yd(b), twist_coaction(regular_yd(b), g), mult,
                            regular_yd(with_unbraided_coproduct(b))}) {
    Environment e;
    e.bind_algebra("B", y.base);
    e.bind_module("V", y);
    HopfReport dedicated = check_yd(y);
    for (const auto& c : run_suite(yd_suite(), e)) {
      const CheckResult* d = dedicated.find(c.check);
      v.require(d && d->pass == c.pass, y.name + ": YD suite disagrees on " + c.check);
    }
    for (HopfModuleKind kind : {HopfModuleKind::Regular, HopfModuleKind::Trivial}) {
      HopfModule h{y.name, y.carrier, y.base, y.action, y.coaction};
      HopfReport hd = check_hopf_module(h, kind);
      for (const auto& c : run_suite(hopf_module_suite(kind), e)) {
        const CheckResult* d = hd.find(c.check);
        v.require(d && d->pass == c.pass, y.name + ": Hopf-module suite disagrees on " + c.check);
      }
    }
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion10(Verdict& v) {
  fs::path dir = fs::temp_directory_path() / ("braidhopf-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path manifest = dir / "manifest.json";
  std::ofstream(manifest) << R"({"datum": "A1", "base": {"root_of_unity": 3},
  "families": ["small", "torus", "bbh"], "seed": 20240917})";
  std::string reports[2];
  for (int i = 0; i < 2; ++i) {
    fs::path out = dir / ("report" + std::to_string(i) + ".json");
    std::string cmd = std::string("\"") + BRAIDHOPF_CLI + "\" axioms check --manifest \"" + manifest.string() +
                      "\" --out \"" + out.string() + "\" > /dev/null";
    v.require(std::system(cmd.c_str()) == 0, "CLI run " + std::to_string(i) + " failed");
    reports[i] = slurp(out);
  }
  v.require(!reports[0].empty() && reports[0] == reports[1], "reports differ");
  fs::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"quantum integers vanish exactly at multiples of l; binomial symmetry", criterion1},
      {"Nichols Hilbert series", criterion2},
      {"Serre elements lie in the pairing radical (A2, B2)", criterion3},
      {"Hopf axioms for u (A1 3, A1 5, A2 3), t (A1 3), BBH (A1 3) within 60 s", criterion4},
      {"double to small quantum group is a Hopf isomorphism", criterion5},
      {"YD condition, braid relation, mutations caught", criterion6},
      {"weight modules, flip/unflip, BBH images, tensor compatibility", criterion7},
      {"center action: Hopf-module compatibility and coherence", criterion8},
      {"DSL round trip, coproduct identity, agreement with checkers", criterion9},
      {"CLI reports are byte-identical across runs", criterion10},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.failures.push_back(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = v.failures.empty();
    all = all && pass;
    std::cout << "criterion " << i + 1 << ": " << (pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ("
              << std::fixed << std::setprecision(2) << s << " s)\n";
    for (std::size_t k = 0; k < v.failures.size() && k < 5; ++k) std::cout << "    " << v.failures[k] << "\n";
  }
  return all ? 0 : 1;
}
