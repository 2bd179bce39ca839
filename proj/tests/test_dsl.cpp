#include <doctest.h>

#include "braidhopf/dsl.hpp"
#include "expr_generator.hpp"

using namespace braidhopf;
using namespace braidhopf::dsl;
using braidhopf::testing::ExprGenerator;
using braidhopf::testing::random_domain;

namespace {

BasePtr lower_half(const std::string& type, int l) {
  return nichols_structure_maps(nichols_at_root(CartanDatum::named(type), l)->lowering(), "u(n-)", "F");
}

const char* kCoproductMultiplicative[2] = {
    "m[B] ; delta[B]", "delta[B] x delta[B] ; id(B) x psi(B,B) x id(B) ; m[B] x m[B]"};

Environment algebra_env(const BasePtr& b) {
  Environment env;
  env.bind_algebra("B", b);
  return env;
}

void require_same(const std::vector<CheckResult>& dsl, const HopfReport& dedicated) {
  for (const auto& c : dsl) {
    const CheckResult* d = dedicated.find(c.check);
    INFO(c.check);
    REQUIRE(d != nullptr);
    CHECK(c.pass == d->pass);
    if (!c.pass) CHECK_FALSE(c.witness.is_null());
  }
}

}  // namespace

TEST_CASE("parse and print round trip on 200 random expressions") {
  auto b = lower_half("A1", 3);
  Environment env = algebra_env(b);
  env.bind_module("V", regular_yd(b));
  ExprGenerator gen(2024);
  for (int i = 0; i < 200; ++i) {
    std::string dom = random_domain(gen);
    auto t = gen.expr(dom, 3, 4);
    std::string text = print(*t.e);
    INFO(text);
    ExprPtr back = parse(text);
    CHECK(*back == *t.e);
    CHECK(print(*back) == text);
    GradedMap f = evaluate(*back, env);
    CHECK(f.domain().factors().size() == dom.size());
    CHECK(f.codomain().factors().size() == t.cod.size());
  }
}

TEST_CASE("parser: precedence, grouping and aliases") {
  ExprPtr e = parse("a x b ; c");
  CHECK(*e == *Expr::then(Expr::tensor(Expr::name("a"), Expr::name("b")), Expr::name("c")));
  e = parse("a x (b ; c)");
  CHECK(*e == *Expr::tensor(Expr::name("a"), Expr::then(Expr::name("b"), Expr::name("c"))));
  CHECK(print(*e) == "a x (b ; c)");
  e = parse("a ; (b ; c)");
  CHECK(print(*e) == "a ; (b ; c)");
  CHECK(*parse("antipode[B]") == *parse("S[B]"));
  CHECK(*parse("counit[B]\n;\n unit[B]") == *parse("eps[B];eta[B]"));
  CHECK(*parse("psi( B , V )") == *Expr::braiding("B", "V"));
}

TEST_CASE("syntax errors carry line and column") {
  auto at = [](const std::string& text) {
    try {
      parse(text);
    } catch (const SyntaxError& e) {
      return std::pair{e.line, e.column};
    }
    return std::pair{0, 0};
  };
  CHECK(at("m[B] ;") == std::pair{1, 7});
  CHECK(at("m[B]\n  x ]") == std::pair{2, 5});
  CHECK(at("psi(B V)") == std::pair{1, 7});
  CHECK(at("foo[B]") == std::pair{1, 1});
  CHECK(at("m[B] $") == std::pair{1, 6});
  CHECK(at("(m[B]") == std::pair{1, 6});
}

TEST_CASE("evaluation errors") {
  auto b = lower_half("A1", 3);
  Environment env = algebra_env(b);
  env.bind_module("V", regular_yd(b));
  auto kind = [&](const std::string& text) {
    try {
      evaluate(text, env);
    } catch (const EvalError& e) {
      return static_cast<int>(e.kind);
    }
    return -1;
  };
  CHECK(kind("m[C]") == static_cast<int>(EvalError::Kind::Unbound));
  CHECK(kind("id(W)") == static_cast<int>(EvalError::Kind::Unbound));
  CHECK(kind("m[B] ; m[B]") == static_cast<int>(EvalError::Kind::TypeMismatch));
  CHECK(kind("(m[B] x m[B]) ; (id(B) x psi(B,B) x id(B)) ; (delta[B] x delta[B])") ==
        static_cast<int>(EvalError::Kind::TypeMismatch));
  CHECK(kind("m[B] ; psi(B,B)") == static_cast<int>(EvalError::Kind::TypeMismatch));
  CHECK(kind("act[B]") == static_cast<int>(EvalError::Kind::WrongKind));
  CHECK(kind("m[V]") == static_cast<int>(EvalError::Kind::WrongKind));
  CHECK_THROWS_AS(env.bind_space("B", b->space), std::invalid_argument);
  CHECK_THROWS_AS(check_identity("m[B]", "delta[B]", env), EvalError);
}

TEST_CASE("interchange and associativity hold for evaluated expressions") {
  auto b = lower_half("A1", 3);
  Environment env = algebra_env(b);
  env.bind_module("V", regular_yd(b));
  CHECK(check_identity("(delta[B] x coact[V]) ; (m[B] x act[V])", "(delta[B] ; m[B]) x (coact[V] ; act[V])", env)
            .equal);
  CHECK(check_identity("(S[B] ; Sinv[B]) ; delta[B]", "S[B] ; (Sinv[B] ; delta[B])", env).equal);
  CHECK(check_identity("S[B] ; Sinv[B]", "id(B)", env).equal);
  CHECK(check_identity("psi(B,V) ; psi(V,B)", "psi(B,V) ; psi(V,B)", env).equal);
}

TEST_CASE("coproduct is multiplicative for u(n-) of A1 at l = 3 and for Z/3") {
  auto b = lower_half("A1", 3);
  Environment env = algebra_env(b);
  CHECK(check_identity(kCoproductMultiplicative[0], kCoproductMultiplicative[1], env).equal);

  Environment z3 = algebra_env(structure_maps(*build_cyclic_group_algebra(3), "Z3"));
  CHECK(check_identity(kCoproductMultiplicative[0], kCoproductMultiplicative[1], z3).equal);
}

TEST_CASE("the plain flip in place of the braiding gives a witness") {
  auto b = lower_half("A1", 3);
  Environment env = algebra_env(b);
  env.bind_map("tau", swap_map(b->obj(), b->obj()));
  IdentityVerdict v =
      check_identity("m[B] ; delta[B]", "delta[B] x delta[B] ; id(B) x tau x id(B) ; m[B] x m[B]", env);
  CHECK_FALSE(v.equal);
  CHECK(v.witness.at("lhs") != v.witness.at("rhs"));
  CHECK(v.to_json().at("equal") == false);
}

TEST_CASE("psi on the generator of A1 at generic q is q^2") {
  CartanDatum a1 = CartanDatum::named("A1");
  auto chi = std::make_shared<const Bicharacter>(cartan_bicharacter(a1, Scalar::q(), 0));
  auto e = std::make_shared<const BraidedSpace>("E", chi, std::vector<BasisVector>{{"e", {1}}});
  Environment env;
  env.bind_space("E", e);
  GradedMap p = evaluate("psi(E,E)", env);
  CHECK(p.column(0) == Vec{{0, Scalar::q() * Scalar::q()}});
}

TEST_CASE("YD suite agrees with the dedicated checker") {
  for (auto [type, l] : {std::pair{"A1", 3}, {"A1", 5}}) {
    auto b = lower_half(type, l);
    GroupElem g = b->space->bicharacter().group().zero();
    g[0] = 1;
    YDModule mult{"multiplication", b->space, b, b->m, b->delta};
    auto wrong = with_unbraided_coproduct(b);
    std::vector<std::pair<YDModule, bool>> cases{{regular_yd(b), true},
                                                 {trivial_yd(b), true},
                                                 {twist_coaction(regular_yd(b), g), false},
                                                 {mult, false},
                                                 {regular_yd(wrong), false}};
    for (const auto& [v, expected] : cases) {
      INFO(type << " " << l << " " << v.name);
      Environment env = algebra_env(v.base);
      env.bind_module("V", v);
      auto r = run_suite(yd_suite(), env);
      HopfReport dedicated = check_yd(v);
      require_same(r, dedicated);
      CHECK(dedicated.pass() == expected);
      bool all = std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.pass; });
      CHECK(all == expected);
    }
  }
}

TEST_CASE("Hopf module suites agree with the dedicated checker") {
  auto b = lower_half("A1", 3);
  HopfModule reg = regular_hopf_module(b);
  auto run = [&](const HopfModule& h, HopfModuleKind kind) {
    Environment env = algebra_env(h.base);
    env.bind_module("V", h);
    auto r = run_suite(hopf_module_suite(kind), env);
    require_same(r, check_hopf_module(h, kind));
    return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.pass; });
  };
  CHECK(run(reg, HopfModuleKind::Regular));
  YDModule adj = regular_yd(b);
  CHECK_FALSE(run(HopfModule{"adjoint", adj.carrier, b, adj.action, adj.coaction}, HopfModuleKind::Regular));

  // Center action outputs: the regular one is a Hopf module, the trivial-algebra one is compatible with the trivial coaction.
  auto reg_alg = std::make_shared<const ComoduleAlgebra>(regular_comodule_algebra(b));
  CHECK(run(as_hopf_module(center_action(regular_yd(b), regular_comodule_module(reg_alg))), HopfModuleKind::Regular));
  auto triv_alg = std::make_shared<const ComoduleAlgebra>(trivial_comodule_algebra(b));
  CHECK(run(as_hopf_module(center_action(regular_yd(b), regular_comodule_module(triv_alg))), HopfModuleKind::Trivial));
}

TEST_CASE("bialgebra suite agrees with the Hopf axiom checker") {
  auto b = lower_half("A1", 3);
  auto r = run_suite(bialgebra_suite(), algebra_env(b));
  for (const auto& c : r) {
    INFO(c.check);
    CHECK(c.pass);
  }
  auto wrong = run_suite(bialgebra_suite(), algebra_env(with_unbraided_coproduct(b)));
  auto it = std::find_if(wrong.begin(), wrong.end(), [](const CheckResult& c) { return c.check == "coproduct_multiplicative"; });
  REQUIRE(it != wrong.end());
  CHECK_FALSE(it->pass);
}
