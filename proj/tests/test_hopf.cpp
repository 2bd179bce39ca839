#include <doctest.h>

#include "braidhopf/hopf.hpp"

using namespace braidhopf;

namespace {

Vec gen(const HopfAlgebra& a, const std::string& name) {
  int i = a.generator_index(name);
  REQUIRE(i >= 0);
  return a.generators()[static_cast<std::size_t>(i)].element;
}

Vec mul(const HopfAlgebra& a, std::initializer_list<Vec> xs) {
  Vec out = a.one();
  for (const Vec& x : xs) out = a.multiply(out, x);
  return out;
}

Vec lin(std::initializer_list<std::pair<Vec, Scalar>> parts) {
  Accumulator<std::uint32_t> acc;
  for (const auto& [v, c] : parts) acc.add_all(v, c);
  return acc.take();
}

void require_pass(const HopfReport& r) {
  for (const auto& c : r.checks) {
    INFO(r.algebra << " " << c.check << " " << c.witness.dump());
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("small quantum group dimensions") {
  CHECK(*build_small_quantum_group(CartanDatum::named("A1"), 3)->dim() == 27);
  CHECK(*build_small_quantum_group(CartanDatum::named("A1"), 5)->dim() == 125);
  CHECK(*build_small_quantum_group(CartanDatum::named("A2"), 3)->dim() == 6561);
  CHECK(*build_drinfeld_double(CartanDatum::named("A1"), 5)->dim() == 125);
  CHECK(*build_bbh(CartanDatum::named("A1xA1"), 3)->dim() == 729);
}

TEST_CASE("root system data") {
  CHECK(positive_root_count(CartanDatum::named("A2")) == 3);
  CHECK(positive_root_count(CartanDatum::named("B2")) == 4);
  CHECK(positive_root_count(CartanDatum::named("G2")) == 6);
  CHECK(positive_root_count(CartanDatum::named("A3")) == 6);
  CHECK(positive_root_height_sum(CartanDatum::named("A2")) == 4);
  CHECK(positive_root_height_sum(CartanDatum::named("G2")) == 1 + 1 + 2 + 3 + 4 + 5);
}

TEST_CASE("root of unity parameter validation") {
  auto a1 = CartanDatum::named("A1");
  CHECK_THROWS_AS(build_small_quantum_group(a1, 4), InvalidParameter);
  CHECK_THROWS_AS(build_small_quantum_group(a1, 1), InvalidParameter);
  CHECK_THROWS_AS(build_drinfeld_double(a1, 2), InvalidParameter);
  CHECK_THROWS_AS(build_small_quantum_group(CartanDatum::named("G2"), 3), InvalidParameter);
}

TEST_CASE("exchange relation in u_eps(sl2)") {
  int l = 5;
  auto u = build_small_quantum_group(CartanDatum::named("A1"), l);
  Scalar eps = primitive_root(l);
  Vec e = gen(*u, "E1"), f = gen(*u, "F1"), k = gen(*u, "K1"), ki = gen(*u, "K1^-1");
  Scalar denom = (eps - eps.inverse()).inverse();
  Vec lhs = lin({{mul(*u, {e, f}), Scalar(1)}, {mul(*u, {f, e}), Scalar(-1)}});
  CHECK(lhs == lin({{k, denom}, {ki, -denom}}));
  CHECK(mul(*u, {k, e}) == scaled(mul(*u, {e, k}), eps.pow(2)));
  CHECK(mul(*u, {k, f}) == scaled(mul(*u, {f, k}), eps.pow(-2)));
  CHECK(mul(*u, {k, ki}) == u->one());
  Vec el = u->one();
  for (int i = 0; i < l; ++i) el = u->multiply(el, e);
  CHECK(el.empty());
  Vec kl = u->one();
  for (int i = 0; i < l; ++i) kl = u->multiply(kl, k);
  CHECK(kl == u->one());
}

TEST_CASE("double presentation relations") {
  auto drin = build_drinfeld_double(CartanDatum::named("A1"), 3);
  Scalar eps = primitive_root(3);
  Vec e = gen(*drin, "e1"), f = gen(*drin, "f1"), k = gen(*drin, "k1"), ki = gen(*drin, "k1^-1");
  Scalar denom = (eps - eps.inverse()).inverse();
  Vec lhs = lin({{mul(*drin, {e, f}), Scalar(1)}, {mul(*drin, {f, e}), -eps.pow(2)}});
  CHECK(lhs == lin({{drin->one(), denom}, {mul(*drin, {ki, ki}), -denom}}));
  CHECK(drin->generators()[static_cast<std::size_t>(drin->k_gen(0))].coproduct ==
        Tensor2{{{k[0].first, k[0].first}, Scalar(1)}});
}

TEST_CASE("dimension law") {
  for (auto [type, l] : {std::pair{"A1", 3}, {"A1", 5}, {"A1", 7}, {"A2", 3}, {"A1xA1", 3}}) {
    auto d = CartanDatum::named(type);
    long long expect = 1;
    for (int i = 0; i < d.rank() + 2 * positive_root_count(d); ++i) expect *= l;
    CHECK(static_cast<long long>(*build_small_quantum_group(d, l)->dim()) == expect);
    CHECK(static_cast<long long>(*build_t_eps(d, l)->dim()) == expect);
  }
}

TEST_CASE("torus family relations") {
  auto t = build_t_eps(CartanDatum::named("A1"), 3);
  Scalar eps = primitive_root(3);
  Vec x = gen(*t, "x1"), y = gen(*t, "y1");
  CHECK(mul(*t, {x, y}) == scaled(mul(*t, {y, x}), eps.pow(2)));
  CHECK(mul(*t, {x, x, x}).empty());
  CHECK(mul(*t, {y, y, y}).empty());
  CHECK(*t->dim() == 27);

  auto tq = build_t_q(CartanDatum::named("A1"), 6);
  Vec yq = gen(*tq, "y1"), kq = gen(*tq, "K1");
  Tensor2 expect = add_terms(Tensor2{{{yq[0].first, tq->unit()}, Scalar(1)}},
                             Tensor2{{{kq[0].first, yq[0].first}, Scalar(1)}});
  CHECK(tq->coproduct(yq) == expect);
  Scalar q = Scalar::q();
  CHECK(mul(*tq, {gen(*tq, "x1"), yq}) == scaled(mul(*tq, {yq, gen(*tq, "x1")}), q * q));
}

TEST_CASE("generic quantum group relations") {
  auto uq = build_generic_quantum_group(CartanDatum::named("A1"), 6);
  CHECK(!uq->dim());
  Scalar q = Scalar::q();
  Vec e = gen(*uq, "E1"), f = gen(*uq, "F1"), k = gen(*uq, "K1"), ki = gen(*uq, "K1^-1");
  CHECK(mul(*uq, {k, e}) == scaled(mul(*uq, {e, k}), q * q));
  Scalar denom = (q - q.inverse()).inverse();
  CHECK(lin({{mul(*uq, {e, f}), Scalar(1)}, {mul(*uq, {f, e}), Scalar(-1)}}) == lin({{k, denom}, {ki, -denom}}));
  // E F^2 = F^2 E + [2] F (q^{-1} K - q K^{-1}) / (q - q^{-1})
  Vec lhs = mul(*uq, {e, f, f});
  Scalar two = q + q.inverse();
  Vec rhs = lin({{mul(*uq, {f, f, e}), Scalar(1)},
                 {mul(*uq, {f, k}), two * q.inverse() * denom},
                 {mul(*uq, {f, ki}), -(two * q * denom)}});
  CHECK(lhs == rhs);
  CHECK(uq->label(uq->unit()) == "1");
}

TEST_CASE("hopf axioms hold for the families") {
  auto a1 = CartanDatum::named("A1");
  require_pass(check_hopf_axioms(*build_small_quantum_group(a1, 3)));
  require_pass(check_hopf_axioms(*build_small_quantum_group(a1, 5)));
  require_pass(check_hopf_axioms(*build_drinfeld_double(a1, 3)));
  require_pass(check_hopf_axioms(*build_t_eps(a1, 3)));
  require_pass(check_hopf_axioms(*build_bbh(a1, 3)));
  require_pass(check_hopf_axioms(*build_cyclic_group_algebra(3)));
  require_pass(check_hopf_axioms(*materialize(*build_cyclic_group_algebra(4))));
}

TEST_CASE("hopf axioms for rank two at l = 3") {
  auto a2 = CartanDatum::named("A2");
  require_pass(check_hopf_axioms(*build_small_quantum_group(a2, 3)));
  require_pass(check_hopf_axioms(*build_drinfeld_double(a2, 3)));
  require_pass(check_hopf_axioms(*build_t_eps(a2, 3)));
  require_pass(check_hopf_axioms(*build_bbh(a2, 3)));
}

TEST_CASE("generic families pass sampled axioms") {
  AxiomOptions opt;
  opt.samples = 300;
  require_pass(check_hopf_axioms(*build_generic_quantum_group(CartanDatum::named("A1"), 8), opt));
  require_pass(check_hopf_axioms(*build_t_q(CartanDatum::named("A1"), 8), opt));
  require_pass(check_hopf_axioms(*build_generic_quantum_group(CartanDatum::named("A2"), 7), opt));
}

TEST_CASE("braided Nichols tables satisfy the braided axioms") {
  auto p = nichols_at_root(CartanDatum::named("A1"), 3);
  require_pass(check_hopf_axioms(*build_nichols_hopf(p->lowering(), "B(F)", "F")));
  auto p2 = nichols_at_root(CartanDatum::named("A2"), 3);
  auto b = build_nichols_hopf(p2->raising(), "B(E)", "E");
  CHECK(*b->dim() == 27);
  require_pass(check_hopf_axioms(*b));
}

TEST_CASE("associativity check catches a perturbed structure constant") {
  auto z3 = materialize(*build_cyclic_group_algebra(3));
  auto d = z3->data();
  d.products[1 * 3 + 2] = {{0, Scalar(2)}};
  auto bad = std::make_shared<TableHopfAlgebra>(d);
  const CheckResult* c = check_hopf_axioms(*bad).find("associativity");
  REQUIRE(c);
  CHECK(!c->pass);

  auto u = materialize(*build_small_quantum_group(CartanDatum::named("A1"), 3));
  auto du = u->data();
  int e = u->generator_index("E1"), f = u->generator_index("F1");
  std::uint32_t ei = u->generators()[static_cast<std::size_t>(e)].element[0].first;
  std::uint32_t fi = u->generators()[static_cast<std::size_t>(f)].element[0].first;
  Vec& ef = du.products[static_cast<std::size_t>(ei) * 27 + fi];
  ef = scaled(ef, primitive_root(3));
  auto ubad = std::make_shared<TableHopfAlgebra>(du);
  c = check_hopf_axioms(*ubad).find("associativity");
  REQUIRE(c);
  CHECK(!c->pass);
  CHECK(c->witness.contains("triple"));
}

TEST_CASE("a primitive coproduct for E breaks the exchange relation") {
  auto u = build_small_quantum_group(CartanDatum::named("A1"), 3);
  int ei = u->generator_index("E1");
  Generator g = u->generators()[static_cast<std::size_t>(ei)];
  g.coproduct = add_terms(Tensor2{{{g.element[0].first, u->unit()}, Scalar(1)}},
                          Tensor2{{{u->unit(), g.element[0].first}, Scalar(1)}});
  u->set_generator(static_cast<std::size_t>(ei), g);
  auto rep = check_hopf_axioms(*u);
  CHECK(!rep.pass());
  const CheckResult* c = rep.find("coproduct_preserves_relations");
  REQUIRE(c);
  CHECK(!c->pass);
  CHECK(c->witness["relation"].get<std::string>().find("exchange") != std::string::npos);
  CHECK(!rep.find("antipode")->pass);
}

TEST_CASE("double to small quantum group isomorphism") {
  for (auto [type, l] : {std::pair{"A1", 3}, {"A1", 5}, {"A2", 3}}) {
    auto d = CartanDatum::named(type);
    auto drin = build_drinfeld_double(d, l);
    auto small = build_small_quantum_group(d, l);
    auto v = check_morphism(*drin, *small, double_to_small_images(*drin, *small));
    INFO(type << " l=" << l << " " << v.to_json().dump());
    CHECK(v.all());
  }
}

TEST_CASE("morphism checks detect failures") {
  auto d = CartanDatum::named("A1");
  auto drin = build_drinfeld_double(d, 3);
  auto small = build_small_quantum_group(d, 3);
  auto images = double_to_small_images(*drin, *small);
  auto wrong = images;
  wrong[static_cast<std::size_t>(drin->upper_gen(0))] = gen(*small, "E1");
  auto v = check_morphism(*drin, *small, wrong);
  CHECK(!v.is_coalgebra_map);
  auto zero = images;
  zero[static_cast<std::size_t>(drin->lower_gen(0))] = Vec();
  auto z = check_morphism(*drin, *small, zero);
  CHECK(!z.bijective);

  std::vector<Vec> id;
  for (const auto& g : small->generators()) id.push_back(g.element);
  CHECK(check_morphism(*small, *small, id).all());
}

TEST_CASE("export and import round trip") {
  auto u = build_small_quantum_group(CartanDatum::named("A1"), 3);
  nlohmann::json j = export_algebra(*u);
  auto back = import_algebra(nlohmann::json::parse(j.dump()));
  CHECK(export_algebra(*back) == j);
  require_pass(check_hopf_axioms(*back));
  auto p = nichols_at_root(CartanDatum::named("A1"), 3);
  auto b = build_nichols_hopf(p->raising(), "B(E)", "E");
  auto b2 = import_algebra(export_algebra(*b));
  REQUIRE(b2->braiding());
  CHECK(b2->braiding()->same_as(*b->braiding()));
  require_pass(check_hopf_axioms(*b2));
}

TEST_CASE("bosonization cross relation matches the R-matrix sum") {
  // Braiding through R = l^{-n} sum_{lambda, mu} eps^{-(lambda, mu)} K^lambda (x) K^mu,
  // where K^lambda acts on degree g by eps^{(lambda, g)}.
  for (auto [type, l] : {std::pair{"A1", 3}, {"A1", 5}, {"A1", 7}, {"A1xA1", 3}}) {
    auto datum = CartanDatum::named(type);
    int n = datum.rank();
    auto bbh = build_bbh(datum, l);
    Scalar eps = primitive_root(l);
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(l);
    auto elem = [&](std::size_t idx) {
      GroupElem g(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        g[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(l));
        idx /= static_cast<std::size_t>(l);
      }
      return g;
    };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        GroupElem x(static_cast<std::size_t>(n), 0), y(static_cast<std::size_t>(n), 0);
        x[static_cast<std::size_t>(i)] = -1;
        y[static_cast<std::size_t>(j)] = -1;
        Scalar sum;
        for (std::size_t a = 0; a < count; ++a) {
          for (std::size_t b = 0; b < count; ++b) {
            GroupElem la = elem(a), mu = elem(b);
            sum += eps.pow(-datum.dot(la, mu) + datum.dot(la, x) + datum.dot(mu, y));
          }
        }
        sum = sum * Scalar(Rational(1, static_cast<long long>(count)));
        Vec b = gen(*bbh, "b" + std::to_string(i + 1));
        Vec d = gen(*bbh, "d" + std::to_string(j + 1));
        INFO(type << " " << i << " " << j);
        CHECK(bbh->multiply(b, d) == scaled(bbh->multiply(d, b), sum));
      }
    }
  }
}
