#include <doctest.h>

#include <random>

#include "braidhopf/braided.hpp"

using namespace braidhopf;

namespace {

SpacePtr generator_space(const CartanDatum& d, const Scalar& base, int modulus, const std::string& name, int sign) {
  auto chi = std::make_shared<Bicharacter>(cartan_bicharacter(d, base, modulus));
  std::vector<BasisVector> basis;
  for (int i = 0; i < d.rank(); ++i) {
    GroupElem g = chi->group().zero();
    g[static_cast<std::size_t>(i)] = sign;
    basis.push_back({name + std::to_string(i + 1), g});
  }
  return std::make_shared<BraidedSpace>(name, chi, basis);
}

// Degree-preserving random endomorphism.
GradedMap random_graded(const Object& obj, std::mt19937_64& rng) {
  GradedMap m(obj, obj);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t j = 0; j < obj.dim(); ++j) {
    Vec col;
    for (std::size_t i = 0; i < obj.dim(); ++i) {
      if (obj.degree(i) != obj.degree(j)) continue;
      int c = coef(rng);
      if (c != 0) col.emplace_back(static_cast<std::uint32_t>(i), Scalar(c));
    }
    m.set_column(j, col);
  }
  return m;
}

}  // namespace

TEST_CASE("named Cartan data") {
  CartanDatum a2 = CartanDatum::named("A2");
  CHECK(a2.cartan(0, 1) == -1);
  CHECK(a2.dot(0, 0) == 2);
  CartanDatum b2 = CartanDatum::named("B2");
  CHECK(b2.cartan(0, 1) == -1);
  CHECK(b2.cartan(1, 0) == -2);
  CartanDatum c3 = CartanDatum::named("C3");
  CHECK(c3.cartan(1, 2) == -2);
  CHECK(c3.cartan(2, 1) == -1);
  CartanDatum g2 = CartanDatum::named("G2");
  CHECK(g2.cartan(0, 1) == -3);
  CHECK(g2.cartan(1, 0) == -1);
  CartanDatum d4 = CartanDatum::named("D4");
  CHECK(d4.dot(1, 2) == -1);
  CHECK(d4.dot(1, 3) == -1);
  CHECK(d4.dot(2, 3) == 0);
  CartanDatum aa = CartanDatum::named("A1xA1");
  CHECK(aa.rank() == 2);
  CHECK(aa.dot(0, 1) == 0);
  CHECK(aa.name() == "A1xA1");
  using Form = std::vector<std::vector<int>>;
  CHECK_THROWS(CartanDatum(Form{{3}}));
  CHECK_THROWS(CartanDatum(Form{{2, 1}, {1, 2}}));
  CHECK_THROWS(CartanDatum(Form{{2, -1}, {-2, 2}}));
  CHECK_THROWS(CartanDatum::named("G3"));
  CHECK_THROWS(CartanDatum::named("Q2"));
  // every minimal root has length 2
  for (const char* t : {"A3", "B3", "C4", "D5", "G2"}) {
    CartanDatum d = CartanDatum::named(t);
    int mn = 100;
    for (int i = 0; i < d.rank(); ++i) mn = std::min(mn, d.dot(i, i));
    CHECK(mn == 2);
  }
}

TEST_CASE("Cartan bicharacters") {
  Scalar q = Scalar::q();
  Bicharacter a1 = cartan_bicharacter(CartanDatum::named("A1"), q, 0);
  CHECK(a1({1}, {1}) == q * q);
  Bicharacter a2 = cartan_bicharacter(CartanDatum::named("A2"), q, 0);
  CHECK(a2({1, 0}, {0, 1}) == q.inverse());
  CHECK(a2({0, 0}, {3, -2}).is_one());
  CHECK_THROWS(cartan_bicharacter(CartanDatum::named("A1"), q, 3));
  Bicharacter e3 = cartan_bicharacter(CartanDatum::named("A2"), primitive_root(3), 3);
  CHECK(e3({1, 0}, {1, 0}) == primitive_root(3).pow(2));
  // biadditivity
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int t = 0; t < 50; ++t) {
    GroupElem g{d(rng), d(rng)}, g2{d(rng), d(rng)}, h{d(rng), d(rng)};
    CHECK(a2(a2.group().add(g, g2), h) == a2(g, h) * a2(g2, h));
    CHECK(a2(h, a2.group().add(g, g2)) == a2(h, g) * a2(h, g2));
    CHECK(e3(e3.group().reduce(g), e3.group().reduce(h)) == e3(g, h));
  }
}

TEST_CASE("braiding on generator spaces") {
  Scalar q = Scalar::q();
  auto e = generator_space(CartanDatum::named("A1"), q, 0, "E", 1);
  GradedMap psi = braiding(e, e);
  CHECK(psi.entry(0, 0) == q * q);

  auto chi0 = std::make_shared<Bicharacter>(Bicharacter::trivial());
  SpacePtr v0 = std::make_shared<BraidedSpace>("V", chi0, std::vector<BasisVector>{{"a", {}}, {"b", {}}});
  CHECK(first_difference(braiding(v0, v0), swap_map(v0, v0)) == std::nullopt);

  CartanDatum a2 = CartanDatum::named("A2");
  auto ea = generator_space(a2, q, 0, "E", 1);
  auto fa = generator_space(a2, q, 0, "F", -1);
  Object E(ea), F(fa);
  GradedMap round = compose(braiding_inverse(E, F), braiding(E, F));
  CHECK(first_difference(round, GradedMap::identity(E * F)) == std::nullopt);
}

TEST_CASE("Yang-Baxter, hexagon and naturality") {
  std::mt19937_64 rng(5);
  for (const char* type : {"A1", "A2", "A1xA1"}) {
    CartanDatum d = CartanDatum::named(type);
    for (int l : {0, 3, 5}) {
      Scalar base = l == 0 ? Scalar::q() : primitive_root(l);
      Object V(generator_space(d, base, l, "E", 1));
      GradedMap psi = braiding(V, V);
      GradedMap id = GradedMap::identity(V);
      GradedMap lhs = compose(tensor_map(psi, id), compose(tensor_map(id, psi), tensor_map(psi, id)));
      GradedMap rhs = compose(tensor_map(id, psi), compose(tensor_map(psi, id), tensor_map(id, psi)));
      CHECK(first_difference(lhs, rhs) == std::nullopt);

      // Psi_{VxW,U} = (Psi_{V,U} x id)(id x Psi_{W,U})
      Object W(generator_space(d, base, l, "F", -1));
      Object U = V;
      GradedMap big = braiding(V * W, U);
      GradedMap parts = compose(tensor_map(braiding(V, U), GradedMap::identity(W)),
                                tensor_map(GradedMap::identity(V), braiding(W, U)));
      CHECK(first_difference(big, parts) == std::nullopt);

      // naturality with respect to degree-preserving maps
      GradedMap f = random_graded(V * V, rng), g = random_graded(W, rng);
      GradedMap a = compose(braiding(V * V, W), tensor_map(f, g));
      GradedMap b = compose(tensor_map(g, f), braiding(V * V, W));
      CHECK(first_difference(a, b) == std::nullopt);
    }
  }
}

TEST_CASE("tensor_map identities and interchange law") {
  std::mt19937_64 rng(9);
  Scalar q = Scalar::q();
  auto chi = std::make_shared<Bicharacter>(Bicharacter::trivial());
  SpacePtr v = std::make_shared<BraidedSpace>("V", chi, std::vector<BasisVector>{{"a", {}}, {"b", {}}});
  Object V(v);
  CHECK(first_difference(tensor_map(GradedMap::identity(V), GradedMap::identity(V)), GradedMap::identity(V * V)) ==
        std::nullopt);
  GradedMap zero(V, V);
  CHECK(tensor_map(zero, random_graded(V, rng)).is_zero());
  for (int t = 0; t < 20; ++t) {
    GradedMap f = random_graded(V, rng), f2 = random_graded(V, rng);
    GradedMap g = random_graded(V, rng), g2 = random_graded(V, rng);
    f = f.scaled(q);
    GradedMap lhs = tensor_map(compose(f2, f), compose(g2, g));
    GradedMap rhs = compose(tensor_map(f2, g2), tensor_map(f, g));
    CHECK(first_difference(lhs, rhs) == std::nullopt);
  }
}

TEST_CASE("graded map and space serialization") {
  CartanDatum a2 = CartanDatum::named("A2");
  auto e = generator_space(a2, primitive_root(5), 5, "E", 1);
  auto back = BraidedSpace::from_json(e->to_json());
  CHECK(back->to_json() == e->to_json());
  GradedMap psi = braiding(e, e);
  GradedMap again = GradedMap::from_json(psi.to_json(), psi.domain(), psi.codomain(), Field::cyclotomic(5));
  CHECK(first_difference(psi, again) == std::nullopt);
  CHECK(psi.to_json().dump() == again.to_json().dump());
}

TEST_CASE("composition type errors") {
  Scalar q = Scalar::q();
  CartanDatum a1 = CartanDatum::named("A1");
  Object E(generator_space(a1, q, 0, "E", 1));
  CHECK_THROWS_AS(compose(GradedMap::identity(E), GradedMap::identity(E * E)), StructuralError);
  Object G(generator_space(a1, primitive_root(3), 3, "G", 1));
  CHECK_THROWS_AS(braiding(E, G), StructuralError);
}
