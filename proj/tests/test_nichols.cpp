#include <doctest.h>

#include <random>

#include "braidhopf/nichols.hpp"

using namespace braidhopf;

namespace {

std::shared_ptr<NicholsPair> generic(const char* type, int cutoff) {
  return NicholsPair::build(CartanDatum::named(type), Scalar::q(), 0, cutoff);
}

std::shared_ptr<NicholsPair> at_root(const char* type, int l, int cutoff) {
  return NicholsPair::build(CartanDatum::named(type), primitive_root(l), l, cutoff);
}

// Coefficients of prod_k 1/(1 - t^{h_k}) up to degree n.
std::vector<std::size_t> pbw_series(const std::vector<int>& heights, int n) {
  std::vector<std::size_t> s(static_cast<std::size_t>(n) + 1, 0);
  s[0] = 1;
  for (int h : heights)
    for (int d = h; d <= n; ++d) s[static_cast<std::size_t>(d)] += s[static_cast<std::size_t>(d - h)];
  return s;
}

Word w(std::initializer_list<int> letters) {
  Word out;
  for (int i : letters) out.push_back(static_cast<char>(i));
  return out;
}

using Tensor = std::map<std::pair<Word, Word>, Scalar>;

void add(Tensor& t, const Word& a, const Word& b, const Scalar& c) {
  Scalar& s = t[{a, b}];
  s += c;
}

Tensor clean(Tensor t) {
  for (auto it = t.begin(); it != t.end();) it = it->second.is_zero() ? t.erase(it) : std::next(it);
  return t;
}

}  // namespace

TEST_CASE("free braided bialgebra on one generator") {
  auto chi = std::make_shared<Bicharacter>(cartan_bicharacter(CartanDatum::named("A1"), Scalar::q(), 0));
  FreeBraidedBialgebra t(chi, 1, 3);
  CHECK(t.basis().size() == 4);
  Scalar q = Scalar::q();
  Tensor d;
  for (const auto& term : t.coproduct(w({0, 0}))) add(d, term.left, term.right, term.coef);
  d = clean(d);
  CHECK(d.size() == 3);
  CHECK(d[{w({0, 0}), Word()}] == Scalar(1));
  CHECK(d[{w({0}), w({0})}] == Scalar(1) + q * q);
  CHECK(d[{Word(), w({0, 0})}] == Scalar(1));
  auto unit = t.coproduct(Word());
  REQUIRE(unit.size() == 1);
  CHECK(unit[0].left.empty());
  CHECK(unit[0].right.empty());
  CHECK(t.counit(w({0})).is_zero());
  CHECK_THROWS_AS(t.product(w({0, 0}), w({0, 0})), TruncationError);
}

TEST_CASE("shuffle coproduct is coassociative, multiplicative and has an antipode") {
  for (int l : {0, 3}) {
    Scalar base = l ? primitive_root(l) : Scalar::q();
    auto chi = std::make_shared<Bicharacter>(cartan_bicharacter(CartanDatum::named("A2"), base, l));
    FreeBraidedBialgebra t(chi, 1, 4);
    auto words = t.basis();
    auto deg_chi = [&](const Word& a, const Word& b) { return t.bicharacter()(t.degree(a), t.degree(b)); };
    for (const Word& x : words) {
      if (x.size() > 3) continue;
      // (Delta x id) Delta = (id x Delta) Delta, as maps to triple tensors
      std::map<std::tuple<Word, Word, Word>, Scalar> lhs, rhs;
      for (const auto& a : t.coproduct(x)) {
        for (const auto& b : t.coproduct(a.left)) lhs[{b.left, b.right, a.right}] += a.coef * b.coef;
        for (const auto& b : t.coproduct(a.right)) rhs[{a.left, b.left, b.right}] += a.coef * b.coef;
      }
      for (auto it = lhs.begin(); it != lhs.end();) it = it->second.is_zero() ? lhs.erase(it) : std::next(it);
      for (auto it = rhs.begin(); it != rhs.end();) it = it->second.is_zero() ? rhs.erase(it) : std::next(it);
      CHECK(lhs == rhs);
      // m(S x id)Delta = eps
      std::map<Word, Scalar> conv;
      for (const auto& a : t.coproduct(x)) {
        auto [s, rev] = t.antipode(a.left);
        conv[rev + a.right] += a.coef * s;
      }
      for (auto it = conv.begin(); it != conv.end();) it = it->second.is_zero() ? conv.erase(it) : std::next(it);
      if (x.empty()) {
        CHECK(conv.size() == 1);
      } else {
        CHECK(conv.empty());
      }
    }
    // Delta(xy) = Delta(x) Delta(y) with (a x b)(c x d) = chi(|b|,|c|) ac x bd
    for (const Word& x : words) {
      for (const Word& y : words) {
        if (x.size() + y.size() > 4) continue;
        Tensor lhs, rhs;
        for (const auto& term : t.coproduct(x + y)) add(lhs, term.left, term.right, term.coef);
        for (const auto& a : t.coproduct(x))
          for (const auto& b : t.coproduct(y))
            add(rhs, a.left + b.left, a.right + b.right, a.coef * b.coef * deg_chi(a.right, b.left));
        CHECK(clean(lhs) == clean(rhs));
      }
    }
  }
}

TEST_CASE("pairing values") {
  Scalar q = Scalar::q();
  auto n = generic("A1", 3);
  const LusztigPairing& p = n->pairing();
  Scalar d = q - q.inverse();
  CHECK(p(w({0}), w({0})) == d.inverse());
  CHECK(p(Word(), w({0})).is_zero());
  CHECK(p(Word(), Word()).is_one());
  CHECK(p(w({0, 0}), w({0, 0})) == (Scalar(1) + q * q) / (d * d));

  auto r = at_root("A1", 5, 6);
  Scalar e = primitive_root(5);
  CHECK(r->pairing()(w({0}), w({0})) == (e - e.inverse()).inverse());
  // long root of B2 uses q_i = q^2
  auto b2 = generic("B2", 2);
  CHECK(b2->pairing()(w({0}), w({0})) == (q * q - q.pow(-2)).inverse());
  CHECK(b2->pairing()(w({0}), w({1})).is_zero());
}

TEST_CASE("pairing rule orientation") {
  for (const char* type : {"A1", "A2", "B2"}) {
    auto n = generic(type, 4);
    int top = std::string(type) == "A1" ? 4 : 3;
    CHECK(first_rule_violation(n->pairing(), n->raising_free(), n->lowering_free(), top) == std::nullopt);
    CHECK(second_rule_violation(n->pairing(), n->raising_free(), n->lowering_free(), SecondRule::FirstLegWithLeft,
                                top) == std::nullopt);
  }
  // pairing f_(2) with the left factor is inconsistent with the first rule
  auto a2 = generic("A2", 3);
  auto bad = second_rule_violation(a2->pairing(), a2->raising_free(), a2->lowering_free(),
                                   SecondRule::SecondLegWithLeft, 2);
  REQUIRE(bad.has_value());
  CHECK(bad->lhs != bad->rhs);
}

TEST_CASE("rank one Hilbert series") {
  auto g = generic("A1", 8);
  CHECK(g->raising().hilbert_series() == std::vector<std::size_t>(9, 1));
  CHECK_FALSE(g->raising().finite());
  for (int l : {3, 5, 7}) {
    auto r = at_root("A1", l, l + 2);
    std::vector<std::size_t> expect(static_cast<std::size_t>(l) + 3, 0);
    for (int k = 0; k < l; ++k) expect[static_cast<std::size_t>(k)] = 1;
    CHECK(r->raising().hilbert_series() == expect);
    CHECK(r->raising().top_degree() == l - 1);
    // e^l = 0 and it is the only defining relation
    CHECK(r->raising().project(Word(static_cast<std::size_t>(l), '\0')).empty());
    REQUIRE(r->raising().relations().size() == 1);
    CHECK(r->raising().relations()[0].size() == 1);
    CHECK(r->raising().relations()[0][0].first.size() == static_cast<std::size_t>(l));
  }
}

TEST_CASE("rank two Hilbert series against PBW counts") {
  auto a2 = generic("A2", 6);
  CHECK(a2->raising().hilbert_series() == pbw_series({1, 1, 2}, 6));
  CHECK(a2->raising().hilbert_series() == std::vector<std::size_t>{1, 2, 4, 6, 9, 12, 16});
  auto b2 = generic("B2", 5);
  CHECK(b2->raising().hilbert_series() == pbw_series({1, 1, 2, 3}, 5));
  auto aa = generic("A1xA1", 5);
  CHECK(aa->raising().hilbert_series() == pbw_series({1, 1}, 5));

  auto r = at_root("A2", 3, 9);
  CHECK(r->raising().dim() == 27);
  CHECK(r->lowering().dim() == 27);
  CHECK(r->raising().top_degree() == 8);
  CHECK(r->raising().nondegenerate());
}

TEST_CASE("both quotients have the same Hilbert series") {
  for (const char* type : {"A2", "B2"}) {
    auto g = generic(type, 5);
    CHECK(g->raising().hilbert_series() == g->lowering().hilbert_series());
    CHECK(g->raising().nondegenerate());
  }
  auto r = at_root("A2", 3, 9);
  CHECK(r->raising().hilbert_series() == r->lowering().hilbert_series());
}

TEST_CASE("quantum Serre elements lie in the radical") {
  Scalar q = Scalar::q();
  for (const char* type : {"A1xA1", "A2", "B2", "G2"}) {
    auto g = generic(type, 2);
    CHECK(g->serre_in_radical());
  }
  auto a2 = generic("A2", 5);
  WordPoly s = a2->serre_element(0, 1);
  REQUIRE(s.size() == 3);
  // e1^2 e2 - (q + q^-1) e1 e2 e1 + e2 e1^2
  CHECK(s[0].first == w({0, 0, 1}));
  CHECK(s[0].second == Scalar(1));
  CHECK(s[1].first == w({0, 1, 0}));
  CHECK(s[1].second == -(q + q.inverse()));
  CHECK(s[2].first == w({1, 0, 0}));
  CHECK(a2->raising().is_zero(s));
  CHECK(a2->raising().radical_dims().at({2, 1}) == 1);
  // the Serre relations generate the radical in degrees <= 5
  CHECK(a2->raising().relations().size() == 2);
  // a wrong coefficient is not in the radical
  WordPoly wrong = s;
  wrong[1].second = -q;
  CHECK_FALSE(a2->in_radical(wrong));
  // degree of the B2 Serre elements: 1 - a_ij + 1 letters
  auto b2 = generic("B2", 4);
  CHECK(b2->serre_element(0, 1).front().first.size() == 3);
  CHECK(b2->serre_element(1, 0).front().first.size() == 4);
}

TEST_CASE("quotient structure maps") {
  auto r = at_root("A2", 3, 9);
  const NicholsAlgebra& b = r->raising();
  CHECK(r->radical_biideal_violation() == std::nullopt);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(b.dim() - 1));
  const Bicharacter& chi = b.bicharacter();
  for (int t = 0; t < 60; ++t) {
    std::uint32_t x = pick(rng), y = pick(rng);
    // Delta(xy) = Delta(x) Delta(y) in the quotient
    Accumulator<std::pair<std::uint32_t, std::uint32_t>> lhs, rhs;
    for (const auto& [k, c] : b.multiply(x, y)) {
      for (const auto& [kk, cc] : b.coproduct(k)) lhs.add(kk, c * cc);
    }
    for (const auto& [a, ca] : b.coproduct(x)) {
      for (const auto& [bb, cb] : b.coproduct(y)) {
        Scalar s = ca * cb * chi(b.degree(a.second), b.degree(bb.first));
        const Vec& left = b.multiply(a.first, bb.first);
        const Vec& right = b.multiply(a.second, bb.second);
        for (const auto& [u, cu] : left)
          for (const auto& [v, cv] : right) rhs.add({u, v}, s * cu * cv);
      }
    }
    CHECK(lhs.take() == rhs.take());
  }
  // unit
  auto one = b.index_of(Word());
  REQUIRE(one.has_value());
  for (std::uint32_t x = 0; x < b.dim(); ++x) CHECK(b.multiply(*one, x) == Vec{{x, Scalar(1)}});
}

TEST_CASE("truncation is reported, not dropped") {
  auto g = generic("A1", 3);
  auto e = g->raising().index_of(w({0, 0}));
  REQUIRE(e.has_value());
  CHECK_THROWS_AS(g->raising().multiply(*e, *e), TruncationError);
  auto r = at_root("A1", 3, 4);
  auto e2 = r->raising().index_of(w({0, 0}));
  REQUIRE(e2.has_value());
  CHECK(r->raising().multiply(*e2, *e2).empty());
}

TEST_CASE("report schema") {
  auto a2 = generic("A2", 6);
  nlohmann::json j = a2->report();
  CHECK(j["hilbert"] == nlohmann::json::array({1, 2, 4, 6, 9, 12, 16}));
  CHECK(j["serre_in_radical"] == true);
  CHECK(j["radical_dims"]["2,1"] == 1);
  CHECK(j["cutoff"] == 6);
  CHECK(j.contains("datum"));
  CHECK(j.contains("base"));
}
