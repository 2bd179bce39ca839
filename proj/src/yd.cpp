#include "braidhopf/yd.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace braidhopf {

namespace {

GradedMap tensor(std::initializer_list<GradedMap> maps) {
  auto it = maps.begin();
  GradedMap r = *it;
  for (++it; it != maps.end(); ++it) r = tensor_map(r, *it);
  return r;
}

GradedMap Id(const Object& o) { return GradedMap::identity(o); }

std::shared_ptr<const Bicharacter> chi_or_trivial(const std::shared_ptr<const Bicharacter>& chi) {
  if (chi) return chi;
  static const auto trivial = std::make_shared<const Bicharacter>(Bicharacter::trivial());
  return trivial;
}

std::string tensor_name(const SpacePtr& a, const SpacePtr& b) { return "(" + a->name() + "*" + b->name() + ")"; }

GradedMap zero_map(const Object& dom, const Object& cod) { return GradedMap(dom, cod); }

// Diagonal map b -> chi(g, |b|) b.
GradedMap grading_twist(const BasePtr& b, const GroupElem& g) {
  GradedMap r(b->obj(), b->obj());
  const Bicharacter& chi = b->space->bicharacter();
  for (std::size_t i = 0; i < b->space->dim(); ++i)
    r.set_column(i, {{static_cast<std::uint32_t>(i), chi(g, b->space->basis(i).degree)}});
  return r;
}

GradedMap inverse_map(const GradedMap& f) {
  auto inv = f.to_matrix().inverse();
  if (!inv) throw std::invalid_argument("map is not invertible");
  GradedMap r(f.codomain(), f.domain());
  for (std::size_t j = 0; j < inv->cols(); ++j) {
    Vec col;
    for (std::size_t i = 0; i < inv->rows(); ++i)
      if (!inv->at(i, j).is_zero()) col.emplace_back(static_cast<std::uint32_t>(i), inv->at(i, j));
    r.set_column(j, std::move(col));
  }
  return r;
}

HopfReport report(const std::string& subject, std::initializer_list<std::vector<CheckResult>> parts) {
  HopfReport r;
  r.algebra = subject;
  for (const auto& p : parts) r.checks.insert(r.checks.end(), p.begin(), p.end());
  return r;
}

const Bicharacter& chi_of(const SpacePtr& v) { return v->bicharacter(); }

GroupElem simple_root(const Bicharacter& chi, int i) {
  GroupElem g = chi.group().zero();
  g[static_cast<std::size_t>(i)] = 1;
  return g;
}

std::vector<CheckResult> algebra_checks(const SpacePtr& a, const GradedMap& m, const GradedMap& eta) {
  Object A(a);
  return {compare("algebra_associativity", compose(m, tensor({m, Id(A)})), compose(m, tensor({Id(A), m}))),
          compare("algebra_left_unit", compose(m, tensor({eta, Id(A)})), Id(A)),
          compare("algebra_right_unit", compose(m, tensor({Id(A), eta})), Id(A))};
}

std::vector<CheckResult> amodule_checks(const SpacePtr& a, const GradedMap& m, const GradedMap& eta, const Object& w,
                                        const GradedMap& action) {
  Object A(a);
  return {compare("module_associativity", compose(action, tensor({m, Id(w)})), compose(action, tensor({Id(A), action}))),
          compare("module_unit", compose(action, tensor({eta, Id(w)})), Id(w))};
}

}  // namespace

// ---------------------------------------------------------------- structure maps

std::optional<std::uint32_t> StructureMaps::index_of_word(const Word& w) const {
  auto it = std::find(words.begin(), words.end(), w);
  if (it == words.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - words.begin());
}

BasePtr structure_maps(const HopfAlgebra& a, const std::string& name) {
  if (!a.dim()) throw std::invalid_argument("structure maps need a finite algebra");
  std::size_t dim = *a.dim();
  auto chi = chi_or_trivial(a.braiding_ptr());
  std::vector<BasisVector> basis;
  for (std::uint32_t i = 0; i < dim; ++i)
    basis.push_back({a.label(i), a.braiding() ? a.degree(i) : chi->group().zero()});
  auto s = std::make_shared<StructureMaps>();
  s->name = name;
  s->space = std::make_shared<BraidedSpace>(name, chi, std::move(basis));
  Object B(s->space), I;
  s->m = GradedMap(B * B, B);
  s->eta = GradedMap(I, B);
  s->delta = GradedMap(B, B * B);
  s->eps = GradedMap(B, I);
  s->S = GradedMap(B, B);
  for (std::uint32_t x = 0; x < dim; ++x) {
    for (std::uint32_t y = 0; y < dim; ++y) s->m.set_column(x * dim + y, a.product(x, y));
    Accumulator<std::uint32_t> acc;
    for (const auto& [k, c] : a.coproduct(x)) acc.add(static_cast<std::uint32_t>(k.first * dim + k.second), c);
    s->delta.set_column(x, acc.take());
    Scalar e = a.counit(x);
    if (!e.is_zero()) s->eps.set_column(x, {{0, e}});
    s->S.set_column(x, a.antipode(x));
  }
  s->eta.set_column(0, a.one());
  s->S_inv = inverse_map(s->S);
  return s;
}

BasePtr nichols_structure_maps(const NicholsAlgebra& n, const std::string& name, const std::string& prefix,
                               std::optional<int> max_degree) {
  if (!max_degree && !n.finite()) throw std::invalid_argument("an infinite Nichols algebra needs a degree bound");
  int top = max_degree.value_or(n.cutoff());
  if (top > n.cutoff()) throw std::invalid_argument("degree bound beyond the Nichols cutoff");
  std::vector<std::uint32_t> keep;
  std::map<std::uint32_t, std::uint32_t> renum;
  for (std::uint32_t i = 0; i < n.dim(); ++i) {
    if (static_cast<int>(n.word(i).size()) > top) continue;
    renum[i] = static_cast<std::uint32_t>(keep.size());
    keep.push_back(i);
  }
  auto s = std::make_shared<StructureMaps>();
  s->name = name;
  s->truncated = !n.finite() || (n.top_degree() && *n.top_degree() > top);
  std::vector<BasisVector> basis;
  for (std::uint32_t i : keep) {
    basis.push_back({word_text(n.word(i), prefix), n.degree(i)});
    s->words.push_back(n.word(i));
  }
  s->space = std::make_shared<BraidedSpace>(name, n.bicharacter_ptr(), std::move(basis));
  std::size_t dim = keep.size();
  Object B(s->space), I;
  s->m = GradedMap(B * B, B);
  s->eta = GradedMap(I, B);
  s->delta = GradedMap(B, B * B);
  s->eps = GradedMap(B, I);
  s->S = GradedMap(B, B);
  auto remap = [&](const Vec& v) {
    Vec out;
    for (const auto& [k, c] : v) {
      auto it = renum.find(k);
      if (it != renum.end()) out.emplace_back(it->second, c);
    }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    return out;
  };
  for (std::uint32_t x = 0; x < dim; ++x) {
    for (std::uint32_t y = 0; y < dim; ++y) {
      Vec prod;
      if (n.word(keep[x]).size() + n.word(keep[y]).size() <= static_cast<std::size_t>(top)) {
        prod = remap(n.multiply(keep[x], keep[y]));
      }
      s->m.set_column(x * dim + y, std::move(prod));
    }
    Accumulator<std::uint32_t> acc;
    for (const auto& [k, c] : n.coproduct(keep[x]))
      acc.add(static_cast<std::uint32_t>(renum.at(k.first) * dim + renum.at(k.second)), c);
    s->delta.set_column(x, acc.take());
    if (n.word(keep[x]).empty()) s->eps.set_column(x, {{0, Scalar(1)}});
    s->S.set_column(x, remap(n.antipode(keep[x])));
  }
  s->eta.set_column(0, {{renum.at(*n.index_of(Word())), Scalar(1)}});
  s->S_inv = inverse_map(s->S);
  return s;
}

// ---------------------------------------------------------------- map helpers

GradedMap chain(std::initializer_list<GradedMap> maps) {
  auto it = maps.begin();
  GradedMap r = *it;
  for (++it; it != maps.end(); ++it) r = compose(*it, r);
  return r;
}

GradedMap id_map(const Object& o) { return GradedMap::identity(o); }

GradedMap retype(const GradedMap& f, const Object& dom, const Object& cod) {
  if (f.domain().dim() != dom.dim() || f.codomain().dim() != cod.dim())
    throw StructuralError("cannot read " + f.domain().str() + " -> " + f.codomain().str() + " as " + dom.str() +
                          " -> " + cod.str());
  GradedMap r(dom, cod);
  for (std::size_t j = 0; j < dom.dim(); ++j) r.set_column(j, f.column(j));
  return r;
}

SpacePtr flatten(const Object& o, const std::string& name) {
  if (o.is_unit()) throw StructuralError("cannot flatten the unit object");
  std::vector<BasisVector> basis;
  basis.reserve(o.dim());
  for (std::size_t i = 0; i < o.dim(); ++i) basis.push_back({o.label(i), o.degree(i)});
  return std::make_shared<BraidedSpace>(name, o.factors().front()->bicharacter_ptr(), std::move(basis));
}

std::optional<Difference> matrix_difference(const GradedMap& a, const GradedMap& b) {
  return first_difference(a, retype(b, a.domain(), a.codomain()));
}

CheckResult compare(const std::string& check, const GradedMap& lhs, const GradedMap& rhs) {
  CheckResult r;
  r.check = check;
  if (auto d = matrix_difference(lhs, rhs)) {
    r.pass = false;
    r.witness = d->to_json(lhs);
  }
  return r;
}

// ---------------------------------------------------------------- checkers

std::vector<CheckResult> check_left_module(const BasePtr& b, const Object& v, const GradedMap& action) {
  return amodule_checks(b->space, b->m, b->eta, v, action);
}

std::vector<CheckResult> check_right_module(const BasePtr& b, const Object& v, const GradedMap& action) {
  Object B = b->obj();
  return {compare("right_module_associativity", compose(action, tensor({Id(v), b->m})),
                  compose(action, tensor({action, Id(B)}))),
          compare("right_module_unit", compose(action, tensor({Id(v), b->eta})), Id(v))};
}

std::vector<CheckResult> check_left_comodule(const BasePtr& b, const Object& v, const GradedMap& coaction) {
  Object B = b->obj();
  return {compare("comodule_coassociativity", compose(tensor({b->delta, Id(v)}), coaction),
                  compose(tensor({Id(B), coaction}), coaction)),
          compare("comodule_counit", compose(tensor({b->eps, Id(v)}), coaction), Id(v))};
}

std::vector<CheckResult> check_right_comodule(const BasePtr& b, const Object& v, const GradedMap& coaction) {
  Object B = b->obj();
  return {compare("right_comodule_coassociativity", compose(tensor({Id(v), b->delta}), coaction),
                  compose(tensor({coaction, Id(B)}), coaction)),
          compare("right_comodule_counit", compose(tensor({Id(v), b->eps}), coaction), Id(v))};
}

CheckResult yd_condition(const YDModule& v) {
  const StructureMaps& b = *v.base;
  Object B = b.obj(), V(v.carrier);
  GradedMap lhs = chain({tensor({b.delta, v.coaction}), tensor({Id(B), braiding(B, B), Id(V)}), tensor({b.m, v.action})});
  GradedMap rhs = chain({tensor({b.delta, Id(V)}), tensor({Id(B), braiding(B, V)}), tensor({v.action, Id(B)}),
                         tensor({v.coaction, Id(B)}), tensor({Id(B), braiding(V, B)}), tensor({b.m, Id(V)})});
  return compare("yd_condition", lhs, rhs);
}

HopfReport check_yd(const YDModule& v) {
  Object V(v.carrier);
  return report(v.name, {check_left_module(v.base, V, v.action), check_left_comodule(v.base, V, v.coaction),
                         {yd_condition(v)}});
}

CheckResult right_yd_condition(const RightYDModule& v) {
  const StructureMaps& b = *v.base;
  Object B = b.obj(), V(v.carrier);
  // Diagonal right actions on B x V and V x B, and the half-braiding B x V -> V x B.
  GradedMap diag_bv = chain({tensor({Id(B), Id(V), b.delta}), tensor({Id(B), braiding(V, B), Id(B)}), tensor({b.m, v.action})});
  GradedMap diag_vb = chain({tensor({Id(V), Id(B), b.delta}), tensor({Id(V), braiding(B, B), Id(B)}), tensor({v.action, b.m})});
  GradedMap half = chain({tensor({Id(B), v.coaction}), tensor({braiding(B, V), Id(B)}), tensor({Id(V), b.m})});
  GradedMap embed = tensor({b.eta, Id(V), Id(B)});
  return compare("right_yd_condition", chain({embed, diag_bv, half}), chain({embed, tensor({half, Id(B)}), diag_vb}));
}

HopfReport check_right_yd(const RightYDModule& v) {
  Object V(v.carrier);
  return report(v.name, {check_right_module(v.base, V, v.action), check_right_comodule(v.base, V, v.coaction),
                         {right_yd_condition(v)}});
}

CheckResult hopf_module_condition(const HopfModule& v, HopfModuleKind kind) {
  const StructureMaps& b = *v.base;
  Object B = b.obj(), V(v.carrier);
  GradedMap lhs = compose(v.coaction, v.action);
  if (kind == HopfModuleKind::Regular) {
    return compare("hopf_module_compatibility", lhs,
                   chain({tensor({b.delta, v.coaction}), tensor({Id(B), braiding(B, B), Id(V)}), tensor({b.m, v.action})}));
  }
  return compare("trivial_coaction_compatibility", lhs,
                 chain({tensor({Id(B), v.coaction}), tensor({braiding(B, B), Id(V)}), tensor({Id(B), v.action})}));
}

HopfReport check_hopf_module(const HopfModule& v, HopfModuleKind kind) {
  Object V(v.carrier);
  return report(v.name, {check_left_module(v.base, V, v.action), check_left_comodule(v.base, V, v.coaction),
                         {hopf_module_condition(v, kind)}});
}

HopfReport check_bimodule(const Bimodule& v) {
  Object B = v.base->obj(), V(v.carrier);
  return report(v.name, {check_left_module(v.base, V, v.left), check_right_module(v.base, V, v.right),
                         {compare("bimodule_commute", compose(v.left, tensor({Id(B), v.right})),
                                  compose(v.right, tensor({v.left, Id(B)})))}});
}

HopfReport check_comodule_algebra(const ComoduleAlgebra& a) {
  const StructureMaps& b = *a.base;
  Object B = b.obj(), A(a.space);
  return report(a.name, {algebra_checks(a.space, a.m, a.eta), check_left_comodule(a.base, A, a.coaction),
                         {compare("coaction_multiplicative", compose(a.coaction, a.m),
                                  chain({tensor({a.coaction, a.coaction}), tensor({Id(B), braiding(A, B), Id(A)}),
                                         tensor({b.m, a.m})})),
                          compare("coaction_unital", compose(a.coaction, a.eta), tensor({b.eta, a.eta}))}});
}

HopfReport check_comodule_module(const ComoduleModule& w) {
  const ComoduleAlgebra& a = *w.algebra;
  const StructureMaps& b = *a.base;
  Object B = b.obj(), A(a.space), W(w.carrier);
  return report(w.name, {amodule_checks(a.space, a.m, a.eta, W, w.action), check_left_comodule(a.base, W, w.coaction),
                         {compare("comodule_compatibility", compose(w.coaction, w.action),
                                  chain({tensor({a.coaction, w.coaction}), tensor({Id(B), braiding(A, B), Id(W)}),
                                         tensor({b.m, w.action})}))}});
}

HopfReport check_module_algebra(const ModuleAlgebra& a) {
  const StructureMaps& b = *a.base;
  Object B = b.obj(), A(a.space);
  return report(a.name, {algebra_checks(a.space, a.m, a.eta), check_right_module(a.base, A, a.action),
                         {compare("product_linear", compose(a.action, tensor({a.m, Id(B)})),
                                  chain({tensor({Id(A), Id(A), b.delta}), tensor({Id(A), braiding(A, B), Id(B)}),
                                         tensor({a.action, a.action}), a.m})),
                          compare("unit_linear", compose(a.action, tensor({a.eta, Id(B)})), compose(a.eta, b.eps))}});
}

HopfReport check_module_module(const ModuleModule& w) {
  const ModuleAlgebra& a = *w.algebra;
  const StructureMaps& b = *a.base;
  Object B = b.obj(), A(a.space), W(w.carrier);
  return report(w.name, {amodule_checks(a.space, a.m, a.eta, W, w.action), check_right_module(a.base, W, w.right),
                         {compare("action_linear", compose(w.right, tensor({w.action, Id(B)})),
                                  chain({tensor({Id(A), Id(W), b.delta}), tensor({Id(A), braiding(W, B), Id(B)}),
                                         tensor({a.action, w.right}), w.action}))}});
}

GradedMap AlgebraModule::basis_action(std::uint32_t i) const {
  Object V(carrier);
  GradedMap r = Id(V);
  for (int g : algebra->factorization(i)) r = compose(r, generator_action.at(static_cast<std::size_t>(g)));
  return r;
}

GradedMap AlgebraModule::element_action(const Vec& v) const {
  Object V(carrier);
  GradedMap r = zero_map(V, V);
  for (const auto& [i, c] : v) r = add_maps(r, basis_action(i), c);
  return r;
}

nlohmann::json AlgebraModule::to_json() const {
  nlohmann::json gens = nlohmann::json::object();
  for (std::size_t g = 0; g < generator_action.size(); ++g)
    gens[algebra->generators()[g].name] = generator_action[g].to_json();
  return {{"name", name}, {"algebra", algebra->name()}, {"carrier", carrier->to_json()}, {"generators", gens}};
}

HopfReport check_algebra_module(const AlgebraModule& v, std::size_t structure_limit) {
  HopfReport r;
  r.algebra = v.name;
  Object V(v.carrier);
  CheckResult rel{"relations", true, nullptr};
  for (const Relation& rl : v.algebra->relations()) {
    GradedMap sum = zero_map(V, V);
    for (const auto& [mono, c] : rl.poly) {
      GradedMap t = Id(V);
      for (int g : mono) t = compose(t, v.generator_action.at(static_cast<std::size_t>(g)));
      sum = add_maps(sum, t, c);
    }
    if (auto d = first_difference(sum, zero_map(V, V))) {
      rel.pass = false;
      rel.witness = d->to_json(sum);
      rel.witness["relation"] = rl.name;
      break;
    }
  }
  r.checks.push_back(rel);
  auto dim = v.algebra->dim();
  if (dim && *dim <= structure_limit) {
    CheckResult sc{"structure_constants", true, nullptr};
    std::vector<GradedMap> rho;
    for (std::uint32_t i = 0; i < *dim; ++i) rho.push_back(v.basis_action(i));
    for (std::uint32_t x = 0; x < *dim && sc.pass; ++x) {
      for (std::uint32_t y = 0; y < *dim; ++y) {
        GradedMap lhs = compose(rho[x], rho[y]);
        GradedMap rhs = zero_map(V, V);
        for (const auto& [k, c] : v.algebra->product(x, y)) rhs = add_maps(rhs, rho[k], c);
        if (auto d = first_difference(lhs, rhs)) {
          sc.pass = false;
          sc.witness = d->to_json(lhs);
          sc.witness["product"] = v.algebra->label(x) + " * " + v.algebra->label(y);
          break;
        }
      }
    }
    r.checks.push_back(sc);
  }
  return r;
}

// ---------------------------------------------------------------- constructors

SpacePtr unit_space(const BasePtr& b) {
  const auto& chi = b->space->bicharacter_ptr();
  return std::make_shared<BraidedSpace>("k", chi, std::vector<BasisVector>{{"1", chi->group().zero()}});
}

YDModule trivial_yd(const BasePtr& b) {
  SpacePtr k = unit_space(b);
  Object K(k);
  return {"trivial", k, b, tensor({b->eps, Id(K)}), tensor({b->eta, Id(K)})};
}

YDModule regular_yd(const BasePtr& b) {
  Object B = b->obj();
  GradedMap ad = chain({tensor({b->delta, Id(B)}), tensor({Id(B), braiding(B, B)}), tensor({Id(B), Id(B), b->S}),
                        tensor({b->m, Id(B)}), b->m});
  return {"regular", b->space, b, ad, b->delta};
}

HopfModule regular_hopf_module(const BasePtr& b) { return {"regular", b->space, b, b->m, b->delta}; }

BasePtr with_unbraided_coproduct(const BasePtr& b) {
  if (b->words.empty()) throw std::invalid_argument("the base is not a Nichols algebra");
  Object B = b->obj();
  std::size_t dim = b->space->dim();
  GradedMap mm = chain({tensor({Id(B), swap_map(B, B), Id(B)}), tensor({b->m, b->m})});
  auto out = std::make_shared<StructureMaps>(*b);
  out->name = b->name + " unbraided";
  std::uint32_t one = *b->index_of_word(Word());
  for (std::size_t x = 0; x < dim; ++x) {
    Vec t{{static_cast<std::uint32_t>(one * dim + one), Scalar(1)}};
    for (char c : b->words[x]) {
      std::uint32_t f = *b->index_of_word(Word(1, c));
      Accumulator<std::uint32_t> acc;
      for (const auto& [k, s] : t) {
        for (std::uint32_t leg : {static_cast<std::uint32_t>(f * dim + one), static_cast<std::uint32_t>(one * dim + f)})
          acc.add_all(mm.column(k * dim * dim + leg), s);
      }
      t = acc.take();
    }
    out->delta.set_column(x, t);
  }
  return out;
}

YDModule twist_coaction(const YDModule& v, const GroupElem& g) {
  YDModule r = v;
  r.name = v.name + " twisted";
  r.coaction = compose(tensor({grading_twist(v.base, g), Id(Object(v.carrier))}), v.coaction);
  return r;
}

RightYDModule trivial_right_yd(const BasePtr& b) {
  SpacePtr k = unit_space(b);
  Object K(k);
  return {"trivial", k, b, tensor({Id(K), b->eps}), tensor({Id(K), b->eta})};
}

namespace {
// v x b -> S(b(1)) v b(2)
GradedMap right_adjoint(const BasePtr& b) {
  Object B = b->obj();
  return chain({tensor({Id(B), b->delta}), tensor({braiding(B, B), Id(B)}), tensor({b->S, Id(B), Id(B)}),
                tensor({b->m, Id(B)}), b->m});
}
}  // namespace

RightYDModule regular_right_yd(const BasePtr& b) { return {"regular", b->space, b, right_adjoint(b), b->delta}; }

LeftModule regular_left_module(const BasePtr& b) { return {"regular", b->space, b, b->m}; }

LeftModule trivial_left_module(const BasePtr& b) {
  SpacePtr k = unit_space(b);
  return {"trivial", k, b, tensor({b->eps, Id(Object(k))})};
}

Bimodule regular_bimodule(const BasePtr& b) { return {"regular", b->space, b, b->m, b->m}; }

Bimodule trivial_bimodule(const BasePtr& b) {
  SpacePtr k = unit_space(b);
  Object K(k);
  return {"trivial", k, b, tensor({b->eps, Id(K)}), tensor({Id(K), b->eps})};
}

// ---------------------------------------------------------------- monoidal structure

YDModule yd_tensor(const YDModule& v, const YDModule& w) {
  if (v.base != w.base) throw StructuralError("YD modules over different bases");
  const StructureMaps& b = *v.base;
  Object B = b.obj(), V(v.carrier), W(w.carrier);
  SpacePtr vw = flatten(V * W, tensor_name(v.carrier, w.carrier));
  GradedMap act = chain({tensor({b.delta, Id(V), Id(W)}), tensor({Id(B), braiding(B, V), Id(W)}), tensor({v.action, w.action})});
  GradedMap coact = chain({tensor({v.coaction, w.coaction}), tensor({Id(B), braiding(V, B), Id(W)}), tensor({b.m, Id(V), Id(W)})});
  return {v.name + "*" + w.name, vw, v.base, retype(act, B * Object(vw), Object(vw)),
          retype(coact, Object(vw), B * Object(vw))};
}

GradedMap yd_braiding(const YDModule& v, const YDModule& w) {
  Object B = v.base->obj(), V(v.carrier), W(w.carrier);
  return chain({tensor({v.coaction, Id(W)}), tensor({Id(B), braiding(V, W)}), tensor({w.action, Id(V)})});
}

CheckResult yd_braid_relation(const YDModule& u, const YDModule& v, const YDModule& w) {
  Object U(u.carrier), V(v.carrier), W(w.carrier);
  GradedMap lhs = chain({tensor({yd_braiding(u, v), Id(W)}), tensor({Id(V), yd_braiding(u, w)}),
                         tensor({yd_braiding(v, w), Id(U)})});
  GradedMap rhs = chain({tensor({Id(U), yd_braiding(v, w)}), tensor({yd_braiding(u, w), Id(V)}),
                         tensor({Id(W), yd_braiding(u, v)})});
  return compare("braid_relation", lhs, rhs);
}

RightModule flip_module(const LeftModule& v) {
  Object B = v.base->obj(), V(v.carrier);
  return {v.name + " flipped", v.carrier, v.base, chain({tensor({Id(V), v.base->S}), braiding(V, B), v.action})};
}

LeftModule unflip_module(const RightModule& v) {
  Object B = v.base->obj(), V(v.carrier);
  return {v.name + " unflipped", v.carrier, v.base,
          chain({tensor({v.base->S_inv, Id(V)}), braiding_inverse(V, B), v.action})};
}

// ---------------------------------------------------------------- center actions

ComoduleAlgebra regular_comodule_algebra(const BasePtr& b) {
  return {b->name, b->space, b, b->m, b->eta, b->delta};
}

ComoduleAlgebra trivial_comodule_algebra(const BasePtr& b) {
  return {b->name + "^triv", b->space, b, b->m, b->eta, tensor({b->eta, Id(b->obj())})};
}

ComoduleModule regular_comodule_module(std::shared_ptr<const ComoduleAlgebra> a) {
  return {a->name, a->space, a, a->m, a->coaction};
}

ComoduleModule center_action(const YDModule& v, const ComoduleModule& w) {
  const ComoduleAlgebra& a = *w.algebra;
  if (v.base != a.base) throw StructuralError("YD module and comodule algebra over different bases");
  const StructureMaps& b = *v.base;
  Object B = b.obj(), A(a.space), V(v.carrier), W(w.carrier);
  SpacePtr vw = flatten(V * W, tensor_name(v.carrier, w.carrier));
  GradedMap act = chain({tensor({a.coaction, Id(V), Id(W)}), tensor({Id(B), braiding(A, V), Id(W)}), tensor({v.action, w.action})});
  GradedMap coact = chain({tensor({v.coaction, w.coaction}), tensor({Id(B), braiding(V, B), Id(W)}), tensor({b.m, Id(V), Id(W)})});
  return {v.name + "|>" + w.name, vw, w.algebra, retype(act, A * Object(vw), Object(vw)),
          retype(coact, Object(vw), B * Object(vw))};
}

HopfModule as_hopf_module(const ComoduleModule& w) {
  if (w.algebra->space != w.algebra->base->space) throw StructuralError("the algebra is not the base algebra");
  Object B = w.algebra->base->obj(), W(w.carrier);
  return {w.name, w.carrier, w.algebra->base, retype(w.action, B * W, W), w.coaction};
}

std::vector<CheckResult> center_coherence(const YDModule& v, const YDModule& v2, const ComoduleModule& w) {
  ComoduleModule joint = center_action(yd_tensor(v, v2), w);
  ComoduleModule nested = center_action(v, center_action(v2, w));
  ComoduleModule unit = center_action(trivial_yd(v.base), w);
  return {compare("associativity_action", joint.action, nested.action),
          compare("associativity_coaction", joint.coaction, nested.coaction),
          compare("unit_action", unit.action, w.action), compare("unit_coaction", unit.coaction, w.coaction)};
}

ModuleAlgebra adjoint_module_algebra(const BasePtr& b) {
  return {b->name + "^ad", b->space, b, b->m, b->eta, right_adjoint(b)};
}

ModuleModule regular_module_module(std::shared_ptr<const ModuleAlgebra> a) {
  return {a->name, a->space, a, a->m, a->action};
}

ModuleModule center_action(const RightYDModule& v, const ModuleModule& w) {
  const ModuleAlgebra& a = *w.algebra;
  if (v.base != a.base) throw StructuralError("YD module and module algebra over different bases");
  const StructureMaps& b = *v.base;
  Object B = b.obj(), A(a.space), V(v.carrier), W(w.carrier);
  SpacePtr vw = flatten(V * W, tensor_name(v.carrier, w.carrier));
  GradedMap act = chain({tensor({Id(A), v.coaction, Id(W)}), tensor({braiding(A, V), Id(B), Id(W)}),
                         tensor({Id(V), a.action, Id(W)}), tensor({Id(V), w.action})});
  GradedMap right = chain({tensor({Id(V), Id(W), b.delta}), tensor({Id(V), braiding(W, B), Id(B)}), tensor({v.action, w.right})});
  return {v.name + "|>" + w.name, vw, w.algebra, retype(act, A * Object(vw), Object(vw)),
          retype(right, Object(vw) * B, Object(vw))};
}

// ---------------------------------------------------------------- weight modules

namespace {

int required_generator(const HopfAlgebra& a, const std::string& name) {
  int g = a.generator_index(name);
  if (g < 0) throw std::invalid_argument(a.name() + " has no generator " + name);
  return g;
}

GradedMap diagonal(const SpacePtr& v, const std::function<Scalar(const GroupElem&)>& f) {
  Object V(v);
  GradedMap r(V, V);
  for (std::size_t i = 0; i < v->dim(); ++i) {
    Scalar c = f(v->basis(i).degree);
    if (!c.is_zero()) r.set_column(i, {{static_cast<std::uint32_t>(i), c}});
  }
  return r;
}

// Restriction of B x V -> V to a fixed basis element of B.
GradedMap act_by(const GradedMap& action, std::size_t b_index, const SpacePtr& v) {
  Object V(v);
  GradedMap r(V, V);
  for (std::size_t j = 0; j < v->dim(); ++j) r.set_column(j, action.column(b_index * v->dim() + j));
  return r;
}

std::uint32_t letter_index(const StructureMaps& b, int i) {
  auto x = b.index_of_word(Word(1, static_cast<char>(i)));
  if (!x) throw std::invalid_argument(b.name + " has no generator letter " + std::to_string(i + 1));
  return *x;
}

}  // namespace

AlgebraModule yd_to_weight_module(const YDModule& v, const NicholsPair& pair, std::shared_ptr<const HopfAlgebra> target) {
  const StructureMaps& b = *v.base;
  if (b.words.empty()) throw std::invalid_argument("the base is not a Nichols algebra");
  const Bicharacter& chi = chi_of(v.carrier);
  int rank = pair.datum().rank();
  std::size_t n = v.carrier->dim();
  AlgebraModule out{v.name + " as weight module", v.carrier, target, {}};
  Object V(v.carrier);
  out.generator_action.assign(target->generators().size(), GradedMap(V, V));
  for (int i = 0; i < rank; ++i) {
    std::string s = std::to_string(i + 1);
    GroupElem ai = simple_root(chi, i);
    std::uint32_t fi = letter_index(b, i);
    Word letter(1, static_cast<char>(i));
    Scalar ev = pair.pairing()(letter, letter);
    GradedMap e(V, V);
    for (std::size_t j = 0; j < n; ++j) {
      Accumulator<std::uint32_t> acc;
      for (const auto& [k, c] : v.coaction.column(j)) {
        if (k / n != fi) continue;
        std::uint32_t v0 = static_cast<std::uint32_t>(k % n);
        acc.add(v0, c * ev * chi(ai, v.carrier->basis(v0).degree));
      }
      e.set_column(j, acc.take());
    }
    out.generator_action[static_cast<std::size_t>(required_generator(*target, "E" + s))] = e;
    out.generator_action[static_cast<std::size_t>(required_generator(*target, "F" + s))] = act_by(v.action, fi, v.carrier);
    out.generator_action[static_cast<std::size_t>(required_generator(*target, "K" + s))] =
        diagonal(v.carrier, [&](const GroupElem& d) { return chi(ai, d); });
    out.generator_action[static_cast<std::size_t>(required_generator(*target, "K" + s + "^-1"))] =
        diagonal(v.carrier, [&](const GroupElem& d) { return chi(ai, d).inverse(); });
  }
  return out;
}

YDModule weight_module_to_yd(const AlgebraModule& w, const NicholsPair& pair, const BasePtr& base) {
  const StructureMaps& b = *base;
  if (b.words.empty()) throw std::invalid_argument("the base is not a Nichols algebra");
  const Bicharacter& chi = chi_of(w.carrier);
  const HopfAlgebra& alg = *w.algebra;
  int rank = pair.datum().rank();
  std::size_t n = w.carrier->dim();
  Object V(w.carrier), B = b.obj();
  std::vector<GradedMap> f, t;
  for (int i = 0; i < rank; ++i) {
    std::string s = std::to_string(i + 1);
    GroupElem ai = simple_root(chi, i);
    f.push_back(w.generator_action[static_cast<std::size_t>(required_generator(alg, "F" + s))]);
    // T_i v = <v(-1), e_i> v(0) recovered from E_i.
    GradedMap e = w.generator_action[static_cast<std::size_t>(required_generator(alg, "E" + s))];
    GradedMap scale = diagonal(w.carrier, [&](const GroupElem& d) { return chi(ai, d).inverse(); });
    t.push_back(compose(scale, e));
  }
  auto word_map = [&](const std::vector<GradedMap>& letters, const Word& word, bool reversed) {
    GradedMap r = Id(V);
    for (char c : word) {
      const GradedMap& x = letters[static_cast<std::size_t>(static_cast<unsigned char>(c))];
      r = reversed ? compose(x, r) : compose(r, x);
    }
    return r;
  };

  GradedMap action(B * V, V);
  for (std::size_t x = 0; x < b.words.size(); ++x) {
    GradedMap rho = word_map(f, b.words[x], false);
    for (std::size_t j = 0; j < n; ++j) action.set_column(x * n + j, rho.column(j));
  }

  // delta(v) = sum_f f x v_f with <f, e> v_f summed over f equal to T_e v.
  std::map<Multidegree, std::vector<std::uint32_t>> pieces;
  for (std::uint32_t x = 0; x < b.words.size(); ++x) pieces[multidegree_of(b.words[x], rank)].push_back(x);
  std::vector<Accumulator<std::uint32_t>> cols(n);
  const NicholsAlgebra& raising = pair.raising();
  for (const auto& [mdeg, fidx] : pieces) {
    auto it = raising.pieces().find(mdeg);
    if (it == raising.pieces().end() || it->second.basis.size() != fidx.size())
      throw std::invalid_argument("pairing degenerate in degree " + multidegree_key(mdeg));
    std::vector<Word> ewords;
    for (std::uint32_t e : it->second.basis) ewords.push_back(raising.word(e));
    std::size_t r = fidx.size();
    Matrix g(r, r);
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t c = 0; c < r; ++c) g.at(a, c) = pair.pairing()(b.words[fidx[a]], ewords[c]);
    auto ginv = g.inverse();
    if (!ginv) throw std::invalid_argument("pairing degenerate in degree " + multidegree_key(mdeg));
    std::vector<GradedMap> te;
    for (const Word& e : ewords) te.push_back(word_map(t, e, true));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t c = 0; c < r; ++c) {
        for (const auto& [k, val] : te[c].column(j)) {
          for (std::size_t a = 0; a < r; ++a) {
            const Scalar& gi = ginv->at(c, a);
            if (gi.is_zero()) continue;
            cols[j].add(static_cast<std::uint32_t>(fidx[a] * n + k), val * gi);
          }
        }
      }
    }
  }
  GradedMap coaction(V, B * V);
  for (std::size_t j = 0; j < n; ++j) coaction.set_column(j, cols[j].take());
  return {w.name + " as YD module", w.carrier, base, action, coaction};
}

AlgebraModule sl2_irreducible(std::shared_ptr<const HopfAlgebra> target, std::shared_ptr<const Bicharacter> chi, int n) {
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("highest weight must be an even multiple of alpha/2");
  std::vector<BasisVector> basis;
  for (int k = 0; k <= n; ++k) basis.push_back({"v" + std::to_string(k), chi->group().reduce({n / 2 - k})});
  auto space = std::make_shared<BraidedSpace>("L(" + std::to_string(n) + ")", chi, std::move(basis));
  Object V(space);
  Scalar q = chi->power(1);
  GradedMap e(V, V), f(V, V), k(V, V), kinv(V, V);
  for (int j = 0; j <= n; ++j) {
    auto u = static_cast<std::uint32_t>(j);
    k.set_column(u, {{u, q.pow(n - 2 * j)}});
    kinv.set_column(u, {{u, q.pow(2 * j - n)}});
    if (j < n) f.set_column(u, {{u + 1, quantum_integer(j + 1, q)}});
    if (j > 0) e.set_column(u, {{u - 1, quantum_integer(n - j + 1, q)}});
  }
  AlgebraModule out{space->name(), space, target, {}};
  out.generator_action.assign(target->generators().size(), GradedMap(V, V));
  out.generator_action[static_cast<std::size_t>(required_generator(*target, "E1"))] = e;
  out.generator_action[static_cast<std::size_t>(required_generator(*target, "F1"))] = f;
  out.generator_action[static_cast<std::size_t>(required_generator(*target, "K1"))] = k;
  out.generator_action[static_cast<std::size_t>(required_generator(*target, "K1^-1"))] = kinv;
  return out;
}

// ---------------------------------------------------------------- bimodules

AlgebraModule bimodule_to_bbh_module(const Bimodule& m, std::shared_ptr<const HopfAlgebra> bbh) {
  const StructureMaps& b = *m.base;
  const Bicharacter& chi = chi_of(m.carrier);
  int rank = chi.group().rank();
  Object V(m.carrier);
  std::size_t n = m.carrier->dim();
  AlgebraModule out{m.name + " as BBH module", m.carrier, bbh, {}};
  out.generator_action.assign(bbh->generators().size(), GradedMap(V, V));
  for (int i = 0; i < rank; ++i) {
    std::string s = std::to_string(i + 1);
    GroupElem ai = simple_root(chi, i);
    std::uint32_t fi = letter_index(b, i);
    const GroupElem& fdeg = b.space->basis(fi).degree;
    // v . S^{-1}(f_i), scaled by chi(|v|, |f_i|)^{-1}
    const Vec& sinv = b.S_inv.column(fi);
    GradedMap d(V, V);
    for (std::size_t j = 0; j < n; ++j) {
      Accumulator<std::uint32_t> acc;
      Scalar scale = chi(m.carrier->basis(j).degree, fdeg).inverse();
      for (const auto& [x, c] : sinv) acc.add_all(m.right.column(j * b.space->dim() + x), c * scale);
      d.set_column(j, acc.take());
    }
    out.generator_action[static_cast<std::size_t>(required_generator(*bbh, "d" + s))] = d;
    out.generator_action[static_cast<std::size_t>(required_generator(*bbh, "b" + s))] = act_by(m.left, fi, m.carrier);
    out.generator_action[static_cast<std::size_t>(required_generator(*bbh, "k" + s))] =
        diagonal(m.carrier, [&](const GroupElem& g) { return chi(ai, g); });
    out.generator_action[static_cast<std::size_t>(required_generator(*bbh, "k" + s + "^-1"))] =
        diagonal(m.carrier, [&](const GroupElem& g) { return chi(ai, g).inverse(); });
  }
  return out;
}

Bimodule bimodule_tensor(const Bimodule& m, const Bimodule& n) {
  if (m.base != n.base) throw StructuralError("bimodules over different bases");
  const StructureMaps& b = *m.base;
  Object B = b.obj(), M(m.carrier), N(n.carrier);
  SpacePtr mn = flatten(M * N, tensor_name(m.carrier, n.carrier));
  GradedMap left = chain({tensor({b.delta, Id(M), Id(N)}), tensor({Id(B), braiding(B, M), Id(N)}), tensor({m.left, n.left})});
  GradedMap right = chain({tensor({Id(M), Id(N), b.delta}), tensor({Id(M), braiding(N, B), Id(B)}), tensor({m.right, n.right})});
  return {m.name + "*" + n.name, mn, m.base, retype(left, B * Object(mn), Object(mn)),
          retype(right, Object(mn) * B, Object(mn))};
}

AlgebraModule algebra_module_tensor(const AlgebraModule& v, const AlgebraModule& w) {
  if (v.algebra != w.algebra) throw StructuralError("modules over different algebras");
  Object V(v.carrier), W(w.carrier);
  SpacePtr vw = flatten(V * W, tensor_name(v.carrier, w.carrier));
  Object VW(vw);
  AlgebraModule out{v.name + "*" + w.name, vw, v.algebra, {}};
  std::map<std::uint32_t, GradedMap> cache_v, cache_w;
  auto rho = [](const AlgebraModule& m, std::map<std::uint32_t, GradedMap>& cache, std::uint32_t i) -> const GradedMap& {
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, m.basis_action(i)).first;
    return it->second;
  };
  for (const Generator& g : v.algebra->generators()) {
    GradedMap sum(VW, VW);
    for (const auto& [k, c] : g.coproduct) {
      GradedMap t = tensor({rho(v, cache_v, k.first), rho(w, cache_w, k.second)});
      sum = add_maps(sum, retype(t, VW, VW), c);
    }
    out.generator_action.push_back(sum);
  }
  return out;
}

// ---------------------------------------------------------------- JSON

nlohmann::json YDModule::to_json() const {
  return {{"name", name},
          {"base", base->name},
          {"carrier", carrier->to_json()},
          {"action", action.to_json()},
          {"coaction", coaction.to_json()}};
}

YDModule YDModule::from_json(const nlohmann::json& j, BasePtr base) {
  if (j.at("base").get<std::string>() != base->name) throw std::invalid_argument("module base mismatch");
  SpacePtr carrier = BraidedSpace::from_json(j.at("carrier"));
  if (!carrier->bicharacter().same_as(base->space->bicharacter()))
    throw std::invalid_argument("module carrier grading differs from its base");
  Object B = base->obj(), V(carrier);
  Field f = base->space->bicharacter().field();
  return {j.at("name").get<std::string>(), carrier, base, GradedMap::from_json(j.at("action"), B * V, V, f),
          GradedMap::from_json(j.at("coaction"), V, B * V, f)};
}

}  // namespace braidhopf
