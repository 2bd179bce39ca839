#include "braidhopf/braided.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace braidhopf {

// ---------------------------------------------------------------- CartanDatum

CartanDatum::CartanDatum(std::vector<std::vector<int>> form, std::string name)
    : form_(std::move(form)), name_(std::move(name)) {
  std::size_t n = form_.size();
  if (n == 0) throw std::invalid_argument("Cartan datum must have positive rank");
  for (std::size_t i = 0; i < n; ++i) {
    if (form_[i].size() != n) throw std::invalid_argument("Cartan form must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    int d = form_[i][i];
    if (d <= 0 || d % 2 != 0) throw std::invalid_argument("i.i must be even and positive");
    for (std::size_t j = 0; j < n; ++j) {
      if (form_[i][j] != form_[j][i]) throw std::invalid_argument("Cartan form must be symmetric");
      if (i == j) continue;
      if ((2 * form_[i][j]) % d != 0 || form_[i][j] > 0) {
        throw std::invalid_argument("a_ij = 2(i.j)/(i.i) must be a non-positive integer");
      }
    }
  }
  if (name_.empty()) name_ = "custom";
}

namespace {

std::vector<std::vector<int>> simple_form(char family, int n) {
  auto sz = static_cast<std::size_t>(n);
  std::vector<std::vector<int>> f(sz, std::vector<int>(sz, 0));
  auto set = [&](int i, int j, int v) {
    f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    f[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
  };
  switch (family) {
    case 'A':
      if (n < 1) break;
      for (int i = 0; i < n; ++i) set(i, i, 2);
      for (int i = 0; i + 1 < n; ++i) set(i, i + 1, -1);
      return f;
    case 'B':
      if (n < 2) break;
      for (int i = 0; i + 1 < n; ++i) set(i, i, 4);
      set(n - 1, n - 1, 2);
      for (int i = 0; i + 1 < n; ++i) set(i, i + 1, -2);
      return f;
    case 'C':
      if (n < 2) break;
      for (int i = 0; i + 1 < n; ++i) set(i, i, 2);
      set(n - 1, n - 1, 4);
      for (int i = 0; i + 2 < n; ++i) set(i, i + 1, -1);
      set(n - 2, n - 1, -2);
      return f;
    case 'D':
      if (n < 4) break;
      for (int i = 0; i < n; ++i) set(i, i, 2);
      for (int i = 0; i + 2 < n - 1; ++i) set(i, i + 1, -1);
      set(n - 3, n - 2, -1);
      set(n - 3, n - 1, -1);
      return f;
    case 'G':
      if (n != 2) break;
      set(0, 0, 2);
      set(1, 1, 6);
      set(0, 1, -3);
      return f;
    default:
      break;
  }
  throw std::invalid_argument(std::string("unsupported Cartan type ") + family + std::to_string(n));
}

}  // namespace

CartanDatum CartanDatum::named(const std::string& type) {
  std::vector<std::vector<std::vector<int>>> blocks;
  std::size_t pos = 0;
  std::string s;
  for (char c : type) {
    if (c != '_' && !std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty Cartan type");
  while (pos < s.size()) {
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos++])));
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("malformed Cartan type '" + type + "'");
    int n = std::stoi(s.substr(start, pos - start));
    blocks.push_back(simple_form(fam, n));
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != '+' && s[pos] != '*') {
        throw std::invalid_argument("malformed Cartan type '" + type + "'");
      }
      ++pos;
      if (pos == s.size()) throw std::invalid_argument("malformed Cartan type '" + type + "'");
    }
  }
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.size();
  std::vector<std::vector<int>> form(total, std::vector<int>(total, 0));
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) form[off + i][off + j] = b[i][j];
    off += b.size();
  }
  std::string name;
  for (char c : s) name += (c == '+' || c == '*') ? 'x' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto& c : name) {
    if (c == 'X') c = 'x';
  }
  return CartanDatum(std::move(form), name);
}

long long CartanDatum::dot(const GroupElem& a, const GroupElem& b) const {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) s += static_cast<long long>(a[i]) * form_[i][j] * b[j];
  }
  return s;
}

nlohmann::json CartanDatum::to_json() const { return {{"name", name_}, {"form", form_}}; }

CartanDatum CartanDatum::from_json(const nlohmann::json& j) {
  if (j.is_string()) return named(j.get<std::string>());
  if (j.contains("type")) return named(j.at("type").get<std::string>());
  return CartanDatum(j.at("form").get<std::vector<std::vector<int>>>(), j.value("name", std::string("custom")));
}

// ---------------------------------------------------------------- GradingGroup

GroupElem GradingGroup::unit(int i) const {
  GroupElem g = zero();
  g[static_cast<std::size_t>(i)] = 1;
  return reduce(std::move(g));
}

GroupElem GradingGroup::reduce(GroupElem g) const {
  if (modulus_ > 0) {
    for (auto& x : g) x = ((x % modulus_) + modulus_) % modulus_;
  }
  return g;
}

GroupElem GradingGroup::add(const GroupElem& a, const GroupElem& b) const {
  if (a.empty()) return b;
  if (b.empty()) return a;
  GroupElem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return reduce(std::move(r));
}

GroupElem GradingGroup::neg(const GroupElem& a) const {
  GroupElem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return reduce(std::move(r));
}

// ---------------------------------------------------------------- Bicharacter

Bicharacter::Bicharacter(GradingGroup group, std::vector<std::vector<int>> form, Scalar base)
    : group_(group), form_(std::move(form)), base_(std::move(base)) {
  if (static_cast<int>(form_.size()) != group_.rank()) throw std::invalid_argument("form rank differs from group rank");
  if (group_.modulus() > 0) {
    if (!base_.pow(group_.modulus()).is_one()) {
      throw std::invalid_argument("base is not an l-th root of unity");
    }
    Scalar p(1);
    for (int i = 0; i < group_.modulus(); ++i) {
      cyclic_powers_.push_back(p);
      p *= base_;
    }
  }
}

Bicharacter Bicharacter::trivial() { return Bicharacter(GradingGroup(0, 0), {}, Scalar(1)); }

Field Bicharacter::field() const { return base_.field(); }

long long Bicharacter::exponent(const GroupElem& g, const GroupElem& h) const {
  long long s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == 0) continue;
    for (std::size_t j = 0; j < h.size(); ++j) s += static_cast<long long>(g[i]) * form_[i][j] * h[j];
  }
  return s;
}

Scalar Bicharacter::power(long long e) const {
  if (e == 0) return Scalar(1);
  if (!cyclic_powers_.empty()) {
    long long l = static_cast<long long>(cyclic_powers_.size());
    return cyclic_powers_[static_cast<std::size_t>(((e % l) + l) % l)];
  }
  if (base_.is_one()) return Scalar(1);
  if (base_.as_ratfunc() != nullptr && base_ == Scalar::q()) return Scalar(RatFunc::q_power(static_cast<int>(e)));
  return base_.pow(e);
}

bool Bicharacter::same_as(const Bicharacter& o) const {
  return this == &o || (group_ == o.group_ && form_ == o.form_ && base_ == o.base_);
}

Bicharacter cartan_bicharacter(const CartanDatum& datum, const Scalar& base, int modulus) {
  return Bicharacter(GradingGroup(datum.rank(), modulus), datum.form(), base);
}

// ---------------------------------------------------------------- BraidedSpace

BraidedSpace::BraidedSpace(std::string name, std::shared_ptr<const Bicharacter> chi, std::vector<BasisVector> basis)
    : name_(std::move(name)), chi_(std::move(chi)), basis_(std::move(basis)) {
  std::set<std::string> seen;
  for (auto& b : basis_) {
    if (!seen.insert(b.name).second) throw std::invalid_argument("duplicate basis name " + b.name);
    if (b.degree.empty()) b.degree = chi_->group().zero();
    if (static_cast<int>(b.degree.size()) != chi_->group().rank()) {
      throw std::invalid_argument("degree of " + b.name + " has the wrong length");
    }
    b.degree = chi_->group().reduce(b.degree);
  }
}

nlohmann::json BraidedSpace::to_json() const {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : basis_) basis.push_back({{"name", b.name}, {"degree", b.degree}});
  const auto& g = chi_->group();
  nlohmann::json mod = g.modulus() > 0 ? nlohmann::json(g.modulus()) : nlohmann::json(nullptr);
  return {{"name", name_},
          {"field", chi_->field().to_json()},
          {"group", {{"rank", g.rank()}, {"modulus", mod}}},
          {"cartan", chi_->form()},
          {"base", chi_->base().str()},
          {"basis", basis}};
}

std::shared_ptr<BraidedSpace> BraidedSpace::from_json(const nlohmann::json& j) {
  const auto& g = j.at("group");
  int rank = g.at("rank").get<int>();
  int modulus = g.at("modulus").is_null() ? 0 : g.at("modulus").get<int>();
  Field f = j.contains("field") ? Field::from_json(j.at("field"))
                                : (modulus > 0 ? Field::cyclotomic(modulus) : Field::rational_functions());
  auto form = j.at("cartan").get<std::vector<std::vector<int>>>();
  Scalar base = Scalar::parse(j.at("base").get<std::string>(), f);
  auto chi = std::make_shared<Bicharacter>(GradingGroup(rank, modulus), form, base);
  std::vector<BasisVector> basis;
  for (const auto& b : j.at("basis")) basis.push_back({b.at("name").get<std::string>(), b.at("degree").get<GroupElem>()});
  return std::make_shared<BraidedSpace>(j.value("name", std::string("V")), chi, std::move(basis));
}

// ---------------------------------------------------------------- Object

Object::Object(std::vector<SpacePtr> factors) : factors_(std::move(factors)) {
  dim_ = 1;
  for (const auto& f : factors_) dim_ *= f->dim();
}

Object::Object(SpacePtr single) : Object(std::vector<SpacePtr>{std::move(single)}) {}

std::vector<std::size_t> Object::split(std::size_t index) const {
  std::vector<std::size_t> parts(factors_.size());
  for (std::size_t k = factors_.size(); k-- > 0;) {
    std::size_t d = factors_[k]->dim();
    parts[k] = index % d;
    index /= d;
  }
  return parts;
}

std::size_t Object::join(const std::vector<std::size_t>& parts) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) idx = idx * factors_[k]->dim() + parts[k];
  return idx;
}

GroupElem Object::degree(std::size_t index) const {
  GroupElem d;
  auto parts = split(index);
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const auto& g = factors_[k]->bicharacter().group();
    d = g.add(d, factors_[k]->basis(parts[k]).degree);
  }
  return d;
}

std::string Object::label(std::size_t index) const {
  if (factors_.empty()) return "1";
  auto parts = split(index);
  std::string s;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) s += "|";
    s += factors_[k]->basis(parts[k]).name;
  }
  return s;
}

std::string Object::str() const {
  if (factors_.empty()) return "I";
  std::string s;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) s += " x ";
    s += factors_[k]->name();
  }
  return s;
}

const Bicharacter* Object::bicharacter() const {
  return factors_.empty() ? nullptr : &factors_.front()->bicharacter();
}

Object operator*(const Object& a, const Object& b) {
  std::vector<SpacePtr> f = a.factors_;
  f.insert(f.end(), b.factors_.begin(), b.factors_.end());
  return Object(std::move(f));
}

bool operator==(const Object& a, const Object& b) {
  if (a.factors_.size() != b.factors_.size()) return false;
  for (std::size_t k = 0; k < a.factors_.size(); ++k) {
    if (a.factors_[k] == b.factors_[k]) continue;
    if (a.factors_[k]->name() != b.factors_[k]->name() || a.factors_[k]->dim() != b.factors_[k]->dim()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- GradedMap

GradedMap::GradedMap(Object dom, Object cod) : dom_(std::move(dom)), cod_(std::move(cod)), cols_(dom_.dim()) {}

GradedMap GradedMap::identity(const Object& obj) {
  GradedMap m(obj, obj);
  for (std::size_t j = 0; j < obj.dim(); ++j) m.cols_[j] = Vec{{static_cast<std::uint32_t>(j), Scalar(1)}};
  return m;
}

Scalar GradedMap::entry(std::size_t row, std::size_t col) const {
  const Vec& c = cols_[col];
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& t, std::size_t r) { return t.first < r; });
  if (it != c.end() && it->first == row) return it->second;
  return Scalar();
}

bool GradedMap::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const Vec& c) { return c.empty(); });
}

Vec GradedMap::apply(const Vec& v) const {
  Accumulator<std::uint32_t> acc;
  for (const auto& [j, c] : v) acc.add_all(cols_[j], c);
  return acc.take();
}

GradedMap GradedMap::scaled(const Scalar& s) const {
  GradedMap r(dom_, cod_);
  for (std::size_t j = 0; j < cols_.size(); ++j) r.cols_[j] = braidhopf::scaled(cols_[j], s);
  return r;
}

nlohmann::json GradedMap::to_json() const {
  std::vector<std::tuple<std::size_t, std::size_t, const Scalar*>> t;
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, c] : cols_[j]) t.emplace_back(i, j, &c);
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [i, j, c] : t) out.push_back({i, j, c->to_json()});
  return out;
}

GradedMap GradedMap::from_json(const nlohmann::json& triples, Object dom, Object cod, const Field& f) {
  GradedMap m(std::move(dom), std::move(cod));
  std::vector<Accumulator<std::uint32_t>> acc(m.cols_.size());
  for (const auto& t : triples) {
    auto row = t.at(0).get<std::size_t>();
    auto col = t.at(1).get<std::size_t>();
    if (row >= m.cod_.dim() || col >= m.dom_.dim()) throw std::invalid_argument("matrix entry out of range");
    acc[col].add(static_cast<std::uint32_t>(row), Scalar::from_json(t.at(2), f));
  }
  for (std::size_t j = 0; j < acc.size(); ++j) m.cols_[j] = acc[j].take();
  return m;
}

Matrix GradedMap::to_matrix() const {
  Matrix m(cod_.dim(), dom_.dim());
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, c] : cols_[j]) m.at(i, j) = c;
  return m;
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (g.domain() != f.codomain()) {
    throw StructuralError("cannot compose: codomain " + f.codomain().str() + " vs domain " + g.domain().str());
  }
  GradedMap r(f.domain(), g.codomain());
  for (std::size_t j = 0; j < f.domain().dim(); ++j) r.set_column(j, g.apply(f.column(j)));
  return r;
}

GradedMap tensor_map(const GradedMap& f, const GradedMap& g) {
  GradedMap r(f.domain() * g.domain(), f.codomain() * g.codomain());
  std::size_t gd = g.domain().dim(), gc = g.codomain().dim();
  for (std::size_t a = 0; a < f.domain().dim(); ++a) {
    for (std::size_t b = 0; b < gd; ++b) {
      Vec col;
      for (const auto& [i, x] : f.column(a)) {
        for (const auto& [k, y] : g.column(b)) col.emplace_back(static_cast<std::uint32_t>(i * gc + k), x * y);
      }
      r.set_column(a * gd + b, std::move(col));
    }
  }
  return r;
}

GradedMap add_maps(const GradedMap& f, const GradedMap& g, const Scalar& sg) {
  if (f.domain() != g.domain() || f.codomain() != g.codomain()) throw StructuralError("cannot add maps of different types");
  GradedMap r(f.domain(), f.codomain());
  for (std::size_t j = 0; j < f.domain().dim(); ++j) r.set_column(j, add_terms(f.column(j), g.column(j), sg));
  return r;
}

namespace {

const Bicharacter& shared_bicharacter(const Object& v, const Object& w) {
  const Bicharacter* chi = nullptr;
  for (const Object* o : {&v, &w}) {
    for (const auto& f : o->factors()) {
      if (chi == nullptr) {
        chi = &f->bicharacter();
      } else if (!chi->same_as(f->bicharacter())) {
        throw StructuralError("bicharacter mismatch between " + v.str() + " and " + w.str());
      }
    }
  }
  static const Bicharacter trivial = Bicharacter::trivial();
  return chi != nullptr ? *chi : trivial;
}

GradedMap swap_with(const Object& v, const Object& w, int sign) {
  const Bicharacter& chi = shared_bicharacter(v, w);
  std::vector<GroupElem> dv(v.dim()), dw(w.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) dv[i] = v.degree(i);
  for (std::size_t j = 0; j < w.dim(); ++j) dw[j] = w.degree(j);
  if (sign > 0) {
    GradedMap r(v * w, w * v);
    for (std::size_t i = 0; i < v.dim(); ++i)
      for (std::size_t j = 0; j < w.dim(); ++j)
        r.set_column(i * w.dim() + j, Vec{{static_cast<std::uint32_t>(j * v.dim() + i), chi.power(chi.exponent(dv[i], dw[j]))}});
    return r;
  }
  if (sign < 0) {
    GradedMap r(w * v, v * w);
    for (std::size_t i = 0; i < v.dim(); ++i)
      for (std::size_t j = 0; j < w.dim(); ++j)
        r.set_column(j * v.dim() + i, Vec{{static_cast<std::uint32_t>(i * w.dim() + j), chi.power(-chi.exponent(dv[i], dw[j]))}});
    return r;
  }
  GradedMap r(v * w, w * v);
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j)
      r.set_column(i * w.dim() + j, Vec{{static_cast<std::uint32_t>(j * v.dim() + i), Scalar(1)}});
  return r;
}

}  // namespace

GradedMap braiding(const Object& v, const Object& w) { return swap_with(v, w, 1); }
GradedMap braiding_inverse(const Object& v, const Object& w) { return swap_with(v, w, -1); }
GradedMap swap_map(const Object& v, const Object& w) { return swap_with(v, w, 0); }

nlohmann::json Difference::to_json(const GradedMap& context) const {
  return {{"input", context.domain().label(column)},
          {"output", context.codomain().label(row)},
          {"lhs", lhs.str()},
          {"rhs", rhs.str()}};
}

std::optional<Difference> first_difference(const GradedMap& a, const GradedMap& b) {
  if (a.domain() != b.domain() || a.codomain() != b.codomain()) {
    throw StructuralError("cannot compare maps " + a.domain().str() + " -> " + a.codomain().str() + " and " +
                          b.domain().str() + " -> " + b.codomain().str());
  }
  for (std::size_t j = 0; j < a.domain().dim(); ++j) {
    const Vec& x = a.column(j);
    const Vec& y = b.column(j);
    if (x == y) continue;
    std::size_t p = 0, q = 0;
    while (p < x.size() || q < y.size()) {
      if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) return Difference{j, x[p].first, x[p].second, Scalar()};
      if (p == x.size() || y[q].first < x[p].first) return Difference{j, y[q].first, Scalar(), y[q].second};
      if (x[p].second != y[q].second) return Difference{j, x[p].first, x[p].second, y[q].second};
      ++p;
      ++q;
    }
  }
  return std::nullopt;
}

}  // namespace braidhopf
