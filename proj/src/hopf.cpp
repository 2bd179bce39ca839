#include "braidhopf/hopf.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace braidhopf {

namespace {

const Vec kNoTerms;

// Dense scratch accumulator for hot loops over a finite basis.
class DenseAcc {
 public:
  explicit DenseAcc(std::size_t n) : v_(n), used_(n, false) {}
  void add(std::uint32_t k, const Scalar& c) {
    if (!used_[k]) {
      used_[k] = true;
      touched_.push_back(k);
      v_[k] = c;
    } else {
      v_[k] += c;
    }
  }
  // Clears the buffer; returns the first nonzero key, if any.
  std::optional<std::uint32_t> drain_nonzero() {
    std::optional<std::uint32_t> first;
    for (std::uint32_t k : touched_) {
      if (!first && !v_[k].is_zero()) first = k;
      used_[k] = false;
    }
    touched_.clear();
    return first;
  }

 private:
  std::vector<Scalar> v_;
  std::vector<bool> used_;
  std::vector<std::uint32_t> touched_;
};

// Structure constants scaled by a common denominator to integer vectors in the
// power basis of Z[eps]; lets the exhaustive associativity loop run on machine integers.
// Only built when every scaled coefficient is small enough that no step can overflow.
class IntegerTable {
 public:
  static std::optional<IntegerTable> build(const HopfAlgebra& a) {
    Field f = a.field();
    if (f.kind == Field::Kind::RationalFunctions) return std::nullopt;
    IntegerTable t;
    t.dim_ = static_cast<std::uint32_t>(*a.dim());
    if (f.kind == Field::Kind::Cyclotomic) {
      const auto& mp = CycloField::get(f.l).minimal_polynomial();
      t.phi_ = static_cast<int>(mp.size()) - 1;
      t.minpoly_ = mp;
    } else {
      t.phi_ = 1;
      t.minpoly_ = {0, 1};
    }
    if (t.phi_ > 12) return std::nullopt;
    auto coeffs = [&](const Scalar& c) -> std::vector<Rational> {
      if (const Cyclo* x = c.as_cyclo()) return x->coeffs();
      if (c.is_rational()) return {c.as_rational()};
      return {};
    };
    mpz_class denom = 1;
    std::size_t n2 = static_cast<std::size_t>(t.dim_) * t.dim_;
    for (std::uint32_t i = 0; i < t.dim_; ++i)
      for (std::uint32_t j = 0; j < t.dim_; ++j)
        for (const auto& [k, c] : a.product(i, j)) {
          if (!c.is_rational() && !c.as_cyclo()) return std::nullopt;
          for (const Rational& r : coeffs(c)) denom = lcm(denom, r.denominator());
        }
    const mpz_class limit = mpz_class(1) << 31;
    if (denom >= limit) return std::nullopt;
    t.start_.reserve(n2 + 1);
    for (std::uint32_t i = 0; i < t.dim_; ++i) {
      for (std::uint32_t j = 0; j < t.dim_; ++j) {
        t.start_.push_back(t.keys_.size());
        const Vec& v = a.product(i, j);
        if (v.size() > 256) return std::nullopt;
        for (const auto& [k, c] : v) {
          t.keys_.push_back(k);
          std::vector<Rational> cs = coeffs(c);
          for (int d = 0; d < t.phi_; ++d) {
            if (static_cast<std::size_t>(d) >= cs.size()) {
              t.coef_.push_back(0);
              continue;
            }
            mpz_class x = cs[static_cast<std::size_t>(d)].numerator() * (denom / cs[static_cast<std::size_t>(d)].denominator());
            if (abs(x) >= limit) return std::nullopt;
            t.coef_.push_back(x.get_si());
          }
        }
      }
    }
    t.start_.push_back(t.keys_.size());
    t.width_ = 2 * t.phi_ - 1;
    t.acc_.assign(static_cast<std::size_t>(t.dim_) * static_cast<std::size_t>(t.width_), 0);
    t.used_.assign(t.dim_, false);
    return t;
  }

  // (e_i e_j) e_k == e_i (e_j e_k)
  bool associative(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    accumulate(i, j, k, false);
    accumulate(j, k, i, true);
    bool ok = true;
    for (std::uint32_t u : touched_) {
      __int128* p = &acc_[static_cast<std::size_t>(u) * static_cast<std::size_t>(width_)];
      for (int d = width_ - 1; d >= phi_; --d) {
        __int128 c = p[d];
        if (c == 0) continue;
        for (int m = 0; m <= phi_; ++m) p[d - phi_ + m] -= c * minpoly_[static_cast<std::size_t>(m)];
      }
      for (int d = 0; d < phi_; ++d) ok = ok && p[d] == 0;
      std::fill(p, p + width_, 0);
      used_[u] = false;
    }
    touched_.clear();
    return ok;
  }

 private:
  // Adds (x y) z, or subtracts x' (y' z') when reversed: with reversed the call is (j, k, i)
  // and computes e_i (e_j e_k).
  void accumulate(std::uint32_t x, std::uint32_t y, std::uint32_t z, bool reversed) {
    std::size_t ph = static_cast<std::size_t>(phi_);
    for (std::size_t s = start_[pair(x, y)]; s < start_[pair(x, y) + 1]; ++s) {
      std::uint32_t t = keys_[s];
      std::size_t inner = reversed ? pair(z, t) : pair(t, z);
      for (std::size_t r = start_[inner]; r < start_[inner + 1]; ++r) {
        std::uint32_t u = keys_[r];
        if (!used_[u]) {
          used_[u] = true;
          touched_.push_back(u);
        }
        __int128* p = &acc_[static_cast<std::size_t>(u) * static_cast<std::size_t>(width_)];
        const std::int64_t* a = &coef_[s * ph];
        const std::int64_t* b = &coef_[r * ph];
        for (std::size_t da = 0; da < ph; ++da) {
          if (a[da] == 0) continue;
          for (std::size_t db = 0; db < ph; ++db) {
            __int128 prod = static_cast<__int128>(a[da]) * b[db];
            p[da + db] += reversed ? -prod : prod;
          }
        }
      }
    }
  }
  std::size_t pair(std::uint32_t x, std::uint32_t y) const { return static_cast<std::size_t>(x) * dim_ + y; }

  std::uint32_t dim_ = 0;
  int phi_ = 1, width_ = 1;
  std::vector<long long> minpoly_;
  std::vector<std::size_t> start_;
  std::vector<std::uint32_t> keys_;
  std::vector<std::int64_t> coef_;
  std::vector<__int128> acc_;
  std::vector<bool> used_;
  std::vector<std::uint32_t> touched_;
};

Tensor2 outer(const Vec& a, const Vec& b, const Scalar& s = Scalar(1)) {
  Tensor2 out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) out.emplace_back(std::make_pair(i, j), s * ci * cj);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::string truncate_text(std::string s) {
  if (s.size() > 400) s = s.substr(0, 400) + " ...";
  return s;
}

GroupElem add_elems(const GroupElem& a, const GroupElem& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  GroupElem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

// ---------------------------------------------------------------- HopfAlgebra

std::uint32_t HopfAlgebra::random_basis(std::mt19937_64& rng, int) const {
  auto n = dim();
  if (!n) throw std::logic_error("random_basis needs a finite basis");
  std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(*n - 1));
  return d(rng);
}

GroupElem HopfAlgebra::degree(std::uint32_t i) const {
  if (!chi_) return {};
  GroupElem d = chi_->group().zero();
  for (int g : factorization(i)) d = chi_->group().add(d, gens_[static_cast<std::size_t>(g)].degree);
  return d;
}

Tensor2 HopfAlgebra::coproduct(std::uint32_t i) const {
  auto it = coproduct_cache_.find(i);
  if (it != coproduct_cache_.end()) return it->second;
  Tensor2 t{{{unit(), unit()}, Scalar(1)}};
  for (int g : factorization(i)) t = multiply(t, gens_[static_cast<std::size_t>(g)].coproduct);
  coproduct_cache_.emplace(i, t);
  return t;
}

Scalar HopfAlgebra::counit(std::uint32_t i) const {
  Scalar c(1);
  for (int g : factorization(i)) c *= gens_[static_cast<std::size_t>(g)].counit;
  return c;
}

Vec HopfAlgebra::antipode(std::uint32_t i) const {
  auto it = antipode_cache_.find(i);
  if (it != antipode_cache_.end()) return it->second;
  Monomial f = factorization(i);
  Scalar c(1);
  if (chi_) {
    for (std::size_t s = 0; s < f.size(); ++s)
      for (std::size_t r = 0; r < s; ++r)
        c *= (*chi_)(gens_[static_cast<std::size_t>(f[r])].degree, gens_[static_cast<std::size_t>(f[s])].degree);
  }
  Vec v = scaled(one(), c);
  for (auto g = f.rbegin(); g != f.rend(); ++g) v = multiply(v, gens_[static_cast<std::size_t>(*g)].antipode);
  antipode_cache_.emplace(i, v);
  return v;
}

int HopfAlgebra::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

Vec HopfAlgebra::multiply(const Vec& a, const Vec& b) const {
  Accumulator<std::uint32_t> acc;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) acc.add_all(product(i, j), ci * cj);
  return acc.take();
}

Tensor2 HopfAlgebra::multiply(const Tensor2& a, const Tensor2& b) const {
  Accumulator<std::pair<std::uint32_t, std::uint32_t>> acc;
  for (const auto& [ab, c1] : a) {
    for (const auto& [cd, c2] : b) {
      Scalar s = c1 * c2;
      if (chi_) s *= (*chi_)(degree(ab.second), degree(cd.first));
      const Vec& left = product(ab.first, cd.first);
      if (left.empty()) continue;
      const Vec& right = product(ab.second, cd.second);
      for (const auto& [u, cu] : left)
        for (const auto& [v, cv] : right) acc.add({u, v}, s * cu * cv);
    }
  }
  return acc.take();
}

Vec HopfAlgebra::evaluate(const NCPoly& p) const {
  Accumulator<std::uint32_t> acc;
  for (const auto& [mono, c] : p) {
    Vec v = one();
    for (int g : mono) v = multiply(v, gens_[static_cast<std::size_t>(g)].element);
    acc.add_all(v, c);
  }
  return acc.take();
}

Tensor2 HopfAlgebra::coproduct(const Vec& v) const {
  Accumulator<std::pair<std::uint32_t, std::uint32_t>> acc;
  for (const auto& [i, c] : v) acc.add_all(coproduct(i), c);
  return acc.take();
}

Scalar HopfAlgebra::counit(const Vec& v) const {
  Scalar s;
  for (const auto& [i, c] : v) s += c * counit(i);
  return s;
}

Vec HopfAlgebra::antipode(const Vec& v) const {
  Accumulator<std::uint32_t> acc;
  for (const auto& [i, c] : v) acc.add_all(antipode(i), c);
  return acc.take();
}

std::string HopfAlgebra::format(const Vec& v) const {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : v) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*" + label(i);
  }
  return truncate_text(out);
}

std::string HopfAlgebra::format(const Tensor2& t) const {
  if (t.empty()) return "0";
  std::string out;
  for (const auto& [ij, c] : t) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*" + label(ij.first) + " (x) " + label(ij.second);
  }
  return truncate_text(out);
}

// ---------------------------------------------------------------- TableHopfAlgebra

TableHopfAlgebra::TableHopfAlgebra(Data d) : HopfAlgebra(d.name, d.field, d.chi), d_(std::move(d)) {
  std::size_t n = d_.labels.size();
  if (d_.products.size() != n * n) throw std::invalid_argument("product table has the wrong size");
  if (d_.factorizations.size() != n) throw std::invalid_argument("factorization table has the wrong size");
  if (chi_ && d_.degrees.size() != n) throw std::invalid_argument("braided algebra needs basis degrees");
  gens_ = d_.generators;
  rels_ = d_.relations;
}

GroupElem TableHopfAlgebra::degree(std::uint32_t i) const {
  if (!chi_) return {};
  return d_.degrees[i];
}

Tensor2 TableHopfAlgebra::coproduct(std::uint32_t i) const {
  if (!d_.coproducts.empty()) return d_.coproducts[i];
  return HopfAlgebra::coproduct(i);
}

Scalar TableHopfAlgebra::counit(std::uint32_t i) const {
  if (!d_.counits.empty()) return d_.counits[i];
  return HopfAlgebra::counit(i);
}

Vec TableHopfAlgebra::antipode(std::uint32_t i) const {
  if (!d_.antipodes.empty()) return d_.antipodes[i];
  return HopfAlgebra::antipode(i);
}

// ---------------------------------------------------------------- TriangularAlgebra

TriangularAlgebra::TriangularAlgebra(Shape shape, std::shared_ptr<const NicholsPair> lower_pair,
                                     const NicholsAlgebra& lower, std::shared_ptr<const NicholsPair> upper_pair,
                                     const NicholsAlgebra& upper)
    : HopfAlgebra(shape.name, lower_pair->field(), nullptr),
      shape_(std::move(shape)),
      lower_pair_(std::move(lower_pair)),
      upper_pair_(std::move(upper_pair)),
      lower_(&lower),
      upper_(&upper),
      datum_(lower_pair_->datum()),
      base_(lower_pair_->base()),
      modulus_(lower_pair_->modulus()),
      rank_(datum_.rank()),
      powers_(GradingGroup(1, lower_pair_->modulus()), {{1}}, lower_pair_->base()) {
  if (upper_pair_->base() != base_ || upper_pair_->modulus() != modulus_)
    throw std::invalid_argument("triangular blocks over different bases");
  auto lo = lower_->index_of(Word()), up = upper_->index_of(Word());
  if (!lo || !up) throw std::invalid_argument("blocks must contain the unit");
  lower_one_ = *lo;
  upper_one_ = *up;
  for (int i = 0; i < rank_; ++i) {
    auto a = lower_->index_of(Word(1, static_cast<char>(i)));
    auto b = upper_->index_of(Word(1, static_cast<char>(i)));
    if (!a || !b) throw std::invalid_argument("generator vanishes in a block");
    lower_letter_.push_back(*a);
    upper_letter_.push_back(*b);
  }
  for (std::size_t i = 0; i < lower_->dim(); ++i) lower_mdeg_.push_back(lower_->multidegree(i));
  for (std::size_t i = 0; i < upper_->dim(); ++i) upper_mdeg_.push_back(upper_->multidegree(i));
  if (modulus_ > 0) {
    if (!lower_->finite() || !upper_->finite()) throw std::invalid_argument("root of unity blocks must be finite");
    group_size_ = 1;
    for (int i = 0; i < rank_; ++i) group_size_ *= static_cast<std::size_t>(modulus_);
  }
  unit_ = index({lower_one_, GroupElem(static_cast<std::size_t>(rank_), 0), upper_one_});
}

std::optional<std::size_t> TriangularAlgebra::dim() const {
  if (modulus_ == 0) return std::nullopt;
  return lower_->dim() * group_size_ * upper_->dim();
}

GroupElem TriangularAlgebra::reduce(GroupElem g) const {
  if (modulus_ > 0)
    for (auto& x : g) x = ((x % modulus_) + modulus_) % modulus_;
  return g;
}

std::uint32_t TriangularAlgebra::index(const Key& k) const {
  if (modulus_ > 0) {
    std::size_t kidx = 0;
    for (int x : k.k) kidx = kidx * static_cast<std::size_t>(modulus_) + static_cast<std::size_t>(x);
    return static_cast<std::uint32_t>((k.lower * group_size_ + kidx) * upper_->dim() + k.upper);
  }
  auto it = key_index_.find(k);
  if (it != key_index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(keys_.size());
  keys_.push_back(k);
  key_index_.emplace(k, id);
  return id;
}

TriangularAlgebra::Key TriangularAlgebra::key(std::uint32_t i) const {
  if (modulus_ == 0) return keys_.at(i);
  std::size_t up = i % upper_->dim();
  std::size_t rest = i / upper_->dim();
  std::size_t kidx = rest % group_size_;
  std::size_t lo = rest / group_size_;
  GroupElem k(static_cast<std::size_t>(rank_));
  for (int j = rank_ - 1; j >= 0; --j) {
    k[static_cast<std::size_t>(j)] = static_cast<int>(kidx % static_cast<std::size_t>(modulus_));
    kidx /= static_cast<std::size_t>(modulus_);
  }
  return {static_cast<std::uint32_t>(lo), k, static_cast<std::uint32_t>(up)};
}

std::string TriangularAlgebra::label(std::uint32_t i) const {
  Key k = key(i);
  std::vector<std::string> parts;
  const Word& lw = lower_->word(k.lower);
  if (!lw.empty()) parts.push_back(word_text(lw, shape_.lower_name));
  for (int j = 0; j < rank_; ++j) {
    int e = k.k[static_cast<std::size_t>(j)];
    if (e == 0) continue;
    std::string s = shape_.group_name + std::to_string(j + 1);
    if (e != 1) s += "^" + std::to_string(e);
    parts.push_back(s);
  }
  const Word& uw = upper_->word(k.upper);
  if (!uw.empty()) parts.push_back(word_text(uw, shape_.upper_name));
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t p = 1; p < parts.size(); ++p) out += "*" + parts[p];
  return out;
}

long long TriangularAlgebra::k_pair(const GroupElem& lambda, const Multidegree& m) const {
  long long s = 0;
  for (int i = 0; i < rank_; ++i) {
    int li = lambda[static_cast<std::size_t>(i)];
    if (li == 0) continue;
    for (int j = 0; j < rank_; ++j) s += static_cast<long long>(li) * m[static_cast<std::size_t>(j)] * datum_.dot(i, j);
  }
  return s;
}

std::vector<std::pair<GroupElem, Scalar>> TriangularAlgebra::extra(int i) const {
  std::vector<std::pair<GroupElem, Scalar>> out;
  Scalar b = upper_pair_->root_base(i);
  Scalar denom = shape_.divide_extra ? (b - b.inverse()).inverse() : Scalar(1);
  for (const auto& [mult, c] : shape_.extra_unit) {
    GroupElem mu(static_cast<std::size_t>(rank_), 0);
    mu[static_cast<std::size_t>(i)] = mult;
    out.emplace_back(reduce(mu), c * denom);
  }
  return out;
}

void TriangularAlgebra::upper_letter_times(int i, const Elem& in, Elem& out) const {
  auto add = [&](const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, ins] = out.try_emplace(k, c);
    if (!ins) it->second += c;
  };
  auto extras = extra(i);
  Multidegree unit_i(static_cast<std::size_t>(rank_), 0);
  unit_i[static_cast<std::size_t>(i)] = 1;
  for (const auto& [k, s] : in) {
    if (s.is_zero()) continue;
    const Word& w = lower_->word(k.lower);
    Scalar pre(1);
    for (std::size_t p = 0; p < w.size(); ++p) {
      int j = static_cast<unsigned char>(w[p]);
      if (j == i && !extras.empty()) {
        Word rest = w;
        rest.erase(p, 1);
        Multidegree suffix = multidegree_of(w.substr(p + 1), rank_);
        const Vec& proj = lower_->project(rest);
        for (const auto& [mu, ec] : extras) {
          Scalar coef = s * pre * ec * pow_base(shape_.lower_sign * k_pair(mu, suffix));
          GroupElem kk = reduce(add_elems(mu, k.k));
          for (const auto& [a2, c2] : proj) add({a2, kk, k.upper}, coef * c2);
        }
      }
      pre *= pow_base(static_cast<long long>(shape_.cross_sign) * datum_.dot(i, j));
    }
    Scalar coef = s * pre * pow_base(-static_cast<long long>(shape_.upper_sign) * k_pair(k.k, unit_i));
    for (const auto& [d2, c2] : upper_->multiply(upper_letter_[static_cast<std::size_t>(i)], k.upper))
      add({k.lower, k.k, d2}, coef * c2);
  }
}

const std::vector<std::pair<TriangularAlgebra::Key, Scalar>>& TriangularAlgebra::upper_times_lower(
    std::uint32_t c, std::uint32_t b) const {
  std::uint64_t ck = (static_cast<std::uint64_t>(c) << 32) | b;
  auto it = ef_cache_.find(ck);
  if (it != ef_cache_.end()) return it->second;
  Elem cur;
  cur[{b, GroupElem(static_cast<std::size_t>(rank_), 0), upper_one_}] = Scalar(1);
  const Word& w = upper_->word(c);
  for (auto p = w.rbegin(); p != w.rend(); ++p) {
    Elem next;
    upper_letter_times(static_cast<unsigned char>(*p), cur, next);
    cur = std::move(next);
  }
  std::vector<std::pair<Key, Scalar>> out;
  for (auto& [k, s] : cur)
    if (!s.is_zero()) out.emplace_back(k, std::move(s));
  return ef_cache_.emplace(ck, std::move(out)).first->second;
}

const Vec& TriangularAlgebra::product(std::uint32_t a, std::uint32_t b) const {
  std::uint64_t pk = (static_cast<std::uint64_t>(a) << 32) | b;
  auto it = prod_cache_.find(pk);
  if (it != prod_cache_.end()) return it->second;
  Key x = key(a), y = key(b);
  Accumulator<std::uint32_t> acc;
  for (const auto& [k, s] : upper_times_lower(x.upper, y.lower)) {
    Scalar coef = s * pow_base(shape_.lower_sign * k_pair(x.k, lower_mdeg_[k.lower])) *
                  pow_base(-static_cast<long long>(shape_.upper_sign) * k_pair(y.k, upper_mdeg_[k.upper]));
    const Vec& fs = lower_->multiply(x.lower, k.lower);
    if (fs.empty()) continue;
    const Vec& es = upper_->multiply(k.upper, y.upper);
    if (es.empty()) continue;
    GroupElem kk = reduce(add_elems(add_elems(x.k, k.k), y.k));
    for (const auto& [f, cf] : fs)
      for (const auto& [e, ce] : es) acc.add(index({f, kk, e}), coef * cf * ce);
  }
  return prod_cache_.emplace(pk, acc.take()).first->second;
}

Monomial TriangularAlgebra::factorization(std::uint32_t i) const {
  Key k = key(i);
  Monomial m;
  for (char c : lower_->word(k.lower)) m.push_back(lower_gen(static_cast<unsigned char>(c)));
  for (int j = 0; j < rank_; ++j) {
    int e = k.k[static_cast<std::size_t>(j)];
    for (int t = 0; t < std::abs(e); ++t) m.push_back(e > 0 ? k_gen(j) : kinv_gen(j));
  }
  for (char c : upper_->word(k.upper)) m.push_back(upper_gen(static_cast<unsigned char>(c)));
  return m;
}

std::uint32_t TriangularAlgebra::random_basis(std::mt19937_64& rng, int degree_bound) const {
  if (modulus_ > 0) return HopfAlgebra::random_basis(rng, degree_bound);
  auto pick = [&](const NicholsAlgebra& n) {
    std::vector<std::uint32_t> ok;
    for (std::uint32_t i = 0; i < n.dim(); ++i)
      if (static_cast<int>(n.word(i).size()) <= degree_bound) ok.push_back(i);
    std::uniform_int_distribution<std::size_t> d(0, ok.size() - 1);
    return ok[d(rng)];
  };
  std::uniform_int_distribution<int> kd(-2, 2);
  Key k{pick(*lower_), GroupElem(static_cast<std::size_t>(rank_)), pick(*upper_)};
  for (auto& x : k.k) x = kd(rng);
  return index(k);
}

Vec TriangularAlgebra::k_element(const GroupElem& lambda) const {
  return basis_vec(index({lower_one_, reduce(lambda), upper_one_}));
}

void TriangularAlgebra::install_presentation() {
  gens_.clear();
  rels_.clear();
  GroupElem zero(static_cast<std::size_t>(rank_), 0);
  auto unit_k = [&](int i, int m) {
    GroupElem g = zero;
    g[static_cast<std::size_t>(i)] = m;
    return g;
  };
  for (int i = 0; i < rank_; ++i) {
    Generator g;
    g.name = shape_.upper_name + std::to_string(i + 1);
    g.element = basis_vec(index({lower_one_, zero, upper_letter_[static_cast<std::size_t>(i)]}));
    gens_.push_back(g);
  }
  for (int i = 0; i < rank_; ++i) {
    Generator g;
    g.name = shape_.lower_name + std::to_string(i + 1);
    g.element = basis_vec(index({lower_letter_[static_cast<std::size_t>(i)], zero, upper_one_}));
    gens_.push_back(g);
  }
  for (int i = 0; i < rank_; ++i) {
    Generator g;
    g.name = shape_.group_name + std::to_string(i + 1);
    g.element = k_element(unit_k(i, 1));
    g.counit = Scalar(1);
    gens_.push_back(g);
  }
  for (int i = 0; i < rank_; ++i) {
    Generator g;
    g.name = shape_.group_name + std::to_string(i + 1) + "^-1";
    g.element = k_element(unit_k(i, -1));
    g.counit = Scalar(1);
    gens_.push_back(g);
  }
  auto gname = [&](int g) { return gens_[static_cast<std::size_t>(g)].name; };
  auto two = [](int a, int b) { return Monomial{a, b}; };
  auto sorted = [](NCPoly p) {
    std::sort(p.begin(), p.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return p;
  };
  for (int i = 0; i < rank_; ++i) {
    rels_.push_back({gname(k_gen(i)) + "*" + gname(kinv_gen(i)) + " = 1",
                     sorted({{two(k_gen(i), kinv_gen(i)), Scalar(1)}, {Monomial{}, Scalar(-1)}})});
    rels_.push_back({gname(kinv_gen(i)) + "*" + gname(k_gen(i)) + " = 1",
                     sorted({{two(kinv_gen(i), k_gen(i)), Scalar(1)}, {Monomial{}, Scalar(-1)}})});
    if (modulus_ > 0) {
      rels_.push_back({gname(k_gen(i)) + "^" + std::to_string(modulus_) + " = 1",
                       sorted({{Monomial(static_cast<std::size_t>(modulus_), k_gen(i)), Scalar(1)},
                               {Monomial{}, Scalar(-1)}})});
    }
    for (int j = i + 1; j < rank_; ++j) {
      rels_.push_back({gname(k_gen(i)) + " commutes with " + gname(k_gen(j)),
                       sorted({{two(k_gen(i), k_gen(j)), Scalar(1)}, {two(k_gen(j), k_gen(i)), Scalar(-1)}})});
    }
  }
  for (int i = 0; i < rank_; ++i) {
    for (int j = 0; j < rank_; ++j) {
      long long d = datum_.dot(i, j);
      rels_.push_back({gname(k_gen(i)) + "*" + gname(upper_gen(j)) + " = c*" + gname(upper_gen(j)) + "*" +
                           gname(k_gen(i)),
                       sorted({{two(k_gen(i), upper_gen(j)), Scalar(1)},
                               {two(upper_gen(j), k_gen(i)), -pow_base(shape_.upper_sign * d)}})});
      rels_.push_back({gname(k_gen(i)) + "*" + gname(lower_gen(j)) + " = c*" + gname(lower_gen(j)) + "*" +
                           gname(k_gen(i)),
                       sorted({{two(k_gen(i), lower_gen(j)), Scalar(1)},
                               {two(lower_gen(j), k_gen(i)), -pow_base(shape_.lower_sign * d)}})});
      NCPoly cross{{two(upper_gen(i), lower_gen(j)), Scalar(1)},
                   {two(lower_gen(j), upper_gen(i)), -pow_base(shape_.cross_sign * d)}};
      if (i == j) {
        Scalar b = upper_pair_->root_base(i);
        Scalar denom = shape_.divide_extra ? (b - b.inverse()).inverse() : Scalar(1);
        for (const auto& [mult, c] : shape_.extra_unit) {
          Monomial m(static_cast<std::size_t>(std::abs(mult)), mult > 0 ? k_gen(i) : kinv_gen(i));
          cross.emplace_back(m, -(c * denom));
        }
      }
      rels_.push_back({gname(upper_gen(i)) + "*" + gname(lower_gen(j)) + " exchange", sorted(cross)});
    }
  }
  auto block = [&](const NicholsAlgebra& n, int offset, const std::string& prefix) {
    for (const WordPoly& r : n.relations()) {
      NCPoly p;
      for (const auto& [w, c] : r) {
        Monomial m;
        for (char ch : w) m.push_back(offset + static_cast<unsigned char>(ch));
        p.emplace_back(m, c);
      }
      std::string text;
      for (const auto& [w, c] : r) {
        if (!text.empty()) text += " + ";
        text += "(" + c.str() + ")" + word_text(w, prefix);
      }
      rels_.push_back({truncate_text(text) + " = 0", sorted(p)});
    }
  };
  block(*upper_, upper_gen(0), shape_.upper_name);
  block(*lower_, lower_gen(0), shape_.lower_name);
}

// ---------------------------------------------------------------- families

namespace {

std::vector<Multidegree> positive_roots(const CartanDatum& datum) {
  int n = datum.rank();
  std::set<Multidegree> seen;
  std::vector<Multidegree> todo;
  for (int i = 0; i < n; ++i) {
    Multidegree a(static_cast<std::size_t>(n), 0);
    a[static_cast<std::size_t>(i)] = 1;
    seen.insert(a);
    todo.push_back(a);
  }
  while (!todo.empty()) {
    Multidegree b = todo.back();
    todo.pop_back();
    for (int i = 0; i < n; ++i) {
      long long d = 0;
      for (int j = 0; j < n; ++j) d += static_cast<long long>(b[static_cast<std::size_t>(j)]) * datum.dot(j, i);
      long long c = 2 * d / datum.dot(i, i);
      Multidegree r = b;
      r[static_cast<std::size_t>(i)] -= static_cast<int>(c);
      bool positive = std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; });
      if (positive && std::any_of(r.begin(), r.end(), [](int x) { return x > 0; }) && !seen.count(r)) {
        seen.insert(r);
        todo.push_back(r);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::string datum_tag(const CartanDatum& d) {
  if (!d.name().empty()) return d.name();
  std::string s = "form";
  for (const auto& row : d.form())
    for (int x : row) s += "_" + std::to_string(x);
  return s;
}

void install_group_data(TriangularAlgebra& a) {
  for (int i = 0; i < a.datum().rank(); ++i) {
    Generator& k = a.generator_mut(a.k_gen(i));
    Generator& kinv = a.generator_mut(a.kinv_gen(i));
    k.coproduct = outer(k.element, k.element);
    kinv.coproduct = outer(kinv.element, kinv.element);
    k.antipode = kinv.element;
    kinv.antipode = k.element;
  }
}

// Delta(x) = x (x) 1 + g (x) x, S(x) = -g^{-1} x, where g = K_i^{leg}.
void set_skew_primitive(TriangularAlgebra& a, int gen, int i, int leg) {
  const auto& g = a.generators();
  const Vec& kk = g[static_cast<std::size_t>(a.k_gen(i))].element;
  const Vec& ki = g[static_cast<std::size_t>(a.kinv_gen(i))].element;
  const Vec& grp = leg > 0 ? kk : ki;
  const Vec& grp_inv = leg > 0 ? ki : kk;
  Vec x = g[static_cast<std::size_t>(gen)].element;
  Tensor2 d = add_terms(outer(x, a.one()), outer(grp, x));
  Vec s = scaled(a.multiply(grp_inv, x), Scalar(-1));
  Generator& out = a.generator_mut(gen);
  out.coproduct = std::move(d);
  out.antipode = std::move(s);
}

// Delta(x) = x (x) g + 1 (x) x, S(x) = -x g^{-1}.
void set_right_skew_primitive(TriangularAlgebra& a, int gen, int i, int leg) {
  const auto& g = a.generators();
  const Vec& kk = g[static_cast<std::size_t>(a.k_gen(i))].element;
  const Vec& ki = g[static_cast<std::size_t>(a.kinv_gen(i))].element;
  const Vec& grp = leg > 0 ? kk : ki;
  const Vec& grp_inv = leg > 0 ? ki : kk;
  Vec x = g[static_cast<std::size_t>(gen)].element;
  Tensor2 d = add_terms(outer(x, grp), outer(a.one(), x));
  Vec s = scaled(a.multiply(x, grp_inv), Scalar(-1));
  Generator& out = a.generator_mut(gen);
  out.coproduct = std::move(d);
  out.antipode = std::move(s);
}

std::shared_ptr<const NicholsPair> nichols_generic(const CartanDatum& datum, int cutoff) {
  return NicholsPair::build(datum, Scalar::q(), 0, cutoff);
}

}  // namespace

int positive_root_count(const CartanDatum& datum) { return static_cast<int>(positive_roots(datum).size()); }

int positive_root_height_sum(const CartanDatum& datum) {
  int s = 0;
  for (const auto& r : positive_roots(datum)) s += std::accumulate(r.begin(), r.end(), 0);
  return s;
}

void validate_root_of_unity(const CartanDatum& datum, int l) {
  if (l < 3 || l % 2 == 0) throw InvalidParameter("l must be odd ≥ 3");
  bool g2 = false;
  for (int i = 0; i < datum.rank(); ++i)
    for (int j = 0; j < datum.rank(); ++j)
      if (i != j && datum.cartan(i, j) == -3) g2 = true;
  if (g2 && l % 3 == 0) throw InvalidParameter("l must be coprime to 3 for G2 factors");
}

std::shared_ptr<const NicholsPair> nichols_at_root(const CartanDatum& datum, int l) {
  validate_root_of_unity(datum, l);
  static std::map<std::pair<std::vector<std::vector<int>>, int>, std::shared_ptr<const NicholsPair>> cache;
  auto key = std::make_pair(datum.form(), l);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int top = (l - 1) * positive_root_height_sum(datum);
  auto p = NicholsPair::build(datum, primitive_root(l), l, top + 1);
  if (!p->raising().finite()) throw std::logic_error("Nichols algebra did not terminate at the expected degree");
  cache.emplace(key, p);
  return p;
}

std::shared_ptr<TriangularAlgebra> build_small_quantum_group(const CartanDatum& datum, int l) {
  auto p = nichols_at_root(datum, l);
  TriangularAlgebra::Shape s;
  s.name = "u_eps(" + datum_tag(datum) + ") l=" + std::to_string(l);
  s.lower_name = "F";
  s.group_name = "K";
  s.upper_name = "E";
  s.lower_sign = -1;
  s.upper_sign = 1;
  s.cross_sign = 0;
  s.extra_unit = {{1, Scalar(1)}, {-1, Scalar(-1)}};
  auto a = std::make_shared<TriangularAlgebra>(s, p, p->lowering(), p, p->raising());
  a->install_presentation();
  install_group_data(*a);
  for (int i = 0; i < datum.rank(); ++i) {
    set_right_skew_primitive(*a, a->upper_gen(i), i, 1);
    set_skew_primitive(*a, a->lower_gen(i), i, -1);
  }
  return a;
}

std::shared_ptr<TriangularAlgebra> build_drinfeld_double(const CartanDatum& datum, int l) {
  auto p = nichols_at_root(datum, l);
  TriangularAlgebra::Shape s;
  s.name = "Drin(" + datum_tag(datum) + ") l=" + std::to_string(l);
  s.lower_name = "f";
  s.group_name = "k";
  s.upper_name = "e";
  s.lower_sign = -1;
  s.upper_sign = 1;
  s.cross_sign = 1;
  s.extra_unit = {{0, Scalar(1)}, {-2, Scalar(-1)}};
  auto a = std::make_shared<TriangularAlgebra>(s, p, p->lowering(), p, p->raising());
  a->install_presentation();
  install_group_data(*a);
  for (int i = 0; i < datum.rank(); ++i) {
    set_skew_primitive(*a, a->upper_gen(i), i, -1);
    set_skew_primitive(*a, a->lower_gen(i), i, -1);
  }
  return a;
}

std::shared_ptr<TriangularAlgebra> build_generic_quantum_group(const CartanDatum& datum, int cutoff) {
  auto p = nichols_generic(datum, cutoff);
  TriangularAlgebra::Shape s;
  s.name = "U_q(" + datum_tag(datum) + ") cutoff=" + std::to_string(cutoff);
  s.lower_name = "F";
  s.group_name = "K";
  s.upper_name = "E";
  s.lower_sign = -1;
  s.upper_sign = 1;
  s.cross_sign = 0;
  s.extra_unit = {{1, Scalar(1)}, {-1, Scalar(-1)}};
  auto a = std::make_shared<TriangularAlgebra>(s, p, p->lowering(), p, p->raising());
  a->install_presentation();
  install_group_data(*a);
  for (int i = 0; i < datum.rank(); ++i) {
    set_right_skew_primitive(*a, a->upper_gen(i), i, 1);
    set_skew_primitive(*a, a->lower_gen(i), i, -1);
  }
  return a;
}

namespace {

std::shared_ptr<TriangularAlgebra> torus_family(const std::string& name, std::shared_ptr<const NicholsPair> p) {
  // x_i y_j = q^{i.j} y_j x_i, K x = q^{-i.j} x K, K y = q^{-i.j} y K
  TriangularAlgebra::Shape s;
  s.name = name;
  s.lower_name = "y";
  s.group_name = "K";
  s.upper_name = "x";
  s.lower_sign = -1;
  s.upper_sign = -1;
  s.cross_sign = 1;
  auto a = std::make_shared<TriangularAlgebra>(s, p, p->lowering(), p, p->raising());
  a->install_presentation();
  install_group_data(*a);
  for (int i = 0; i < a->datum().rank(); ++i) {
    set_skew_primitive(*a, a->upper_gen(i), i, -1);
    set_skew_primitive(*a, a->lower_gen(i), i, 1);
  }
  return a;
}

}  // namespace

std::shared_ptr<TriangularAlgebra> build_t_eps(const CartanDatum& datum, int l) {
  return torus_family("t_eps(" + datum_tag(datum) + ") l=" + std::to_string(l), nichols_at_root(datum, l));
}

std::shared_ptr<TriangularAlgebra> build_t_q(const CartanDatum& datum, int cutoff) {
  return torus_family("T_q(" + datum_tag(datum) + ") cutoff=" + std::to_string(cutoff),
                      nichols_generic(datum, cutoff));
}

std::shared_ptr<TriangularAlgebra> build_bbh(const CartanDatum& datum, int l) {
  // Basis B_+ (x) H (x) B_-, both blocks copies of B(F); with the diagonal R-matrix
  // b d = chi(|b|,|d|) d b, k b = eps^{-i.j} b k, k d = eps^{-i.j} d k.
  auto p = nichols_at_root(datum, l);
  TriangularAlgebra::Shape s;
  s.name = "BBH(" + datum_tag(datum) + ") l=" + std::to_string(l);
  s.lower_name = "b";
  s.group_name = "k";
  s.upper_name = "d";
  s.lower_sign = -1;
  s.upper_sign = -1;
  s.cross_sign = -1;
  auto a = std::make_shared<TriangularAlgebra>(s, p, p->lowering(), p, p->lowering());
  a->install_presentation();
  install_group_data(*a);
  for (int i = 0; i < datum.rank(); ++i) {
    set_skew_primitive(*a, a->lower_gen(i), i, -1);
    set_skew_primitive(*a, a->upper_gen(i), i, 1);
  }
  return a;
}

std::shared_ptr<TableHopfAlgebra> build_nichols_hopf(const NicholsAlgebra& n, const std::string& name,
                                                     const std::string& prefix) {
  if (!n.finite()) throw std::invalid_argument("braided table algebra needs a finite Nichols algebra");
  TableHopfAlgebra::Data d;
  d.name = name;
  d.chi = n.bicharacter_ptr();
  d.field = d.chi->field();
  std::size_t dim = n.dim();
  for (std::uint32_t i = 0; i < dim; ++i) {
    d.labels.push_back(word_text(n.word(i), prefix));
    d.degrees.push_back(n.degree(i));
    Monomial m;
    for (char c : n.word(i)) m.push_back(static_cast<unsigned char>(c));
    d.factorizations.push_back(m);
    d.coproducts.push_back(n.coproduct(i));
    d.counits.push_back(n.counit(i));
    d.antipodes.push_back(n.antipode(i));
  }
  d.unit = *n.index_of(Word());
  d.products.reserve(dim * dim);
  for (std::uint32_t a = 0; a < dim; ++a)
    for (std::uint32_t b = 0; b < dim; ++b) d.products.push_back(n.multiply(a, b));
  for (int i = 0; i < n.rank(); ++i) {
    std::uint32_t x = *n.index_of(Word(1, static_cast<char>(i)));
    Generator g;
    g.name = prefix + std::to_string(i + 1);
    g.element = {{x, Scalar(1)}};
    g.coproduct = {{{x, d.unit}, Scalar(1)}, {{d.unit, x}, Scalar(1)}};
    std::sort(g.coproduct.begin(), g.coproduct.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    g.counit = Scalar();
    g.antipode = {{x, Scalar(-1)}};
    g.degree = n.degree(x);
    d.generators.push_back(g);
  }
  for (const WordPoly& r : n.relations()) {
    NCPoly p;
    std::string text;
    for (const auto& [w, c] : r) {
      Monomial m;
      for (char ch : w) m.push_back(static_cast<unsigned char>(ch));
      p.emplace_back(m, c);
      if (!text.empty()) text += " + ";
      text += "(" + c.str() + ")" + word_text(w, prefix);
    }
    d.relations.push_back({truncate_text(text) + " = 0", p});
  }
  return std::make_shared<TableHopfAlgebra>(std::move(d));
}

std::shared_ptr<TableHopfAlgebra> build_cyclic_group_algebra(int order) {
  if (order < 1) throw InvalidParameter("group order must be positive");
  TableHopfAlgebra::Data d;
  d.name = "k[Z/" + std::to_string(order) + "]";
  d.field = Field::rationals();
  auto n = static_cast<std::uint32_t>(order);
  for (std::uint32_t a = 0; a < n; ++a) {
    d.labels.push_back(a == 0 ? "1" : a == 1 ? "g" : "g^" + std::to_string(a));
    d.factorizations.push_back(Monomial(a, 0));
  }
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) d.products.push_back({{(a + b) % n, Scalar(1)}});
  Generator g;
  g.name = "g";
  std::uint32_t gi = n > 1 ? 1 : 0;
  g.element = {{gi, Scalar(1)}};
  g.coproduct = {{{gi, gi}, Scalar(1)}};
  g.counit = Scalar(1);
  g.antipode = {{(n - gi) % n, Scalar(1)}};
  d.generators.push_back(g);
  d.relations.push_back({"g^" + std::to_string(order) + " = 1",
                         {{Monomial{}, Scalar(-1)}, {Monomial(static_cast<std::size_t>(order), 0), Scalar(1)}}});
  return std::make_shared<TableHopfAlgebra>(std::move(d));
}

std::shared_ptr<TableHopfAlgebra> materialize(const HopfAlgebra& a) {
  auto n = a.dim();
  if (!n) throw std::invalid_argument("cannot tabulate an infinite-dimensional algebra");
  TableHopfAlgebra::Data d;
  d.name = a.name();
  d.field = a.field();
  d.chi = a.braiding_ptr();
  auto dim = static_cast<std::uint32_t>(*n);
  for (std::uint32_t i = 0; i < dim; ++i) {
    d.labels.push_back(a.label(i));
    d.factorizations.push_back(a.factorization(i));
    if (d.chi) d.degrees.push_back(a.degree(i));
    d.coproducts.push_back(a.coproduct(i));
    d.counits.push_back(a.counit(i));
    d.antipodes.push_back(a.antipode(i));
  }
  d.unit = a.unit();
  d.products.reserve(static_cast<std::size_t>(dim) * dim);
  for (std::uint32_t x = 0; x < dim; ++x)
    for (std::uint32_t y = 0; y < dim; ++y) d.products.push_back(a.product(x, y));
  d.generators = a.generators();
  d.relations = a.relations();
  return std::make_shared<TableHopfAlgebra>(std::move(d));
}

// ---------------------------------------------------------------- checks

nlohmann::json CheckResult::to_json() const {
  return {{"check", check}, {"pass", pass}, {"witness", witness}};
}

bool HopfReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* HopfReport::find(const std::string& check) const {
  for (const auto& c : checks)
    if (c.check == check) return &c;
  return nullptr;
}

nlohmann::json HopfReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back(c.to_json());
  return {{"algebra", algebra}, {"pass", pass()}, {"checks", arr}};
}

namespace {

using Tensor3 = std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, Scalar>;

void clean(Tensor3& t) {
  for (auto it = t.begin(); it != t.end();) it = it->second.is_zero() ? t.erase(it) : std::next(it);
}

Tensor3 delta_left(const HopfAlgebra& a, const Tensor2& t) {
  Tensor3 out;
  for (const auto& [ij, c] : t)
    for (const auto& [kl, d] : a.coproduct(ij.first)) out[{kl.first, kl.second, ij.second}] += c * d;
  clean(out);
  return out;
}

Tensor3 delta_right(const HopfAlgebra& a, const Tensor2& t) {
  Tensor3 out;
  for (const auto& [ij, c] : t)
    for (const auto& [kl, d] : a.coproduct(ij.second)) out[{ij.first, kl.first, kl.second}] += c * d;
  clean(out);
  return out;
}

Vec counit_left(const HopfAlgebra& a, const Tensor2& t) {
  Accumulator<std::uint32_t> acc;
  for (const auto& [ij, c] : t) acc.add(ij.second, c * a.counit(ij.first));
  return acc.take();
}

Vec counit_right(const HopfAlgebra& a, const Tensor2& t) {
  Accumulator<std::uint32_t> acc;
  for (const auto& [ij, c] : t) acc.add(ij.first, c * a.counit(ij.second));
  return acc.take();
}

Vec antipode_left(const HopfAlgebra& a, const Tensor2& t) {
  Accumulator<std::uint32_t> acc;
  for (const auto& [ij, c] : t) acc.add_all(a.multiply(a.antipode(ij.first), a.basis_vec(ij.second)), c);
  return acc.take();
}

Vec antipode_right(const HopfAlgebra& a, const Tensor2& t) {
  Accumulator<std::uint32_t> acc;
  for (const auto& [ij, c] : t) acc.add_all(a.multiply(a.basis_vec(ij.first), a.antipode(ij.second)), c);
  return acc.take();
}

// Anti-multiplicative extension of S to a monomial in the generators.
Vec antipode_of_monomial(const HopfAlgebra& a, const Monomial& m) {
  const auto& g = a.generators();
  Scalar c(1);
  if (a.braiding()) {
    for (std::size_t s = 0; s < m.size(); ++s)
      for (std::size_t r = 0; r < s; ++r)
        c *= (*a.braiding())(g[static_cast<std::size_t>(m[r])].degree, g[static_cast<std::size_t>(m[s])].degree);
  }
  Vec v = scaled(a.one(), c);
  for (auto it = m.rbegin(); it != m.rend(); ++it) v = a.multiply(v, g[static_cast<std::size_t>(*it)].antipode);
  return v;
}

std::string tensor3_text(const HopfAlgebra& a, const Tensor3& t) {
  if (t.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : t) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")*" + a.label(std::get<0>(k)) + " (x) " + a.label(std::get<1>(k)) + " (x) " +
           a.label(std::get<2>(k));
  }
  return truncate_text(out);
}

Tensor2 tensor_diff(const Tensor2& x, const Tensor2& y) { return add_terms(x, y, Scalar(-1)); }

template <class F>
CheckResult run_check(const std::string& name, F&& body) {
  CheckResult r;
  r.check = name;
  try {
    std::optional<nlohmann::json> w = body();
    if (w) {
      r.pass = false;
      r.witness = *w;
    }
  } catch (const TruncationError& e) {
    r.pass = false;
    r.witness = {{"error", std::string("truncation: ") + e.what()}};
  }
  return r;
}

}  // namespace

HopfReport check_hopf_axioms(const HopfAlgebra& a, const AxiomOptions& opt) {
  HopfReport rep;
  rep.algebra = a.name();
  auto n = a.dim();
  std::mt19937_64 rng(opt.seed);
  bool exhaustive = n && *n <= opt.exhaustive_limit;

  rep.checks.push_back(run_check("associativity", [&]() -> std::optional<nlohmann::json> {
    auto triple = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k, DenseAcc* dense) -> bool {
      if (dense) {
        for (const auto& [t, c] : a.product(i, j))
          for (const auto& [u, d] : a.product(t, k)) dense->add(u, c * d);
        for (const auto& [t, c] : a.product(j, k))
          for (const auto& [u, d] : a.product(i, t)) dense->add(u, -(c * d));
        return !dense->drain_nonzero().has_value();
      }
      Vec lhs = a.multiply(a.product(i, j), a.basis_vec(k));
      Vec rhs = a.multiply(a.basis_vec(i), a.product(j, k));
      return lhs == rhs;
    };
    auto witness = [&](std::uint32_t i, std::uint32_t j, std::uint32_t k) {
      return nlohmann::json{{"triple", {a.label(i), a.label(j), a.label(k)}},
                            {"lhs", a.format(a.multiply(a.product(i, j), a.basis_vec(k)))},
                            {"rhs", a.format(a.multiply(a.basis_vec(i), a.product(j, k)))}};
    };
    if (exhaustive) {
      auto dim = static_cast<std::uint32_t>(*n);
      if (auto table = IntegerTable::build(a)) {
        for (std::uint32_t i = 0; i < dim; ++i)
          for (std::uint32_t j = 0; j < dim; ++j)
            for (std::uint32_t k = 0; k < dim; ++k)
              if (!table->associative(i, j, k)) return witness(i, j, k);
        return std::nullopt;
      }
      DenseAcc dense(dim);
      for (std::uint32_t i = 0; i < dim; ++i)
        for (std::uint32_t j = 0; j < dim; ++j)
          for (std::uint32_t k = 0; k < dim; ++k)
            if (!triple(i, j, k, &dense)) return witness(i, j, k);
      return std::nullopt;
    }
    for (std::size_t s = 0; s < opt.samples; ++s) {
      std::uint32_t i = a.random_basis(rng, opt.sample_degree);
      std::uint32_t j = a.random_basis(rng, opt.sample_degree);
      std::uint32_t k = a.random_basis(rng, opt.sample_degree);
      if (!triple(i, j, k, nullptr)) return witness(i, j, k);
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("unit", [&]() -> std::optional<nlohmann::json> {
    std::size_t count = n ? *n : opt.samples / 10;
    for (std::size_t s = 0; s < count; ++s) {
      std::uint32_t x = n ? static_cast<std::uint32_t>(s) : a.random_basis(rng, opt.sample_degree);
      Vec e = a.basis_vec(x);
      if (a.product(a.unit(), x) != e || a.product(x, a.unit()) != e) return nlohmann::json{{"element", a.label(x)}};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("relations_hold", [&]() -> std::optional<nlohmann::json> {
    for (const auto& r : a.relations()) {
      Vec v = a.evaluate(r.poly);
      if (!v.empty()) return nlohmann::json{{"relation", r.name}, {"value", a.format(v)}};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("coproduct_preserves_relations", [&]() -> std::optional<nlohmann::json> {
    const auto& g = a.generators();
    for (const auto& r : a.relations()) {
      Accumulator<std::pair<std::uint32_t, std::uint32_t>> acc;
      for (const auto& [mono, c] : r.poly) {
        Tensor2 t{{{a.unit(), a.unit()}, Scalar(1)}};
        for (int x : mono) t = a.multiply(t, g[static_cast<std::size_t>(x)].coproduct);
        acc.add_all(t, c);
      }
      Tensor2 v = acc.take();
      if (!v.empty()) return nlohmann::json{{"relation", r.name}, {"coproduct", a.format(v)}};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("counit_preserves_relations", [&]() -> std::optional<nlohmann::json> {
    const auto& g = a.generators();
    for (const auto& r : a.relations()) {
      Scalar s;
      for (const auto& [mono, c] : r.poly) {
        Scalar t = c;
        for (int x : mono) t *= g[static_cast<std::size_t>(x)].counit;
        s += t;
      }
      if (!s.is_zero()) return nlohmann::json{{"relation", r.name}, {"counit", s.str()}};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("antipode_preserves_relations", [&]() -> std::optional<nlohmann::json> {
    for (const auto& r : a.relations()) {
      Accumulator<std::uint32_t> acc;
      for (const auto& [mono, c] : r.poly) acc.add_all(antipode_of_monomial(a, mono), c);
      Vec v = acc.take();
      if (!v.empty()) return nlohmann::json{{"relation", r.name}, {"antipode", a.format(v)}};
    }
    return std::nullopt;
  }));

  // Generator elements must agree with the basis coproduct so that the derived maps are consistent.
  std::vector<std::pair<std::string, Vec>> probes;
  for (const auto& g : a.generators()) probes.emplace_back(g.name, g.element);
  auto table = dynamic_cast<const TableHopfAlgebra*>(&a);
  bool full = table && table->has_tables();
  if (full) {
    probes.clear();
    for (std::uint32_t i = 0; i < *n; ++i) probes.emplace_back(a.label(i), a.basis_vec(i));
  }

  rep.checks.push_back(run_check("generator_data", [&]() -> std::optional<nlohmann::json> {
    for (const auto& g : a.generators()) {
      Tensor2 d = a.coproduct(g.element);
      if (d != g.coproduct)
        return nlohmann::json{{"generator", g.name}, {"stored", a.format(g.coproduct)}, {"basis", a.format(d)}};
      if (a.counit(g.element) != g.counit) return nlohmann::json{{"generator", g.name}, {"counit", g.counit.str()}};
      if (a.antipode(g.element) != g.antipode) return nlohmann::json{{"generator", g.name}, {"antipode", "mismatch"}};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("coassociativity", [&]() -> std::optional<nlohmann::json> {
    for (const auto& [name, v] : probes) {
      Tensor2 d = a.coproduct(v);
      Tensor3 l = delta_left(a, d), r = delta_right(a, d);
      if (l != r)
        return nlohmann::json{{"element", name}, {"lhs", tensor3_text(a, l)}, {"rhs", tensor3_text(a, r)}};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("counit_law", [&]() -> std::optional<nlohmann::json> {
    for (const auto& [name, v] : probes) {
      Tensor2 d = a.coproduct(v);
      if (counit_left(a, d) != v || counit_right(a, d) != v) return nlohmann::json{{"element", name}};
    }
    return std::nullopt;
  }));

  rep.checks.push_back(run_check("antipode", [&]() -> std::optional<nlohmann::json> {
    for (const auto& [name, v] : probes) {
      Tensor2 d = a.coproduct(v);
      Vec expect = scaled(a.one(), a.counit(v));
      Vec l = antipode_left(a, d), r = antipode_right(a, d);
      if (l != expect || r != expect)
        return nlohmann::json{{"element", name}, {"m(S x id)Delta", a.format(l)}, {"m(id x S)Delta", a.format(r)}};
    }
    return std::nullopt;
  }));

  if (full) {
    rep.checks.push_back(run_check("coproduct_multiplicative", [&]() -> std::optional<nlohmann::json> {
      auto dim = static_cast<std::uint32_t>(*n);
      for (std::uint32_t x = 0; x < dim; ++x) {
        for (std::uint32_t y = 0; y < dim; ++y) {
          Tensor2 lhs = a.coproduct(a.product(x, y));
          Tensor2 rhs = a.multiply(a.coproduct(x), a.coproduct(y));
          if (lhs != rhs)
            return nlohmann::json{{"pair", {a.label(x), a.label(y)}},
                                  {"difference", a.format(tensor_diff(lhs, rhs))}};
          if (a.counit(a.product(x, y)) != a.counit(x) * a.counit(y))
            return nlohmann::json{{"pair", {a.label(x), a.label(y)}}, {"counit", "not multiplicative"}};
        }
      }
      return std::nullopt;
    }));
  }
  return rep;
}

// ---------------------------------------------------------------- morphisms

nlohmann::json MorphismVerdict::to_json() const {
  nlohmann::json d = nlohmann::json::array();
  for (const auto& c : details) d.push_back(c.to_json());
  return {{"is_algebra_map", is_algebra_map},
          {"is_coalgebra_map", is_coalgebra_map},
          {"commutes_with_S", commutes_with_S},
          {"bijective", bijective},
          {"checks", d}};
}

MorphismVerdict check_morphism(const HopfAlgebra& source, const HopfAlgebra& target, const std::vector<Vec>& images) {
  MorphismVerdict v;
  if (images.size() != source.generators().size()) throw std::invalid_argument("one image per source generator");
  std::map<std::uint32_t, Vec> memo;
  auto phi_basis = [&](std::uint32_t i) -> const Vec& {
    auto it = memo.find(i);
    if (it != memo.end()) return it->second;
    Vec out = target.one();
    for (int g : source.factorization(i)) out = target.multiply(out, images[static_cast<std::size_t>(g)]);
    return memo.emplace(i, std::move(out)).first->second;
  };
  auto phi = [&](const Vec& x) {
    Accumulator<std::uint32_t> acc;
    for (const auto& [i, c] : x) acc.add_all(phi_basis(i), c);
    return acc.take();
  };
  auto phi2 = [&](const Tensor2& t) {
    Accumulator<std::pair<std::uint32_t, std::uint32_t>> acc;
    for (const auto& [ij, c] : t) acc.add_all(outer(phi_basis(ij.first), phi_basis(ij.second)), c);
    return acc.take();
  };

  v.details.push_back(run_check("algebra_map", [&]() -> std::optional<nlohmann::json> {
    for (const auto& r : source.relations()) {
      Accumulator<std::uint32_t> acc;
      for (const auto& [mono, c] : r.poly) {
        Vec x = target.one();
        for (int g : mono) x = target.multiply(x, images[static_cast<std::size_t>(g)]);
        acc.add_all(x, c);
      }
      Vec val = acc.take();
      if (!val.empty()) return nlohmann::json{{"relation", r.name}, {"image", target.format(val)}};
    }
    return std::nullopt;
  }));
  v.is_algebra_map = v.details.back().pass;

  v.details.push_back(run_check("coalgebra_map", [&]() -> std::optional<nlohmann::json> {
    const auto& gens = source.generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Tensor2 lhs = phi2(gens[g].coproduct);
      Tensor2 rhs = target.coproduct(images[g]);
      if (lhs != rhs)
        return nlohmann::json{{"generator", gens[g].name},
                              {"phi x phi (Delta)", target.format(lhs)},
                              {"Delta (phi)", target.format(rhs)}};
      if (target.counit(images[g]) != gens[g].counit)
        return nlohmann::json{{"generator", gens[g].name}, {"counit", target.counit(images[g]).str()}};
    }
    return std::nullopt;
  }));
  v.is_coalgebra_map = v.details.back().pass;

  v.details.push_back(run_check("antipode", [&]() -> std::optional<nlohmann::json> {
    const auto& gens = source.generators();
    for (std::size_t g = 0; g < gens.size(); ++g) {
      Vec lhs = phi(gens[g].antipode);
      Vec rhs = target.antipode(images[g]);
      if (lhs != rhs)
        return nlohmann::json{
            {"generator", gens[g].name}, {"phi(S)", target.format(lhs)}, {"S(phi)", target.format(rhs)}};
    }
    return std::nullopt;
  }));
  v.commutes_with_S = v.details.back().pass;

  v.details.push_back(run_check("bijective", [&]() -> std::optional<nlohmann::json> {
    auto ns = source.dim(), nt = target.dim();
    if (!ns || !nt) return nlohmann::json{{"error", "bijectivity needs finite dimensions"}};
    if (*ns != *nt) return nlohmann::json{{"dimension_mismatch", {*ns, *nt}}};
    SparseSpan span;
    for (std::uint32_t i = 0; i < *ns; ++i) {
      if (!span.insert(phi_basis(i)))
        return nlohmann::json{{"dependent_image", source.label(i)}, {"rank_at_failure", span.dimension()}};
    }
    return std::nullopt;
  }));
  v.bijective = v.details.back().pass;
  return v;
}

std::vector<Vec> double_to_small_images(const TriangularAlgebra& drin, const TriangularAlgebra& small) {
  int n = drin.datum().rank();
  std::vector<Vec> images(drin.generators().size());
  const auto& g = small.generators();
  for (int i = 0; i < n; ++i) {
    images[static_cast<std::size_t>(drin.upper_gen(i))] =
        small.multiply(g[static_cast<std::size_t>(small.kinv_gen(i))].element,
                       g[static_cast<std::size_t>(small.upper_gen(i))].element);
    images[static_cast<std::size_t>(drin.lower_gen(i))] = g[static_cast<std::size_t>(small.lower_gen(i))].element;
    images[static_cast<std::size_t>(drin.k_gen(i))] = g[static_cast<std::size_t>(small.k_gen(i))].element;
    images[static_cast<std::size_t>(drin.kinv_gen(i))] = g[static_cast<std::size_t>(small.kinv_gen(i))].element;
  }
  return images;
}

// ---------------------------------------------------------------- serialization

nlohmann::json vec_to_json(const Vec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [i, c] : v) a.push_back({i, c.to_json()});
  return a;
}

Vec vec_from_json(const nlohmann::json& j, const Field& f) {
  Vec v;
  for (const auto& t : j) v.emplace_back(t.at(0).get<std::uint32_t>(), Scalar::from_json(t.at(1), f));
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

nlohmann::json tensor_to_json(const Tensor2& t) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [ij, c] : t) a.push_back({ij.first, ij.second, c.to_json()});
  return a;
}

Tensor2 tensor_from_json(const nlohmann::json& j, const Field& f) {
  Tensor2 t;
  for (const auto& x : j)
    t.emplace_back(std::make_pair(x.at(0).get<std::uint32_t>(), x.at(1).get<std::uint32_t>()),
                   Scalar::from_json(x.at(2), f));
  std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return t;
}

nlohmann::json export_algebra(const HopfAlgebra& a) {
  auto n = a.dim();
  if (!n) throw std::invalid_argument("cannot export an infinite-dimensional algebra");
  nlohmann::json j;
  j["name"] = a.name();
  j["field"] = a.field().to_json();
  j["dimension"] = *n;
  nlohmann::json labels = nlohmann::json::array(), fact = nlohmann::json::array();
  for (std::uint32_t i = 0; i < *n; ++i) {
    labels.push_back(a.label(i));
    fact.push_back(a.factorization(i));
  }
  j["basis"] = labels;
  j["factorization"] = fact;
  j["unit"] = a.unit();
  nlohmann::json m = nlohmann::json::array();
  for (std::uint32_t x = 0; x < *n; ++x)
    for (std::uint32_t y = 0; y < *n; ++y)
      for (const auto& [k, c] : a.product(x, y)) m.push_back({x, y, k, c.to_json()});
  j["product"] = m;
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : a.generators()) {
    gens.push_back({{"name", g.name},
                    {"element", vec_to_json(g.element)},
                    {"coproduct", tensor_to_json(g.coproduct)},
                    {"counit", g.counit.to_json()},
                    {"antipode", vec_to_json(g.antipode)},
                    {"degree", g.degree}});
  }
  j["generators"] = gens;
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : a.relations()) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [mono, c] : r.poly) terms.push_back({mono, c.to_json()});
    rels.push_back({{"name", r.name}, {"terms", terms}});
  }
  j["relations"] = rels;
  if (const Bicharacter* chi = a.braiding()) {
    j["braiding"] = {{"group", {{"rank", chi->group().rank()},
                                {"modulus", chi->group().modulus() ? nlohmann::json(chi->group().modulus())
                                                                   : nlohmann::json(nullptr)}}},
                     {"form", chi->form()},
                     {"base", chi->base().to_json()}};
    nlohmann::json deg = nlohmann::json::array();
    for (std::uint32_t i = 0; i < *n; ++i) deg.push_back(a.degree(i));
    j["degrees"] = deg;
  } else {
    j["braiding"] = nullptr;
  }
  return j;
}

std::shared_ptr<TableHopfAlgebra> import_algebra(const nlohmann::json& j) {
  TableHopfAlgebra::Data d;
  d.name = j.at("name").get<std::string>();
  d.field = Field::from_json(j.at("field"));
  auto n = j.at("dimension").get<std::size_t>();
  d.labels = j.at("basis").get<std::vector<std::string>>();
  if (d.labels.size() != n) throw std::invalid_argument("basis size differs from dimension");
  d.factorizations = j.at("factorization").get<std::vector<Monomial>>();
  d.unit = j.at("unit").get<std::uint32_t>();
  d.products.assign(n * n, Vec());
  for (const auto& t : j.at("product")) {
    auto x = t.at(0).get<std::size_t>(), y = t.at(1).get<std::size_t>();
    auto k = t.at(2).get<std::uint32_t>();
    if (x >= n || y >= n || k >= n) throw std::invalid_argument("product index out of range");
    d.products[x * n + y].emplace_back(k, Scalar::from_json(t.at(3), d.field));
  }
  for (auto& v : d.products)
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& g : j.at("generators")) {
    Generator gen;
    gen.name = g.at("name").get<std::string>();
    gen.element = vec_from_json(g.at("element"), d.field);
    gen.coproduct = tensor_from_json(g.at("coproduct"), d.field);
    gen.counit = Scalar::from_json(g.at("counit"), d.field);
    gen.antipode = vec_from_json(g.at("antipode"), d.field);
    gen.degree = g.at("degree").get<GroupElem>();
    d.generators.push_back(gen);
  }
  for (const auto& r : j.at("relations")) {
    Relation rel;
    rel.name = r.at("name").get<std::string>();
    for (const auto& t : r.at("terms")) rel.poly.emplace_back(t.at(0).get<Monomial>(), Scalar::from_json(t.at(1), d.field));
    d.relations.push_back(rel);
  }
  if (!j.at("braiding").is_null()) {
    const auto& b = j.at("braiding");
    int modulus = b.at("group").at("modulus").is_null() ? 0 : b.at("group").at("modulus").get<int>();
    GradingGroup group(b.at("group").at("rank").get<int>(), modulus);
    d.chi = std::make_shared<Bicharacter>(group, b.at("form").get<std::vector<std::vector<int>>>(),
                                          Scalar::from_json(b.at("base"), d.field));
    d.degrees = j.at("degrees").get<std::vector<GroupElem>>();
  }
  return std::make_shared<TableHopfAlgebra>(std::move(d));
}

}  // namespace braidhopf
