#include "braidhopf/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace braidhopf {

namespace {

constexpr std::int64_t kSmallLimit = std::int64_t{1} << 62;

unsigned __int128 uabs(__int128 x) { return x < 0 ? static_cast<unsigned __int128>(-x) : x; }

unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) {
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  }
  while (b != 0) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t gcd_u64(std::int64_t a, std::int64_t b) {
  return std::gcd(static_cast<std::uint64_t>(a < 0 ? -a : a), static_cast<std::uint64_t>(b < 0 ? -b : b));
}

mpz_class mpz_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

bool fits_small(const mpz_class& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) && z < kSmallLimit && z > -kSmallLimit;
}

}  // namespace

// ---------------------------------------------------------------- Rational

Rational::Rational(long long n, long long d) {
  if (d == 0) throw ArithmeticError("division by zero");
  *this = from_i128(n, d);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (fits_small(c.get_num()) && fits_small(c.get_den())) {
    num_ = c.get_num().get_si();
    den_ = c.get_den().get_si();
  } else {
    big_ = std::make_unique<mpq_class>(std::move(c));
  }
}

Rational::Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
  if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
}

Rational& Rational::operator=(const Rational& o) {
  if (this != &o) {
    num_ = o.num_;
    den_ = o.den_;
    big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
  }
  return *this;
}

Rational Rational::from_i128(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (d != 1) {
    unsigned __int128 g = gcd_u128(uabs(n), static_cast<unsigned __int128>(d));
    if (g > 1) {
      n /= static_cast<__int128>(g);
      d /= static_cast<__int128>(g);
    }
  }
  Rational r;
  if (n < kSmallLimit && n > -kSmallLimit && d < kSmallLimit) {
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
  } else {
    mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
    r.big_ = std::make_unique<mpq_class>(std::move(q));
  }
  return r;
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

mpz_class Rational::numerator() const { return big_ ? big_->get_num() : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? big_->get_den() : mpz_class(static_cast<long>(den_)); }

Rational Rational::operator-() const {
  if (big_) return Rational(mpq_class(-*big_));
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  if (big_) return Rational(mpq_class(1 / *big_));
  Rational r;
  r.num_ = num_ < 0 ? -den_ : den_;
  r.den_ = num_ < 0 ? -num_ : num_;
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) {
      __int128 n = static_cast<__int128>(a.num_) + b.num_;
      if (a.den_ == 1 && n < kSmallLimit && n > -kSmallLimit) return Rational(static_cast<long long>(n));
      return Rational::from_i128(n, a.den_);
    }
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return Rational::from_i128(n, d);
  }
  return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (a.den_ == 1 && b.den_ == 1) {
      __int128 n = static_cast<__int128>(a.num_) * b.num_;
      if (n < kSmallLimit && n > -kSmallLimit) return Rational(static_cast<long long>(n));
      return Rational::from_i128(n, 1);
    }
    std::int64_t g1 = static_cast<std::int64_t>(gcd_u64(a.num_, b.den_));
    std::int64_t g2 = static_cast<std::int64_t>(gcd_u64(b.num_, a.den_));
    __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
    __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
    Rational r;
    if (n < kSmallLimit && n > -kSmallLimit && d < kSmallLimit) {
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
    return Rational::from_i128(n, d);
  }
  return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: big values never fit the small range
}

bool operator<(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  return a.to_mpq() < b.to_mpq();
}

std::string Rational::str() const {
  if (big_) {
    if (big_->get_den() == 1) return big_->get_num().get_str();
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw ArithmeticError("division by zero");
  return Rational(q);
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational();
  return c_[static_cast<std::size_t>(i)];
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return Poly(std::move(r));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Poly Poly::scaled(const Rational& s) const {
  if (s.is_zero()) return Poly();
  Poly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  std::vector<Rational> r = a.c_;
  int db = b.degree();
  int da = a.degree();
  std::vector<Rational> q(da >= db ? static_cast<std::size_t>(da - db + 1) : 0);
  Rational inv_lead = b.lead().inverse();
  for (int k = da; k >= db; --k) {
    const Rational& top = r[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    Rational c = top * inv_lead;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k - db + i)] -= c * b.c_[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(k - db)] = c;
  }
  quo = Poly(std::move(q));
  rem = Poly(std::move(r));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inverse());
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

std::string term_text(const Rational& c, const char* var, int e, bool first) {
  std::string out;
  Rational a = c;
  if (a.sign() < 0) {
    out += first ? "-" : " - ";
    a = -a;
  } else if (!first) {
    out += " + ";
  }
  if (e == 0) return out + a.str();
  if (!a.is_one()) out += a.str() + "*";
  out += var;
  if (e != 1) out += "^" + std::to_string(e);
  return out;
}

}  // namespace

std::string Poly::str(const char* var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    out += term_text(c, var, i, first);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Rational& c) : num_(Poly::constant(c)), den_(Poly::constant(1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArithmeticError("division by zero");
  normalize();
}

RatFunc RatFunc::q() { return RatFunc(Poly::monomial(1, 1), Poly::constant(1)); }

RatFunc RatFunc::q_power(int n) {
  if (n >= 0) return RatFunc(Poly::monomial(1, n), Poly::constant(1));
  return RatFunc(Poly::constant(1), Poly::monomial(1, -n));
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      Poly r;
      Poly::divmod(num_, g, num_, r);
      Poly::divmod(den_, g, den_, r);
    }
  }
  if (!den_.lead().is_one()) {
    Rational inv = den_.lead().inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.den_.degree() == 0 && b.den_.degree() == 0) {
    RatFunc r;
    r.num_ = a.num_ * b.num_;
    return r;
  }
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

std::string RatFunc::str() const {
  // den = q^k: print num * q^-k as a Laurent polynomial
  const auto& dc = den_.coeffs();
  bool monomial_den = true;
  for (std::size_t i = 0; i + 1 < dc.size(); ++i) monomial_den = monomial_den && dc[i].is_zero();
  if (monomial_den) {
    if (num_.is_zero()) return "0";
    int shift = den_.degree();
    std::string out;
    bool first = true;
    for (int i = num_.degree(); i >= 0; --i) {
      const Rational& c = num_.coeffs()[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      out += term_text(c, "q", i - shift, first);
      first = false;
    }
    return out;
  }
  return "(" + num_.str("q") + ")/(" + den_.str("q") + ")";
}

// ---------------------------------------------------------------- cyclotomic

std::vector<long long> cyclotomic_polynomial(int l) {
  if (l < 1) throw std::invalid_argument("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
  }
  // x^l - 1 divided exactly by Phi_d for every proper divisor d
  std::vector<long long> p(static_cast<std::size_t>(l) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(l)] = 1;
  for (int d = 1; d < l; ++d) {
    if (l % d != 0) continue;
    std::vector<long long> div = cyclotomic_polynomial(d);
    int dp = static_cast<int>(p.size()) - 1;
    int dd = static_cast<int>(div.size()) - 1;
    std::vector<long long> q(static_cast<std::size_t>(dp - dd + 1), 0);
    for (int k = dp; k >= dd; --k) {
      long long c = p[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      q[static_cast<std::size_t>(k - dd)] = c;
      for (int i = 0; i <= dd; ++i) p[static_cast<std::size_t>(k - dd + i)] -= c * div[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < dd; ++i) {
      if (p[static_cast<std::size_t>(i)] != 0) throw std::logic_error("cyclotomic division not exact");
    }
    p = std::move(q);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache[l] = p;
  return p;
}

CycloField::CycloField(int l) : l_(l), cyc_(cyclotomic_polynomial(l)) {
  phi_ = static_cast<int>(cyc_.size()) - 1;
}

const CycloField& CycloField::get(int l) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloField>> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = fields[l];
  if (!slot) slot.reset(new CycloField(l));
  return *slot;
}

Cyclo::Cyclo(int l) : f_(&CycloField::get(l)) {}

Cyclo::Cyclo(int l, const Rational& c) : f_(&CycloField::get(l)) {
  if (!c.is_zero()) c_.push_back(c);
}

Cyclo::Cyclo(int l, std::vector<Rational> coeffs) : f_(&CycloField::get(l)), c_(std::move(coeffs)) {
  const auto& m = f_->minimal_polynomial();
  int phi = f_->degree();
  for (int k = static_cast<int>(c_.size()) - 1; k >= phi; --k) {
    Rational top = c_[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    c_[static_cast<std::size_t>(k)] = Rational();
    for (int i = 0; i < phi; ++i) {
      if (m[static_cast<std::size_t>(i)] != 0) {
        c_[static_cast<std::size_t>(k - phi + i)] -= top * Rational(m[static_cast<std::size_t>(i)]);
      }
    }
  }
  if (static_cast<int>(c_.size()) > phi) c_.resize(static_cast<std::size_t>(phi));
  trim();
}

void Cyclo::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Cyclo Cyclo::generator(int l) {
  return Cyclo(l, std::vector<Rational>{Rational(0), Rational(1)});
}

Cyclo Cyclo::power_of_generator(int l, long long n) {
  long long e = ((n % l) + l) % l;
  std::vector<Rational> v(static_cast<std::size_t>(e) + 1);
  v.back() = Rational(1);
  return Cyclo(l, std::move(v));
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  if (a.f_ != b.f_) throw ArithmeticError("cyclotomic field mismatch");
  if (a.c_.empty()) return b;
  if (b.c_.empty()) return a;
  Cyclo r(a.order());
  r.c_.resize(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    if (i < a.c_.size() && i < b.c_.size()) {
      r.c_[i] = a.c_[i] + b.c_[i];
    } else if (i < a.c_.size()) {
      r.c_[i] = a.c_[i];
    } else {
      r.c_[i] = b.c_[i];
    }
  }
  r.trim();
  return r;
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  if (a.f_ != b.f_) throw ArithmeticError("cyclotomic field mismatch");
  if (a.c_.empty() || b.c_.empty()) return Cyclo(a.order());
  if (a.c_.size() == 1) return b.scaled(a.c_[0]);
  if (b.c_.size() == 1) return a.scaled(b.c_[0]);
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Cyclo(a.order(), std::move(r));
}

Cyclo Cyclo::scaled(const Rational& s) const {
  if (s.is_zero()) return Cyclo(order());
  Cyclo r = *this;
  if (s.is_one()) return r;
  for (auto& x : r.c_) x *= s;
  return r;
}

Cyclo Cyclo::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  if (c_.size() == 1) return Cyclo(order(), c_[0].inverse());
  // extended Euclid: s*a + t*m = 1
  std::vector<Rational> mc;
  for (long long v : f_->minimal_polynomial()) mc.emplace_back(v);
  Poly r0(mc), r1(c_);
  Poly s0, s1 = Poly::constant(1);
  while (!r1.is_zero()) {
    Poly q, r;
    Poly::divmod(r0, r1, q, r);
    Poly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) throw ArithmeticError("element not invertible modulo cyclotomic polynomial");
  Poly inv = s0.scaled(r0.lead().inverse());
  return Cyclo(order(), inv.coeffs());
}

std::string Cyclo::str() const {
  if (c_.empty()) return "0";
  return Poly(c_).str("e");
}

// ---------------------------------------------------------------- Field

std::string Field::str() const {
  switch (kind) {
    case Kind::Rationals:
      return "Q";
    case Kind::RationalFunctions:
      return "Q(q)";
    case Kind::Cyclotomic:
      return "Q(e" + std::to_string(l) + ")";
  }
  return "?";
}

nlohmann::json Field::to_json() const {
  switch (kind) {
    case Kind::Rationals:
      return {{"kind", "rationals"}};
    case Kind::RationalFunctions:
      return {{"kind", "rational-functions"}, {"variable", "q"}};
    case Kind::Cyclotomic:
      return {{"kind", "cyclotomic"}, {"l", l}};
  }
  return nullptr;
}

Field Field::from_json(const nlohmann::json& j) {
  std::string k = j.at("kind").get<std::string>();
  if (k == "rationals") return rationals();
  if (k == "rational-functions") return rational_functions();
  if (k == "cyclotomic") {
    int l = j.at("l").get<int>();
    if (l < 1) throw std::invalid_argument("cyclotomic order must be positive");
    return cyclotomic(l);
  }
  throw std::invalid_argument("unknown field kind: " + k);
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(RatFunc r) {
  if (r.is_constant()) {
    v_ = r.num().coeff(0);
  } else {
    v_ = std::move(r);
  }
}

Scalar::Scalar(Cyclo c) {
  if (c.is_rational()) {
    v_ = c.coeffs().empty() ? Rational() : c.coeffs()[0];
  } else {
    v_ = std::move(c);
  }
}

bool Scalar::is_zero() const {
  const Rational* r = std::get_if<Rational>(&v_);
  return r != nullptr && r->is_zero();
}

bool Scalar::is_one() const {
  const Rational* r = std::get_if<Rational>(&v_);
  return r != nullptr && r->is_one();
}

Field Scalar::field() const {
  if (std::holds_alternative<RatFunc>(v_)) return Field::rational_functions();
  if (const Cyclo* c = std::get_if<Cyclo>(&v_)) return Field::cyclotomic(c->order());
  return Field::rationals();
}

namespace {

[[noreturn]] void mismatch() { throw ArithmeticError("scalar field mismatch"); }

template <class Op>
Scalar binary(const std::variant<Rational, RatFunc, Cyclo>& a, const std::variant<Rational, RatFunc, Cyclo>& b, Op op) {
  if (const Rational* ra = std::get_if<Rational>(&a)) {
    if (const Rational* rb = std::get_if<Rational>(&b)) return Scalar(op(*ra, *rb));
    if (const RatFunc* fb = std::get_if<RatFunc>(&b)) return Scalar(op(RatFunc(*ra), *fb));
    const Cyclo& cb = std::get<Cyclo>(b);
    return Scalar(op(Cyclo(cb.order(), *ra), cb));
  }
  if (const RatFunc* fa = std::get_if<RatFunc>(&a)) {
    if (const Rational* rb = std::get_if<Rational>(&b)) return Scalar(op(*fa, RatFunc(*rb)));
    if (const RatFunc* fb = std::get_if<RatFunc>(&b)) return Scalar(op(*fa, *fb));
    mismatch();
  }
  const Cyclo& ca = std::get<Cyclo>(a);
  if (const Rational* rb = std::get_if<Rational>(&b)) return Scalar(op(ca, Cyclo(ca.order(), *rb)));
  if (const Cyclo* cb = std::get_if<Cyclo>(&b)) {
    if (cb->order() != ca.order()) mismatch();
    return Scalar(op(ca, *cb));
  }
  mismatch();
}

}  // namespace

Scalar Scalar::operator-() const {
  return std::visit([](const auto& x) { return Scalar(-x); }, v_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  return std::visit([](const auto& x) { return Scalar(x.inverse()); }, v_);
}

Scalar Scalar::pow(long long n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar result(1), base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return binary(a.v_, b.v_, [](const auto& x, const auto& y) { return x + y; });
}

Scalar& Scalar::operator+=(const Scalar& b) {
  if (b.is_zero()) return *this;
  if (is_zero()) return *this = b;
  if (auto* ca = std::get_if<Cyclo>(&v_)) {
    if (const auto* cb = std::get_if<Cyclo>(&b.v_)) {
      Cyclo s = *ca + *cb;
      return *this = Scalar(std::move(s));
    }
  }
  return *this = *this + b;
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) return a;
  return binary(a.v_, b.v_, [](const auto& x, const auto& y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  const Rational* ra = std::get_if<Rational>(&a.v_);
  if (ra != nullptr) {
    if (const Cyclo* cb = std::get_if<Cyclo>(&b.v_)) return Scalar(cb->scaled(*ra));
  }
  const Rational* rb = std::get_if<Rational>(&b.v_);
  if (rb != nullptr) {
    if (const Cyclo* ca = std::get_if<Cyclo>(&a.v_)) return Scalar(ca->scaled(*rb));
  }
  return binary(a.v_, b.v_, [](const auto& x, const auto& y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.v_.index() == b.v_.index()) {
    return std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          return x == std::get<T>(b.v_);
        },
        a.v_);
  }
  // constants are always stored as Rational, so mixed kinds differ
  return false;
}

std::string Scalar::str() const {
  return std::visit([](const auto& x) { return x.str(); }, v_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

nlohmann::json Scalar::to_json() const {
  // the field descriptor travels with the enclosing object
  if (const Cyclo* c = std::get_if<Cyclo>(&v_)) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < c->field().degree(); ++i) {
      arr.push_back(i < static_cast<int>(c->coeffs().size()) ? c->coeffs()[static_cast<std::size_t>(i)].str() : "0");
    }
    return arr;
  }
  return str();
}

Scalar Scalar::from_json(const nlohmann::json& j, const Field& f) {
  if (j.is_array()) {
    if (f.kind != Field::Kind::Cyclotomic) throw std::invalid_argument("coefficient vector outside a cyclotomic field");
    std::vector<Rational> c;
    for (const auto& x : j) c.push_back(x.is_string() ? Rational::parse(x.get<std::string>()) : Rational(x.get<long long>()));
    if (static_cast<int>(c.size()) > CycloField::get(f.l).degree()) {
      throw std::invalid_argument("coefficient vector longer than the field degree");
    }
    return Scalar(Cyclo(f.l, std::move(c)));
  }
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_string()) return parse(j.get<std::string>(), f);
  throw std::invalid_argument("malformed scalar");
}

namespace {

class ScalarParser {
 public:
  ScalarParser(std::string_view s, const Field& f) : s_(s), f_(f) {}

  Scalar run() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("scalar parse error at " + std::to_string(pos_ + 1) + ": " + msg + " in '" +
                                std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }
  Scalar term() {
    Scalar v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        v = v / unary();
      } else {
        return v;
      }
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    Scalar b = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      bool paren = eat('(');
      if (paren && eat('-')) neg = !neg;
      long long e = integer();
      if (paren && !eat(')')) fail("expected ')'");
      b = b.pow(neg ? -e : e);
    }
    return b;
  }
  long long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }
  Scalar atom() {
    skip();
    if (eat('(')) {
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class z(std::string(s_.substr(start, pos_ - start)));
      return Scalar(Rational(mpq_class(z)));
    }
    if (pos_ < s_.size() && s_[pos_] == 'q') {
      ++pos_;
      if (f_.kind != Field::Kind::RationalFunctions) fail("q outside Q(q)");
      return Scalar::q();
    }
    if (pos_ < s_.size() && s_[pos_] == 'e') {
      ++pos_;
      if (f_.kind != Field::Kind::Cyclotomic) fail("e outside a cyclotomic field");
      return Scalar(Cyclo::generator(f_.l));
    }
    fail("unexpected character");
  }

  std::string_view s_;
  Field f_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text, const Field& f) { return ScalarParser(text, f).run(); }

// ---------------------------------------------------------------- quantum combinatorics

Scalar Laurent::evaluate(const Scalar& q) const {
  Scalar result;
  if (coeffs.empty()) return result;
  Scalar p = q.pow(low);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) result += Scalar(coeffs[i]) * p;
    if (i + 1 < coeffs.size()) p *= q;
  }
  return result;
}

Laurent quantum_integer_laurent(long long n) {
  Laurent r;
  if (n == 0) return r;
  long long a = n < 0 ? -n : n;
  long long sign = n < 0 ? -1 : 1;
  r.low = static_cast<int>(1 - a);
  r.coeffs.assign(static_cast<std::size_t>(2 * a - 1), 0);
  for (long long k = 0; k < a; ++k) r.coeffs[static_cast<std::size_t>(2 * k)] = sign;
  return r;
}

Laurent quantum_binomial_laurent(int n, int m) {
  if (m < 0 || m > n) throw std::out_of_range("quantum binomial index out of range");
  // Pascal rule for the balanced binomial:
  // [n m] = q^{-(n-m)} [n-1 m-1] + q^{m} [n-1 m]
  std::map<int, long long> cur{{0, 1}};
  std::vector<std::map<int, long long>> row{cur};  // row for n = 0
  for (int r = 1; r <= n; ++r) {
    std::vector<std::map<int, long long>> next(static_cast<std::size_t>(r) + 1);
    for (int k = 0; k <= r; ++k) {
      auto& out = next[static_cast<std::size_t>(k)];
      if (k >= 1) {
        for (auto [e, c] : row[static_cast<std::size_t>(k - 1)]) out[e - (r - k)] += c;
      }
      if (k <= r - 1) {
        for (auto [e, c] : row[static_cast<std::size_t>(k)]) out[e + k] += c;
      }
    }
    row = std::move(next);
  }
  const auto& poly = row[static_cast<std::size_t>(m)];
  Laurent out;
  if (poly.empty()) return out;
  out.low = poly.begin()->first;
  out.coeffs.assign(static_cast<std::size_t>(poly.rbegin()->first - out.low + 1), 0);
  for (auto [e, c] : poly) out.coeffs[static_cast<std::size_t>(e - out.low)] = c;
  return out;
}

Scalar quantum_integer(long long n, const Scalar& q) {
  if (q.is_zero()) throw ArithmeticError("division by zero: q = 0");
  if ((q - q.inverse()).is_zero()) throw ArithmeticError("division by zero: q - q^-1 = 0");
  return quantum_integer_laurent(n).evaluate(q);
}

Scalar quantum_binomial(int n, int m, const Scalar& q) {
  if (m < 0 || m > n) throw std::out_of_range("quantum binomial index out of range");
  if (q.is_zero()) throw ArithmeticError("division by zero: q = 0");
  return quantum_binomial_laurent(n, m).evaluate(q);
}

Scalar quantum_factorial(int n, const Scalar& q) {
  Scalar r(1);
  for (int k = 1; k <= n; ++k) r *= quantum_integer(k, q);
  return r;
}

Scalar primitive_root(int l) {
  if (l < 1) throw std::invalid_argument("l must be positive");
  return Scalar(Cyclo::generator(l));
}

}  // namespace braidhopf
