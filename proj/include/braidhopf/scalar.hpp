// Exact coefficient arithmetic: Q, Q(q) and cyclotomic fields Q(eps_l).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace braidhopf {

struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rational number. Small values live in two int64 words; anything that
// overflows moves to an mpq_class and moves back once it fits again.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);

  Rational(const Rational& o);
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o);
  Rational& operator=(Rational&&) noexcept = default;
  ~Rational() = default;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;
  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;

  Rational operator-() const;
  Rational inverse() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }
  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator<(const Rational& a, const Rational& b);

  // "a/b", or "a" for integers.
  std::string str() const;
  static Rational parse(std::string_view text);

 private:
  static Rational from_i128(__int128 n, __int128 d);
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> c);
  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }
  Rational coeff(int i) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const Rational& s) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  static void divmod(const Poly& a, const Poly& b, Poly& quo, Poly& rem);
  static Poly gcd(Poly a, Poly b);  // monic, or zero
  Poly monic() const;

  std::string str(const char* var) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Element of Q(q) as num/den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(1)) {}
  RatFunc(const Rational& c);  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);
  static RatFunc q();
  static RatFunc q_power(int n);

  bool is_zero() const { return num_.is_zero(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  RatFunc operator-() const;
  RatFunc inverse() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Laurent-normalized text, e.g. "q^2 + 1 + q^-2" or "(q^2 + 1)/(q^2 - 1)".
  std::string str() const;

 private:
  void normalize();
  Poly num_, den_;
};

// Residues modulo the l-th cyclotomic polynomial.
class CycloField {
 public:
  static const CycloField& get(int l);
  int order() const { return l_; }
  int degree() const { return phi_; }
  // Phi_l with integer coefficients, low to high, monic.
  const std::vector<long long>& minimal_polynomial() const { return cyc_; }

 private:
  explicit CycloField(int l);
  int l_;
  int phi_;
  std::vector<long long> cyc_;
};

std::vector<long long> cyclotomic_polynomial(int l);

class Cyclo {
 public:
  explicit Cyclo(int l);  // zero
  Cyclo(int l, const Rational& c);
  Cyclo(int l, std::vector<Rational> coeffs);  // arbitrary length, reduced here
  static Cyclo generator(int l);
  static Cyclo power_of_generator(int l, long long n);

  int order() const { return f_->order(); }
  const CycloField& field() const { return *f_; }
  bool is_zero() const { return c_.empty(); }
  // Power-basis coefficients, trailing zeros stripped.
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_rational() const { return c_.size() <= 1; }

  Cyclo operator-() const;
  Cyclo inverse() const;
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }
  Cyclo scaled(const Rational& s) const;

  std::string str() const;

 private:
  void trim();
  const CycloField* f_;
  std::vector<Rational> c_;
};

// Field descriptor.
struct Field {
  enum class Kind { Rationals, RationalFunctions, Cyclotomic };
  Kind kind = Kind::Rationals;
  int l = 0;  // only for Cyclotomic

  static Field rationals() { return {Kind::Rationals, 0}; }
  static Field rational_functions() { return {Kind::RationalFunctions, 0}; }
  static Field cyclotomic(int l) { return {Kind::Cyclotomic, l}; }
  friend bool operator==(const Field& a, const Field& b) { return a.kind == b.kind && a.l == b.l; }
  std::string str() const;
  nlohmann::json to_json() const;
  static Field from_json(const nlohmann::json& j);
};

// Field element. Rationals embed in every field; mixed operands are promoted.
class Scalar {
 public:
  Scalar() : v_(Rational()) {}
  Scalar(long long n) : v_(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational r) : v_(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Scalar(RatFunc r);                        // NOLINT(google-explicit-constructor)
  Scalar(Cyclo c);                          // NOLINT(google-explicit-constructor)

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar q() { return Scalar(RatFunc::q()); }

  bool is_zero() const;
  bool is_one() const;
  Field field() const;
  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  const Rational& as_rational() const { return std::get<Rational>(v_); }
  const RatFunc* as_ratfunc() const { return std::get_if<RatFunc>(&v_); }
  const Cyclo* as_cyclo() const { return std::get_if<Cyclo>(&v_); }

  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(long long n) const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;
  nlohmann::json to_json() const;
  static Scalar from_json(const nlohmann::json& j, const Field& f);
  // Accepts rationals, polynomial expressions in q (Q(q)) or e (cyclotomic).
  static Scalar parse(std::string_view text, const Field& f);

 private:
  std::variant<Rational, RatFunc, Cyclo> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Laurent polynomial with integer coefficients, used for quantum combinatorics.
struct Laurent {
  int low = 0;                  // exponent of coeffs[0]
  std::vector<long long> coeffs;
  Scalar evaluate(const Scalar& q) const;
};

Laurent quantum_integer_laurent(long long n);
Laurent quantum_binomial_laurent(int n, int m);

Scalar quantum_integer(long long n, const Scalar& q);
Scalar quantum_binomial(int n, int m, const Scalar& q);
Scalar quantum_factorial(int n, const Scalar& q);
Scalar primitive_root(int l);

}  // namespace braidhopf
