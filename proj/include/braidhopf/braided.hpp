// Group-graded vector spaces with bicharacter braidings and graded linear maps.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "braidhopf/linalg.hpp"
#include "braidhopf/scalar.hpp"

namespace braidhopf {

using GroupElem = std::vector<int>;

// Symmetric form i.j on the simple roots.
class CartanDatum {
 public:
  explicit CartanDatum(std::vector<std::vector<int>> form, std::string name = "");
  // "A3", "B2", "C3", "D4", "G2", products such as "A1xA1" or "A1+A2".
  static CartanDatum named(const std::string& type);

  int rank() const { return static_cast<int>(form_.size()); }
  int dot(int i, int j) const { return form_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  long long dot(const GroupElem& a, const GroupElem& b) const;
  // a_ij = 2(i.j)/(i.i)
  int cartan(int i, int j) const { return 2 * dot(i, j) / dot(i, i); }
  const std::vector<std::vector<int>>& form() const { return form_; }
  const std::string& name() const { return name_; }
  nlohmann::json to_json() const;
  static CartanDatum from_json(const nlohmann::json& j);

 private:
  std::vector<std::vector<int>> form_;
  std::string name_;
};

class GradingGroup {
 public:
  GradingGroup(int rank, int modulus) : rank_(rank), modulus_(modulus) {}
  int rank() const { return rank_; }
  int modulus() const { return modulus_; }  // 0 means free abelian
  GroupElem zero() const { return GroupElem(static_cast<std::size_t>(rank_), 0); }
  GroupElem unit(int i) const;
  GroupElem reduce(GroupElem g) const;
  GroupElem add(const GroupElem& a, const GroupElem& b) const;
  GroupElem neg(const GroupElem& a) const;
  friend bool operator==(const GradingGroup& a, const GradingGroup& b) {
    return a.rank_ == b.rank_ && a.modulus_ == b.modulus_;
  }

 private:
  int rank_;
  int modulus_;
};

// chi(g, h) = base^{g^T form h}
class Bicharacter {
 public:
  Bicharacter(GradingGroup group, std::vector<std::vector<int>> form, Scalar base);
  static Bicharacter trivial();

  const GradingGroup& group() const { return group_; }
  const std::vector<std::vector<int>>& form() const { return form_; }
  const Scalar& base() const { return base_; }
  Field field() const;
  long long exponent(const GroupElem& g, const GroupElem& h) const;
  Scalar power(long long e) const;
  Scalar operator()(const GroupElem& g, const GroupElem& h) const { return power(exponent(g, h)); }
  bool same_as(const Bicharacter& o) const;

 private:
  GradingGroup group_;
  std::vector<std::vector<int>> form_;
  Scalar base_;
  std::vector<Scalar> cyclic_powers_;  // base^0..base^{l-1} when modulus > 0
};

Bicharacter cartan_bicharacter(const CartanDatum& datum, const Scalar& base, int modulus);

struct BasisVector {
  std::string name;
  GroupElem degree;
};

class BraidedSpace {
 public:
  BraidedSpace(std::string name, std::shared_ptr<const Bicharacter> chi, std::vector<BasisVector> basis);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return basis_.size(); }
  const BasisVector& basis(std::size_t i) const { return basis_[i]; }
  const std::vector<BasisVector>& basis() const { return basis_; }
  const Bicharacter& bicharacter() const { return *chi_; }
  const std::shared_ptr<const Bicharacter>& bicharacter_ptr() const { return chi_; }

  // Needs the Cartan form as a datum for the schema; falls back to the raw form.
  nlohmann::json to_json() const;
  static std::shared_ptr<BraidedSpace> from_json(const nlohmann::json& j);

 private:
  std::string name_;
  std::shared_ptr<const Bicharacter> chi_;
  std::vector<BasisVector> basis_;
};

using SpacePtr = std::shared_ptr<const BraidedSpace>;

// Tensor product of named spaces; the empty product is the unit object.
class Object {
 public:
  Object() = default;
  explicit Object(std::vector<SpacePtr> factors);
  Object(SpacePtr single);  // NOLINT(google-explicit-constructor)

  const std::vector<SpacePtr>& factors() const { return factors_; }
  std::size_t dim() const { return dim_; }
  bool is_unit() const { return factors_.empty(); }
  std::vector<std::size_t> split(std::size_t index) const;
  std::size_t join(const std::vector<std::size_t>& parts) const;
  GroupElem degree(std::size_t index) const;
  std::string label(std::size_t index) const;
  std::string str() const;  // "B x V", or "I"
  const Bicharacter* bicharacter() const;

  friend Object operator*(const Object& a, const Object& b);  // tensor product
  friend bool operator==(const Object& a, const Object& b);
  friend bool operator!=(const Object& a, const Object& b) { return !(a == b); }

 private:
  std::vector<SpacePtr> factors_;
  std::size_t dim_ = 1;
};

// Linear map between objects, stored by columns (image of each domain basis vector).
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(Object dom, Object cod);
  static GradedMap identity(const Object& obj);

  const Object& domain() const { return dom_; }
  const Object& codomain() const { return cod_; }
  const Vec& column(std::size_t j) const { return cols_[j]; }
  void set_column(std::size_t j, Vec v) { cols_[j] = std::move(v); }
  Scalar entry(std::size_t row, std::size_t col) const;
  bool is_zero() const;
  Vec apply(const Vec& v) const;
  GradedMap scaled(const Scalar& s) const;

  // Coordinate triples sorted by (row, col).
  nlohmann::json to_json() const;
  static GradedMap from_json(const nlohmann::json& triples, Object dom, Object cod, const Field& f);
  Matrix to_matrix() const;

 private:
  Object dom_, cod_;
  std::vector<Vec> cols_;
};

struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GradedMap compose(const GradedMap& g, const GradedMap& f);  // g after f
GradedMap tensor_map(const GradedMap& f, const GradedMap& g);
GradedMap add_maps(const GradedMap& f, const GradedMap& g, const Scalar& sg = Scalar(1));
// Psi_{V,W}: V x W -> W x V, v x w -> chi(|v|,|w|) w x v
GradedMap braiding(const Object& v, const Object& w);
// Inverse of braiding(v, w), a map W x V -> V x W.
GradedMap braiding_inverse(const Object& v, const Object& w);
// Plain transposition V x W -> W x V.
GradedMap swap_map(const Object& v, const Object& w);

struct Difference {
  std::size_t column;
  std::size_t row;
  Scalar lhs, rhs;
  nlohmann::json to_json(const GradedMap& context) const;
};
std::optional<Difference> first_difference(const GradedMap& a, const GradedMap& b);

}  // namespace braidhopf
