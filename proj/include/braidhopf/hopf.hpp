// Hopf algebras given by structure constants on a basis, with generators,
// defining relations and coproduct/counit/antipode data on generators.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "braidhopf/braided.hpp"
#include "braidhopf/linalg.hpp"
#include "braidhopf/nichols.hpp"

namespace braidhopf {

using Tensor2 = Terms<std::pair<std::uint32_t, std::uint32_t>>;
using Monomial = std::vector<int>;  // generator indices, left to right
using NCPoly = Terms<Monomial>;

struct Generator {
  std::string name;
  Vec element;
  Tensor2 coproduct;
  Scalar counit;
  Vec antipode;
  GroupElem degree;  // grading for braided algebras, empty otherwise
};

struct Relation {
  std::string name;
  NCPoly poly;  // the relation reads poly = 0
};

struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class HopfAlgebra {
 public:
  virtual ~HopfAlgebra() = default;

  const std::string& name() const { return name_; }
  Field field() const { return field_; }
  // Finite dimension, or nullopt for an algebra on an infinite (lazily indexed) basis.
  virtual std::optional<std::size_t> dim() const = 0;
  virtual std::string label(std::uint32_t i) const = 0;
  virtual const Vec& product(std::uint32_t a, std::uint32_t b) const = 0;
  virtual std::uint32_t unit() const = 0;
  // Generator indices whose product is exactly basis element i.
  virtual Monomial factorization(std::uint32_t i) const = 0;
  // Random basis element; infinite bases restrict block degrees to degree_bound.
  virtual std::uint32_t random_basis(std::mt19937_64& rng, int degree_bound) const;
  // Braided algebras carry a bicharacter and a grading of the basis.
  const Bicharacter* braiding() const { return chi_.get(); }
  const std::shared_ptr<const Bicharacter>& braiding_ptr() const { return chi_; }
  virtual GroupElem degree(std::uint32_t i) const;

  virtual Tensor2 coproduct(std::uint32_t i) const;
  virtual Scalar counit(std::uint32_t i) const;
  virtual Vec antipode(std::uint32_t i) const;

  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<Relation>& relations() const { return rels_; }
  int generator_index(const std::string& name) const;

  Vec multiply(const Vec& a, const Vec& b) const;
  // (a x b)(c x d) = chi(|b|,|c|) ac x bd, with chi = 1 for ordinary algebras
  Tensor2 multiply(const Tensor2& a, const Tensor2& b) const;
  Vec basis_vec(std::uint32_t i) const { return {{i, Scalar(1)}}; }
  Vec one() const { return basis_vec(unit()); }
  Vec evaluate(const NCPoly& p) const;
  Tensor2 coproduct(const Vec& v) const;
  Scalar counit(const Vec& v) const;
  Vec antipode(const Vec& v) const;
  std::string format(const Vec& v) const;
  std::string format(const Tensor2& t) const;

  // Replace the data of one generator; used for mutation tests.
  void set_generator(std::size_t i, Generator g) { gens_.at(i) = std::move(g); }

 protected:
  HopfAlgebra(std::string name, Field field, std::shared_ptr<const Bicharacter> chi)
      : name_(std::move(name)), field_(field), chi_(std::move(chi)) {}
  std::string name_;
  Field field_;
  std::shared_ptr<const Bicharacter> chi_;
  std::vector<Generator> gens_;
  std::vector<Relation> rels_;

 private:
  mutable std::unordered_map<std::uint32_t, Tensor2> coproduct_cache_;
  mutable std::unordered_map<std::uint32_t, Vec> antipode_cache_;
};

// Finite-dimensional algebra with explicit tables.
class TableHopfAlgebra : public HopfAlgebra {
 public:
  struct Data {
    std::string name;
    Field field;
    std::shared_ptr<const Bicharacter> chi;  // null for ordinary Hopf algebras
    std::vector<std::string> labels;
    std::vector<GroupElem> degrees;          // only for braided algebras
    std::uint32_t unit = 0;
    std::vector<Vec> products;               // a * dim + b
    std::vector<Monomial> factorizations;
    std::vector<Tensor2> coproducts;         // optional full tables; derived from generators if empty
    std::vector<Scalar> counits;
    std::vector<Vec> antipodes;
    std::vector<Generator> generators;
    std::vector<Relation> relations;
  };
  explicit TableHopfAlgebra(Data d);

  std::optional<std::size_t> dim() const override { return d_.labels.size(); }
  std::string label(std::uint32_t i) const override { return d_.labels[i]; }
  const Vec& product(std::uint32_t a, std::uint32_t b) const override {
    return d_.products[static_cast<std::size_t>(a) * d_.labels.size() + b];
  }
  std::uint32_t unit() const override { return d_.unit; }
  Monomial factorization(std::uint32_t i) const override { return d_.factorizations[i]; }
  GroupElem degree(std::uint32_t i) const override;
  Tensor2 coproduct(std::uint32_t i) const override;
  Scalar counit(std::uint32_t i) const override;
  Vec antipode(std::uint32_t i) const override;
  bool has_tables() const { return !d_.coproducts.empty(); }
  const Data& data() const { return d_; }

 private:
  Data d_;
};

// Algebra on monomials F^a K^lambda E^c: a lower and an upper Nichols block and a
// group of K's, multiplied by straightening
//   K^lambda L_j = base^{sL lambda.j} L_j K^lambda,  K^lambda U_j = base^{sU lambda.j} U_j K^lambda,
//   U_i L_j = base^{sX i.j} L_j U_i + delta_ij * extra_i(K).
class TriangularAlgebra : public HopfAlgebra {
 public:
  struct Shape {
    std::string name;
    std::string lower_name, group_name, upper_name;  // letter prefixes, e.g. "F", "K", "E"
    int lower_sign = -1, upper_sign = 1, cross_sign = 0;
    // extra_i as a combination of K^mu, mu given as a multiple of alpha_i
    std::vector<std::pair<int, Scalar>> extra_unit;  // (multiple of alpha_i, coefficient before 1/(b_i - b_i^-1))
    bool divide_extra = true;
  };
  struct Key {
    std::uint32_t lower;
    GroupElem k;
    std::uint32_t upper;
    friend bool operator<(const Key& x, const Key& y) {
      if (x.lower != y.lower) return x.lower < y.lower;
      if (x.k != y.k) return x.k < y.k;
      return x.upper < y.upper;
    }
    friend bool operator==(const Key& x, const Key& y) {
      return x.lower == y.lower && x.k == y.k && x.upper == y.upper;
    }
  };

  TriangularAlgebra(Shape shape, std::shared_ptr<const NicholsPair> lower_pair, const NicholsAlgebra& lower,
                    std::shared_ptr<const NicholsPair> upper_pair, const NicholsAlgebra& upper);

  std::optional<std::size_t> dim() const override;
  std::string label(std::uint32_t i) const override;
  const Vec& product(std::uint32_t a, std::uint32_t b) const override;
  std::uint32_t unit() const override { return unit_; }
  Monomial factorization(std::uint32_t i) const override;
  std::uint32_t random_basis(std::mt19937_64& rng, int degree_bound) const override;

  const Shape& shape() const { return shape_; }
  const CartanDatum& datum() const { return datum_; }
  int modulus() const { return modulus_; }
  const Scalar& base() const { return base_; }
  const NicholsAlgebra& lower() const { return *lower_; }
  const NicholsAlgebra& upper() const { return *upper_; }
  std::uint32_t index(const Key& k) const;
  Key key(std::uint32_t i) const;
  // Generator indices: upper letters, lower letters, K_i, K_i^{-1}.
  int upper_gen(int i) const { return i; }
  int lower_gen(int i) const { return rank_ + i; }
  int k_gen(int i) const { return 2 * rank_ + i; }
  int kinv_gen(int i) const { return 3 * rank_ + i; }
  Vec k_element(const GroupElem& lambda) const;

  // Installs generators (element + counit) and the defining relations; coproduct and antipode
  // data are filled in by the family builders.
  void install_presentation();
  Generator& generator_mut(int i) { return gens_.at(static_cast<std::size_t>(i)); }
  void add_relation(Relation r) { rels_.push_back(std::move(r)); }

 private:
  using Elem = std::map<Key, Scalar>;
  Scalar pow_base(long long e) const { return powers_.power(e); }
  long long k_pair(const GroupElem& lambda, const Multidegree& m) const;
  const std::vector<std::pair<Key, Scalar>>& upper_times_lower(std::uint32_t c, std::uint32_t b) const;
  void upper_letter_times(int i, const Elem& in, Elem& out) const;
  GroupElem reduce(GroupElem g) const;
  std::vector<std::pair<GroupElem, Scalar>> extra(int i) const;

  Shape shape_;
  std::shared_ptr<const NicholsPair> lower_pair_, upper_pair_;
  const NicholsAlgebra* lower_;
  const NicholsAlgebra* upper_;
  CartanDatum datum_;
  Scalar base_;
  int modulus_;
  int rank_;
  Bicharacter powers_;  // base^e lookup
  std::uint32_t lower_one_, upper_one_, unit_;
  std::vector<std::uint32_t> lower_letter_, upper_letter_;
  std::vector<Multidegree> lower_mdeg_, upper_mdeg_;
  std::size_t group_size_ = 0;  // l^n for finite K, 0 otherwise
  mutable std::vector<Key> keys_;  // generic case: interned keys
  mutable std::map<Key, std::uint32_t> key_index_;
  mutable std::unordered_map<std::uint64_t, Vec> prod_cache_;
  mutable std::unordered_map<std::uint64_t, std::vector<std::pair<Key, Scalar>>> ef_cache_;
};

// Families.
void validate_root_of_unity(const CartanDatum& datum, int l);
std::shared_ptr<const NicholsPair> nichols_at_root(const CartanDatum& datum, int l);
std::shared_ptr<TriangularAlgebra> build_small_quantum_group(const CartanDatum& datum, int l);
std::shared_ptr<TriangularAlgebra> build_drinfeld_double(const CartanDatum& datum, int l);
std::shared_ptr<TriangularAlgebra> build_generic_quantum_group(const CartanDatum& datum, int cutoff);
std::shared_ptr<TriangularAlgebra> build_t_eps(const CartanDatum& datum, int l);
std::shared_ptr<TriangularAlgebra> build_t_q(const CartanDatum& datum, int cutoff);
std::shared_ptr<TriangularAlgebra> build_bbh(const CartanDatum& datum, int l);
// The braided Hopf algebra B(F) or B(E) with its own tables.
std::shared_ptr<TableHopfAlgebra> build_nichols_hopf(const NicholsAlgebra& n, const std::string& name,
                                                     const std::string& prefix);
std::shared_ptr<TableHopfAlgebra> build_cyclic_group_algebra(int order);
// Full tables of a finite algebra.
std::shared_ptr<TableHopfAlgebra> materialize(const HopfAlgebra& a);

int positive_root_count(const CartanDatum& datum);
int positive_root_height_sum(const CartanDatum& datum);

struct CheckResult {
  std::string check;
  bool pass = true;
  nlohmann::json witness;  // null when passing
  nlohmann::json to_json() const;
};

struct HopfReport {
  std::string algebra;
  std::vector<CheckResult> checks;
  bool pass() const;
  const CheckResult* find(const std::string& check) const;
  nlohmann::json to_json() const;
};

struct AxiomOptions {
  std::size_t exhaustive_limit = 5000;
  std::size_t samples = 10000;
  std::uint64_t seed = 20240917;
  int sample_degree = 2;  // block degree bound for sampling infinite bases
};

HopfReport check_hopf_axioms(const HopfAlgebra& a, const AxiomOptions& opt = {});

struct MorphismVerdict {
  bool is_algebra_map = true;
  bool is_coalgebra_map = true;
  bool commutes_with_S = true;
  bool bijective = true;
  std::vector<CheckResult> details;
  bool all() const { return is_algebra_map && is_coalgebra_map && commutes_with_S && bijective; }
  nlohmann::json to_json() const;
};

// images[g] is the image of source generator g in the target.
MorphismVerdict check_morphism(const HopfAlgebra& source, const HopfAlgebra& target, const std::vector<Vec>& images);
// phi(k_i) = K_i, phi(e_i) = K_i^{-1} E_i, phi(f_i) = F_i from the double to u_eps.
std::vector<Vec> double_to_small_images(const TriangularAlgebra& drin, const TriangularAlgebra& small);

nlohmann::json export_algebra(const HopfAlgebra& a);
std::shared_ptr<TableHopfAlgebra> import_algebra(const nlohmann::json& j);

nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j, const Field& f);
nlohmann::json tensor_to_json(const Tensor2& t);
Tensor2 tensor_from_json(const nlohmann::json& j, const Field& f);

}  // namespace braidhopf
