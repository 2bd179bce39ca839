// Free braided bialgebras on primitive generators, the duality pairing between
// the raising and lowering sides, and the Nichols quotients by its radical.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "braidhopf/braided.hpp"
#include "braidhopf/linalg.hpp"

namespace braidhopf {

// A word in the generators; letter k is the character with code k.
using Word = std::string;
using Multidegree = std::vector<int>;
using WordPoly = Terms<Word>;  // linear combination of words

// Raised when a product leaves the computed degree range.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the coproduct does not descend to the quotient.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string word_text(const Word& w, const std::string& prefix);
Multidegree multidegree_of(const Word& w, int rank);

struct TensorTerm {
  Word left, right;
  Scalar coef;
};

// Tensor algebra on rank generators of degrees sign*alpha_i with the braided shuffle coproduct.
class FreeBraidedBialgebra {
 public:
  FreeBraidedBialgebra(std::shared_ptr<const Bicharacter> chi, int sign, int cutoff);

  int rank() const { return rank_; }
  int sign() const { return sign_; }
  int cutoff() const { return cutoff_; }
  const Bicharacter& bicharacter() const { return *chi_; }
  const std::shared_ptr<const Bicharacter>& bicharacter_ptr() const { return chi_; }
  // chi(|x_a|, |x_b|) for letters a, b
  const Scalar& letter_chi(int a, int b) const {
    return letter_chi_[static_cast<std::size_t>(a * rank_ + b)];
  }
  GroupElem degree(const Word& w) const;

  // All words of length <= cutoff, ordered by length then lexicographically.
  std::vector<Word> basis() const;
  // Concatenation; throws TruncationError beyond the cutoff.
  Word product(const Word& a, const Word& b) const;
  std::vector<TensorTerm> coproduct(const Word& w) const;
  // Terms x_p (x) w\p of the (1, k-1) component.
  std::vector<TensorTerm> coproduct_first_letter(const Word& w) const;
  Scalar counit(const Word& w) const { return w.empty() ? Scalar(1) : Scalar(); }
  // (-1)^k prod_{r<s} chi(x_r, x_s) x_k ... x_1
  std::pair<Scalar, Word> antipode(const Word& w) const;

 private:
  std::shared_ptr<const Bicharacter> chi_;
  int rank_;
  int sign_;
  int cutoff_;
  std::vector<Scalar> letter_chi_;
};

// The pairing <f, e> between lowering words f and raising words e, built from
// <f_i, e_j> = delta_ij / (b_i - b_i^{-1}), b_i = base^{i.i/2}, by the rule
// <f_j f', e> = sum over positions p of e with e_p = j of
//   <f_j, e_j> * prod_{r<p} chi(|e_r|, |e_p|) * <f', e without p>.
class LusztigPairing {
 public:
  LusztigPairing(const FreeBraidedBialgebra& eside, const FreeBraidedBialgebra& fside,
                 std::vector<Scalar> generator_values);
  static std::vector<Scalar> standard_generator_values(const CartanDatum& datum, const Scalar& base);

  const Scalar& generator_value(int i) const { return gen_[static_cast<std::size_t>(i)]; }
  Scalar operator()(const Word& f, const Word& e) const;
  Scalar pair(const Word& f, const WordPoly& e) const;
  Matrix gram(const std::vector<Word>& fwords, const std::vector<Word>& ewords) const;

 private:
  const FreeBraidedBialgebra& e_;
  const FreeBraidedBialgebra& f_;
  std::vector<Scalar> gen_;
  mutable std::unordered_map<std::string, Scalar> memo_;
};

// Which orientation of the second pairing rule <f, e e'> = sum <f_(a), e><f_(b), e'> to test.
enum class SecondRule { FirstLegWithLeft, SecondLegWithLeft };

struct PairingViolation {
  std::string where;  // the pairing instance, e.g. "<f1f2, e1e2>"
  Scalar lhs, rhs;
};

// First failure of the chosen second rule over all words with |f| <= max_degree.
std::optional<PairingViolation> second_rule_violation(const LusztigPairing& p, const FreeBraidedBialgebra& eside,
                                                      const FreeBraidedBialgebra& fside, SecondRule rule,
                                                      int max_degree);
// First failure of <f f', e> = sum <f, e_(1)><f', e_(2)> over all splits, |e| <= max_degree.
std::optional<PairingViolation> first_rule_violation(const LusztigPairing& p, const FreeBraidedBialgebra& eside,
                                                     const FreeBraidedBialgebra& fside, int max_degree);

enum class Side { Raising, Lowering };

// Quotient of one side by the radical of the pairing, truncated at the cutoff.
class NicholsAlgebra {
 public:
  struct Piece {
    Multidegree mdeg;
    std::vector<Word> words;             // all words of this multidegree, lexicographic
    std::vector<std::uint32_t> basis;    // indices (into the algebra basis) of pivot words
    std::unordered_map<Word, Vec> projection;
    std::vector<WordPoly> radical;       // kernel basis in word coordinates
  };

  Side side() const { return side_; }
  int rank() const { return free_->rank(); }
  int cutoff() const { return free_->cutoff(); }
  // Degree beyond which everything vanishes, when detected within the cutoff.
  std::optional<int> top_degree() const { return top_; }
  bool finite() const { return top_.has_value(); }
  std::size_t dim() const { return words_.size(); }
  const Word& word(std::size_t i) const { return words_[i]; }
  const std::vector<Word>& words() const { return words_; }
  std::optional<std::uint32_t> index_of(const Word& w) const;
  // All words of the given multidegree in lexicographic order.
  static std::vector<Word> words_of(const Multidegree& m);
  Multidegree multidegree(std::size_t i) const { return multidegree_of(words_[i], rank()); }
  GroupElem degree(std::size_t i) const { return free_->degree(words_[i]); }
  const FreeBraidedBialgebra& free_algebra() const { return *free_; }
  const Bicharacter& bicharacter() const { return free_->bicharacter(); }
  const std::shared_ptr<const Bicharacter>& bicharacter_ptr() const { return free_->bicharacter_ptr(); }

  // Class of a word in the quotient basis.
  const Vec& project(const Word& w) const;
  Vec project(const WordPoly& p) const;
  bool is_zero(const WordPoly& p) const;
  const Vec& multiply(std::uint32_t a, std::uint32_t b) const;
  Terms<std::pair<std::uint32_t, std::uint32_t>> coproduct(std::uint32_t i) const;
  Vec antipode(std::uint32_t i) const;
  Scalar counit(std::uint32_t i) const { return words_[i].empty() ? Scalar(1) : Scalar(); }

  std::vector<std::size_t> hilbert_series() const;
  std::map<Multidegree, std::size_t> radical_dims() const;
  const std::map<Multidegree, Piece>& pieces() const { return pieces_; }
  // Radical elements not generated by lower-degree ones: a minimal set of defining relations.
  const std::vector<WordPoly>& relations() const { return relations_; }
  // The pairing restricted to the quotient is non-degenerate in every piece.
  bool nondegenerate() const { return nondegenerate_; }

 private:
  friend class NicholsPair;
  NicholsAlgebra() = default;
  Side side_ = Side::Raising;
  std::shared_ptr<const FreeBraidedBialgebra> free_;
  std::vector<Word> words_;
  std::unordered_map<Word, std::uint32_t> index_;
  std::map<Multidegree, Piece> pieces_;
  std::optional<int> top_;
  std::vector<WordPoly> relations_;
  bool nondegenerate_ = true;
  mutable std::unordered_map<std::uint64_t, Vec> mult_cache_;
  mutable std::unordered_map<Word, Vec> extra_projection_;
};

// Both Nichols quotients together with the pairing they come from.
class NicholsPair {
 public:
  // modulus = 0 for generic base (Q(q)), l for base a primitive l-th root of unity.
  static std::shared_ptr<NicholsPair> build(const CartanDatum& datum, const Scalar& base, int modulus, int cutoff);

  const CartanDatum& datum() const { return datum_; }
  const Scalar& base() const { return base_; }
  int modulus() const { return modulus_; }
  int cutoff() const { return cutoff_; }
  const FreeBraidedBialgebra& raising_free() const { return *efree_; }
  const FreeBraidedBialgebra& lowering_free() const { return *ffree_; }
  const LusztigPairing& pairing() const { return *pairing_; }
  const NicholsAlgebra& raising() const { return eside_; }
  const NicholsAlgebra& lowering() const { return fside_; }
  Field field() const { return base_.field(); }
  // b_i = base^{i.i/2}
  Scalar root_base(int i) const;

  // The quantum Serre element for (i, j) written in raising words.
  WordPoly serre_element(int i, int j) const;
  // <f, x> = 0 for every lowering word f of the same multidegree.
  bool in_radical(const WordPoly& x) const;
  bool serre_in_radical() const;
  // Delta of each radical element pairs to zero against all pairs of lowering words.
  std::optional<std::string> radical_biideal_violation() const;

  nlohmann::json report() const;

 private:
  NicholsPair(const CartanDatum& datum, Scalar base, int modulus, int cutoff);
  void compute();
  CartanDatum datum_;
  Scalar base_;
  int modulus_;
  int cutoff_;
  std::shared_ptr<FreeBraidedBialgebra> efree_, ffree_;
  std::unique_ptr<LusztigPairing> pairing_;
  NicholsAlgebra eside_, fside_;
};

std::string multidegree_key(const Multidegree& m);

}  // namespace braidhopf
