#include "braidhopf/nichols.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace braidhopf {

namespace {

char letter(int i) { return static_cast<char>(i); }
int letter_index(char c) { return static_cast<int>(static_cast<unsigned char>(c)); }

const Vec kEmptyVec;

// Compositions of total into rank nonnegative parts, lexicographically descending in the first part.
void compositions(int rank, int total, Multidegree& cur, std::vector<Multidegree>& out) {
  int pos = static_cast<int>(cur.size());
  if (pos == rank - 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = total; k >= 0; --k) {
    cur.push_back(k);
    compositions(rank, total - k, cur, out);
    cur.pop_back();
  }
}

void words_rec(Multidegree& left, Word& cur, std::vector<Word>& out, int remaining) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i] == 0) continue;
    --left[i];
    cur.push_back(letter(static_cast<int>(i)));
    words_rec(left, cur, out, remaining - 1);
    cur.pop_back();
    ++left[i];
  }
}

}  // namespace

std::string word_text(const Word& w, const std::string& prefix) {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += prefix + std::to_string(letter_index(w[i]) + 1);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Multidegree multidegree_of(const Word& w, int rank) {
  Multidegree m(static_cast<std::size_t>(rank), 0);
  for (char c : w) ++m[static_cast<std::size_t>(letter_index(c))];
  return m;
}

std::string multidegree_key(const Multidegree& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m[i]);
  }
  return s;
}

FreeBraidedBialgebra::FreeBraidedBialgebra(std::shared_ptr<const Bicharacter> chi, int sign, int cutoff)
    : chi_(std::move(chi)), rank_(chi_->group().rank()), sign_(sign), cutoff_(cutoff) {
  if (cutoff < 1) throw std::invalid_argument("degree cutoff must be at least 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("generator sign must be +1 or -1");
  const GradingGroup& g = chi_->group();
  for (int a = 0; a < rank_; ++a) {
    for (int b = 0; b < rank_; ++b) {
      GroupElem ga = g.unit(a), gb = g.unit(b);
      if (sign < 0) {
        ga = g.neg(ga);
        gb = g.neg(gb);
      }
      letter_chi_.push_back((*chi_)(ga, gb));
    }
  }
}

GroupElem FreeBraidedBialgebra::degree(const Word& w) const {
  GroupElem d = chi_->group().zero();
  for (char c : w) d[static_cast<std::size_t>(letter_index(c))] += sign_;
  return chi_->group().reduce(d);
}

std::vector<Word> FreeBraidedBialgebra::basis() const {
  std::vector<Word> out{Word()};
  std::size_t start = 0;
  for (int len = 1; len <= cutoff_; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i) {
      for (int a = 0; a < rank_; ++a) out.push_back(out[i] + letter(a));
    }
    start = end;
  }
  return out;
}

Word FreeBraidedBialgebra::product(const Word& a, const Word& b) const {
  if (static_cast<int>(a.size() + b.size()) > cutoff_) {
    throw TruncationError("product of degree " + std::to_string(a.size() + b.size()) + " exceeds cutoff " +
                          std::to_string(cutoff_));
  }
  return a + b;
}

std::vector<TensorTerm> FreeBraidedBialgebra::coproduct(const Word& w) const {
  std::size_t k = w.size();
  if (k > 24) throw std::invalid_argument("word too long for shuffle coproduct");
  std::vector<TensorTerm> out;
  out.reserve(std::size_t{1} << k);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    // mask marks the positions going to the left leg
    Scalar c(1);
    Word left, right;
    for (std::size_t s = 0; s < k; ++s) {
      if (mask & (1u << s)) {
        left.push_back(w[s]);
        for (std::size_t r = 0; r < s; ++r) {
          if (!(mask & (1u << r))) c *= letter_chi(letter_index(w[r]), letter_index(w[s]));
        }
      } else {
        right.push_back(w[s]);
      }
    }
    out.push_back({std::move(left), std::move(right), std::move(c)});
  }
  return out;
}

std::vector<TensorTerm> FreeBraidedBialgebra::coproduct_first_letter(const Word& w) const {
  std::vector<TensorTerm> out;
  for (std::size_t p = 0; p < w.size(); ++p) {
    Scalar c(1);
    for (std::size_t r = 0; r < p; ++r) c *= letter_chi(letter_index(w[r]), letter_index(w[p]));
    Word rest = w;
    rest.erase(p, 1);
    out.push_back({Word(1, w[p]), std::move(rest), std::move(c)});
  }
  return out;
}

std::pair<Scalar, Word> FreeBraidedBialgebra::antipode(const Word& w) const {
  Scalar c = w.size() % 2 ? Scalar(-1) : Scalar(1);
  for (std::size_t s = 0; s < w.size(); ++s)
    for (std::size_t r = 0; r < s; ++r) c *= letter_chi(letter_index(w[r]), letter_index(w[s]));
  return {c, Word(w.rbegin(), w.rend())};
}

LusztigPairing::LusztigPairing(const FreeBraidedBialgebra& eside, const FreeBraidedBialgebra& fside,
                               std::vector<Scalar> generator_values)
    : e_(eside), f_(fside), gen_(std::move(generator_values)) {
  if (e_.rank() != f_.rank() || static_cast<int>(gen_.size()) != e_.rank())
    throw std::invalid_argument("pairing: rank mismatch");
  if (e_.sign() != -f_.sign()) throw std::invalid_argument("pairing: generator degrees are not dual");
}

std::vector<Scalar> LusztigPairing::standard_generator_values(const CartanDatum& datum, const Scalar& base) {
  std::vector<Scalar> out;
  for (int i = 0; i < datum.rank(); ++i) {
    Scalar b = base.pow(datum.dot(i, i) / 2);
    Scalar d = b - b.inverse();
    if (d.is_zero()) throw ArithmeticError("pairing: q_i - q_i^-1 is not invertible");
    out.push_back(d.inverse());
  }
  return out;
}

Scalar LusztigPairing::operator()(const Word& f, const Word& e) const {
  if (f.size() != e.size()) return Scalar();
  if (f.empty()) return Scalar(1);
  if (f.size() == 1) return f[0] == e[0] ? gen_[static_cast<std::size_t>(letter_index(f[0]))] : Scalar();
  {
    Word sf = f, se = e;
    std::sort(sf.begin(), sf.end());
    std::sort(se.begin(), se.end());
    if (sf != se) return Scalar();
  }
  std::string key = f;
  key.push_back('\x7f');
  key += e;
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  int j = letter_index(f[0]);
  Word rest_f = f.substr(1);
  Scalar total;
  for (std::size_t p = 0; p < e.size(); ++p) {
    int ep = letter_index(e[p]);
    if (ep == j) {
      Word rest_e = e;
      rest_e.erase(p, 1);
      Scalar inner = (*this)(rest_f, rest_e);
      if (!inner.is_zero()) {
        Scalar c(1);
        for (std::size_t r = 0; r < p; ++r) c *= e_.letter_chi(letter_index(e[r]), j);
        total += c * inner;
      }
    }
  }
  total = total * gen_[static_cast<std::size_t>(j)];
  memo_.emplace(std::move(key), total);
  return total;
}

Scalar LusztigPairing::pair(const Word& f, const WordPoly& e) const {
  Scalar s;
  for (const auto& [w, c] : e) s += c * (*this)(f, w);
  return s;
}

Matrix LusztigPairing::gram(const std::vector<Word>& fwords, const std::vector<Word>& ewords) const {
  Matrix g(fwords.size(), ewords.size());
  for (std::size_t r = 0; r < fwords.size(); ++r)
    for (std::size_t c = 0; c < ewords.size(); ++c) g.at(r, c) = (*this)(fwords[r], ewords[c]);
  return g;
}

namespace {

std::vector<Word> all_words(int rank, int len) {
  std::vector<Word> out{Word()};
  for (int k = 0; k < len; ++k) {
    std::vector<Word> next;
    for (const Word& w : out)
      for (int a = 0; a < rank; ++a) next.push_back(w + letter(a));
    out = std::move(next);
  }
  return out;
}

std::string show(const Word& w, const std::string& prefix) { return word_text(w, prefix); }

}  // namespace

std::optional<PairingViolation> second_rule_violation(const LusztigPairing& p, const FreeBraidedBialgebra& eside,
                                                      const FreeBraidedBialgebra& fside, SecondRule rule,
                                                      int max_degree) {
  (void)eside;
  int rank = fside.rank();
  for (int n = 0; n <= max_degree; ++n) {
    for (const Word& f : all_words(rank, n)) {
      auto cop = fside.coproduct(f);
      for (int a = 0; a <= n; ++a) {
        for (const Word& e1 : all_words(rank, a)) {
          for (const Word& e2 : all_words(rank, n - a)) {
            Scalar lhs = p(f, e1 + e2);
            Scalar rhs;
            for (const auto& t : cop) {
              if (rule == SecondRule::FirstLegWithLeft)
                rhs += t.coef * p(t.left, e1) * p(t.right, e2);
              else
                rhs += t.coef * p(t.right, e1) * p(t.left, e2);
            }
            if (lhs != rhs) {
              return PairingViolation{"<" + show(f, "f") + ", " + show(e1, "e") + " . " + show(e2, "e") + ">", lhs,
                                      rhs};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<PairingViolation> first_rule_violation(const LusztigPairing& p, const FreeBraidedBialgebra& eside,
                                                     const FreeBraidedBialgebra& fside, int max_degree) {
  int rank = eside.rank();
  (void)fside;
  for (int n = 0; n <= max_degree; ++n) {
    for (const Word& e : all_words(rank, n)) {
      auto cop = eside.coproduct(e);
      for (int a = 0; a <= n; ++a) {
        for (const Word& f1 : all_words(rank, a)) {
          for (const Word& f2 : all_words(rank, n - a)) {
            Scalar lhs = p(f1 + f2, e);
            Scalar rhs;
            for (const auto& t : cop) rhs += t.coef * p(f1, t.left) * p(f2, t.right);
            if (lhs != rhs) {
              return PairingViolation{"<" + show(f1, "f") + " . " + show(f2, "f") + ", " + show(e, "e") + ">", lhs,
                                      rhs};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Word> NicholsAlgebra::words_of(const Multidegree& m) {
  std::vector<Word> out;
  Multidegree left = m;
  Word cur;
  words_rec(left, cur, out, std::accumulate(m.begin(), m.end(), 0));
  return out;
}

std::optional<std::uint32_t> NicholsAlgebra::index_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Vec& NicholsAlgebra::project(const Word& w) const {
  int len = static_cast<int>(w.size());
  if (top_ && len > *top_) return kEmptyVec;
  if (len > cutoff()) {
    throw TruncationError("word of degree " + std::to_string(len) + " exceeds cutoff " + std::to_string(cutoff()));
  }
  auto pit = pieces_.find(multidegree_of(w, rank()));
  if (pit == pieces_.end()) throw std::logic_error("multidegree piece not computed");
  auto it = pit->second.projection.find(w);
  if (it == pit->second.projection.end()) throw std::invalid_argument("not a word in the generators");
  return it->second;
}

Vec NicholsAlgebra::project(const WordPoly& p) const {
  Accumulator<std::uint32_t> acc;
  for (const auto& [w, c] : p) acc.add_all(project(w), c);
  return acc.take();
}

bool NicholsAlgebra::is_zero(const WordPoly& p) const { return project(p).empty(); }

const Vec& NicholsAlgebra::multiply(std::uint32_t a, std::uint32_t b) const {
  std::uint64_t key = static_cast<std::uint64_t>(a) * words_.size() + b;
  auto it = mult_cache_.find(key);
  if (it != mult_cache_.end()) return it->second;
  const Vec& v = project(words_[a] + words_[b]);
  return mult_cache_.emplace(key, v).first->second;
}

Terms<std::pair<std::uint32_t, std::uint32_t>> NicholsAlgebra::coproduct(std::uint32_t i) const {
  Accumulator<std::pair<std::uint32_t, std::uint32_t>> acc;
  for (const auto& t : free_->coproduct(words_[i])) {
    const Vec& l = project(t.left);
    if (l.empty()) continue;
    const Vec& r = project(t.right);
    for (const auto& [a, ca] : l)
      for (const auto& [b, cb] : r) acc.add({a, b}, t.coef * ca * cb);
  }
  return acc.take();
}

Vec NicholsAlgebra::antipode(std::uint32_t i) const {
  auto [c, w] = free_->antipode(words_[i]);
  return scaled(project(w), c);
}

std::vector<std::size_t> NicholsAlgebra::hilbert_series() const {
  std::vector<std::size_t> h(static_cast<std::size_t>(cutoff()) + 1, 0);
  for (const Word& w : words_) ++h[w.size()];
  return h;
}

std::map<Multidegree, std::size_t> NicholsAlgebra::radical_dims() const {
  std::map<Multidegree, std::size_t> out;
  for (const auto& [m, piece] : pieces_) out[m] = piece.radical.size();
  return out;
}

NicholsPair::NicholsPair(const CartanDatum& datum, Scalar base, int modulus, int cutoff)
    : datum_(datum), base_(std::move(base)), modulus_(modulus), cutoff_(cutoff) {}

std::shared_ptr<NicholsPair> NicholsPair::build(const CartanDatum& datum, const Scalar& base, int modulus,
                                                int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("degree cutoff must be at least 1");
  std::shared_ptr<NicholsPair> p(new NicholsPair(datum, base, modulus, cutoff));
  p->compute();
  return p;
}

Scalar NicholsPair::root_base(int i) const { return base_.pow(datum_.dot(i, i) / 2); }

namespace {

// Radical elements of degree m that follow from lower ones: x_i r and r x_i.
std::vector<WordPoly> generated_radical(const std::map<Multidegree, NicholsAlgebra::Piece>& pieces,
                                        const Multidegree& m) {
  std::vector<WordPoly> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    Multidegree lower = m;
    --lower[i];
    auto it = pieces.find(lower);
    if (it == pieces.end()) continue;
    char x = letter(static_cast<int>(i));
    for (const WordPoly& r : it->second.radical) {
      WordPoly left, right;
      for (const auto& [w, c] : r) {
        left.emplace_back(Word(1, x) + w, c);
        right.emplace_back(w + x, c);
      }
      std::sort(left.begin(), left.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      std::sort(right.begin(), right.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(std::move(left));
      out.push_back(std::move(right));
    }
  }
  return out;
}

Vec to_index_vec(const WordPoly& p, const std::unordered_map<Word, std::uint32_t>& idx) {
  Vec v;
  for (const auto& [w, c] : p) v.emplace_back(idx.at(w), c);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

}  // namespace

void NicholsPair::compute() {
  int rank = datum_.rank();
  auto chi = std::make_shared<Bicharacter>(cartan_bicharacter(datum_, base_, modulus_));
  efree_ = std::make_shared<FreeBraidedBialgebra>(chi, 1, cutoff_);
  ffree_ = std::make_shared<FreeBraidedBialgebra>(chi, -1, cutoff_);
  pairing_ = std::make_unique<LusztigPairing>(*efree_, *ffree_,
                                              LusztigPairing::standard_generator_values(datum_, base_));
  eside_.side_ = Side::Raising;
  eside_.free_ = efree_;
  fside_.side_ = Side::Lowering;
  fside_.free_ = ffree_;

  for (int t = 0; t <= cutoff_; ++t) {
    std::vector<Multidegree> mdegs;
    Multidegree cur;
    compositions(rank, t, cur, mdegs);
    std::sort(mdegs.begin(), mdegs.end());
    std::size_t total_e = 0, total_f = 0;
    for (const Multidegree& m : mdegs) {
      std::vector<Word> words = NicholsAlgebra::words_of(m);
      Matrix g = pairing_->gram(words, words);
      Matrix::Echelon ee = g.rref();
      Matrix::Echelon fe = g.transpose().rref();
      auto fill = [&](NicholsAlgebra& alg, const Matrix::Echelon& ech) {
        NicholsAlgebra::Piece piece;
        piece.mdeg = m;
        piece.words = words;
        for (std::size_t p : ech.pivots) {
          auto id = static_cast<std::uint32_t>(alg.words_.size());
          alg.words_.push_back(words[p]);
          alg.index_.emplace(words[p], id);
          piece.basis.push_back(id);
        }
        std::vector<bool> is_pivot(words.size(), false);
        for (std::size_t p : ech.pivots) is_pivot[p] = true;
        for (std::size_t c = 0; c < words.size(); ++c) {
          Vec v;
          for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
            const Scalar& a = ech.reduced.at(r, c);
            if (!a.is_zero()) v.emplace_back(piece.basis[r], a);
          }
          piece.projection.emplace(words[c], std::move(v));
          if (!is_pivot[c]) {
            WordPoly k{{words[c], Scalar(1)}};
            for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
              const Scalar& a = ech.reduced.at(r, c);
              if (!a.is_zero()) k.emplace_back(words[ech.pivots[r]], -a);
            }
            std::sort(k.begin(), k.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            piece.radical.push_back(std::move(k));
          }
        }
        return piece;
      };
      NicholsAlgebra::Piece ep = fill(eside_, ee);
      NicholsAlgebra::Piece fp = fill(fside_, fe);
      // the pairing restricted to the two quotient bases must be invertible
      if (ee.pivots.size() != fe.pivots.size()) {
        eside_.nondegenerate_ = fside_.nondegenerate_ = false;
      } else if (!ee.pivots.empty()) {
        Matrix sub(ee.pivots.size(), ee.pivots.size());
        for (std::size_t r = 0; r < fe.pivots.size(); ++r)
          for (std::size_t c = 0; c < ee.pivots.size(); ++c) sub.at(r, c) = g.at(fe.pivots[r], ee.pivots[c]);
        if (!sub.inverse()) eside_.nondegenerate_ = fside_.nondegenerate_ = false;
      }
      total_e += ep.basis.size();
      total_f += fp.basis.size();
      eside_.pieces_.emplace(m, std::move(ep));
      fside_.pieces_.emplace(m, std::move(fp));
    }
    for (NicholsAlgebra* alg : {&eside_, &fside_}) {
      for (const Multidegree& m : mdegs) {
        NicholsAlgebra::Piece& piece = alg->pieces_.at(m);
        if (piece.radical.empty()) continue;
        std::unordered_map<Word, std::uint32_t> idx;
        for (std::size_t k = 0; k < piece.words.size(); ++k) idx.emplace(piece.words[k], static_cast<std::uint32_t>(k));
        SparseSpan span;
        for (const WordPoly& r : generated_radical(alg->pieces_, m)) span.insert(to_index_vec(r, idx));
        for (const WordPoly& r : piece.radical) {
          if (span.insert(to_index_vec(r, idx))) alg->relations_.push_back(r);
        }
      }
    }
    if (t > 0 && total_e == 0 && total_f == 0) {
      eside_.top_ = fside_.top_ = t - 1;
      break;
    }
  }
  if (auto v = radical_biideal_violation()) throw ConsistencyError("coproduct does not descend: " + *v);
}

WordPoly NicholsPair::serre_element(int i, int j) const {
  int n = 1 - datum_.cartan(i, j);
  Scalar b = root_base(i);
  Accumulator<Word> acc;
  for (int k = 0; k <= n; ++k) {
    Word w(static_cast<std::size_t>(n - k), letter(i));
    w.push_back(letter(j));
    w.append(static_cast<std::size_t>(k), letter(i));
    Scalar c = quantum_binomial(n, k, b);
    acc.add(w, k % 2 ? -c : c);
  }
  return acc.take();
}

bool NicholsPair::in_radical(const WordPoly& x) const {
  std::map<Multidegree, WordPoly> parts;
  for (const auto& t : x) parts[multidegree_of(t.first, datum_.rank())].push_back(t);
  for (const auto& [m, part] : parts) {
    for (const Word& f : NicholsAlgebra::words_of(m)) {
      if (!pairing_->pair(f, part).is_zero()) return false;
    }
  }
  return true;
}

bool NicholsPair::serre_in_radical() const {
  for (int i = 0; i < datum_.rank(); ++i) {
    for (int j = 0; j < datum_.rank(); ++j) {
      if (i != j && !in_radical(serre_element(i, j))) return false;
    }
  }
  return true;
}

std::optional<std::string> NicholsPair::radical_biideal_violation() const {
  // Every radical element of low degree, and every defining relation, is checked literally:
  // Delta(r) must pair to zero against (F-basis word) x (F-basis word) in every bidegree.
  const int literal_degree = 4;
  auto check = [&](const WordPoly& r) -> std::optional<std::string> {
    std::map<std::pair<Multidegree, Multidegree>, std::vector<TensorTerm>> blocks;
    for (const auto& [w, c] : r) {
      for (auto t : efree_->coproduct(w)) {
        t.coef *= c;
        blocks[{multidegree_of(t.left, datum_.rank()), multidegree_of(t.right, datum_.rank())}].push_back(
            std::move(t));
      }
    }
    for (const auto& [key, terms] : blocks) {
      const auto& lp = fside_.pieces_.find(key.first);
      const auto& rp = fside_.pieces_.find(key.second);
      if (lp == fside_.pieces_.end() || rp == fside_.pieces_.end()) continue;  // beyond the top degree
      for (std::uint32_t a : lp->second.basis) {
        for (std::uint32_t b : rp->second.basis) {
          Scalar s;
          for (const auto& t : terms)
            s += t.coef * (*pairing_)(fside_.words_[a], t.left) * (*pairing_)(fside_.words_[b], t.right);
          if (!s.is_zero()) {
            return "<" + word_text(fside_.words_[a], "f") + " x " + word_text(fside_.words_[b], "f") +
                   ", Delta(radical element of degree " + multidegree_key(multidegree_of(r.front().first,
                                                                                         datum_.rank())) +
                   ")> = " + s.str();
          }
        }
      }
    }
    return std::nullopt;
  };
  for (const auto& [m, piece] : eside_.pieces_) {
    if (std::accumulate(m.begin(), m.end(), 0) > literal_degree) continue;
    for (const WordPoly& r : piece.radical)
      if (auto v = check(r)) return v;
  }
  for (const WordPoly& r : eside_.relations_)
    if (auto v = check(r)) return v;
  return std::nullopt;
}

nlohmann::json NicholsPair::report() const {
  nlohmann::json j;
  j["datum"] = datum_.to_json();
  j["base"] = base_.str();
  j["field"] = field().to_json();
  j["cutoff"] = cutoff_;
  j["hilbert"] = eside_.hilbert_series();
  j["lowering_hilbert"] = fside_.hilbert_series();
  j["dimension"] = eside_.dim();
  j["top_degree"] = eside_.top_ ? nlohmann::json(*eside_.top_) : nlohmann::json(nullptr);
  nlohmann::json rd = nlohmann::json::object();
  for (const auto& [m, k] : eside_.radical_dims()) rd[multidegree_key(m)] = k;
  j["radical_dims"] = rd;
  nlohmann::json rel = nlohmann::json::array();
  for (const WordPoly& r : eside_.relations_) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, c] : r) terms.push_back({word_text(w, "e"), c.to_json()});
    rel.push_back(terms);
  }
  j["relations"] = rel;
  j["serre_in_radical"] = serre_in_radical();
  j["nondegenerate"] = eside_.nondegenerate_;
  return j;
}

}  // namespace braidhopf
