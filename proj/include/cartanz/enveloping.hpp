#ifndef CARTANZ_ENVELOPING_HPP
#define CARTANZ_ENVELOPING_HPP

// U(𝔤⊗A) over ℚ in PBW normal form. This is the ground truth against which
// every integral identity and rewrite is compared.

#include <cstdint>
#include <compare>
#include <map>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "cartanz/chevalley.hpp"
#include "cartanz/combinatorics.hpp"

namespace cartanz {

/// z⊗b with z a Chevalley basis element.
struct MapGenerator {
  LieIndex lie = 0;
  ABasis coeff = 0;
  auto operator<=>(const MapGenerator&) const = default;
};

/// Position of a MapGenerator in the alphabet of an EnvelopingAlgebra, so
/// that the numeric order of letters is the PBW order.
using Letter = std::uint32_t;
using Word = std::vector<Letter>;

class EnvelopingElement {
 public:
  using Terms = std::map<Word, Rational>;

  EnvelopingElement() = default;
  static EnvelopingElement one() { return scalar(Rational(1)); }
  static EnvelopingElement scalar(const Rational& c);
  static EnvelopingElement word(Word w, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Word& w) const;

  void add_term(const Word& w, const Rational& c);
  void add_scaled(const EnvelopingElement& other, const Rational& c);

  EnvelopingElement& operator+=(const EnvelopingElement& o) { add_scaled(o, 1); return *this; }
  EnvelopingElement& operator-=(const EnvelopingElement& o) { add_scaled(o, -1); return *this; }
  EnvelopingElement& operator*=(const Rational& c);
  friend EnvelopingElement operator+(EnvelopingElement a, const EnvelopingElement& b) { return a += b; }
  friend EnvelopingElement operator-(EnvelopingElement a, const EnvelopingElement& b) { return a -= b; }
  friend EnvelopingElement operator*(const Rational& c, EnvelopingElement a) { return a *= c; }
  bool operator==(const EnvelopingElement&) const = default;

  /// Length of the longest word; throws std::domain_error on 0.
  int degree() const;
  bool has_integral_coefficients() const;

 private:
  Terms terms_;
};

class InvalidDividedPower : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EnvelopingAlgebra {
 public:
  /// `alphabet` lists every MapGenerator once, smallest first; empty means
  /// (Chevalley index, A-basis index) lexicographic.
  EnvelopingAlgebra(StructureConstants sc, MonoidAlgebra A, std::vector<MapGenerator> alphabet = {});

  const StructureConstants& structure() const { return sc_; }
  const MonoidAlgebra& coefficients() const { return A_; }

  Letter letter(LieIndex u, ABasis b) const { return code_[u * static_cast<std::size_t>(A_.size()) + static_cast<std::size_t>(b)]; }
  const MapGenerator& map_generator(Letter g) const { return alphabet_[g]; }
  bool is_odd(Letter g) const { return sc_.generator(alphabet_[g].lie).is_odd(); }
  std::string letter_name(Letter g) const;  // "x[(1,-1),1]⊗t"
  std::string str(const EnvelopingElement& u) const;

  EnvelopingElement generator(LieIndex u, ABasis b) const;
  /// z⊗b with z = Σ c_w w, zero when b is the absorbing zero.
  EnvelopingElement lie_element(const LieCombination& z, std::optional<ABasis> b) const;
  /// [z⊗a, z'⊗b] = [z, z']⊗ab as a degree-1 element.
  EnvelopingElement bracket(Letter g, Letter h) const;

  EnvelopingElement multiply(const EnvelopingElement& u, const EnvelopingElement& v) const;
  EnvelopingElement product(const std::vector<EnvelopingElement>& factors) const;
  /// uv − (−1)^{|u||v|} vu for homogeneous u, v.
  EnvelopingElement supercommutator(const EnvelopingElement& u, const EnvelopingElement& v) const;

  /// (z⊗b)^r / r!; odd z with r ≥ 2 throws InvalidDividedPower.
  EnvelopingElement divided_power(LieIndex u, ABasis b, int r) const;

  /// p_h(χ) for h = Σ hc_i h_i (coefficients over the Cartan indices), by its recursion.
  EnvelopingElement p(const std::vector<Integer>& h, const AMultiset& chi) const;
  EnvelopingElement p_i(std::size_t i, const AMultiset& chi) const;

  /// Parity of a homogeneous element (throws on a mixed one).
  bool is_odd(const EnvelopingElement& u) const;

 private:
  EnvelopingElement mul_word_letter(const Word& w, Letter g) const;
  EnvelopingElement times_letter(const EnvelopingElement& u, Letter g) const;

  struct WordLetterHash {
    std::size_t operator()(const std::pair<Word, Letter>& key) const noexcept;
  };

  StructureConstants sc_;
  MonoidAlgebra A_;
  std::vector<MapGenerator> alphabet_;
  std::vector<Letter> code_;  // lie * |𝔅| + b → letter
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::pair<Word, Letter>, EnvelopingElement, WordLetterHash> word_letter_memo_;
  mutable std::map<std::pair<std::vector<Integer>, AMultiset>, EnvelopingElement> p_memo_;
};

}  // namespace cartanz

#endif
