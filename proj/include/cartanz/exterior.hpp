#ifndef CARTANZ_EXTERIOR_HPP
#define CARTANZ_EXTERIOR_HPP

// Exterior algebra Λ(n), superderivations of Λ(n), and the Cartan-type Lie
// superalgebras W(n), S(n), S~(n), H(n) realised inside W(n).
//
// Generators are 1-based in the public API (ξ_1 … ξ_n, ∂_1 … ∂_n); a
// monomial is stored as a bit set with bit i-1 standing for ξ_i, and all
// signs are obtained by counting transpositions against ascending order.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cartanz/linalg.hpp"
#include "cartanz/rational.hpp"

namespace cartanz {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
inline Parity parity_of(int degree) { return (degree % 2 == 0) ? Parity::Even : Parity::Odd; }
inline bool is_odd(Parity p) { return p == Parity::Odd; }

class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

/// Square-free monomial ξ_I of Λ(n).
struct ExteriorMonomial {
  Mask mask = 0;
  int n = 0;

  int degree() const { return popcount(mask); }
  Parity parity() const { return parity_of(degree()); }
  std::vector<int> indices() const;  // ascending, 1-based
  std::string str() const;           // "x1x3", or "1" for the unit
};

/// Sparse ℚ-combination of monomials of Λ(n). Zero coefficients are never stored.
class ExteriorElement {
 public:
  ExteriorElement() = default;
  explicit ExteriorElement(int n) : n_(n) {}

  static ExteriorElement one(int n);
  static ExteriorElement generator(int n, int i);
  static ExteriorElement monomial(int n, Mask mask, const Rational& c = 1);
  /// ξ_{i_1} ∧ … ∧ ξ_{i_k} for an arbitrary (possibly unsorted) index list.
  static ExteriorElement product_of(int n, const std::vector<int>& indices);

  int rank() const { return n_; }
  const std::map<Mask, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(Mask m) const;

  void add_term(Mask m, const Rational& c);

  /// Common ℤ-degree of all terms, nullopt for 0 or inhomogeneous elements.
  std::optional<int> degree() const;
  std::optional<Parity> parity() const;
  ExteriorElement parity_part(Parity p) const;

  ExteriorElement& operator+=(const ExteriorElement& o);
  ExteriorElement& operator-=(const ExteriorElement& o);
  ExteriorElement& operator*=(const Rational& c);
  friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
  friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) { return a -= b; }
  friend ExteriorElement operator*(const Rational& c, ExteriorElement a) { return a *= c; }
  ExteriorElement operator-() const { return Rational(-1) * *this; }
  bool operator==(const ExteriorElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  std::string str() const;

 private:
  int n_ = 0;
  std::map<Mask, Rational> terms_;
};

/// Sign of ξ_a ∧ ξ_b for disjoint monomials (0 when they overlap).
int wedge_sign(Mask a, Mask b);

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b);

/// ∂_i (1-based) acting from the left: ∂_i(ξ_I) = (-1)^{#{j∈I : j<i}} ξ_{I∖i}.
ExteriorElement partial(int i, const ExteriorElement& f);

/// Σ f_i ∂_i, stored by component.
class SuperDerivation {
 public:
  SuperDerivation() = default;
  explicit SuperDerivation(int n);

  static SuperDerivation partial(int n, int i);
  static SuperDerivation term(const ExteriorElement& f, int i);  // f ∂_i

  int rank() const { return n_; }
  const ExteriorElement& component(int i) const { return components_.at(static_cast<std::size_t>(i - 1)); }
  void add_to_component(int i, const ExteriorElement& f);

  bool is_zero() const;
  std::optional<int> degree() const;
  std::optional<Parity> parity() const;
  SuperDerivation parity_part(Parity p) const;

  SuperDerivation& operator+=(const SuperDerivation& o);
  SuperDerivation& operator-=(const SuperDerivation& o);
  SuperDerivation& operator*=(const Rational& c);
  friend SuperDerivation operator+(SuperDerivation a, const SuperDerivation& b) { return a += b; }
  friend SuperDerivation operator-(SuperDerivation a, const SuperDerivation& b) { return a -= b; }
  friend SuperDerivation operator*(const Rational& c, SuperDerivation a) { return a *= c; }
  SuperDerivation operator-() const { return Rational(-1) * *this; }
  bool operator==(const SuperDerivation& o) const { return n_ == o.n_ && components_ == o.components_; }

  /// Coordinates in the W(n) monomial basis (see w_basis()).
  QVector coordinates() const;
  static SuperDerivation from_coordinates(int n, const QVector& v);

  std::string str() const;

 private:
  int n_ = 0;
  std::vector<ExteriorElement> components_;
};

ExteriorElement apply(const SuperDerivation& d, const ExteriorElement& f);
SuperDerivation supercommutator(const SuperDerivation& a, const SuperDerivation& b);
ExteriorElement divergence(const SuperDerivation& d);

/// The pairing used by the Hamiltonian construction.
///   Diagonal: D_f = Σ ∂_i(f) ∂_i.
///   Split:    D_f = Σ ∂_{i'}(f) ∂_i with i' = i ± [n/2] (and n' = n for odd n);
///             this is the form whose so(n) contains ξ_k∂_k − ξ_{[n/2]+k}∂_{[n/2]+k}.
enum class HamiltonianForm { Diagonal, Split };

int hamiltonian_partner(int n, int i, HamiltonianForm form);
SuperDerivation d_f(const ExteriorElement& f, HamiltonianForm form = HamiltonianForm::Diagonal);

SuperDerivation euler_operator(int n);

/// One entry ξ_I ∂_j of the ordered W(n) basis: (|I|, I lexicographic, j).
struct WBasisEntry {
  Mask mask;
  int j;  // 1-based
};
const std::vector<WBasisEntry>& w_basis(int n);
std::size_t w_index(int n, Mask mask, int j);

enum class Family { W, S, STilde, H };

std::string family_name(Family f);
Family parse_family(const std::string& s);

struct AlgebraSpec {
  Family family = Family::W;
  int n = 2;
  bool extend_with_euler = false;

  /// Throws InvalidSpec unless the family/rank combination is admissible.
  void validate() const;
  std::string name() const;  // e.g. "W(3)", "S~(4)+E"
};

void to_json(nlohmann::json& j, const AlgebraSpec& s);
void from_json(const nlohmann::json& j, AlgebraSpec& s);

/// A ℤ-graded homogeneous ℚ-basis of one of the four families.
class CartanTypeAlgebra {
 public:
  CartanTypeAlgebra(AlgebraSpec spec, std::vector<SuperDerivation> basis, std::vector<int> degrees,
                    std::optional<std::size_t> euler_index);

  const AlgebraSpec& spec() const { return spec_; }
  int rank() const { return spec_.n; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<SuperDerivation>& basis() const { return basis_; }
  const SuperDerivation& element(std::size_t k) const { return basis_[k]; }
  int degree(std::size_t k) const { return degrees_[k]; }
  Parity parity(std::size_t k) const { return parity_of(degrees_[k]); }
  std::optional<std::size_t> euler_index() const { return euler_index_; }

  std::optional<QVector> coordinates(const SuperDerivation& d) const;
  bool contains(const SuperDerivation& d) const { return coordinates(d).has_value(); }

 private:
  AlgebraSpec spec_;
  std::vector<SuperDerivation> basis_;
  std::vector<int> degrees_;
  std::optional<std::size_t> euler_index_;
  linalg::SpanSolver<Rational> solver_;
};

CartanTypeAlgebra build_algebra(const AlgebraSpec& spec);

}  // namespace cartanz

#endif
