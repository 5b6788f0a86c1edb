#ifndef CARTANZ_ZFORM_HPP
#define CARTANZ_ZFORM_HPP

// The integral form 𝒰_ℤ(𝔤⊗A): its generators, the pairwise straightening
// identities, and the rewriting of monomials onto the basis ℬ.

#include <cstdint>
#include <memory>
#include <mutex>
#include <variant>

#include "cartanz/enveloping.hpp"

namespace cartanz {

/// (x_{α,k}⊗b)^{(r)} for an even root vector.
struct EvenDivided {
  LieIndex root = 0;
  ABasis b = 0;
  int r = 0;
  auto operator<=>(const EvenDivided&) const = default;
};

/// p_i(χ)
struct CartanP {
  std::size_t i = 0;
  AMultiset chi;
  auto operator<=>(const CartanP&) const = default;
};

/// x_{γ,n}⊗c for an odd root vector.
struct OddGenerator {
  LieIndex root = 0;
  ABasis c = 0;
  auto operator<=>(const OddGenerator&) const = default;
};

using IntegralGenerator = std::variant<EvenDivided, CartanP, OddGenerator>;
using IntegralMonomial = std::vector<IntegralGenerator>;
using ZCombination = std::map<IntegralMonomial, Integer>;

/// r, |χ| or 1.
int degree(const IntegralGenerator& g);
int degree(const IntegralMonomial& m);
/// r = 0 divided powers and p_i(0) are the unit.
bool is_trivial(const IntegralGenerator& g);
IntegralMonomial without_trivial(const IntegralMonomial& m);

void accumulate(ZCombination& into, const IntegralMonomial& m, const Integer& c);

/// Unordered ℤ-combination of monomials, as produced by one identity.
struct Term {
  Integer coeff;
  IntegralMonomial factors;
};
using Expansion = std::vector<Term>;

/// Concatenation product of two expansions.
Expansion product(const Expansion& a, const Expansion& b);
ZCombination collect(const Expansion& e);

/// The total orders (≼, R ∪ I) and (≾, 𝔅). Cartan indices stand for I.
class FactorOrder {
 public:
  FactorOrder(std::string name, std::vector<LieIndex> lie_sequence, std::vector<ABasis> basis_sequence);

  /// "default", "reverse", "triangular", "even-first", "zero-first" or
  /// "random", optionally followed by ":desc" to reverse (≾, 𝔅).
  static FactorOrder named(const std::string& spec, const StructureConstants& sc, const MonoidAlgebra& A,
                           std::uint64_t seed = 0);

  const std::string& name() const { return name_; }
  int lie_rank(LieIndex u) const { return lie_rank_.at(u); }
  int basis_rank(ABasis b) const { return basis_rank_.at(static_cast<std::size_t>(b)); }
  std::pair<int, int> key(const IntegralGenerator& g) const;

 private:
  std::string name_;
  std::vector<int> lie_rank_;
  std::vector<int> basis_rank_;
};

/// Which side of the triangular decomposition a factor belongs to: −1, 0, +1.
int triangular_class(const StructureConstants& sc, const IntegralGenerator& g);
bool is_positive_root(const LieGenerator& g);

enum class Identity {
  PCommute,        // p_i(χ)p_j(φ)
  EvenMerge,       // x^{(r)} x^{(s)}, same factor
  RootPair,        // (x_α⊗a)^{(r)}(x_{−α}⊗b)^{(s)}, α of height 0
  EvenTimesP,      // (x⊗a)^{(r)} p_i(χ)
  PTimesEven,      // p_i(χ)(x⊗a)^{(r)}
  EvenSum,         // β+γ ∈ R, 2β+γ, β+2γ ∉ R
  EvenString,      // α of height 0, ϑ even of nonzero height
  EvenRank2,       // α, ζ of height 0 spanning a rank-2 string
  OddTimesP,       // (x_γ⊗a) p_i(χ)
  PTimesOdd,       // p_i(χ)(x_γ⊗a)
  OddSquare,       // (x_γ⊗a)(x_γ⊗b)
  OddDual,         // (x_ϑ⊗a)(x_{−ϑ}⊗b)
  OddOdd,          // (x_γ⊗a)(x_ζ⊗b)
  EvenOdd,         // (x_α⊗a)^{(r)}(x_γ⊗b), 2α+γ ∉ R
  EvenOddString,   // (x_β⊗a)^{(r)}(x_γ⊗b), β of height 0, 2β+γ ∈ R
  Supercommute,    // zero bracket
};

const std::vector<Identity>& all_identities();
std::string identity_name(Identity id);
std::optional<Identity> parse_identity(const std::string& name);

/// A pair outside the hypotheses of the requested identity, or no identity at all.
class IdentityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-integral coefficient; `trace` lists the monomials being reduced, innermost first.
class IntegralityViolation : public std::runtime_error {
 public:
  explicit IntegralityViolation(const std::string& what) : std::runtime_error(what) {}
  std::vector<std::string> trace;
};

/// Integral-form engine over an oracle. The engine reads its own copy of the
/// structure constants (so that a corrupted table can be checked against
/// the true oracle); evaluation always goes through the oracle.
class ZForm {
 public:
  ZForm(std::shared_ptr<const EnvelopingAlgebra> oracle, StructureConstants table, FactorOrder order);
  ZForm(std::shared_ptr<const EnvelopingAlgebra> oracle, FactorOrder order);

  const EnvelopingAlgebra& oracle() const { return *oracle_; }
  std::shared_ptr<const EnvelopingAlgebra> oracle_ptr() const { return oracle_; }
  const StructureConstants& table() const { return table_; }
  const MonoidAlgebra& coefficients() const { return oracle_->coefficients(); }
  const FactorOrder& order() const { return order_; }

  EnvelopingElement evaluate(const IntegralGenerator& g) const;
  EnvelopingElement evaluate(const IntegralMonomial& m) const;
  EnvelopingElement evaluate(const Expansion& e) const;
  EnvelopingElement evaluate(const ZCombination& z) const;

  std::string str(const IntegralGenerator& g) const;
  std::string str(const IntegralMonomial& m) const;
  std::string str(const ZCombination& z) const;

  /// Identity whose left-hand side is exactly L·R, if any.
  std::optional<Identity> classify(const IntegralGenerator& L, const IntegralGenerator& R) const;
  /// Right-hand side of `id` at L·R; throws IdentityError outside its hypotheses.
  Expansion apply(Identity id, const IntegralGenerator& L, const IntegralGenerator& R) const;
  /// L·R by the matching identity, by reading an identity for R·L backwards,
  /// or (degree-one factors only) by the bracket.
  Expansion straighten_pair(const IntegralGenerator& L, const IntegralGenerator& R) const;

  /// D^{x}_{j,k}(d, c); zero when d or c is.
  Expansion d_function(LieIndex x, int j, int k, std::optional<ABasis> d, std::optional<ABasis> c) const;
  /// X_x(χ) = Π (x⊗a)^{(χ(a))}
  IntegralMonomial X(LieIndex x, const AMultiset& chi) const;
  /// h = Σ c_i h_i for a root of height 0 (h_α = [x_{α,1}, x_{−α,1}]).
  std::vector<Integer> coroot(LieIndex x_alpha) const;
  /// An element of 𝒰(𝔥⊗A) written over products of p_i (one per i, in key order).
  Expansion cartan_decompose(const EnvelopingElement& u) const;

  /// Solved ε_ψ of the rank-2 identity at (x_α⊗a)^{(r)}(x_ζ⊗b)^{(s)}, one per
  /// term of the sum in enumeration order.
  std::vector<Rational> rank2_signs(const EvenDivided& L, const EvenDivided& R) const;

  bool is_basis_element(const IntegralMonomial& m) const;
  ZCombination rewrite_to_basis(const IntegralMonomial& m) const;
  ZCombination rewrite_to_basis(const ZCombination& z) const;

 private:
  struct Rank2Term {
    IntegralMonomial factors;
  };
  std::vector<Rank2Term> rank2_terms(const EvenDivided& L, const EvenDivided& R) const;

  Expansion even_times_p(LieIndex x, ABasis a, int r, const CartanP& p, bool p_first) const;
  Expansion bracket_terms(const LieCombination& z, std::optional<ABasis> b) const;
  Expansion merge(const IntegralGenerator& L, const IntegralGenerator& R) const;
  ZCombination rewrite(const IntegralMonomial& m, int depth) const;
  std::optional<IntegralGenerator> root_generator(LieIndex u, std::optional<ABasis> b, int r) const;

  std::shared_ptr<const EnvelopingAlgebra> oracle_;
  StructureConstants table_;
  FactorOrder order_;
  mutable std::mutex memo_mutex_;
  mutable std::map<IntegralMonomial, ZCombination> rewrite_memo_;
  mutable std::map<std::pair<IntegralGenerator, IntegralGenerator>, Expansion> pair_memo_;
  mutable std::map<std::pair<EvenDivided, EvenDivided>, std::vector<Rational>> rank2_memo_;
};

}  // namespace cartanz

#endif
