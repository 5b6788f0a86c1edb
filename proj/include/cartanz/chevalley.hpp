#ifndef CARTANZ_CHEVALLEY_HPP
#define CARTANZ_CHEVALLEY_HPP

// Chevalley basis candidates, axiom verification and the integer structure
// constant table consumed by the enveloping oracle and the ℤ-form engine.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartanz/roots.hpp"

namespace cartanz {

using LieIndex = std::size_t;

/// Metadata of one Chevalley basis element: either h_i or x_{α,k}.
struct LieGenerator {
  bool is_cartan = false;
  std::size_t cartan_index = 0;  // i, for h_i
  Weight weight;                 // zero for h_i
  int height = 0;
  int k = 0;                     // 1-based index inside the root space
  std::string name;              // "h1", "E", "x[(1,-1),1]"

  Parity parity() const { return parity_of(height); }
  bool is_odd() const { return parity() == Parity::Odd; }
};

/// Sparse integer combination of Chevalley basis elements.
using LieCombination = std::vector<std::pair<LieIndex, Integer>>;

class IntegralityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Total bracket table [u, v] = Σ c_w w over the Chevalley basis. Values are
/// copied out of the basis so that a table can be altered independently
/// (fault injection) without touching the underlying algebra.
class StructureConstants {
 public:
  StructureConstants() = default;
  StructureConstants(std::vector<LieGenerator> generators, std::vector<LieCombination> table);

  std::size_t size() const { return generators_.size(); }
  const LieGenerator& generator(LieIndex u) const { return generators_[u]; }
  const std::vector<LieGenerator>& generators() const { return generators_; }
  std::size_t cartan_rank() const { return cartan_rank_; }

  const LieCombination& bracket(LieIndex u, LieIndex v) const { return table_[u * size() + v]; }
  void set_bracket(LieIndex u, LieIndex v, LieCombination value) { table_[u * size() + v] = std::move(value); }

  std::optional<LieIndex> root_vector(const Weight& w, int k) const;
  std::size_t multiplicity(const Weight& w) const;
  bool is_root(const Weight& w) const { return multiplicity(w) > 0; }
  LieIndex cartan(std::size_t i) const { return i; }

  /// Coefficient of x_{α+β,j} in [x_{α,k}, x_{β,m}] as a dense vector over j.
  std::vector<Integer> c_vector(LieIndex u, LieIndex v) const;

  /// [x, [x, y]] = 2ε x_{2α+β,k}: returns (k index, ε) when of that shape.
  struct DoubleBracket {
    LieIndex target;
    int sign;
  };
  std::optional<DoubleBracket> double_bracket(LieIndex x, LieIndex y) const;
  LieCombination iterated_bracket(LieIndex x, const LieCombination& y) const;

 private:
  std::vector<LieGenerator> generators_;
  std::vector<LieCombination> table_;
  std::size_t cartan_rank_ = 0;
  std::map<std::pair<Weight, int>, LieIndex> root_index_;
  std::map<Weight, std::size_t> multiplicity_;
};

class ChevalleyBasis {
 public:
  ChevalleyBasis(RootSystem roots, std::vector<SuperDerivation> elements, std::vector<LieGenerator> generators,
                 std::vector<std::string> log);

  const RootSystem& roots() const { return roots_; }
  const std::vector<SuperDerivation>& elements() const { return elements_; }
  const SuperDerivation& element(LieIndex u) const { return elements_[u]; }
  const std::vector<LieGenerator>& generators() const { return generators_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t cartan_rank() const { return roots_.rank(); }
  const std::vector<std::string>& log() const { return log_; }

  std::optional<LieIndex> root_vector(const Weight& w, int k) const;

  /// Coordinates of an element of 𝔤̄ in this basis (nullopt if outside).
  std::optional<QVector> coordinates(const SuperDerivation& d) const;

 private:
  RootSystem roots_;
  std::vector<SuperDerivation> elements_;
  std::vector<LieGenerator> generators_;
  std::vector<std::string> log_;
  linalg::SpanSolver<Rational> solver_;
};

/// Cartan basis first, then root vectors in root-map order and k order.
/// Root vectors start as primitive integer echelon vectors; for each pair
/// ±α of height 0 the sign of x_{-α,1} is chosen so that α([x_α, x_{-α}]) = 2.
ChevalleyBasis construct_chevalley(const RootSystem& rs);

/// h_α := [x_{α,1}, x_{-α,1}] as coordinates over {h_i}; nullopt unless α, −α ∈ R₀.
std::optional<std::vector<Rational>> coroot(const ChevalleyBasis& cb, const Weight& alpha);

/// σ_γ for γ ∈ R_{-1}: k ↦ (i, ±1) with [x_{γ,1}, x_{-γ,k}] = ±h_i; entries are
/// nullopt where the bracket is not of that shape.
struct SignedCartan {
  std::size_t index;
  int sign;
};
std::vector<std::optional<SignedCartan>> sigma(const ChevalleyBasis& cb, const Weight& gamma);

/// One check per axiom, named "axiom-1" … "axiom-7", plus "integrality".
Report verify_axioms(const ChevalleyBasis& cb);

/// Throws IntegralityError when some bracket has a non-integral coordinate.
StructureConstants structure_constants(const ChevalleyBasis& cb);

nlohmann::json structure_table(const StructureConstants& sc);

}  // namespace cartanz

#endif
