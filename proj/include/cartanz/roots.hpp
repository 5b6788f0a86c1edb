#ifndef CARTANZ_ROOTS_HPP
#define CARTANZ_ROOTS_HPP

// Cartan subalgebra, root-space decomposition and root bookkeeping.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartanz/exterior.hpp"
#include "cartanz/report.hpp"

namespace cartanz {

/// Raw eigenvalue vector α(h_i) in the order of the Cartan basis (the Euler
/// coordinate, when present, comes last).
using Weight = std::vector<int>;

std::string weight_string(const Weight& w);  // "(1,-1,0)"
Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a);
Weight scaled(const Weight& a, int k);
bool is_zero(const Weight& w);

struct CartanBasis {
  std::vector<SuperDerivation> elements;
  std::optional<std::size_t> euler_index;

  std::size_t size() const { return elements.size(); }
  /// Index set I used by the integral form: every element including ℰ.
  std::string label(std::size_t i) const;
};

CartanBasis cartan_basis(const AlgebraSpec& spec);

struct RootDatum {
  Weight weight;
  int height = 0;
  std::vector<SuperDerivation> vectors;

  std::size_t multiplicity() const { return vectors.size(); }
  Parity parity() const { return parity_of(height); }
};

class RootSystem {
 public:
  RootSystem(CartanTypeAlgebra algebra, CartanBasis cartan, std::map<Weight, RootDatum> roots);

  const CartanTypeAlgebra& algebra() const { return algebra_; }
  const CartanBasis& cartan() const { return cartan_; }
  const std::map<Weight, RootDatum>& roots() const { return roots_; }
  std::size_t rank() const { return cartan_.size(); }

  bool contains(const Weight& w) const { return roots_.count(w) != 0; }
  const RootDatum* find(const Weight& w) const;
  const RootDatum& at(const Weight& w) const { return roots_.at(w); }

  /// Positive: height > 0, or height 0 with lexicographically positive weight.
  bool is_positive(const Weight& w) const;
  const std::vector<Weight>& positive() const { return positive_; }
  const std::vector<Weight>& negative() const { return negative_; }
  /// Indecomposable positive roots, sorted by (height, weight).
  const std::vector<Weight>& simple() const { return simple_; }

  std::vector<Weight> roots_of_height(int z) const;
  std::size_t total_multiplicity() const;

 private:
  CartanTypeAlgebra algebra_;
  CartanBasis cartan_;
  std::map<Weight, RootDatum> roots_;
  std::vector<Weight> positive_, negative_, simple_;
};

class RootDecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simultaneous eigenspace decomposition of the built algebra under its
/// (possibly Euler-extended) Cartan basis. Throws RootDecompositionError when
/// a weight space is not contained in a single ℤ-degree.
RootSystem root_decomposition(const CartanTypeAlgebra& algebra);
RootSystem root_decomposition(const AlgebraSpec& spec);

/// Common ℤ-degree of the root vectors.
int height(const RootDatum& rd);

/// Weight of a homogeneous W(n) monomial under a diagonal Cartan basis.
Weight monomial_weight(const CartanBasis& cartan, Mask mask, int j);

/// Clauses: "symmetric-roots" (±α ∈ R ⇒ height 0 and μ = 1), "double-roots"
/// (2α ∈ R only for the listed families/roots), "asymmetric-root" (some α with −α ∉ R).
Report verify_root_properties(const RootSystem& rs);

nlohmann::json root_table(const RootSystem& rs);

}  // namespace cartanz

#endif
