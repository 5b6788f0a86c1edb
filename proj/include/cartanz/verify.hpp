#ifndef CARTANZ_VERIFY_HPP
#define CARTANZ_VERIFY_HPP

// Oracle-backed verification campaigns over the integral form: identities,
// the p_i suite, degree drops, integrality of rewriting, decompositions.

#include <functional>
#include <random>

#include "cartanz/exterior.hpp"
#include "cartanz/report.hpp"
#include "cartanz/zform.hpp"

namespace cartanz {

struct Bounds {
  int r = 2;    // divided-power exponents 1..r
  int chi = 2;  // |χ| for p_i(χ), 1..chi
};

/// One verification outcome; serialized as a JSON line.
struct VerifyRecord {
  VerifyRecord() = default;
  VerifyRecord(std::string group_name, std::string identity_name, nlohmann::json parameters)
      : group(std::move(group_name)), identity(std::move(identity_name)), params(std::move(parameters)) {}

  std::string group;
  std::string identity;
  nlohmann::json params = nlohmann::json::object();
  bool passed = true;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  int max_degree = 0;
  double elapsed = 0;
  std::string detail;
  std::vector<std::string> trace;
};

void to_json(nlohmann::json& j, const VerifyRecord& r);

struct Tally {
  std::size_t passed = 0;
  std::size_t failed = 0;
  const VerifyRecord* first_failure = nullptr;

  bool ok() const { return failed == 0; }
};
Tally tally(const std::vector<VerifyRecord>& records);

/// Super Jacobi identity on random homogeneous triples, closure and grading on all pairs.
Report verify_algebra(const CartanTypeAlgebra& g, std::size_t triples, std::uint64_t seed);

/// All generators (x⊗b)^{(r)}, x_γ⊗c, p_i(χ) within the bounds, in a fixed order.
std::vector<IntegralGenerator> generator_grid(const StructureConstants& sc, const MonoidAlgebra& A, Bounds b);

/// L·R against the right-hand side of `id`, both evaluated in the oracle.
VerifyRecord verify_identity(const ZForm& z, Identity id, const IntegralGenerator& L, const IntegralGenerator& R);

using IdentityFilter = std::function<bool(Identity)>;

/// Every grid pair that some identity covers.
std::vector<VerifyRecord> verify_identities(const ZForm& z, Bounds b, const IdentityFilter& keep = {});

/// For each identity, the first covered pair with an exponent 3 or |χ| = 3.
std::vector<VerifyRecord> verify_identities_at_three(const ZForm& z, const IdentityFilter& keep = {});

/// p_i(χ_b) = −h_i⊗b, leading terms, commutation, the product rule, independence.
std::vector<VerifyRecord> verify_p_suite(const ZForm& z, int max_chi);

/// The six degree-drop clauses over the grid.
std::vector<VerifyRecord> verify_degree_drop(const ZForm& z, Bounds b);

/// X_α(|ψ|χ_1) X_{−α}(ψ) ≡ (−1)^{|ψ|} p_α(ψ) modulo U·(x_α⊗A).
std::vector<VerifyRecord> verify_garland(const ZForm& z, int max_psi);

/// Oracle expansions of the given ℬ elements are linearly independent.
VerifyRecord verify_independence(const ZForm& z, const std::vector<IntegralMonomial>& basis_elements);

/// Rewrites m, checking membership in ℬ, integrality and oracle equality.
VerifyRecord verify_rewrite(const ZForm& z, const IntegralMonomial& m, std::string group = "theorem");

using GeneratorFilter = std::function<bool(const IntegralGenerator&)>;

/// A random monomial of total degree 1..max_degree whose factors pass `keep`.
IntegralMonomial random_monomial(const StructureConstants& sc, const MonoidAlgebra& A, std::mt19937_64& rng,
                                 int max_degree, const GeneratorFilter& keep = {});

/// rewrite_to_basis under the order negative ≺ Cartan ≺ positive, with the word
/// shape checked; requires an engine with that order.
VerifyRecord triangular_decompose(const ZForm& triangular, const IntegralMonomial& m);

/// Products within one of ℬ⁺, ℬ⁻, ℬ⁰ stay within it. `side` is −1, 0 or +1.
VerifyRecord verify_triangular_closure(const ZForm& triangular, const IntegralMonomial& m, int side);

/// The three ℤ-module factorizations, witnessed on the rewrite of m.
/// Clause 1 wants an even-first engine, clauses 2 and 3 a zero-first engine.
VerifyRecord factorization_check(const ZForm& z, const IntegralMonomial& m, int clause);
bool in_factorization_domain(const StructureConstants& sc, const IntegralGenerator& g, int clause);

/// Copy of `sc` with one structure constant negated: the first nonzero
/// root-vector coefficient of a bracket between root vectors ("constant"),
/// or the bracket [x_α, x_{−α}] of the first height-0 pair ("sign").
StructureConstants corrupt(const StructureConstants& sc, const std::string& kind);

}  // namespace cartanz

#endif
