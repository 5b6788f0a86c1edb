#include <set>

#include "doctest.h"

#include "cartanz/chevalley.hpp"

using namespace cartanz;

namespace {

ChevalleyBasis chevalley(Family f, int n, bool euler = false) {
  return construct_chevalley(root_decomposition(AlgebraSpec{f, n, euler}));
}

SuperDerivation mono(int n, std::initializer_list<int> idx, int j) {
  return SuperDerivation::term(ExteriorElement::product_of(n, idx), j);
}

LieIndex index_of(const ChevalleyBasis& cb, const SuperDerivation& d) {
  for (LieIndex u = 0; u < cb.size(); ++u) {
    if (cb.element(u) == d || cb.element(u) == -d) return u;
  }
  FAIL("element not in basis: " << d.str());
  return 0;
}

// Σ c_w e_w rebuilt from the table, compared against a direct supercommutator.
SuperDerivation expand(const ChevalleyBasis& cb, const LieCombination& c) {
  SuperDerivation d(cb.roots().algebra().rank());
  for (const auto& [w, q] : c) d += Rational(q) * cb.element(w);
  return d;
}

}  // namespace

TEST_CASE("W(2) candidate basis is the monomial basis") {
  const auto cb = chevalley(Family::W, 2);
  REQUIRE(cb.size() == 8);
  CHECK(cb.element(0) == mono(2, {1}, 1));
  CHECK(cb.element(1) == mono(2, {2}, 2));
  for (const auto& e : cb.elements()) {
    // every element is ± a single monomial
    const auto coords = e.coordinates();
    int nonzero = 0;
    for (Eigen::Index i = 0; i < coords.size(); ++i) nonzero += coords(i) != 0;
    CHECK(nonzero == 1);
  }
  CHECK(cb.log().empty());
  for (const auto& g : cb.generators()) {
    for (int v : g.weight) CHECK((v >= -1 && v <= 1));
  }
}

TEST_CASE("axioms hold on W(2), W(3), H(4)") {
  for (const auto& cb : {chevalley(Family::W, 2), chevalley(Family::W, 3), chevalley(Family::H, 4, true)}) {
    CAPTURE(cb.roots().algebra().spec().name());
    const auto report = verify_axioms(cb);
    REQUIRE(report.checks.size() == 8);
    for (const auto& c : report.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
      CHECK(c.cases > 0);
    }
  }
}

TEST_CASE("S(3) axiom 4 counterexample") {
  const auto cb = chevalley(Family::S, 3, true);
  const auto report = verify_axioms(cb);
  for (const auto& c : report.checks) {
    CAPTURE(c.name);
    CHECK(c.passed == (c.name != "axiom-4"));
  }
  // [∂₂, ξ₁ξ₂∂₁ + ξ₂ξ₃∂₃] = −ξ₁∂₁ + ξ₃∂₃ = −(h₁ + h₂)
  const auto d2 = SuperDerivation::partial(3, 2);
  const auto top = mono(3, {1, 2}, 1) + mono(3, {2, 3}, 3);
  const auto h = cartan_basis({Family::S, 3, true});
  CHECK(supercommutator(d2, top) == -(h.elements[0] + h.elements[1]));
  const auto s = sigma(cb, Weight{1, -1, -1});
  REQUIRE(s.size() == 1);
  CHECK(!s.front().has_value());
  CHECK(report.find("axiom-4")->detail.find("h1 + -1*h2") != std::string::npos);
}

TEST_CASE("coroots and sigma") {
  const auto cb = chevalley(Family::W, 3);
  const auto rs = cb.roots();
  for (const auto& a : rs.roots_of_height(0)) {
    const auto h = coroot(cb, a);
    REQUIRE(h.has_value());
    Rational value = 0;
    for (std::size_t i = 0; i < h->size(); ++i) {
      CHECK(is_integer((*h)[i]));
      value += (*h)[i] * a[i];
    }
    CHECK(value == 2);
  }
  std::set<std::size_t> covered;
  for (const auto& g : rs.roots_of_height(-1)) {
    for (const auto& e : sigma(cb, g)) {
      REQUIRE(e.has_value());
      covered.insert(e->index);
    }
  }
  CHECK(covered == std::set<std::size_t>{0, 1, 2});
  CHECK(!coroot(cb, Weight{-1, 0, 0}).has_value());
}

TEST_CASE("structure constants reproduce every bracket") {
  for (const auto& cb : {chevalley(Family::W, 3), chevalley(Family::S, 3, true), chevalley(Family::STilde, 4),
                         chevalley(Family::H, 4, true)}) {
    CAPTURE(cb.roots().algebra().spec().name());
    const auto sc = structure_constants(cb);
    REQUIRE(sc.size() == cb.size());
    for (LieIndex u = 0; u < sc.size(); ++u) {
      for (LieIndex v = 0; v < sc.size(); ++v) {
        REQUIRE(expand(cb, sc.bracket(u, v)) == supercommutator(cb.element(u), cb.element(v)));
        if (sc.generator(u).is_cartan || sc.generator(v).is_cartan) continue;
        for (const auto& q : sc.c_vector(u, v)) CHECK((q >= -2 && q <= 2));
      }
    }
  }
}

TEST_CASE("c vectors") {
  const auto cb = chevalley(Family::W, 2);
  const auto sc = structure_constants(cb);
  const auto d1 = index_of(cb, SuperDerivation::partial(2, 1));
  // [∂₁, ξ₁ξ₂∂₂] = ξ₂∂₂ lands in the Cartan part; [∂₁, ξ₁ξ₂∂₁] = ξ₂∂₁ is a root vector.
  CHECK(expand(cb, sc.bracket(d1, index_of(cb, mono(2, {1, 2}, 2)))) == mono(2, {2}, 2));
  const auto x = index_of(cb, mono(2, {1, 2}, 1));
  const auto c = sc.c_vector(d1, x);
  REQUIRE(c.size() == 1);
  CHECK(abs(c.front()) == 1);
  CHECK(expand(cb, sc.bracket(d1, x)) == mono(2, {2}, 1));

  // ∂₁ + ∂₂: −ε₁ − ε₂ ∉ R ∪ {0}
  const auto d2 = index_of(cb, SuperDerivation::partial(2, 2));
  CHECK(!sc.is_root(sc.generator(d1).weight + sc.generator(d2).weight));
  CHECK(sc.c_vector(d1, d2).empty());
  CHECK(sc.bracket(d1, d2).empty());

  // axiom 6a on W(3): α = ε₁−ε₂, β = ε₂−ε₃, r = 0
  const auto w3 = chevalley(Family::W, 3);
  const auto s3 = structure_constants(w3);
  const auto a = *w3.root_vector(Weight{1, -1, 0}, 1);
  const auto b = *w3.root_vector(Weight{0, 1, -1}, 1);
  CHECK(abs(s3.c_vector(a, b).front()) == 1);
}

TEST_CASE("double brackets") {
  const auto cb = chevalley(Family::W, 3);
  const auto sc = structure_constants(cb);
  const auto& rs = cb.roots();
  int found = 0;
  for (const auto& a : rs.roots_of_height(0)) {
    const auto xa = *cb.root_vector(a, 1);
    for (const auto& [b, rd] : rs.roots()) {
      const Weight target = scaled(a, 2) + b;
      if (!rs.contains(target)) continue;
      std::optional<LieIndex> common;
      for (std::size_t m = 1; m <= rd.multiplicity(); ++m) {
        const auto xb = *cb.root_vector(b, static_cast<int>(m));
        const auto db = sc.double_bracket(xa, xb);
        REQUIRE(db.has_value());
        CHECK((db->sign == 1 || db->sign == -1));
        CHECK(sc.generator(db->target).weight == target);
        if (common) CHECK(*common == db->target);
        common = db->target;
        // oracle: the nested supercommutator itself
        const auto direct = supercommutator(cb.element(xa), supercommutator(cb.element(xa), cb.element(xb)));
        CHECK(direct == Rational(2 * db->sign) * cb.element(db->target));
        ++found;
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("non-integral data is rejected") {
  const auto cb = chevalley(Family::W, 2);
  auto elements = cb.elements();
  auto& doubled = elements.back();
  doubled *= Rational(2);
  const ChevalleyBasis scaled_basis(cb.roots(), elements, cb.generators(), {});
  CHECK_THROWS_AS(structure_constants(scaled_basis), IntegralityError);
  const auto report = verify_axioms(scaled_basis);
  CHECK(!report.find("integrality")->passed);
}

TEST_CASE("H(5) keeps integral structure constants") {
  const auto cb = chevalley(Family::H, 5, true);
  CHECK_NOTHROW(structure_constants(cb));
  CHECK(verify_axioms(cb).find("integrality")->passed);
}

TEST_CASE("structure table JSON") {
  const auto sc = structure_constants(chevalley(Family::W, 2));
  const auto j = structure_table(sc);
  CHECK(j["generators"].size() == 8);
  CHECK(j["generators"][0]["name"] == "h1");
  CHECK(!j["brackets"].empty());
}
