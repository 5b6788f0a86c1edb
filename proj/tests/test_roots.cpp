#include <set>

#include "doctest.h"

#include "cartanz/roots.hpp"

using namespace cartanz;

namespace {

SuperDerivation mono(int n, std::initializer_list<int> idx, int j) {
  return SuperDerivation::term(ExteriorElement::product_of(n, idx), j);
}

// Weight of ξ_I∂_j in ε-coordinates, written out by hand.
Weight eps_weight(int n, std::initializer_list<int> idx, int j) {
  Weight w(static_cast<std::size_t>(n), 0);
  for (int i : idx) ++w[static_cast<std::size_t>(i - 1)];
  --w[static_cast<std::size_t>(j - 1)];
  return w;
}

}  // namespace

TEST_CASE("Cartan bases") {
  auto strs = [](const CartanBasis& cb) {
    std::vector<std::string> s;
    for (const auto& h : cb.elements) s.push_back(h.str());
    return s;
  };
  CHECK(strs(cartan_basis({Family::W, 3, false})) == std::vector<std::string>{"x1*d1", "x2*d2", "x3*d3"});
  CHECK(strs(cartan_basis({Family::S, 3, false})) == std::vector<std::string>{"x1*d1 - x2*d2", "x2*d2 - x3*d3"});
  CHECK(strs(cartan_basis({Family::H, 4, false})) == std::vector<std::string>{"x1*d1 - x3*d3", "x2*d2 - x4*d4"});
  const auto ext = cartan_basis({Family::S, 3, true});
  REQUIRE(ext.size() == 3);
  CHECK(ext.euler_index == 2u);
  CHECK(ext.label(2) == "E");
}

TEST_CASE("W(n) roots are the sums eps_I - eps_j") {
  for (int n : {2, 3}) {
    const auto rs = root_decomposition(AlgebraSpec{Family::W, n, false});
    std::map<Weight, std::size_t> expect;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      for (int j = 1; j <= n; ++j) {
        Weight w(static_cast<std::size_t>(n), 0);
        for (int i = 1; i <= n; ++i) w[static_cast<std::size_t>(i - 1)] += (m >> (i - 1)) & 1;
        --w[static_cast<std::size_t>(j - 1)];
        if (!is_zero(w)) ++expect[w];
      }
    }
    std::map<Weight, std::size_t> got;
    for (const auto& [w, rd] : rs.roots()) got[w] = rd.multiplicity();
    CHECK(got == expect);
  }
  const auto w2 = root_decomposition(AlgebraSpec{Family::W, 2, false});
  CHECK(w2.roots().size() == 6);
  CHECK(w2.at(Weight{-1, 0}).vectors.front() == SuperDerivation::partial(2, 1));
  CHECK(w2.at(Weight{1, 0}).vectors.front() == mono(2, {1, 2}, 2));
}

TEST_CASE("S(3) drops the top roots") {
  const auto rs = root_decomposition(AlgebraSpec{Family::S, 3, true});
  const auto cb = cartan_basis({Family::S, 3, true});
  for (int j = 1; j <= 3; ++j) CHECK(!rs.contains(monomial_weight(cb, 0b111, j)));
  CHECK(rs.contains(monomial_weight(cb, 0b011, 3)));
  // Raw sl(3) eigenvalues of ∂_1 and ε_1 + ε_2 + ε_3 − ε_1 coincide without the Euler coordinate.
  const auto plain = cartan_basis({Family::S, 3, false});
  CHECK(monomial_weight(plain, 0b111, 1) == monomial_weight(plain, 0, 1));
}

TEST_CASE("heights") {
  const auto rs = root_decomposition(AlgebraSpec{Family::W, 3, false});
  CHECK(height(rs.at(eps_weight(3, {}, 1))) == -1);
  CHECK(height(rs.at(eps_weight(3, {1}, 2))) == 0);
  CHECK(height(rs.at(eps_weight(3, {1, 2}, 3))) == 1);
  CHECK_THROWS_AS(height(RootDatum{}), std::invalid_argument);
}

TEST_CASE("H(n) needs the Euler coordinate") {
  CHECK_THROWS_AS(root_decomposition(AlgebraSpec{Family::H, 4, false}), RootDecompositionError);
  const auto rs = root_decomposition(AlgebraSpec{Family::H, 4, true});
  for (const auto& [w, rd] : rs.roots()) CHECK(w.back() == rd.height);
  CHECK(rs.roots().size() == 12);
}

TEST_CASE("root system invariants") {
  for (const AlgebraSpec spec : {AlgebraSpec{Family::W, 2, false}, AlgebraSpec{Family::W, 3, false},
                                 AlgebraSpec{Family::S, 3, true}, AlgebraSpec{Family::STilde, 4, false},
                                 AlgebraSpec{Family::H, 4, true}, AlgebraSpec{Family::H, 5, true}}) {
    CAPTURE(spec.name());
    const auto rs = root_decomposition(spec);
    CHECK(rs.total_multiplicity() + rs.rank() == rs.algebra().dimension());
    CHECK(rs.positive().size() + rs.negative().size() == rs.roots().size());
    for (const auto& [w, rd] : rs.roots()) {
      REQUIRE(rd.multiplicity() >= 1);
      for (const auto& v : rd.vectors) {
        REQUIRE(rs.algebra().contains(v));
        for (std::size_t i = 0; i < rs.rank(); ++i) {
          CHECK(supercommutator(rs.cartan().elements[i], v) == Rational(w[i]) * v);
        }
      }
    }
    // [g_α, g_β] ⊆ g_{α+β}
    for (const auto& [a, ra] : rs.roots()) {
      for (const auto& [b, rb] : rs.roots()) {
        const auto br = supercommutator(ra.vectors.front(), rb.vectors.front());
        if (br.is_zero()) continue;
        const Weight s = a + b;
        if (is_zero(s)) {
          for (std::size_t i = 0; i < rs.rank(); ++i) CHECK(supercommutator(rs.cartan().elements[i], br).is_zero());
        } else {
          REQUIRE(rs.contains(s));
          for (std::size_t i = 0; i < rs.rank(); ++i) {
            CHECK(supercommutator(rs.cartan().elements[i], br) == Rational(s[i]) * br);
          }
        }
      }
    }
    // Δ is nonempty and made of positive roots.
    CHECK(!rs.simple().empty());
    for (const auto& w : rs.simple()) CHECK(rs.is_positive(w));
  }
}

TEST_CASE("root properties, as computed") {
  const auto w2 = verify_root_properties(root_decomposition(AlgebraSpec{Family::W, 2, false}));
  // ±ε_i are both roots of W(2), at heights ±1.
  CHECK(!w2.find("symmetric-roots")->passed);
  CHECK(w2.find("double-roots")->passed);
  CHECK(!w2.find("asymmetric-root")->passed);  // R(W(2)) = -R(W(2))

  const auto w3 = verify_root_properties(root_decomposition(AlgebraSpec{Family::W, 3, false}));
  CHECK(w3.find("asymmetric-root")->passed);

  const auto st = verify_root_properties(root_decomposition(AlgebraSpec{Family::STilde, 4, false}));
  CHECK(st.find("double-roots")->passed);
  CHECK(st.find("double-roots")->cases == 4);

  const auto rs = root_decomposition(AlgebraSpec{Family::W, 2, false});
  const auto table = root_table(rs);
  CHECK(table.size() == 6);
  CHECK(table[0].contains("weight"));
}
