#include <random>

#include "doctest.h"

#include "cartanz/enveloping.hpp"

using namespace cartanz;

namespace {

StructureConstants constants(Family f, int n, bool euler = false) {
  return structure_constants(construct_chevalley(root_decomposition(AlgebraSpec{f, n, euler})));
}

// Independent normal form: repeatedly rewrite the rightmost disorder of an
// unsorted word, no memoization.
EnvelopingElement brute_force(const EnvelopingAlgebra& U, std::vector<Letter> start) {
  std::vector<std::pair<std::vector<Letter>, Rational>> work{{std::move(start), Rational(1)}};
  EnvelopingElement done;
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    std::optional<std::size_t> at;
    for (std::size_t i = w.size(); i-- > 1;) {
      if (w[i - 1] > w[i] || (w[i - 1] == w[i] && U.is_odd(w[i]))) {
        at = i - 1;
        break;
      }
    }
    if (!at) {
      done.add_term(w, c);
      continue;
    }
    const Letter x = w[*at], y = w[*at + 1];
    auto splice = [&](std::vector<Letter> middle, const Rational& q) {
      std::vector<Letter> next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(*at));
      next.insert(next.end(), middle.begin(), middle.end());
      next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(*at) + 2, w.end());
      work.emplace_back(std::move(next), q);
    };
    const auto br = U.bracket(x, y);
    if (x == y) {
      for (const auto& [t, q] : br.terms()) splice(t, c * q / 2);
    } else {
      splice({y, x}, U.is_odd(x) && U.is_odd(y) ? -c : c);
      for (const auto& [t, q] : br.terms()) splice(t, c * q);
    }
  }
  return done;
}

EnvelopingElement random_element(const EnvelopingAlgebra& U, std::mt19937& rng, int max_letters) {
  const auto letters = static_cast<int>(U.structure().size()) * U.coefficients().size();
  std::uniform_int_distribution<int> pick(0, letters - 1), len(0, max_letters), coeff(-3, 3);
  EnvelopingElement u;
  for (int t = 0; t < 2; ++t) {
    EnvelopingElement w = EnvelopingElement::scalar(coeff(rng));
    const int n = len(rng);
    for (int i = 0; i < n; ++i) w = U.multiply(w, EnvelopingElement::word({static_cast<Letter>(pick(rng))}));
    u += w;
  }
  return u;
}

LieIndex find_root(const StructureConstants& sc, const Weight& w, int k = 1) { return *sc.root_vector(w, k); }

}  // namespace

TEST_CASE("single straightening step") {
  const auto sc = constants(Family::W, 2);
  const auto A = a_model("trunc-poly-4");
  const auto xa = find_root(sc, Weight{1, -1});
  const auto xm = find_root(sc, Weight{-1, 1});
  // alphabet with x_{-α} before x_α
  std::vector<MapGenerator> alphabet;
  for (LieIndex u = 0; u < sc.size(); ++u) {
    if (u == xa) continue;
    for (ABasis b = 0; b < A.size(); ++b) alphabet.push_back({u, b});
    if (u == xm) {
      for (ABasis b = 0; b < A.size(); ++b) alphabet.push_back({xa, b});
    }
  }
  const EnvelopingAlgebra U(sc, A, alphabet);
  const auto lhs = U.multiply(U.generator(xa, 1), U.generator(xm, 2));
  auto expect = EnvelopingElement::word({U.letter(xm, 2), U.letter(xa, 1)});
  expect += U.lie_element(sc.bracket(xa, xm), A.mul(1, 2));
  CHECK(lhs == expect);
  CHECK(lhs.degree() == 2);
  // t·t3 = 0 kills the bracket term
  CHECK(U.multiply(U.generator(xa, 1), U.generator(xm, 3)) == EnvelopingElement::word({U.letter(xm, 3), U.letter(xa, 1)}));
}

TEST_CASE("unit, odd squares and parity") {
  const auto sc = constants(Family::W, 2);
  const EnvelopingAlgebra U(sc, a_model("cyclic-4"));
  const auto d1 = find_root(sc, Weight{-1, 0});
  const auto g = U.generator(d1, 1);
  CHECK(U.multiply(EnvelopingElement::one(), g) == g);
  CHECK(U.multiply(g, EnvelopingElement::one()) == g);
  CHECK(U.multiply(g, g).is_zero());  // [∂₁, ∂₁] = 0
  const auto x = find_root(sc, Weight{0, 1});  // odd, ξ₁ξ₂∂₁
  const auto y = U.generator(x, 2);
  CHECK(U.multiply(y, y).is_zero());
  CHECK(U.is_odd(g));
  CHECK(!U.is_odd(U.multiply(g, y)));
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto u = random_element(U, rng, 3);
    for (const auto& [w, c] : u.terms()) {
      (void)c;
      CHECK(w.size() <= 3);
    }
  }
}

TEST_CASE("odd square is half the bracket") {
  // S̃(4): [x_{-ε_i}, x_{-ε_i}] = ±2 x_{-2ε_i}
  const auto sc = constants(Family::STilde, 4);
  const EnvelopingAlgebra U(sc, a_model("trunc-poly-4"));
  int found = 0;
  for (LieIndex u = 0; u < sc.size(); ++u) {
    if (!sc.generator(u).is_odd() || sc.bracket(u, u).empty()) continue;
    const auto g = U.generator(u, 1);
    const auto sq = U.multiply(g, g);
    CHECK(sq == Rational(1, 2) * U.bracket(U.letter(u, 1), U.letter(u, 1)));
    CHECK(sq.degree() == 1);
    ++found;
  }
  CHECK(found == 4);
}

TEST_CASE("normal form agrees with an independent rewriting order") {
  for (const auto& [sc, model] : {std::pair{constants(Family::W, 2), "trunc-poly-4"},
                                  std::pair{constants(Family::W, 3), "cyclic-4"},
                                  std::pair{constants(Family::H, 4, true), "trunc-poly-4"}}) {
    const EnvelopingAlgebra U(sc, a_model(model));
    const auto letters = static_cast<int>(sc.size()) * U.coefficients().size();
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pick(0, letters - 1), len(1, 4);
    for (int trial = 0; trial < 150; ++trial) {
      std::vector<Letter> w;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) w.push_back(static_cast<Letter>(pick(rng)));
      EnvelopingElement fold = EnvelopingElement::one();
      for (Letter l : w) fold = U.multiply(fold, EnvelopingElement::word({l}));
      CHECK(fold == brute_force(U, w));
    }
  }
}

TEST_CASE("associativity and filtration on random triples") {
  const auto sc = constants(Family::W, 3);
  for (const auto* model : {"trunc-poly-4", "cyclic-4"}) {
    const EnvelopingAlgebra U(sc, a_model(model));
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_element(U, rng, 2);
      const auto b = random_element(U, rng, 2);
      const auto c = random_element(U, rng, 2);
      CHECK(U.multiply(U.multiply(a, b), c) == U.multiply(a, U.multiply(b, c)));
      const auto ab = U.multiply(a, b);
      if (!a.is_zero() && !b.is_zero() && !ab.is_zero()) CHECK(ab.degree() <= a.degree() + b.degree());
    }
  }
}

TEST_CASE("supercommutators of generators are brackets") {
  const auto sc = constants(Family::W, 2);
  const EnvelopingAlgebra U(sc, a_model("trunc-poly-4"));
  for (LieIndex u = 0; u < sc.size(); ++u) {
    for (LieIndex v = 0; v < sc.size(); ++v) {
      const auto g = U.generator(u, 1), h = U.generator(v, 2);
      const auto comm = U.supercommutator(g, h);
      CHECK(comm == U.bracket(U.letter(u, 1), U.letter(v, 2)));
      if (!comm.is_zero()) CHECK(comm.degree() < 2);
    }
  }
}

TEST_CASE("divided powers") {
  const auto sc = constants(Family::W, 3);
  const EnvelopingAlgebra U(sc, a_model("trunc-poly-4"));
  const auto x = find_root(sc, Weight{1, -1, 0});
  CHECK(U.divided_power(x, 1, 0) == EnvelopingElement::one());
  const auto g = U.generator(x, 1);
  CHECK(U.divided_power(x, 1, 2) == Rational(1, 2) * U.multiply(g, g));
  CHECK(U.divided_power(x, 2, 3).degree() == 3);
  for (int r = 0; r <= 3; ++r) {
    for (int s = 0; s <= 3; ++s) {
      CHECK(U.multiply(U.divided_power(x, 1, r), U.divided_power(x, 1, s)) ==
            Rational(binomial(r + s, s)) * U.divided_power(x, 1, r + s));
    }
  }
  const auto odd = find_root(sc, Weight{-1, 0, 0});
  CHECK_NOTHROW(U.divided_power(odd, 0, 1));
  CHECK_THROWS_AS(U.divided_power(odd, 0, 2), InvalidDividedPower);
  CHECK_THROWS_AS(EnvelopingElement().degree(), std::domain_error);
  CHECK(U.generator(sc.cartan(0), 2).degree() == 1);
}

TEST_CASE("p recursion") {
  const auto sc = constants(Family::W, 2);
  const auto A = a_model("trunc-poly-4");
  const EnvelopingAlgebra U(sc, A);
  CHECK(U.p_i(0, {}) == EnvelopingElement::one());
  for (ABasis b = 0; b < A.size(); ++b) {
    CHECK(U.p_i(0, AMultiset{{b, 1}}) == Rational(-1) * U.generator(sc.cartan(0), b));
  }
  // p(2χ_b) = ½(h⊗b)² − ½(h⊗b²)
  for (ABasis b = 0; b < A.size(); ++b) {
    const auto hb = U.generator(sc.cartan(1), b);
    auto expect = Rational(1, 2) * U.multiply(hb, hb);
    if (const auto b2 = A.mul(b, b)) expect -= Rational(1, 2) * U.generator(sc.cartan(1), *b2);
    CHECK(U.p_i(1, AMultiset{{b, 2}}) == expect);
  }
  // leading term (−1)^{|χ|} Π (h⊗a)^{(χ(a))}
  for (const auto& chi : {AMultiset{{1, 2}, {2, 1}}, AMultiset{{0, 3}}, AMultiset{{0, 1}, {1, 1}, {3, 1}}}) {
    const auto p = U.p_i(0, chi);
    CHECK(p.degree() == chi.size());
    Word top;
    Rational coeff = chi.size() % 2 == 0 ? 1 : -1;
    for (const auto& [a, k] : chi.counts()) {
      for (int i = 0; i < k; ++i) top.push_back(U.letter(sc.cartan(0), a));
      coeff /= Rational(factorial(static_cast<unsigned>(k)));
    }
    for (const auto& [w, c] : p.terms()) {
      if (static_cast<int>(w.size()) == chi.size()) CHECK((w == top ? c == coeff : false));
    }
  }
  // p_h for h = h₁ + h₂ agrees with the letters of h₁ + h₂
  const auto ph = U.p({1, 1}, AMultiset{{1, 1}});
  CHECK(ph == Rational(-1) * (U.generator(sc.cartan(0), 1) + U.generator(sc.cartan(1), 1)));
}
