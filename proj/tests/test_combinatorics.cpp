#include <set>

#include "doctest.h"

#include "cartanz/combinatorics.hpp"

using namespace cartanz;

namespace {

// All vectors v with 0 ≤ v[i] ≤ bound[i].
std::vector<std::vector<int>> boxes(const std::vector<int>& bound) {
  std::vector<std::vector<int>> out{{}};
  for (int b : bound) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out) {
      for (int c = 0; c <= b; ++c) {
        auto w = v;
        w.push_back(c);
        next.push_back(w);
      }
    }
    out = next;
  }
  return out;
}

// Coefficient of x^k in Π (1 + x + … + x^{c}).
long long generating_coefficient(const std::vector<int>& counts, int k) {
  std::vector<long long> poly{1};
  for (int c : counts) {
    std::vector<long long> next(poly.size() + static_cast<std::size_t>(c), 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      for (int e = 0; e <= c; ++e) next[i + static_cast<std::size_t>(e)] += poly[i];
    }
    poly = next;
  }
  return k < static_cast<int>(poly.size()) ? poly[static_cast<std::size_t>(k)] : 0;
}

}  // namespace

TEST_CASE("multinomial m") {
  CHECK(multinomial_m(AMultiset{{0, 1}, {1, 1}}) == 2);
  CHECK(multinomial_m(AMultiset{{0, 2}}) == 1);
  CHECK(multinomial_m(AMultiset{{0, 2}, {1, 1}}) == 3);
  CHECK(multinomial_m(AMultiset{}) == 1);
  for (const auto& v : boxes({3, 2, 2})) {
    AMultiset psi;
    for (std::size_t i = 0; i < v.size(); ++i) psi.add(static_cast<int>(i), v[i]);
    Integer prod = multinomial_m(psi);
    for (int c : v) prod *= factorial(static_cast<unsigned>(c));
    CHECK(prod == factorial(static_cast<unsigned>(psi.size())));
  }
}

TEST_CASE("multiset arithmetic") {
  const AMultiset a{{1, 2}, {3, 1}};
  const AMultiset b{{1, 1}};
  CHECK((a - b) == AMultiset{{1, 1}, {3, 1}});
  CHECK(b.is_submultiset(a));
  CHECK(!a.is_submultiset(b));
  CHECK_THROWS_AS(b - a, std::invalid_argument);
  CHECK((a + b).size() == 4);
  CHECK(AMultiset::singleton(2, 3).count(2) == 3);
  CHECK(AMultiset{{1, 0}}.empty());
}

TEST_CASE("gen_binomial") {
  CHECK(gen_binomial(-1, 2) == 1);
  CHECK(gen_binomial(3, 0) == 1);
  CHECK(gen_binomial(-2, 3) == -4);
  CHECK(gen_binomial(2, 3) == 0);
  CHECK(gen_binomial(5, 2) == 10);
  // Pascal's rule, also for negative arguments
  for (int t = -5; t <= 5; ++t) {
    for (int r = 1; r <= 4; ++r) CHECK(gen_binomial(t + 1, r) == gen_binomial(t, r) + gen_binomial(t, r - 1));
  }
}

TEST_CASE("A-models") {
  const auto trunc = a_model("trunc-poly-4");
  CHECK(trunc.size() == 4);
  CHECK(trunc.label(2) == "t2");
  CHECK(trunc.mul(1, 2) == std::optional<ABasis>(3));
  CHECK(!trunc.mul(2, 2).has_value());
  CHECK(trunc.has_zero_divisors());
  const auto cyc = a_model("cyclic-4");
  CHECK(cyc.mul(3, 2) == std::optional<ABasis>(1));
  CHECK(!cyc.has_zero_divisors());
  CHECK_THROWS_AS(a_model("laurent"), std::invalid_argument);
  CHECK(trunc.parse_label("t3") == std::optional<ABasis>(3));
  for (const auto& A : {trunc, cyc}) {
    for (ABasis a = 0; a < A.size(); ++a) {
      CHECK(A.mul(a, A.unit()) == std::optional<ABasis>(a));
      for (ABasis b = 0; b < A.size(); ++b) {
        CHECK(A.mul(a, b) == A.mul(b, a));
        for (ABasis c = 0; c < A.size(); ++c) {
          CHECK(A.mul(A.mul(a, b), std::optional<ABasis>(c)) == A.mul(std::optional<ABasis>(a), A.mul(b, c)));
        }
      }
    }
  }
}

TEST_CASE("pi") {
  const auto A = a_model("trunc-poly-4");
  CHECK(pi(AMultiset{}, A) == std::optional<ABasis>(0));
  CHECK(pi(AMultiset{{1, 2}}, A) == std::optional<ABasis>(2));
  CHECK(pi(AMultiset{{1, 1}, {2, 1}}, A) == std::optional<ABasis>(3));
  CHECK(!pi(AMultiset{{2, 2}}, A).has_value());
  CHECK(to_string(AMultiset{{1, 2}, {3, 1}}, A) == "{t:2,t3:1}");
}

TEST_CASE("F_k against the generating function and brute force") {
  CHECK(enumerate_F_k(AMultiset{{0, 2}}, 1) == std::vector<AMultiset>{AMultiset{{0, 1}}});
  CHECK(enumerate_F_k(AMultiset{{0, 1}, {1, 1}}, 1) == std::vector<AMultiset>{AMultiset{{0, 1}}, AMultiset{{1, 1}}});
  for (const auto& counts : std::vector<std::vector<int>>{{1}, {2, 1}, {1, 1, 1}, {3, 2}, {2, 2, 1}}) {
    AMultiset chi;
    for (std::size_t i = 0; i < counts.size(); ++i) chi.add(static_cast<int>(i), counts[i]);
    for (int k = 0; k <= chi.size() + 1; ++k) {
      const auto got = enumerate_F_k(chi, k);
      CHECK(static_cast<long long>(got.size()) == generating_coefficient(counts, k));
      std::set<AMultiset> expect;
      for (const auto& v : boxes(counts)) {
        AMultiset m;
        for (std::size_t i = 0; i < v.size(); ++i) m.add(static_cast<int>(i), v[i]);
        if (m.size() == k) expect.insert(m);
      }
      CHECK(std::set<AMultiset>(got.begin(), got.end()) == expect);
      CHECK(std::set<AMultiset>(got.begin(), got.end()).size() == got.size());
    }
  }
}

TEST_CASE("CS_k") {
  const AMultiset a{{0, 1}};
  const auto cs1 = enumerate_CS_k(a, 1);
  REQUIRE(cs1.size() == 2);  // {0} and {χ_a}
  CHECK(cs1[0] == Multiset<AMultiset>::singleton(AMultiset{}));
  CHECK(cs1[1] == Multiset<AMultiset>::singleton(a));
  CHECK(enumerate_CS_k(a, 1, ZeroParts::Exclude).size() == 1);
  const auto zero = enumerate_CS_k(AMultiset{}, 3);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == Multiset<AMultiset>::singleton(AMultiset{}, 3));

  // CS_1(χ) is F(χ) part by part.
  const AMultiset chi{{0, 2}, {2, 1}};
  std::set<AMultiset> parts;
  for (const auto& psi : enumerate_CS_k(chi, 1)) parts.insert(psi.counts().begin()->first);
  const auto all = enumerate_F(chi);
  CHECK(parts == std::set<AMultiset>(all.begin(), all.end()));

  // brute force: every multiset of k sub-multisets, filtered by the weighted sum
  for (int k = 0; k <= 3; ++k) {
    std::set<Multiset<AMultiset>> expect;
    std::function<void(std::size_t, int, Multiset<AMultiset>)> go = [&](std::size_t from, int left,
                                                                      Multiset<AMultiset> acc) {
      if (left == 0) {
        if (weighted_sum(acc).is_submultiset(chi)) expect.insert(acc);
        return;
      }
      for (std::size_t p = from; p < all.size(); ++p) {
        auto next = acc;
        next.add(all[p]);
        go(p, left - 1, next);
      }
    };
    go(0, k, {});
    const auto got = enumerate_CS_k(chi, k);
    CHECK(std::set<Multiset<AMultiset>>(got.begin(), got.end()) == expect);
    CHECK(got.size() == expect.size());
  }
}

TEST_CASE("CP_k") {
  CHECK(enumerate_CP_k(2, 1) == std::vector<Multiset<int>>{Multiset<int>{{2, 1}}});
  const auto cp32 = enumerate_CP_k(3, 2);
  CHECK(cp32 == std::vector<Multiset<int>>{Multiset<int>{{0, 1}, {3, 1}}, Multiset<int>{{1, 1}, {2, 1}}});
  CHECK(enumerate_CP_k(3, 2, ZeroParts::Exclude).size() == 1);
  CHECK(enumerate_CP_k(0, 0) == std::vector<Multiset<int>>{Multiset<int>{}});
  CHECK(enumerate_CP_k(0, 3) == std::vector<Multiset<int>>{Multiset<int>::singleton(0, 3)});
  // brute force over nondecreasing tuples
  for (int j = 0; j <= 5; ++j) {
    for (int k = 0; k <= 5; ++k) {
      std::set<Multiset<int>> expect;
      std::vector<int> bound(static_cast<std::size_t>(k), j);
      for (const auto& v : boxes(bound)) {
        int sum = 0;
        Multiset<int> m;
        for (int x : v) {
          sum += x;
          m.add(x);
        }
        if (sum == j) expect.insert(m);
      }
      const auto got = enumerate_CP_k(j, k);
      CHECK(std::set<Multiset<int>>(got.begin(), got.end()) == expect);
      CHECK(got.size() == expect.size());
    }
  }
}
