#include "cartanz/verify.hpp"

#include <chrono>
#include <set>

#include "cartanz/linalg.hpp"

namespace cartanz {

void to_json(nlohmann::json& j, const VerifyRecord& r) {
  j = nlohmann::json{{"group", r.group},
                     {"identity", r.identity},
                     {"params", r.params},
                     {"status", r.passed ? "PASS" : "FAIL"},
                     {"lhs_terms", r.lhs_terms},
                     {"rhs_terms", r.rhs_terms},
                     {"max_degree", r.max_degree},
                     {"elapsed", r.elapsed}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.trace.empty()) j["trace"] = r.trace;
}

Tally tally(const std::vector<VerifyRecord>& records) {
  Tally t;
  for (const auto& r : records) {
    if (r.passed) {
      ++t.passed;
    } else {
      ++t.failed;
      if (!t.first_failure) t.first_failure = &r;
    }
  }
  return t;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int degree_or_zero(const EnvelopingElement& u) { return u.is_zero() ? 0 : u.degree(); }

/// True when u is zero or has degree below `bound`.
bool degree_below(const EnvelopingElement& u, int bound) { return u.is_zero() || u.degree() < bound; }

std::vector<AMultiset> multisets_up_to(int size, int max) {
  std::vector<AMultiset> out;
  std::function<void(ABasis, int, AMultiset)> go = [&](ABasis from, int left, AMultiset acc) {
    if (!acc.empty()) out.push_back(acc);
    if (left == 0) return;
    for (ABasis b = from; b < size; ++b) {
      AMultiset next = acc;
      next.add(b);
      go(b, left - 1, next);
    }
  };
  go(0, max, {});
  return out;
}

LieIndex lie_index(const IntegralGenerator& g) {
  if (const auto* e = std::get_if<EvenDivided>(&g)) return e->root;
  if (const auto* o = std::get_if<OddGenerator>(&g)) return o->root;
  return std::get<CartanP>(g).i;
}

bool simple_height_zero(const StructureConstants& sc, LieIndex u) {
  const auto& g = sc.generator(u);
  return !g.is_cartan && g.height == 0 && g.k == 1 && sc.multiplicity(g.weight) == 1;
}

nlohmann::json pair_params(const ZForm& z, const IntegralGenerator& L, const IntegralGenerator& R) {
  return {{"left", z.str(L)}, {"right", z.str(R)}};
}

VerifyRecord failure(VerifyRecord r, const std::exception& e) {
  r.passed = false;
  r.detail = e.what();
  if (const auto* v = dynamic_cast<const IntegralityViolation*>(&e)) r.trace = v->trace;
  return r;
}

}  // namespace

Report verify_algebra(const CartanTypeAlgebra& g, std::size_t triples, std::uint64_t seed) {
  Report report;
  Check closure{"bracket closure", true, "", 0}, parity{"Z2 grading", true, "", 0}, grading{"Z grading", true, "", 0},
      jacobi{"super Jacobi", true, "", 0};
  for (std::size_t a = 0; a < g.dimension(); ++a) {
    for (std::size_t b = 0; b < g.dimension(); ++b) {
      const auto br = supercommutator(g.element(a), g.element(b));
      const auto coords = g.coordinates(br);
      ++closure.cases;
      if (!coords) {
        if (closure.passed) closure.detail = "[" + std::to_string(a) + "," + std::to_string(b) + "] leaves the algebra";
        closure.passed = false;
        continue;
      }
      if (br.is_zero()) continue;
      ++parity.cases;
      if (br.parity() != g.parity(a) + g.parity(b) && parity.passed) {
        parity.passed = false;
        parity.detail = "[" + g.element(a).str() + ", " + g.element(b).str() + "]";
      }
      ++grading.cases;
      for (Eigen::Index k = 0; k < coords->size(); ++k) {
        if ((*coords)(k) == 0 || g.degree(static_cast<std::size_t>(k)) == g.degree(a) + g.degree(b)) continue;
        if (grading.passed) {
          grading.detail = "[" + g.element(a).str() + ", " + g.element(b).str() + "] has a component of degree " +
                           std::to_string(g.degree(static_cast<std::size_t>(k))) + ", expected " +
                           std::to_string(g.degree(a) + g.degree(b));
        }
        grading.passed = false;
        break;
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, g.dimension() - 1);
  for (std::size_t t = 0; t < triples; ++t) {
    const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    const auto &a = g.element(i), &b = g.element(j), &c = g.element(k);
    const Rational sign = is_odd(g.parity(i)) && is_odd(g.parity(j)) ? -1 : 1;
    const auto lhs = supercommutator(a, supercommutator(b, c));
    const auto rhs = supercommutator(supercommutator(a, b), c) + sign * supercommutator(b, supercommutator(a, c));
    ++jacobi.cases;
    if (lhs != rhs && jacobi.passed) {
      jacobi.passed = false;
      jacobi.detail = "triple (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
    }
  }
  report.checks = {closure, parity, grading, jacobi};
  return report;
}

std::vector<IntegralGenerator> generator_grid(const StructureConstants& sc, const MonoidAlgebra& A, Bounds b) {
  std::vector<IntegralGenerator> out;
  const auto chis = multisets_up_to(A.size(), b.chi);
  for (LieIndex u = 0; u < sc.size(); ++u) {
    const auto& g = sc.generator(u);
    if (g.is_cartan) {
      for (const auto& chi : chis) out.emplace_back(CartanP{g.cartan_index, chi});
      continue;
    }
    for (ABasis a = 0; a < A.size(); ++a) {
      if (g.is_odd()) {
        out.emplace_back(OddGenerator{u, a});
      } else {
        for (int r = 1; r <= b.r; ++r) out.emplace_back(EvenDivided{u, a, r});
      }
    }
  }
  return out;
}

VerifyRecord verify_identity(const ZForm& z, Identity id, const IntegralGenerator& L, const IntegralGenerator& R) {
  VerifyRecord rec{"identities", identity_name(id), pair_params(z, L, R)};
  const auto start = Clock::now();
  try {
    const auto lhs = z.oracle().multiply(z.evaluate(L), z.evaluate(R));
    const auto expansion = z.apply(id, L, R);
    const auto rhs = z.evaluate(expansion);
    rec.lhs_terms = lhs.terms().size();
    rec.rhs_terms = expansion.size();
    rec.max_degree = degree_or_zero(lhs);
    if (lhs != rhs) {
      rec.passed = false;
      rec.detail = "lhs " + z.oracle().str(lhs) + " ≠ rhs " + z.oracle().str(rhs);
    }
  } catch (const std::exception& e) {
    rec = failure(std::move(rec), e);
  }
  rec.elapsed = seconds_since(start);
  return rec;
}

std::vector<VerifyRecord> verify_identities(const ZForm& z, Bounds b, const IdentityFilter& keep) {
  std::vector<VerifyRecord> out;
  const auto grid = generator_grid(z.table(), z.coefficients(), b);
  for (const auto& L : grid) {
    for (const auto& R : grid) {
      const auto id = z.classify(L, R);
      if (!id || (keep && !keep(*id))) continue;
      out.push_back(verify_identity(z, *id, L, R));
    }
  }
  return out;
}

std::vector<VerifyRecord> verify_identities_at_three(const ZForm& z, const IdentityFilter& keep) {
  std::vector<VerifyRecord> out;
  std::set<Identity> done;
  const auto grid = generator_grid(z.table(), z.coefficients(), Bounds{3, 3});
  auto is_three = [](const IntegralGenerator& g) { return degree(g) == 3; };
  for (const auto& L : grid) {
    for (const auto& R : grid) {
      if (!is_three(L) && !is_three(R)) continue;
      const auto id = z.classify(L, R);
      if (!id || done.count(*id) || (keep && !keep(*id))) continue;
      done.insert(*id);
      out.push_back(verify_identity(z, *id, L, R));
    }
  }
  return out;
}

std::vector<VerifyRecord> verify_p_suite(const ZForm& z, int max_chi) {
  const auto& U = z.oracle();
  const auto& sc = z.table();
  const auto& A = z.coefficients();
  const auto chis = multisets_up_to(A.size(), max_chi);
  std::vector<VerifyRecord> out;
  auto record = [&](std::string clause, nlohmann::json params) {
    return VerifyRecord{"p-suite", std::move(clause), std::move(params)};
  };

  // h vectors: the fixed basis and the coroots of height-0 pairs
  std::vector<std::pair<std::string, std::vector<Integer>>> hs;
  for (std::size_t i = 0; i < sc.cartan_rank(); ++i) {
    std::vector<Integer> h(sc.cartan_rank(), 0);
    h[i] = 1;
    hs.emplace_back("h" + std::to_string(i + 1), h);
  }
  for (LieIndex u = 0; u < sc.size(); ++u) {
    if (simple_height_zero(sc, u) && is_positive_root(sc.generator(u))) {
      hs.emplace_back("h_" + weight_string(sc.generator(u).weight), z.coroot(u));
    }
  }

  for (std::size_t i = 0; i < sc.cartan_rank(); ++i) {
    for (ABasis b = 0; b < A.size(); ++b) {
      auto r = record("p-value", {{"i", i + 1}, {"chi", to_string(AMultiset{{b, 1}}, A)}});
      const auto expect = Rational(-1) * U.generator(sc.cartan(i), b);
      r.passed = U.p_i(i, AMultiset{{b, 1}}) == expect;
      r.max_degree = 1;
      out.push_back(std::move(r));
    }
  }

  for (const auto& [name, h] : hs) {
    for (const auto& chi : chis) {
      auto r = record("p-leading", {{"h", name}, {"chi", to_string(chi, A)}});
      const auto p = U.p(h, chi);
      EnvelopingElement lead = EnvelopingElement::scalar(chi.size() % 2 == 0 ? 1 : -1);
      for (const auto& [a, k] : chi.counts()) {
        EnvelopingElement ha;
        for (std::size_t i = 0; i < h.size(); ++i) ha.add_scaled(U.generator(sc.cartan(i), a), Rational(h[i]));
        EnvelopingElement power = EnvelopingElement::one();
        for (int t = 0; t < k; ++t) power = U.multiply(power, ha);
        power *= Rational(1) / Rational(factorial(static_cast<unsigned>(k)));
        lead = U.multiply(lead, power);
      }
      r.max_degree = degree_or_zero(p);
      r.lhs_terms = p.terms().size();
      std::set<Word> words;
      for (const auto& [w, c] : p.terms()) words.insert(w);
      for (const auto& [w, c] : lead.terms()) words.insert(w);
      for (const auto& w : words) {
        if (static_cast<int>(w.size()) != chi.size()) {
          if (static_cast<int>(w.size()) > chi.size()) r.passed = false;
          continue;
        }
        if (p.coefficient(w) != lead.coefficient(w)) {
          r.passed = false;
          r.detail = "coefficient of a top word differs: " + to_string(p.coefficient(w)) + " vs " +
                     to_string(lead.coefficient(w));
          break;
        }
      }
      out.push_back(std::move(r));
    }
  }

  for (std::size_t x = 0; x < hs.size(); ++x) {
    for (std::size_t y = x; y < hs.size(); ++y) {
      for (const auto& chi : chis) {
        for (const auto& phi : chis) {
          auto r = record("p-commute",
                          {{"h", hs[x].first}, {"chi", to_string(chi, A)}, {"h'", hs[y].first}, {"phi", to_string(phi, A)}});
          const auto p = U.p(hs[x].second, chi), q = U.p(hs[y].second, phi);
          const auto pq = U.multiply(p, q);
          r.passed = pq == U.multiply(q, p);
          r.max_degree = degree_or_zero(pq);
          out.push_back(std::move(r));
        }
      }
    }
  }

  for (std::size_t i = 0; i < sc.cartan_rank(); ++i) {
    for (const auto& chi : chis) {
      for (const auto& phi : chis) {
        auto r = record("p-product", {{"i", i + 1}, {"chi", to_string(chi, A)}, {"phi", to_string(phi, A)}});
        const auto start = Clock::now();
        try {
          const auto sum = chi + phi;
          Integer binom = 1;
          for (const auto& [a, k] : sum.counts()) binom *= binomial(k, chi.count(a));
          auto u = U.multiply(U.p_i(i, chi), U.p_i(i, phi));
          r.max_degree = degree_or_zero(u);
          u.add_scaled(U.p_i(i, sum), Rational(-binom));
          const auto decomposition = z.cartan_decompose(u);
          r.rhs_terms = decomposition.size();
          if (!degree_below(u, sum.size())) {
            r.passed = false;
            r.detail = "remainder has degree " + std::to_string(u.degree());
          }
          for (const auto& t : decomposition) {
            const bool single = t.factors.size() == 1 && std::get<CartanP>(t.factors.front()).i == i;
            if (!single) {
              r.passed = false;
              r.detail = "remainder needs " + z.str(t.factors);
            }
          }
          if (z.evaluate(decomposition) != u) {
            r.passed = false;
            r.detail = "decomposition does not reproduce the remainder";
          }
        } catch (const std::exception& e) {
          r = failure(std::move(r), e);
        }
        r.elapsed = seconds_since(start);
        out.push_back(std::move(r));
      }
    }
  }

  // leading words (h_i⊗a)^{χ} are distinct, so the p_i(χ) are independent
  for (std::size_t i = 0; i < sc.cartan_rank(); ++i) {
    auto r = record("p-independence", {{"i", i + 1}, {"max_chi", max_chi}});
    std::vector<EnvelopingElement> ps;
    for (const auto& chi : chis) ps.push_back(U.p_i(i, chi));
    ps.push_back(EnvelopingElement::one());
    std::map<Word, Eigen::Index> rows;
    for (const auto& p : ps) {
      for (const auto& [w, c] : p.terms()) rows.emplace(w, 0);
    }
    Eigen::Index n = 0;
    for (auto& [w, idx] : rows) idx = n++;
    QMatrix m = QMatrix::Zero(n, static_cast<Eigen::Index>(ps.size()));
    for (std::size_t c = 0; c < ps.size(); ++c) {
      for (const auto& [w, q] : ps[c].terms()) m(rows.at(w), static_cast<Eigen::Index>(c)) = q;
    }
    const auto rank = linalg::rank(m);
    r.passed = rank == static_cast<Eigen::Index>(ps.size());
    r.detail = "rank " + std::to_string(rank) + " of " + std::to_string(ps.size());
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerifyRecord> verify_degree_drop(const ZForm& z, Bounds b) {
  const auto& U = z.oracle();
  const auto& sc = z.table();
  std::vector<VerifyRecord> out;
  const auto grid = generator_grid(sc, z.coefficients(), b);
  for (const auto& L : grid) {
    for (const auto& R : grid) {
      const auto* le = std::get_if<EvenDivided>(&L);
      const auto* lo = std::get_if<OddGenerator>(&L);
      const auto* re = std::get_if<EvenDivided>(&R);
      const auto* rp = std::get_if<CartanP>(&R);
      const auto* ro = std::get_if<OddGenerator>(&R);
      std::string clause;
      if (le && re) {
        const auto& beta = sc.generator(le->root).weight;
        const auto& gamma = sc.generator(re->root).weight;
        if (is_zero(beta + gamma)) {
          if (!simple_height_zero(sc, le->root) || !simple_height_zero(sc, re->root)) continue;
          clause = "lemma-1";
        } else {
          clause = "lemma-3";
        }
      } else if (le && rp) {
        clause = "lemma-2";
      } else if (lo && rp) {
        clause = "lemma-4";
      } else if (le && ro) {
        clause = "lemma-5";
      } else if (lo && ro) {
        clause = "lemma-6";
      } else {
        continue;
      }
      VerifyRecord r{"lemma-degree", clause, pair_params(z, L, R)};
      const auto start = Clock::now();
      try {
        const auto comm = U.supercommutator(z.evaluate(L), z.evaluate(R));
        const int bound = degree(L) + degree(R);
        r.lhs_terms = comm.terms().size();
        r.max_degree = degree_or_zero(comm);
        if (!degree_below(comm, bound)) {
          r.passed = false;
          r.detail = "commutator has degree " + std::to_string(comm.degree()) + ", bound " + std::to_string(bound);
        }
        if (clause == "lemma-6") {
          ZCombination sum;
          accumulate(sum, IntegralMonomial{L, R}, 1);
          accumulate(sum, IntegralMonomial{R, L}, 1);
          const auto basis = z.rewrite_to_basis(sum);
          r.rhs_terms = basis.size();
          if (z.evaluate(basis) != comm) {
            r.passed = false;
            r.detail = "ℤ-combination over ℬ does not reproduce the commutator";
          }
        }
      } catch (const std::exception& e) {
        r = failure(std::move(r), e);
      }
      r.elapsed = seconds_since(start);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<VerifyRecord> verify_garland(const ZForm& z, int max_psi) {
  const auto& sc = z.table();
  const auto& A = z.coefficients();
  std::vector<VerifyRecord> out;
  for (LieIndex xa = 0; xa < sc.size(); ++xa) {
    if (!simple_height_zero(sc, xa) || !is_positive_root(sc.generator(xa))) continue;
    const auto xm = sc.root_vector(-sc.generator(xa).weight, 1);
    if (!xm) continue;
    // x_α⊗A last, so U·(x_α⊗A) is spanned by the words containing it
    std::vector<MapGenerator> alphabet;
    for (LieIndex u = 0; u < sc.size(); ++u) {
      if (u == xa) continue;
      for (ABasis b = 0; b < A.size(); ++b) alphabet.push_back({u, b});
    }
    for (ABasis b = 0; b < A.size(); ++b) alphabet.push_back({xa, b});
    const EnvelopingAlgebra V(sc, A, alphabet);
    const auto h = z.coroot(xa);
    for (const auto& psi : multisets_up_to(A.size(), max_psi)) {
      VerifyRecord r{"garland", "garland", {{"alpha", weight_string(sc.generator(xa).weight)}, {"psi", to_string(psi, A)}}};
      auto lhs = V.divided_power(xa, A.unit(), psi.size());
      for (const auto& [b, k] : psi.counts()) lhs = V.multiply(lhs, V.divided_power(*xm, b, k));
      EnvelopingElement reduced;
      for (const auto& [w, c] : lhs.terms()) {
        const bool in_ideal = std::any_of(w.begin(), w.end(), [&](Letter l) { return V.map_generator(l).lie == xa; });
        if (!in_ideal) reduced.add_term(w, c);
      }
      auto expect = V.p(h, psi);
      if (psi.size() % 2 == 1) expect *= Rational(-1);
      r.lhs_terms = reduced.terms().size();
      r.rhs_terms = expect.terms().size();
      r.max_degree = degree_or_zero(lhs);
      r.passed = reduced == expect;
      if (!r.passed) r.detail = V.str(reduced) + " ≠ " + V.str(expect);
      out.push_back(std::move(r));
    }
  }
  return out;
}

VerifyRecord verify_independence(const ZForm& z, const std::vector<IntegralMonomial>& basis_elements) {
  VerifyRecord r{"basis", "independence", {{"elements", basis_elements.size()}}};
  const auto start = Clock::now();
  std::vector<EnvelopingElement> columns;
  std::map<Word, Eigen::Index> rows;
  for (const auto& m : basis_elements) {
    if (!z.is_basis_element(m)) {
      r.passed = false;
      r.detail = z.str(m) + " is not in ℬ";
      return r;
    }
    columns.push_back(z.evaluate(m));
    for (const auto& [w, c] : columns.back().terms()) rows.emplace(w, 0);
  }
  Eigen::Index n = 0;
  for (auto& [w, idx] : rows) idx = n++;
  QMatrix m = QMatrix::Zero(n, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [w, q] : columns[c].terms()) m(rows.at(w), static_cast<Eigen::Index>(c)) = q;
  }
  const auto rank = linalg::rank(m);
  r.passed = rank == static_cast<Eigen::Index>(columns.size());
  r.detail = "rank " + std::to_string(rank) + " of " + std::to_string(columns.size());
  r.elapsed = seconds_since(start);
  return r;
}

VerifyRecord verify_rewrite(const ZForm& z, const IntegralMonomial& m, std::string group) {
  VerifyRecord r{std::move(group), "rewrite", {{"monomial", z.str(m)}, {"order", z.order().name()}}};
  const auto start = Clock::now();
  try {
    const auto basis = z.rewrite_to_basis(m);
    r.rhs_terms = basis.size();
    r.max_degree = degree(m);
    for (const auto& [b, c] : basis) {
      if (!z.is_basis_element(b)) {
        r.passed = false;
        r.detail = z.str(b) + " is not in ℬ";
      }
    }
    const auto lhs = z.evaluate(m);
    r.lhs_terms = lhs.terms().size();
    if (z.evaluate(basis) != lhs) {
      r.passed = false;
      r.detail = "oracle forms differ for " + z.str(basis);
    }
  } catch (const std::exception& e) {
    r = failure(std::move(r), e);
  }
  r.elapsed = seconds_since(start);
  return r;
}

IntegralMonomial random_monomial(const StructureConstants& sc, const MonoidAlgebra& A, std::mt19937_64& rng,
                                 int max_degree, const GeneratorFilter& keep) {
  std::uniform_int_distribution<int> total(1, max_degree);
  std::uniform_int_distribution<LieIndex> lie(0, sc.size() - 1);
  std::uniform_int_distribution<ABasis> basis(0, A.size() - 1);
  const int target = total(rng);
  IntegralMonomial m;
  int used = 0;
  for (int attempts = 0; used < target && attempts < 1000; ++attempts) {
    const int left = target - used;
    const LieIndex u = lie(rng);
    const auto& g = sc.generator(u);
    IntegralGenerator f;
    if (g.is_cartan) {
      const int size = std::uniform_int_distribution<int>(1, std::min(2, left))(rng);
      AMultiset chi;
      for (int i = 0; i < size; ++i) chi.add(basis(rng));
      f = CartanP{g.cartan_index, chi};
    } else if (g.is_odd()) {
      f = OddGenerator{u, basis(rng)};
    } else {
      f = EvenDivided{u, basis(rng), std::uniform_int_distribution<int>(1, std::min(3, left))(rng)};
    }
    if (keep && !keep(f)) continue;
    used += degree(f);
    m.push_back(std::move(f));
  }
  return m;
}

namespace {

// Class of each factor must be nondecreasing along the word.
bool ordered_by(const IntegralMonomial& m, const std::function<int(const IntegralGenerator&)>& cls) {
  for (std::size_t i = 1; i < m.size(); ++i) {
    if (cls(m[i - 1]) > cls(m[i])) return false;
  }
  return true;
}

VerifyRecord shaped_rewrite(const ZForm& z, const IntegralMonomial& m, std::string group, std::string name,
                            const std::function<std::string(const IntegralMonomial&)>& shape_error) {
  auto r = verify_rewrite(z, m, std::move(group));
  r.identity = std::move(name);
  if (!r.passed) return r;
  for (const auto& [b, c] : z.rewrite_to_basis(m)) {
    if (auto why = shape_error(b); !why.empty()) {
      r.passed = false;
      r.detail = z.str(b) + ": " + why;
      break;
    }
  }
  return r;
}

}  // namespace

VerifyRecord triangular_decompose(const ZForm& triangular, const IntegralMonomial& m) {
  const auto& sc = triangular.table();
  return shaped_rewrite(triangular, m, "triangular", "decompose", [&](const IntegralMonomial& b) {
    return ordered_by(b, [&](const IntegralGenerator& g) { return triangular_class(sc, g); })
               ? std::string()
               : std::string("not of the shape U⁻U⁰U⁺");
  });
}

VerifyRecord verify_triangular_closure(const ZForm& triangular, const IntegralMonomial& m, int side) {
  const auto& sc = triangular.table();
  const std::string name = side < 0 ? "closure-minus" : side > 0 ? "closure-plus" : "closure-zero";
  for (const auto& g : m) {
    if (triangular_class(sc, g) != side) throw std::invalid_argument("factor outside the requested side");
  }
  return shaped_rewrite(triangular, m, "triangular", name, [&](const IntegralMonomial& b) {
    for (const auto& g : b) {
      if (triangular_class(sc, g) != side) return std::string("leaves the subalgebra");
    }
    return std::string();
  });
}

bool in_factorization_domain(const StructureConstants& sc, const IntegralGenerator& g, int clause) {
  if (clause == 1 || std::holds_alternative<CartanP>(g)) return true;
  const auto& lg = sc.generator(lie_index(g));
  if (clause == 2) return lg.height >= 0;
  return !lg.is_odd();
}

VerifyRecord factorization_check(const ZForm& z, const IntegralMonomial& m, int clause) {
  const auto& sc = z.table();
  for (const auto& g : m) {
    if (!in_factorization_domain(sc, g, clause)) throw std::invalid_argument("factor outside the clause's subalgebra");
  }
  auto height = [&](const IntegralGenerator& g) {
    return std::holds_alternative<CartanP>(g) ? 0 : sc.generator(lie_index(g)).height;
  };
  auto odd = [&](const IntegralGenerator& g) { return std::holds_alternative<OddGenerator>(g); };
  return shaped_rewrite(z, m, "factorization", "clause-" + std::to_string(clause), [&](const IntegralMonomial& b) {
    for (const auto& g : b) {
      if (!in_factorization_domain(sc, g, clause)) return std::string("leaves the subalgebra");
    }
    if (clause == 3) {
      return ordered_by(b, [&](const IntegralGenerator& g) { return height(g) == 0 ? 0 : 1; })
                 ? std::string()
                 : std::string("positive factors precede degree-0 factors");
    }
    if (!ordered_by(b, [&](const IntegralGenerator& g) { return odd(g) ? 1 : 0; })) {
      return std::string("odd factors precede even factors");
    }
    std::set<std::pair<LieIndex, ABasis>> seen;
    for (const auto& g : b) {
      if (const auto* o = std::get_if<OddGenerator>(&g); o && !seen.emplace(o->root, o->c).second) {
        return std::string("repeated odd factor");
      }
    }
    return std::string();
  });
}

StructureConstants corrupt(const StructureConstants& sc, const std::string& kind) {
  StructureConstants out = sc;
  for (LieIndex u = 0; u < sc.size(); ++u) {
    for (LieIndex v = 0; v < sc.size(); ++v) {
      const auto& gu = sc.generator(u);
      const auto& gv = sc.generator(v);
      if (gu.is_cartan || gv.is_cartan) continue;
      auto value = sc.bracket(u, v);
      if (value.empty()) continue;
      const bool pair = is_zero(gu.weight + gv.weight);
      if (kind == "sign" && pair && simple_height_zero(sc, u) && simple_height_zero(sc, v)) {
        for (auto& [w, c] : value) c = -c;
        out.set_bracket(u, v, value);
        return out;
      }
      if (kind == "constant" && !pair) {
        value.front().second = -value.front().second;
        out.set_bracket(u, v, value);
        return out;
      }
    }
  }
  throw std::invalid_argument("nothing to corrupt for kind '" + kind + "'");
}

}  // namespace cartanz
