// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <iostream>
#include <set>
#include <sstream>

#include "cartanz/verify.hpp"

using namespace cartanz;

namespace {

constexpr std::size_t kJacobiTriples = 1000;
constexpr double kConstructionSeconds = 60.0;
constexpr double kIdentitySeconds = 600.0;
constexpr int kPMaxChi = 3;
constexpr Bounds kGrid{2, 2};
constexpr int kTheoremSamples = 500;
constexpr int kTheoremDegree = 5;
constexpr int kDecompositionSamples = 200;
constexpr int kClosureSamples = 50;
constexpr std::uint64_t kSeed = 20240601;

const std::vector<AlgebraSpec> kFive{{Family::W, 2, false},
                                     {Family::W, 3, false},
                                     {Family::S, 3, true},
                                     {Family::STilde, 4, false},
                                     {Family::H, 4, true}};
const std::vector<AlgebraSpec> kGridAlgebras{{Family::W, 2, false}, {Family::W, 3, false}};
const std::vector<std::string> kModels{"trunc-poly-4", "cyclic-4"};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Context {
  StructureConstants sc;
  MonoidAlgebra A;
  std::shared_ptr<const EnvelopingAlgebra> oracle;
};

Context context(const AlgebraSpec& spec, const std::string& model) {
  auto sc = structure_constants(construct_chevalley(root_decomposition(spec)));
  auto A = a_model(model);
  auto oracle = std::make_shared<const EnvelopingAlgebra>(sc, A);
  return {std::move(sc), std::move(A), std::move(oracle)};
}

ZForm engine(const Context& c, const std::string& order, std::uint64_t seed = kSeed) {
  return ZForm(c.oracle, FactorOrder::named(order, c.sc, c.A, seed));
}

std::string label(const AlgebraSpec& spec, const std::string& model) { return spec.name() + "⊗" + model; }

std::string first_failure(const std::vector<VerifyRecord>& records) {
  const auto t = tally(records);
  if (!t.first_failure) return "";
  std::string out = t.first_failure->identity + " " + t.first_failure->params.dump();
  if (!t.first_failure->detail.empty()) out += ": " + t.first_failure->detail;
  return out;
}

int failures = 0;

void verdict(int n, bool passed, const std::string& summary, const std::vector<std::string>& notes) {
  std::cout << "criterion " << n << ": " << (passed ? "PASS" : "FAIL") << "  " << summary << "\n";
  for (const auto& note : notes) std::cout << "    " << note << "\n";
  std::cout.flush();
  if (!passed) ++failures;
}

void criterion_1() {
  const auto start = Clock::now();
  bool ok = true;
  std::vector<std::string> notes;
  for (const auto& spec : kFive) {
    const auto report = verify_algebra(build_algebra(spec), kJacobiTriples, kSeed);
    for (const auto& c : report.checks) {
      if (c.passed) continue;
      ok = false;
      notes.push_back(spec.name() + " " + c.name + ": " + c.detail);
    }
  }
  const double t = since(start);
  if (t >= kConstructionSeconds) ok = false;
  std::ostringstream s;
  s << "closure, gradings and super Jacobi on 5 algebras (" << kJacobiTriples << " triples each), " << t << " s";
  verdict(1, ok, s.str(), notes);
}

void criterion_2() {
  bool ok = true;
  std::vector<std::string> notes;
  for (const auto& spec : kFive) {
    const auto report = verify_root_properties(root_decomposition(spec));
    for (const auto& c : report.checks) {
      if (c.passed) continue;
      ok = false;
      notes.push_back(spec.name() + " " + c.name + ": " + c.detail);
    }
  }
  verdict(2, ok, "root properties on 5 algebras", notes);
}

void criterion_3() {
  bool ok = true;
  std::vector<std::string> notes;
  const std::set<Family> documented{Family::STilde, Family::H};
  for (const auto& spec : kFive) {
    const auto cb = construct_chevalley(root_decomposition(spec));
    const auto report = verify_axioms(cb);
    for (const auto& c : report.checks) {
      if (c.passed) continue;
      const bool allowed = documented.count(spec.family) && !c.detail.empty();
      if (!allowed) ok = false;
      notes.push_back(spec.name() + " " + c.name + (allowed ? " (documented counterexample): " : ": ") + c.detail);
    }
    const auto sc = structure_constants(cb);
    for (LieIndex u = 0; u < sc.size(); ++u) {
      for (LieIndex v = 0; v < sc.size(); ++v) {
        for (const auto& [w, c] : sc.bracket(u, v)) {
          if (sc.generator(w).is_cartan || abs(c) <= 2) continue;
          ok = false;
          notes.push_back(spec.name() + " constant " + to_string(c) + " in [" + sc.generator(u).name + ", " +
                          sc.generator(v).name + "]");
        }
      }
    }
  }
  verdict(3, ok, "Chevalley axioms (1)-(7) and constants in {0,±1,±2}", notes);
}

void criterion_4() {
  const auto c = context({Family::W, 3, false}, "trunc-poly-4");
  const auto z = engine(c, "default");
  const auto records = verify_p_suite(z, kPMaxChi);
  const auto t = tally(records);
  std::map<std::string, std::size_t> per_clause;
  for (const auto& r : records) ++per_clause[r.identity];
  std::ostringstream s;
  s << t.passed << "/" << records.size() << " p-suite checks on W(3)⊗trunc-poly-4, |χ|,|φ| ≤ " << kPMaxChi;
  std::vector<std::string> notes;
  for (const auto& [k, n] : per_clause) notes.push_back(k + ": " + std::to_string(n));
  if (!t.ok()) notes.push_back("first failure: " + first_failure(records));
  verdict(4, t.ok(), s.str(), notes);
}

void criterion_5() {
  const auto start = Clock::now();
  bool ok = true;
  std::vector<std::string> notes;
  std::map<Identity, std::size_t> grid_passes;
  std::map<Identity, std::string> at_three;
  std::size_t total = 0;
  auto note_three = [&](const std::vector<VerifyRecord>& records, const std::string& where) {
    for (const auto& r : records) {
      const auto id = *parse_identity(r.identity);
      if (r.passed && !at_three.count(id)) at_three[id] = where + " " + r.params.dump();
      if (!r.passed) ok = false;
      if (!r.passed) notes.push_back("exponent-3 instance failed on " + where + ": " + r.params.dump() + " " + r.detail);
    }
  };
  for (const auto& spec : kGridAlgebras) {
    for (const auto& model : kModels) {
      const auto c = context(spec, model);
      const auto z = engine(c, "default");
      const auto records = verify_identities(z, kGrid);
      total += records.size();
      for (const auto& r : records) {
        if (r.passed) ++grid_passes[*parse_identity(r.identity)];
      }
      const auto t = tally(records);
      if (!t.ok()) {
        ok = false;
        notes.push_back(label(spec, model) + ": " + std::to_string(t.failed) + " failures, first " + first_failure(records));
      }
      note_three(verify_identities_at_three(z), label(spec, model));
    }
  }
  // identities never instantiated on W(2), W(3): every grid instance on the
  // first wider algebra where they occur
  std::map<Identity, std::string> elsewhere;
  const std::vector<std::pair<AlgebraSpec, std::string>> wider{{{Family::W, 4, false}, "trunc-poly-3"},
                                                               {{Family::H, 5, true}, "trunc-poly-3"}};
  for (const auto& [spec, model] : wider) {
    const auto c = context(spec, model);
    const auto z = engine(c, "default");
    auto missing = [&](Identity id) { return grid_passes[id] == 0 && !elsewhere.count(id); };
    const auto records = verify_identities(z, kGrid, missing);
    std::map<Identity, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& r : records) {
      auto& [pass, fail] = counts[*parse_identity(r.identity)];
      (r.passed ? pass : fail)++;
    }
    for (const auto& [id, pf] : counts) {
      elsewhere[id] = label(spec, model);
      if (pf.second) ok = false;
      notes.push_back(identity_name(id) + " on " + label(spec, model) + ": " + std::to_string(pf.first) + " pass, " +
                      std::to_string(pf.second) + " fail");
    }
    if (!tally(records).ok()) notes.push_back("first failure: " + first_failure(records));
    note_three(verify_identities_at_three(z, [&](Identity id) { return elsewhere.count(id) && elsewhere[id] == label(spec, model); }),
               label(spec, model));
  }
  for (auto id : all_identities()) {
    const bool odd_pair = id == Identity::OddSquare || id == Identity::OddDual || id == Identity::OddOdd;
    const bool instantiated = grid_passes[id] > 0 || elsewhere.count(id);
    if (!instantiated) {
      ok = false;
      notes.push_back(identity_name(id) + ": no verified instance");
    }
    if (!odd_pair && !at_three.count(id)) {
      ok = false;
      notes.push_back(identity_name(id) + ": no verified instance with an exponent or |χ| of 3");
    }
  }
  const double t = since(start);
  if (t >= kIdentitySeconds) ok = false;
  std::ostringstream s;
  s << total << " grid instances on W(2), W(3) × {trunc-poly-4, cyclic-4}, r,s ≤ 2, |χ| ≤ 2; " << t << " s";
  notes.push_back("odd-square, odd-dual, odd-odd have only degree-1 factors; the exponent-3 clause does not apply");
  verdict(5, ok, s.str(), notes);
}

std::vector<std::pair<AlgebraSpec, std::string>> sweep_algebras() {
  std::vector<std::pair<AlgebraSpec, std::string>> out;
  for (const auto& spec : kFive) out.emplace_back(spec, "trunc-poly-4");
  for (const auto& spec : kGridAlgebras) out.emplace_back(spec, "cyclic-4");
  return out;
}

void criterion_6() {
  bool ok = true;
  std::vector<std::string> notes;
  std::size_t total = 0;
  for (const auto& [spec, model] : sweep_algebras()) {
    const auto c = context(spec, model);
    const auto first = engine(c, "default");
    const auto second = engine(c, "random:desc");
    std::mt19937_64 rng(kSeed);
    std::vector<VerifyRecord> records;
    std::set<IntegralMonomial> support;
    for (int i = 0; i < kTheoremSamples; ++i) {
      const auto m = random_monomial(c.sc, c.A, rng, kTheoremDegree);
      for (const ZForm* z : {&first, &second}) {
        records.push_back(verify_rewrite(*z, m));
        if (z == &first && records.back().passed) {
          for (const auto& [b, coeff] : first.rewrite_to_basis(m)) support.insert(b);
        }
      }
    }
    std::vector<IntegralMonomial> sample(support.begin(), support.end());
    if (sample.size() > 300) sample.resize(300);
    records.push_back(verify_independence(first, sample));
    total += records.size();
    const auto t = tally(records);
    if (!t.ok()) {
      ok = false;
      notes.push_back(label(spec, model) + ": " + std::to_string(t.failed) + " failures, first " + first_failure(records));
    }
  }
  std::ostringstream s;
  s << total << " checks: " << kTheoremSamples << " monomials of degree ≤ " << kTheoremDegree
    << " per algebra under orders default and random:desc, plus ℬ independence";
  verdict(6, ok, s.str(), notes);
}

void criterion_7() {
  bool ok = true;
  std::vector<std::string> notes;
  std::map<std::string, std::size_t> per_clause;
  for (const auto& spec : kGridAlgebras) {
    for (const auto& model : kModels) {
      const auto c = context(spec, model);
      const auto records = verify_degree_drop(engine(c, "default"), kGrid);
      for (const auto& r : records) ++per_clause[r.identity];
      const auto t = tally(records);
      if (!t.ok()) {
        ok = false;
        notes.push_back(label(spec, model) + ": " + first_failure(records));
      }
    }
  }
  std::string summary = "degree drops on the criterion-5 grids:";
  for (const auto& [k, n] : per_clause) summary += " " + k + "×" + std::to_string(n);
  if (per_clause.size() != 6) {
    ok = false;
    notes.push_back("not every clause was exercised");
  }
  verdict(7, ok, summary, notes);
}

void criterion_8() {
  bool ok = true;
  std::vector<std::string> notes;
  std::size_t total = 0;
  for (const auto& spec : kFive) {
    const auto c = context(spec, "trunc-poly-4");
    const auto triangular = engine(c, "triangular");
    const auto even_first = engine(c, "even-first");
    const auto zero_first = engine(c, "zero-first");
    std::mt19937_64 rng(kSeed + 8);
    std::vector<VerifyRecord> records;
    for (int i = 0; i < kDecompositionSamples; ++i) {
      records.push_back(triangular_decompose(triangular, random_monomial(c.sc, c.A, rng, kTheoremDegree)));
      for (int clause : {1, 2, 3}) {
        const auto& z = clause == 1 ? even_first : zero_first;
        const auto keep = [&](const IntegralGenerator& g) { return in_factorization_domain(c.sc, g, clause); };
        records.push_back(factorization_check(z, random_monomial(c.sc, c.A, rng, kTheoremDegree, keep), clause));
      }
    }
    for (int side : {-1, 0, 1}) {
      const auto keep = [&](const IntegralGenerator& g) { return triangular_class(c.sc, g) == side; };
      for (int i = 0; i < kClosureSamples; ++i) {
        records.push_back(verify_triangular_closure(triangular, random_monomial(c.sc, c.A, rng, kTheoremDegree, keep), side));
      }
    }
    total += records.size();
    const auto t = tally(records);
    if (!t.ok()) {
      ok = false;
      notes.push_back(spec.name() + ": " + std::to_string(t.failed) + " failures, first " + first_failure(records));
    }
  }
  std::ostringstream s;
  s << total << " checks: triangular shape, factorization clauses 1-3 (" << kDecompositionSamples
    << " monomials each) and ℬ±, ℬ⁰ closure on 5 algebras";
  verdict(8, ok, s.str(), notes);
}

void criterion_9() {
  bool ok = true;
  std::vector<std::string> notes;
  const auto c = context({Family::W, 2, false}, "trunc-poly-4");
  for (const std::string kind : {"constant", "sign"}) {
    const ZForm z(c.oracle, corrupt(c.sc, kind), FactorOrder::named("default", c.sc, c.A));
    auto records = verify_identities(z, kGrid);
    std::mt19937_64 rng(kSeed);
    for (int i = 0; i < kTheoremSamples; ++i) records.push_back(verify_rewrite(z, random_monomial(c.sc, c.A, rng, kTheoremDegree)));
    const auto t = tally(records);
    if (t.ok()) ok = false;
    notes.push_back(kind + " corruption: " + std::to_string(t.failed) + " failures" +
                    (t.ok() ? " (undetected)" : ", first " + first_failure(records)));
  }
  verdict(9, ok, "fault injection on W(2)⊗trunc-poly-4", notes);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL") << "\n";
  return failures == 0 ? 0 : 1;
}
