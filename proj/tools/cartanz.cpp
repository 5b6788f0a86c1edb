// cartanz: batch driver for root data, Chevalley tables, verification
// campaigns and rewriting onto the integral basis. Output is JSON lines.
//
// Exit status: 0 success, 1 a failed check or an integrality violation,
// 2 invalid input (spec, flags, config or expression).

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <set>

#include "cartanz/expression.hpp"
#include "cartanz/verify.hpp"

using namespace cartanz;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInvalid = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kGroups{"identities", "p-suite",    "lemma-degree", "garland",
                                       "theorem",    "basis",      "triangular",   "factorization"};

struct RunConfig {
  std::string family = "W";
  int n = 2;
  bool euler = false;
  std::string a_model = "trunc-poly-4";
  std::string order = "default";
  int bound_r = 2;
  int bound_chi = 2;
  std::uint64_t seed = 1;
  int samples = 100;
  int max_degree = 4;
  std::string only;
  std::string out;
  std::string counterexamples;
  std::string self_test;
  bool timing = false;
  std::string expression;

  AlgebraSpec spec() const {
    AlgebraSpec s{parse_family(family), n, euler};
    s.validate();
    return s;
  }
};

// Values from --config fill only the options absent from the command line.
void apply_config(const std::string& path, RunConfig& cfg, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("config " + path + ": expected a JSON object");
  auto given = [&](const std::string& flag) {
    for (const CLI::App* a = &app; a; a = a->get_parent()) {
      if (const auto* o = a->get_option_no_throw("--" + flag); o && o->count() > 0) return true;
    }
    return false;
  };
  auto take = [&](const std::string& key, auto& field) {
    if (!j.contains(key) || given(key)) return;
    try {
      j.at(key).get_to(field);
    } catch (const json::exception& e) {
      throw UsageError("config key '" + key + "': " + e.what());
    }
  };
  const std::set<std::string> known{"family",  "n",     "euler",   "a-model", "order",     "bound-r",
                                    "bound-chi", "seed", "samples", "max-degree", "only", "out",
                                    "counterexamples", "timing"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw UsageError("config " + path + ": unknown key '" + key + "'");
  }
  take("family", cfg.family);
  take("n", cfg.n);
  take("euler", cfg.euler);
  take("a-model", cfg.a_model);
  take("order", cfg.order);
  take("bound-r", cfg.bound_r);
  take("bound-chi", cfg.bound_chi);
  take("seed", cfg.seed);
  take("samples", cfg.samples);
  take("max-degree", cfg.max_degree);
  take("only", cfg.only);
  take("out", cfg.out);
  take("counterexamples", cfg.counterexamples);
  take("timing", cfg.timing);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw UsageError("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void line(const json& j) { stream() << j.dump() << "\n"; }

 private:
  std::ofstream file_;
};

struct Setup {
  AlgebraSpec spec;
  StructureConstants sc;
  StructureConstants table;
  MonoidAlgebra A;
  std::shared_ptr<const EnvelopingAlgebra> oracle;

  ZForm engine(const std::string& order, std::uint64_t seed) const {
    return ZForm(oracle, table, FactorOrder::named(order, sc, A, seed));
  }
};

Setup setup(const RunConfig& cfg) {
  const auto spec = cfg.spec();
  auto A = a_model(cfg.a_model);
  auto sc = structure_constants(construct_chevalley(root_decomposition(spec)));
  auto table = cfg.self_test.empty() ? sc : corrupt(sc, cfg.self_test);
  auto oracle = std::make_shared<const EnvelopingAlgebra>(sc, A);
  return {spec, std::move(sc), std::move(table), std::move(A), std::move(oracle)};
}

json header(const RunConfig& cfg, const Setup& s) {
  return {{"algebra", s.spec.name()}, {"a_model", s.A.name()}, {"order", cfg.order}, {"seed", cfg.seed}};
}

int cmd_roots(const RunConfig& cfg) {
  const auto rs = root_decomposition(cfg.spec());
  Output out(cfg.out);
  out.line({{"algebra", cfg.spec().name()}, {"roots", root_table(rs)}});
  return kOk;
}

int cmd_chevalley(const RunConfig& cfg) {
  const auto spec = cfg.spec();
  const auto cb = construct_chevalley(root_decomposition(spec));
  const auto report = verify_axioms(cb);
  Output out(cfg.out);
  out.line({{"algebra", spec.name()},
            {"generators", structure_table(structure_constants(cb))},
            {"axioms", report},
            {"log", cb.log()}});
  return report.passed() ? kOk : kFail;
}

struct Selection {
  std::set<std::string> groups;
  std::set<Identity> identities;
};

Selection select(const std::string& only) {
  Selection s;
  if (only.empty()) {
    s.groups.insert(kGroups.begin(), kGroups.end());
    return s;
  }
  std::stringstream in(only);
  for (std::string token; std::getline(in, token, ',');) {
    if (std::find(kGroups.begin(), kGroups.end(), token) != kGroups.end()) {
      s.groups.insert(token);
    } else if (auto id = parse_identity(token)) {
      s.groups.insert("identities");
      s.identities.insert(*id);
    } else {
      throw UsageError("--only: unknown group or identity '" + token + "'");
    }
  }
  return s;
}

using Records = std::vector<VerifyRecord>;

Records run_group(const std::string& group, const RunConfig& cfg, const Setup& s, const ZForm& z,
                  const Selection& sel) {
  const Bounds bounds{cfg.bound_r, cfg.bound_chi};
  const auto offset = static_cast<std::uint64_t>(std::find(kGroups.begin(), kGroups.end(), group) - kGroups.begin());
  std::mt19937_64 rng(cfg.seed * 1000003 + offset);
  auto sample = [&](const GeneratorFilter& keep = {}) { return random_monomial(s.sc, s.A, rng, cfg.max_degree, keep); };
  Records out;
  if (group == "identities") {
    const IdentityFilter keep = [&](Identity id) { return sel.identities.empty() || sel.identities.count(id) != 0; };
    out = verify_identities(z, bounds, keep);
    const auto three = verify_identities_at_three(z, keep);
    out.insert(out.end(), three.begin(), three.end());
  } else if (group == "p-suite") {
    out = verify_p_suite(z, cfg.bound_chi);
  } else if (group == "lemma-degree") {
    out = verify_degree_drop(z, bounds);
  } else if (group == "garland") {
    out = verify_garland(z, cfg.bound_chi);
  } else if (group == "theorem") {
    for (int i = 0; i < cfg.samples; ++i) out.push_back(verify_rewrite(z, sample()));
  } else if (group == "basis") {
    std::set<IntegralMonomial> support;
    for (int i = 0; i < cfg.samples && support.size() < 300; ++i) {
      try {
        for (const auto& [b, c] : z.rewrite_to_basis(sample())) support.insert(b);
      } catch (const IntegralityViolation&) {
        // reported by the theorem group
      } catch (const IdentityError&) {
      }
    }
    out.push_back(verify_independence(z, {support.begin(), support.end()}));
  } else if (group == "triangular") {
    const auto t = s.engine("triangular", cfg.seed);
    for (int i = 0; i < cfg.samples; ++i) out.push_back(triangular_decompose(t, sample()));
    for (int side : {-1, 0, 1}) {
      const GeneratorFilter keep = [&](const IntegralGenerator& g) { return triangular_class(s.sc, g) == side; };
      for (int i = 0; i < std::max(1, cfg.samples / 4); ++i) {
        out.push_back(verify_triangular_closure(t, sample(keep), side));
      }
    }
  } else if (group == "factorization") {
    const auto even_first = s.engine("even-first", cfg.seed);
    const auto zero_first = s.engine("zero-first", cfg.seed);
    for (int clause : {1, 2, 3}) {
      const GeneratorFilter keep = [&](const IntegralGenerator& g) { return in_factorization_domain(s.sc, g, clause); };
      for (int i = 0; i < cfg.samples; ++i) {
        out.push_back(factorization_check(clause == 1 ? even_first : zero_first, sample(keep), clause));
      }
    }
  }
  if (!cfg.timing) {
    for (auto& r : out) r.elapsed = 0;
  }
  return out;
}

int cmd_verify(const RunConfig& cfg) {
  if (cfg.bound_r < 1 || cfg.bound_chi < 1 || cfg.samples < 0 || cfg.max_degree < 1) {
    throw UsageError("bounds, --samples and --max-degree must be positive");
  }
  const auto sel = select(cfg.only);
  const auto s = setup(cfg);
  const auto z = s.engine(cfg.order, cfg.seed);

  std::vector<std::pair<std::string, std::future<Records>>> tasks;
  for (const auto& group : kGroups) {
    if (!sel.groups.count(group)) continue;
    tasks.emplace_back(group, std::async(std::launch::async, [&, group] { return run_group(group, cfg, s, z, sel); }));
  }

  Output out(cfg.out);
  auto head = header(cfg, s);
  if (!cfg.self_test.empty()) head["self_test"] = cfg.self_test;
  out.line({{"run", head}});
  std::vector<json> failures;
  std::size_t passed = 0;
  json groups = json::object();
  for (auto& [group, task] : tasks) {
    const auto records = task.get();
    const auto t = tally(records);
    passed += t.passed;
    groups[group] = {{"passed", t.passed}, {"failed", t.failed}};
    for (const auto& r : records) {
      out.line(r);
      if (!r.passed) failures.emplace_back(r);
    }
  }
  out.line({{"summary", {{"passed", passed}, {"failed", failures.size()}, {"groups", groups},
                         {"status", failures.empty() ? "PASS" : "FAIL"}}}});
  if (failures.empty()) return kOk;

  const std::string path = !cfg.counterexamples.empty() ? cfg.counterexamples
                           : !cfg.out.empty()           ? cfg.out + ".counterexamples.jsonl"
                                                        : "cartanz-counterexamples.jsonl";
  std::ofstream cx(path);
  for (const auto& f : failures) cx << f.dump() << "\n";
  std::cerr << failures.size() << " failed checks; counterexamples in " << path << "\n";
  return kFail;
}

json terms_json(const ZForm& z, const ZCombination& c) {
  json terms = json::array();
  for (const auto& [m, k] : c) terms.push_back({{"coefficient", to_string(k)}, {"monomial", z.str(m)}});
  return terms;
}

int cmd_rewrite(const RunConfig& cfg, bool triangular) {
  const auto s = setup(cfg);
  const auto z = s.engine(triangular ? "triangular" : cfg.order, cfg.seed);
  const auto m = parse_monomial(cfg.expression, s.sc, s.A, simple_roots(s.sc));
  auto head = header(cfg, s);
  head["order"] = z.order().name();
  head["input"] = z.str(m);
  Output out(cfg.out);
  try {
    const auto result = z.rewrite_to_basis(m);
    const bool equal = z.evaluate(result) == z.evaluate(m);
    head["terms"] = terms_json(z, result);
    head["oracle_equal"] = equal;
    bool ok = equal;
    if (triangular) {
      const auto check = triangular_decompose(z, m);
      head["triangular_shape"] = check.passed;
      if (!check.passed) head["detail"] = check.detail;
      ok = ok && check.passed;
    }
    out.line(head);
    return ok ? kOk : kFail;
  } catch (const IntegralityViolation& e) {
    head["error"] = "integrality";
    head["detail"] = e.what();
    head["trace"] = e.trace;
    out.line(head);
    return kFail;
  } catch (const IdentityError& e) {
    head["error"] = "straightening";
    head["detail"] = e.what();
    out.line(head);
    return kFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral forms of Cartan-type Lie superalgebras: construction, verification, rewriting"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string config_path;

  app.add_option("--family", cfg.family, "W, S, S_tilde or H");
  app.add_option("--n", cfg.n, "number of odd generators");
  app.add_flag("--euler", cfg.euler, "adjoin the Euler derivation");
  app.add_option("--a-model", cfg.a_model, "trunc-poly-<d> or cyclic-<d>");
  app.add_option("--order", cfg.order, "factor order, e.g. default, triangular, random:desc");
  app.add_option("--seed", cfg.seed, "seed for sampling and random orders");
  app.add_option("--out", cfg.out, "write JSON lines here instead of stdout");
  app.add_option("--config", config_path, "JSON file of defaults; command-line flags take precedence");

  auto* roots = app.add_subcommand("roots", "root table");
  auto* chevalley = app.add_subcommand("chevalley", "Chevalley basis, bracket table and axiom checks");
  auto* verify = app.add_subcommand("verify", "verification campaign");
  auto* rewrite = app.add_subcommand("rewrite", "rewrite a monomial onto the basis");
  auto* decompose = app.add_subcommand("decompose", "rewrite under the triangular order");

  verify->add_option("--bound-r", cfg.bound_r, "largest divided-power exponent in grids");
  verify->add_option("--bound-chi", cfg.bound_chi, "largest |chi| in grids");
  verify->add_option("--only", cfg.only, "comma-separated groups or identity names");
  verify->add_option("--samples", cfg.samples, "random monomials per sampled check");
  verify->add_option("--max-degree", cfg.max_degree, "largest total degree of sampled monomials");
  verify->add_option("--counterexamples", cfg.counterexamples, "where failing records go");
  verify->add_option("--self-test", cfg.self_test, "corrupt the table first: constant or sign")
      ->check(CLI::IsMember({"constant", "sign"}));
  verify->add_flag("--timing", cfg.timing, "record elapsed times");
  rewrite->add_option("expression", cfg.expression, "monomial")->required();
  decompose->add_option("expression", cfg.expression, "monomial")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (!config_path.empty()) {
      const CLI::App* active = app.get_subcommands().front();
      apply_config(config_path, cfg, *active);
    }
    if (roots->parsed()) return cmd_roots(cfg);
    if (chevalley->parsed()) return cmd_chevalley(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (rewrite->parsed()) return cmd_rewrite(cfg, false);
    if (decompose->parsed()) return cmd_rewrite(cfg, true);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kInvalid;
}
