#include "cartanz/zform.hpp"

#include <numeric>
#include <random>
#include <sstream>

namespace cartanz {

int degree(const IntegralGenerator& g) {
  return std::visit(
      [](const auto& x) -> int {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EvenDivided>) return x.r;
        else if constexpr (std::is_same_v<T, CartanP>) return x.chi.size();
        else return 1;
      },
      g);
}

int degree(const IntegralMonomial& m) {
  int d = 0;
  for (const auto& g : m) d += degree(g);
  return d;
}

bool is_trivial(const IntegralGenerator& g) { return !std::holds_alternative<OddGenerator>(g) && degree(g) == 0; }

IntegralMonomial without_trivial(const IntegralMonomial& m) {
  IntegralMonomial out;
  for (const auto& g : m) {
    if (!is_trivial(g)) out.push_back(g);
  }
  return out;
}

void accumulate(ZCombination& into, const IntegralMonomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = into.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) into.erase(it);
}

Expansion product(const Expansion& a, const Expansion& b) {
  Expansion out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      IntegralMonomial f = x.factors;
      f.insert(f.end(), y.factors.begin(), y.factors.end());
      out.push_back({x.coeff * y.coeff, std::move(f)});
    }
  }
  return out;
}

ZCombination collect(const Expansion& e) {
  ZCombination z;
  for (const auto& t : e) accumulate(z, without_trivial(t.factors), t.coeff);
  return z;
}

FactorOrder::FactorOrder(std::string name, std::vector<LieIndex> lie_sequence, std::vector<ABasis> basis_sequence)
    : name_(std::move(name)), lie_rank_(lie_sequence.size(), -1), basis_rank_(basis_sequence.size(), -1) {
  for (std::size_t pos = 0; pos < lie_sequence.size(); ++pos) {
    auto& slot = lie_rank_.at(lie_sequence[pos]);
    if (slot != -1) throw std::invalid_argument("order lists a Lie index twice");
    slot = static_cast<int>(pos);
  }
  for (std::size_t pos = 0; pos < basis_sequence.size(); ++pos) {
    auto& slot = basis_rank_.at(static_cast<std::size_t>(basis_sequence[pos]));
    if (slot != -1) throw std::invalid_argument("order lists a basis element twice");
    slot = static_cast<int>(pos);
  }
}

bool is_positive_root(const LieGenerator& g) {
  if (g.is_cartan) return false;
  if (g.height != 0) return g.height > 0;
  for (int v : g.weight) {
    if (v != 0) return v > 0;
  }
  return false;
}

namespace {

// Stable partition of all Lie indices into consecutive classes.
std::vector<LieIndex> by_class(const StructureConstants& sc, const std::function<int(const LieGenerator&)>& cls) {
  std::vector<LieIndex> seq(sc.size());
  std::iota(seq.begin(), seq.end(), LieIndex{0});
  std::stable_sort(seq.begin(), seq.end(),
                   [&](LieIndex a, LieIndex b) { return cls(sc.generator(a)) < cls(sc.generator(b)); });
  return seq;
}

}  // namespace

FactorOrder FactorOrder::named(const std::string& spec, const StructureConstants& sc, const MonoidAlgebra& A,
                               std::uint64_t seed) {
  std::string name = spec;
  bool descending = false;
  if (const auto colon = spec.find(':'); colon != std::string::npos) {
    const auto suffix = spec.substr(colon + 1);
    if (suffix != "desc" && suffix != "asc") throw std::invalid_argument("unknown basis order: " + suffix);
    descending = suffix == "desc";
    name = spec.substr(0, colon);
  }
  std::vector<ABasis> basis(static_cast<std::size_t>(A.size()));
  std::iota(basis.begin(), basis.end(), 0);
  if (descending) std::reverse(basis.begin(), basis.end());

  std::vector<LieIndex> seq(sc.size());
  std::iota(seq.begin(), seq.end(), LieIndex{0});
  if (name == "default") {
  } else if (name == "reverse") {
    std::reverse(seq.begin(), seq.end());
  } else if (name == "triangular") {
    seq = by_class(sc, [](const LieGenerator& g) { return g.is_cartan ? 1 : is_positive_root(g) ? 2 : 0; });
  } else if (name == "even-first") {
    seq = by_class(sc, [](const LieGenerator& g) { return g.is_odd() ? 1 : 0; });
  } else if (name == "zero-first") {
    seq = by_class(sc, [](const LieGenerator& g) { return g.height == 0 ? 0 : g.is_odd() ? 2 : 1; });
  } else if (name == "random") {
    std::mt19937_64 rng(seed);
    for (std::size_t i = seq.size(); i > 1; --i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      std::swap(seq[i - 1], seq[pick(rng)]);
    }
  } else {
    throw std::invalid_argument("unknown order: " + name);
  }
  return FactorOrder(spec, std::move(seq), std::move(basis));
}

std::pair<int, int> FactorOrder::key(const IntegralGenerator& g) const {
  return std::visit(
      [&](const auto& x) -> std::pair<int, int> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EvenDivided>) return {lie_rank(x.root), basis_rank(x.b)};
        else if constexpr (std::is_same_v<T, CartanP>) return {lie_rank(x.i), 0};
        else return {lie_rank(x.root), basis_rank(x.c)};
      },
      g);
}

int triangular_class(const StructureConstants& sc, const IntegralGenerator& g) {
  if (std::holds_alternative<CartanP>(g)) return 0;
  const LieIndex u = std::holds_alternative<EvenDivided>(g) ? std::get<EvenDivided>(g).root : std::get<OddGenerator>(g).root;
  return is_positive_root(sc.generator(u)) ? 1 : -1;
}

const std::vector<Identity>& all_identities() {
  static const std::vector<Identity> ids{Identity::PCommute,   Identity::EvenMerge,    Identity::RootPair,
                                         Identity::EvenTimesP, Identity::PTimesEven,   Identity::EvenSum,
                                         Identity::EvenString, Identity::EvenRank2,    Identity::OddTimesP,
                                         Identity::PTimesOdd,  Identity::OddSquare,    Identity::OddDual,
                                         Identity::OddOdd,     Identity::EvenOdd,      Identity::EvenOddString,
                                         Identity::Supercommute};
  return ids;
}

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::PCommute: return "p-commute";
    case Identity::EvenMerge: return "even-merge";
    case Identity::RootPair: return "root-pair";
    case Identity::EvenTimesP: return "even-p";
    case Identity::PTimesEven: return "p-even";
    case Identity::EvenSum: return "even-sum";
    case Identity::EvenString: return "even-string";
    case Identity::EvenRank2: return "even-rank2";
    case Identity::OddTimesP: return "odd-p";
    case Identity::PTimesOdd: return "p-odd";
    case Identity::OddSquare: return "odd-square";
    case Identity::OddDual: return "odd-dual";
    case Identity::OddOdd: return "odd-odd";
    case Identity::EvenOdd: return "even-odd";
    case Identity::EvenOddString: return "even-odd-string";
    case Identity::Supercommute: return "supercommute";
  }
  return "?";
}

std::optional<Identity> parse_identity(const std::string& name) {
  for (auto id : all_identities()) {
    if (identity_name(id) == name) return id;
  }
  return std::nullopt;
}

ZForm::ZForm(std::shared_ptr<const EnvelopingAlgebra> oracle, StructureConstants table, FactorOrder order)
    : oracle_(std::move(oracle)), table_(std::move(table)), order_(std::move(order)) {
  if (table_.size() != oracle_->structure().size()) throw std::invalid_argument("table and oracle differ in size");
}

ZForm::ZForm(std::shared_ptr<const EnvelopingAlgebra> oracle, FactorOrder order)
    : ZForm(oracle, oracle->structure(), std::move(order)) {}

EnvelopingElement ZForm::evaluate(const IntegralGenerator& g) const {
  return std::visit(
      [&](const auto& x) -> EnvelopingElement {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EvenDivided>) return oracle_->divided_power(x.root, x.b, x.r);
        else if constexpr (std::is_same_v<T, CartanP>) return oracle_->p_i(x.i, x.chi);
        else return oracle_->generator(x.root, x.c);
      },
      g);
}

EnvelopingElement ZForm::evaluate(const IntegralMonomial& m) const {
  EnvelopingElement out = EnvelopingElement::one();
  for (const auto& g : m) out = oracle_->multiply(out, evaluate(g));
  return out;
}

EnvelopingElement ZForm::evaluate(const Expansion& e) const {
  EnvelopingElement out;
  for (const auto& t : e) out.add_scaled(evaluate(t.factors), Rational(t.coeff));
  return out;
}

EnvelopingElement ZForm::evaluate(const ZCombination& z) const {
  EnvelopingElement out;
  for (const auto& [m, c] : z) out.add_scaled(evaluate(m), Rational(c));
  return out;
}

std::string ZForm::str(const IntegralGenerator& g) const {
  const auto& A = coefficients();
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EvenDivided>) {
          return "dp(" + table_.generator(x.root).name + "⊗" + A.label(x.b) + "," + std::to_string(x.r) + ")";
        } else if constexpr (std::is_same_v<T, CartanP>) {
          return "p(" + std::to_string(x.i + 1) + "," + to_string(x.chi, A) + ")";
        } else {
          return "odd(" + table_.generator(x.root).name + "⊗" + A.label(x.c) + ")";
        }
      },
      g);
}

std::string ZForm::str(const IntegralMonomial& m) const {
  if (m.empty()) return "1";
  std::string out;
  for (const auto& g : m) {
    if (!out.empty()) out += " * ";
    out += str(g);
  }
  return out;
}

std::string ZForm::str(const ZCombination& z) const {
  if (z.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : z) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + "·" + str(m);
  }
  return out;
}

bool ZForm::is_basis_element(const IntegralMonomial& m) const {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (is_trivial(m[i])) return false;
    if (i > 0 && !(order_.key(m[i - 1]) < order_.key(m[i]))) return false;
  }
  return true;
}

IntegralMonomial ZForm::X(LieIndex x, const AMultiset& chi) const {
  IntegralMonomial out;
  const bool odd = table_.generator(x).is_odd();
  for (const auto& [a, k] : chi.counts()) {
    if (odd) {
      if (k > 1) throw InvalidDividedPower("X of an odd root with multiplicity above 1");
      out.emplace_back(OddGenerator{x, a});
    } else {
      out.emplace_back(EvenDivided{x, a, k});
    }
  }
  return out;
}

}  // namespace cartanz
