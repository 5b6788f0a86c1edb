#include "cartanz/exterior.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace cartanz {

namespace {

void require_same_rank(int a, int b, const char* where) {
  if (a != b) {
    throw RankMismatch(std::string(where) + ": rank mismatch (" + std::to_string(a) + " vs " +
                       std::to_string(b) + ")");
  }
}

Mask bit(int i) { return Mask{1} << (i - 1); }

std::string coefficient_prefix(const Rational& c, bool first, bool unit_term) {
  std::string out;
  Rational a = c;
  if (c < 0) {
    out = first ? "-" : " - ";
    a = -c;
  } else if (!first) {
    out = " + ";
  }
  if (a != 1 || unit_term) {
    out += to_string(a);
    if (!unit_term) out += "*";
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Λ(n)

std::vector<int> ExteriorMonomial::indices() const {
  std::vector<int> out;
  for (int i = 1; i <= n; ++i) {
    if (mask & bit(i)) out.push_back(i);
  }
  return out;
}

std::string ExteriorMonomial::str() const {
  if (mask == 0) return "1";
  std::string s;
  for (int i : indices()) s += "x" + std::to_string(i);
  return s;
}

ExteriorElement ExteriorElement::one(int n) { return monomial(n, 0, 1); }

ExteriorElement ExteriorElement::generator(int n, int i) {
  if (i < 1 || i > n) throw std::out_of_range("generator index out of range");
  return monomial(n, bit(i), 1);
}

ExteriorElement ExteriorElement::monomial(int n, Mask mask, const Rational& c) {
  ExteriorElement e(n);
  e.add_term(mask, c);
  return e;
}

ExteriorElement ExteriorElement::product_of(int n, const std::vector<int>& indices) {
  ExteriorElement e = one(n);
  for (int i : indices) e = wedge(e, generator(n, i));
  return e;
}

Rational ExteriorElement::coefficient(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void ExteriorElement::add_term(Mask m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<int> ExteriorElement::degree() const {
  if (terms_.empty()) return std::nullopt;
  const int d = popcount(terms_.begin()->first);
  for (const auto& [m, c] : terms_) {
    if (popcount(m) != d) return std::nullopt;
  }
  return d;
}

std::optional<Parity> ExteriorElement::parity() const {
  if (terms_.empty()) return std::nullopt;
  const Parity p = parity_of(popcount(terms_.begin()->first));
  for (const auto& [m, c] : terms_) {
    if (parity_of(popcount(m)) != p) return std::nullopt;
  }
  return p;
}

ExteriorElement ExteriorElement::parity_part(Parity p) const {
  ExteriorElement out(n_);
  for (const auto& [m, c] : terms_) {
    if (parity_of(popcount(m)) == p) out.terms_.emplace(m, c);
  }
  return out;
}

ExteriorElement& ExteriorElement::operator+=(const ExteriorElement& o) {
  require_same_rank(n_, o.n_, "exterior +");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ExteriorElement& ExteriorElement::operator-=(const ExteriorElement& o) {
  require_same_rank(n_, o.n_, "exterior -");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ExteriorElement& ExteriorElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

std::string ExteriorElement::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool unit = (m == 0);
    s += coefficient_prefix(c, first, unit);
    if (!unit) s += ExteriorMonomial{m, n_}.str();
    first = false;
  }
  return s;
}

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  // Each generator of b must pass over the generators of a with larger index.
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const Mask low = rest & (~rest + 1);
    swaps += popcount(a & ~((low << 1) - 1));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b) {
  require_same_rank(a.rank(), b.rank(), "wedge");
  ExteriorElement out(a.rank());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int s = wedge_sign(ma, mb);
      if (s != 0) out.add_term(ma | mb, s > 0 ? ca * cb : -(ca * cb));
    }
  }
  return out;
}

ExteriorElement partial(int i, const ExteriorElement& f) {
  ExteriorElement out(f.rank());
  const Mask b = bit(i);
  for (const auto& [m, c] : f.terms()) {
    if (!(m & b)) continue;
    const bool odd = popcount(m & (b - 1)) % 2 != 0;
    out.add_term(m & ~b, odd ? -c : c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// W(n)

SuperDerivation::SuperDerivation(int n) : n_(n), components_(static_cast<std::size_t>(n), ExteriorElement(n)) {}

SuperDerivation SuperDerivation::partial(int n, int i) { return term(ExteriorElement::one(n), i); }

SuperDerivation SuperDerivation::term(const ExteriorElement& f, int i) {
  SuperDerivation d(f.rank());
  d.add_to_component(i, f);
  return d;
}

void SuperDerivation::add_to_component(int i, const ExteriorElement& f) {
  require_same_rank(n_, f.rank(), "superderivation component");
  if (i < 1 || i > n_) throw std::out_of_range("derivation index out of range");
  components_[static_cast<std::size_t>(i - 1)] += f;
}

bool SuperDerivation::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const auto& f) { return f.is_zero(); });
}

std::optional<int> SuperDerivation::degree() const {
  std::optional<int> d;
  for (const auto& f : components_) {
    for (const auto& [m, c] : f.terms()) {
      const int k = popcount(m) - 1;
      if (d && *d != k) return std::nullopt;
      d = k;
    }
  }
  return d;
}

std::optional<Parity> SuperDerivation::parity() const {
  std::optional<Parity> p;
  for (const auto& f : components_) {
    for (const auto& [m, c] : f.terms()) {
      const Parity q = parity_of(popcount(m) - 1);
      if (p && *p != q) return std::nullopt;
      p = q;
    }
  }
  return p;
}

SuperDerivation SuperDerivation::parity_part(Parity p) const {
  SuperDerivation out(n_);
  // The term f∂_i has parity p(f) + 1.
  for (int i = 1; i <= n_; ++i) out.components_[static_cast<std::size_t>(i - 1)] = component(i).parity_part(p + Parity::Odd);
  return out;
}

SuperDerivation& SuperDerivation::operator+=(const SuperDerivation& o) {
  require_same_rank(n_, o.n_, "derivation +");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
  return *this;
}

SuperDerivation& SuperDerivation::operator-=(const SuperDerivation& o) {
  require_same_rank(n_, o.n_, "derivation -");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] -= o.components_[i];
  return *this;
}

SuperDerivation& SuperDerivation::operator*=(const Rational& c) {
  for (auto& f : components_) f *= c;
  return *this;
}

QVector SuperDerivation::coordinates() const {
  const auto& basis = w_basis(n_);
  QVector v = QVector::Zero(static_cast<Eigen::Index>(basis.size()));
  for (int j = 1; j <= n_; ++j) {
    for (const auto& [m, c] : component(j).terms()) v(static_cast<Eigen::Index>(w_index(n_, m, j))) = c;
  }
  return v;
}

SuperDerivation SuperDerivation::from_coordinates(int n, const QVector& v) {
  const auto& basis = w_basis(n);
  if (static_cast<std::size_t>(v.size()) != basis.size()) throw RankMismatch("coordinate vector has wrong length");
  SuperDerivation d(n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Rational& c = v(static_cast<Eigen::Index>(k));
    if (c != 0) d.components_[static_cast<std::size_t>(basis[k].j - 1)].add_term(basis[k].mask, c);
  }
  return d;
}

std::string SuperDerivation::str() const {
  std::string s;
  bool first = true;
  for (const auto& e : w_basis(n_)) {
    const Rational c = component(e.j).coefficient(e.mask);
    if (c == 0) continue;
    s += coefficient_prefix(c, first, false);
    if (e.mask != 0) s += ExteriorMonomial{e.mask, n_}.str() + "*";
    s += "d" + std::to_string(e.j);
    first = false;
  }
  return first ? "0" : s;
}

ExteriorElement apply(const SuperDerivation& d, const ExteriorElement& f) {
  require_same_rank(d.rank(), f.rank(), "apply");
  ExteriorElement out(f.rank());
  for (int i = 1; i <= d.rank(); ++i) {
    if (d.component(i).is_zero()) continue;
    out += wedge(d.component(i), partial(i, f));
  }
  return out;
}

SuperDerivation supercommutator(const SuperDerivation& a, const SuperDerivation& b) {
  require_same_rank(a.rank(), b.rank(), "supercommutator");
  const int n = a.rank();
  SuperDerivation out(n);
  for (Parity pa : {Parity::Even, Parity::Odd}) {
    const SuperDerivation da = a.parity_part(pa);
    if (da.is_zero()) continue;
    for (Parity pb : {Parity::Even, Parity::Odd}) {
      const SuperDerivation db = b.parity_part(pb);
      if (db.is_zero()) continue;
      const bool both_odd = is_odd(pa) && is_odd(pb);
      for (int j = 1; j <= n; ++j) {
        ExteriorElement cj = apply(da, db.component(j));
        const ExteriorElement back = apply(db, da.component(j));
        if (both_odd) cj += back; else cj -= back;
        out.add_to_component(j, cj);
      }
    }
  }
  return out;
}

ExteriorElement divergence(const SuperDerivation& d) {
  ExteriorElement out(d.rank());
  for (int i = 1; i <= d.rank(); ++i) out += partial(i, d.component(i));
  return out;
}

int hamiltonian_partner(int n, int i, HamiltonianForm form) {
  if (form == HamiltonianForm::Diagonal) return i;
  const int half = n / 2;
  if (i <= half) return i + half;
  if (i <= 2 * half) return i - half;
  return i;  // the unpaired middle index for odd n
}

SuperDerivation d_f(const ExteriorElement& f, HamiltonianForm form) {
  const int n = f.rank();
  SuperDerivation d(n);
  for (int i = 1; i <= n; ++i) d.add_to_component(i, partial(hamiltonian_partner(n, i, form), f));
  return d;
}

SuperDerivation euler_operator(int n) {
  SuperDerivation d(n);
  for (int i = 1; i <= n; ++i) d.add_to_component(i, ExteriorElement::generator(n, i));
  return d;
}

namespace {

struct WBasisTable {
  std::vector<WBasisEntry> entries;
  std::unordered_map<std::uint64_t, std::size_t> index;
};

std::uint64_t w_key(Mask mask, int j) { return (static_cast<std::uint64_t>(mask) << 8) | static_cast<std::uint64_t>(j); }

WBasisTable make_w_basis(int n) {
  std::vector<Mask> masks;
  for (Mask m = 0; m < (Mask{1} << n); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](Mask a, Mask b) {
    if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
    // Same size: lexicographic on ascending index lists. The lowest differing
    // bit decides, and the set owning it comes first.
    const Mask diff = a ^ b;
    const Mask low = diff & (~diff + 1);
    return (a & low) != 0;
  });
  WBasisTable t;
  for (Mask m : masks) {
    for (int j = 1; j <= n; ++j) {
      t.index.emplace(w_key(m, j), t.entries.size());
      t.entries.push_back({m, j});
    }
  }
  return t;
}

const WBasisTable& w_table(int n) {
  static std::mutex mutex;
  static std::map<int, WBasisTable> tables;
  if (n < 1 || n > 16) throw std::out_of_range("exterior rank out of supported range");
  std::lock_guard lock(mutex);
  auto it = tables.find(n);
  if (it == tables.end()) it = tables.emplace(n, make_w_basis(n)).first;
  return it->second;
}

}  // namespace

const std::vector<WBasisEntry>& w_basis(int n) { return w_table(n).entries; }

std::size_t w_index(int n, Mask mask, int j) { return w_table(n).index.at(w_key(mask, j)); }

// ---------------------------------------------------------------------------
// Families

std::string family_name(Family f) {
  switch (f) {
    case Family::W: return "W";
    case Family::S: return "S";
    case Family::STilde: return "S_tilde";
    case Family::H: return "H";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "W") return Family::W;
  if (s == "S") return Family::S;
  if (s == "S_tilde" || s == "S~" || s == "Stilde") return Family::STilde;
  if (s == "H") return Family::H;
  throw InvalidSpec("unknown family '" + s + "'");
}

void AlgebraSpec::validate() const {
  constexpr int max_rank = 6;
  auto fail = [&](const std::string& why) { throw InvalidSpec(name() + ": " + why); };
  switch (family) {
    case Family::W:
      if (n < 2) fail("W(n) needs n >= 2");
      break;
    case Family::S:
      if (n < 3) fail("S(n) needs n >= 3");
      break;
    case Family::STilde:
      if (n < 4 || n % 2 != 0) fail("S~(n) needs even n >= 4");
      break;
    case Family::H:
      if (n < 4) fail("H(n) needs n >= 4");
      break;
  }
  if (n > max_rank) fail("rank above " + std::to_string(max_rank) + " is not supported");
  if (extend_with_euler && family != Family::S && family != Family::H) {
    fail("the Euler extension applies to S(n) and H(n) only");
  }
}

std::string AlgebraSpec::name() const {
  static const char* const names[] = {"W", "S", "S~", "H"};
  std::string s = std::string(names[static_cast<int>(family)]) + "(" + std::to_string(n) + ")";
  if (extend_with_euler) s += "+E";
  return s;
}

void to_json(nlohmann::json& j, const AlgebraSpec& s) {
  j = nlohmann::json{{"family", family_name(s.family)}, {"n", s.n}, {"extend_with_euler", s.extend_with_euler}};
}

void from_json(const nlohmann::json& j, AlgebraSpec& s) {
  try {
    s.family = parse_family(j.at("family").get<std::string>());
    s.n = j.at("n").get<int>();
    s.extend_with_euler = j.value("extend_with_euler", false);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidSpec(std::string("malformed algebra spec: ") + e.what());
  }
}

CartanTypeAlgebra::CartanTypeAlgebra(AlgebraSpec spec, std::vector<SuperDerivation> basis, std::vector<int> degrees,
                                     std::optional<std::size_t> euler_index)
    : spec_(spec), basis_(std::move(basis)), degrees_(std::move(degrees)), euler_index_(euler_index) {
  const auto rows = static_cast<Eigen::Index>(w_basis(spec_.n).size());
  QMatrix m(rows, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t k = 0; k < basis_.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = basis_[k].coordinates();
  solver_ = linalg::SpanSolver<Rational>(std::move(m));
}

std::optional<QVector> CartanTypeAlgebra::coordinates(const SuperDerivation& d) const {
  require_same_rank(spec_.n, d.rank(), "coordinates");
  return solver_.coordinates(d.coordinates());
}

namespace {

/// Canonical basis of the row space of `rows` (as W-coordinate vectors):
/// reduced echelon form with each row scaled to a primitive integer vector.
std::vector<QVector> canonical_rows(const std::vector<QVector>& rows, Eigen::Index width) {
  if (rows.empty()) return {};
  QMatrix m(static_cast<Eigen::Index>(rows.size()), width);
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  const auto e = linalg::row_reduce(m);
  std::vector<QVector> out;
  for (Eigen::Index r = 0; r < e.rank(); ++r) out.push_back(linalg::primitive_integer(e.reduced.row(r).transpose()));
  return out;
}

struct GradedBasis {
  std::vector<SuperDerivation> elements;
  std::vector<int> degrees;

  void add(const SuperDerivation& d, int degree) {
    elements.push_back(d);
    degrees.push_back(degree);
  }
};

std::vector<std::size_t> w_indices_of_degree(int n, int degree) {
  std::vector<std::size_t> out;
  const auto& basis = w_basis(n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (popcount(basis[k].mask) - 1 == degree) out.push_back(k);
  }
  return out;
}

GradedBasis build_w(int n) {
  GradedBasis g;
  for (const auto& e : w_basis(n)) {
    g.add(SuperDerivation::term(ExteriorElement::monomial(n, e.mask), e.j), popcount(e.mask) - 1);
  }
  return g;
}

// Divergence-free part of W(n)_k, one degree at a time.
std::vector<QVector> s_layer(int n, int degree) {
  const auto cols = w_indices_of_degree(n, degree);
  const auto width = static_cast<Eigen::Index>(w_basis(n).size());
  std::vector<Mask> targets;
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    if (popcount(m) == degree) targets.push_back(m);
  }
  QMatrix div = QMatrix::Zero(static_cast<Eigen::Index>(targets.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& e = w_basis(n)[cols[c]];
    const ExteriorElement image = partial(e.j, ExteriorElement::monomial(n, e.mask));
    for (const auto& [m, v] : image.terms()) {
      const auto row = std::find(targets.begin(), targets.end(), m) - targets.begin();
      div(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(c)) += v;
    }
  }
  const QMatrix kernel = targets.empty() ? QMatrix::Identity(static_cast<Eigen::Index>(cols.size()),
                                                             static_cast<Eigen::Index>(cols.size()))
                                         : linalg::kernel_basis(div);
  std::vector<QVector> rows;
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    QVector v = QVector::Zero(width);
    for (std::size_t c = 0; c < cols.size(); ++c) v(static_cast<Eigen::Index>(cols[c])) = kernel(static_cast<Eigen::Index>(c), k);
    rows.push_back(std::move(v));
  }
  return canonical_rows(rows, width);
}

GradedBasis build_s(int n, bool tilde) {
  GradedBasis g;
  for (int k = tilde ? 0 : -1; k <= n - 2; ++k) {
    for (const auto& v : s_layer(n, k)) g.add(SuperDerivation::from_coordinates(n, v), k);
  }
  if (tilde) {
    const Mask top = (Mask{1} << n) - 1;
    std::vector<SuperDerivation> shifted;
    for (int i = 1; i <= n; ++i) {
      ExteriorElement f = ExteriorElement::one(n) + ExteriorElement::monomial(n, top);
      shifted.push_back(SuperDerivation::term(f, i));
    }
    GradedBasis out;
    for (const auto& d : shifted) out.add(d, -1);
    for (std::size_t k = 0; k < g.elements.size(); ++k) out.add(g.elements[k], g.degrees[k]);
    return out;
  }
  return g;
}

GradedBasis build_h(int n) {
  std::vector<SuperDerivation> generators;
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    generators.push_back(d_f(ExteriorElement::monomial(n, m), HamiltonianForm::Split));
  }
  std::map<int, std::vector<QVector>> by_degree;
  for (std::size_t a = 0; a < generators.size(); ++a) {
    for (std::size_t b = a; b < generators.size(); ++b) {
      const SuperDerivation br = supercommutator(generators[a], generators[b]);
      if (br.is_zero()) continue;
      by_degree[*br.degree()].push_back(br.coordinates());
    }
  }
  const auto width = static_cast<Eigen::Index>(w_basis(n).size());
  GradedBasis g;
  for (const auto& [k, rows] : by_degree) {
    for (const auto& v : canonical_rows(rows, width)) g.add(SuperDerivation::from_coordinates(n, v), k);
  }
  return g;
}

}  // namespace

CartanTypeAlgebra build_algebra(const AlgebraSpec& spec) {
  spec.validate();
  GradedBasis g;
  switch (spec.family) {
    case Family::W: g = build_w(spec.n); break;
    case Family::S: g = build_s(spec.n, false); break;
    case Family::STilde: g = build_s(spec.n, true); break;
    case Family::H: g = build_h(spec.n); break;
  }
  std::optional<std::size_t> euler;
  if (spec.extend_with_euler) {
    euler = g.elements.size();
    g.add(euler_operator(spec.n), 0);
  }
  return CartanTypeAlgebra(spec, std::move(g.elements), std::move(g.degrees), euler);
}

}  // namespace cartanz
