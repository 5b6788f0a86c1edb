#include "cartanz/roots.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cartanz {

std::string weight_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + ")";
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Weight operator-(const Weight& a) { return scaled(a, -1); }

Weight scaled(const Weight& a, int k) {
  Weight c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
  return c;
}

bool is_zero(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int v) { return v == 0; });
}

std::string CartanBasis::label(std::size_t i) const {
  if (euler_index && *euler_index == i) return "E";
  return "h" + std::to_string(i + 1);
}

namespace {

SuperDerivation diagonal(int n, int k) {
  return SuperDerivation::term(ExteriorElement::generator(n, k), k);
}

// d_k such that h = Σ d_k ξ_k∂_k; throws if h is not of that shape.
std::vector<Rational> diagonal_entries(const SuperDerivation& h) {
  const int n = h.rank();
  std::vector<Rational> d(static_cast<std::size_t>(n));
  SuperDerivation rebuilt(n);
  for (int k = 1; k <= n; ++k) {
    d[static_cast<std::size_t>(k - 1)] = h.component(k).coefficient(Mask{1} << (k - 1));
    rebuilt += d[static_cast<std::size_t>(k - 1)] * diagonal(n, k);
  }
  if (!(rebuilt == h)) throw RootDecompositionError("Cartan element is not diagonal: " + h.str());
  return d;
}

}  // namespace

CartanBasis cartan_basis(const AlgebraSpec& spec) {
  spec.validate();
  const int n = spec.n;
  CartanBasis cb;
  switch (spec.family) {
    case Family::W:
      for (int k = 1; k <= n; ++k) cb.elements.push_back(diagonal(n, k));
      break;
    case Family::S:
    case Family::STilde:
      for (int k = 1; k < n; ++k) cb.elements.push_back(diagonal(n, k) - diagonal(n, k + 1));
      break;
    case Family::H:
      for (int k = 1; k <= n / 2; ++k) cb.elements.push_back(diagonal(n, k) - diagonal(n, n / 2 + k));
      break;
  }
  if (spec.extend_with_euler) {
    cb.euler_index = cb.elements.size();
    cb.elements.push_back(euler_operator(n));
  }
  return cb;
}

Weight monomial_weight(const CartanBasis& cartan, Mask mask, int j) {
  Weight w;
  for (const auto& h : cartan.elements) {
    const auto d = diagonal_entries(h);
    Rational v = -d[static_cast<std::size_t>(j - 1)];
    for (int k = 1; k <= h.rank(); ++k) {
      if (mask & (Mask{1} << (k - 1))) v += d[static_cast<std::size_t>(k - 1)];
    }
    w.push_back(static_cast<int>(to_int64(v)));
  }
  return w;
}

RootSystem::RootSystem(CartanTypeAlgebra algebra, CartanBasis cartan, std::map<Weight, RootDatum> roots)
    : algebra_(std::move(algebra)), cartan_(std::move(cartan)), roots_(std::move(roots)) {
  for (const auto& [w, rd] : roots_) (is_positive(w) ? positive_ : negative_).push_back(w);
  std::set<Weight> pos(positive_.begin(), positive_.end());
  std::set<Weight> decomposable;
  for (const auto& a : positive_) {
    for (const auto& b : positive_) {
      const Weight s = a + b;
      if (pos.count(s)) decomposable.insert(s);
    }
  }
  for (const auto& w : positive_) {
    if (!decomposable.count(w)) simple_.push_back(w);
  }
  std::sort(simple_.begin(), simple_.end(), [&](const Weight& a, const Weight& b) {
    const int ha = roots_.at(a).height, hb = roots_.at(b).height;
    return ha != hb ? ha < hb : a < b;
  });
}

const RootDatum* RootSystem::find(const Weight& w) const {
  auto it = roots_.find(w);
  return it == roots_.end() ? nullptr : &it->second;
}

bool RootSystem::is_positive(const Weight& w) const {
  const int h = roots_.at(w).height;
  if (h != 0) return h > 0;
  for (int v : w) {
    if (v != 0) return v > 0;
  }
  return false;
}

std::vector<Weight> RootSystem::roots_of_height(int z) const {
  std::vector<Weight> out;
  for (const auto& [w, rd] : roots_) {
    if (rd.height == z) out.push_back(w);
  }
  return out;
}

std::size_t RootSystem::total_multiplicity() const {
  std::size_t s = 0;
  for (const auto& [w, rd] : roots_) s += rd.multiplicity();
  return s;
}

int height(const RootDatum& rd) {
  if (rd.vectors.empty()) throw std::invalid_argument("height of an empty root datum");
  return rd.height;
}

RootSystem root_decomposition(const AlgebraSpec& spec) { return root_decomposition(build_algebra(spec)); }

RootSystem root_decomposition(const CartanTypeAlgebra& algebra) {
  const int n = algebra.rank();
  CartanBasis cartan = cartan_basis(algebra.spec());
  const auto& wb = w_basis(n);

  std::map<Weight, std::vector<std::size_t>> classes;
  for (std::size_t k = 0; k < wb.size(); ++k) classes[monomial_weight(cartan, wb[k].mask, wb[k].j)].push_back(k);

  const auto rows = static_cast<Eigen::Index>(wb.size());
  const auto dim = static_cast<Eigen::Index>(algebra.dimension());
  QMatrix basis(rows, dim);
  for (Eigen::Index c = 0; c < dim; ++c) basis.col(c) = algebra.element(static_cast<std::size_t>(c)).coordinates();

  std::map<Weight, RootDatum> roots;
  std::size_t zero_dim = 0;
  for (const auto& [w, members] : classes) {
    std::vector<bool> inside(wb.size(), false);
    for (auto k : members) inside[k] = true;
    QMatrix outside(rows - static_cast<Eigen::Index>(members.size()), dim);
    Eigen::Index r = 0;
    for (std::size_t k = 0; k < wb.size(); ++k) {
      if (!inside[k]) outside.row(r++) = basis.row(static_cast<Eigen::Index>(k));
    }
    const QMatrix kernel = outside.rows() == 0 ? QMatrix(QMatrix::Identity(dim, dim)) : linalg::kernel_basis(outside);
    if (kernel.cols() == 0) continue;
    if (is_zero(w)) {
      zero_dim = static_cast<std::size_t>(kernel.cols());
      continue;
    }
    const QMatrix vectors = basis * kernel;
    const auto ech = linalg::row_reduce(QMatrix(vectors.transpose()));
    RootDatum rd;
    rd.weight = w;
    std::optional<int> height;
    for (Eigen::Index i = 0; i < ech.rank(); ++i) {
      const QVector v = linalg::primitive_integer(ech.reduced.row(i).transpose());
      SuperDerivation d = SuperDerivation::from_coordinates(n, v);
      const auto coords = algebra.coordinates(d);
      if (!coords) throw RootDecompositionError("weight vector outside the algebra");
      for (Eigen::Index c = 0; c < coords->size(); ++c) {
        if ((*coords)(c) == 0) continue;
        const int deg = algebra.degree(static_cast<std::size_t>(c));
        if (height && *height != deg) {
          throw RootDecompositionError("weight space " + weight_string(w) + " of " + algebra.spec().name() +
                                       " meets degrees " + std::to_string(*height) + " and " + std::to_string(deg) +
                                       "; extend the Cartan subalgebra by the Euler element");
        }
        height = deg;
      }
      rd.vectors.push_back(std::move(d));
    }
    rd.height = *height;
    roots.emplace(w, std::move(rd));
  }
  if (zero_dim != cartan.size()) {
    throw RootDecompositionError("zero weight space of " + algebra.spec().name() + " has dimension " +
                                 std::to_string(zero_dim) + ", expected " + std::to_string(cartan.size()));
  }
  return RootSystem(algebra, std::move(cartan), std::move(roots));
}

Report verify_root_properties(const RootSystem& rs) {
  Report report;
  const Family family = rs.algebra().spec().family;

  Check symmetric{"symmetric-roots", true, "", 0};
  for (const auto& [w, rd] : rs.roots()) {
    const RootDatum* neg = rs.find(-w);
    if (!neg) continue;
    ++symmetric.cases;
    if (symmetric.passed && (rd.height != 0 || neg->height != 0 || rd.multiplicity() != 1)) {
      symmetric.passed = false;
      symmetric.detail = "alpha=" + weight_string(w) + " height " + std::to_string(rd.height) + " mult " +
                         std::to_string(rd.multiplicity()) + ", -alpha height " + std::to_string(neg->height) +
                         ": " + rd.vectors.front().str() + " / " + neg->vectors.front().str();
    }
  }
  if (symmetric.passed) symmetric.detail = std::to_string(symmetric.cases) + " roots with -alpha in R, all height 0, mult 1";
  report.checks.push_back(symmetric);

  // Listed doubling roots: H(n) with α = mδ, S~(n) with α = −ε_i.
  auto listed = [&](const Weight& w) {
    if (family == Family::H) {
      if (!rs.cartan().euler_index) return false;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i != *rs.cartan().euler_index && w[i] != 0) return false;
      }
      return true;
    }
    if (family == Family::STilde) {
      for (int i = 1; i <= rs.algebra().rank(); ++i) {
        if (w == monomial_weight(rs.cartan(), 0, i)) return true;
      }
    }
    return false;
  };
  Check doubling{"double-roots", true, "", 0};
  std::string witnesses;
  for (const auto& [w, rd] : rs.roots()) {
    const bool doubled = rs.contains(scaled(w, 2));
    if (doubled) {
      ++doubling.cases;
      witnesses += (witnesses.empty() ? "" : " ") + weight_string(w);
    }
    if (!doubling.passed) continue;
    if (doubled && !listed(w)) {
      doubling.passed = false;
      doubling.detail = "2alpha in R for unlisted alpha=" + weight_string(w);
    } else if (family == Family::STilde && listed(w) && !doubled) {
      doubling.passed = false;
      doubling.detail = "listed alpha=" + weight_string(w) + " has 2alpha not in R";
    }
  }
  if (doubling.passed) doubling.detail = witnesses.empty() ? "no alpha with 2alpha in R" : "2alpha in R for " + witnesses;
  report.checks.push_back(doubling);

  Check asym{"asymmetric-root", false, "no alpha with -alpha not in R", 0};
  for (const auto& [w, rd] : rs.roots()) {
    if (!rs.contains(-w)) {
      ++asym.cases;
      if (!asym.passed) {
        asym.passed = true;
        asym.detail = "alpha=" + weight_string(w) + " (" + rd.vectors.front().str() + ")";
      }
    }
  }
  report.checks.push_back(asym);
  return report;
}

nlohmann::json root_table(const RootSystem& rs) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& [w, rd] : rs.roots()) {
    nlohmann::json vectors = nlohmann::json::array();
    for (const auto& v : rd.vectors) vectors.push_back(v.str());
    table.push_back({{"weight", w},
                     {"height", rd.height},
                     {"multiplicity", rd.multiplicity()},
                     {"parity", is_odd(rd.parity()) ? "odd" : "even"},
                     {"positive", rs.is_positive(w)},
                     {"vectors", vectors}});
  }
  return table;
}

}  // namespace cartanz
