#include "cartanz/combinatorics.hpp"

namespace cartanz {

Integer gen_binomial(const Integer& t, int r) {
  if (r < 0) throw std::invalid_argument("gen_binomial: negative r");
  Integer num = 1;
  for (int i = 0; i < r; ++i) num *= t - i;
  return num / factorial(static_cast<unsigned>(r));
}

Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  return gen_binomial(Integer(n), k);
}

MonoidAlgebra::MonoidAlgebra(std::string name, std::vector<std::string> labels, ABasis unit,
                             std::function<std::optional<ABasis>(ABasis, ABasis)> mul)
    : name_(std::move(name)), labels_(std::move(labels)), unit_(unit) {
  const int n = size();
  table_.resize(static_cast<std::size_t>(n * n));
  for (ABasis a = 0; a < n; ++a) {
    for (ABasis b = 0; b < n; ++b) table_[static_cast<std::size_t>(a * n + b)] = mul(a, b);
  }
}

std::optional<ABasis> MonoidAlgebra::parse_label(const std::string& s) const {
  for (ABasis b = 0; b < size(); ++b) {
    if (labels_[static_cast<std::size_t>(b)] == s) return b;
  }
  return std::nullopt;
}

std::optional<ABasis> MonoidAlgebra::power(ABasis a, int k) const {
  std::optional<ABasis> r = unit_;
  for (int i = 0; i < k; ++i) r = mul(r, std::optional<ABasis>(a));
  return r;
}

bool MonoidAlgebra::has_zero_divisors() const {
  return std::any_of(table_.begin(), table_.end(), [](const auto& v) { return !v.has_value(); });
}

namespace {

std::vector<std::string> power_labels(int d) {
  std::vector<std::string> labels{"1", "t"};
  for (int k = 2; k < d; ++k) labels.push_back("t" + std::to_string(k));
  labels.resize(static_cast<std::size_t>(d));
  return labels;
}

}  // namespace

MonoidAlgebra truncated_polynomials(int d) {
  if (d < 1) throw std::invalid_argument("truncated_polynomials: degree must be positive");
  return MonoidAlgebra("trunc-poly-" + std::to_string(d), power_labels(d), 0,
                       [d](ABasis a, ABasis b) -> std::optional<ABasis> {
                         if (a + b >= d) return std::nullopt;
                         return a + b;
                       });
}

MonoidAlgebra cyclic_group_algebra(int d) {
  if (d < 1) throw std::invalid_argument("cyclic_group_algebra: order must be positive");
  return MonoidAlgebra("cyclic-" + std::to_string(d), power_labels(d), 0,
                       [d](ABasis a, ABasis b) -> std::optional<ABasis> { return (a + b) % d; });
}

MonoidAlgebra a_model(const std::string& name) {
  auto degree = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string rest = name.substr(prefix.size());
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos || rest.size() > 2) {
      return std::nullopt;
    }
    return std::stoi(rest);
  };
  if (auto d = degree("trunc-poly-"); d && *d >= 1) return truncated_polynomials(*d);
  if (auto d = degree("cyclic-"); d && *d >= 1) return cyclic_group_algebra(*d);
  throw std::invalid_argument("unknown A-model '" + name + "'");
}

std::optional<ABasis> pi(const AMultiset& psi, const MonoidAlgebra& A) {
  std::optional<ABasis> r = A.unit();
  for (const auto& [b, k] : psi.counts()) r = A.mul(r, A.power(b, k));
  return r;
}

std::string to_string(const AMultiset& chi, const MonoidAlgebra& A) {
  std::string s = "{";
  for (const auto& [b, k] : chi.counts()) {
    if (s.size() > 1) s += ",";
    s += A.label(b) + ":" + std::to_string(k);
  }
  return s + "}";
}

AMultiset weighted_sum(const Multiset<AMultiset>& psi) {
  AMultiset total;
  for (const auto& [phi, k] : psi.counts()) total = total + phi.scaled(k);
  return total;
}

std::vector<Multiset<AMultiset>> enumerate_CS_k(const AMultiset& chi, int k, ZeroParts zero) {
  std::vector<Multiset<AMultiset>> out;
  if (k < 0) return out;
  std::vector<AMultiset> parts = enumerate_F(chi);
  if (zero == ZeroParts::Exclude) parts.erase(parts.begin());  // F(χ) starts with 0
  Multiset<AMultiset> current;
  std::function<void(std::size_t, int, const AMultiset&)> go = [&](std::size_t pos, int left, const AMultiset& budget) {
    if (left == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t p = pos; p < parts.size(); ++p) {
      if (!parts[p].is_submultiset(budget)) continue;
      current.add(parts[p]);
      go(p, left - 1, budget - parts[p]);
      current = current - Multiset<AMultiset>::singleton(parts[p]);
    }
  };
  go(0, k, chi);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Multiset<int>> enumerate_CP_k(int j, int k, ZeroParts zero) {
  std::vector<Multiset<int>> out;
  if (j < 0 || k < 0) return out;
  const int lowest = zero == ZeroParts::Include ? 0 : 1;
  Multiset<int> current;
  std::function<void(int, int, int)> go = [&](int min_part, int left_sum, int left_parts) {
    if (left_parts == 0) {
      if (left_sum == 0) out.push_back(current);
      return;
    }
    // parts are nondecreasing, so every remaining part is at least m
    for (int m = min_part; m * left_parts <= left_sum; ++m) {
      current.add(m);
      go(m, left_sum - m, left_parts - 1);
      current = current - Multiset<int>::singleton(m);
    }
  };
  go(lowest, j, k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cartanz
