#ifndef CARTANZ_COMBINATORICS_HPP
#define CARTANZ_COMBINATORICS_HPP

// Finite multisets, the monoid models of A, and the index sets CS_k / CP_k
// that parametrize the straightening identities.

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cartanz/rational.hpp"

namespace cartanz {

/// A finitely supported multiplicity function χ: S → ℤ≥0. Zero counts are never stored.
/// The defaulted <=> is a total order used for container keys; the partial
/// order ψ ≤ χ is `is_submultiset`.
template <class T>
class Multiset {
 public:
  Multiset() = default;
  Multiset(std::initializer_list<std::pair<const T, int>> init) {
    for (const auto& [s, k] : init) add(s, k);
  }
  static Multiset singleton(const T& s, int k = 1) {
    Multiset m;
    m.add(s, k);
    return m;
  }

  int count(const T& s) const {
    auto it = counts_.find(s);
    return it == counts_.end() ? 0 : it->second;
  }
  /// |χ|
  int size() const {
    int n = 0;
    for (const auto& [s, k] : counts_) n += k;
    return n;
  }
  bool empty() const { return counts_.empty(); }
  const std::map<T, int>& counts() const { return counts_; }

  void add(const T& s, int k = 1) {
    if (k < 0) throw std::invalid_argument("negative multiplicity");
    if (k == 0) return;
    counts_[s] += k;
  }

  Multiset operator+(const Multiset& o) const {
    Multiset m = *this;
    for (const auto& [s, k] : o.counts_) m.add(s, k);
    return m;
  }
  Multiset operator-(const Multiset& o) const {
    Multiset m = *this;
    for (const auto& [s, k] : o.counts_) {
      auto it = m.counts_.find(s);
      if (it == m.counts_.end() || it->second < k) throw std::invalid_argument("multiset difference is negative");
      if ((it->second -= k) == 0) m.counts_.erase(it);
    }
    return m;
  }
  Multiset scaled(int k) const {
    Multiset m;
    for (const auto& [s, c] : counts_) m.add(s, c * k);
    return m;
  }

  bool is_submultiset(const Multiset& of) const {
    for (const auto& [s, k] : counts_) {
      if (of.count(s) < k) return false;
    }
    return true;
  }

  auto operator<=>(const Multiset&) const = default;

 private:
  std::map<T, int> counts_;
};

/// |ψ|! / Π ψ(a)!
template <class T>
Integer multinomial_m(const Multiset<T>& psi) {
  Integer m = factorial(static_cast<unsigned>(psi.size()));
  for (const auto& [s, k] : psi.counts()) m /= factorial(static_cast<unsigned>(k));
  return m;
}

/// u(u−1)⋯(u−r+1)/r! at an integer u.
Integer gen_binomial(const Integer& t, int r);
Integer binomial(int n, int k);

/// Index of a basis element of A.
using ABasis = int;
using AMultiset = Multiset<ABasis>;

/// Commutative monoid algebra A over a finite basis 𝔅 closed under
/// multiplication, possibly with an absorbing zero (mul returns nullopt).
class MonoidAlgebra {
 public:
  MonoidAlgebra(std::string name, std::vector<std::string> labels, ABasis unit,
                std::function<std::optional<ABasis>(ABasis, ABasis)> mul);

  const std::string& name() const { return name_; }
  int size() const { return static_cast<int>(labels_.size()); }
  ABasis unit() const { return unit_; }
  const std::string& label(ABasis b) const { return labels_.at(static_cast<std::size_t>(b)); }
  std::optional<ABasis> parse_label(const std::string& s) const;
  std::optional<ABasis> mul(ABasis a, ABasis b) const { return table_[static_cast<std::size_t>(a * size() + b)]; }
  std::optional<ABasis> mul(std::optional<ABasis> a, std::optional<ABasis> b) const {
    return a && b ? mul(*a, *b) : std::nullopt;
  }
  std::optional<ABasis> power(ABasis a, int k) const;
  bool has_zero_divisors() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  ABasis unit_;
  std::vector<std::optional<ABasis>> table_;
};

/// {1, t, …, t^{d−1}}, t^d = 0.
MonoidAlgebra truncated_polynomials(int d);
/// ℤ[t]/(t^d − 1).
MonoidAlgebra cyclic_group_algebra(int d);
/// "trunc-poly-4", "cyclic-4" and the same with other degrees.
MonoidAlgebra a_model(const std::string& name);

/// π(ψ) = Π a^{ψ(a)}, π(0) = 1; nullopt when the product hits the absorbing zero.
std::optional<ABasis> pi(const AMultiset& psi, const MonoidAlgebra& A);

std::string to_string(const AMultiset& chi, const MonoidAlgebra& A);  // "{t:2,t3:1}"

/// Whether zero parts are members of CS_k and CP_k (they are by default; the
/// identities rely on the degenerate element k·χ₀ being present).
enum class ZeroParts { Include, Exclude };

/// F_k(χ): sub-multisets of size k, lexicographic.
template <class T>
std::vector<Multiset<T>> enumerate_F_k(const Multiset<T>& chi, int k) {
  std::vector<Multiset<T>> out;
  if (k < 0) return out;
  std::vector<std::pair<T, int>> support(chi.counts().begin(), chi.counts().end());
  std::vector<int> pick(support.size(), 0);
  std::function<void(std::size_t, int)> go = [&](std::size_t pos, int left) {
    if (pos == support.size()) {
      if (left != 0) return;
      Multiset<T> m;
      for (std::size_t i = 0; i < support.size(); ++i) m.add(support[i].first, pick[i]);
      out.push_back(std::move(m));
      return;
    }
    for (int c = std::min(left, support[pos].second); c >= 0; --c) {
      pick[pos] = c;
      go(pos + 1, left - c);
    }
  };
  go(0, k);
  std::sort(out.begin(), out.end());
  return out;
}

/// F(χ): all sub-multisets, graded by size.
template <class T>
std::vector<Multiset<T>> enumerate_F(const Multiset<T>& chi) {
  std::vector<Multiset<T>> out;
  for (int k = 0; k <= chi.size(); ++k) {
    auto layer = enumerate_F_k(chi, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

/// CS_k(χ): multisets ψ of k parts φ ∈ F(χ) with Σ ψ(φ)φ ≤ χ.
std::vector<Multiset<AMultiset>> enumerate_CS_k(const AMultiset& chi, int k, ZeroParts zero = ZeroParts::Include);

/// Σ ψ(φ)φ
AMultiset weighted_sum(const Multiset<AMultiset>& psi);

/// CP_k(j): multisets λ over ℤ≥0 with k elements and Σ λ(m)m = j.
std::vector<Multiset<int>> enumerate_CP_k(int j, int k, ZeroParts zero = ZeroParts::Include);

}  // namespace cartanz

#endif
