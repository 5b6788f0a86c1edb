#include "cartanz/zform.hpp"

namespace cartanz {

namespace {

constexpr int kMaxDepth = 4096;

}  // namespace

Expansion ZForm::merge(const IntegralGenerator& L, const IntegralGenerator& R) const {
  if (std::holds_alternative<EvenDivided>(L) && std::holds_alternative<EvenDivided>(R)) {
    return apply(Identity::EvenMerge, L, R);
  }
  if (std::holds_alternative<OddGenerator>(L) && std::holds_alternative<OddGenerator>(R)) {
    return apply(Identity::OddSquare, L, R);
  }
  if (std::holds_alternative<CartanP>(L) && std::holds_alternative<CartanP>(R)) {
    return cartan_decompose(oracle_->multiply(evaluate(L), evaluate(R)));
  }
  throw IdentityError("cannot merge " + str(IntegralMonomial{L, R}));
}

ZCombination ZForm::rewrite(const IntegralMonomial& input, int depth) const {
  if (depth > kMaxDepth) throw std::runtime_error("rewriting does not terminate at " + str(input));
  const IntegralMonomial m = without_trivial(input);
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = rewrite_memo_.find(m); it != rewrite_memo_.end()) return it->second;
  }
  ZCombination out;
  std::size_t at = m.size();
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    if (!(order_.key(m[i]) < order_.key(m[i + 1]))) {
      at = i;
      break;
    }
  }
  if (at == m.size()) {
    out.emplace(m, Integer(1));
  } else {
    try {
      const bool same = order_.key(m[at]) == order_.key(m[at + 1]);
      const auto local = same ? merge(m[at], m[at + 1]) : straighten_pair(m[at], m[at + 1]);
      for (const auto& t : local) {
        if (t.coeff == 0) continue;
        IntegralMonomial next(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(at));
        next.insert(next.end(), t.factors.begin(), t.factors.end());
        next.insert(next.end(), m.begin() + static_cast<std::ptrdiff_t>(at) + 2, m.end());
        for (const auto& [b, c] : rewrite(next, depth + 1)) accumulate(out, b, c * t.coeff);
      }
    } catch (IntegralityViolation& e) {
      e.trace.push_back(str(m));
      throw;
    }
  }
  std::lock_guard lock(memo_mutex_);
  rewrite_memo_.emplace(m, out);
  return out;
}

ZCombination ZForm::rewrite_to_basis(const IntegralMonomial& m) const { return rewrite(m, 0); }

ZCombination ZForm::rewrite_to_basis(const ZCombination& z) const {
  ZCombination out;
  for (const auto& [m, c] : z) {
    for (const auto& [b, d] : rewrite(m, 0)) accumulate(out, b, c * d);
  }
  return out;
}

}  // namespace cartanz
