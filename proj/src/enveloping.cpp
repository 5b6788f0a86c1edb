#include "cartanz/enveloping.hpp"

#include <numeric>
#include <sstream>

namespace cartanz {

EnvelopingElement EnvelopingElement::scalar(const Rational& c) { return word({}, c); }

EnvelopingElement EnvelopingElement::word(Word w, const Rational& c) {
  EnvelopingElement e;
  e.add_term(w, c);
  return e;
}

Rational EnvelopingElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void EnvelopingElement::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void EnvelopingElement::add_scaled(const EnvelopingElement& other, const Rational& c) {
  if (c == 0) return;
  for (const auto& [w, q] : other.terms_) add_term(w, q * c);
}

EnvelopingElement& EnvelopingElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, q] : terms_) q *= c;
  return *this;
}

int EnvelopingElement::degree() const {
  if (terms_.empty()) throw std::domain_error("degree of 0 is undefined");
  std::size_t d = 0;
  for (const auto& [w, q] : terms_) d = std::max(d, w.size());
  return static_cast<int>(d);
}

bool EnvelopingElement::has_integral_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return is_integer(t.second); });
}

std::size_t EnvelopingAlgebra::WordLetterHash::operator()(const std::pair<Word, Letter>& key) const noexcept {
  std::size_t h = std::hash<Letter>{}(key.second);
  for (Letter l : key.first) h = h * 1000003u ^ l;
  return h;
}

EnvelopingAlgebra::EnvelopingAlgebra(StructureConstants sc, MonoidAlgebra A, std::vector<MapGenerator> alphabet)
    : sc_(std::move(sc)), A_(std::move(A)), alphabet_(std::move(alphabet)) {
  const auto nb = static_cast<std::size_t>(A_.size());
  if (alphabet_.empty()) {
    for (LieIndex u = 0; u < sc_.size(); ++u) {
      for (ABasis b = 0; b < A_.size(); ++b) alphabet_.push_back({u, b});
    }
  }
  if (alphabet_.size() != sc_.size() * nb) throw std::invalid_argument("alphabet does not list every generator");
  code_.assign(alphabet_.size(), static_cast<Letter>(alphabet_.size()));
  for (std::size_t pos = 0; pos < alphabet_.size(); ++pos) {
    const auto& g = alphabet_[pos];
    if (g.lie >= sc_.size() || g.coeff < 0 || g.coeff >= A_.size()) throw std::invalid_argument("alphabet entry out of range");
    auto& slot = code_[g.lie * nb + static_cast<std::size_t>(g.coeff)];
    if (slot != alphabet_.size()) throw std::invalid_argument("alphabet lists a generator twice");
    slot = static_cast<Letter>(pos);
  }
}

std::string EnvelopingAlgebra::letter_name(Letter g) const {
  const auto& m = alphabet_[g];
  return sc_.generator(m.lie).name + "⊗" + A_.label(m.coeff);
}

std::string EnvelopingAlgebra::str(const EnvelopingElement& u) const {
  if (u.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [w, q] : u.terms()) {
    if (!first) out << " + ";
    first = false;
    out << to_string(q);
    for (Letter l : w) out << "*[" << letter_name(l) << "]";
  }
  return out.str();
}

EnvelopingElement EnvelopingAlgebra::generator(LieIndex u, ABasis b) const {
  return EnvelopingElement::word({letter(u, b)});
}

EnvelopingElement EnvelopingAlgebra::lie_element(const LieCombination& z, std::optional<ABasis> b) const {
  EnvelopingElement e;
  if (!b) return e;
  for (const auto& [w, c] : z) e.add_term({letter(w, *b)}, Rational(c));
  return e;
}

EnvelopingElement EnvelopingAlgebra::bracket(Letter g, Letter h) const {
  const auto& x = alphabet_[g];
  const auto& y = alphabet_[h];
  return lie_element(sc_.bracket(x.lie, y.lie), A_.mul(x.coeff, y.coeff));
}

EnvelopingElement EnvelopingAlgebra::mul_word_letter(const Word& w, Letter g) const {
  if (w.empty() || w.back() < g || (w.back() == g && !is_odd(g))) {
    Word out = w;
    out.push_back(g);
    return EnvelopingElement::word(std::move(out));
  }
  const std::pair<Word, Letter> key{w, g};
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = word_letter_memo_.find(key); it != word_letter_memo_.end()) return it->second;
  }
  const Letter last = w.back();
  const Word head(w.begin(), w.end() - 1);
  EnvelopingElement result;
  if (last == g) {
    // odd g: g·g = ½[g, g]
    const auto square = bracket(g, g);
    for (const auto& [t, c] : square.terms()) result.add_scaled(mul_word_letter(head, t.front()), c / 2);
  } else {
    // last > g: last·g = ±g·last + [last, g]
    const Rational sign = is_odd(last) && is_odd(g) ? -1 : 1;
    result.add_scaled(times_letter(mul_word_letter(head, g), last), sign);
    const auto correction = bracket(last, g);
    for (const auto& [t, c] : correction.terms()) result.add_scaled(mul_word_letter(head, t.front()), c);
  }
  std::lock_guard lock(memo_mutex_);
  word_letter_memo_.emplace(key, result);
  return result;
}

EnvelopingElement EnvelopingAlgebra::times_letter(const EnvelopingElement& u, Letter g) const {
  EnvelopingElement out;
  for (const auto& [w, c] : u.terms()) out.add_scaled(mul_word_letter(w, g), c);
  return out;
}

EnvelopingElement EnvelopingAlgebra::multiply(const EnvelopingElement& u, const EnvelopingElement& v) const {
  EnvelopingElement out;
  for (const auto& [wv, cv] : v.terms()) {
    EnvelopingElement partial = u;
    for (Letter l : wv) partial = times_letter(partial, l);
    out.add_scaled(partial, cv);
  }
  return out;
}

EnvelopingElement EnvelopingAlgebra::product(const std::vector<EnvelopingElement>& factors) const {
  EnvelopingElement out = EnvelopingElement::one();
  for (const auto& f : factors) out = multiply(out, f);
  return out;
}

bool EnvelopingAlgebra::is_odd(const EnvelopingElement& u) const {
  std::optional<bool> parity;
  for (const auto& [w, c] : u.terms()) {
    bool odd = false;
    for (Letter l : w) odd ^= is_odd(l);
    if (parity && *parity != odd) throw std::invalid_argument("element is not homogeneous");
    parity = odd;
  }
  return parity.value_or(false);
}

EnvelopingElement EnvelopingAlgebra::supercommutator(const EnvelopingElement& u, const EnvelopingElement& v) const {
  const Rational sign = is_odd(u) && is_odd(v) ? -1 : 1;
  return multiply(u, v) - sign * multiply(v, u);
}

EnvelopingElement EnvelopingAlgebra::divided_power(LieIndex u, ABasis b, int r) const {
  if (r < 0) throw InvalidDividedPower("negative divided power");
  if (r >= 2 && sc_.generator(u).is_odd()) throw InvalidDividedPower("divided power of an odd generator: " + letter_name(letter(u, b)));
  const Letter g = letter(u, b);
  EnvelopingElement out = EnvelopingElement::one();
  for (int i = 0; i < r; ++i) out = times_letter(out, g);
  out *= Rational(1) / Rational(factorial(static_cast<unsigned>(r)));
  return out;
}

EnvelopingElement EnvelopingAlgebra::p(const std::vector<Integer>& h, const AMultiset& chi) const {
  if (chi.empty()) return EnvelopingElement::one();
  const auto key = std::make_pair(h, chi);
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = p_memo_.find(key); it != p_memo_.end()) return it->second;
  }
  LieCombination hz;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] != 0) hz.emplace_back(sc_.cartan(i), h[i]);
  }
  EnvelopingElement sum;
  for (const auto& psi : enumerate_F(chi)) {
    if (psi.empty()) continue;
    const auto term = lie_element(hz, pi(psi, A_));
    if (term.is_zero()) continue;
    sum.add_scaled(multiply(term, p(h, chi - psi)), Rational(multinomial_m(psi)));
  }
  sum *= Rational(-1) / Rational(chi.size());
  std::lock_guard lock(memo_mutex_);
  p_memo_.emplace(key, sum);
  return sum;
}

EnvelopingElement EnvelopingAlgebra::p_i(std::size_t i, const AMultiset& chi) const {
  std::vector<Integer> h(sc_.cartan_rank(), 0);
  h.at(i) = 1;
  return p(h, chi);
}

}  // namespace cartanz
