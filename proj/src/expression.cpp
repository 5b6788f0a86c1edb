#include "cartanz/expression.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cartanz {

namespace {

constexpr std::string_view kTensor = "⊗";

class Parser {
 public:
  Parser(const std::string& text, const StructureConstants& sc, const MonoidAlgebra& A,
         const std::vector<Weight>& simple)
      : s_(text), sc_(sc), A_(A), simple_(simple) {}

  IntegralMonomial monomial() {
    IntegralMonomial out;
    skip();
    if (peek_word("1") && rest_is_blank(pos_ + 1)) return out;
    out.push_back(factor());
    while (accept("*")) out.push_back(factor());
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool rest_is_blank(std::size_t from) const {
    return std::all_of(s_.begin() + static_cast<std::ptrdiff_t>(from), s_.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  }
  bool peek_word(std::string_view w) {
    skip();
    return s_.compare(pos_, w.size(), w) == 0;
  }
  bool accept(std::string_view w) {
    if (!peek_word(w)) return false;
    pos_ += w.size();
    return true;
  }
  void expect(std::string_view w) {
    if (!accept(w)) fail("expected '" + std::string(w) + "'");
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits || pos_ - digits > 9) {
      pos_ = start;
      fail("expected an integer");
    }
    return std::stol(s_.substr(start, pos_ - start));
  }

  ABasis label() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::string_view(":,)}*] \t\n").find(s_[pos_]) == std::string_view::npos) ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    auto b = A_.parse_label(name);
    if (!b) {
      pos_ = start;
      fail("unknown basis label '" + name + "' of " + A_.name());
    }
    return *b;
  }

  Weight root() {
    skip();
    const std::size_t start = pos_;
    if (accept("(")) {
      Weight w;
      do {
        w.push_back(static_cast<int>(integer()));
      } while (accept(","));
      expect(")");
      return w;
    }
    const bool negative = accept("-");
    expect("a");
    const long i = integer();
    if (i < 1 || static_cast<std::size_t>(i) > simple_.size()) {
      pos_ = start;
      fail("simple root index " + std::to_string(i) + " out of range 1.." + std::to_string(simple_.size()));
    }
    const Weight& w = simple_[static_cast<std::size_t>(i - 1)];
    return negative ? -w : w;
  }

  std::pair<LieIndex, ABasis> generator() {
    expect("x[");
    const std::size_t at = pos_;
    const Weight w = root();
    if (w.size() != sc_.cartan_rank()) {
      pos_ = at;
      fail("weight " + weight_string(w) + " has " + std::to_string(w.size()) + " entries, expected " +
           std::to_string(sc_.cartan_rank()));
    }
    expect(",");
    const long k = integer();
    expect("]");
    const auto u = sc_.root_vector(w, static_cast<int>(k));
    if (!u) {
      pos_ = at;
      fail("no root vector x[" + weight_string(w) + "," + std::to_string(k) + "]");
    }
    if (!accept(kTensor)) expect("@");
    return {*u, label()};
  }

  IntegralGenerator factor() {
    skip();
    const std::size_t start = pos_;
    if (accept("dp(")) {
      const auto [u, b] = generator();
      expect(",");
      const long r = integer();
      expect(")");
      if (sc_.generator(u).is_odd()) {
        pos_ = start;
        fail("dp of the odd root vector " + sc_.generator(u).name + "; use odd(...)");
      }
      if (r < 0) {
        pos_ = start;
        fail("negative divided-power exponent");
      }
      return EvenDivided{u, b, static_cast<int>(r)};
    }
    if (accept("odd(")) {
      const auto [u, b] = generator();
      expect(")");
      if (!sc_.generator(u).is_odd()) {
        pos_ = start;
        fail("odd(...) of the even root vector " + sc_.generator(u).name);
      }
      return OddGenerator{u, b};
    }
    if (accept("p(")) {
      const long i = integer();
      if (i < 1 || static_cast<std::size_t>(i) > sc_.cartan_rank()) {
        pos_ = start;
        fail("Cartan index " + std::to_string(i) + " out of range 1.." + std::to_string(sc_.cartan_rank()));
      }
      expect(",");
      expect("{");
      AMultiset chi;
      if (!accept("}")) {
        do {
          const ABasis b = label();
          expect(":");
          const long n = integer();
          if (n < 0) fail("negative multiplicity");
          chi.add(b, static_cast<int>(n));
        } while (accept(","));
        expect("}");
      }
      expect(")");
      return CartanP{static_cast<std::size_t>(i - 1), chi};
    }
    fail("expected dp(, odd( or p(");
  }

  const std::string& s_;
  const StructureConstants& sc_;
  const MonoidAlgebra& A_;
  const std::vector<Weight>& simple_;
  std::size_t pos_ = 0;
};

}  // namespace

IntegralMonomial parse_monomial(const std::string& text, const StructureConstants& sc, const MonoidAlgebra& A,
                                const std::vector<Weight>& simple) {
  return Parser(text, sc, A, simple).monomial();
}

std::vector<Weight> simple_roots(const StructureConstants& sc) {
  std::map<Weight, int> positive;
  for (const auto& g : sc.generators()) {
    if (is_positive_root(g)) positive.emplace(g.weight, g.height);
  }
  std::set<Weight> decomposable;
  for (const auto& [a, ha] : positive) {
    for (const auto& [b, hb] : positive) {
      if (const Weight s = a + b; positive.count(s)) decomposable.insert(s);
    }
  }
  std::vector<Weight> out;
  for (const auto& [w, h] : positive) {
    if (!decomposable.count(w)) out.push_back(w);
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const Weight& a, const Weight& b) { return positive.at(a) < positive.at(b); });
  return out;
}

}  // namespace cartanz
