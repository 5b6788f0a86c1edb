#include "cartanz/linalg.hpp"
#include "cartanz/zform.hpp"

namespace cartanz {

namespace {

const Expansion kOne{{Integer(1), {}}};

Integer sign_power(int e) { return e % 2 == 0 ? Integer(1) : Integer(-1); }

Integer power(Integer base, int e) {
  Integer out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

Expansion scaled(Expansion e, const Integer& c) {
  for (auto& t : e) t.coeff *= c;
  return e;
}

void append(Expansion& into, const Expansion& more) { into.insert(into.end(), more.begin(), more.end()); }

// Multisets of size j over {1, …, μ}.
std::vector<Multiset<int>> index_multisets(std::size_t mu, int j) {
  Multiset<int> box;
  for (std::size_t v = 1; v <= mu; ++v) box.add(static_cast<int>(v), j);
  return enumerate_F_k(box, j);
}

}  // namespace

std::optional<IntegralGenerator> ZForm::root_generator(LieIndex u, std::optional<ABasis> b, int r) const {
  if (r == 0) return EvenDivided{u, b.value_or(0), 0};
  if (!b) return std::nullopt;
  if (table_.generator(u).is_odd()) {
    if (r != 1) throw InvalidDividedPower("divided power of an odd generator");
    return OddGenerator{u, *b};
  }
  return EvenDivided{u, *b, r};
}

Expansion ZForm::bracket_terms(const LieCombination& z, std::optional<ABasis> b) const {
  Expansion out;
  if (!b) return out;
  for (const auto& [w, c] : z) {
    const auto& g = table_.generator(w);
    if (g.is_cartan) {
      // h_i⊗b = −p_i(χ_b)
      out.push_back({-c, {CartanP{g.cartan_index, AMultiset{{*b, 1}}}}});
    } else {
      out.push_back({c, {*root_generator(w, b, 1)}});
    }
  }
  return out;
}

std::vector<Integer> ZForm::coroot(LieIndex x_alpha) const {
  const auto& g = table_.generator(x_alpha);
  const auto minus = table_.root_vector(-g.weight, 1);
  if (g.is_cartan || g.height != 0 || !minus) throw IdentityError("coroot needs a root pair of height 0");
  std::vector<Integer> h(table_.cartan_rank(), Integer(0));
  for (const auto& [w, c] : table_.bracket(x_alpha, *minus)) {
    if (!table_.generator(w).is_cartan) throw IdentityError("[x_α, x_−α] leaves the Cartan subalgebra");
    h[table_.generator(w).cartan_index] = c;
  }
  return h;
}

Expansion ZForm::cartan_decompose(const EnvelopingElement& u) const {
  Expansion out;
  EnvelopingElement rest = u;
  while (!rest.is_zero()) {
    const Word* top = nullptr;
    for (const auto& [w, c] : rest.terms()) {
      if (!top || w.size() > top->size()) top = &w;
    }
    const Word w = *top;
    const Rational c = rest.coefficient(w);
    std::vector<AMultiset> parts(table_.cartan_rank());
    for (Letter l : w) {
      const auto& mg = oracle_->map_generator(l);
      if (!table_.generator(mg.lie).is_cartan) throw std::logic_error("element is not in U(h⊗A)");
      parts[table_.generator(mg.lie).cartan_index].add(mg.coeff);
    }
    IntegralMonomial m;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!parts[i].empty()) m.emplace_back(CartanP{i, parts[i]});
    }
    std::sort(m.begin(), m.end(), [&](const auto& x, const auto& y) { return order_.key(x) < order_.key(y); });
    const auto P = evaluate(m);
    const Rational z = c / P.coefficient(w);
    if (!is_integer(z)) {
      throw IntegralityViolation("coefficient " + to_string(z) + " of " + str(m) + " in a Cartan decomposition");
    }
    out.push_back({to_integer(z), m});
    rest.add_scaled(P, -z);
  }
  return out;
}

Expansion ZForm::d_function(LieIndex x, int j, int k, std::optional<ABasis> d, std::optional<ABasis> c) const {
  if (!d || !c) return {};
  Expansion out;
  const auto& A = coefficients();
  for (const auto& lambda : enumerate_CP_k(j, k)) {
    IntegralMonomial m;
    bool zero = false;
    for (const auto& [part, count] : lambda.counts()) {
      const auto coeff = part == 0 ? c : A.mul(A.power(*d, part), c);
      const auto g = root_generator(x, coeff, count);
      if (!g) {
        zero = true;
        break;
      }
      m.push_back(*g);
    }
    if (!zero) out.push_back({1, std::move(m)});
  }
  return out;
}

Expansion ZForm::even_times_p(LieIndex x, ABasis a, int r, const CartanP& p, bool p_first) const {
  const auto& A = coefficients();
  const int eta = table_.generator(x).weight.at(p.i) * (p_first ? -1 : 1);
  Expansion out;
  for (const auto& psi : enumerate_CS_k(p.chi, r)) {
    Integer coeff = 1;
    IntegralMonomial xs;
    bool zero = false;
    for (const auto& [phi, n] : psi.counts()) {
      const int size = phi.size();
      coeff *= power(gen_binomial(Integer(eta + size - 1), size) * multinomial_m(phi), n);
      const auto g = root_generator(x, A.mul(std::optional<ABasis>(a), pi(phi, A)), n);
      if (!g || coeff == 0) {
        zero = true;
        break;
      }
      xs.push_back(*g);
    }
    if (zero) continue;
    IntegralMonomial m;
    const CartanP rest{p.i, p.chi - weighted_sum(psi)};
    if (!p_first) m.emplace_back(rest);
    m.insert(m.end(), xs.begin(), xs.end());
    if (p_first) m.emplace_back(rest);
    out.push_back({coeff, std::move(m)});
  }
  return out;
}

std::optional<Identity> ZForm::classify(const IntegralGenerator& L, const IntegralGenerator& R) const {
  const auto* le = std::get_if<EvenDivided>(&L);
  const auto* lp = std::get_if<CartanP>(&L);
  const auto* lo = std::get_if<OddGenerator>(&L);
  const auto* re = std::get_if<EvenDivided>(&R);
  const auto* rp = std::get_if<CartanP>(&R);
  const auto* ro = std::get_if<OddGenerator>(&R);
  if (lp && rp) return Identity::PCommute;
  if (le && rp) return Identity::EvenTimesP;
  if (lp && re) return Identity::PTimesEven;
  if (lo && rp) return Identity::OddTimesP;
  if (lp && ro) return Identity::PTimesOdd;

  auto info = [&](LieIndex u) -> const LieGenerator& { return table_.generator(u); };
  auto simple_height_zero = [&](LieIndex u) {
    const auto& g = info(u);
    return g.height == 0 && g.k == 1 && table_.multiplicity(g.weight) == 1;
  };

  if (le && re) {
    const auto& b = info(le->root);
    const auto& g = info(re->root);
    if (le->root == re->root) return le->b == re->b ? Identity::EvenMerge : Identity::Supercommute;
    const Weight sum = b.weight + g.weight;
    if (is_zero(sum)) {
      if (simple_height_zero(le->root) && simple_height_zero(re->root)) return Identity::RootPair;
      return std::nullopt;
    }
    if (!table_.is_root(sum)) return Identity::Supercommute;
    if (!table_.is_root(scaled(b.weight, 2) + g.weight) && !table_.is_root(b.weight + scaled(g.weight, 2))) {
      return Identity::EvenSum;
    }
    if (simple_height_zero(le->root) && g.height != 0) return Identity::EvenString;
    if (simple_height_zero(le->root) && simple_height_zero(re->root)) return Identity::EvenRank2;
    return std::nullopt;
  }
  if (le && ro) {
    const auto& a = info(le->root);
    const auto& g = info(ro->root);
    if (!table_.is_root(a.weight + g.weight)) return Identity::Supercommute;
    if (!table_.is_root(scaled(a.weight, 2) + g.weight)) return Identity::EvenOdd;
    if (simple_height_zero(le->root)) return Identity::EvenOddString;
    return std::nullopt;
  }
  if (lo && ro) {
    if (lo->root == ro->root && lo->c == ro->c) return Identity::OddSquare;
    const Weight sum = info(lo->root).weight + info(ro->root).weight;
    if (is_zero(sum)) return Identity::OddDual;
    return Identity::OddOdd;
  }
  return std::nullopt;
}

std::vector<ZForm::Rank2Term> ZForm::rank2_terms(const EvenDivided& L, const EvenDivided& R) const {
  const auto& A = coefficients();
  const Weight& alpha = table_.generator(L.root).weight;
  const Weight& zeta = table_.generator(R.root).weight;
  struct Pair {
    int j, k;
    LieIndex x;
  };
  std::vector<Pair> pairs;
  for (int j = 1; j <= L.r; ++j) {
    for (int k = 1; k <= R.r; ++k) {
      const Weight w = scaled(alpha, j) + scaled(zeta, k);
      if (const auto x = table_.root_vector(w, 1)) pairs.push_back({j, k, *x});
    }
  }
  std::vector<Rank2Term> out;
  std::vector<int> psi(pairs.size(), 0);
  std::function<void(std::size_t, int, int)> go = [&](std::size_t pos, int used_j, int used_k) {
    if (pos == pairs.size()) {
      IntegralMonomial m;
      bool zero = false;
      auto push = [&](std::optional<IntegralGenerator> g) {
        if (!g) zero = true;
        else m.push_back(*g);
      };
      push(root_generator(R.root, R.b, R.r - used_k));
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (psi[i] == 0) continue;
        const auto coeff = A.mul(A.power(L.b, pairs[i].j), A.power(R.b, pairs[i].k));
        push(root_generator(pairs[i].x, coeff, psi[i]));
      }
      push(root_generator(L.root, L.b, L.r - used_j));
      if (!zero) out.push_back({std::move(m)});
      return;
    }
    for (int c = 0; used_j + c * pairs[pos].j <= L.r && used_k + c * pairs[pos].k <= R.r; ++c) {
      psi[pos] = c;
      go(pos + 1, used_j + c * pairs[pos].j, used_k + c * pairs[pos].k);
    }
    psi[pos] = 0;
  };
  go(0, 0, 0);
  return out;
}

std::vector<Rational> ZForm::rank2_signs(const EvenDivided& L, const EvenDivided& R) const {
  const auto key = std::make_pair(L, R);
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = rank2_memo_.find(key); it != rank2_memo_.end()) return it->second;
  }
  const auto terms = rank2_terms(L, R);
  const auto lhs = oracle_->multiply(evaluate(IntegralGenerator(L)), evaluate(IntegralGenerator(R)));
  std::vector<EnvelopingElement> columns;
  std::map<Word, Eigen::Index> rows;
  for (const auto& [w, c] : lhs.terms()) rows.emplace(w, 0);
  for (const auto& t : terms) {
    columns.push_back(evaluate(t.factors));
    for (const auto& [w, c] : columns.back().terms()) rows.emplace(w, 0);
  }
  Eigen::Index r = 0;
  for (auto& [w, idx] : rows) idx = r++;
  QMatrix m = QMatrix::Zero(r, static_cast<Eigen::Index>(columns.size()));
  QVector v = QVector::Zero(r);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [w, q] : columns[c].terms()) m(rows.at(w), static_cast<Eigen::Index>(c)) = q;
  }
  for (const auto& [w, q] : lhs.terms()) v(rows.at(w)) = q;
  const auto x = linalg::solve(m, v);
  if (!x) throw IdentityError("rank-2 identity: no signs reproduce " + str(IntegralMonomial{L, R}));
  std::vector<Rational> signs(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) signs[c] = (*x)(static_cast<Eigen::Index>(c));
  std::lock_guard lock(memo_mutex_);
  rank2_memo_.emplace(key, signs);
  return signs;
}

Expansion ZForm::apply(Identity id, const IntegralGenerator& L, const IntegralGenerator& R) const {
  const auto& A = coefficients();
  auto fail = [&](const std::string& why) {
    return IdentityError(identity_name(id) + " does not apply to " + str(L) + " · " + str(R) + ": " + why);
  };
  auto info = [&](LieIndex u) -> const LieGenerator& { return table_.generator(u); };
  auto even = [&](const IntegralGenerator& g) -> const EvenDivided& {
    if (const auto* e = std::get_if<EvenDivided>(&g)) return *e;
    throw fail("expected an even divided power");
  };
  auto odd = [&](const IntegralGenerator& g) -> const OddGenerator& {
    if (const auto* o = std::get_if<OddGenerator>(&g)) return *o;
    throw fail("expected an odd generator");
  };
  auto cartan = [&](const IntegralGenerator& g) -> const CartanP& {
    if (const auto* p = std::get_if<CartanP>(&g)) return *p;
    throw fail("expected p_i");
  };
  auto single = [](std::optional<IntegralGenerator> g) -> Expansion {
    if (!g) return {};
    return {{Integer(1), {*g}}};
  };
  auto simple_height_zero = [&](LieIndex u) {
    const auto& g = info(u);
    return !g.is_cartan && g.height == 0 && g.k == 1 && table_.multiplicity(g.weight) == 1;
  };
  const Expansion swapped{{Integer(1), {R, L}}};

  switch (id) {
    case Identity::PCommute:
      cartan(L), cartan(R);
      return swapped;

    case Identity::EvenMerge: {
      const auto& x = even(L);
      const auto& y = even(R);
      if (x.root != y.root || x.b != y.b) throw fail("different factors");
      return {{binomial(x.r + y.r, y.r), {EvenDivided{x.root, x.b, x.r + y.r}}}};
    }

    case Identity::RootPair: {
      const auto& xa = even(L);
      const auto& xm = even(R);
      if (!simple_height_zero(xa.root) || !simple_height_zero(xm.root) ||
          !is_zero(info(xa.root).weight + info(xm.root).weight)) {
        throw fail("needs x_{α,1}, x_{−α,1} with α of height 0 and multiplicity 1");
      }
      const auto h = coroot(xa.root);
      const auto ab = A.mul(xa.b, xm.b);
      const int r = xa.r, s = xm.r;
      // d^0·c = c also when d = ab vanishes
      auto D = [&](LieIndex x, int j, int k, ABasis c) -> Expansion {
        if (j == 0) return single(root_generator(x, c, k));
        return d_function(x, j, k, ab, c);
      };
      Expansion out;
      for (int j = 0; j <= std::min(r, s); ++j) {
        for (int k = 0; j + k <= std::min(r, s); ++k) {
          for (int v = 0; j + k + v <= std::min(r, s); ++v) {
            Expansion P = kOne;
            if (k > 0) {
              if (!ab) continue;
              P = cartan_decompose(oracle_->p(h, AMultiset{{*ab, k}}));
            }
            auto term = product(product(D(xm.root, j, s - j - k - v, xm.b), P), D(xa.root, v, r - j - k - v, xa.b));
            append(out, scaled(std::move(term), sign_power(j + k + v)));
          }
        }
      }
      return out;
    }

    case Identity::EvenTimesP: {
      const auto& x = even(L);
      return even_times_p(x.root, x.b, x.r, cartan(R), false);
    }
    case Identity::PTimesEven: {
      const auto& x = even(R);
      return even_times_p(x.root, x.b, x.r, cartan(L), true);
    }
    case Identity::OddTimesP: {
      const auto& x = odd(L);
      return even_times_p(x.root, x.c, 1, cartan(R), false);
    }
    case Identity::PTimesOdd: {
      const auto& x = odd(R);
      return even_times_p(x.root, x.c, 1, cartan(L), true);
    }

    case Identity::EvenSum: {
      const auto& xb = even(L);
      const auto& xg = even(R);
      const Weight& beta = info(xb.root).weight;
      const Weight& gamma = info(xg.root).weight;
      const Weight sum = beta + gamma;
      if (!table_.is_root(sum) || table_.is_root(scaled(beta, 2) + gamma) || table_.is_root(beta + scaled(gamma, 2))) {
        throw fail("needs β+γ ∈ R and 2β+γ, β+2γ ∉ R");
      }
      const auto c = table_.c_vector(xb.root, xg.root);
      const auto ab = A.mul(xb.b, xg.b);
      Expansion out;
      for (int j = 0; j <= std::min(xb.r, xg.r); ++j) {
        Expansion middle;
        if (j == 0) {
          middle = kOne;
        } else if (ab) {
          for (const auto& psi : index_multisets(c.size(), j)) {
            Integer coeff = 1;
            IntegralMonomial m;
            for (const auto& [v, n] : psi.counts()) {
              coeff *= power(c[static_cast<std::size_t>(v - 1)], n);
              m.push_back(*root_generator(*table_.root_vector(sum, v), ab, n));
            }
            if (coeff != 0) middle.push_back({coeff, std::move(m)});
          }
        }
        append(out, product(product(single(root_generator(xg.root, xg.b, xg.r - j)), middle),
                            single(root_generator(xb.root, xb.b, xb.r - j))));
      }
      return out;
    }

    case Identity::EvenString: {
      const auto& xa = even(L);
      const auto& xt = even(R);
      if (!simple_height_zero(xa.root) || info(xt.root).is_odd() || info(xt.root).height == 0) {
        throw fail("needs α of height 0 and ϑ even of nonzero height");
      }
      const Weight& alpha = info(xa.root).weight;
      const Weight& theta = info(xt.root).weight;
      const auto c = table_.c_vector(xa.root, xt.root);
      std::optional<StructureConstants::DoubleBracket> db;
      if (table_.is_root(scaled(alpha, 2) + theta)) {
        db = table_.double_bracket(xa.root, xt.root);
        if (!db) throw fail("[x_α, [x_α, x_ϑ]] is not ±2 times a root vector");
      }
      const auto ab = A.mul(xa.b, xt.b);
      const auto a2b = A.mul(A.mul(xa.b, xa.b), std::optional<ABasis>(xt.b));
      const int r = xa.r, s = xt.r;
      Expansion out;
      for (int j2 = 0; j2 <= s && 2 * j2 <= r; ++j2) {
        if (j2 > 0 && (!db || !a2b)) break;
        for (int j1 = 0; j1 + j2 <= s && j1 + 2 * j2 <= r; ++j1) {
          Expansion mid2 = kOne;
          if (j2 > 0) mid2 = {{power(Integer(db->sign), j2), {EvenDivided{db->target, *a2b, j2}}}};
          Expansion mid1;
          if (j1 == 0) {
            mid1 = kOne;
          } else if (ab && !c.empty()) {
            for (const auto& psi : index_multisets(c.size(), j1)) {
              Integer coeff = 1;
              IntegralMonomial m;
              for (const auto& [v, n] : psi.counts()) {
                coeff *= power(c[static_cast<std::size_t>(v - 1)], n);
                m.push_back(*root_generator(*table_.root_vector(alpha + theta, v), ab, n));
              }
              if (coeff != 0) mid1.push_back({coeff, std::move(m)});
            }
          }
          auto term = product(product(product(single(root_generator(xt.root, xt.b, s - j1 - j2)), mid2), mid1),
                              single(root_generator(xa.root, xa.b, r - j1 - 2 * j2)));
          append(out, term);
        }
      }
      return out;
    }

    case Identity::EvenRank2: {
      const auto& xa = even(L);
      const auto& xz = even(R);
      if (!simple_height_zero(xa.root) || !simple_height_zero(xz.root)) throw fail("needs α, ζ of height 0");
      const auto terms = rank2_terms(xa, xz);
      const auto signs = rank2_signs(xa, xz);
      Expansion out;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        if (signs[i] == 0) continue;
        if (!is_integer(signs[i])) {
          throw IntegralityViolation("rank-2 sign " + to_string(signs[i]) + " at " + str(terms[i].factors));
        }
        out.push_back({to_integer(signs[i]), terms[i].factors});
      }
      return out;
    }

    case Identity::OddSquare: {
      const auto& x = odd(L);
      const auto& y = odd(R);
      if (x.root != y.root) throw fail("different root vectors");
      const auto& br = table_.bracket(x.root, x.root);
      if (br.empty()) return {};
      if (br.size() != 1) throw fail("[x_γ, x_γ] is not a root vector");
      const auto& [target, coeff] = br.front();
      if (abs(coeff) != 2) throw fail("[x_γ, x_γ] has coefficient " + to_string(coeff));
      const auto g = root_generator(target, A.mul(x.c, y.c), 1);
      if (!g) return {};
      return {{coeff / 2, {*g}}};
    }

    case Identity::OddDual: {
      const auto& x = odd(L);
      const auto& y = odd(R);
      if (!is_zero(info(x.root).weight + info(y.root).weight)) throw fail("needs γ + ζ = 0");
      Expansion out{{Integer(-1), {R, L}}};
      append(out, bracket_terms(table_.bracket(x.root, y.root), A.mul(x.c, y.c)));
      return out;
    }

    case Identity::OddOdd: {
      const auto& x = odd(L);
      const auto& y = odd(R);
      const Weight sum = info(x.root).weight + info(y.root).weight;
      if (is_zero(sum)) throw fail("γ + ζ = 0");
      Expansion out{{Integer(-1), {R, L}}};
      const auto ab = A.mul(x.c, y.c);
      const auto c = table_.c_vector(x.root, y.root);
      if (ab) {
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (c[j] != 0) out.push_back({c[j], {*root_generator(*table_.root_vector(sum, static_cast<int>(j + 1)), ab, 1)}});
        }
      }
      return out;
    }

    case Identity::EvenOdd:
    case Identity::EvenOddString: {
      const auto& xa = even(L);
      const auto& xg = odd(R);
      const auto once = table_.bracket(xa.root, xg.root);
      const auto twice = table_.iterated_bracket(xa.root, once);
      std::optional<StructureConstants::DoubleBracket> db;
      if (id == Identity::EvenOdd) {
        if (!twice.empty()) throw fail("[x_α, [x_α, x_γ]] ≠ 0");
      } else {
        if (!simple_height_zero(xa.root)) throw fail("needs β of height 0");
        if (!table_.iterated_bracket(xa.root, twice).empty()) throw fail("third bracket does not vanish");
        db = table_.double_bracket(xa.root, xg.root);
        if (!db) throw fail("[x_β, [x_β, x_γ]] is not ±2 times a root vector");
      }
      Expansion out = swapped;
      const auto ab = A.mul(xa.b, xg.c);
      const auto c = table_.c_vector(xa.root, xg.root);
      const Weight sum = info(xa.root).weight + info(xg.root).weight;
      if (ab) {
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (c[j] == 0) continue;
          append(out, product({{c[j], {*root_generator(*table_.root_vector(sum, static_cast<int>(j + 1)), ab, 1)}}},
                              single(root_generator(xa.root, xa.b, xa.r - 1))));
        }
      }
      const auto a2b = A.mul(A.mul(xa.b, xa.b), std::optional<ABasis>(xg.c));
      if (db && a2b && xa.r >= 2) {
        append(out, product({{Integer(db->sign), {*root_generator(db->target, a2b, 1)}}},
                            single(root_generator(xa.root, xa.b, xa.r - 2))));
      }
      return out;
    }

    case Identity::Supercommute: {
      auto lie = [&](const IntegralGenerator& g) -> std::pair<LieIndex, ABasis> {
        if (const auto* e = std::get_if<EvenDivided>(&g)) return {e->root, e->b};
        if (const auto* o = std::get_if<OddGenerator>(&g)) return {o->root, o->c};
        throw fail("p_i has its own identities");
      };
      const auto [u, a] = lie(L);
      const auto [v, b] = lie(R);
      if (!table_.bracket(u, v).empty() && A.mul(a, b)) throw fail("the bracket does not vanish");
      const bool both_odd = info(u).is_odd() && info(v).is_odd();
      return {{Integer(both_odd ? -1 : 1), {R, L}}};
    }
  }
  throw fail("unknown identity");
}

Expansion ZForm::straighten_pair(const IntegralGenerator& L, const IntegralGenerator& R) const {
  const auto key = std::make_pair(L, R);
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = pair_memo_.find(key); it != pair_memo_.end()) return it->second;
  }
  Expansion out;
  if (const auto id = classify(L, R)) {
    out = apply(*id, L, R);
  } else if (const auto flipped = classify(R, L)) {
    // R·L = σ L·R + C  ⇒  L·R = σ R·L − σ C
    auto z = collect(apply(*flipped, R, L));
    const IntegralMonomial lead = without_trivial({L, R});
    const auto it = z.find(lead);
    if (it == z.end() || abs(it->second) != 1) {
      throw IdentityError(identity_name(*flipped) + " has no unit leading term at " + str(IntegralMonomial{R, L}));
    }
    const Integer sigma = it->second;
    z.erase(it);
    out.push_back({sigma, {R, L}});
    for (const auto& [m, c] : z) out.push_back({-sigma * c, m});
  } else if (degree(L) == 1 && degree(R) == 1 && !std::holds_alternative<CartanP>(L) &&
             !std::holds_alternative<CartanP>(R)) {
    auto lie = [](const IntegralGenerator& g) -> std::pair<LieIndex, ABasis> {
      if (const auto* e = std::get_if<EvenDivided>(&g)) return {e->root, e->b};
      const auto& o = std::get<OddGenerator>(g);
      return {o.root, o.c};
    };
    const auto [u, a] = lie(L);
    const auto [v, b] = lie(R);
    const bool both_odd = table_.generator(u).is_odd() && table_.generator(v).is_odd();
    out.push_back({Integer(both_odd ? -1 : 1), {R, L}});
    append(out, bracket_terms(table_.bracket(u, v), coefficients().mul(a, b)));
  } else {
    throw IdentityError("no straightening identity for " + str(IntegralMonomial{L, R}));
  }
  std::lock_guard lock(memo_mutex_);
  pair_memo_.emplace(key, out);
  return out;
}

}  // namespace cartanz
