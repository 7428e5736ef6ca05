#include "pcs/keytheorem.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace pcs {

namespace {

std::string fmt_opt(const std::optional<long>& v) { return v ? std::to_string(*v) : "infinite"; }

}  // namespace

BivariatePolynomial approximate_root(const BivariatePolynomial& F, long d) {
  const FieldSpec& K = F.owner();
  int n = F.deg_y();
  if (n <= 0 || d <= 0 || n % d != 0) fail(errc::unsupported_input, "root index must divide the degree");
  if (!F.y_coefficient(n).is_zero() &&
      (F.y_coefficient(n).degree() != 0 || !F.y_coefficient(n).coeff(0).is_one()))
    fail(errc::unsupported_input, "approximate roots need a monic polynomial");
  std::int64_t p = K.characteristic();
  if (p > 0 && d % p == 0)
    fail(errc::characteristic_divides_index, "characteristic divides the root index " + std::to_string(d));
  if (d == 1) return F;
  int m = static_cast<int>(n / d);
  FieldElement d_inv = K.from_integer(d).inverse();
  BivariatePolynomial G = BivariatePolynomial::monomial(K, 0, m, K.one());
  // Tschirnhausen: repeatedly cancel the top coefficient of F - G^d
  for (int iter = 0; iter <= m + 1; ++iter) {
    BivariatePolynomial E = F - G.pow(static_cast<int>(d));
    if (E.is_zero() || E.deg_y() < n - m) return G;
    int j = E.deg_y();
    UniPoly c = E.y_coefficient(j);
    BivariatePolynomial corr =
        BivariatePolynomial::from_y_coefficients(K, {c.scaled(d_inv)}).times_monomial(0, j - (n - m), K.one());
    G = G + corr;
  }
  fail(errc::internal, "Tschirnhausen iteration did not settle");
}

const BivariatePolynomial& RootTower::root(int j) const {
  return roots_.at(static_cast<size_t>(j + 1));
}

const BivariatePolynomial& RootTower::curve(int level) const {
  return levels_.at(static_cast<size_t>(level)).curve;
}

const ValueSemigroup& RootTower::level_semigroup(int level) const {
  return levels_.at(static_cast<size_t>(level)).S;
}

const Branch& RootTower::level_branch(int level) const {
  return *levels_.at(static_cast<size_t>(level)).branch;
}

long RootTower::top_value(int j) const { return top_values_.at(static_cast<size_t>(j + 1)); }

long RootTower::level_valuation(int level, const BivariatePolynomial& g) {
  auto v = levels_[static_cast<size_t>(level)].branch->valuation(g);
  if (!v) fail(errc::internal, "unexpected infinite valuation inside the tower");
  return *v;
}

RootTower RootTower::build(const BivariatePolynomial& f, const ValueSemigroup& S) {
  const FieldSpec& K = f.owner();
  std::int64_t p = K.characteristic();
  long v0 = S.multiplicity();
  int g = S.genus();
  if (f.deg_y() != static_cast<int>(v0) || f.order() != static_cast<int>(v0))
    fail(errc::unsupported_input, "tower needs a Weierstrass polynomial of degree mult(f)");
  UniPoly leadc = f.y_coefficient(static_cast<int>(v0));
  if (leadc.degree() != 0 || !leadc.coeff(0).is_one())
    fail(errc::unsupported_input, "tower needs a monic Weierstrass polynomial");
  for (int j = 0; j < g; ++j)
    if (p > 0 && S.gcd_chain()[static_cast<size_t>(j)] % p == 0)
      fail(errc::characteristic_divides_index,
           "characteristic divides e_" + std::to_string(j) + ": no approximate root");

  RootTower T;
  T.roots_.push_back(BivariatePolynomial::variable(K, Var::X));
  for (int j = 0; j < g; ++j)
    T.roots_.push_back(approximate_root(f, S.gcd_chain()[static_cast<size_t>(j)]));

  // levels 0..g: curve of genus `level`
  for (int level = 0; level <= g; ++level) {
    BivariatePolynomial curve = (level == g) ? f : T.roots_[static_cast<size_t>(level + 1)];
    auto branch = std::make_unique<Branch>(curve);
    ValueSemigroup LS = semigroup_of(*branch);
    long e = S.gcd_chain()[static_cast<size_t>(level)];
    std::vector<long> expected;
    for (int i = 0; i <= level; ++i) expected.push_back(S.generators()[static_cast<size_t>(i)] / e);
    if (level == 0) expected = {1};
    if (LS.generators() != expected) {
      std::ostringstream os;
      os << "root of genus " << level << " has semigroup " << LS.to_string();
      fail(errc::tower_invariant_violated, os.str());
    }
    T.levels_.emplace_back(std::move(curve), std::move(branch), std::move(LS));
    if (level >= 1) {
      T.levels_.back().n = S.ladder()[static_cast<size_t>(level - 1)];
      T.levels_.back().v_top =
          S.generators()[static_cast<size_t>(level)] / S.gcd_chain()[static_cast<size_t>(level)];
    }
  }

  // I(f, f_j) = v_(j+1)
  Branch& top = *T.levels_.back().branch;
  T.top_values_.push_back(static_cast<long>(v0));  // I(f, X) = v_0
  {
    auto vx = top.valuation(BivariatePolynomial::variable(K, Var::X));
    if (!vx || *vx != v0) fail(errc::tower_invariant_violated, "I(f, X) differs from v_0");
  }
  for (int j = 0; j < g; ++j) {
    auto v = top.valuation(T.roots_[static_cast<size_t>(j + 1)]);
    if (!v || *v != S.generators()[static_cast<size_t>(j + 1)]) {
      std::ostringstream os;
      os << "I(f, f_" << j << ") = " << fmt_opt(v) << ", expected v_" << (j + 1) << " = "
         << S.generators()[static_cast<size_t>(j + 1)];
      fail(errc::tower_invariant_violated, os.str());
    }
    T.top_values_.push_back(*v);
  }

  // Abhyankar-Moh defect bounds: deg_Y(C_l - f_(l-1)^(n_l)) < deg C_l - deg f_(l-1)
  for (int level = 1; level <= g; ++level) {
    const BivariatePolynomial& C = T.levels_[static_cast<size_t>(level)].curve;
    const BivariatePolynomial& R = T.roots_[static_cast<size_t>(level)];
    BivariatePolynomial G = R.pow(static_cast<int>(T.levels_[static_cast<size_t>(level)].n)) - C;
    if (!G.is_zero() && G.deg_y() >= C.deg_y() - R.deg_y())
      fail(errc::tower_invariant_violated, "approximate-root defect degree too large");
  }

  // drop thresholds for the truncated reduction loops
  for (int level = 1; level <= g; ++level) {
    Level& L = T.levels_[static_cast<size_t>(level)];
    StandardBasis sbJ = standard_basis({L.curve.partial_derivative(Var::X),
                                        L.curve.partial_derivative(Var::Y)});
    long l = primary_exponent(sbJ);
    long amax = *std::max_element(L.S.apery().begin(), L.S.apery().end());
    L.drop_threshold = l * L.S.multiplicity() + amax + 4 * L.S.conductor() + 32;
  }
  return T;
}

BivariatePolynomial RootTower::tilde_at_level(int level, long t) {
  // lift of q(level-1, t): n_l f_(l-1)^(n_l - 1) q - sum P_i [G_l, f_(j_i)]
  // where C_l = f_(l-1)^(n_l) - G_l; equal to sum P_i [C_l, f_(j_i)] up to
  // certified-high-value drops.
  const FieldSpec& K = curve(level).owner();
  Level& L = levels_[static_cast<size_t>(level)];
  QsElement q = q_at_level(level - 1, t);
  const BivariatePolynomial& R = roots_[static_cast<size_t>(level)];  // f_(l-1)
  BivariatePolynomial G = R.pow(static_cast<int>(L.n)) - L.curve;
  BivariatePolynomial out =
      (R.pow(static_cast<int>(L.n - 1)) * q.value).scaled(K.from_integer(L.n));
  for (const auto& tt : q.trace)
    out = out - tt.factor * bracket(G, roots_[static_cast<size_t>(tt.root_index + 1)]);

  long expect = L.S.conductor() - 1 + L.n * t;
  long got = level_valuation(level, out);
  if (got != expect)
    fail(errc::internal, "tilde value " + std::to_string(got) + " differs from claim " +
                             std::to_string(expect));
  if (out.deg_y() >= L.curve.deg_y())
    fail(errc::internal, "tilde element exceeds the degree bound");
  return out;
}

QsElement RootTower::degree_reduce(int level, QsElement h, long m) {
  const FieldSpec& K = curve(level).owner();
  Level& L = levels_[static_cast<size_t>(level)];
  const BivariatePolynomial& R = roots_[static_cast<size_t>(level)];
  const ValueSemigroup& Ssub = levels_[static_cast<size_t>(level - 1)].S;
  long c_l = L.S.conductor();
  long c_sub = Ssub.conductor();
  if (m % L.n == 0) fail(errc::hypothesis_violated, "n_l divides the excess m");
  if (m <= L.n * (c_sub - 1)) fail(errc::hypothesis_violated, "excess m too small for reduction");
  long start_value = level_valuation(level, h.value);
  if (start_value != c_l - 1 + m) fail(errc::hypothesis_violated, "reduction input value mismatch");

  BivariatePolynomial D = R.pow(static_cast<int>(L.n - 1));
  int target_deg = L.curve.deg_y() - R.deg_y();
  BivariatePolynomial accum(K);
  BivariatePolynomial cur = h.value;
  std::vector<TraceTerm> trace = std::move(h.trace);
  long prev_value = -1;
  size_t guard = 0;
  while (!cur.is_zero()) {
    if (++guard > 4096) fail(errc::internal, "degree reduction did not terminate");
    long v = level_valuation(level, cur);
    if (prev_value >= 0 && v <= prev_value)
      fail(errc::internal, "degree reduction failed to increase the value");
    prev_value = v;
    long excess = v - (c_l - 1);
    if (excess > L.drop_threshold) break;  // certified tail in J(C_l)
    if (excess % L.n != 0) {
      auto [hh, hp] = divide_by_monic_y(cur, D);
      accum = accum + hp;
      if (hh.is_zero()) {
        cur = BivariatePolynomial(K);
        break;
      }
      long vh = level_valuation(level - 1, hh);
      long u = vh - c_sub + 1;
      if (u <= 0 || !Ssub.contains(u))
        fail(errc::not_in_semigroup, "reduction offset " + std::to_string(u) +
                                         " is not in the subtower semigroup");
      if (L.n * u <= m) fail(errc::internal, "reduction offset fails n_l u > m");
      BivariatePolynomial tq = tilde_at_level(level, u);
      BivariatePolynomial dh = D * hh;
      // match leading t-coefficients along the level branch
      const Parametrization& par = L.branch->parametrization(
          static_cast<int>(std::max(level_valuation(level, dh), level_valuation(level, tq))) + 8);
      UniSeries s1 = eval_at_series(dh, par.x, par.y);
      UniSeries s2 = eval_at_series(tq, par.x, par.y);
      if (!s1.order() || !s2.order() || *s1.order() != *s2.order())
        fail(errc::internal, "tilde element does not match the quotient value");
      FieldElement alpha = s1.leading() / s2.leading();
      cur = dh - tq.scaled(alpha);
      QsElement qsub = q_at_level(level - 1, u);
      for (const auto& tt : qsub.trace)
        trace.push_back({tt.factor.scaled(-alpha), tt.root_index});
    } else {
      long u = excess / L.n;
      if (!Ssub.contains(u) || u <= 0)
        fail(errc::not_in_semigroup, "divisible excess lands outside the subtower semigroup");
      if (L.n * u <= m) fail(errc::internal, "reduction offset fails n_l u > m");
      BivariatePolynomial tq = tilde_at_level(level, u);
      const Parametrization& par = L.branch->parametrization(static_cast<int>(v) + 8);
      UniSeries s1 = eval_at_series(cur, par.x, par.y);
      UniSeries s2 = eval_at_series(tq, par.x, par.y);
      FieldElement alpha = s1.leading() / s2.leading();
      cur = cur - tq.scaled(alpha);
      QsElement qsub = q_at_level(level - 1, u);
      for (const auto& tt : qsub.trace)
        trace.push_back({tt.factor.scaled(-alpha), tt.root_index});
    }
  }

  if (accum.is_zero()) fail(errc::internal, "degree reduction produced an empty remainder");
  long out_value = level_valuation(level, accum);
  if (out_value != start_value)
    fail(errc::internal, "degree reduction changed the intersection value");
  if (accum.deg_y() >= target_deg)
    fail(errc::internal, "degree reduction missed the degree target");
  return QsElement{h.s, std::move(accum), std::move(trace)};
}

QsElement RootTower::q_at_level(int level, long s) {
  Level& L = levels_[static_cast<size_t>(level)];
  auto it = L.cache.find(s);
  if (it != L.cache.end()) return it->second;
  const FieldSpec& K = curve(level).owner();
  if (s <= 0 || !L.S.contains(s)) fail(errc::not_in_semigroup, "s = " + std::to_string(s));

  QsElement q{s, BivariatePolynomial(K), {}};
  if (level == 0) {
    // genus zero: q = X^(s-1) [C_0, X]
    BivariatePolynomial br = bracket(L.curve, BivariatePolynomial::variable(K, Var::X));
    BivariatePolynomial P = BivariatePolynomial::monomial(K, static_cast<int>(s - 1), 0, K.one());
    q.value = P * br;
    q.trace = {{P, -1}};
  } else {
    auto digits = L.S.canonical_representation(s);
    if (!digits) fail(errc::not_in_semigroup, "no canonical representation");
    long w = digits->back();
    long t = (s - w * L.v_top) / L.n;
    if (w == 0) {
      // the lift of q(level-1, t) already realizes s + c - 1
      QsElement sub = q_at_level(level - 1, t);
      q.value = tilde_at_level(level, t);
      q.trace = sub.trace;
    } else if (t == 0 && w == 1) {
      q.value = bracket(L.curve, roots_[static_cast<size_t>(level)]);
      q.trace = {{BivariatePolynomial::constant(K.one()), level - 1}};
    } else if (t == 0) {
      QsElement prev = q_at_level(level, (w - 1) * L.v_top);
      QsElement reduced = degree_reduce(level, prev, (w - 1) * L.v_top);
      q.value = roots_[static_cast<size_t>(level)] * reduced.value;
      q.trace.reserve(reduced.trace.size());
      for (const auto& tt : reduced.trace)
        q.trace.push_back({roots_[static_cast<size_t>(level)] * tt.factor, tt.root_index});
    } else {
      QsElement qw = q_at_level(level, w * L.v_top);
      QsElement reduced = degree_reduce(level, qw, w * L.v_top);
      QsElement subt = q_at_level(level - 1, t);
      const TraceTerm& first = subt.trace.front();
      BivariatePolynomial mult = first.factor * roots_[static_cast<size_t>(first.root_index + 1)];
      q.value = mult * reduced.value;
      q.trace.reserve(reduced.trace.size());
      for (const auto& tt : reduced.trace) q.trace.push_back({mult * tt.factor, tt.root_index});
    }
  }

  // contracts: value, degree, and the trace conditions
  long got = level_valuation(level, q.value);
  long expect = s + L.S.conductor() - 1;
  if (got != expect)
    fail(errc::internal, "q value " + std::to_string(got) + " differs from " + std::to_string(expect));
  if (q.value.deg_y() >= L.curve.deg_y())
    fail(errc::internal, "q element exceeds the degree bound");
  bool first = true;
  for (const auto& tt : q.trace) {
    BivariatePolynomial pf = tt.factor * roots_[static_cast<size_t>(tt.root_index + 1)];
    if (pf.deg_y() >= L.curve.deg_y()) fail(errc::internal, "trace term exceeds the degree bound");
    long vv = level_valuation(level, pf);
    if (first && vv != s) fail(errc::internal, "leading trace term does not realize s");
    if (!first && vv <= s) fail(errc::internal, "non-leading trace term is not above s");
    first = false;
  }

  L.cache.emplace(s, q);
  return q;
}

BivariatePolynomial RootTower::tilde_q(long t) { return tilde_at_level(genus(), t); }

QsElement RootTower::q_element(long s) { return q_at_level(genus(), s); }

RootTower::VDecomposition RootTower::vmodule_decompose(const BivariatePolynomial& h) {
  const FieldSpec& K = h.owner();
  int g = genus();
  if (h.deg_y() >= curve(g).deg_y())
    fail(errc::unsupported_input, "decomposition needs deg_Y h < deg_Y f");
  VDecomposition out{{}, BivariatePolynomial(K), BivariatePolynomial(K)};

  // peel base-f_(l-1) digits level by level
  std::function<void(int, const BivariatePolynomial&, std::vector<int>&)> rec =
      [&](int level, const BivariatePolynomial& part, std::vector<int>& J) {
        if (part.is_zero()) return;
        if (level == 0) {
          out.coefficients.insert_or_assign(J, part.y_coefficient(0));
          return;
        }
        const BivariatePolynomial& R = roots_[static_cast<size_t>(level)];
        long n = levels_[static_cast<size_t>(level)].n;
        BivariatePolynomial rest = part;
        for (int d = 0; d < static_cast<int>(n) && !rest.is_zero(); ++d) {
          auto [quot, rem] = divide_by_monic_y(rest, R);
          J.push_back(d);
          rec(level - 1, rem, J);
          J.pop_back();
          rest = quot;
        }
        if (!rest.is_zero()) fail(errc::internal, "digit expansion overflowed the ladder");
      };
  std::vector<int> J;
  rec(g, h, J);

  // assemble the split along the top digit (J is built top-level-first)
  long ng = levels_[static_cast<size_t>(g)].n;
  const BivariatePolynomial& R = roots_[static_cast<size_t>(g)];
  for (const auto& [idx, a] : out.coefficients) {
    BivariatePolynomial termpoly = BivariatePolynomial::from_y_coefficients(K, {a});
    // idx holds digits top-down: idx[0] is the f_(g-1) digit
    for (size_t lvl = 0; lvl < idx.size(); ++lvl) {
      int level = g - static_cast<int>(lvl);
      termpoly = termpoly * roots_[static_cast<size_t>(level)].pow(idx[lvl]);
    }
    if (!idx.empty() && idx[0] == static_cast<int>(ng) - 1) {
      auto [quot, rem] = divide_by_monic_y(termpoly, R.pow(static_cast<int>(ng - 1)));
      if (!rem.is_zero()) fail(errc::internal, "split term not divisible by the top root power");
      out.h_second = out.h_second + quot;
    } else {
      out.h_prime = out.h_prime + termpoly;
    }
  }
  return out;
}

std::vector<KeyFamilyEntry> key_family(RootTower& tower) {
  int g = tower.genus();
  const ValueSemigroup& S = tower.level_semigroup(g);
  const FieldSpec& K = tower.curve(g).owner();
  std::vector<KeyFamilyEntry> out;
  for (long alpha : S.sweep_set()) {
    auto digits = S.canonical_representation(alpha);
    if (!digits) fail(errc::internal, "sweep value has no canonical representation");
    BivariatePolynomial realizer =
        BivariatePolynomial::monomial(K, static_cast<int>((*digits)[0]), 0, K.one());
    for (int i = 1; i <= g; ++i)
      realizer = realizer * tower.root(i - 1).pow(static_cast<int>((*digits)[static_cast<size_t>(i)]));
    if (realizer.deg_y() >= tower.curve(g).deg_y())
      fail(errc::internal, "key realizer exceeds the degree bound");
    out.push_back({alpha, std::move(realizer)});
  }
  return out;
}

namespace {

// rank of the normal forms as vectors over the standard monomials
long nf_rank(const std::vector<BivariatePolynomial>& nfs, const StandardBasis& sb) {
  std::vector<std::pair<int, int>> monos;
  int trunc = sb.truncation_degree();
  std::vector<std::vector<char>> covered(static_cast<size_t>(trunc),
                                         std::vector<char>(static_cast<size_t>(trunc), 0));
  for (const auto& [a, b] : sb.lead_monomials())
    for (int i = a; i < trunc; ++i)
      for (int j = b; i + j < trunc; ++j) covered[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
  for (int i = 0; i < trunc; ++i)
    for (int j = 0; i + j < trunc; ++j)
      if (!covered[static_cast<size_t>(i)][static_cast<size_t>(j)]) monos.emplace_back(i, j);
  std::map<std::pair<int, int>, size_t> index;
  for (size_t k = 0; k < monos.size(); ++k) index[monos[k]] = k;

  const FieldSpec& K = sb.owner();
  std::vector<std::vector<FieldElement>> rows;
  for (const auto& nf : nfs) {
    std::vector<FieldElement> row(monos.size(), K.zero());
    for (const auto& t : nf.terms()) {
      auto it = index.find({t.xe, t.ye});
      if (it == index.end()) fail(errc::internal, "normal form has a non-standard monomial");
      row[it->second] = t.c;
    }
    rows.push_back(std::move(row));
  }
  // Gaussian elimination
  long rank = 0;
  size_t col = 0;
  for (; col < monos.size() && rank < static_cast<long>(rows.size()); ++col) {
    size_t pivot = rows.size();
    for (size_t r = static_cast<size_t>(rank); r < rows.size(); ++r)
      if (!rows[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot == rows.size()) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[pivot]);
    FieldElement inv = rows[static_cast<size_t>(rank)][col].inverse();
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<size_t>(rank) || rows[r][col].is_zero()) continue;
      FieldElement c = rows[r][col] * inv;
      for (size_t cc = col; cc < monos.size(); ++cc)
        rows[r][cc] -= c * rows[static_cast<size_t>(rank)][cc];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

KeyTheoremVerdict verify_key_theorem(const BivariatePolynomial& f, std::vector<QsRow>* rows) {
  const FieldSpec& K = f.owner();
  Branch branch(f);
  ValueSemigroup S = semigroup_of(branch);
  if (!S.tame(K.characteristic()))
    fail(errc::unsupported_input, "the key construction requires a tame semigroup");
  RootTower tower = RootTower::build(f, S);

  KeyTheoremVerdict verdict{};
  verdict.conductor = S.conductor();

  auto mu = milnor_number(f);
  verdict.mu = mu.value_or(-1);
  verdict.mu_equals_conductor = mu && *mu == S.conductor();
  if (!verdict.mu_equals_conductor)
    verdict.failures.push_back("mu = " + fmt_opt(mu) + " differs from c = " +
                               std::to_string(S.conductor()));

  StandardBasis sbJ =
      standard_basis({f.partial_derivative(Var::X), f.partial_derivative(Var::Y)});
  std::vector<BivariatePolynomial> nfs;
  for (const auto& entry : key_family(tower)) nfs.push_back(normal_form(entry.realizer, sbJ));
  long rank = nf_rank(nfs, sbJ);
  verdict.family_independent_mod_jacobian = rank == S.conductor();
  if (!verdict.family_independent_mod_jacobian)
    verdict.failures.push_back("key family rank " + std::to_string(rank) + " below c = " +
                               std::to_string(S.conductor()));

  verdict.q_elements_valid = true;
  verdict.q_count = 0;
  for (long s = 1; s <= 2 * S.conductor(); ++s) {
    if (!S.contains(s)) continue;
    QsElement q = tower.q_element(s);  // value/degree/trace contracts checked inside
    bool member = membership(q.value, sbJ);
    ++verdict.q_count;
    if (rows) {
      auto v = branch.valuation(q.value);
      rows->push_back({s, v.value_or(-1), q.value.deg_y(), member});
    }
    if (!member) {
      verdict.q_elements_valid = false;
      verdict.failures.push_back("q_" + std::to_string(s) + " is not in the Jacobian ideal");
    }
  }
  return verdict;
}

}  // namespace pcs
