#include "pcs/branch.hpp"

#include <algorithm>
#include <unordered_map>

namespace pcs {

namespace {

FieldElement binom_elt(const FieldSpec& F, long n, long r) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return F.from_rational(mpq_class(b));
}

// h(X, X*(Z+theta)) / X^n, the recentered strict transform.
BivariatePolynomial blowup_transform(const BivariatePolynomial& h, const FieldElement& theta) {
  const FieldSpec& F = h.owner();
  int n = h.order();
  std::unordered_map<std::uint64_t, FieldElement> acc;
  bool theta_zero = theta.is_zero();
  // cache theta powers
  std::vector<FieldElement> tpow{F.one()};
  auto theta_pow = [&](int e) -> const FieldElement& {
    while (static_cast<int>(tpow.size()) <= e) tpow.push_back(tpow.back() * theta);
    return tpow[static_cast<size_t>(e)];
  };
  for (const auto& t : h.terms()) {
    // X^i Y^j -> X^(i+j) (Z+theta)^j
    int xe = t.xe + t.ye - n;
    if (theta_zero) {
      std::uint64_t key = (static_cast<std::uint64_t>(xe) << 32) | static_cast<std::uint64_t>(t.ye);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, t.c);
      else
        it->second += t.c;
      continue;
    }
    for (int k = 0; k <= t.ye; ++k) {
      FieldElement c = t.c * binom_elt(F, t.ye, k) * theta_pow(t.ye - k);
      if (c.is_zero()) continue;
      std::uint64_t key = (static_cast<std::uint64_t>(xe) << 32) | static_cast<std::uint64_t>(k);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, std::move(c));
      else
        it->second += c;
    }
  }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [key, c] : acc)
    if (!c.is_zero())
      ts.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xFFFFFFFFu), std::move(c)});
  return BivariatePolynomial(F, std::move(ts));
}

// Solve h(x, z) = 0 at a smooth point for one coordinate as a series in the
// other; returns (x(t), z(t)) with the free coordinate equal to t.
std::pair<UniSeries, UniSeries> solve_smooth(const BivariatePolynomial& h, int prec) {
  const FieldSpec& F = h.owner();
  FieldElement beta = h.coeff(0, 1);
  if (!beta.is_zero()) {
    // z = phi(x) by Newton iteration; h_Z(0,0) = beta is a unit
    BivariatePolynomial hz = h.partial_derivative(Var::Y);
    UniSeries x = UniSeries::t(F, prec);
    UniSeries phi(F, prec);
    int steps = 2;
    for (int m = 1; m < prec; m *= 2) ++steps;
    for (int s = 0; s < steps; ++s) {
      UniSeries val = eval_at_series(h, x, phi);
      UniSeries der = eval_at_series(hz, x, phi);
      phi = (phi - (val * der.inverse()).truncated(prec)).truncated(prec);
    }
    if (!eval_at_series(h, x, phi).is_zero_to_precision())
      fail(errc::internal, "smooth-point solve did not converge");
    return {x, phi};
  }
  auto [z, psi] = solve_smooth(h.swap_vars(), prec);
  return {psi, z};
}

}  // namespace

TangentLine tangent_data(const BivariatePolynomial& f) {
  const FieldSpec& F = f.owner();
  if (f.is_zero() || f.is_unit()) fail(errc::unsupported_input, "tangent data needs f in the maximal ideal");
  BivariatePolynomial form = f.lowest_form();
  int n = f.order();
  std::int64_t p = F.characteristic();
  // strip the p-power part: n = p^e * m
  int e = 0;
  std::int64_t pe = 1;
  if (p > 0) {
    std::int64_t nn = n;
    while (nn % p == 0) {
      nn /= p;
      ++e;
      pe *= p;
    }
  }
  int m = static_cast<int>(n / pe);
  // the form must be G(X^(p^e), Y^(p^e)) for a degree-m form G
  std::vector<FieldElement> g(static_cast<size_t>(m + 1), F.zero());  // g[i]: coeff of U^i V^(m-i)
  for (const auto& t : f.terms()) {
    if (t.xe + t.ye != n) continue;
    if (t.xe % pe != 0) return {n, true, false, std::nullopt};
    g[static_cast<size_t>(t.xe / pe)] = t.c;
  }
  FieldElement a = g[0];
  if (a.is_zero()) {
    // only U^m may survive: the tangent line is X
    for (int i = 0; i < m; ++i)
      if (!g[static_cast<size_t>(i)].is_zero()) return {n, true, false, std::nullopt};
    if (g[static_cast<size_t>(m)].is_zero()) fail(errc::internal, "empty tangent form");
    return {n, false, true, std::nullopt};
  }
  // G should be a*(V - theta'*U)^m
  FieldElement m_inv = F.from_integer(m).inverse();
  FieldElement theta_p = -(g[1] / a) * m_inv;
  FieldElement pw = F.one();
  for (int i = 0; i <= m; ++i) {
    FieldElement expect = a * binom_elt(F, m, i) * pw;
    if (expect != g[static_cast<size_t>(i)]) return {n, true, false, std::nullopt};
    pw *= -theta_p;
  }
  FieldElement theta = theta_p;
  for (int i = 0; i < e; ++i) theta = theta.frobenius_root();
  return {n, false, false, theta};
}

std::vector<int> BlowupChain::multiplicities() const {
  std::vector<int> m;
  m.reserve(steps.size());
  for (const auto& s : steps) m.push_back(s.mult);
  return m;
}

long BlowupChain::conductor() const {
  long c = 0;
  for (const auto& s : steps) c += static_cast<long>(s.mult) * (s.mult - 1);
  return c;
}

std::variant<BranchData, ExpandFailure> hn_expand(const BivariatePolynomial& f,
                                                  int target_precision) {
  const FieldSpec& F = f.owner();
  if (f.is_zero() || f.is_unit()) fail(errc::unsupported_input, "expansion needs f in the maximal ideal");
  if (!is_reduced(f)) fail(errc::not_reduced, "expansion needs a reduced equation");

  BlowupChain chain;
  BivariatePolynomial h = f;
  int stage = 0;
  while (h.order() > 1) {
    if (++stage > 4096) fail(errc::internal, "blowup chain did not terminate");
    TangentLine tl = tangent_data(h);
    if (tl.split)
      return ExpandFailure{stage, "tangent cone at stage " + std::to_string(stage) +
                                      " is not a power of a single line"};
    BlowupStep step{tl.mult, tl.line_is_x, tl.line_is_x ? F.zero() : *tl.theta};
    if (step.swapped) h = h.swap_vars();
    h = blowup_transform(h, step.theta);
    chain.steps.push_back(std::move(step));
  }
  chain.terminal = h;

  int prec = std::max(target_precision, 2);
  auto [xt, zt] = solve_smooth(*chain.terminal, prec);
  UniSeries x = xt, y = zt;
  for (size_t i = chain.steps.size(); i-- > 0;) {
    const BlowupStep& s = chain.steps[i];
    UniSeries theta_series = UniSeries::from_poly(UniPoly::constant(s.theta), prec);
    UniSeries ynew = (x * (y + theta_series)).truncated(prec);
    y = ynew;
    if (s.swapped) std::swap(x, y);
  }
  x = x.truncated(prec);
  y = y.truncated(prec);

  if (!eval_at_series(f, x, y).is_zero_to_precision())
    fail(errc::internal, "parametrization does not annihilate the equation");
  int n = f.order();
  auto ox = x.order(), oy = y.order();
  int minord = std::min(ox.value_or(prec), oy.value_or(prec));
  if (minord != n) fail(errc::internal, "parametrization is not primitive");

  return BranchData{std::move(chain), Parametrization{std::move(x), std::move(y)}};
}

bool is_irreducible(const BivariatePolynomial& f) {
  if (f.is_zero() || f.is_unit()) return false;
  if (f.order() == 1) return true;
  auto r = hn_expand(f, 16);
  return std::holds_alternative<BranchData>(r);
}

Branch::Branch(BivariatePolynomial f) : f_(std::move(f)) {
  auto r = hn_expand(f_, 8);
  if (auto* fail_info = std::get_if<ExpandFailure>(&r))
    fail(errc::unsupported_input, "equation is not a branch: " + fail_info->reason);
  auto& data = std::get<BranchData>(r);
  chain_ = std::move(data.chain);
  mult_ = f_.order();
  // default precision driven by the conductor, which the chain gives exactly
  int prec = static_cast<int>(std::max<long>(2 * chain_.conductor() + 4 * mult_ + 8, 32));
  if (data.par.precision() >= prec) {
    par_ = std::move(data.par);
  } else {
    auto r2 = hn_expand(f_, prec);
    par_ = std::move(std::get<BranchData>(r2).par);
  }
}

const Parametrization& Branch::parametrization(int min_precision) const {
  if (!par_ || par_->precision() < min_precision) {
    auto r = hn_expand(f_, std::max(min_precision, 8));
    par_ = std::move(std::get<BranchData>(r).par);
  }
  return *par_;
}

namespace {

long bezout_bound(const BivariatePolynomial& f, const BivariatePolynomial& g) {
  long tf = std::max(f.total_degree(), 1), tg = std::max(g.total_degree(), 1);
  return 2 * tf * tg + 16;
}

}  // namespace

std::optional<long> Branch::valuation(const BivariatePolynomial& g) const {
  if (g.is_zero()) return std::nullopt;
  if (g.is_unit() && g.order() == 0) return 0;
  const Parametrization& par = parametrization();
  UniSeries s = eval_at_series(g, par.x, par.y);
  if (auto o = s.order()) return static_cast<long>(*o);
  long bound = bezout_bound(f_, g);
  const Parametrization& par2 = parametrization(static_cast<int>(bound) + 4);
  UniSeries s2 = eval_at_series(g, par2.x, par2.y);
  if (auto o = s2.order()) return static_cast<long>(*o);
  return std::nullopt;  // g vanishes on the branch
}

std::optional<long> Branch::derivative_order(const BivariatePolynomial& g) const {
  const Parametrization& par = parametrization();
  UniSeries ds = eval_at_series(g, par.x, par.y).derivative();
  if (auto o = ds.order()) return static_cast<long>(*o);
  // escalate to the bracket-based bound: v(g') <= v([f,g]) when finite
  BivariatePolynomial br = f_.partial_derivative(Var::X) * g.partial_derivative(Var::Y) -
                           f_.partial_derivative(Var::Y) * g.partial_derivative(Var::X);
  long bound = br.is_zero() ? bezout_bound(f_, g) : bezout_bound(f_, br);
  const Parametrization& par2 = parametrization(static_cast<int>(bound) + 4);
  UniSeries ds2 = eval_at_series(g, par2.x, par2.y).derivative();
  if (auto o = ds2.order()) return static_cast<long>(*o);
  return std::nullopt;  // zero to the escalation bound
}

std::optional<long> intersection_multiplicity(const BivariatePolynomial& f,
                                              const BivariatePolynomial& g) {
  Branch b(f);
  return b.valuation(g);
}

}  // namespace pcs
