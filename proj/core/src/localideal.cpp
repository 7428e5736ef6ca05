#include "pcs/localideal.hpp"

#include <algorithm>
#include <functional>
#include <list>

namespace pcs {

namespace {

struct Reducer {
  BivariatePolynomial poly;  // monic
  int lead_x, lead_y, ecart;
};

Reducer make_reducer(BivariatePolynomial p) {
  p = p.scaled(p.lead().c.inverse());
  const Term& lt = p.lead();
  int ecart = p.total_degree() - p.order();
  return {std::move(p), lt.xe, lt.ye, ecart};
}

bool divides(int ax, int ay, int bx, int by) { return ax <= bx && ay <= by; }

// Mora weak normal form with ecart selection against basis + local tail,
// everything truncated modulo M^trunc.
BivariatePolynomial mora_nf(BivariatePolynomial h, const std::vector<Reducer>& basis, int trunc) {
  h = h.truncated_at_degree(trunc);
  std::list<Reducer> local;
  size_t guard = 0;
  while (!h.is_zero()) {
    if (++guard > 2'000'000) fail(errc::internal, "Mora reduction did not terminate");
    const Term& lt = h.lead();
    const Reducer* best = nullptr;
    for (const auto& g : basis)
      if (divides(g.lead_x, g.lead_y, lt.xe, lt.ye) && (!best || g.ecart < best->ecart)) best = &g;
    for (const auto& g : local)
      if (divides(g.lead_x, g.lead_y, lt.xe, lt.ye) && (!best || g.ecart < best->ecart)) best = &g;
    if (!best) return h;
    int h_ecart = h.total_degree() - h.order();
    if (best->ecart > h_ecart) local.push_back(make_reducer(h));
    h = h.axpy_monomial(lt.c, lt.xe - best->lead_x, lt.ye - best->lead_y, best->poly)
            .truncated_at_degree(trunc);
  }
  return h;
}

struct Pair {
  int i, j;
  int lcm_deg;
};

// Standard basis of <gens> + M^trunc; returns monic interreduced elements.
std::vector<Reducer> complete_basis(const std::vector<BivariatePolynomial>& gens, int trunc) {
  std::vector<Reducer> G;
  for (const auto& g : gens) {
    BivariatePolynomial t = g.truncated_at_degree(trunc);
    if (!t.is_zero()) G.push_back(make_reducer(std::move(t)));
  }
  auto lcm_deg = [&](const Reducer& a, const Reducer& b) {
    return std::max(a.lead_x, b.lead_x) + std::max(a.lead_y, b.lead_y);
  };
  std::vector<Pair> pairs;
  auto push_pairs = [&](int n) {
    for (int i = 0; i < n; ++i) pairs.push_back({i, n, lcm_deg(G[static_cast<size_t>(i)], G[static_cast<size_t>(n)])});
  };
  for (int n = 1; n < static_cast<int>(G.size()); ++n) push_pairs(n);
  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(),
                               [](const Pair& a, const Pair& b) { return a.lcm_deg < b.lcm_deg; });
    Pair pr = *it;
    pairs.erase(it);
    if (pr.lcm_deg >= trunc) continue;  // S-polynomial lies in M^trunc
    const Reducer& a = G[static_cast<size_t>(pr.i)];
    const Reducer& b = G[static_cast<size_t>(pr.j)];
    // product criterion: coprime lead monomials reduce to zero
    if (std::min(a.lead_x, b.lead_x) == 0 && std::min(a.lead_y, b.lead_y) == 0) continue;
    int lx = std::max(a.lead_x, b.lead_x), ly = std::max(a.lead_y, b.lead_y);
    BivariatePolynomial spoly =
        a.poly.times_monomial(lx - a.lead_x, ly - a.lead_y, a.poly.owner().one()) -
        b.poly.times_monomial(lx - b.lead_x, ly - b.lead_y, b.poly.owner().one());
    BivariatePolynomial h = mora_nf(std::move(spoly), G, trunc);
    if (!h.is_zero()) {
      G.push_back(make_reducer(std::move(h)));
      push_pairs(static_cast<int>(G.size()) - 1);
    }
  }
  return G;
}

// Count monomials of total degree < trunc outside the lead ideal.
long count_standard_monomials(const std::vector<std::pair<int, int>>& leads, int trunc) {
  std::vector<std::vector<char>> covered(static_cast<size_t>(trunc),
                                         std::vector<char>(static_cast<size_t>(trunc), 0));
  for (const auto& [a, b] : leads)
    for (int i = a; i < trunc; ++i)
      for (int j = b; i + j < trunc; ++j) covered[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
  long count = 0;
  for (int i = 0; i < trunc; ++i)
    for (int j = 0; i + j < trunc; ++j)
      if (!covered[static_cast<size_t>(i)][static_cast<size_t>(j)]) ++count;
  return count;
}

std::vector<std::pair<int, int>> minimal_leads(const std::vector<Reducer>& G) {
  std::vector<std::pair<int, int>> leads;
  for (const auto& g : G) {
    bool dominated = false;
    for (const auto& h : G)
      if (&h != &g && divides(h.lead_x, h.lead_y, g.lead_x, g.lead_y) &&
          (h.lead_x != g.lead_x || h.lead_y != g.lead_y || &h < &g)) {
        dominated = true;
        break;
      }
    if (!dominated) leads.emplace_back(g.lead_x, g.lead_y);
  }
  std::sort(leads.begin(), leads.end());
  leads.erase(std::unique(leads.begin(), leads.end()), leads.end());
  return leads;
}

long colength_at(const std::vector<BivariatePolynomial>& gens, int trunc,
                 std::vector<Reducer>* basis_out) {
  std::vector<Reducer> G = complete_basis(gens, trunc);
  long v = count_standard_monomials(minimal_leads(G), trunc);
  if (basis_out) *basis_out = std::move(G);
  return v;
}

}  // namespace

long StandardBasis::quotient_dimension() const {
  if (!finite_) fail(errc::not_primary, "quotient is infinite-dimensional");
  return colength_;
}

bool StandardBasis::lead_contains_pure_power(Var v) const {
  for (const auto& [a, b] : leads_)
    if ((v == Var::X && b == 0) || (v == Var::Y && a == 0)) return true;
  return false;
}

StandardBasis standard_basis(const std::vector<BivariatePolynomial>& gens, int bound) {
  if (gens.empty()) fail(errc::unsupported_input, "empty generator list");
  const FieldSpec& F = gens[0].owner();
  StandardBasis sb;
  sb.owner_ = &F;
  sb.gens_ = gens;

  std::vector<BivariatePolynomial> nonzero;
  for (const auto& g : gens)
    if (!g.is_zero()) nonzero.push_back(g);

  // unit generator: the whole ring
  for (const auto& g : nonzero)
    if (g.is_unit()) {
      sb.finite_ = true;
      sb.colength_ = 0;
      sb.trunc_ = 1;
      sb.basis_ = {BivariatePolynomial::constant(F.one())};
      sb.leads_ = {{0, 0}};
      return sb;
    }

  if (nonzero.empty()) {
    sb.finite_ = false;
    sb.common_factor_ = std::nullopt;
    return sb;
  }

  // infinite colength iff the generators share a factor
  BivariatePolynomial g0(F);
  for (const auto& g : nonzero) g0 = bivariate_gcd(g0, g);
  if (g0.total_degree() > 0) {
    sb.finite_ = false;
    sb.common_factor_ = g0;
    int d = 2 * std::max(2, nonzero[0].order()) + 2;
    std::vector<Reducer> G = complete_basis(nonzero, d);
    sb.trunc_ = d;
    sb.leads_ = minimal_leads(G);
    for (auto& r : G) sb.basis_.push_back(std::move(r.poly));
    return sb;
  }

  int min_ord = bound;
  for (const auto& g : nonzero) min_ord = std::min(min_ord, g.order());
  int d = std::max(8, 2 * min_ord + 2);
  long prev = colength_at(nonzero, d, nullptr);
  while (true) {
    int d2 = 2 * d;
    if (d2 > bound) fail(errc::bound_exhausted, "no stabilization below the degree bound");
    std::vector<Reducer> G;
    long cur = colength_at(nonzero, d2, &G);
    if (cur == prev) {
      // colength(I + M^d) == colength(I + M^2d) certifies M^d <= I
      sb.finite_ = true;
      sb.colength_ = cur;
      sb.trunc_ = d2;
      sb.leads_ = minimal_leads(G);
      for (auto& r : G) sb.basis_.push_back(std::move(r.poly));
      return sb;
    }
    prev = cur;
    d = d2;
  }
}

std::optional<long> colength(const StandardBasis& sb) {
  if (!sb.finite_colength()) return std::nullopt;
  return sb.quotient_dimension();
}

BivariatePolynomial normal_form(const BivariatePolynomial& h, const StandardBasis& sb) {
  if (!sb.finite_colength())
    fail(errc::bound_exhausted, "normal form needs a finiteness certificate");
  std::vector<Reducer> G;
  G.reserve(sb.basis().size());
  for (const auto& b : sb.basis()) G.push_back(make_reducer(b));
  return mora_nf(h, G, sb.truncation_degree());
}

bool membership(const BivariatePolynomial& h, const StandardBasis& sb) {
  return normal_form(h, sb).is_zero();
}

int primary_exponent(const StandardBasis& sb) {
  if (!sb.finite_colength()) fail(errc::not_primary, "ideal is not M-primary");
  if (sb.quotient_dimension() == 0) return 1;  // unit ideal: M^1 <= (1)... M itself
  int trunc = sb.truncation_degree();
  // lower bound: one past the largest standard monomial degree
  int dmax = 0;
  std::vector<std::vector<char>> covered(static_cast<size_t>(trunc),
                                         std::vector<char>(static_cast<size_t>(trunc), 0));
  for (const auto& [a, b] : sb.lead_monomials())
    for (int i = a; i < trunc; ++i)
      for (int j = b; i + j < trunc; ++j) covered[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
  for (int i = 0; i < trunc; ++i)
    for (int j = 0; i + j < trunc; ++j)
      if (!covered[static_cast<size_t>(i)][static_cast<size_t>(j)]) dmax = std::max(dmax, i + j);

  std::vector<Reducer> G;
  G.reserve(sb.basis().size());
  for (const auto& b : sb.basis()) G.push_back(make_reducer(b));
  const FieldSpec& F = sb.owner();
  for (int l = dmax + 1; l <= trunc; ++l) {
    bool all_in = true;
    for (int i = 0; i <= l && all_in; ++i) {
      BivariatePolynomial m = BivariatePolynomial::monomial(F, i, l - i, F.one());
      if (!mora_nf(m, G, trunc).is_zero()) all_in = false;
    }
    if (all_in) return l;
  }
  fail(errc::internal, "primary exponent exceeded the certified truncation");
}

long hilbert_samuel_e0(const std::vector<BivariatePolynomial>& gens) {
  StandardBasis sb1 = standard_basis(gens);
  if (!sb1.finite_colength()) fail(errc::not_primary, "ideal is not M-primary");
  if (sb1.quotient_dimension() == 0) return 1;

  std::vector<long> L{0};  // L[n] = colength(I^n)
  std::vector<long> d2;
  auto power_gens = [&](int n) {
    std::vector<BivariatePolynomial> out;
    std::vector<int> idx(static_cast<size_t>(n), 0);
    // multisets of generator indices, products built on the way down
    std::vector<BivariatePolynomial> partial{BivariatePolynomial::constant(gens[0].owner().one())};
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == n) {
        out.push_back(partial.back());
        return;
      }
      for (int i = lo; i < static_cast<int>(gens.size()); ++i) {
        partial.push_back(partial.back() * gens[static_cast<size_t>(i)]);
        rec(pos + 1, i);
        partial.pop_back();
      }
    };
    rec(0, 0);
    return out;
  };

  for (int n = 1; n <= 9; ++n) {
    StandardBasis sbn = (n == 1) ? sb1 : standard_basis(power_gens(n));
    L.push_back(sbn.quotient_dimension());
    if (n >= 2) {
      d2.push_back(L[static_cast<size_t>(n)] - 2 * L[static_cast<size_t>(n - 1)] + L[static_cast<size_t>(n - 2)]);
      size_t k = d2.size();
      if (k >= 3 && d2[k - 1] == d2[k - 2] && d2[k - 2] == d2[k - 3]) return d2[k - 1];
    }
  }
  fail(errc::bound_exhausted, "second differences did not stabilize by I^9");
}

std::optional<int> mu_stability(const BivariatePolynomial& f, int lmax) {
  const FieldSpec& F = f.owner();
  if (!is_reduced(f)) fail(errc::not_isolated, "input is not reduced");
  BivariatePolynomial fx = f.partial_derivative(Var::X);
  BivariatePolynomial fy = f.partial_derivative(Var::Y);
  std::vector<BivariatePolynomial> T{f, fx, fy};
  StandardBasis sbT = standard_basis(T);
  if (!sbT.finite_colength()) fail(errc::not_isolated, "Tjurina ideal has infinite colength");
  if (sbT.quotient_dimension() == 0) return 1;  // smooth: T(f) is the unit ideal

  BivariatePolynomial X = BivariatePolynomial::variable(F, Var::X);
  BivariatePolynomial Y = BivariatePolynomial::variable(F, Var::Y);
  BivariatePolynomial fl = BivariatePolynomial::constant(F.one());
  for (int l = 1; l <= lmax; ++l) {
    fl = fl * f;
    // generators of M * T(f)^l
    std::vector<BivariatePolynomial> prods;
    std::vector<BivariatePolynomial> stack{BivariatePolynomial::constant(F.one())};
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == l) {
        prods.push_back(stack.back() * X);
        prods.push_back(stack.back() * Y);
        return;
      }
      for (int i = lo; i < 3; ++i) {
        stack.push_back(stack.back() * T[static_cast<size_t>(i)]);
        rec(pos + 1, i);
        stack.pop_back();
      }
    };
    rec(0, 0);
    StandardBasis sb = standard_basis(prods);
    if (membership(fl, sb)) return l;
  }
  return std::nullopt;
}

}  // namespace pcs
