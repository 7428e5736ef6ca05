#include "pcs/oracles.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace pcs {

namespace {

// Sparse row reduction keyed by the local order on monomials.  Rows are
// monomial multiples of the generators below total degree D; the rank gives
// colength(I + M^D) = #monomials - rank.
long colength_by_rank(const std::vector<BivariatePolynomial>& gens, int D) {
  struct Row {
    std::vector<Term> terms;  // lead-first, monic lead
  };
  // pivot per lead monomial, keyed by (total, -xe, ye) to follow the order
  std::map<std::tuple<int, int, int>, Row> pivots;
  auto key_of = [](const Term& t) { return std::make_tuple(t.xe + t.ye, -t.xe, t.ye); };

  auto reduce_insert = [&](std::vector<Term> row) {
    while (!row.empty()) {
      auto it = pivots.find(key_of(row.front()));
      if (it == pivots.end()) {
        // normalize and install
        FieldElement inv = row.front().c.inverse();
        for (auto& t : row) t.c *= inv;
        pivots.emplace(key_of(row.front()), Row{std::move(row)});
        return;
      }
      // cancel the lead against the pivot row
      const Row& piv = it->second;
      FieldElement c = row.front().c;
      std::vector<Term> next;
      next.reserve(row.size() + piv.terms.size());
      size_t i = 0, j = 0;
      while (i < row.size() && j < piv.terms.size()) {
        const Term& a = row[i];
        const Term& b = piv.terms[j];
        if (a.xe == b.xe && a.ye == b.ye) {
          FieldElement cc = a.c - c * b.c;
          if (!cc.is_zero()) next.push_back({a.xe, a.ye, std::move(cc)});
          ++i, ++j;
        } else if (term_before(a, b)) {
          next.push_back(row[i++]);
        } else {
          FieldElement cc = -(c * b.c);
          if (!cc.is_zero()) next.push_back({b.xe, b.ye, std::move(cc)});
          ++j;
        }
      }
      for (; i < row.size(); ++i) next.push_back(row[i]);
      for (; j < piv.terms.size(); ++j) {
        FieldElement cc = -(c * piv.terms[j].c);
        if (!cc.is_zero()) next.push_back({piv.terms[j].xe, piv.terms[j].ye, std::move(cc)});
      }
      row = std::move(next);
    }
  };

  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int og = g.order();
    for (int a = 0; a + og < D; ++a)
      for (int b = 0; a + b + og < D; ++b) {
        BivariatePolynomial m = g.times_monomial(a, b, g.owner().one()).truncated_at_degree(D);
        if (!m.is_zero()) reduce_insert(m.terms());
      }
  }
  long monomials = static_cast<long>(D) * (D + 1) / 2;
  return monomials - static_cast<long>(pivots.size());
}

}  // namespace

std::optional<long> macaulay_colength(const std::vector<BivariatePolynomial>& gens, int degree_cap) {
  int min_ord = degree_cap;
  for (const auto& g : gens)
    if (!g.is_zero()) min_ord = std::min(min_ord, g.order());
  int D = std::max(6, 2 * min_ord + 2);
  long prev = colength_by_rank(gens, D);
  while (2 * D <= degree_cap) {
    D *= 2;
    long cur = colength_by_rank(gens, D);
    if (cur == prev) return cur;
    prev = cur;
  }
  return std::nullopt;
}

long general_element_e0(const std::vector<BivariatePolynomial>& gens, std::uint64_t seed, int trials) {
  const FieldSpec& F = gens.at(0).owner();
  std::mt19937_64 rng(seed);
  auto random_elt = [&]() {
    if (F.is_rational()) return F.from_integer(static_cast<std::int64_t>(rng() % 1000) + 1);
    return F.element_from_index(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(F.order())));
  };
  std::optional<long> best;
  for (int t = 0; t < trials; ++t) {
    BivariatePolynomial a(F), b(F);
    for (const auto& g : gens) {
      a = a + g.scaled(random_elt());
      b = b + g.scaled(random_elt());
    }
    if (a.is_zero() || b.is_zero()) continue;
    auto v = macaulay_colength({a, b});
    if (v && (!best || *v < *best)) best = v;
  }
  if (!best) fail(errc::not_primary, "general elements gave no finite colength");
  return *best;
}

std::vector<long> sweep_set_by_enumeration(const std::vector<long>& gens, long conductor) {
  if (conductor <= 0) return {};  // S = N: the shifted set covers everything
  long bound = 2 * conductor + 2;
  std::vector<char> in_s(static_cast<size_t>(bound + 1), 0);
  in_s[0] = 1;
  for (long v = 1; v <= bound; ++v)
    for (long g : gens)
      if (g <= v && in_s[static_cast<size_t>(v - g)]) {
        in_s[static_cast<size_t>(v)] = 1;
        break;
      }
  // S + c - 1 within [0, bound]
  std::vector<char> shifted(static_cast<size_t>(bound + 1), 0);
  for (long v = 0; v + conductor - 1 <= bound; ++v)
    if (in_s[static_cast<size_t>(v)]) shifted[static_cast<size_t>(v + conductor - 1)] = 1;
  std::vector<long> out;
  for (long v = 0; v <= bound; ++v)
    if (in_s[static_cast<size_t>(v)] && !shifted[static_cast<size_t>(v)]) out.push_back(v);
  // elements >= 2c - 1 are always in the shifted set; the window suffices
  return out;
}

}  // namespace pcs
