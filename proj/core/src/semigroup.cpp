#include "pcs/semigroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace pcs {

namespace {

// membership sieve for <gens> up to bound (inclusive)
std::vector<char> sieve(const std::vector<long>& gens, long bound) {
  std::vector<char> in(static_cast<size_t>(bound + 1), 0);
  in[0] = 1;
  for (long v = 1; v <= bound; ++v)
    for (long g : gens)
      if (g <= v && in[static_cast<size_t>(v - g)]) {
        in[static_cast<size_t>(v)] = 1;
        break;
      }
  return in;
}

std::vector<long> minimalize(std::vector<long> vals) {
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  vals.erase(std::remove(vals.begin(), vals.end(), 0L), vals.end());
  std::vector<long> kept;
  for (long v : vals) {
    if (!kept.empty()) {
      long bound = v;
      std::vector<char> in = sieve(kept, bound);
      if (in[static_cast<size_t>(v)]) continue;
    }
    kept.push_back(v);
  }
  return kept;
}

}  // namespace

ValueSemigroup ValueSemigroup::from_generators(std::vector<long> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) fail(errc::unsupported_input, "semigroup needs at least one positive generator");
  long g = 0;
  for (long v : gens) g = std::gcd(g, v);
  if (g != 1) fail(errc::unsupported_input, "semigroup generators must have gcd 1");

  ValueSemigroup S;
  S.gens_ = std::move(gens);
  S.e_.push_back(S.gens_[0]);
  for (size_t i = 1; i < S.gens_.size(); ++i) {
    S.e_.push_back(std::gcd(S.e_.back(), S.gens_[i]));
    S.n_.push_back(S.e_[i - 1] / S.e_[i]);
  }

  // conductor by gap enumeration (v0*vmax bounds the Frobenius number)
  long bound = S.gens_[0] * S.gens_.back() + 1;
  std::vector<char> in = sieve(S.gens_, bound);
  long c = 0;
  for (long v = bound; v >= 1; --v)
    if (!in[static_cast<size_t>(v)]) {
      c = v + 1;
      break;
    }
  S.conductor_ = c;

  // the ladder formula must agree with the enumeration
  if (S.gens_.size() > 1 || S.gens_[0] == 1) {
    long formula = 1 - S.gens_[0];
    for (size_t i = 1; i < S.gens_.size(); ++i) formula += (S.n_[i - 1] - 1) * S.gens_[i];
    if (S.gens_.size() == 1) formula = 0;
    if (formula != c)
      fail(errc::internal, "conductor formula " + std::to_string(formula) +
                               " disagrees with enumeration " + std::to_string(c));
  }

  // Apery set relative to v0
  long v0 = S.gens_[0];
  S.apery_.assign(static_cast<size_t>(v0), -1);
  for (long v = 0; v <= c + v0 && static_cast<long>(std::count(S.apery_.begin(), S.apery_.end(), -1)) > 0; ++v)
    if (v <= bound && in[static_cast<size_t>(v)] && S.apery_[static_cast<size_t>(v % v0)] < 0)
      S.apery_[static_cast<size_t>(v % v0)] = v;
  for (long a : S.apery_)
    if (a < 0) fail(errc::internal, "incomplete Apery set");

  if (!S.strongly_increasing())
    fail(errc::unsupported_input, "generators are not strongly increasing");
  if (!S.nice()) fail(errc::unsupported_input, "generator ladder is not nice");
  if (!S.symmetric()) fail(errc::internal, "branch semigroup must be symmetric");
  return S;
}

bool ValueSemigroup::contains(long x) const {
  if (x < 0) return false;
  long v0 = gens_[0];
  return apery_[static_cast<size_t>(x % v0)] <= x;
}

std::optional<std::vector<long>> ValueSemigroup::canonical_representation(long x) const {
  if (x < 0 || !contains(x)) return std::nullopt;
  size_t g = gens_.size() - 1;
  std::vector<long> digits(gens_.size(), 0);
  long rest = x;
  for (size_t i = g; i >= 1; --i) {
    long ni = n_[i - 1];
    long scale = e_[i];  // everything below lives in e_i * Z after peeling
    // x_i is determined modulo n_i: rest/scale = x_i * (v_i/e_i) mod n_i
    long vi = gens_[i] / scale;
    long r = (rest / scale) % ni;
    // solve x_i * vi = r (mod ni); gcd(vi, ni) = 1
    long xi = 0;
    for (long t = 0; t < ni; ++t)
      if ((t * vi) % ni == ((r % ni) + ni) % ni) {
        xi = t;
        break;
      }
    digits[i] = xi;
    rest -= xi * gens_[i];
    if (rest < 0) return std::nullopt;
  }
  if (rest % gens_[0] != 0) return std::nullopt;
  digits[0] = rest / gens_[0];
  if (digits[0] < 0) return std::nullopt;
  return digits;
}

bool ValueSemigroup::tame(std::int64_t p) const {
  if (p == 0) return true;
  for (long v : gens_)
    if (v % p == 0) return false;
  return true;
}

std::vector<long> ValueSemigroup::sweep_set() const {
  std::vector<long> out;
  long c = conductor_;
  out.reserve(static_cast<size_t>(c));
  for (long i = 0; i < c; ++i) out.push_back(contains(i) ? i : i + c - 1);
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    fail(errc::internal, "sweep bijection collided");
  return out;
}

bool ValueSemigroup::symmetric() const {
  long c = conductor_;
  for (long z = 0; z < c; ++z)
    if (contains(z) == contains(c - 1 - z)) return false;
  return true;
}

bool ValueSemigroup::strongly_increasing() const {
  for (size_t i = 1; i < gens_.size(); ++i) {
    long ni_prev = (i == 1) ? 1 : n_[i - 2];
    if (gens_[i] <= ni_prev * gens_[i - 1]) return false;
  }
  return true;
}

bool ValueSemigroup::nice() const {
  for (size_t i = 1; i < gens_.size(); ++i) {
    long niv = n_[i - 1] * gens_[i];
    // membership in <v_0..v_(i-1)>
    std::vector<long> lower(gens_.begin(), gens_.begin() + static_cast<long>(i));
    std::vector<char> in = sieve(lower, niv);
    if (!in[static_cast<size_t>(niv)]) return false;
  }
  return true;
}

std::string ValueSemigroup::to_string() const {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (i) os << ",";
    os << gens_[i];
  }
  os << ">";
  return os.str();
}

std::vector<long> semigroup_from_chain(const BlowupChain& chain) {
  std::vector<long> m;
  for (int v : chain.multiplicities()) m.push_back(v);
  if (m.empty()) return {1};
  long c = chain.conductor();
  long v0 = m[0];

  // proximity runs by Enriques' equalities: the points proximate to P_i are
  // the consecutive run P_(i+1)..P_(i+k) whose multiplicities sum to m_i;
  // trailing free points of multiplicity 1 are appended on demand
  std::vector<std::pair<size_t, size_t>> run;  // [first, last] inclusive
  auto ensure_point = [&](size_t idx) {
    while (m.size() <= idx) m.push_back(1);
  };
  size_t needed = m.size() + static_cast<size_t>(c) + 4;
  for (size_t i = 0; i + 1 < needed; ++i) {
    ensure_point(i);
    long target = m[i];
    long acc = 0;
    size_t j = i + 1;
    while (acc < target) {
      ensure_point(j);
      acc += m[j];
      ++j;
    }
    if (acc != target) fail(errc::internal, "invalid multiplicity sequence (proximity overshoot)");
    run.emplace_back(i + 1, j - 1);
  }

  auto is_free = [&](size_t k) {
    if (k == 0) return true;
    for (size_t i = 0; i + 1 < k; ++i)
      if (i < run.size() && run[i].first <= k && k <= run[i].second) return false;
    return true;
  };

  // curvette value at P_k: minimal proximity-admissible vector supported on
  // P_0..P_k with n_k = 1, back-propagated through the runs
  auto curvette_value = [&](size_t k) {
    std::vector<long> n(k + 1, 0);
    n[k] = 1;
    for (size_t i = k; i-- > 0;) {
      long s = 0;
      for (size_t j = run[i].first; j <= std::min(run[i].second, k); ++j) s += n[j];
      n[i] = std::max<long>(s, 0);
    }
    long v = 0;
    for (size_t i = 0; i <= k; ++i) v += n[i] * m[i];
    return v;
  };

  std::vector<long> values{v0};
  for (size_t k = 1; k + 1 < needed && k < run.size(); ++k) {
    if (!is_free(k)) continue;
    long v = curvette_value(k);
    values.push_back(v);
    if (v > c + v0) break;
  }
  return minimalize(values);
}

ValueSemigroup semigroup_of(const Branch& branch) {
  long c = branch.conductor();
  long v0 = branch.multiplicity();
  if (v0 == 1) return ValueSemigroup::from_generators({1});

  std::vector<long> from_chain = semigroup_from_chain(branch.chain());

  int prec = static_cast<int>(2 * (c + v0) + 8);
  const Parametrization& par = branch.parametrization(prec);
  // reduce along the transversal component; subduct with the other one
  bool x_transversal = par.x.order().value_or(prec) == static_cast<int>(v0);
  const UniSeries& red = x_transversal ? par.x : par.y;
  const UniSeries& co = x_transversal ? par.y : par.x;

  long stop = c + v0;
  struct Entry {
    long value;
    UniSeries series;
  };
  std::vector<std::optional<Entry>> table(static_cast<size_t>(v0));
  table[0] = Entry{0, UniSeries::one(red.owner(), prec)};
  std::deque<UniSeries> queue;
  queue.push_back(co);

  // cache powers of the reducer
  std::vector<UniSeries> red_pow{UniSeries::one(red.owner(), prec)};
  auto reducer_power = [&](long k) -> const UniSeries& {
    while (static_cast<long>(red_pow.size()) <= k) red_pow.push_back((red_pow.back() * red).truncated(prec));
    return red_pow[static_cast<size_t>(k)];
  };

  size_t guard = 0;
  while (!queue.empty()) {
    if (++guard > 100000) fail(errc::internal, "subduction did not terminate");
    UniSeries e = std::move(queue.front());
    queue.pop_front();
    while (true) {
      auto o = e.order();
      long v = o ? static_cast<long>(*o) : static_cast<long>(e.precision());
      if (v >= stop) break;
      size_t r = static_cast<size_t>(v % v0);
      if (!table[r]) {
        table[r] = Entry{v, e};
        queue.push_back((e * co).truncated(prec));
        break;
      }
      if (v < table[r]->value) {
        // displace the old entry back into reduction
        Entry displaced = std::move(*table[r]);
        table[r] = Entry{v, std::move(e)};
        queue.push_back((table[r]->series * co).truncated(prec));
        e = std::move(displaced.series);
        continue;
      }
      long k = (v - table[r]->value) / v0;
      FieldElement lam = e.leading() / (table[r]->series.leading() * reducer_power(k).leading());
      e = (e - (table[r]->series * reducer_power(k)).scaled(lam)).truncated(prec);
    }
  }

  std::vector<long> values{v0};
  for (const auto& t : table)
    if (t && t->value > 0) values.push_back(t->value);
  for (const auto& t : table)
    if (!t) fail(errc::precision_exhausted, "subduction left an unfilled residue class");
  std::vector<long> gens = minimalize(values);

  if (gens != from_chain)
    fail(errc::internal,
         "semigroup cross-check failed: subduction and chain reconstruction disagree");
  ValueSemigroup S = ValueSemigroup::from_generators(gens);
  if (S.conductor() != c)
    fail(errc::internal, "semigroup conductor disagrees with the blowup chain");
  return S;
}

}  // namespace pcs
