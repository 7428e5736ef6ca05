#include "pcs/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace pcs {

namespace {

std::uint64_t pack(int xe, int ye) {
  return (static_cast<std::uint64_t>(xe) << 32) | static_cast<std::uint64_t>(ye);
}

FieldElement binom_in(const FieldSpec& F, long n, long r) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return F.from_rational(mpq_class(b));
}

}  // namespace

BivariatePolynomial::BivariatePolynomial(const FieldSpec& owner, std::vector<Term> terms)
    : owner_(&owner), terms_(std::move(terms)) {
  canonicalize();
}

void BivariatePolynomial::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), term_before);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().xe == t.xe && out.back().ye == t.ye)
      out.back().c += t.c;
    else
      out.push_back(std::move(t));
  }
  terms_.clear();
  for (auto& t : out)
    if (!t.c.is_zero()) terms_.push_back(std::move(t));
}

BivariatePolynomial BivariatePolynomial::constant(const FieldElement& c) {
  BivariatePolynomial p(c.owner());
  if (!c.is_zero()) p.terms_.push_back({0, 0, c});
  return p;
}

BivariatePolynomial BivariatePolynomial::monomial(const FieldSpec& owner, int xe, int ye,
                                                  const FieldElement& c) {
  BivariatePolynomial p(owner);
  if (!c.is_zero()) p.terms_.push_back({xe, ye, c});
  return p;
}

BivariatePolynomial BivariatePolynomial::variable(const FieldSpec& owner, Var v) {
  return monomial(owner, v == Var::X ? 1 : 0, v == Var::Y ? 1 : 0, owner.one());
}

BivariatePolynomial BivariatePolynomial::from_y_coefficients(const FieldSpec& owner,
                                                             const std::vector<UniPoly>& coeffs) {
  std::vector<Term> ts;
  for (size_t j = 0; j < coeffs.size(); ++j)
    for (int i = 0; i <= coeffs[j].degree(); ++i)
      if (!coeffs[j].coeff(i).is_zero()) ts.push_back({i, static_cast<int>(j), coeffs[j].coeff(i)});
  return BivariatePolynomial(owner, std::move(ts));
}

const Term& BivariatePolynomial::lead() const {
  if (terms_.empty()) fail(errc::internal, "lead term of zero polynomial");
  return terms_.front();
}

int BivariatePolynomial::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.xe + t.ye);
  return d;
}

int BivariatePolynomial::deg_x() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.xe);
  return d;
}

int BivariatePolynomial::deg_y() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.ye);
  return d;
}

FieldElement BivariatePolynomial::coeff(int xe, int ye) const {
  for (const auto& t : terms_)
    if (t.xe == xe && t.ye == ye) return t.c;
  return owner_->zero();
}

bool BivariatePolynomial::equal_terms(const BivariatePolynomial& o) const {
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].xe != o.terms_[i].xe || terms_[i].ye != o.terms_[i].ye ||
        terms_[i].c != o.terms_[i].c)
      return false;
  return true;
}

BivariatePolynomial BivariatePolynomial::operator+(const BivariatePolynomial& o) const {
  BivariatePolynomial r(*owner_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].xe == o.terms_[j].xe && terms_[i].ye == o.terms_[j].ye) {
      FieldElement c = terms_[i].c + o.terms_[j].c;
      if (!c.is_zero()) r.terms_.push_back({terms_[i].xe, terms_[i].ye, std::move(c)});
      ++i, ++j;
    } else if (term_before(terms_[i], o.terms_[j])) {
      r.terms_.push_back(terms_[i++]);
    } else {
      r.terms_.push_back(o.terms_[j++]);
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

BivariatePolynomial BivariatePolynomial::operator-(const BivariatePolynomial& o) const {
  return *this + (-o);
}

BivariatePolynomial BivariatePolynomial::operator-() const {
  BivariatePolynomial r(*owner_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.xe, t.ye, -t.c});
  return r;
}

BivariatePolynomial BivariatePolynomial::operator*(const BivariatePolynomial& o) const {
  if (is_zero() || o.is_zero()) return BivariatePolynomial(*owner_);
  std::unordered_map<std::uint64_t, FieldElement> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      std::uint64_t key = pack(a.xe + b.xe, a.ye + b.ye);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, a.c * b.c);
      else
        it->second += a.c * b.c;
    }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [key, c] : acc)
    if (!c.is_zero()) ts.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xFFFFFFFFu), std::move(c)});
  return BivariatePolynomial(*owner_, std::move(ts));
}

BivariatePolynomial BivariatePolynomial::pow(int e) const {
  if (e < 0) fail(errc::unsupported_input, "negative polynomial power");
  BivariatePolynomial r = constant(owner_->one());
  BivariatePolynomial base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    if (e >>= 1) base = base * base;
  }
  return r;
}

BivariatePolynomial BivariatePolynomial::scaled(const FieldElement& c) const {
  BivariatePolynomial r(*owner_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    FieldElement cc = t.c * c;
    if (!cc.is_zero()) r.terms_.push_back({t.xe, t.ye, std::move(cc)});
  }
  return r;
}

BivariatePolynomial BivariatePolynomial::times_monomial(int xe, int ye, const FieldElement& c) const {
  BivariatePolynomial r(*owner_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    FieldElement cc = t.c * c;
    if (!cc.is_zero()) r.terms_.push_back({t.xe + xe, t.ye + ye, std::move(cc)});
  }
  return r;
}

BivariatePolynomial BivariatePolynomial::axpy_monomial(const FieldElement& c, int xe, int ye,
                                                       const BivariatePolynomial& g) const {
  BivariatePolynomial r(*owner_);
  r.terms_.reserve(terms_.size() + g.terms_.size());
  size_t i = 0, j = 0;
  auto gterm = [&](size_t k) -> Term {
    return {g.terms_[k].xe + xe, g.terms_[k].ye + ye, g.terms_[k].c * c};
  };
  while (i < terms_.size() && j < g.terms_.size()) {
    Term gt = gterm(j);
    if (terms_[i].xe == gt.xe && terms_[i].ye == gt.ye) {
      FieldElement cc = terms_[i].c - gt.c;
      if (!cc.is_zero()) r.terms_.push_back({gt.xe, gt.ye, std::move(cc)});
      ++i, ++j;
    } else if (term_before(terms_[i], gt)) {
      r.terms_.push_back(terms_[i++]);
    } else {
      gt.c = -gt.c;
      if (!gt.c.is_zero()) r.terms_.push_back(std::move(gt));
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < g.terms_.size(); ++j) {
    Term gt = gterm(j);
    gt.c = -gt.c;
    if (!gt.c.is_zero()) r.terms_.push_back(std::move(gt));
  }
  return r;
}

BivariatePolynomial BivariatePolynomial::partial_derivative(Var v) const {
  BivariatePolynomial r(*owner_);
  for (const auto& t : terms_) {
    int e = (v == Var::X) ? t.xe : t.ye;
    if (e == 0) continue;
    FieldElement c = t.c * owner_->from_integer(e);
    if (c.is_zero()) continue;
    r.terms_.push_back({v == Var::X ? t.xe - 1 : t.xe, v == Var::Y ? t.ye - 1 : t.ye, std::move(c)});
  }
  return BivariatePolynomial(*owner_, std::move(r.terms_));
}

BivariatePolynomial BivariatePolynomial::hasse_derivative(Var v, int r) const {
  if (r == 0) return *this;
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    int e = (v == Var::X) ? t.xe : t.ye;
    if (e < r) continue;
    FieldElement c = t.c * binom_in(*owner_, e, r);
    if (c.is_zero()) continue;
    ts.push_back({v == Var::X ? t.xe - r : t.xe, v == Var::Y ? t.ye - r : t.ye, std::move(c)});
  }
  return BivariatePolynomial(*owner_, std::move(ts));
}

BivariatePolynomial BivariatePolynomial::swap_vars() const {
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) ts.push_back({t.ye, t.xe, t.c});
  return BivariatePolynomial(*owner_, std::move(ts));
}

BivariatePolynomial BivariatePolynomial::divided_by_power(Var v, int k) const {
  BivariatePolynomial r(*owner_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    int e = (v == Var::X) ? t.xe : t.ye;
    if (e < k) fail(errc::internal, "polynomial not divisible by the requested power");
    r.terms_.push_back({v == Var::X ? t.xe - k : t.xe, v == Var::Y ? t.ye - k : t.ye, t.c});
  }
  return BivariatePolynomial(*owner_, std::move(r.terms_));
}

BivariatePolynomial BivariatePolynomial::lowest_form() const {
  BivariatePolynomial r(*owner_);
  int n = order();
  for (const auto& t : terms_)
    if (t.xe + t.ye == n) r.terms_.push_back(t);
  return r;
}

BivariatePolynomial BivariatePolynomial::truncated_at_degree(int bound) const {
  BivariatePolynomial r(*owner_);
  for (const auto& t : terms_)
    if (t.xe + t.ye < bound) r.terms_.push_back(t);
  return r;
}

UniPoly BivariatePolynomial::y_coefficient(int j) const {
  std::vector<FieldElement> cs;
  for (const auto& t : terms_) {
    if (t.ye != j) continue;
    if (static_cast<int>(cs.size()) <= t.xe) cs.resize(static_cast<size_t>(t.xe) + 1, owner_->zero());
    cs[static_cast<size_t>(t.xe)] = t.c;
  }
  return UniPoly(*owner_, std::move(cs));
}

std::vector<UniPoly> BivariatePolynomial::y_coefficients() const {
  std::vector<UniPoly> out;
  int d = deg_y();
  out.reserve(static_cast<size_t>(d + 1));
  for (int j = 0; j <= d; ++j) out.push_back(y_coefficient(j));
  return out;
}

UniPoly BivariatePolynomial::restrict_to_axis(Var kept) const {
  std::vector<FieldElement> cs;
  for (const auto& t : terms_) {
    int other = (kept == Var::X) ? t.ye : t.xe;
    if (other != 0) continue;
    int e = (kept == Var::X) ? t.xe : t.ye;
    if (static_cast<int>(cs.size()) <= e) cs.resize(static_cast<size_t>(e) + 1, owner_->zero());
    cs[static_cast<size_t>(e)] = t.c;
  }
  return UniPoly(*owner_, std::move(cs));
}

std::string BivariatePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.c.to_string();
    bool needs_parens = c.find('+') != std::string::npos;
    std::ostringstream term;
    if (t.xe == 0 && t.ye == 0) {
      term << (needs_parens ? "(" + c + ")" : c);
    } else {
      if (c != "1") term << (needs_parens ? "(" + c + ")" : c) << "*";
      if (t.xe > 0) {
        term << "X";
        if (t.xe > 1) term << "^" << t.xe;
      }
      if (t.xe > 0 && t.ye > 0) term << "*";
      if (t.ye > 0) {
        term << "Y";
        if (t.ye > 1) term << "^" << t.ye;
      }
    }
    std::string ts = term.str();
    if (!first && ts[0] != '-') os << "+";
    os << ts;
    first = false;
  }
  return os.str();
}

BivariatePolynomial substitute(const BivariatePolynomial& f, const BivariatePolynomial& img_x,
                               const BivariatePolynomial& img_y, int degree_bound) {
  const FieldSpec& F = f.owner();
  auto truncate = [&](const BivariatePolynomial& p) {
    return degree_bound >= 0 ? p.truncated_at_degree(degree_bound) : p;
  };
  // cache powers of the images
  std::vector<BivariatePolynomial> xp{BivariatePolynomial::constant(F.one())};
  std::vector<BivariatePolynomial> yp{BivariatePolynomial::constant(F.one())};
  auto xpow = [&](int e) -> const BivariatePolynomial& {
    while (static_cast<int>(xp.size()) <= e) xp.push_back(truncate(xp.back() * img_x));
    return xp[static_cast<size_t>(e)];
  };
  auto ypow = [&](int e) -> const BivariatePolynomial& {
    while (static_cast<int>(yp.size()) <= e) yp.push_back(truncate(yp.back() * img_y));
    return yp[static_cast<size_t>(e)];
  };
  BivariatePolynomial acc(F);
  for (const auto& t : f.terms()) acc = acc + truncate(xpow(t.xe) * ypow(t.ye)).scaled(t.c);
  return acc;
}

UniSeries eval_at_series(const BivariatePolynomial& f, const UniSeries& xs, const UniSeries& ys) {
  int prec = std::min(xs.precision(), ys.precision());
  UniSeries acc(f.owner(), prec);
  for (int j = f.deg_y(); j >= 0; --j) {
    acc = (acc * ys).truncated(prec);
    acc = acc + eval_poly_at_series(f.y_coefficient(j), xs).truncated(prec);
  }
  return acc;
}

std::pair<BivariatePolynomial, BivariatePolynomial> divide_by_monic_y(
    const BivariatePolynomial& a, const BivariatePolynomial& b) {
  const FieldSpec& F = a.owner();
  int d = b.deg_y();
  UniPoly lead = b.y_coefficient(d);
  if (lead.degree() != 0) fail(errc::leading_coefficient_not_unit, "divisor is not monic in Y");
  FieldElement lead_inv = lead.coeff(0).inverse();
  BivariatePolynomial q(F), r = a;
  while (!r.is_zero() && r.deg_y() >= d) {
    int j = r.deg_y();
    UniPoly top = r.y_coefficient(j);
    BivariatePolynomial step =
        BivariatePolynomial::from_y_coefficients(F, {top.scaled(lead_inv)});
    step = step.times_monomial(0, j - d, F.one());
    q = q + step;
    r = r - step * b;
  }
  return {q, r};
}

UniPoly resultant_y(const BivariatePolynomial& f, const BivariatePolynomial& g) {
  const FieldSpec& F = f.owner();
  int m = f.deg_y(), n = g.deg_y();
  if (m < 0 || n < 0) fail(errc::unsupported_input, "resultant of zero polynomial");
  if (m == 0 && n == 0) return UniPoly::constant(F.one());
  std::vector<UniPoly> fc = f.y_coefficients(), gc = g.y_coefficients();
  int size = m + n;
  std::vector<std::vector<UniPoly>> M(static_cast<size_t>(size),
                                      std::vector<UniPoly>(static_cast<size_t>(size), UniPoly(F)));
  // n rows of f's coefficients, then m rows of g's (descending Y powers)
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[static_cast<size_t>(r)][static_cast<size_t>(r + k)] = fc[static_cast<size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k)
      M[static_cast<size_t>(n + r)][static_cast<size_t>(r + k)] = gc[static_cast<size_t>(n - k)];

  // Bareiss fraction-free elimination over k[X]
  bool negate = false;
  UniPoly prev = UniPoly::constant(F.one());
  for (int k = 0; k + 1 < size; ++k) {
    if (M[static_cast<size_t>(k)][static_cast<size_t>(k)].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r)
        if (!M[static_cast<size_t>(r)][static_cast<size_t>(k)].is_zero()) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) fail(errc::common_factor, "resultant vanishes: common factor");
      std::swap(M[static_cast<size_t>(k)], M[static_cast<size_t>(swap_row)]);
      negate = !negate;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        UniPoly num = M[static_cast<size_t>(k)][static_cast<size_t>(k)] * M[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                      M[static_cast<size_t>(i)][static_cast<size_t>(k)] * M[static_cast<size_t>(k)][static_cast<size_t>(j)];
        auto [quot, rem] = num.divmod(prev);
        if (!rem.is_zero()) fail(errc::internal, "Bareiss exact division failed");
        M[static_cast<size_t>(i)][static_cast<size_t>(j)] = quot;
      }
      M[static_cast<size_t>(i)][static_cast<size_t>(k)] = UniPoly(F);
    }
    prev = M[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  UniPoly det = M[static_cast<size_t>(size - 1)][static_cast<size_t>(size - 1)];
  if (det.is_zero()) fail(errc::common_factor, "resultant vanishes: common factor");
  return negate ? -det : det;
}

namespace {

UniPoly content_y(const std::vector<UniPoly>& coeffs, const FieldSpec& F) {
  UniPoly c(F);
  for (const auto& a : coeffs) c = gcd(c, a);
  return c;
}

std::vector<UniPoly> divide_coeffs(const std::vector<UniPoly>& coeffs, const UniPoly& d) {
  std::vector<UniPoly> out;
  out.reserve(coeffs.size());
  for (const auto& a : coeffs) {
    auto [q, r] = a.divmod(d);
    if (!r.is_zero()) fail(errc::internal, "content division failed");
    out.push_back(q);
  }
  return out;
}

}  // namespace

BivariatePolynomial bivariate_gcd(const BivariatePolynomial& a, const BivariatePolynomial& b) {
  const FieldSpec& F = a.owner();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.deg_y() == 0 && b.deg_y() == 0)
    return BivariatePolynomial::from_y_coefficients(F, {gcd(a.y_coefficient(0), b.y_coefficient(0))});
  if (a.deg_y() == 0) {
    UniPoly cb = content_y(b.y_coefficients(), F);
    return BivariatePolynomial::from_y_coefficients(F, {gcd(a.y_coefficient(0), cb)});
  }
  if (b.deg_y() == 0) return bivariate_gcd(b, a);

  auto fc = a.y_coefficients();
  auto gc = b.y_coefficients();
  UniPoly ca = content_y(fc, F), cb = content_y(gc, F);
  UniPoly cc = gcd(ca, cb);
  std::vector<UniPoly> A = divide_coeffs(fc, ca), B = divide_coeffs(gc, cb);
  if (A.size() < B.size()) std::swap(A, B);
  // primitive pseudo-remainder loop in (k[X])[Y]
  while (true) {
    int da = static_cast<int>(A.size()) - 1, db = static_cast<int>(B.size()) - 1;
    // pseudo-remainder of A by B
    UniPoly lb = B.back();
    std::vector<UniPoly> R = A;
    for (int k = 0; k < da - db + 1 && static_cast<int>(R.size()) - 1 >= db; ++k) {
      int dr = static_cast<int>(R.size()) - 1;
      UniPoly top = R.back();
      // R = lb*R - top*Y^(dr-db)*B
      for (auto& c : R) c = c * lb;
      for (int i = 0; i <= db; ++i)
        R[static_cast<size_t>(dr - db + i)] = R[static_cast<size_t>(dr - db + i)] - top * B[static_cast<size_t>(i)];
      while (!R.empty() && R.back().is_zero()) R.pop_back();
      if (static_cast<int>(R.size()) - 1 < db) break;
    }
    if (R.empty()) {
      // B (made primitive) is the gcd
      UniPoly cbb = content_y(B, F);
      std::vector<UniPoly> P = divide_coeffs(B, cbb);
      BivariatePolynomial g = BivariatePolynomial::from_y_coefficients(F, P);
      g = g * BivariatePolynomial::from_y_coefficients(F, {cc});
      return g.scaled(g.lead().c.inverse());
    }
    UniPoly cr = content_y(R, F);
    A = std::move(B);
    B = divide_coeffs(R, cr);
  }
}

bool is_reduced(const BivariatePolynomial& f) {
  if (f.is_zero()) return false;
  BivariatePolynomial fx = f.partial_derivative(Var::X);
  BivariatePolynomial fy = f.partial_derivative(Var::Y);
  if (fx.is_zero() && fy.is_zero()) return false;  // a p-th power
  BivariatePolynomial g = bivariate_gcd(bivariate_gcd(f, fx), fy);
  return g.total_degree() == 0;
}

BivariatePolynomial squarefree_defect(const BivariatePolynomial& f) {
  BivariatePolynomial fx = f.partial_derivative(Var::X);
  BivariatePolynomial fy = f.partial_derivative(Var::Y);
  if (fx.is_zero() && fy.is_zero()) return f;
  return bivariate_gcd(bivariate_gcd(f, fx), fy);
}

YPolynomial::YPolynomial(const FieldSpec& owner, std::vector<UniSeries> coeff_of_y_power)
    : owner_(&owner), coeff_(std::move(coeff_of_y_power)) {
  if (coeff_.empty()) fail(errc::unsupported_input, "Y-polynomial needs at least one coefficient");
}

YPolynomial YPolynomial::from_poly(const BivariatePolynomial& f, int x_precision) {
  std::vector<UniSeries> cs;
  int d = std::max(f.deg_y(), 0);
  cs.reserve(static_cast<size_t>(d + 1));
  for (int j = 0; j <= d; ++j) cs.push_back(UniSeries::from_poly(f.y_coefficient(j), x_precision));
  return YPolynomial(f.owner(), std::move(cs));
}

int YPolynomial::x_precision() const {
  int p = coeff_[0].precision();
  for (const auto& c : coeff_) p = std::min(p, c.precision());
  return p;
}

bool YPolynomial::leading_is_unit() const {
  const UniSeries& lead = coeff_.back();
  return !lead.coeff(0).is_zero();
}

UniSeries YPolynomial::evaluate(const UniSeries& xs, const UniSeries& ys) const {
  int prec = std::min({xs.precision(), ys.precision(), x_precision()});
  UniSeries acc(*owner_, prec);
  for (size_t j = coeff_.size(); j-- > 0;) {
    acc = (acc * ys).truncated(prec);
    acc = acc + coeff_[j].compose(xs).truncated(prec);
  }
  return acc;
}

std::string YPolynomial::to_string() const {
  std::ostringstream os;
  for (size_t j = coeff_.size(); j-- > 0;) {
    os << "(" << coeff_[j].to_string("X") << ")";
    if (j > 0) os << "*Y";
    if (j > 1) os << "^" << j;
    if (j > 0) os << " + ";
  }
  return os.str();
}

std::pair<YPolynomial, YPolynomial> y_poly_divide(const YPolynomial& a, const YPolynomial& b) {
  if (!b.leading_is_unit())
    fail(errc::leading_coefficient_not_unit, "division needs a unit leading coefficient");
  const FieldSpec& F = a.owner();
  int prec = std::min(a.x_precision(), b.x_precision());
  int da = a.degree(), db = b.degree();
  std::vector<UniSeries> r;
  r.reserve(static_cast<size_t>(da + 1));
  for (int j = 0; j <= da; ++j) r.push_back(a.coeff(j).truncated(prec));
  UniSeries lead_inv = b.coeff(db).truncated(prec).inverse();
  if (da < db) return {YPolynomial(F, {UniSeries(F, prec)}), YPolynomial(F, std::move(r))};
  std::vector<UniSeries> q(static_cast<size_t>(da - db) + 1, UniSeries(F, prec));
  for (int j = da; j >= db; --j) {
    UniSeries c = (r[static_cast<size_t>(j)] * lead_inv).truncated(prec);
    q[static_cast<size_t>(j - db)] = c;
    for (int i = 0; i <= db; ++i)
      r[static_cast<size_t>(j - db + i)] =
          r[static_cast<size_t>(j - db + i)] - (c * b.coeff(i)).truncated(prec);
  }
  r.erase(r.begin() + std::max(db, 1), r.end());
  return {YPolynomial(F, std::move(q)), YPolynomial(F, std::move(r))};
}

}  // namespace pcs
