#include "pcs/series.hpp"

#include <algorithm>
#include <sstream>

namespace pcs {

UniSeries::UniSeries(const FieldSpec& owner, int precision)
    : owner_(&owner), precision_(precision) {
  if (precision < 1) fail(errc::precision_exhausted, "precision must be positive");
  coeffs_.assign(static_cast<size_t>(precision), owner.zero());
}

UniSeries::UniSeries(const FieldSpec& owner, std::vector<FieldElement> coeffs, int precision)
    : owner_(&owner), coeffs_(std::move(coeffs)), precision_(precision) {
  if (precision < 1) fail(errc::precision_exhausted, "precision must be positive");
  normalize();
}

void UniSeries::normalize() { coeffs_.resize(static_cast<size_t>(precision_), owner_->zero()); }

UniSeries UniSeries::from_poly(const UniPoly& p, int precision) {
  UniSeries s(p.owner(), precision);
  for (int i = 0; i < std::min(precision, p.degree() + 1); ++i)
    s.coeffs_[static_cast<size_t>(i)] = p.coeff(i);
  return s;
}

UniSeries UniSeries::one(const FieldSpec& owner, int precision) {
  UniSeries s(owner, precision);
  s.coeffs_[0] = owner.one();
  return s;
}

UniSeries UniSeries::t(const FieldSpec& owner, int precision) {
  UniSeries s(owner, precision);
  if (precision > 1) s.coeffs_[1] = owner.one();
  return s;
}

FieldElement UniSeries::coeff(int i) const {
  if (i < 0 || i >= precision_) fail(errc::precision_exhausted, "coefficient beyond precision");
  return coeffs_[static_cast<size_t>(i)];
}

std::optional<int> UniSeries::order() const {
  for (int i = 0; i < precision_; ++i)
    if (!coeffs_[static_cast<size_t>(i)].is_zero()) return i;
  return std::nullopt;
}

const FieldElement& UniSeries::leading() const {
  auto o = order();
  if (!o) fail(errc::precision_exhausted, "series is zero to precision");
  return coeffs_[static_cast<size_t>(*o)];
}

UniSeries UniSeries::truncated(int precision) const {
  UniSeries s(*owner_, std::min(precision, precision_));
  for (int i = 0; i < s.precision_; ++i) s.coeffs_[static_cast<size_t>(i)] = coeffs_[static_cast<size_t>(i)];
  return s;
}

UniSeries UniSeries::operator+(const UniSeries& o) const {
  UniSeries s(*owner_, std::min(precision_, o.precision_));
  for (int i = 0; i < s.precision_; ++i)
    s.coeffs_[static_cast<size_t>(i)] = coeffs_[static_cast<size_t>(i)] + o.coeffs_[static_cast<size_t>(i)];
  return s;
}

UniSeries UniSeries::operator-(const UniSeries& o) const {
  UniSeries s(*owner_, std::min(precision_, o.precision_));
  for (int i = 0; i < s.precision_; ++i)
    s.coeffs_[static_cast<size_t>(i)] = coeffs_[static_cast<size_t>(i)] - o.coeffs_[static_cast<size_t>(i)];
  return s;
}

UniSeries UniSeries::operator*(const UniSeries& o) const {
  // certified precision improves with the orders of the factors
  int ord_a = order().value_or(precision_);
  int ord_b = o.order().value_or(o.precision_);
  int prec = std::min(precision_ + ord_b, o.precision_ + ord_a);
  prec = std::max(prec, 1);
  UniSeries s(*owner_, prec);
  for (int i = ord_a; i < std::min(precision_, prec); ++i) {
    if (coeffs_[static_cast<size_t>(i)].is_zero()) continue;
    int jmax = std::min(o.precision_, prec - i);
    for (int j = ord_b; j < jmax; ++j) {
      if (o.coeffs_[static_cast<size_t>(j)].is_zero()) continue;
      s.coeffs_[static_cast<size_t>(i + j)] += coeffs_[static_cast<size_t>(i)] * o.coeffs_[static_cast<size_t>(j)];
    }
  }
  return s;
}

UniSeries UniSeries::operator-() const {
  UniSeries s(*owner_, precision_);
  for (int i = 0; i < precision_; ++i) s.coeffs_[static_cast<size_t>(i)] = -coeffs_[static_cast<size_t>(i)];
  return s;
}

UniSeries UniSeries::scaled(const FieldElement& c) const {
  UniSeries s(*owner_, precision_);
  for (int i = 0; i < precision_; ++i) s.coeffs_[static_cast<size_t>(i)] = coeffs_[static_cast<size_t>(i)] * c;
  return s;
}

UniSeries UniSeries::shifted(int k) const {
  UniSeries s(*owner_, precision_ + k);
  for (int i = 0; i < precision_; ++i) s.coeffs_[static_cast<size_t>(i + k)] = coeffs_[static_cast<size_t>(i)];
  return s;
}

UniSeries UniSeries::pow(int e) const {
  UniSeries r = one(*owner_, precision_);
  UniSeries base = *this;
  if (e == 0) return r;
  while (e > 0) {
    if (e & 1) r = r * base;
    if (e >>= 1) base = base * base;
  }
  return r.truncated(std::max(precision_, r.precision()));
}

UniSeries UniSeries::inverse() const {
  if (coeffs_[0].is_zero()) fail(errc::not_a_unit, "series has no constant term");
  UniSeries v(*owner_, precision_);
  FieldElement c0_inv = coeffs_[0].inverse();
  v.coeffs_[0] = c0_inv;
  for (int n = 1; n < precision_; ++n) {
    FieldElement acc = owner_->zero();
    for (int i = 1; i <= n; ++i) acc += coeffs_[static_cast<size_t>(i)] * v.coeffs_[static_cast<size_t>(n - i)];
    v.coeffs_[static_cast<size_t>(n)] = -(acc * c0_inv);
  }
  return v;
}

UniSeries UniSeries::nth_root(std::int64_t n) const {
  if (n <= 0) fail(errc::unsupported_input, "root index must be positive");
  if (coeffs_[0].is_zero()) fail(errc::not_a_unit, "series has no constant term");
  std::int64_t p = owner_->characteristic();
  UniSeries u = *this;
  // peel off p-th root layers coefficientwise
  while (p > 0 && n % p == 0) {
    UniSeries w(*owner_, (u.precision() + static_cast<int>(p) - 1) / static_cast<int>(p));
    for (int i = 0; i < u.precision(); ++i) {
      if (u.coeffs_[static_cast<size_t>(i)].is_zero()) continue;
      if (i % p != 0)
        fail(errc::no_root_in_field, "series is not a p-th power (exponent " + std::to_string(i) + ")");
      int j = i / static_cast<int>(p);
      if (j < w.precision()) w.coeffs_[static_cast<size_t>(j)] = u.coeffs_[static_cast<size_t>(i)].frobenius_root();
    }
    u = w;
    n /= p;
  }
  if (n == 1) return u;
  // Newton for z^n = u; the constant term must have an n-th root in the field
  auto c0 = pcs::nth_root(u.coeffs_[0], n);
  if (!c0) fail(errc::no_root_in_field, "constant term has no " + std::to_string(n) + "-th root");
  FieldElement n_inv = owner_->from_integer(n);
  if (n_inv.is_zero()) fail(errc::internal, "root index divisible by characteristic after peeling");
  int target = u.precision();
  int prec = 1;
  std::vector<FieldElement> c0v{*c0};
  UniSeries z(*owner_, std::move(c0v), 1);
  while (prec < target) {
    prec = std::min(2 * prec, target);
    UniSeries zc = z.truncated(std::min(prec, z.precision()));
    // pad to working precision
    UniSeries zz(*owner_, prec);
    for (int i = 0; i < zc.precision(); ++i) zz.coeffs_[static_cast<size_t>(i)] = zc.coeff(i);
    UniSeries err = zz.pow(static_cast<int>(n)).truncated(prec) - u.truncated(prec);
    UniSeries deriv = zz.pow(static_cast<int>(n - 1)).truncated(prec).scaled(owner_->from_integer(n));
    z = zz - (err * deriv.inverse()).truncated(prec);
    z = z.truncated(prec);
  }
  return z;
}

UniSeries UniSeries::derivative() const {
  if (precision_ <= 1) fail(errc::precision_exhausted, "cannot differentiate below precision 1");
  UniSeries s(*owner_, precision_ - 1);
  for (int i = 1; i < precision_; ++i)
    s.coeffs_[static_cast<size_t>(i - 1)] = coeffs_[static_cast<size_t>(i)] * owner_->from_integer(i);
  return s;
}

UniSeries UniSeries::compose(const UniSeries& u) const {
  if (!u.coeffs_[0].is_zero())
    fail(errc::unsupported_input, "inner series must have positive order");
  int prec = std::min(precision_, u.precision());
  // Horner from the top certified coefficient down
  UniSeries acc(*owner_, prec);
  for (int i = std::min(precision_, prec); i-- > 0;) {
    acc = (acc * u).truncated(prec);
    acc.coeffs_[0] += coeffs_[static_cast<size_t>(i)];
  }
  return acc;
}

bool UniSeries::operator==(const UniSeries& o) const {
  if (owner_ != o.owner_ || precision_ != o.precision_) return false;
  return coeffs_ == o.coeffs_;
}

std::string UniSeries::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < precision_; ++i) {
    if (coeffs_[static_cast<size_t>(i)].is_zero()) continue;
    std::string c = coeffs_[static_cast<size_t>(i)].to_string();
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != "1") os << c << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  os << "+O(" << var << "^" << precision_ << ")";
  return os.str();
}

UniSeries eval_poly_at_series(const UniPoly& p, const UniSeries& u) {
  UniSeries acc(p.owner(), u.precision());
  for (int i = p.degree(); i >= 0; --i) {
    acc = (acc * u).truncated(u.precision());
    acc = acc + UniSeries::from_poly(UniPoly::constant(p.coeff(i)), u.precision());
  }
  return acc;
}

}  // namespace pcs
