#include "pcs/unipoly.hpp"

#include <sstream>

namespace pcs {

UniPoly::UniPoly(const FieldSpec& owner, std::vector<FieldElement> coeffs)
    : owner_(&owner), coeffs_(std::move(coeffs)) {
  trim();
}

UniPoly UniPoly::monomial(const FieldSpec& owner, int degree, const FieldElement& c) {
  UniPoly p(owner);
  if (c.is_zero()) return p;
  p.coeffs_.assign(static_cast<size_t>(degree) + 1, owner.zero());
  p.coeffs_.back() = c;
  return p;
}

UniPoly UniPoly::constant(const FieldElement& c) {
  UniPoly p(c.owner());
  if (!c.is_zero()) p.coeffs_.push_back(c);
  return p;
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

int UniPoly::order() const {
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

FieldElement UniPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return owner_->zero();
  return coeffs_[static_cast<size_t>(i)];
}

const FieldElement& UniPoly::leading() const {
  if (coeffs_.empty()) fail(errc::internal, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  UniPoly r(*owner_);
  r.coeffs_ = coeffs_;
  if (o.coeffs_.size() > r.coeffs_.size()) r.coeffs_.resize(o.coeffs_.size(), owner_->zero());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
  r.trim();
  return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  UniPoly r(*owner_);
  r.coeffs_ = coeffs_;
  if (o.coeffs_.size() > r.coeffs_.size()) r.coeffs_.resize(o.coeffs_.size(), owner_->zero());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
  r.trim();
  return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  UniPoly r(*owner_);
  if (coeffs_.empty() || o.coeffs_.empty()) return r;
  r.coeffs_.assign(coeffs_.size() + o.coeffs_.size() - 1, owner_->zero());
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      if (o.coeffs_[j].is_zero()) continue;
      r.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  r.trim();
  return r;
}

UniPoly UniPoly::operator-() const {
  UniPoly r(*owner_);
  r.coeffs_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
  return r;
}

UniPoly UniPoly::scaled(const FieldElement& c) const {
  UniPoly r(*owner_);
  if (c.is_zero()) return r;
  r.coeffs_.reserve(coeffs_.size());
  for (const auto& a : coeffs_) r.coeffs_.push_back(a * c);
  r.trim();
  return r;
}

UniPoly UniPoly::shifted(int k) const {
  UniPoly r(*owner_);
  if (coeffs_.empty()) return r;
  r.coeffs_.assign(static_cast<size_t>(k), owner_->zero());
  r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return r;
}

UniPoly UniPoly::pow(int e) const {
  UniPoly r = constant(owner_->one());
  UniPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
  if (d.is_zero()) fail(errc::division_by_zero, "polynomial division by zero");
  UniPoly q(*owner_), r = *this;
  FieldElement lead_inv = d.leading().inverse();
  if (r.degree() >= d.degree())
    q.coeffs_.assign(static_cast<size_t>(r.degree() - d.degree()) + 1, owner_->zero());
  while (!r.is_zero() && r.degree() >= d.degree()) {
    FieldElement c = r.leading() * lead_inv;
    int shift = r.degree() - d.degree();
    q.coeffs_[static_cast<size_t>(shift)] = c;
    for (size_t i = 0; i < d.coeffs_.size(); ++i)
      r.coeffs_[static_cast<size_t>(shift) + i] -= c * d.coeffs_[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

UniPoly UniPoly::derivative() const {
  UniPoly r(*owner_);
  for (size_t i = 1; i < coeffs_.size(); ++i)
    r.coeffs_.push_back(coeffs_[i] * owner_->from_integer(static_cast<std::int64_t>(i)));
  r.trim();
  return r;
}

FieldElement UniPoly::eval(const FieldElement& x) const {
  FieldElement acc = owner_->zero();
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

std::string UniPoly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    std::string c = coeffs_[i].to_string();
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
  return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a, y = b;
  while (!y.is_zero()) {
    UniPoly r = x.divmod(y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.is_zero()) x = x.scaled(x.leading().inverse());
  return x;
}

}  // namespace pcs
