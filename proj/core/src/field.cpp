#include "pcs/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace pcs {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::swap(t -= q * new_t, new_t);
    std::swap(r -= q * new_r, new_r);
  }
  if (r != 1) fail(errc::division_by_zero, "not invertible mod p");
  return ((t % p) + p) % p;
}

// Dense univariate arithmetic over GF(p) with int64 coefficient vectors,
// used for modulus generation and extension-field element arithmetic.
using Zp = std::vector<std::int64_t>;

void zp_trim(Zp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Zp zp_mul(const Zp& a, const Zp& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Zp c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  zp_trim(c);
  return c;
}

// a mod m, m monic.
Zp zp_rem(Zp a, const Zp& m, std::int64_t p) {
  zp_trim(a);
  while (a.size() >= m.size()) {
    std::int64_t c = a.back();
    size_t shift = a.size() - m.size();
    if (c != 0)
      for (size_t i = 0; i < m.size(); ++i) a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    a.pop_back();
    zp_trim(a);
  }
  return a;
}

Zp zp_powmod(Zp base, std::int64_t e, const Zp& m, std::int64_t p) {
  Zp r{1};
  base = zp_rem(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = zp_rem(zp_mul(r, base, p), m, p);
    base = zp_rem(zp_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

Zp zp_gcd(Zp a, Zp b, std::int64_t p) {
  zp_trim(a);
  zp_trim(b);
  while (!b.empty()) {
    // make b monic before reducing
    std::int64_t inv = mod_inverse(b.back(), p);
    for (auto& c : b) c = c * inv % p;
    a = zp_rem(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test: x^(p^k) = x mod f, and gcd(x^(p^(k/q)) - x, f) = 1 for prime q | k.
bool zp_irreducible(const Zp& f, std::int64_t p) {
  int k = static_cast<int>(f.size()) - 1;
  if (k < 1) return false;
  auto frobenius_power = [&](int e) {
    Zp x{0, 1};
    for (int i = 0; i < e; ++i) x = zp_powmod(std::move(x), p, f, p);
    return x;
  };
  Zp xk = frobenius_power(k);
  Zp diff = xk;
  diff.resize(std::max<size_t>(diff.size(), 2), 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  zp_trim(diff);
  if (!diff.empty()) return false;
  for (int q = 2; q <= k; ++q) {
    if (k % q != 0 || !is_prime(q)) continue;
    Zp xe = frobenius_power(k / q);
    Zp d = xe;
    d.resize(std::max<size_t>(d.size(), 2), 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    zp_trim(d);
    Zp g = zp_gcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

// Lowest monic irreducible of degree k, coefficients compared from the
// top (c_{k-1}, ..., c_0); reproduces u^2+1 for GF(9) and u^3+u+1 for GF(8).
std::vector<std::int64_t> default_modulus(std::int64_t p, int k) {
  std::vector<std::int64_t> c(static_cast<size_t>(k), 0);
  while (true) {
    Zp f(c.begin(), c.end());
    f.push_back(1);
    if (zp_irreducible(f, p)) return {f.begin(), f.end()};
    int i = 0;  // increment (c_{k-1},...,c_0) lexicographically: c_0 fastest
    while (i < k) {
      if (++c[static_cast<size_t>(i)] < p) break;
      c[static_cast<size_t>(i)] = 0;
      ++i;
    }
    if (i == k) fail(errc::internal, "no irreducible modulus found");
  }
}

struct Registry {
  std::mutex mu;
  std::map<std::tuple<std::int64_t, int, std::vector<std::int64_t>>, std::unique_ptr<FieldSpec>> specs;
};

Registry& registry() {
  static Registry* r = new Registry;
  return *r;
}

}  // namespace

FieldSpec::FieldSpec(std::int64_t p, int k, std::vector<std::int64_t> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {}

const FieldSpec& FieldSpec::rationals() {
  static const FieldSpec* q = new FieldSpec(0, 1, {});
  return *q;
}

const FieldSpec& FieldSpec::finite(std::int64_t p, int ext_degree) {
  if (!is_prime(p)) fail(errc::unsupported_input, "characteristic must be prime");
  if (ext_degree < 1) fail(errc::unsupported_input, "extension degree must be positive");
  std::vector<std::int64_t> modulus;
  if (ext_degree > 1) modulus = default_modulus(p, ext_degree);
  return finite_with_modulus(p, std::move(modulus));
}

const FieldSpec& FieldSpec::finite_with_modulus(std::int64_t p, std::vector<std::int64_t> modulus) {
  if (!is_prime(p)) fail(errc::unsupported_input, "characteristic must be prime");
  int k = modulus.empty() ? 1 : static_cast<int>(modulus.size()) - 1;
  if (!modulus.empty()) {
    for (auto& c : modulus) c = ((c % p) + p) % p;
    if (modulus.back() != 1) fail(errc::unsupported_input, "modulus must be monic");
    Zp f(modulus.begin(), modulus.end());
    if (!zp_irreducible(f, p)) fail(errc::unsupported_input, "modulus is reducible");
  }
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_tuple(p, k, modulus);
  auto it = reg.specs.find(key);
  if (it == reg.specs.end())
    it = reg.specs.emplace(key, std::unique_ptr<FieldSpec>(new FieldSpec(p, k, modulus))).first;
  return *it->second;
}

const FieldSpec& FieldSpec::parse(const std::string& text) {
  if (text == "QQ" || text == "Q") return rationals();
  if (text.rfind("GF(", 0) == 0 && text.back() == ')') {
    std::string body = text.substr(3, text.size() - 4);
    size_t caret = body.find('^');
    try {
      if (caret == std::string::npos) return finite(std::stoll(body));
      return finite(std::stoll(body.substr(0, caret)), std::stoi(body.substr(caret + 1)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  fail(errc::syntax_error, "cannot parse field '" + text + "' (expected QQ, GF(p) or GF(p^k))");
}

std::int64_t FieldSpec::order() const {
  if (p_ == 0) fail(errc::unsupported_input, "rationals are infinite");
  std::int64_t n = 1;
  for (int i = 0; i < k_; ++i) {
    if (n > (std::int64_t(1) << 52) / p_) fail(errc::unsupported_input, "field too large to enumerate");
    n *= p_;
  }
  return n;
}

FieldElement FieldSpec::zero() const { return from_integer(0); }
FieldElement FieldSpec::one() const { return from_integer(1); }

FieldElement FieldSpec::from_integer(std::int64_t n) const {
  if (p_ == 0) return FieldElement(this, mpq_class(n));
  std::int64_t r = ((n % p_) + p_) % p_;
  if (k_ == 1) return FieldElement(this, r);
  std::vector<std::int64_t> v(static_cast<size_t>(k_), 0);
  v[0] = r;
  return FieldElement(this, std::move(v));
}

FieldElement FieldSpec::from_rational(const mpq_class& q) const {
  if (p_ == 0) {
    mpq_class c = q;
    c.canonicalize();
    return FieldElement(this, std::move(c));
  }
  mpz_class num = q.get_num(), den = q.get_den();
  std::int64_t n = mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p_));
  std::int64_t d = mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p_));
  if (d == 0) fail(errc::division_by_zero, "denominator divisible by characteristic");
  return from_integer(n * mod_inverse(d, p_) % p_);
}

FieldElement FieldSpec::from_residue(std::vector<std::int64_t> coeffs) const {
  if (p_ == 0 || k_ == 1) fail(errc::unsupported_input, "from_residue needs an extension field");
  coeffs.resize(static_cast<size_t>(k_), 0);
  for (auto& c : coeffs) c = ((c % p_) + p_) % p_;
  return FieldElement(this, std::move(coeffs));
}

FieldElement FieldSpec::element_from_index(std::int64_t idx) const {
  if (p_ == 0) fail(errc::unsupported_input, "cannot enumerate the rationals");
  if (k_ == 1) return from_integer(idx);
  std::vector<std::int64_t> v(static_cast<size_t>(k_), 0);
  for (int i = 0; i < k_ && idx > 0; ++i) {
    v[static_cast<size_t>(i)] = idx % p_;
    idx /= p_;
  }
  return FieldElement(this, std::move(v));
}

FieldElement FieldSpec::generator() const {
  if (p_ != 0 && k_ > 1) {
    std::vector<std::int64_t> v(static_cast<size_t>(k_), 0);
    v[1] = 1;
    return FieldElement(this, std::move(v));
  }
  return one();
}

std::string FieldSpec::to_string() const {
  if (p_ == 0) return "QQ";
  if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

bool FieldElement::is_zero() const {
  if (const auto* r = std::get_if<std::int64_t>(&rep_)) return *r == 0;
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&rep_))
    return std::all_of(v->begin(), v->end(), [](std::int64_t c) { return c == 0; });
  return std::get<mpq_class>(rep_) == 0;
}

bool FieldElement::is_one() const {
  if (const auto* r = std::get_if<std::int64_t>(&rep_)) return *r == 1;
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&rep_)) {
    if ((*v)[0] != 1) return false;
    return std::all_of(v->begin() + 1, v->end(), [](std::int64_t c) { return c == 0; });
  }
  return std::get<mpq_class>(rep_) == 1;
}

FieldElement FieldElement::operator-() const {
  std::int64_t p = owner_->p_;
  if (const auto* r = std::get_if<std::int64_t>(&rep_)) return {owner_, (p - *r) % p};
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&rep_)) {
    auto w = *v;
    for (auto& c : w) c = (p - c) % p;
    return {owner_, std::move(w)};
  }
  return {owner_, mpq_class(-std::get<mpq_class>(rep_))};
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  FieldElement r = *this;
  r += o;
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  FieldElement r = *this;
  r -= o;
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  FieldElement r = *this;
  r *= o;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same_owner(o);
  std::int64_t p = owner_->p_;
  if (auto* r = std::get_if<std::int64_t>(&rep_)) {
    *r = (*r + std::get<std::int64_t>(o.rep_)) % p;
  } else if (auto* v = std::get_if<std::vector<std::int64_t>>(&rep_)) {
    const auto& w = std::get<std::vector<std::int64_t>>(o.rep_);
    for (size_t i = 0; i < v->size(); ++i) (*v)[i] = ((*v)[i] + w[i]) % p;
  } else {
    std::get<mpq_class>(rep_) += std::get<mpq_class>(o.rep_);
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same_owner(o);
  std::int64_t p = owner_->p_;
  if (auto* r = std::get_if<std::int64_t>(&rep_)) {
    *r = ((*r - std::get<std::int64_t>(o.rep_)) % p + p) % p;
  } else if (auto* v = std::get_if<std::vector<std::int64_t>>(&rep_)) {
    const auto& w = std::get<std::vector<std::int64_t>>(o.rep_);
    for (size_t i = 0; i < v->size(); ++i) (*v)[i] = (((*v)[i] - w[i]) % p + p) % p;
  } else {
    std::get<mpq_class>(rep_) -= std::get<mpq_class>(o.rep_);
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same_owner(o);
  std::int64_t p = owner_->p_;
  if (auto* r = std::get_if<std::int64_t>(&rep_)) {
    *r = (*r * std::get<std::int64_t>(o.rep_)) % p;
  } else if (auto* v = std::get_if<std::vector<std::int64_t>>(&rep_)) {
    const auto& w = std::get<std::vector<std::int64_t>>(o.rep_);
    Zp prod = zp_mul(Zp(v->begin(), v->end()), Zp(w.begin(), w.end()), p);
    Zp m(owner_->modulus_.begin(), owner_->modulus_.end());
    prod = zp_rem(std::move(prod), m, p);
    prod.resize(v->size(), 0);
    *v = std::vector<std::int64_t>(prod.begin(), prod.end());
  } else {
    std::get<mpq_class>(rep_) *= std::get<mpq_class>(o.rep_);
  }
  return *this;
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
  std::int64_t p = owner_->p_;
  if (const auto* r = std::get_if<std::int64_t>(&rep_)) return {owner_, mod_inverse(*r, p)};
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&rep_)) {
    // extended Euclid in GF(p)[u] against the modulus
    Zp a(owner_->modulus_.begin(), owner_->modulus_.end());
    Zp b(v->begin(), v->end());
    zp_trim(b);
    Zp s0{}, s1{1};
    while (!b.empty()) {
      // divide a by b (b made monic on the fly)
      std::int64_t lead_inv = mod_inverse(b.back(), p);
      Zp q;
      Zp rem = a;
      zp_trim(rem);
      while (rem.size() >= b.size()) {
        std::int64_t c = rem.back() * lead_inv % p;
        size_t shift = rem.size() - b.size();
        if (q.size() < shift + 1) q.resize(shift + 1, 0);
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i)
          rem[shift + i] = ((rem[shift + i] - c * b[i]) % p + p) % p;
        zp_trim(rem);
      }
      // (a, b) <- (b, rem); (s0, s1) <- (s1, s0 - q*s1)
      Zp qs1 = zp_mul(q, s1, p);
      Zp s2 = s0;
      s2.resize(std::max(s2.size(), qs1.size()), 0);
      for (size_t i = 0; i < qs1.size(); ++i) s2[i] = ((s2[i] - qs1[i]) % p + p) % p;
      zp_trim(s2);
      a = std::move(b);
      b = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // a is the gcd (a unit since the modulus is irreducible)
    std::int64_t scale = mod_inverse(a.empty() ? 1 : a.back(), p);
    s0.resize(v->size(), 0);
    std::vector<std::int64_t> out(s0.begin(), s0.end());
    for (auto& c : out) c = c * scale % p;
    return {owner_, std::move(out)};
  }
  return {owner_, mpq_class(1 / std::get<mpq_class>(rep_))};
}

FieldElement FieldElement::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement base = *this, r = owner_->one();
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

FieldElement FieldElement::frobenius() const {
  if (owner_->p_ == 0) fail(errc::unsupported_in_char_zero, "Frobenius needs positive characteristic");
  return pow(owner_->p_);
}

FieldElement FieldElement::frobenius_root() const {
  if (owner_->p_ == 0) fail(errc::unsupported_in_char_zero, "p-th roots need positive characteristic");
  FieldElement r = *this;
  for (int i = 0; i < owner_->k_ - 1; ++i) r = r.frobenius();
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (owner_ != o.owner_) return false;
  return rep_ == o.rep_;
}

std::string FieldElement::to_string() const {
  if (const auto* r = std::get_if<std::int64_t>(&rep_)) return std::to_string(*r);
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&rep_)) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = v->size(); i-- > 0;) {
      if ((*v)[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || (*v)[i] != 1) os << (*v)[i];
      if (i > 0 && (*v)[i] != 1) os << "*";
      if (i == 1) os << "u";
      if (i > 1) os << "u^" << i;
    }
    if (first) os << "0";
    return os.str();
  }
  return std::get<mpq_class>(rep_).get_str();
}

std::int64_t FieldElement::prime_residue() const {
  if (const auto* r = std::get_if<std::int64_t>(&rep_)) return *r;
  fail(errc::unsupported_input, "not a prime-field element");
}

const mpq_class& FieldElement::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&rep_)) return *q;
  fail(errc::unsupported_input, "not a rational element");
}

std::vector<std::int64_t> FieldElement::residue_coeffs() const {
  if (const auto* v = std::get_if<std::vector<std::int64_t>>(&rep_)) return *v;
  if (const auto* r = std::get_if<std::int64_t>(&rep_)) return {*r};
  fail(errc::unsupported_input, "not a finite-field element");
}

std::optional<FieldElement> nth_root(const FieldElement& a, std::int64_t n) {
  if (n <= 0) fail(errc::unsupported_input, "root index must be positive");
  const FieldSpec& F = a.owner();
  if (n == 1 || a.is_zero() || a.is_one()) return a;
  if (F.is_rational()) {
    // exact rational root or nothing
    const mpq_class& q = a.rational();
    mpz_class num_root, den_root;
    bool neg = q < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    mpz_class num = abs(q.get_num());
    mpz_class den = q.get_den();
    if (!mpz_root(num_root.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)))
      return std::nullopt;
    if (!mpz_root(den_root.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)))
      return std::nullopt;
    mpq_class r(neg ? mpz_class(-num_root) : num_root, den_root);
    r.canonicalize();
    return F.from_rational(r);
  }
  std::int64_t q = F.order();
  if (std::gcd(n, q - 1) == 1) {
    // unique root: a^(n^{-1} mod q-1)
    std::int64_t ninv = mod_inverse(((n % (q - 1)) + q - 1) % (q - 1), q - 1);
    return a.pow(ninv);
  }
  // existence test, then brute force (fields here are small)
  if (!a.pow((q - 1) / std::gcd(n, q - 1)).is_one()) return std::nullopt;
  if (q > 4'000'000) fail(errc::unsupported_input, "field too large for root search");
  for (std::int64_t i = 1; i < q; ++i) {
    FieldElement z = F.element_from_index(i);
    if (z.pow(n) == a) return z;
  }
  return std::nullopt;
}

std::optional<int> nth_root_extension_degree(const FieldElement& a, std::int64_t n, int limit) {
  const FieldSpec& F = a.owner();
  if (!F.is_prime_field()) return std::nullopt;
  for (int m = 1; m <= limit; ++m) {
    const FieldSpec& E = FieldSpec::finite(F.characteristic(), m);
    if (nth_root(E.from_integer(a.prime_residue()), n)) return m;
  }
  return std::nullopt;
}

}  // namespace pcs
