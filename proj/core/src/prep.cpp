#include "pcs/prep.hpp"

#include <algorithm>
#include <unordered_map>

#include "pcs/branch.hpp"

namespace pcs {

namespace {

FieldElement binom_elt(const FieldSpec& F, long n, long r) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return F.from_rational(mpq_class(b));
}

// f(X, Y + c X^a Y^b), dropping terms of weight r*xe + ye above the bound.
BivariatePolynomial shear_y(const BivariatePolynomial& f, const FieldElement& c, int a, int b,
                            int r, int weight_bound) {
  const FieldSpec& F = f.owner();
  std::unordered_map<std::uint64_t, FieldElement> acc;
  std::vector<FieldElement> cpow{F.one()};
  auto c_pow = [&](int e) -> const FieldElement& {
    while (static_cast<int>(cpow.size()) <= e) cpow.push_back(cpow.back() * c);
    return cpow[static_cast<size_t>(e)];
  };
  for (const auto& t : f.terms()) {
    for (int k = 0; k <= t.ye; ++k) {
      // Y^ye -> C(ye,k) Y^k (c X^a Y^b)^(ye-k)
      int e = t.ye - k;
      int xe = t.xe + a * e;
      int ye = k + b * e;
      if (static_cast<long>(r) * xe + ye > weight_bound) continue;
      FieldElement cc = t.c * binom_elt(F, t.ye, k) * c_pow(e);
      if (cc.is_zero()) continue;
      std::uint64_t key = (static_cast<std::uint64_t>(xe) << 32) | static_cast<std::uint64_t>(ye);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, std::move(cc));
      else
        it->second += cc;
    }
  }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [key, cc] : acc)
    if (!cc.is_zero())
      ts.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xFFFFFFFFu), std::move(cc)});
  return BivariatePolynomial(F, std::move(ts));
}

}  // namespace

RecordedAutomorphism::RecordedAutomorphism(BivariatePolynomial image_x, BivariatePolynomial image_y)
    : image_x_(std::move(image_x)), image_y_(std::move(image_y)) {
  const FieldSpec& F = image_x_.owner();
  FieldElement a = image_x_.coeff(1, 0), b = image_x_.coeff(0, 1);
  FieldElement c = image_y_.coeff(1, 0), d = image_y_.coeff(0, 1);
  if ((a * d - b * c).is_zero())
    fail(errc::unsupported_input, "coordinate change has singular linear part");
  if (!image_x_.coeff(0, 0).is_zero() || !image_y_.coeff(0, 0).is_zero())
    fail(errc::unsupported_input, "coordinate change must fix the origin");
  (void)F;
}

RecordedAutomorphism RecordedAutomorphism::identity(const FieldSpec& F) {
  return RecordedAutomorphism(BivariatePolynomial::variable(F, Var::X),
                              BivariatePolynomial::variable(F, Var::Y));
}

bool RecordedAutomorphism::is_identity() const {
  const FieldSpec& F = image_x_.owner();
  return image_x_ == BivariatePolynomial::variable(F, Var::X) &&
         image_y_ == BivariatePolynomial::variable(F, Var::Y);
}

BivariatePolynomial RecordedAutomorphism::apply(const BivariatePolynomial& f,
                                                int degree_bound) const {
  return substitute(f, image_x_, image_y_, degree_bound);
}

RecordedAutomorphism RecordedAutomorphism::then(const RecordedAutomorphism& next,
                                                int degree_bound) const {
  // (f . this) . next = f . c  with  c = this's images evaluated at next
  return RecordedAutomorphism(substitute(image_x_, next.image_x_, next.image_y_, degree_bound),
                              substitute(image_y_, next.image_x_, next.image_y_, degree_bound));
}

RecordedAutomorphism RecordedAutomorphism::inverse(int degree_bound) const {
  const FieldSpec& F = image_x_.owner();
  FieldElement a = image_x_.coeff(1, 0), b = image_x_.coeff(0, 1);
  FieldElement c = image_y_.coeff(1, 0), d = image_y_.coeff(0, 1);
  FieldElement det_inv = (a * d - b * c).inverse();
  BivariatePolynomial X = BivariatePolynomial::variable(F, Var::X);
  BivariatePolynomial Y = BivariatePolynomial::variable(F, Var::Y);
  // higher-order parts of the images
  BivariatePolynomial hx = image_x_ - X.scaled(a) - Y.scaled(b);
  BivariatePolynomial hy = image_y_ - X.scaled(c) - Y.scaled(d);
  auto linv = [&](const BivariatePolynomial& u, const BivariatePolynomial& v) {
    // apply the inverse linear part to the column (u, v)
    return std::make_pair((u.scaled(d) - v.scaled(b)).scaled(det_inv),
                          (v.scaled(a) - u.scaled(c)).scaled(det_inv));
  };
  auto [px, py] = linv(X, Y);
  for (int it = 0; it < degree_bound + 2; ++it) {
    BivariatePolynomial tx = X - substitute(hx, px, py, degree_bound);
    BivariatePolynomial ty = Y - substitute(hy, px, py, degree_bound);
    auto [nx, ny] = linv(tx, ty);
    if (nx == px && ny == py) break;
    px = std::move(nx);
    py = std::move(ny);
  }
  RecordedAutomorphism psi(px, py);
  // verify to the requested bound
  if (substitute(image_x_, px, py, degree_bound) != X.truncated_at_degree(degree_bound) ||
      substitute(image_y_, px, py, degree_bound) != Y.truncated_at_degree(degree_bound))
    fail(errc::precision_exhausted, "automorphism inverse did not converge");
  return psi;
}

LevinsonResult levinson_prepare(const BivariatePolynomial& f, int x_precision) {
  const FieldSpec& F = f.owner();
  if (f.is_zero() || !f.coeff(0, 0).is_zero())
    fail(errc::unsupported_input, "preparation needs f in the maximal ideal");
  // minimal pure Y-power
  int r = -1;
  for (const auto& t : f.terms())
    if (t.xe == 0 && (r < 0 || t.ye < r)) r = t.ye;
  if (r < 1) fail(errc::no_pure_y_term, "f has no pure Y-power monomial");
  std::int64_t p = F.characteristic();
  if (p > 0 && r % p == 0)
    fail(errc::characteristic_divides_r, "characteristic divides the minimal pure Y-degree " +
                                             std::to_string(r));
  int W = r * (x_precision + 2);
  FieldElement pivot = f.coeff(0, r) * F.from_integer(r);  // r * alpha_{0,r}, a unit

  BivariatePolynomial cur = f;
  RecordedAutomorphism phi = RecordedAutomorphism::identity(F);
  bool phi_trivial = true;
  size_t guard = 0;
  while (true) {
    if (++guard > 200000) fail(errc::internal, "Levinson elimination did not terminate");
    // offending monomial of minimal weight
    const Term* off = nullptr;
    long best_w = 0;
    for (const auto& t : cur.terms()) {
      if (t.ye <= r) continue;
      long w = static_cast<long>(r) * t.xe + t.ye;
      if (w <= W && (!off || w < best_w)) {
        off = &t;
        best_w = w;
      }
    }
    if (!off) break;
    // kill X^i Y^j with the correction  Y -> Y - (c / (r a_0r)) X^i Y^(j-r+1),
    // pivoting on the derivative of the Y^r term
    FieldElement corr = -(off->c / pivot);
    int a = off->xe, b = off->ye - r + 1;
    cur = shear_y(cur, corr, a, b, r, W);
    BivariatePolynomial eps = BivariatePolynomial::monomial(F, a, b, corr);
    // compose: previous images evaluated at (X, Y + eps)
    BivariatePolynomial step_y = BivariatePolynomial::variable(F, Var::Y) + eps;
    if (phi_trivial) {
      phi = RecordedAutomorphism(BivariatePolynomial::variable(F, Var::X), step_y);
      phi_trivial = false;
    } else {
      phi = phi.then(RecordedAutomorphism(BivariatePolynomial::variable(F, Var::X), step_y), W);
    }
  }
  // postconditions on the prepared part
  if (cur.coeff(0, r).is_zero()) fail(errc::internal, "preparation lost the Y^r pivot");
  for (int j = 0; j < r; ++j)
    if (!cur.coeff(0, j).is_zero()) fail(errc::internal, "preparation created a lower pure Y-power");
  return LevinsonResult{std::move(phi), std::move(cur), r, x_precision, W};
}

WeierstrassResult weierstrass_by_coords(const BivariatePolynomial& f, int x_precision) {
  const FieldSpec& F = f.owner();
  std::int64_t p = F.characteristic();
  TangentLine tl = tangent_data(f);
  if (tl.split) fail(errc::unsupported_input, "tangent cone splits: not a branch");
  int n = tl.mult;
  if (p > 0 && n % p == 0)
    fail(errc::characteristic_divides_multiplicity,
         "characteristic divides the multiplicity " + std::to_string(n));

  // rotate the tangent line to Y
  RecordedAutomorphism rotate = RecordedAutomorphism::identity(F);
  if (tl.line_is_x) {
    rotate = RecordedAutomorphism(BivariatePolynomial::variable(F, Var::Y),
                                  BivariatePolynomial::variable(F, Var::X));
  } else if (!tl.theta->is_zero()) {
    // tangent (Y - theta X)^n: send Y to Y + theta X
    rotate = RecordedAutomorphism(
        BivariatePolynomial::variable(F, Var::X),
        BivariatePolynomial::variable(F, Var::Y) +
            BivariatePolynomial::variable(F, Var::X).scaled(*tl.theta));
  }
  BivariatePolynomial g = rotate.apply(f);

  LevinsonResult lev = levinson_prepare(g, x_precision);
  if (lev.r != n) fail(errc::internal, "prepared degree differs from the multiplicity");

  // scale Y by an n-th root of A_0^(-1)
  UniPoly A0 = lev.prepared.y_coefficient(n);
  FieldElement a0 = A0.coeff(0);
  auto root = nth_root(a0, n);
  if (!root) {
    auto m = nth_root_extension_degree(a0, n, 2 * n + 2);
    if (!m || !F.is_prime_field())
      fail(errc::no_root_in_field,
           "leading coefficient " + a0.to_string() + " has no " + std::to_string(n) + "-th root");
    // escalate to GF(p^m) and redo the whole preparation there
    const FieldSpec& E = FieldSpec::finite(p, *m);
    std::vector<Term> mapped;
    for (const auto& t : f.terms())
      mapped.push_back({t.xe, t.ye, E.from_integer(t.c.prime_residue())});
    WeierstrassResult res = weierstrass_by_coords(BivariatePolynomial(E, std::move(mapped)),
                                                  x_precision);
    res.escalated = true;
    return res;
  }

  int prec = x_precision;
  UniSeries s = UniSeries::from_poly(A0, prec).nth_root(n).inverse();
  // with Y -> Y s(X):  coefficient of Y^j becomes A_(n-j) s^j; top becomes 1
  std::vector<UniPoly> out(static_cast<size_t>(n + 1), UniPoly(lev.prepared.owner()));
  UniSeries spow = UniSeries::one(lev.prepared.owner(), prec);
  for (int j = 0; j <= n; ++j) {
    UniSeries cj = (UniSeries::from_poly(lev.prepared.y_coefficient(j), prec) * spow).truncated(prec);
    std::vector<FieldElement> coeffs;
    for (int i = 0; i < prec; ++i) coeffs.push_back(cj.coeff(i));
    out[static_cast<size_t>(j)] = UniPoly(lev.prepared.owner(), std::move(coeffs));
    if (j < n) spow = (spow * s).truncated(prec);
  }
  BivariatePolynomial prepared = BivariatePolynomial::from_y_coefficients(lev.prepared.owner(), out);
  // force the certified-unit leading coefficient to 1 exactly
  prepared = prepared - BivariatePolynomial::from_y_coefficients(
                            lev.prepared.owner(), {out[static_cast<size_t>(n)]})
                            .times_monomial(0, n, lev.prepared.owner().one());
  prepared = prepared + BivariatePolynomial::monomial(lev.prepared.owner(), 0, n,
                                                      lev.prepared.owner().one());

  // record the scaling as a polynomial coordinate change
  std::vector<FieldElement> strunc;
  for (int i = 0; i < prec; ++i) strunc.push_back(s.coeff(i));
  BivariatePolynomial s_poly = BivariatePolynomial::from_y_coefficients(
      lev.prepared.owner(), {UniPoly(lev.prepared.owner(), std::move(strunc))});
  RecordedAutomorphism scale(BivariatePolynomial::variable(lev.prepared.owner(), Var::X),
                             BivariatePolynomial::variable(lev.prepared.owner(), Var::Y) * s_poly);
  RecordedAutomorphism phi = rotate.then(lev.phi).then(scale, lev.weight_bound);

  // Weierstrass shape: every lower coefficient must vanish past its degree
  for (int j = 0; j < n; ++j) {
    UniPoly bj = prepared.y_coefficient(j);
    if (!bj.is_zero() && bj.order() <= n - j)
      fail(errc::internal, "prepared form is not Weierstrass (mult(B_i) <= i)");
  }
  return WeierstrassResult{std::move(phi), std::move(prepared), &prepared.owner(), prec, false};
}

}  // namespace pcs
