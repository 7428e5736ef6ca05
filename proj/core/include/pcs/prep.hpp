#pragma once

#include <optional>
#include <vector>

#include "pcs/poly.hpp"

namespace pcs {

// A polynomial coordinate change of k[[X,Y]] with invertible linear part.
// Images may be truncations of the ideal (series) change; the map itself is
// always a genuine automorphism, so invariance statements about it are exact.
class RecordedAutomorphism {
 public:
  RecordedAutomorphism(BivariatePolynomial image_x, BivariatePolynomial image_y);
  static RecordedAutomorphism identity(const FieldSpec& F);

  const BivariatePolynomial& image_x() const { return image_x_; }
  const BivariatePolynomial& image_y() const { return image_y_; }
  bool is_identity() const;

  // f(image_x, image_y), optionally truncated at a total-degree bound.
  BivariatePolynomial apply(const BivariatePolynomial& f, int degree_bound = -1) const;
  // Composite c with c.apply(f) == next.apply(this->apply(f)).
  RecordedAutomorphism then(const RecordedAutomorphism& next, int degree_bound = -1) const;
  // Truncated inverse: psi with apply(psi(f)) == f modulo M^degree_bound.
  RecordedAutomorphism inverse(int degree_bound) const;

 private:
  BivariatePolynomial image_x_, image_y_;
};

struct LevinsonResult {
  RecordedAutomorphism phi;
  BivariatePolynomial prepared;  // A_0(X) Y^r + ... + A_r(X) + weight-(>W) tail
  int r;
  int x_precision;   // the A_i are certified modulo X^x_precision
  int weight_bound;  // terms of weight r*deg_X + deg_Y above this were dropped
};

// Coordinate change Y -> Y + correction killing every monomial of Y-degree
// above r, where Y^r is the minimal pure Y-power of f; requires p not
// dividing r.  X is preserved.
LevinsonResult levinson_prepare(const BivariatePolynomial& f, int x_precision = 48);

struct WeierstrassResult {
  RecordedAutomorphism phi;
  BivariatePolynomial prepared;  // monic degree-n Weierstrass polynomial in Y
  const FieldSpec* field;        // possibly an extension of the input field
  int x_precision;
  bool escalated;
};

// Monic Weierstrass form of an irreducible f with p not dividing mult(f),
// through coordinate changes only: tangent rotation, Levinson preparation,
// then Y-scaling by an n-th root of the leading coefficient (escalating the
// field when the constant has no root).
WeierstrassResult weierstrass_by_coords(const BivariatePolynomial& f, int x_precision = 48);

inline BivariatePolynomial apply_automorphism(const RecordedAutomorphism& phi,
                                              const BivariatePolynomial& f,
                                              int degree_bound = -1) {
  return phi.apply(f, degree_bound);
}

}  // namespace pcs
