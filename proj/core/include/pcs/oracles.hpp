#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pcs/poly.hpp"

namespace pcs {

// Independent cross-check implementations.  These deliberately avoid the
// Mora engine: colength by linear algebra on monomials, multiplicity by
// general elements, semigroup predicates by direct set arithmetic.

// Colength of <gens> in k[[X,Y]] as the stabilized codimension of the span
// of monomial multiples below M^D; nullopt when no stabilization occurs
// below the cap (infinite colength).
std::optional<long> macaulay_colength(const std::vector<BivariatePolynomial>& gens,
                                      int degree_cap = 512);

// Hilbert-Samuel multiplicity by the general-element method: the minimum of
// colength(<a, b>) over `trials` random field-coefficient combinations a, b
// of the generators.  Deterministic for a fixed seed.
long general_element_e0(const std::vector<BivariatePolynomial>& gens, std::uint64_t seed,
                        int trials = 5);

// S \ (S + c - 1) for the numerical semigroup generated by gens, by direct
// enumeration of both sets up to 2c + margin.
std::vector<long> sweep_set_by_enumeration(const std::vector<long>& gens, long conductor);

}  // namespace pcs
