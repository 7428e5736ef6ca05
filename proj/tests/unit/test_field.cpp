#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pcs/field.hpp"

using namespace pcs;

TEST_CASE("prime field arithmetic") {
  const FieldSpec& F5 = FieldSpec::finite(5);
  CHECK(F5.from_integer(3) + F5.from_integer(4) == F5.from_integer(2));
  CHECK(F5.from_integer(2) * F5.from_integer(4) == F5.from_integer(3));
  CHECK(F5.from_integer(-1) == F5.from_integer(4));
  CHECK(F5.from_integer(3).inverse() == F5.from_integer(2));
  CHECK_THROWS_AS(F5.zero().inverse(), Error);
}

TEST_CASE("deterministic moduli") {
  const FieldSpec& F9 = FieldSpec::finite(3, 2);
  // lowest lexicographic irreducible: u^2 + 1
  CHECK(F9.modulus() == std::vector<std::int64_t>({1, 0, 1}));
  const FieldSpec& F4 = FieldSpec::finite(2, 2);
  CHECK(F4.modulus() == std::vector<std::int64_t>({1, 1, 1}));
  const FieldSpec& F8 = FieldSpec::finite(2, 3);
  CHECK(F8.modulus() == std::vector<std::int64_t>({1, 1, 0, 1}));
  // interning: same spec object
  CHECK(&FieldSpec::finite(3, 2) == &F9);
}

TEST_CASE("extension arithmetic in GF(9)") {
  const FieldSpec& F9 = FieldSpec::finite(3, 2);
  FieldElement u = F9.generator();
  // u * u = -1 = 2 with modulus u^2 + 1
  CHECK(u * u == F9.from_integer(2));
  CHECK((u * u * u * u) == F9.one());
  CHECK(u.inverse() * u == F9.one());
}

TEST_CASE("rational arithmetic") {
  const FieldSpec& Q = FieldSpec::rationals();
  FieldElement a = Q.from_rational(mpq_class(2, 3));
  FieldElement b = Q.from_rational(mpq_class(3, 4));
  CHECK(a * b == Q.from_rational(mpq_class(1, 2)));
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(a.frobenius_root(), Error);
}

TEST_CASE("field mismatch is rejected") {
  const FieldSpec& F5 = FieldSpec::finite(5);
  const FieldSpec& F7 = FieldSpec::finite(7);
  CHECK_THROWS_AS(F5.one() + F7.one(), Error);
}

TEST_CASE("frobenius root") {
  const FieldSpec& F5 = FieldSpec::finite(5);
  CHECK(F5.from_integer(2).frobenius_root() == F5.from_integer(2));  // fixed on the prime field
  const FieldSpec& F9 = FieldSpec::finite(3, 2);
  FieldElement u = F9.generator();
  FieldElement r = u.frobenius_root();
  CHECK(r == u.pow(3));
  CHECK(r.pow(3) == u);
  const FieldSpec& F4 = FieldSpec::finite(2, 2);
  CHECK(F4.one().frobenius_root() == F4.one());
}

TEST_CASE("field axioms on random samples") {
  std::mt19937_64 rng(20240811);
  for (const FieldSpec* F : {&FieldSpec::finite(5), &FieldSpec::finite(3, 2), &FieldSpec::finite(2, 3)}) {
    std::int64_t q = F->order();
    for (int trial = 0; trial < 200; ++trial) {
      FieldElement a = F->element_from_index(static_cast<std::int64_t>(rng() % q));
      FieldElement b = F->element_from_index(static_cast<std::int64_t>(rng() % q));
      FieldElement c = F->element_from_index(static_cast<std::int64_t>(rng() % q));
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + (-a) == F->zero());
      if (!a.is_zero()) CHECK(a * a.inverse() == F->one());
      CHECK(a.frobenius_root().pow(F->characteristic()) == a);
    }
  }
}

TEST_CASE("nth roots") {
  const FieldSpec& F7 = FieldSpec::finite(7);
  auto r = nth_root(F7.from_integer(6), 3);  // cubes mod 7 are {0, 1, 6}
  REQUIRE(r.has_value());
  CHECK(r->pow(3) == F7.from_integer(6));
  CHECK(!nth_root(F7.from_integer(2), 3).has_value());
  // 2 is not a square mod 5; the quadratic extension repairs that
  const FieldSpec& F5 = FieldSpec::finite(5);
  CHECK(!nth_root(F5.from_integer(2), 2).has_value());
  auto deg = nth_root_extension_degree(F5.from_integer(2), 2, 4);
  REQUIRE(deg.has_value());
  CHECK(*deg == 2);
}

TEST_CASE("field spec parsing") {
  CHECK(&FieldSpec::parse("QQ") == &FieldSpec::rationals());
  CHECK(&FieldSpec::parse("GF(5)") == &FieldSpec::finite(5));
  CHECK(&FieldSpec::parse("GF(3^2)") == &FieldSpec::finite(3, 2));
  CHECK_THROWS_AS(FieldSpec::parse("GF(4)"), Error);
  CHECK_THROWS_AS(FieldSpec::parse("banana"), Error);
}

TEST_CASE("modulus validation") {
  CHECK_THROWS_AS(FieldSpec::finite_with_modulus(3, {0, 0, 1}), Error);  // u^2 reducible
  const FieldSpec& F = FieldSpec::finite_with_modulus(3, {1, 0, 1});
  CHECK(F.extension_degree() == 2);
}
