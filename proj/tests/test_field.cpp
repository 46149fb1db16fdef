#include <doctest.h>

#include "oracle.hpp"
#include "skalab/error.hpp"
#include "skalab/field.hpp"

using namespace skalab;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("field spec selection") {
  CHECK(build_field_spec(3, 2) == FieldSpec{3, 2, 2, 0});
  CHECK(build_field_spec(2, 2) == FieldSpec{2, 2, 1, 1});
  CHECK(build_field_spec(7, 1) == FieldSpec{7, 1, 0, 0});
  CHECK(code_of([] { build_field_spec(4, 2); }) == ErrorCode::NotPrime);
  CHECK(code_of([] { build_field_spec(5, 3); }) == ErrorCode::UnsupportedField);

  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 101, 1009}) {
    const auto spec = build_field_spec(p, 2);
    const auto uv = oracle::first_irreducible(p);
    CHECK(spec.u == uv[0]);
    CHECK(spec.v == uv[1]);
  }

  CHECK(field_for_order(9) == build_field_spec(3, 2));
  CHECK(field_for_order(13) == build_field_spec(13, 1));
  CHECK(code_of([] { field_for_order(8); }) == ErrorCode::UnsupportedField);
  CHECK(code_of([] { field_for_order(1); }) == ErrorCode::UnsupportedField);
}

TEST_CASE("worked arithmetic values") {
  const auto f3 = build_field_spec(3, 1);
  const auto f9 = build_field_spec(3, 2);
  CHECK(Elt(f3, 2) * Elt(f3, 2) == Elt(f3, 1));
  CHECK(Elt(f9, 1, 2) * Elt(f9, 2, 1) == Elt(f9, 0, 2));
  CHECK((Elt(f9, 2, 2) + Elt(f9, 1, 1)).is_zero());
  CHECK(inv(Elt(f3, 2)) == Elt(f3, 2));
  CHECK(inv(Elt(f9, 0, 1)) == Elt(f9, 0, 2));
  CHECK(code_of([&] { inv(Elt::zero(f9)); }) == ErrorCode::DivisionByZero);
  CHECK(Elt(f9, 1, 2).decompose() == std::pair<Residue, Residue>{1, 2});
  CHECK(Elt(f3, 2).decompose() == std::pair<Residue, Residue>{2, 0});
  CHECK(Elt(f3, 5) == Elt(f3, 2));
  CHECK(code_of([&] { (void)(Elt(f3, 1) + Elt(f9, 1)); }) == ErrorCode::SpecMismatch);
  CHECK(arith(ArithKind::sub, Elt(f9, 0, 0), Elt(f9, 1, 0)) == Elt(f9, 2, 0));
  CHECK(arith(ArithKind::neg, Elt(f9, 1, 2), Elt(f9, 0)) == Elt(f9, 2, 1));
  CHECK(pow(Elt(f9, 0, 1), 2) == Elt(f9, 2, 0));
  CHECK(pow(Elt(f9, 1, 1), 8) == Elt::one(f9));
}

TEST_CASE("multiplication matches polynomial tables") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 9, 11, 25, 49}) {
    CAPTURE(q);
    const auto spec = field_for_order(q);
    const auto table = oracle::field_of_order(q);
    for (std::uint64_t a = 0; a < q; ++a)
      for (std::uint64_t b = 0; b < q; ++b) {
        const Elt x = Elt::from_code(spec, a), y = Elt::from_code(spec, b);
        REQUIRE((x + y).code() == table.plus(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
        REQUIRE((x * y).code() == table.times(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)));
      }
  }
}

TEST_CASE("inverses against table search") {
  for (std::uint64_t q : {4, 9, 25, 49, 121}) {
    const auto spec = field_for_order(q);
    const auto table = oracle::field_of_order(q);
    for (std::uint32_t a = 1; a < q; ++a) REQUIRE(inv(Elt::from_code(spec, a)).code() == table.inverse(a));
  }
}

TEST_CASE("code round trip and textual syntax") {
  const auto f9 = build_field_spec(3, 2);
  for (std::uint64_t c = 0; c < 9; ++c) {
    const Elt e = Elt::from_code(f9, c);
    CHECK(e.code() == c);
    CHECK(parse_elt(f9, format_elt(e)) == e);
  }
  CHECK(format_elt(Elt(f9, 1, 2)) == "1+2x");
  CHECK(format_elt(Elt(f9, 0, 1)) == "x");
  CHECK(format_elt(Elt(f9, 0, 2)) == "2x");
  CHECK(format_elt(Elt(f9, 0, 0)) == "0");
  CHECK(parse_elt(f9, "2+x") == Elt(f9, 2, 1));
  CHECK(code_of([&] { parse_elt(f9, "1+"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_elt(f9, "abc"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_elt(build_field_spec(5, 1), "x"); }) == ErrorCode::ParseError);
}

TEST_CASE("large prime arithmetic stays exact") {
  const std::uint64_t p = (1ull << 61) - 1;
  const auto spec = build_field_spec(p, 1);
  const Elt a(spec, p - 1);
  CHECK(a * a == Elt::one(spec));
  const Elt b(spec, 123456789123456789ull);
  CHECK(b * inv(b) == Elt::one(spec));
  CHECK(pow_mod(3, p - 1, p) == 1);
}

TEST_CASE("property: field axioms on random triples of F_{p^2}") {
  for (std::uint64_t p : {101, 1009, 65521}) {
    const auto spec = build_field_spec(p, 2);
    std::uint64_t state = p;
    auto next = [&] {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      return Elt::from_code(spec, (state >> 11) % spec.order());
    };
    for (int i = 0; i < 2000; ++i) {
      const Elt a = next(), b = next(), c = next();
      REQUIRE(a * (b + c) == a * b + a * c);
      REQUIRE((a * b) * c == a * (b * c));
      REQUIRE(a * b == b * a);
      REQUIRE(a - a == Elt::zero(spec));
      if (!a.is_zero()) REQUIRE(a * inv(a) == Elt::one(spec));
      // Frobenius is additive.
      REQUIRE(pow(a + b, p) == pow(a, p) + pow(b, p));
    }
  }
}
