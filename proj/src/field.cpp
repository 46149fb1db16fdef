#include "skalab/field.hpp"

#include <cassert>
#include <charconv>

#include "skalab/error.hpp"

namespace skalab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::ChartInvalid: return "ChartInvalid";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::ExhaustiveInfeasible: return "ExhaustiveInfeasible";
    case ErrorCode::TooManyEdges: return "TooManyEdges";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::PhaseError: return "PhaseError";
    case ErrorCode::RoundMismatch: return "RoundMismatch";
    case ErrorCode::DegenerateH: return "DegenerateH";
    case ErrorCode::NotCompleted: return "NotCompleted";
    case ErrorCode::BadFrame: return "BadFrame";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::TargetOnBoundary: return "TargetOnBoundary";
    case ErrorCode::NotCovered: return "NotCovered";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::EstimatorFailure: return "EstimatorFailure";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

Residue pow_mod(Residue a, std::uint64_t e, Residue p) noexcept {
  Residue result = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) result = mul_mod(result, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return result;
}

Residue inv_mod(Residue a, Residue p) {
  a %= p;
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 mod " + std::to_string(p));
  return pow_mod(a, p - 2, p);
}

namespace {

bool has_root(Residue u, Residue v, Residue p) {
  for (Residue x = 0; x < p; ++x) {
    Residue lhs = mul_mod(x, x, p);
    Residue rhs = add_mod(mul_mod(v, x, p), u, p);
    if (lhs == rhs) return true;
  }
  return false;
}

void require_same(const FieldSpec& a, const FieldSpec& b) {
  if (!(a == b)) throw Error(ErrorCode::SpecMismatch, "operands belong to different fields");
}

}  // namespace

FieldSpec build_field_spec(std::uint64_t p, int degree) {
  if (degree != 1 && degree != 2)
    throw Error(ErrorCode::UnsupportedField, "degree must be 1 or 2");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  // mul_mod of two residues stays in 128 bits; keep sums below 2^63.
  if (p > (std::uint64_t{1} << 61))
    throw Error(ErrorCode::UnsupportedField, "characteristic exceeds 2^61");

  FieldSpec spec;
  spec.p = p;
  spec.degree = degree;
  if (degree == 1) return spec;

  for (Residue v = 0; v < p; ++v) {
    for (Residue u = 0; u < p; ++u) {
      if (!has_root(u, v, p)) {
        spec.u = u;
        spec.v = v;
        return spec;
      }
    }
  }
  // Quadratic non-residues exist for odd p; X^2+X+1 is irreducible over F_2.
  assert(false && "no irreducible quadratic found");
  throw Error(ErrorCode::UnsupportedField, "no irreducible quadratic");
}

FieldSpec field_for_order(std::uint64_t q) {
  if (is_prime(q)) return build_field_spec(q, 1);
  std::uint64_t r = 1;
  while ((r + 1) * (r + 1) <= q) ++r;
  if (r * r == q && is_prime(r)) return build_field_spec(r, 2);
  throw Error(ErrorCode::UnsupportedField,
              "q=" + std::to_string(q) + " is neither a prime nor the square of a prime");
}

Elt::Elt(const FieldSpec& spec, Residue a0, Residue a1) : spec_(spec), a0_(a0 % spec.p), a1_(a1 % spec.p) {
  if (spec_.degree == 1) a1_ = 0;
}

Elt Elt::from_code(const FieldSpec& spec, std::uint64_t code) {
  if (spec.degree == 1) return Elt(spec, code);
  return Elt(spec, code / spec.p, code % spec.p);
}

Elt Elt::operator-() const {
  Elt r = *this;
  r.a0_ = sub_mod(0, a0_, spec_.p);
  r.a1_ = sub_mod(0, a1_, spec_.p);
  return r;
}

Elt operator+(const Elt& a, const Elt& b) {
  require_same(a.spec_, b.spec_);
  Elt r = a;
  r.a0_ = add_mod(a.a0_, b.a0_, a.spec_.p);
  r.a1_ = add_mod(a.a1_, b.a1_, a.spec_.p);
  return r;
}

Elt operator-(const Elt& a, const Elt& b) {
  require_same(a.spec_, b.spec_);
  Elt r = a;
  r.a0_ = sub_mod(a.a0_, b.a0_, a.spec_.p);
  r.a1_ = sub_mod(a.a1_, b.a1_, a.spec_.p);
  return r;
}

Elt operator*(const Elt& a, const Elt& b) {
  require_same(a.spec_, b.spec_);
  const FieldSpec& s = a.spec_;
  const Residue p = s.p;
  Elt r = a;
  if (s.degree == 1) {
    r.a0_ = mul_mod(a.a0_, b.a0_, p);
    return r;
  }
  // (a0 + a1 xi)(b0 + b1 xi) = a0b0 + (a0b1 + a1b0) xi + a1b1 (u + v xi)
  const Residue hi = mul_mod(a.a1_, b.a1_, p);
  r.a0_ = add_mod(mul_mod(a.a0_, b.a0_, p), mul_mod(hi, s.u, p), p);
  r.a1_ = add_mod(add_mod(mul_mod(a.a0_, b.a1_, p), mul_mod(a.a1_, b.a0_, p), p),
                  mul_mod(hi, s.v, p), p);
  return r;
}

Elt arith(ArithKind kind, const Elt& a, const Elt& b) {
  switch (kind) {
    case ArithKind::add: return a + b;
    case ArithKind::sub: return a - b;
    case ArithKind::mul: return a * b;
    case ArithKind::neg: return -a;
  }
  return a;
}

Elt inv(const Elt& a) {
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of 0");
  const FieldSpec& s = a.spec();
  if (s.degree == 1) return Elt(s, inv_mod(a.a0(), s.p));
  // The conjugate root is v - xi, so conj(a0 + a1 xi) = (a0 + a1 v) - a1 xi and
  // a * conj(a) is the norm, which lies in the prime subfield.
  Elt conj(s, add_mod(a.a0(), mul_mod(a.a1(), s.v, s.p), s.p), sub_mod(0, a.a1(), s.p));
  Elt norm = a * conj;
  assert(norm.a1() == 0);
  return conj * Elt(s, inv_mod(norm.a0(), s.p));
}

Elt pow(const Elt& a, std::uint64_t e) {
  Elt result = Elt::one(a.spec());
  Elt base = a;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Elt compose(const FieldSpec& spec, Residue a0, Residue a1) { return Elt(spec, a0, a1); }

std::string format_elt(const Elt& e) {
  if (e.a1() == 0) return std::to_string(e.a0());
  std::string x = e.a1() == 1 ? "x" : std::to_string(e.a1()) + "x";
  if (e.a0() == 0) return x;
  return std::to_string(e.a0()) + "+" + x;
}

namespace {

Residue parse_residue(std::string_view s, std::string_view whole) {
  Residue value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, "bad element '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Elt parse_elt(const FieldSpec& spec, std::string_view text) {
  Residue a0 = 0, a1 = 0;
  bool seen0 = false, seen1 = false;
  std::string_view rest = text;
  while (true) {
    auto plus = rest.find('+');
    std::string_view term = rest.substr(0, plus);
    if (!term.empty() && term.back() == 'x') {
      if (seen1) throw Error(ErrorCode::ParseError, "repeated xi term in '" + std::string(text) + "'");
      term.remove_suffix(1);
      a1 = term.empty() ? 1 : parse_residue(term, text);
      seen1 = true;
    } else {
      if (seen0) throw Error(ErrorCode::ParseError, "repeated constant in '" + std::string(text) + "'");
      a0 = parse_residue(term, text);
      seen0 = true;
    }
    if (plus == std::string_view::npos) break;
    rest = rest.substr(plus + 1);
  }
  if (a0 >= spec.p || a1 >= spec.p)
    throw Error(ErrorCode::ParseError, "residue out of range in '" + std::string(text) + "'");
  if (seen1 && spec.degree == 1 && a1 != 0)
    throw Error(ErrorCode::ParseError, "xi term in a prime field: '" + std::string(text) + "'");
  return Elt(spec, a0, a1);
}

}  // namespace skalab
