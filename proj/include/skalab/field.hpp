#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace skalab {

using Residue = std::uint64_t;

/// F_p (degree 1) or F_{p^2} = F_p[xi]/(xi^2 - v*xi - u) (degree 2).
struct FieldSpec {
  Residue p = 2;
  int degree = 1;
  Residue u = 0;  // xi^2 = u + v*xi; zero for degree 1
  Residue v = 0;

  Residue order() const noexcept { return degree == 1 ? p : p * p; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n) noexcept;

/// Deterministic: for degree 2 picks the first (u, v), scanning v outer and u
/// inner in ascending order, such that X^2 - vX - u has no root in F_p.
FieldSpec build_field_spec(std::uint64_t p, int degree);

/// Resolves a field size q (prime, or square of a prime) to its spec.
FieldSpec field_for_order(std::uint64_t q);

// Arithmetic in the prime subfield.
inline Residue add_mod(Residue a, Residue b, Residue p) noexcept {
  Residue s = a + b;
  return s >= p ? s - p : s;
}
inline Residue sub_mod(Residue a, Residue b, Residue p) noexcept {
  return a >= b ? a - b : p - (b - a);
}
inline Residue mul_mod(Residue a, Residue b, Residue p) noexcept {
  return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % p);
}
Residue pow_mod(Residue a, std::uint64_t e, Residue p) noexcept;
Residue inv_mod(Residue a, Residue p);

/// Exact field element a0 + a1*xi, always canonically reduced.
class Elt {
 public:
  Elt() = default;
  Elt(const FieldSpec& spec, Residue a0, Residue a1 = 0);

  static Elt zero(const FieldSpec& spec) { return Elt(spec, 0, 0); }
  static Elt one(const FieldSpec& spec) { return Elt(spec, 1, 0); }

  /// Dense index in [0, q): a0 * p + a1 for degree 2, a0 for degree 1.
  /// Sorting by code is lexicographic order on (a0, a1).
  static Elt from_code(const FieldSpec& spec, std::uint64_t code);
  std::uint64_t code() const noexcept { return spec_.degree == 1 ? a0_ : a0_ * spec_.p + a1_; }

  const FieldSpec& spec() const noexcept { return spec_; }
  Residue a0() const noexcept { return a0_; }
  Residue a1() const noexcept { return a1_; }
  bool is_zero() const noexcept { return a0_ == 0 && a1_ == 0; }
  bool in_subfield() const noexcept { return a1_ == 0; }

  std::pair<Residue, Residue> decompose() const noexcept { return {a0_, a1_}; }

  Elt operator-() const;
  friend Elt operator+(const Elt& a, const Elt& b);
  friend Elt operator-(const Elt& a, const Elt& b);
  friend Elt operator*(const Elt& a, const Elt& b);
  Elt& operator+=(const Elt& b) { return *this = *this + b; }
  Elt& operator-=(const Elt& b) { return *this = *this - b; }
  Elt& operator*=(const Elt& b) { return *this = *this * b; }

  friend bool operator==(const Elt& a, const Elt& b) noexcept {
    return a.spec_ == b.spec_ && a.a0_ == b.a0_ && a.a1_ == b.a1_;
  }

 private:
  FieldSpec spec_{};
  Residue a0_ = 0;
  Residue a1_ = 0;
};

enum class ArithKind { add, sub, mul, neg };

Elt arith(ArithKind kind, const Elt& a, const Elt& b);
Elt inv(const Elt& a);
Elt pow(const Elt& a, std::uint64_t e);
Elt compose(const FieldSpec& spec, Residue a0, Residue a1);

/// Textual syntax: "a0", "a1x", "x", or "a0+a1x" with decimal residues.
std::string format_elt(const Elt& e);
Elt parse_elt(const FieldSpec& spec, std::string_view text);

}  // namespace skalab
