#pragma once

// Balanced two-round secret-key agreement over PG(2, p^2).
//
// Alice holds a line, Bob a point on it. In affine charts
//   x1' = f + r xi,  x2' = u' + v' xi  (Alice)
//   y0' = g + t xi,  y1' = h + s xi    (Bob)
// with f, ..., s in the prime subfield G. Bob sends m1 = s, Alice answers with
// m2 = g + f h, and both end with the key f. Every public message and the key
// are single elements of G.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "skalab/field.hpp"
#include "skalab/plane.hpp"

namespace skalab::ska {

struct Message {
  int round = 1;  // 1: Bob -> Alice, 2: Alice -> Bob
  Residue payload = 0;

  friend bool operator==(const Message&, const Message&) = default;
};

/// Bits needed for one element of G: ceil(log2 p).
std::uint32_t symbol_bits(Residue p) noexcept;
/// Payload bytes on the wire: ceil(symbol_bits / 8).
std::size_t payload_width(Residue p) noexcept;

/// Frame: [round byte][payload, big-endian, payload_width(p) bytes].
std::vector<std::uint8_t> encode(const Message& m, Residue p);
/// Throws BadFrame on wrong length, unknown round tag, or payload >= p.
Message decode(std::span<const std::uint8_t> frame, Residue p);

enum class AlicePhase { awaiting_m1, sent_m2, done };
enum class BobPhase { start, sent_m1, done };

class Alice {
 public:
  Alice(const FieldSpec& spec, Residue f, Residue r, Residue u_prime, Residue v_prime);
  /// Chart parameters of a line; ChartInvalid when x0 = 0.
  static Alice from_line(const ProjLine& line);

  Residue f() const noexcept { return f_; }
  Residue r() const noexcept { return r_; }
  Residue u_prime() const noexcept { return u_prime_; }
  Residue v_prime() const noexcept { return v_prime_; }
  AlicePhase phase() const noexcept { return phase_; }

  /// Reads s from m1, forms r s xi^2 = u'' + v'' xi and replies u' - u''.
  Message round2(const Message& m1);
  /// The key is f; requires round2 to have run.
  Residue finish();

 private:
  FieldSpec spec_;
  Residue f_, r_, u_prime_, v_prime_;
  AlicePhase phase_ = AlicePhase::awaiting_m1;
};

class Bob {
 public:
  Bob(const FieldSpec& spec, Residue g, Residue t, Residue h, Residue s);
  /// Chart parameters of a point; ChartInvalid when y2 = 0.
  static Bob from_point(const ProjPoint& point);

  Residue g() const noexcept { return g_; }
  Residue t() const noexcept { return t_; }
  Residue h() const noexcept { return h_; }
  Residue s() const noexcept { return s_; }
  BobPhase phase() const noexcept { return phase_; }

  Message round1();
  /// (m2 - g) / h. DegenerateH when h = 0.
  Residue key(const Message& m2);

 private:
  FieldSpec spec_;
  Residue g_, t_, h_, s_;
  BobPhase phase_ = BobPhase::start;
};

enum class Status { ok, chart_invalid, degenerate_h };

std::string_view to_string(Status s) noexcept;

struct SessionResult {
  FieldSpec spec;
  std::optional<Message> m1;
  std::optional<Message> m2;
  std::optional<Residue> alice_key;
  std::optional<Residue> bob_key;
  Status status = Status::chart_invalid;
};

/// Runs both parties on a flag. Failures are reported in `status`.
SessionResult run_session(const Flag& flag);

struct Accounting {
  std::uint32_t bits_alice = 0;
  std::uint32_t bits_bob = 0;
  std::uint32_t key_bits = 0;
};

/// NotCompleted unless the session finished with status ok.
Accounting transcript_accounting(const SessionResult& result);

struct SecrecyAudit {
  Residue p = 0;
  std::uint64_t q = 0;
  std::uint64_t tuples = 0;       // chart tuples with h != 0
  std::uint64_t transcripts = 0;  // distinct (m1, m2) observed
  std::uint64_t expected_per_key = 0;  // (p-1) p^2
  std::uint64_t min_count = 0;
  std::uint64_t max_count = 0;
  std::uint64_t key_mismatches = 0;       // alice_key != bob_key
  std::uint64_t identity_violations = 0;  // m2 != g + f h
  bool uniform = false;
  /// counts[(m1 * p + m2) * p + key]
  std::vector<std::uint64_t> counts;
};

/// Exhaustive over G^6 with h != 0; limited to p <= 13.
SecrecyAudit secrecy_audit(std::uint64_t q, unsigned threads = 1);

}  // namespace skalab::ska
