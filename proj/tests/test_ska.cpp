#include <doctest.h>

#include <map>

#include "skalab/error.hpp"
#include "skalab/plane.hpp"
#include "skalab/ska.hpp"

using namespace skalab;
using namespace skalab::ska;

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

Flag worked_flag() {
  const FieldSpec f9 = field_for_order(9);
  return Flag{canonicalize<ProjLine>({Elt(f9, 1), Elt(f9, 1, 2), Elt(f9, 0)}),
              canonicalize<ProjPoint>({Elt(f9, 0, 1), Elt(f9, 2, 1), Elt(f9, 1)})};
}

}  // namespace

TEST_CASE("worked F_9 session") {
  const auto res = run_session(worked_flag());
  REQUIRE(res.status == Status::ok);
  CHECK(res.m1->payload == 1);
  CHECK(res.m2->payload == 2);
  CHECK(*res.alice_key == 1);
  CHECK(*res.bob_key == 1);
  const auto acc = transcript_accounting(res);
  CHECK(acc.bits_alice == 2);
  CHECK(acc.bits_bob == 2);
  CHECK(acc.key_bits == 2);
}

TEST_CASE("party state machines") {
  const FieldSpec f9 = field_for_order(9);
  Bob bob(f9, 0, 1, 2, 1);
  CHECK(bob.round1() == Message{1, 1});
  CHECK(code_of([&] { bob.round1(); }) == ErrorCode::PhaseError);
  CHECK(Bob(f9, 0, 0, 1, 0).round1().payload == 0);

  Alice alice(f9, 1, 2, 0, 0);
  CHECK(code_of([&] { alice.finish(); }) == ErrorCode::PhaseError);
  CHECK(code_of([&] { alice.round2(Message{2, 1}); }) == ErrorCode::RoundMismatch);
  alice.round2(Message{1, 1});
  CHECK(code_of([&] { alice.round2(Message{1, 1}); }) == ErrorCode::PhaseError);
  CHECK(alice.finish() == 1);

  Bob degenerate(f9, 0, 0, 0, 1);
  degenerate.round1();
  CHECK(code_of([&] { degenerate.key(Message{2, 1}); }) == ErrorCode::DegenerateH);

  Bob fresh(f9, 2, 0, 2, 0);
  CHECK(code_of([&] { fresh.key(Message{2, 2}); }) == ErrorCode::PhaseError);
  fresh.round1();
  CHECK(code_of([&] { fresh.key(Message{1, 2}); }) == ErrorCode::RoundMismatch);
  CHECK(fresh.key(Message{2, 2}) == 0);

  CHECK(code_of([] { Alice(field_for_order(5), 1, 0, 0, 0); }) == ErrorCode::UnsupportedField);
}

TEST_CASE("session status on chart failures") {
  const FieldSpec f9 = field_for_order(9);
  const Flag no_bob{canonicalize<ProjLine>({Elt(f9, 1), Elt(f9, 0), Elt(f9, 0)}),
                    canonicalize<ProjPoint>({Elt(f9, 0), Elt(f9, 1), Elt(f9, 0)})};
  CHECK(run_session(no_bob).status == Status::chart_invalid);
  const Flag no_alice{canonicalize<ProjLine>({Elt(f9, 0), Elt(f9, 1), Elt(f9, 0)}),
                      canonicalize<ProjPoint>({Elt(f9, 1), Elt(f9, 0), Elt(f9, 0)})};
  CHECK(run_session(no_alice).status == Status::chart_invalid);
  const Flag h_zero = from_chart(f9, ChartCoords{1, 1, 1, 1, 0, 2});
  const auto res = run_session(h_zero);
  CHECK(res.status == Status::degenerate_h);
  CHECK(code_of([&] { transcript_accounting(res); }) == ErrorCode::NotCompleted);
  CHECK(code_of([] { run_session(Plane::of_order(5).flag_at(0)); }) == ErrorCode::UnsupportedField);
}

TEST_CASE("wire frames") {
  for (Residue p : {3, 5, 7, 251, 257, 65537}) {
    CAPTURE(p);
    const std::size_t width = payload_width(p);
    for (int round : {1, 2})
      for (Residue v : {Residue{0}, Residue{1}, p / 2, p - 1}) {
        const auto frame = encode(Message{round, v}, p);
        CHECK(frame.size() == 1 + width);
        CHECK(decode(frame, p) == Message{round, v});
        CHECK(encode(decode(frame, p), p) == frame);
      }
  }
  CHECK(payload_width(257) == 2);
  CHECK(symbol_bits(25) == 5);
  CHECK(symbol_bits(7) == 3);
  const std::vector<std::uint8_t> bad_round{3, 0};
  CHECK(code_of([&] { decode(bad_round, 3); }) == ErrorCode::BadFrame);
  const std::vector<std::uint8_t> too_big{1, 3};
  CHECK(code_of([&] { decode(too_big, 3); }) == ErrorCode::BadFrame);
  const std::vector<std::uint8_t> short_frame{1};
  CHECK(code_of([&] { decode(short_frame, 3); }) == ErrorCode::BadFrame);
}

TEST_CASE("bit accounting") {
  for (auto [q, bits] : {std::pair{9ull, 2u}, {25ull, 3u}, {49ull, 3u}}) {
    const FieldSpec spec = field_for_order(q);
    const auto res = run_session(from_chart(spec, ChartCoords{1, 1, 1, 1, 1, 1}));
    const auto acc = transcript_accounting(res);
    CHECK(acc.bits_alice == bits);
    CHECK(acc.bits_bob == bits);
    CHECK(acc.key_bits == bits);
  }
}

TEST_CASE("secrecy audit agrees with a flag-by-flag tally") {
  for (std::uint64_t q : {9, 25}) {
    CAPTURE(q);
    const auto audit = secrecy_audit(q);
    const Residue p = audit.p;
    CHECK(audit.uniform);
    CHECK(audit.expected_per_key == (p - 1) * p * p);
    CHECK(audit.transcripts == p * p);
    CHECK(audit.tuples == (p - 1) * p * p * p * p * p);

    // Independent path: every flag of the plane through run_session.
    const Plane plane = Plane::of_order(q);
    std::vector<std::uint64_t> tally(p * p * p, 0);
    for (std::size_t k = 0; k < plane.flags().size(); ++k) {
      const auto res = run_session(plane.flag_at(k));
      if (res.status != Status::ok) continue;
      REQUIRE(*res.alice_key == to_chart(plane.flag_at(k)).f);
      ++tally[(res.m1->payload * p + res.m2->payload) * p + *res.bob_key];
    }
    CHECK(tally == audit.counts);
  }
  CHECK(secrecy_audit(9, 4).counts == secrecy_audit(9, 1).counts);
  CHECK(code_of([] { secrecy_audit(17 * 17); }) == ErrorCode::TooLarge);
  CHECK(code_of([] { secrecy_audit(7); }) == ErrorCode::UnsupportedField);
}

TEST_CASE("round-two reply equals g + f h on all chart tuples, p = 3") {
  const FieldSpec f9 = field_for_order(9);
  for (std::uint64_t code = 0; code < 729; ++code) {
    std::uint64_t c = code;
    ChartCoords cc;
    for (Residue* r : {&cc.f, &cc.r, &cc.g, &cc.t, &cc.h, &cc.s}) {
      *r = c % 3;
      c /= 3;
    }
    const Flag flag = from_chart(f9, cc);
    Alice alice = Alice::from_line(flag.line);
    const Message m2 = alice.round2(Message{1, cc.s});
    REQUIRE(m2.payload == (cc.g + cc.f * cc.h) % 3);
  }
}
