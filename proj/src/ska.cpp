#include "skalab/ska.hpp"

#include <algorithm>

#include "skalab/error.hpp"
#include "skalab/parallel.hpp"

namespace skalab::ska {

std::uint32_t symbol_bits(Residue p) noexcept {
  std::uint32_t bits = 0;
  while (bits < 64 && (Residue{1} << bits) < p) ++bits;
  return bits;
}

std::size_t payload_width(Residue p) noexcept { return std::max<std::size_t>(1, (symbol_bits(p) + 7) / 8); }

std::vector<std::uint8_t> encode(const Message& m, Residue p) {
  if (m.round != 1 && m.round != 2) throw Error(ErrorCode::BadFrame, "round must be 1 or 2");
  if (m.payload >= p) throw Error(ErrorCode::BadFrame, "payload outside the subfield");
  const std::size_t width = payload_width(p);
  std::vector<std::uint8_t> frame(1 + width);
  frame[0] = static_cast<std::uint8_t>(m.round);
  for (std::size_t i = 0; i < width; ++i) frame[width - i] = static_cast<std::uint8_t>(m.payload >> (8 * i));
  return frame;
}

Message decode(std::span<const std::uint8_t> frame, Residue p) {
  const std::size_t width = payload_width(p);
  if (frame.size() != 1 + width)
    throw Error(ErrorCode::BadFrame, "frame length " + std::to_string(frame.size()) + ", expected " +
                                         std::to_string(1 + width));
  if (frame[0] != 1 && frame[0] != 2) throw Error(ErrorCode::BadFrame, "unknown round tag");
  Message m;
  m.round = frame[0];
  for (std::size_t i = 1; i <= width; ++i) m.payload = (m.payload << 8) | frame[i];
  if (m.payload >= p) throw Error(ErrorCode::BadFrame, "payload outside the subfield");
  return m;
}

namespace {

void require_quadratic(const FieldSpec& spec) {
  if (spec.degree != 2)
    throw Error(ErrorCode::UnsupportedField, "the protocol needs q = p^2 with a subfield of size p");
}

}  // namespace

Alice::Alice(const FieldSpec& spec, Residue f, Residue r, Residue u_prime, Residue v_prime)
    : spec_(spec), f_(f % spec.p), r_(r % spec.p), u_prime_(u_prime % spec.p), v_prime_(v_prime % spec.p) {
  require_quadratic(spec);
}

Alice Alice::from_line(const ProjLine& line) {
  const FieldSpec& spec = line.spec();
  require_quadratic(spec);
  if (line[0].is_zero()) throw Error(ErrorCode::ChartInvalid, "line has x0 = 0");
  const Elt x0inv = inv(line[0]);
  const Elt x1p = line[1] * x0inv;
  const Elt x2p = -(line[2] * x0inv);
  return Alice(spec, x1p.a0(), x1p.a1(), x2p.a0(), x2p.a1());
}

Message Alice::round2(const Message& m1) {
  if (phase_ != AlicePhase::awaiting_m1) throw Error(ErrorCode::PhaseError, "Alice already answered");
  if (m1.round != 1) throw Error(ErrorCode::RoundMismatch, "Alice expects a round-1 message");
  if (m1.payload >= spec_.p) throw Error(ErrorCode::BadFrame, "payload outside the subfield");
  const Elt xi(spec_, 0, 1);
  const Elt rs_xi2 = Elt(spec_, mul_mod(r_, m1.payload, spec_.p)) * xi * xi;  // u'' + v'' xi
  phase_ = AlicePhase::sent_m2;
  return Message{2, sub_mod(u_prime_, rs_xi2.a0(), spec_.p)};
}

Residue Alice::finish() {
  if (phase_ != AlicePhase::sent_m2) throw Error(ErrorCode::PhaseError, "Alice has not sent m2");
  phase_ = AlicePhase::done;
  return f_;
}

Bob::Bob(const FieldSpec& spec, Residue g, Residue t, Residue h, Residue s)
    : spec_(spec), g_(g % spec.p), t_(t % spec.p), h_(h % spec.p), s_(s % spec.p) {
  require_quadratic(spec);
}

Bob Bob::from_point(const ProjPoint& point) {
  const FieldSpec& spec = point.spec();
  require_quadratic(spec);
  if (point[2].is_zero()) throw Error(ErrorCode::ChartInvalid, "point has y2 = 0");
  const Elt y2inv = inv(point[2]);
  const Elt y0p = point[0] * y2inv;
  const Elt y1p = point[1] * y2inv;
  return Bob(spec, y0p.a0(), y0p.a1(), y1p.a0(), y1p.a1());
}

Message Bob::round1() {
  if (phase_ != BobPhase::start) throw Error(ErrorCode::PhaseError, "Bob already sent m1");
  phase_ = BobPhase::sent_m1;
  return Message{1, s_};
}

Residue Bob::key(const Message& m2) {
  if (phase_ != BobPhase::sent_m1) throw Error(ErrorCode::PhaseError, "Bob is not waiting for m2");
  if (m2.round != 2) throw Error(ErrorCode::RoundMismatch, "Bob expects a round-2 message");
  if (m2.payload >= spec_.p) throw Error(ErrorCode::BadFrame, "payload outside the subfield");
  if (h_ == 0) throw Error(ErrorCode::DegenerateH, "h = 0 has no inverse");
  phase_ = BobPhase::done;
  return mul_mod(sub_mod(m2.payload, g_, spec_.p), inv_mod(h_, spec_.p), spec_.p);
}

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::ok: return "ok";
    case Status::chart_invalid: return "chart_invalid";
    case Status::degenerate_h: return "degenerate_h";
  }
  return "?";
}

SessionResult run_session(const Flag& flag) {
  const FieldSpec& spec = flag.line.spec();
  require_quadratic(spec);
  if (!(flag.point.spec() == spec)) throw Error(ErrorCode::SpecMismatch, "flag mixes fields");
  SessionResult res;
  res.spec = spec;
  if (flag.line[0].is_zero() || flag.point[2].is_zero()) {
    res.status = Status::chart_invalid;
    return res;
  }
  Alice alice = Alice::from_line(flag.line);
  Bob bob = Bob::from_point(flag.point);
  res.m1 = bob.round1();
  res.m2 = alice.round2(*res.m1);
  res.alice_key = alice.finish();
  if (bob.h() == 0) {
    res.status = Status::degenerate_h;
    return res;
  }
  res.bob_key = bob.key(*res.m2);
  res.status = Status::ok;
  if (*res.alice_key != *res.bob_key) throw Error(ErrorCode::InvariantViolation, "keys disagree on a valid flag");
  return res;
}

Accounting transcript_accounting(const SessionResult& result) {
  if (result.status != Status::ok || !result.m1 || !result.m2 || !result.bob_key)
    throw Error(ErrorCode::NotCompleted, "session did not complete");
  const std::uint32_t bits = symbol_bits(result.spec.p);
  return Accounting{bits, bits, bits};
}

SecrecyAudit secrecy_audit(std::uint64_t q, unsigned threads) {
  const FieldSpec spec = field_for_order(q);
  require_quadratic(spec);
  const Residue p = spec.p;
  if (p > 13) throw Error(ErrorCode::TooLarge, "exhaustive audit is limited to p <= 13");

  SecrecyAudit audit;
  audit.p = p;
  audit.q = q;
  audit.expected_per_key = (p - 1) * p * p;
  audit.counts.assign(p * p * p, 0);
  std::vector<std::uint64_t> mismatches(p, 0), violations(p, 0);

  // One task per m1 = s; each writes a disjoint slice of counts.
  parallel_for(p, threads, [&](std::size_t task) {
    const Residue s = task;
    for (Residue f = 0; f < p; ++f)
      for (Residue r = 0; r < p; ++r)
        for (Residue g = 0; g < p; ++g)
          for (Residue t = 0; t < p; ++t)
            for (Residue h = 1; h < p; ++h) {
              // x2' from the incidence equation x2' = y0' + x1' y1', in F_q.
              const Elt x2p = Elt(spec, g, t) + Elt(spec, f, r) * Elt(spec, h, s);
              Alice alice(spec, f, r, x2p.a0(), x2p.a1());
              Bob bob(spec, g, t, h, s);
              const Message m1 = bob.round1();
              const Message m2 = alice.round2(m1);
              const Residue ka = alice.finish();
              const Residue kb = bob.key(m2);
              if (ka != kb) ++mismatches[task];
              if (m2.payload != add_mod(g, mul_mod(f, h, p), p)) ++violations[task];
              ++audit.counts[(m1.payload * p + m2.payload) * p + ka];
            }
  });

  for (Residue s = 0; s < p; ++s) {
    audit.key_mismatches += mismatches[s];
    audit.identity_violations += violations[s];
  }
  audit.min_count = *std::min_element(audit.counts.begin(), audit.counts.end());
  audit.max_count = *std::max_element(audit.counts.begin(), audit.counts.end());
  for (std::uint64_t c : audit.counts) audit.tuples += c;
  for (Residue t = 0; t < p * p; ++t) {
    bool seen = false;
    for (Residue k = 0; k < p; ++k) seen = seen || audit.counts[t * p + k] != 0;
    audit.transcripts += seen;
  }
  audit.uniform = audit.min_count == audit.expected_per_key && audit.max_count == audit.expected_per_key &&
                  audit.key_mismatches == 0 && audit.identity_violations == 0;
  return audit;
}

}  // namespace skalab::ska
