#include <doctest.h>

#include <cmath>
#include <set>

#include "oracle.hpp"
#include "skalab/error.hpp"
#include "skalab/plane.hpp"

using namespace skalab;

namespace {

std::array<Elt, 3> triple(const FieldSpec& s, std::array<std::pair<Residue, Residue>, 3> v) {
  return {Elt(s, v[0].first, v[0].second), Elt(s, v[1].first, v[1].second), Elt(s, v[2].first, v[2].second)};
}

oracle::Vec codes(const std::array<Elt, 3>& c) {
  return {static_cast<std::uint32_t>(c[0].code()), static_cast<std::uint32_t>(c[1].code()),
          static_cast<std::uint32_t>(c[2].code())};
}

}  // namespace

TEST_CASE("canonical form and incidence") {
  const auto f3 = build_field_spec(3, 1);
  CHECK(canonical_triple(triple(f3, {{{0, 0}, {2, 0}, {1, 0}}})) == triple(f3, {{{0, 0}, {1, 0}, {2, 0}}}));
  CHECK(canonical_triple(triple(f3, {{{1, 0}, {0, 0}, {0, 0}}})) == triple(f3, {{{1, 0}, {0, 0}, {0, 0}}}));
  CHECK_THROWS_AS(canonical_triple(triple(f3, {{{0, 0}, {0, 0}, {0, 0}}})), Error);

  auto pt = [&](Residue a, Residue b, Residue c) { return canonicalize<ProjPoint>(triple(f3, {{{a, 0}, {b, 0}, {c, 0}}})); };
  auto ln = [&](Residue a, Residue b, Residue c) { return canonicalize<ProjLine>(triple(f3, {{{a, 0}, {b, 0}, {c, 0}}})); };
  CHECK(incident(ln(1, 0, 0), pt(0, 1, 0)));
  CHECK(incident(ln(1, 1, 1), pt(1, 1, 1)));
  CHECK_FALSE(incident(ln(1, 0, 0), pt(1, 0, 0)));
}

TEST_CASE("enumeration against the vector-class oracle") {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 9}) {
    CAPTURE(q);
    const Plane plane = Plane::of_order(q);
    const oracle::PlaneOracle ref(q);
    const std::size_t n = q * q + q + 1;
    REQUIRE(plane.points().size() == n);
    REQUIRE(plane.lines().size() == n);
    REQUIRE(ref.reps.size() == n);
    REQUIRE(plane.flags().size() == (q + 1) * n);
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(codes(plane.points()[i].c) == ref.reps[i]);
      REQUIRE(codes(plane.lines()[i].c) == ref.reps[i]);
      REQUIRE(homog_id(plane.points()[i].c) == i);
    }
    std::size_t k = 0;
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t p = 0; p < n; ++p)
        if (ref.incident(ref.reps[l], ref.reps[p])) {
          REQUIRE(k < plane.flags().size());
          CHECK(plane.flags()[k].line == l);
          CHECK(plane.flags()[k].point == p);
          ++k;
        }
    CHECK(k == plane.flags().size());
  }
}

TEST_CASE("degrees and neighbourhoods") {
  const Plane plane = Plane::of_order(9);
  std::vector<int> point_deg(plane.points().size(), 0);
  for (const auto& f : plane.flags()) ++point_deg[f.point];
  for (int d : point_deg) CHECK(d == 10);
  for (std::uint32_t l = 0; l < plane.lines().size(); l += 7) {
    const auto pts = points_on(plane.lines()[l]);
    REQUIRE(pts.size() == 10);
    for (std::size_t j = 0; j < pts.size(); ++j) CHECK(plane.flags()[l * 10 + j].point == pts[j]);
  }
  const auto lines = lines_through(plane.points()[5]);
  CHECK(lines.size() == 10);
  for (auto l : lines) CHECK(incident(plane.lines()[l], plane.points()[5]));
  CHECK(plane.flag_index(plane.flag_at(123)) == 123);
  CHECK_THROWS_AS(plane.flag_index(0, 0), Error);
}

TEST_CASE("chart worked example over F_9") {
  const auto f9 = build_field_spec(3, 2);
  const Flag flag{canonicalize<ProjLine>(triple(f9, {{{1, 0}, {1, 2}, {0, 0}}})),
                  canonicalize<ProjPoint>(triple(f9, {{{0, 1}, {2, 1}, {1, 0}}}))};
  REQUIRE(incident(flag.line, flag.point));
  CHECK(to_chart(flag) == ChartCoords{1, 2, 0, 1, 2, 1});
  CHECK(from_chart(f9, ChartCoords{1, 2, 0, 1, 2, 1}) == flag);
  // Point (xi : 2+xi : 1) scaled by 1/xi = 2xi is (1 : 1+xi : 2xi).
  CHECK(flag.point.c == triple(f9, {{{1, 0}, {1, 1}, {0, 2}}}));

  const Flag zero = from_chart(f9, ChartCoords{});
  CHECK(zero.line.c == triple(f9, {{{1, 0}, {0, 0}, {0, 0}}}));
  CHECK(zero.point.c == triple(f9, {{{0, 0}, {0, 0}, {1, 0}}}));

  const Flag bad{canonicalize<ProjLine>(triple(f9, {{{0, 0}, {1, 0}, {0, 0}}})),
                 canonicalize<ProjPoint>(triple(f9, {{{1, 0}, {0, 0}, {0, 0}}}))};
  CHECK_THROWS_AS(to_chart(bad), Error);
  CHECK_THROWS_AS(to_chart(Plane::of_order(3).flag_at(0)), Error);
}

TEST_CASE("chart round trip and bijection") {
  const Plane plane = Plane::of_order(9);
  std::size_t valid = 0;
  for (std::size_t i = 0; i < plane.flags().size(); ++i) {
    const Flag f = plane.flag_at(i);
    if (f.line[0].is_zero() || f.point[2].is_zero()) continue;
    ++valid;
    REQUIRE(from_chart(plane.spec(), to_chart(f)) == f);
  }
  // Lines with x0 != 0: q^2; points on each with y2 != 0: q.
  CHECK(valid == 81 * 9);

  std::set<std::uint32_t> image;
  for (std::uint64_t code = 0; code < 729; ++code) {
    std::uint64_t c = code;
    ChartCoords cc;
    for (Residue* r : {&cc.f, &cc.r, &cc.g, &cc.t, &cc.h, &cc.s}) {
      *r = c % 3;
      c /= 3;
    }
    const Flag f = from_chart(plane.spec(), cc);
    REQUIRE(incident(f.line, f.point));
    image.insert(plane.flag_index(f));
  }
  CHECK(image.size() == 729);
}

TEST_CASE("flag sampling") {
  CHECK(sample_flag(3, 42) == sample_flag(3, 42));
  const Flag f = sample_flag(9, 7);
  CHECK(incident(f.line, f.point));

  // 52 flags of PG(2,3), 52000 draws: every count within 6 sigma of 1000.
  const Plane plane = Plane::of_order(3);
  std::mt19937_64 rng(2024);
  std::vector<int> counts(plane.flags().size(), 0);
  for (int i = 0; i < 52000; ++i) ++counts[plane.flag_index(sample_flag(plane.spec(), rng))];
  const double sigma = std::sqrt(52000.0 * (1.0 / 52) * (51.0 / 52));
  for (int c : counts) CHECK(std::abs(c - 1000) < 6 * sigma);
}

TEST_CASE("uniform_below is unbiased at the boundary") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) CHECK(uniform_below(rng, 1) == 0);
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 30000; ++i) ++hits[uniform_below(rng, 3)];
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
}
