#include "skalab/plane.hpp"

#include <algorithm>
#include <limits>

#include "skalab/error.hpp"

namespace skalab {

std::array<Elt, 3> canonical_triple(const std::array<Elt, 3>& raw) {
  const FieldSpec& spec = raw[0].spec();
  if (!(raw[1].spec() == spec) || !(raw[2].spec() == spec))
    throw Error(ErrorCode::SpecMismatch, "coordinates from different fields");
  for (std::size_t i = 0; i < 3; ++i) {
    if (raw[i].is_zero()) continue;
    const Elt scale = inv(raw[i]);
    return {raw[0] * scale, raw[1] * scale, raw[2] * scale};
  }
  throw Error(ErrorCode::ZeroVector, "homogeneous triple (0:0:0)");
}

bool incident(const ProjLine& line, const ProjPoint& point) {
  Elt dot = line[0] * point[0] + line[1] * point[1] + line[2] * point[2];
  return dot.is_zero();
}

std::uint64_t homog_id(const std::array<Elt, 3>& c) {
  const std::uint64_t q = c[0].spec().order();
  if (c[0].is_zero()) {
    if (c[1].is_zero()) return 0;
    return 1 + c[2].code();
  }
  return 1 + q + c[1].code() * q + c[2].code();
}

std::array<Elt, 3> homog_from_id(const FieldSpec& spec, std::uint64_t id) {
  const std::uint64_t q = spec.order();
  const Elt zero = Elt::zero(spec), one = Elt::one(spec);
  if (id == 0) return {zero, zero, one};
  if (id <= q) return {zero, one, Elt::from_code(spec, id - 1)};
  const std::uint64_t rest = id - 1 - q;
  if (rest >= q * q) throw Error(ErrorCode::UnknownVertex, "vertex id " + std::to_string(id) + " out of range");
  return {one, Elt::from_code(spec, rest / q), Elt::from_code(spec, rest % q)};
}

namespace {

// Ids of all canonical triples y with <x, y> = 0, for canonical x.
std::vector<std::uint32_t> orthogonal_ids(const std::array<Elt, 3>& x) {
  const FieldSpec& spec = x[0].spec();
  const std::uint64_t q = spec.order();
  std::size_t i = 0;
  while (x[i].is_zero()) ++i;
  const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
  // x[i] == 1, so y_i = -(x_j y_j + x_k y_k).
  std::vector<std::uint32_t> ids;
  ids.reserve(q + 1);
  auto emit = [&](const Elt& yj, const Elt& yk) {
    std::array<Elt, 3> y;
    y[j] = yj;
    y[k] = yk;
    y[i] = -(x[j] * yj + x[k] * yk);
    ids.push_back(static_cast<std::uint32_t>(homog_id(canonical_triple(y))));
  };
  const Elt one = Elt::one(spec);
  for (std::uint64_t code = 0; code < q; ++code) emit(one, Elt::from_code(spec, code));
  emit(Elt::zero(spec), one);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

std::vector<std::uint32_t> points_on(const ProjLine& line) { return orthogonal_ids(line.c); }
std::vector<std::uint32_t> lines_through(const ProjPoint& point) { return orthogonal_ids(point.c); }

Plane::Plane(const FieldSpec& spec) : spec_(spec) {
  const std::uint64_t q = spec.order();
  const std::uint64_t n = q * q + q + 1;
  if (n > (std::uint64_t{1} << 31)) throw Error(ErrorCode::TooLarge, "plane too large to enumerate");
  points_.reserve(n);
  lines_.reserve(n);
  for (std::uint64_t id = 0; id < n; ++id) {
    auto c = homog_from_id(spec, id);
    points_.push_back(ProjPoint{c});
    lines_.push_back(ProjLine{c});
  }
  flags_.reserve(n * (q + 1));
  for (std::uint32_t l = 0; l < n; ++l)
    for (std::uint32_t pt : points_on(lines_[l])) flags_.push_back({l, pt});
}

std::uint32_t Plane::point_id(const ProjPoint& p) const {
  if (!(p.spec() == spec_)) throw Error(ErrorCode::SpecMismatch, "point from another field");
  return static_cast<std::uint32_t>(homog_id(canonical_triple(p.c)));
}

std::uint32_t Plane::line_id(const ProjLine& l) const {
  if (!(l.spec() == spec_)) throw Error(ErrorCode::SpecMismatch, "line from another field");
  return static_cast<std::uint32_t>(homog_id(canonical_triple(l.c)));
}

std::uint32_t Plane::flag_index(std::uint32_t line, std::uint32_t point) const {
  const std::size_t per_line = q() + 1;
  if (line >= lines_.size() || point >= points_.size())
    throw Error(ErrorCode::UnknownVertex, "flag vertex out of range");
  auto first = flags_.begin() + static_cast<std::ptrdiff_t>(line * per_line);
  auto last = first + static_cast<std::ptrdiff_t>(per_line);
  auto it = std::lower_bound(first, last, point, [](const FlagIds& f, std::uint32_t pt) { return f.point < pt; });
  if (it == last || it->point != point)
    throw Error(ErrorCode::UnknownVertex, "line " + std::to_string(line) + " and point " + std::to_string(point) +
                                              " are not incident");
  return static_cast<std::uint32_t>(it - flags_.begin());
}

Flag Plane::flag_at(std::size_t index) const {
  const FlagIds& f = flags_.at(index);
  return Flag{lines_[f.line], points_[f.point]};
}

Enumeration enumerate(std::uint64_t q) {
  Plane plane = Plane::of_order(q);
  Enumeration e;
  e.points = plane.points();
  e.lines = plane.lines();
  e.flags.reserve(plane.flags().size());
  for (const auto& f : plane.flags()) e.flags.push_back(Flag{plane.lines()[f.line], plane.points()[f.point]});
  return e;
}

ChartCoords to_chart(const Flag& flag) {
  const FieldSpec& spec = flag.line.spec();
  if (spec.degree != 2) throw Error(ErrorCode::UnsupportedField, "chart coordinates need a quadratic extension");
  if (!(flag.point.spec() == spec)) throw Error(ErrorCode::SpecMismatch, "flag mixes fields");
  const auto& x = flag.line.c;
  const auto& y = flag.point.c;
  if (x[0].is_zero()) throw Error(ErrorCode::ChartInvalid, "line has x0 = 0");
  if (y[2].is_zero()) throw Error(ErrorCode::ChartInvalid, "point has y2 = 0");
  const Elt x0inv = inv(x[0]), y2inv = inv(y[2]);
  const Elt x1p = x[1] * x0inv;
  const Elt y0p = y[0] * y2inv;
  const Elt y1p = y[1] * y2inv;
  return ChartCoords{x1p.a0(), x1p.a1(), y0p.a0(), y0p.a1(), y1p.a0(), y1p.a1()};
}

Flag from_chart(const FieldSpec& spec, const ChartCoords& c) {
  if (spec.degree != 2) throw Error(ErrorCode::UnsupportedField, "chart coordinates need a quadratic extension");
  const Residue p = spec.p;
  const Elt xi(spec, 0, 1);
  const Elt x1p(spec, c.f, c.r);
  const Elt y0p(spec, c.g, c.t);
  const Elt y1p(spec, c.h, c.s);
  // x2' = g + fh + (t + fs + hr) xi + rs xi^2
  const Elt x2p = Elt(spec, add_mod(c.g, mul_mod(c.f, c.h, p), p),
                      add_mod(c.t, add_mod(mul_mod(c.f, c.s, p), mul_mod(c.h, c.r, p), p), p)) +
                  Elt(spec, mul_mod(c.r, c.s, p)) * xi * xi;
  const Elt one = Elt::one(spec);
  return Flag{canonicalize<ProjLine>({one, x1p, -x2p}), canonicalize<ProjPoint>({y0p, y1p, one})};
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) return 0;
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

Elt uniform_elt(const FieldSpec& spec, std::mt19937_64& rng) {
  return Elt::from_code(spec, uniform_below(rng, spec.order()));
}

Flag sample_flag(const FieldSpec& spec, std::mt19937_64& rng) {
  // Every line carries q+1 points, so a uniform line followed by a uniform
  // point on it is uniform over flags.
  const std::uint64_t q = spec.order();
  const ProjLine line{homog_from_id(spec, uniform_below(rng, q * q + q + 1))};
  const auto pts = points_on(line);
  const std::uint32_t pt = pts[uniform_below(rng, pts.size())];
  return Flag{line, ProjPoint{homog_from_id(spec, pt)}};
}

Flag sample_flag(std::uint64_t q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_flag(field_for_order(q), rng);
}

}  // namespace skalab
