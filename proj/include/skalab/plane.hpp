#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "skalab/field.hpp"

namespace skalab {

/// Homogeneous triple in canonical form: the first nonzero coordinate is 1.
template <class Tag>
struct Homog {
  std::array<Elt, 3> c;

  const FieldSpec& spec() const noexcept { return c[0].spec(); }
  const Elt& operator[](std::size_t i) const noexcept { return c[i]; }

  friend bool operator==(const Homog&, const Homog&) = default;
};

struct PointTag {};
struct LineTag {};
using ProjPoint = Homog<PointTag>;
using ProjLine = Homog<LineTag>;

struct Flag {
  ProjLine line;
  ProjPoint point;

  friend bool operator==(const Flag&, const Flag&) = default;
};

/// Subfield parameters of a chart-valid flag over F_{p^2}:
/// x1' = f + r xi, y0' = g + t xi, y1' = h + s xi.
struct ChartCoords {
  Residue f = 0, r = 0, g = 0, t = 0, h = 0, s = 0;

  friend bool operator==(const ChartCoords&, const ChartCoords&) = default;
};

std::array<Elt, 3> canonical_triple(const std::array<Elt, 3>& raw);

template <class T>
T canonicalize(const std::array<Elt, 3>& raw) {
  return T{canonical_triple(raw)};
}

bool incident(const ProjLine& line, const ProjPoint& point);

/// Canonical vertex id in [0, q^2+q+1). Ids follow lexicographic order of the
/// canonical coordinate codes: (0:0:1), then (0:1:b), then (1:a:b).
std::uint64_t homog_id(const std::array<Elt, 3>& canonical);
std::array<Elt, 3> homog_from_id(const FieldSpec& spec, std::uint64_t id);

/// Vertex ids of the q+1 points on `line` (or lines through a point), ascending.
std::vector<std::uint32_t> points_on(const ProjLine& line);
std::vector<std::uint32_t> lines_through(const ProjPoint& point);

/// Fully enumerated PG(2, q). Immutable after construction.
class Plane {
 public:
  explicit Plane(const FieldSpec& spec);
  static Plane of_order(std::uint64_t q) { return Plane(field_for_order(q)); }

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint64_t q() const noexcept { return spec_.order(); }
  std::size_t vertex_count() const noexcept { return points_.size(); }

  const std::vector<ProjPoint>& points() const noexcept { return points_; }
  const std::vector<ProjLine>& lines() const noexcept { return lines_; }

  /// Flags as (line id, point id), sorted lexicographically. Flags on line l
  /// occupy indices [l*(q+1), (l+1)*(q+1)).
  struct FlagIds {
    std::uint32_t line;
    std::uint32_t point;
    friend bool operator==(const FlagIds&, const FlagIds&) = default;
  };
  const std::vector<FlagIds>& flags() const noexcept { return flags_; }

  std::uint32_t point_id(const ProjPoint& p) const;
  std::uint32_t line_id(const ProjLine& l) const;
  /// Index into flags(); the pair must be incident.
  std::uint32_t flag_index(std::uint32_t line, std::uint32_t point) const;
  std::uint32_t flag_index(const Flag& f) const { return flag_index(line_id(f.line), point_id(f.point)); }
  Flag flag_at(std::size_t index) const;

 private:
  FieldSpec spec_;
  std::vector<ProjPoint> points_;
  std::vector<ProjLine> lines_;
  std::vector<FlagIds> flags_;
};

struct Enumeration {
  std::vector<ProjPoint> points;
  std::vector<ProjLine> lines;
  std::vector<Flag> flags;
};

Enumeration enumerate(std::uint64_t q);

ChartCoords to_chart(const Flag& flag);
Flag from_chart(const FieldSpec& spec, const ChartCoords& coords);

/// Uniform over all flags of PG(2, q); reproducible from the generator state.
Flag sample_flag(const FieldSpec& spec, std::mt19937_64& rng);
Flag sample_flag(std::uint64_t q, std::uint64_t seed);

/// Unbiased draw from [0, n) on top of the raw 64-bit engine output, so that
/// results do not depend on the standard library's distribution algorithms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);
Elt uniform_elt(const FieldSpec& spec, std::mt19937_64& rng);

}  // namespace skalab
