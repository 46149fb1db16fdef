#pragma once

// Prefix-grid map of two strings under a complexity estimator, its
// piecewise-linear extension over a fixed triangulation, the winding number of
// the boundary image, and an integer-node preimage search.
//
// Node (a, b) carries (est(x | <x[0:a], y[0:b]>), est(y | <x[0:a], y[0:b]>)).
// Every unit cell is split along the (i, j) -> (i+1, j+1) diagonal. The domain
// boundary is traversed counterclockwise.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace skalab::halving {

using Bytes = std::span<const std::uint8_t>;
using Vec2 = std::array<double, 2>;

/// Length-prefixed pair encoding: 4-byte big-endian |a|, then a, then b.
std::vector<std::uint8_t> encode_pair(Bytes a, Bytes b);
/// Inverse of encode_pair; nullopt if `z` is not a valid pair encoding.
std::optional<std::array<Bytes, 2>> decode_pair(Bytes z);

class ComplexityEstimator {
 public:
  virtual ~ComplexityEstimator() = default;
  /// Deterministic, non-negative. May throw; build_grid reports the node.
  virtual double estimate(Bytes target, Bytes condition) const = 0;
  /// Claimed bound on the change of either value per one-symbol prefix step.
  virtual double declared_lipschitz() const = 0;
  virtual std::string name() const = 0;
};

/// Synthetic linear map with a known preimage: for target x,
/// max(0, 2|x| - a - b/2); for target y, max(0, 2|y| - b - a/2), where a, b are
/// the prefix lengths in the condition. Role is decided by comparing the
/// target with the construction-time x.
class RampEstimator final : public ComplexityEstimator {
 public:
  RampEstimator(std::vector<std::uint8_t> x, std::vector<std::uint8_t> y);
  double estimate(Bytes target, Bytes condition) const override;
  double declared_lipschitz() const override { return 1.0; }
  std::string name() const override { return "ramp"; }

 private:
  std::vector<std::uint8_t> x_, y_;
};

/// est(a | b) = 8 * (|Z(b || a)| - |Z(b)|) bits, clipped at 0, where Z is zlib
/// at level 9.
class CompressorEstimator final : public ComplexityEstimator {
 public:
  explicit CompressorEstimator(double declared_lipschitz = 24.0) : declared_(declared_lipschitz) {}
  double estimate(Bytes target, Bytes condition) const override;
  double declared_lipschitz() const override { return declared_; }
  std::string name() const override { return "compress"; }

 private:
  double declared_;
};

std::unique_ptr<ComplexityEstimator> make_estimator(const std::string& id, Bytes x, Bytes y);

class GridMap {
 public:
  GridMap(std::size_t width, std::size_t height);
  static GridMap from_function(std::size_t width, std::size_t height,
                               const std::function<Vec2(std::size_t, std::size_t)>& fn);

  std::size_t width() const noexcept { return width_; }    // |x|
  std::size_t height() const noexcept { return height_; }  // |y|
  const Vec2& at(std::size_t a, std::size_t b) const { return values_[b * (width_ + 1) + a]; }
  Vec2& at(std::size_t a, std::size_t b) { return values_[b * (width_ + 1) + a]; }

  /// max(1, largest absolute coordinate of any node value).
  double scale() const;

 private:
  std::size_t width_, height_;
  std::vector<Vec2> values_;
};

GridMap build_grid(Bytes x, Bytes y, const ComplexityEstimator& est, unsigned threads = 1);

Vec2 pl_extend(const GridMap& grid, Vec2 point);

/// Node images along the domain boundary, counterclockwise from (0, 0); the
/// last vertex repeats the first.
std::vector<Vec2> boundary_polyline(const GridMap& grid);

int winding_number(const GridMap& grid, Vec2 target);

struct Preimage {
  std::size_t alpha = 0;
  std::size_t beta = 0;
  Vec2 real{};      // exact PL preimage inside the containing triangle
  Vec2 achieved{};  // grid value at (alpha, beta)
  double residual = 0;
  bool perturbed = false;
};

/// Nearest grid node to the exact PL preimage of `target`.
/// NotCovered if the winding number is 0.
Preimage find_preimage(const GridMap& grid, Vec2 target);

struct LipschitzStats {
  double declared = 0;
  double measured_max = 0;  // largest per-coordinate change between adjacent nodes
  std::uint64_t violations = 0;
};

LipschitzStats measure_lipschitz(const GridMap& grid, double declared);

struct HalveReport {
  std::size_t nx = 0, ny = 0;
  Vec2 target{};
  std::string status;  // ok | on_boundary | not_covered
  std::optional<int> winding;
  std::optional<Preimage> preimage;
  LipschitzStats lipschitz;
  std::string estimator;
};

HalveReport halve(Bytes x, Bytes y, const ComplexityEstimator& est, unsigned threads = 1);

}  // namespace skalab::halving
