#include "skalab/halving.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "skalab/error.hpp"
#include "skalab/parallel.hpp"

namespace skalab::halving {

std::vector<std::uint8_t> encode_pair(Bytes a, Bytes b) {
  std::vector<std::uint8_t> z;
  z.reserve(4 + a.size() + b.size());
  const auto n = static_cast<std::uint32_t>(a.size());
  for (int shift = 24; shift >= 0; shift -= 8) z.push_back(static_cast<std::uint8_t>(n >> shift));
  z.insert(z.end(), a.begin(), a.end());
  z.insert(z.end(), b.begin(), b.end());
  return z;
}

std::optional<std::array<Bytes, 2>> decode_pair(Bytes z) {
  if (z.size() < 4) return std::nullopt;
  std::uint32_t n = 0;
  for (int i = 0; i < 4; ++i) n = (n << 8) | z[static_cast<std::size_t>(i)];
  if (n > z.size() - 4) return std::nullopt;
  return std::array<Bytes, 2>{z.subspan(4, n), z.subspan(4 + n)};
}

RampEstimator::RampEstimator(std::vector<std::uint8_t> x, std::vector<std::uint8_t> y)
    : x_(std::move(x)), y_(std::move(y)) {}

double RampEstimator::estimate(Bytes target, Bytes condition) const {
  double a = 0, b = 0;
  if (!condition.empty()) {
    auto parts = decode_pair(condition);
    if (!parts) throw Error(ErrorCode::EstimatorFailure, "ramp estimator expects a pair-encoded condition");
    a = static_cast<double>((*parts)[0].size());
    b = static_cast<double>((*parts)[1].size());
  }
  const bool is_x = std::equal(target.begin(), target.end(), x_.begin(), x_.end());
  if (is_x) return std::max(0.0, 2.0 * static_cast<double>(x_.size()) - a - b / 2);
  return std::max(0.0, 2.0 * static_cast<double>(y_.size()) - b - a / 2);
}

namespace {

std::size_t compressed_size(Bytes data) {
  uLongf len = compressBound(static_cast<uLong>(data.size()));
  std::vector<Bytef> buf(len);
  const int rc = compress2(buf.data(), &len, data.data(), static_cast<uLong>(data.size()), 9);
  if (rc != Z_OK) throw Error(ErrorCode::EstimatorFailure, "zlib compress2 failed with code " + std::to_string(rc));
  return len;
}

}  // namespace

double CompressorEstimator::estimate(Bytes target, Bytes condition) const {
  std::vector<std::uint8_t> joined(condition.begin(), condition.end());
  joined.insert(joined.end(), target.begin(), target.end());
  const double with = static_cast<double>(compressed_size(joined));
  const double without = static_cast<double>(compressed_size(condition));
  return std::max(0.0, 8.0 * (with - without));
}

std::unique_ptr<ComplexityEstimator> make_estimator(const std::string& id, Bytes x, Bytes y) {
  if (id == "ramp")
    return std::make_unique<RampEstimator>(std::vector<std::uint8_t>(x.begin(), x.end()),
                                           std::vector<std::uint8_t>(y.begin(), y.end()));
  if (id == "compress") return std::make_unique<CompressorEstimator>();
  throw Error(ErrorCode::InvalidArgument, "unknown estimator '" + id + "'");
}

GridMap::GridMap(std::size_t width, std::size_t height)
    : width_(width), height_(height), values_((width + 1) * (height + 1), Vec2{0, 0}) {
  if (width == 0 || height == 0) throw Error(ErrorCode::InvalidArgument, "grid needs |x|, |y| >= 1");
}

GridMap GridMap::from_function(std::size_t width, std::size_t height,
                               const std::function<Vec2(std::size_t, std::size_t)>& fn) {
  GridMap g(width, height);
  for (std::size_t b = 0; b <= height; ++b)
    for (std::size_t a = 0; a <= width; ++a) g.at(a, b) = fn(a, b);
  return g;
}

double GridMap::scale() const {
  double s = 1.0;
  for (const auto& v : values_) s = std::max({s, std::abs(v[0]), std::abs(v[1])});
  return s;
}

GridMap build_grid(Bytes x, Bytes y, const ComplexityEstimator& est, unsigned threads) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::InvalidArgument, "grid needs |x|, |y| >= 1");
  GridMap grid(x.size(), y.size());
  auto eval = [&](Bytes target, Bytes z, std::size_t a, std::size_t b) {
    double v;
    try {
      v = est.estimate(target, z);
    } catch (const std::exception& e) {
      throw Error(ErrorCode::EstimatorFailure,
                  "node (" + std::to_string(a) + "," + std::to_string(b) + "): " + e.what());
    }
    if (!std::isfinite(v) || v < 0)
      throw Error(ErrorCode::EstimatorFailure,
                  "node (" + std::to_string(a) + "," + std::to_string(b) + "): non-finite or negative value");
    return v;
  };
  // One task per row; each writes only its own nodes.
  parallel_for(y.size() + 1, threads, [&](std::size_t b) {
    for (std::size_t a = 0; a <= x.size(); ++a) {
      const auto z = encode_pair(x.first(a), y.first(b));
      grid.at(a, b) = Vec2{eval(x, z, a, b), eval(y, z, a, b)};
    }
  });
  return grid;
}

Vec2 pl_extend(const GridMap& grid, Vec2 point) {
  const double w = static_cast<double>(grid.width()), h = static_cast<double>(grid.height());
  const auto [a, b] = point;
  if (!(a >= 0 && a <= w && b >= 0 && b <= h)) throw Error(ErrorCode::OutOfDomain, "point outside the rectangle");
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(a), grid.width() - 1);
  const auto j = std::min<std::size_t>(static_cast<std::size_t>(b), grid.height() - 1);
  const double s = a - static_cast<double>(i), t = b - static_cast<double>(j);
  const Vec2& v00 = grid.at(i, j);
  const Vec2& v11 = grid.at(i + 1, j + 1);
  Vec2 out;
  if (s >= t) {
    // Lower triangle (i,j), (i+1,j), (i+1,j+1).
    const Vec2& v10 = grid.at(i + 1, j);
    for (int k = 0; k < 2; ++k) out[k] = (1 - s) * v00[k] + (s - t) * v10[k] + t * v11[k];
  } else {
    // Upper triangle (i,j), (i,j+1), (i+1,j+1).
    const Vec2& v01 = grid.at(i, j + 1);
    for (int k = 0; k < 2; ++k) out[k] = (1 - t) * v00[k] + (t - s) * v01[k] + s * v11[k];
  }
  return out;
}

namespace {

using Node = std::array<std::size_t, 2>;

std::vector<Node> boundary_nodes(const GridMap& grid) {
  const std::size_t w = grid.width(), h = grid.height();
  std::vector<Node> nodes;
  nodes.reserve(2 * (w + h) + 1);
  for (std::size_t a = 0; a < w; ++a) nodes.push_back({a, 0});
  for (std::size_t b = 0; b < h; ++b) nodes.push_back({w, b});
  for (std::size_t a = w; a > 0; --a) nodes.push_back({a, h});
  for (std::size_t b = h; b > 0; --b) nodes.push_back({0, b});
  nodes.push_back({0, 0});
  return nodes;
}

double cross(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }
Vec2 sub(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
double norm(Vec2 a) { return std::hypot(a[0], a[1]); }

double segment_distance(Vec2 p, Vec2 a, Vec2 b, double* tau = nullptr) {
  const Vec2 ab = sub(b, a), ap = sub(p, a);
  const double len2 = ab[0] * ab[0] + ab[1] * ab[1];
  double t = len2 > 0 ? (ap[0] * ab[0] + ap[1] * ab[1]) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  if (tau) *tau = t;
  return norm(sub(p, Vec2{a[0] + t * ab[0], a[1] + t * ab[1]}));
}

double boundary_scale(const std::vector<Vec2>& poly, Vec2 target) {
  double s = std::max({1.0, std::abs(target[0]), std::abs(target[1])});
  for (const auto& v : poly) s = std::max({s, std::abs(v[0]), std::abs(v[1])});
  return s;
}

struct TriangleHit {
  Node node;
  Vec2 real;
};

std::optional<TriangleHit> locate(const GridMap& grid, Vec2 target, double scale) {
  const double det_eps = 1e-15 * scale * scale;
  constexpr double bary_eps = 1e-12;
  for (std::size_t j = 0; j < grid.height(); ++j) {
    for (std::size_t i = 0; i < grid.width(); ++i) {
      const std::array<std::array<Node, 3>, 2> tris{{
          {Node{i, j}, Node{i + 1, j}, Node{i + 1, j + 1}},
          {Node{i, j}, Node{i, j + 1}, Node{i + 1, j + 1}},
      }};
      for (const auto& tri : tris) {
        const Vec2 p0 = grid.at(tri[0][0], tri[0][1]);
        const Vec2 e1 = sub(grid.at(tri[1][0], tri[1][1]), p0);
        const Vec2 e2 = sub(grid.at(tri[2][0], tri[2][1]), p0);
        const double det = cross(e1, e2);
        if (std::abs(det) <= det_eps) continue;
        const Vec2 d = sub(target, p0);
        const double l1 = cross(d, e2) / det;
        const double l2 = cross(e1, d) / det;
        const double l0 = 1.0 - l1 - l2;
        if (l0 < -bary_eps || l1 < -bary_eps || l2 < -bary_eps) continue;
        Vec2 real{};
        for (int k = 0; k < 2; ++k)
          real[k] = l0 * static_cast<double>(tri[0][k]) + l1 * static_cast<double>(tri[1][k]) +
                    l2 * static_cast<double>(tri[2][k]);
        // The nearest lattice point to a point of the triangle is one of its
        // vertices; first vertex wins ties.
        Node best = tri[0];
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& n : tri) {
          const double dd = norm(sub(real, Vec2{static_cast<double>(n[0]), static_cast<double>(n[1])}));
          if (dd < best_d - 1e-12) {
            best_d = dd;
            best = n;
          }
        }
        return TriangleHit{best, real};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Vec2> boundary_polyline(const GridMap& grid) {
  std::vector<Vec2> poly;
  for (const auto& n : boundary_nodes(grid)) poly.push_back(grid.at(n[0], n[1]));
  return poly;
}

int winding_number(const GridMap& grid, Vec2 target) {
  const auto poly = boundary_polyline(grid);
  const double tol = 1e-9 * boundary_scale(poly, target);
  double total = 0;
  for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
    if (segment_distance(target, poly[k], poly[k + 1]) <= tol)
      throw Error(ErrorCode::TargetOnBoundary, "target lies on the boundary image");
    const Vec2 a = sub(poly[k], target), b = sub(poly[k + 1], target);
    total += std::atan2(cross(a, b), a[0] * b[0] + a[1] * b[1]);
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

Preimage find_preimage(const GridMap& grid, Vec2 target) {
  if (winding_number(grid, target) == 0) throw Error(ErrorCode::NotCovered, "boundary image does not wind around target");
  const double scale = boundary_scale(boundary_polyline(grid), target);
  Preimage pre;
  auto hit = locate(grid, target, scale);
  if (!hit) {
    const double shift = 1e-9 * scale;
    hit = locate(grid, Vec2{target[0] + shift, target[1] + shift}, scale);
    pre.perturbed = true;
  }
  if (!hit) throw Error(ErrorCode::NumericalDegeneracy, "no triangle image contains the target");
  pre.alpha = hit->node[0];
  pre.beta = hit->node[1];
  pre.real = hit->real;
  pre.achieved = grid.at(pre.alpha, pre.beta);
  pre.residual = norm(sub(pre.achieved, target));
  return pre;
}

LipschitzStats measure_lipschitz(const GridMap& grid, double declared) {
  LipschitzStats st;
  st.declared = declared;
  auto visit = [&](const Vec2& u, const Vec2& v) {
    const double d = std::max(std::abs(u[0] - v[0]), std::abs(u[1] - v[1]));
    st.measured_max = std::max(st.measured_max, d);
    if (d > declared) ++st.violations;
  };
  for (std::size_t b = 0; b <= grid.height(); ++b)
    for (std::size_t a = 0; a <= grid.width(); ++a) {
      if (a < grid.width()) visit(grid.at(a, b), grid.at(a + 1, b));
      if (b < grid.height()) visit(grid.at(a, b), grid.at(a, b + 1));
    }
  return st;
}

HalveReport halve(Bytes x, Bytes y, const ComplexityEstimator& est, unsigned threads) {
  HalveReport rep;
  rep.nx = x.size();
  rep.ny = y.size();
  rep.estimator = est.name();
  rep.target = Vec2{est.estimate(x, {}) / 2, est.estimate(y, {}) / 2};
  const GridMap grid = build_grid(x, y, est, threads);
  rep.lipschitz = measure_lipschitz(grid, est.declared_lipschitz());
  try {
    rep.winding = winding_number(grid, rep.target);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TargetOnBoundary) throw;
    // The target is hit by the boundary itself; take the segment closest to it.
    const auto nodes = boundary_nodes(grid);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity(), best_tau = 0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      double tau;
      const double d = segment_distance(rep.target, grid.at(nodes[k][0], nodes[k][1]),
                                        grid.at(nodes[k + 1][0], nodes[k + 1][1]), &tau);
      if (d < best_d) {
        best_d = d;
        best = k;
        best_tau = tau;
      }
    }
    Preimage pre;
    const Node& n0 = nodes[best];
    const Node& n1 = nodes[best + 1];
    for (int k = 0; k < 2; ++k)
      pre.real[k] = static_cast<double>(n0[k]) + best_tau * (static_cast<double>(n1[k]) - static_cast<double>(n0[k]));
    const Node& pick = best_tau <= 0.5 ? n0 : n1;
    pre.alpha = pick[0];
    pre.beta = pick[1];
    pre.achieved = grid.at(pre.alpha, pre.beta);
    pre.residual = norm(sub(pre.achieved, rep.target));
    rep.preimage = pre;
    rep.status = "on_boundary";
    return rep;
  }
  if (*rep.winding == 0) {
    rep.status = "not_covered";
    return rep;
  }
  rep.preimage = find_preimage(grid, rep.target);
  rep.status = "ok";
  return rep;
}

}  // namespace skalab::halving
