#include "skalab/cover.hpp"

#include <algorithm>
#include <cmath>

#include "skalab/error.hpp"
#include "skalab/parallel.hpp"

namespace skalab {

Matrix3 identity_matrix(const FieldSpec& spec) {
  Matrix3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = i == j ? Elt::one(spec) : Elt::zero(spec);
  return m;
}

Elt determinant(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Matrix3 transpose(const Matrix3& m) {
  Matrix3 t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

Matrix3 inverse(const Matrix3& m) {
  const Elt det_inv = inv(determinant(m));
  Matrix3 r;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      // Adjugate entry (i, j) is the cofactor of (j, i).
      const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      r[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * det_inv;
    }
  }
  return r;
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
  Matrix3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

std::array<Elt, 3> apply_matrix(const Matrix3& m, const std::array<Elt, 3>& v) {
  std::array<Elt, 3> r;
  for (std::size_t i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

Automorphism::Automorphism(const Matrix3& matrix)
    : matrix_(matrix), inverse_transpose_(transpose(inverse(matrix))) {}

Automorphism Automorphism::inverted() const { return Automorphism(inverse(matrix_)); }

ProjPoint apply(const Automorphism& m, const ProjPoint& point) {
  if (!(m.spec() == point.spec())) throw Error(ErrorCode::SpecMismatch, "map and point from different fields");
  return canonicalize<ProjPoint>(apply_matrix(m.matrix(), point.c));
}

ProjLine apply(const Automorphism& m, const ProjLine& line) {
  if (!(m.spec() == line.spec())) throw Error(ErrorCode::SpecMismatch, "map and line from different fields");
  return canonicalize<ProjLine>(apply_matrix(m.inverse_transpose(), line.c));
}

Flag apply(const Automorphism& m, const Flag& flag) { return Flag{apply(m, flag.line), apply(m, flag.point)}; }

Automorphism random_automorphism(const FieldSpec& spec, std::mt19937_64& rng, std::uint64_t* attempts) {
  std::uint64_t tries = 0;
  while (true) {
    ++tries;
    Matrix3 m;
    for (auto& row : m)
      for (auto& e : row) e = uniform_elt(spec, rng);
    if (!determinant(m).is_zero()) {
      if (attempts) *attempts = tries;
      return Automorphism(m);
    }
  }
}

Automorphism random_automorphism(std::uint64_t q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_automorphism(field_for_order(q), rng);
}

namespace {

bool subfield_triple(const std::array<Elt, 3>& c) {
  return c[0].in_subfield() && c[1].in_subfield() && c[2].in_subfield();
}

void require_quadratic(const FieldSpec& spec) {
  if (spec.degree != 2)
    throw Error(ErrorCode::UnsupportedField, "q=" + std::to_string(spec.order()) + " has no subfield of size sqrt(q)");
}

}  // namespace

SubgraphQuery baer_subplane(const Plane& plane) {
  require_quadratic(plane.spec());
  SubgraphQuery q;
  for (std::uint32_t i = 0; i < plane.lines().size(); ++i)
    if (subfield_triple(plane.lines()[i].c)) q.left.push_back(i);
  for (std::uint32_t i = 0; i < plane.points().size(); ++i)
    if (subfield_triple(plane.points()[i].c)) q.right.push_back(i);
  return q;
}

SubgraphQuery baer_subplane(std::uint64_t q) {
  const FieldSpec spec = field_for_order(q);
  require_quadratic(spec);
  return baer_subplane(Plane(spec));
}

std::vector<std::uint32_t> baer_flags(const Plane& plane) {
  const SubgraphQuery base = baer_subplane(plane);
  std::vector<char> in_base(plane.points().size(), 0);
  for (std::uint32_t pt : base.right) in_base[pt] = 1;
  std::vector<std::uint32_t> out;
  for (std::uint32_t l : base.left) {
    const std::size_t first = static_cast<std::size_t>(l) * (plane.q() + 1);
    for (std::size_t k = first; k < first + plane.q() + 1; ++k)
      if (in_base[plane.flags()[k].point]) out.push_back(static_cast<std::uint32_t>(k));
  }
  return out;
}

TransitivityResult flag_transitivity_check(std::uint64_t q) {
  if (q > 3) throw Error(ErrorCode::TooLarge, "orbit enumeration over GL(3," + std::to_string(q) + ") is limited to q <= 3");
  const Plane plane = Plane::of_order(q);
  const FieldSpec& spec = plane.spec();
  const Flag start = plane.flag_at(0);
  std::vector<char> seen(plane.flags().size(), 0);
  std::uint64_t total = 1;
  for (int i = 0; i < 9; ++i) total *= q;
  for (std::uint64_t code = 0; code < total; ++code) {
    Matrix3 m;
    std::uint64_t rest = code;
    for (auto& row : m)
      for (auto& e : row) {
        e = Elt::from_code(spec, rest % q);
        rest /= q;
      }
    if (determinant(m).is_zero()) continue;
    seen[plane.flag_index(apply(Automorphism(m), start))] = 1;
  }
  TransitivityResult res;
  res.flag_count = plane.flags().size();
  res.orbit_size = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
  res.transitive = res.orbit_size == res.flag_count;
  return res;
}

std::vector<std::uint32_t> CoverFamily::uncovered_flag_ids() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < covered.size(); ++i)
    if (!covered[i]) out.push_back(i);
  return out;
}

std::uint64_t cover_sample_count(std::uint64_t p, std::uint64_t total_flags, double c) {
  const double p3 = static_cast<double>(p) * static_cast<double>(p) * static_cast<double>(p);
  return static_cast<std::uint64_t>(std::ceil(c * p3 * std::log(static_cast<double>(total_flags))));
}

std::vector<std::uint32_t> covered_by(const Plane& plane, const std::vector<std::uint32_t>& base_flags,
                                      const Automorphism& m) {
  std::vector<std::uint32_t> out;
  out.reserve(base_flags.size());
  for (std::uint32_t k : base_flags) out.push_back(plane.flag_index(apply(m, plane.flag_at(k))));
  return out;
}

CoverFamily cover_with_maps(const Plane& plane, std::vector<Automorphism> maps, unsigned threads) {
  require_quadratic(plane.spec());
  CoverFamily fam;
  fam.q = plane.q();
  fam.p = plane.spec().p;
  fam.base = baer_subplane(plane);
  const auto base_flags = baer_flags(plane);
  std::vector<std::vector<std::uint32_t>> images(maps.size());
  parallel_for(maps.size(), threads, [&](std::size_t i) { images[i] = covered_by(plane, base_flags, maps[i]); });
  fam.covered.assign(plane.flags().size(), 0);
  for (const auto& img : images)
    for (std::uint32_t k : img) fam.covered[k] = 1;
  fam.maps = std::move(maps);
  fam.sample_count = fam.maps.size();
  fam.covered_count = static_cast<std::size_t>(std::count(fam.covered.begin(), fam.covered.end(), 1));
  fam.coverage_fraction = static_cast<double>(fam.covered_count) / static_cast<double>(fam.covered.size());
  return fam;
}

CoverFamily build_cover(const Plane& plane, double c, std::uint64_t seed, unsigned threads) {
  require_quadratic(plane.spec());
  if (!(c > 0)) throw Error(ErrorCode::InvalidArgument, "oversampling constant c must be positive");
  const std::uint64_t n = cover_sample_count(plane.spec().p, plane.flags().size(), c);
  std::mt19937_64 rng(seed);
  std::vector<Automorphism> maps;
  maps.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) maps.push_back(random_automorphism(plane.spec(), rng));
  CoverFamily fam = cover_with_maps(plane, std::move(maps), threads);
  fam.c = c;
  fam.seed = seed;
  return fam;
}

}  // namespace skalab
