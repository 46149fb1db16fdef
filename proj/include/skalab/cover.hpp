#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "skalab/field.hpp"
#include "skalab/incidence.hpp"
#include "skalab/plane.hpp"

namespace skalab {

using Matrix3 = std::array<std::array<Elt, 3>, 3>;

Matrix3 identity_matrix(const FieldSpec& spec);
Elt determinant(const Matrix3& m);
/// Throws DivisionByZero for singular matrices.
Matrix3 inverse(const Matrix3& m);
Matrix3 transpose(const Matrix3& m);
Matrix3 multiply(const Matrix3& a, const Matrix3& b);
std::array<Elt, 3> apply_matrix(const Matrix3& m, const std::array<Elt, 3>& v);

/// Projective linear map of PG(2, q). Points map by the matrix, lines by its
/// inverse transpose, which keeps <line, point> invariant.
class Automorphism {
 public:
  explicit Automorphism(const Matrix3& matrix);
  static Automorphism identity(const FieldSpec& spec) { return Automorphism(identity_matrix(spec)); }

  const Matrix3& matrix() const noexcept { return matrix_; }
  const Matrix3& inverse_transpose() const noexcept { return inverse_transpose_; }
  const FieldSpec& spec() const noexcept { return matrix_[0][0].spec(); }
  Automorphism inverted() const;

 private:
  Matrix3 matrix_;
  Matrix3 inverse_transpose_;
};

ProjPoint apply(const Automorphism& m, const ProjPoint& point);
ProjLine apply(const Automorphism& m, const ProjLine& line);
Flag apply(const Automorphism& m, const Flag& flag);

/// Uniform over GL(3, q) by rejection of singular matrices.
Automorphism random_automorphism(const FieldSpec& spec, std::mt19937_64& rng, std::uint64_t* attempts = nullptr);
Automorphism random_automorphism(std::uint64_t q, std::uint64_t seed);

/// Lines and points of PG(2, q), q = p^2, whose canonical coordinates all lie
/// in the prime subfield.
SubgraphQuery baer_subplane(const Plane& plane);
SubgraphQuery baer_subplane(std::uint64_t q);

struct TransitivityResult {
  bool transitive = false;
  std::size_t orbit_size = 0;
  std::size_t flag_count = 0;
};

/// Orbit of the first flag under all of GL(3, q); only for q <= 3.
TransitivityResult flag_transitivity_check(std::uint64_t q);

struct CoverFamily {
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  double c = 0;
  std::uint64_t seed = 0;
  SubgraphQuery base;
  std::vector<Automorphism> maps;
  std::vector<char> covered;  // indexed like Plane::flags()
  std::size_t covered_count = 0;
  double coverage_fraction = 0;
  std::size_t sample_count = 0;

  std::vector<std::uint32_t> uncovered_flag_ids() const;
};

/// ceil(c * p^3 * ln(total flags)).
std::uint64_t cover_sample_count(std::uint64_t p, std::uint64_t total_flags, double c);

/// Draws the sample count's worth of uniform automorphisms from `seed` and
/// marks every image of a base flag as covered.
CoverFamily build_cover(const Plane& plane, double c, std::uint64_t seed, unsigned threads = 1);
/// Coverage of an explicit family of maps.
CoverFamily cover_with_maps(const Plane& plane, std::vector<Automorphism> maps, unsigned threads = 1);

/// Flag indices of the images of the base subplane's flags under `m`.
std::vector<std::uint32_t> covered_by(const Plane& plane, const std::vector<std::uint32_t>& base_flags,
                                      const Automorphism& m);
/// Flag indices of the Baer subplane's own flags.
std::vector<std::uint32_t> baer_flags(const Plane& plane);

}  // namespace skalab
