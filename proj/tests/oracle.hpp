#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library's arithmetic: fields are tables built from polynomial
// products, planes are scalar-multiple classes of vectors, and dense subgraph
// counts come from brute force.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

/// Elements of F_p or F_{p^2} as codes a0 * p + a1 (a1 = 0 for prime fields),
/// with full addition and multiplication tables.
struct TableField {
  std::uint64_t p = 0, q = 0;
  std::uint64_t u = 0, v = 0;  // xi^2 = u + v xi
  std::vector<std::uint32_t> add, mul;

  std::uint32_t plus(std::uint32_t a, std::uint32_t b) const { return add[a * q + b]; }
  std::uint32_t times(std::uint32_t a, std::uint32_t b) const { return mul[a * q + b]; }
  std::uint32_t neg(std::uint32_t a) const {
    for (std::uint32_t b = 0; b < q; ++b)
      if (plus(a, b) == 0) return b;
    return 0;
  }
  std::uint32_t inverse(std::uint32_t a) const {
    for (std::uint32_t b = 1; b < q; ++b)
      if (times(a, b) == one()) return b;
    return 0;
  }
  /// Code of the multiplicative identity.
  std::uint32_t one() const { return q == p ? 1 : static_cast<std::uint32_t>(p); }
};

inline bool has_root(std::uint64_t p, std::uint64_t u, std::uint64_t v) {
  for (std::uint64_t x = 0; x < p; ++x)
    if ((x * x + (p - v) * x % p + (p - u)) % p == 0) return true;
  return false;
}

inline TableField prime_field(std::uint64_t p) {
  TableField f;
  f.p = f.q = p;
  f.add.resize(p * p);
  f.mul.resize(p * p);
  for (std::uint64_t a = 0; a < p; ++a)
    for (std::uint64_t b = 0; b < p; ++b) {
      f.add[a * p + b] = static_cast<std::uint32_t>((a + b) % p);
      f.mul[a * p + b] = static_cast<std::uint32_t>(a * b % p);
    }
  return f;
}

/// F_p[X]/(X^2 - vX - u) with the given (u, v); multiplication is the
/// schoolbook polynomial product followed by one reduction of X^2.
inline TableField quadratic_field(std::uint64_t p, std::uint64_t u, std::uint64_t v) {
  TableField f;
  f.p = p;
  f.q = p * p;
  f.u = u;
  f.v = v;
  f.add.resize(f.q * f.q);
  f.mul.resize(f.q * f.q);
  for (std::uint64_t a = 0; a < f.q; ++a)
    for (std::uint64_t b = 0; b < f.q; ++b) {
      const std::uint64_t a0 = a / p, a1 = a % p, b0 = b / p, b1 = b % p;
      f.add[a * f.q + b] = static_cast<std::uint32_t>(((a0 + b0) % p) * p + (a1 + b1) % p);
      const std::uint64_t c0 = a0 * b0 % p;
      const std::uint64_t c1 = (a0 * b1 + a1 * b0) % p;
      const std::uint64_t c2 = a1 * b1 % p;
      f.mul[a * f.q + b] = static_cast<std::uint32_t>(((c0 + c2 * u) % p) * p + (c1 + c2 * v) % p);
    }
  return f;
}

/// First (u, v) with v outer, u inner, such that X^2 - vX - u is irreducible.
inline std::array<std::uint64_t, 2> first_irreducible(std::uint64_t p) {
  for (std::uint64_t v = 0; v < p; ++v)
    for (std::uint64_t u = 0; u < p; ++u)
      if (!has_root(p, u, v)) return {u, v};
  return {0, 0};
}

inline TableField field_of_order(std::uint64_t q) {
  for (std::uint64_t p = 2; p * p <= q; ++p)
    if (p * p == q) {
      const auto uv = first_irreducible(p);
      return quadratic_field(p, uv[0], uv[1]);
    }
  return prime_field(q);
}

using Vec = std::array<std::uint32_t, 3>;

/// PG(2, q) as classes of nonzero vectors under scalar multiplication.
struct PlaneOracle {
  TableField f;
  std::vector<Vec> reps;  // class representative with first nonzero = one
  std::map<Vec, std::size_t> index;

  explicit PlaneOracle(std::uint64_t q) : f(field_of_order(q)) {
    std::set<Vec> seen;
    for (std::uint32_t a = 0; a < f.q; ++a)
      for (std::uint32_t b = 0; b < f.q; ++b)
        for (std::uint32_t c = 0; c < f.q; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          Vec best{a, b, c};
          for (std::uint32_t k = 1; k < f.q; ++k) {
            Vec w{f.times(k, a), f.times(k, b), f.times(k, c)};
            best = std::min(best, w);
          }
          seen.insert(best);
        }
    for (const Vec& s : seen) {
      // Rescale the lexicographically smallest multiple so that its first
      // nonzero coordinate is one.
      std::uint32_t lead = s[0] ? s[0] : s[1] ? s[1] : s[2];
      std::uint32_t k = f.inverse(lead);
      Vec w{f.times(k, s[0]), f.times(k, s[1]), f.times(k, s[2])};
      reps.push_back(w);
    }
    std::sort(reps.begin(), reps.end());
    for (std::size_t i = 0; i < reps.size(); ++i) index[reps[i]] = i;
  }

  bool incident(const Vec& line, const Vec& point) const {
    std::uint32_t s = 0;
    for (int i = 0; i < 3; ++i) s = f.plus(s, f.times(line[i], point[i]));
    return s == 0;
  }
};

/// Brute-force maximum number of edges induced by a lines x b points.
inline std::uint64_t max_induced(const std::vector<std::vector<char>>& adj, std::size_t a, std::size_t b) {
  const std::size_t n_left = adj.size(), n_right = adj.empty() ? 0 : adj[0].size();
  std::uint64_t best = 0;
  std::vector<char> pick_left(n_left, 0);
  std::fill(pick_left.begin(), pick_left.begin() + static_cast<std::ptrdiff_t>(a), 1);
  std::sort(pick_left.begin(), pick_left.end());
  do {
    std::vector<char> pick_right(n_right, 0);
    std::fill(pick_right.begin(), pick_right.begin() + static_cast<std::ptrdiff_t>(b), 1);
    std::sort(pick_right.begin(), pick_right.end());
    do {
      std::uint64_t e = 0;
      for (std::size_t l = 0; l < n_left; ++l)
        if (pick_left[l])
          for (std::size_t r = 0; r < n_right; ++r) e += pick_right[r] && adj[l][r];
      best = std::max(best, e);
    } while (std::next_permutation(pick_right.begin(), pick_right.end()));
  } while (std::next_permutation(pick_left.begin(), pick_left.end()));
  return best;
}

/// Exact solution of [[a, b], [c, d]] (s, t) = (e, f) by Cramer's rule.
inline std::array<double, 2> solve2(double a, double b, double c, double d, double e, double f) {
  const double det = a * d - b * c;
  return {(e * d - b * f) / det, (a * f - e * c) / det};
}

}  // namespace oracle
