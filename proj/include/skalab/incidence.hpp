#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skalab/field.hpp"

namespace skalab {

class Plane;

/// Simple bipartite graph with bitset adjacency in both directions.
/// Left ids are [0, left_count), right ids are [0, right_count).
class BiGraph {
 public:
  using Edge = std::pair<std::uint32_t, std::uint32_t>;

  /// Throws InvariantViolation on duplicate edges, UnknownVertex on ids out of range.
  BiGraph(std::size_t left_count, std::size_t right_count, std::vector<Edge> edges,
          std::optional<FieldSpec> field = std::nullopt);

  std::size_t left_count() const noexcept { return left_count_; }
  std::size_t right_count() const noexcept { return right_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Field of the plane this graph was built from, if any.
  const std::optional<FieldSpec>& field() const noexcept { return field_; }

  double alpha() const;
  double beta() const;
  double gamma() const;

  std::size_t left_words() const noexcept { return left_words_; }
  std::size_t right_words() const noexcept { return right_words_; }
  /// Bitset over right ids adjacent to left vertex `l`.
  std::span<const std::uint64_t> row(std::uint32_t l) const noexcept {
    return {rows_.data() + l * right_words_, right_words_};
  }
  /// Bitset over left ids adjacent to right vertex `r`.
  std::span<const std::uint64_t> col(std::uint32_t r) const noexcept {
    return {cols_.data() + r * left_words_, left_words_};
  }
  std::uint32_t left_degree(std::uint32_t l) const noexcept;
  std::uint32_t right_degree(std::uint32_t r) const noexcept;
  bool has_edge(std::uint32_t l, std::uint32_t r) const noexcept {
    return (rows_[l * right_words_ + r / 64] >> (r % 64)) & 1u;
  }

  /// Memoized c4_free_check.
  bool c4_free() const;

 private:
  std::size_t left_count_;
  std::size_t right_count_;
  std::size_t left_words_;
  std::size_t right_words_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cols_;
  std::optional<FieldSpec> field_;
  struct Memo;
  std::shared_ptr<Memo> memo_;
};

struct SubgraphQuery {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;

  /// Sorts and removes duplicates.
  SubgraphQuery normalized() const;
  static SubgraphQuery full(const BiGraph& g);

  friend bool operator==(const SubgraphQuery&, const SubgraphQuery&) = default;
};

struct BoundReport {
  std::uint64_t left_size = 0;
  std::uint64_t right_size = 0;
  std::uint64_t edges = 0;
  double sdz_value = 0;  // (|L'| |R'|)^{11/15}
  double sdz_ratio = 0;  // |E'| / sdz_value
  bool regime_balanced = false;  // |L'|^{7/8} < |R'| < |L'|^{8/7}
  bool regime_small = false;     // max(|L'|, |R'|) <= q^{8/7}
  bool field_prime = false;
  bool host_c4_free = false;
  double kst_value = 0;
  std::uint64_t kst_bound = 0;  // floor(kst_value)
  double density_exponent = 0;  // log|E'| / log(|L'| |R'|)
  std::uint64_t q = 0;          // 0 when the host is not a plane graph
  std::uint64_t n = 0;          // ceil(log2 q)
};

BiGraph build_plane_graph(const Plane& plane);
BiGraph build_plane_graph(std::uint64_t q);

std::uint64_t count_induced_edges(const BiGraph& g, const SubgraphQuery& query);

/// Zarankiewicz-type bound on edges of a C4-free bipartite graph with the
/// given part sizes (Reiman's counting bound, minimized over both sides).
double kst_value(std::uint64_t left_size, std::uint64_t right_size);

BoundReport sdz_report(const BiGraph& g, const SubgraphQuery& query);

enum class SearchStrategy { exhaustive, greedy_peel, local_swap };

SearchStrategy parse_strategy(const std::string& name);
std::string to_string(SearchStrategy s);

struct SearchOptions {
  SearchStrategy strategy = SearchStrategy::greedy_peel;
  std::uint64_t seed = 0;
  std::uint64_t iters = 1000;
  unsigned threads = 1;
};

struct SearchResult {
  SubgraphQuery query;
  std::uint64_t count = 0;
};

/// Exhaustive search is allowed only if C(|L|,a) * C(|R|,b) <= this.
inline constexpr double kExhaustiveLimit = 1e7;

SearchResult dense_subgraph_search(const BiGraph& g, std::size_t a, std::size_t b, const SearchOptions& options);

/// Uniform simple bipartite graph with floor(2^alpha) + floor(2^beta) vertices
/// and exactly floor(2^gamma) distinct edges.
BiGraph random_bigraph(double alpha, double beta, double gamma, std::uint64_t seed);

/// True iff no two left vertices share two right neighbours.
bool c4_free_check(const BiGraph& g);

/// Edge-list text: a "# bigraph <left> <right>" header, then "l r" per line.
void write_edge_list(std::ostream& out, const BiGraph& g);
BiGraph read_edge_list(std::istream& in);

}  // namespace skalab
