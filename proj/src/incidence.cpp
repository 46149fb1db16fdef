#include "skalab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "skalab/error.hpp"
#include "skalab/kernels.hpp"
#include "skalab/parallel.hpp"
#include "skalab/plane.hpp"

namespace skalab {

struct BiGraph::Memo {
  std::once_flag once;
  bool c4_free = false;
};

BiGraph::BiGraph(std::size_t left_count, std::size_t right_count, std::vector<Edge> edges,
                 std::optional<FieldSpec> field)
    : left_count_(left_count),
      right_count_(right_count),
      left_words_((left_count + 63) / 64),
      right_words_((right_count + 63) / 64),
      edges_(std::move(edges)),
      field_(field),
      memo_(std::make_shared<Memo>()) {
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw Error(ErrorCode::InvariantViolation, "duplicate edge");
  rows_.assign(left_count_ * right_words_, 0);
  cols_.assign(right_count_ * left_words_, 0);
  for (auto [l, r] : edges_) {
    if (l >= left_count_ || r >= right_count_)
      throw Error(ErrorCode::UnknownVertex, "edge (" + std::to_string(l) + "," + std::to_string(r) + ") out of range");
    rows_[l * right_words_ + r / 64] |= std::uint64_t{1} << (r % 64);
    cols_[r * left_words_ + l / 64] |= std::uint64_t{1} << (l % 64);
  }
}

double BiGraph::alpha() const { return std::log2(static_cast<double>(left_count_)); }
double BiGraph::beta() const { return std::log2(static_cast<double>(right_count_)); }
double BiGraph::gamma() const { return std::log2(static_cast<double>(edges_.size())); }

std::uint32_t BiGraph::left_degree(std::uint32_t l) const noexcept {
  return static_cast<std::uint32_t>(kernels::popcount(row(l)));
}
std::uint32_t BiGraph::right_degree(std::uint32_t r) const noexcept {
  return static_cast<std::uint32_t>(kernels::popcount(col(r)));
}

bool BiGraph::c4_free() const {
  std::call_once(memo_->once, [this] { memo_->c4_free = c4_free_check(*this); });
  return memo_->c4_free;
}

SubgraphQuery SubgraphQuery::normalized() const {
  SubgraphQuery q = *this;
  std::sort(q.left.begin(), q.left.end());
  q.left.erase(std::unique(q.left.begin(), q.left.end()), q.left.end());
  std::sort(q.right.begin(), q.right.end());
  q.right.erase(std::unique(q.right.begin(), q.right.end()), q.right.end());
  return q;
}

SubgraphQuery SubgraphQuery::full(const BiGraph& g) {
  SubgraphQuery q;
  q.left.resize(g.left_count());
  q.right.resize(g.right_count());
  for (std::uint32_t i = 0; i < q.left.size(); ++i) q.left[i] = i;
  for (std::uint32_t i = 0; i < q.right.size(); ++i) q.right[i] = i;
  return q;
}

BiGraph build_plane_graph(const Plane& plane) {
  std::vector<BiGraph::Edge> edges;
  edges.reserve(plane.flags().size());
  for (const auto& f : plane.flags()) edges.emplace_back(f.line, f.point);
  return BiGraph(plane.lines().size(), plane.points().size(), std::move(edges), plane.spec());
}

BiGraph build_plane_graph(std::uint64_t q) { return build_plane_graph(Plane::of_order(q)); }

namespace {

std::vector<std::uint64_t> mask_of(std::span<const std::uint32_t> ids, std::size_t count, std::size_t words) {
  std::vector<std::uint64_t> mask(words, 0);
  for (std::uint32_t id : ids) {
    if (id >= count) throw Error(ErrorCode::UnknownVertex, "vertex id " + std::to_string(id) + " out of range");
    mask[id / 64] |= std::uint64_t{1} << (id % 64);
  }
  return mask;
}

std::uint64_t ceil_log2(std::uint64_t q) {
  std::uint64_t n = 0;
  while ((std::uint64_t{1} << n) < q) ++n;
  return n;
}

}  // namespace

std::uint64_t count_induced_edges(const BiGraph& g, const SubgraphQuery& query) {
  const SubgraphQuery nq = query.normalized();
  const auto right_mask = mask_of(nq.right, g.right_count(), g.right_words());
  for (std::uint32_t l : nq.left)
    if (l >= g.left_count()) throw Error(ErrorCode::UnknownVertex, "left id " + std::to_string(l) + " out of range");
  std::uint64_t count = 0;
  for (std::uint32_t l : nq.left) count += kernels::and_popcount(g.row(l), right_mask);
  return count;
}

double kst_value(std::uint64_t left_size, std::uint64_t right_size) {
  // Two left vertices share at most one right neighbour:
  // sum_r C(d_r, 2) <= C(m, 2), with Cauchy-Schwarz on sum_r d_r.
  auto one_side = [](double m, double n) {
    if (n == 0) return 0.0;
    return 0.5 * n * (1.0 + std::sqrt(1.0 + 4.0 * m * (m - 1.0) / n));
  };
  const double m = static_cast<double>(left_size), n = static_cast<double>(right_size);
  return std::min(one_side(m, n), one_side(n, m));
}

BoundReport sdz_report(const BiGraph& g, const SubgraphQuery& query) {
  const SubgraphQuery nq = query.normalized();
  if (nq.left.empty() || nq.right.empty()) throw Error(ErrorCode::EmptyQuery, "both subsets must be nonempty");
  BoundReport rep;
  rep.left_size = nq.left.size();
  rep.right_size = nq.right.size();
  rep.edges = count_induced_edges(g, nq);
  const double lsz = static_cast<double>(rep.left_size), rsz = static_cast<double>(rep.right_size);
  const double product = lsz * rsz;
  rep.sdz_value = std::pow(product, 11.0 / 15.0);
  rep.sdz_ratio = static_cast<double>(rep.edges) / rep.sdz_value;
  rep.regime_balanced = std::pow(lsz, 7.0 / 8.0) < rsz && rsz < std::pow(lsz, 8.0 / 7.0);
  if (g.field()) {
    rep.q = g.field()->order();
    rep.n = ceil_log2(rep.q);
    rep.field_prime = g.field()->degree == 1;
    rep.regime_small = std::max(lsz, rsz) <= std::pow(static_cast<double>(rep.q), 8.0 / 7.0);
  }
  rep.kst_value = kst_value(rep.left_size, rep.right_size);
  rep.kst_bound = static_cast<std::uint64_t>(std::floor(rep.kst_value + 1e-9));
  if (rep.edges == 0) {
    rep.density_exponent = 0;
  } else if (product == 1) {
    rep.density_exponent = 1;
  } else {
    rep.density_exponent = std::log(static_cast<double>(rep.edges)) / std::log(product);
  }
  rep.host_c4_free = g.c4_free();
  if (rep.host_c4_free && rep.edges > rep.kst_bound)
    throw Error(ErrorCode::InvariantViolation, "induced subgraph of a C4-free host exceeds the Zarankiewicz bound");
  return rep;
}

SearchStrategy parse_strategy(const std::string& name) {
  if (name == "exhaustive") return SearchStrategy::exhaustive;
  if (name == "greedy-peel" || name == "greedy") return SearchStrategy::greedy_peel;
  if (name == "local-swap") return SearchStrategy::local_swap;
  throw Error(ErrorCode::ParseError, "unknown strategy '" + name + "'");
}

std::string to_string(SearchStrategy s) {
  switch (s) {
    case SearchStrategy::exhaustive: return "exhaustive";
    case SearchStrategy::greedy_peel: return "greedy-peel";
    case SearchStrategy::local_swap: return "local-swap";
  }
  return "?";
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Strict preference: more edges, then lexicographically smaller (left, right).
bool better(const SearchResult& a, const SearchResult& b) {
  if (a.count != b.count) return a.count > b.count;
  if (a.query.left != b.query.left) return a.query.left < b.query.left;
  return a.query.right < b.query.right;
}

// Best right subset of size b for a fixed left mask: the b right vertices with
// the most neighbours in it, smaller ids first among equal degrees.
SearchResult best_right_for(const BiGraph& g, std::span<const std::uint64_t> left_mask, std::size_t b,
                            std::size_t max_degree, std::vector<std::vector<std::uint32_t>>& buckets) {
  for (auto& bucket : buckets) bucket.clear();
  for (std::uint32_t r = 0; r < g.right_count(); ++r) {
    const auto d = kernels::and_popcount(g.col(r), left_mask);
    buckets[std::min<std::size_t>(d, max_degree)].push_back(r);
  }
  SearchResult res;
  for (std::size_t d = max_degree + 1; d-- > 0 && res.query.right.size() < b;) {
    for (std::uint32_t r : buckets[d]) {
      if (res.query.right.size() == b) break;
      res.query.right.push_back(r);
      res.count += d;
    }
  }
  std::sort(res.query.right.begin(), res.query.right.end());
  return res;
}

SearchResult exhaustive_search(const BiGraph& g, std::size_t a, std::size_t b, unsigned threads) {
  const std::size_t nl = g.left_count();
  if (binomial(nl, a) * binomial(g.right_count(), b) > kExhaustiveLimit)
    throw Error(ErrorCode::ExhaustiveInfeasible, "C(|L|,a)*C(|R|,b) exceeds " + std::to_string(kExhaustiveLimit));
  if (a == 0 || b == 0) {
    SearchResult r;  // every choice has zero edges; smallest ids win
    for (std::uint32_t i = 0; i < a; ++i) r.query.left.push_back(i);
    for (std::uint32_t i = 0; i < b; ++i) r.query.right.push_back(i);
    return r;
  }
  // Task i enumerates the left subsets whose smallest element is i.
  const std::size_t tasks = nl - a + 1;
  std::vector<std::optional<SearchResult>> best(tasks);
  parallel_for(tasks, threads, [&](std::size_t first) {
    std::vector<std::vector<std::uint32_t>> buckets(a + 1);
    std::vector<std::uint32_t> combo(a);
    combo[0] = static_cast<std::uint32_t>(first);
    for (std::size_t i = 1; i < a; ++i) combo[i] = combo[i - 1] + 1;
    std::vector<std::uint64_t> mask(g.left_words());
    while (true) {
      std::fill(mask.begin(), mask.end(), 0);
      for (std::uint32_t l : combo) mask[l / 64] |= std::uint64_t{1} << (l % 64);
      SearchResult cand = best_right_for(g, mask, b, a, buckets);
      if (!best[first] || cand.count > best[first]->count) {
        cand.query.left = combo;
        best[first] = std::move(cand);
      }
      // Advance positions 1..a-1 in lexicographic order.
      std::size_t i = a;
      while (i-- > 1) {
        if (combo[i] < nl - (a - i)) break;
      }
      if (i == 0) break;
      ++combo[i];
      for (std::size_t j = i + 1; j < a; ++j) combo[j] = combo[j - 1] + 1;
    }
  });
  SearchResult result = *best[0];
  for (std::size_t i = 1; i < tasks; ++i)
    if (best[i]->count > result.count) result = *best[i];
  return result;
}

struct PeelState {
  std::vector<char> in_left, in_right;
  std::vector<std::uint32_t> deg_left, deg_right;  // neighbours inside the other current side
};

SearchResult collect(const PeelState& st) {
  SearchResult res;
  for (std::uint32_t i = 0; i < st.in_left.size(); ++i)
    if (st.in_left[i]) res.query.left.push_back(i);
  for (std::uint32_t i = 0; i < st.in_right.size(); ++i)
    if (st.in_right[i]) res.query.right.push_back(i);
  for (std::uint32_t l : res.query.left) res.count += st.deg_left[l];
  return res;
}

struct Adjacency {
  std::vector<std::vector<std::uint32_t>> of_left, of_right;
  explicit Adjacency(const BiGraph& g) : of_left(g.left_count()), of_right(g.right_count()) {
    for (auto [l, r] : g.edges()) {
      of_left[l].push_back(r);
      of_right[r].push_back(l);
    }
  }
};

PeelState greedy_peel(const BiGraph& g, const Adjacency& adj, std::size_t a, std::size_t b) {
  PeelState st;
  st.in_left.assign(g.left_count(), 1);
  st.in_right.assign(g.right_count(), 1);
  st.deg_left.resize(g.left_count());
  st.deg_right.resize(g.right_count());
  for (std::uint32_t l = 0; l < g.left_count(); ++l) st.deg_left[l] = static_cast<std::uint32_t>(adj.of_left[l].size());
  for (std::uint32_t r = 0; r < g.right_count(); ++r)
    st.deg_right[r] = static_cast<std::uint32_t>(adj.of_right[r].size());
  std::size_t nl = g.left_count(), nr = g.right_count();
  while (nl > a || nr > b) {
    const bool peel_left = nl - a >= nr - b && nl > a;
    auto& in = peel_left ? st.in_left : st.in_right;
    auto& deg = peel_left ? st.deg_left : st.deg_right;
    std::uint32_t victim = 0;
    bool found = false;
    for (std::uint32_t v = 0; v < in.size(); ++v) {
      if (in[v] && (!found || deg[v] < deg[victim])) {
        victim = v;
        found = true;
      }
    }
    in[victim] = 0;
    if (peel_left) {
      for (std::uint32_t r : adj.of_left[victim]) --st.deg_right[r];
      --nl;
    } else {
      for (std::uint32_t l : adj.of_right[victim]) --st.deg_left[l];
      --nr;
    }
  }
  return st;
}

void local_swaps(PeelState& st, const Adjacency& adj, std::uint64_t seed, std::uint64_t iters) {
  std::mt19937_64 rng(seed);
  auto members = [](const std::vector<char>& in, bool inside) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < in.size(); ++i)
      if (static_cast<bool>(in[i]) == inside) out.push_back(i);
    return out;
  };
  std::vector<std::uint32_t> left_in = members(st.in_left, true), left_out = members(st.in_left, false);
  std::vector<std::uint32_t> right_in = members(st.in_right, true), right_out = members(st.in_right, false);
  const bool left_movable = !left_in.empty() && !left_out.empty();
  const bool right_movable = !right_in.empty() && !right_out.empty();
  if (!left_movable && !right_movable) return;
  for (std::uint64_t it = 0; it < iters; ++it) {
    bool left_side = left_movable;
    if (left_movable && right_movable) left_side = uniform_below(rng, 2) == 0;
    auto& inside = left_side ? left_in : right_in;
    auto& outside = left_side ? left_out : right_out;
    const std::size_t i = uniform_below(rng, inside.size());
    const std::size_t o = uniform_below(rng, outside.size());
    const std::uint32_t u = inside[i], w = outside[o];
    // deg_* of an outside vertex also counts neighbours in the other side.
    auto& deg = left_side ? st.deg_left : st.deg_right;
    if (deg[w] <= deg[u]) continue;
    if (left_side) {
      st.in_left[u] = 0;
      st.in_left[w] = 1;
      for (std::uint32_t r : adj.of_left[u]) --st.deg_right[r];
      for (std::uint32_t r : adj.of_left[w]) ++st.deg_right[r];
    } else {
      st.in_right[u] = 0;
      st.in_right[w] = 1;
      for (std::uint32_t l : adj.of_right[u]) --st.deg_left[l];
      for (std::uint32_t l : adj.of_right[w]) ++st.deg_left[l];
    }
    std::swap(inside[i], outside[o]);
  }
}

}  // namespace

SearchResult dense_subgraph_search(const BiGraph& g, std::size_t a, std::size_t b, const SearchOptions& options) {
  if (a > g.left_count() || b > g.right_count())
    throw Error(ErrorCode::SizeTooLarge, "requested sizes exceed the host graph");
  switch (options.strategy) {
    case SearchStrategy::exhaustive:
      return exhaustive_search(g, a, b, options.threads);
    case SearchStrategy::greedy_peel: {
      const Adjacency adj(g);
      return collect(greedy_peel(g, adj, a, b));
    }
    case SearchStrategy::local_swap: {
      // Fixed number of independent chains from the greedy start; threads only
      // change scheduling, never the result.
      constexpr std::size_t kChains = 4;
      const Adjacency adj(g);
      const PeelState start = greedy_peel(g, adj, a, b);
      std::vector<SearchResult> results(kChains);
      parallel_for(kChains, options.threads, [&](std::size_t k) {
        PeelState st = start;
        local_swaps(st, adj, splitmix64(options.seed * kChains + k), options.iters);
        results[k] = collect(st);
      });
      SearchResult best = results[0];
      for (std::size_t k = 1; k < kChains; ++k)
        if (better(results[k], best)) best = results[k];
      return best;
    }
  }
  throw Error(ErrorCode::ParseError, "unknown strategy");
}

BiGraph random_bigraph(double alpha, double beta, double gamma, std::uint64_t seed) {
  const auto nl = static_cast<std::uint64_t>(std::floor(std::exp2(alpha)));
  const auto nr = static_cast<std::uint64_t>(std::floor(std::exp2(beta)));
  const auto m = static_cast<std::uint64_t>(std::floor(std::exp2(gamma)));
  const std::uint64_t total = nl * nr;
  if (m > total) throw Error(ErrorCode::TooManyEdges, "2^gamma exceeds 2^(alpha+beta)");
  // Floyd's sampling of m distinct cells out of nl*nr.
  std::mt19937_64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  std::vector<std::uint64_t> cells;
  cells.reserve(m);
  for (std::uint64_t j = total - m; j < total; ++j) {
    const std::uint64_t t = uniform_below(rng, j + 1);
    const std::uint64_t pick = chosen.count(t) ? j : t;
    chosen.insert(pick);
    cells.push_back(pick);
  }
  std::vector<BiGraph::Edge> edges;
  edges.reserve(m);
  for (std::uint64_t c : cells)
    edges.emplace_back(static_cast<std::uint32_t>(c / nr), static_cast<std::uint32_t>(c % nr));
  return BiGraph(nl, nr, std::move(edges));
}

bool c4_free_check(const BiGraph& g) {
  for (std::uint32_t i = 0; i < g.left_count(); ++i)
    for (std::uint32_t j = i + 1; j < g.left_count(); ++j)
      if (kernels::and_popcount(g.row(i), g.row(j)) >= 2) return false;
  return true;
}

void write_edge_list(std::ostream& out, const BiGraph& g) {
  out << "# bigraph " << g.left_count() << ' ' << g.right_count() << '\n';
  for (auto [l, r] : g.edges()) out << l << ' ' << r << '\n';
}

BiGraph read_edge_list(std::istream& in) {
  std::optional<std::pair<std::size_t, std::size_t>> declared;
  std::vector<BiGraph::Edge> edges;
  std::size_t max_l = 0, max_r = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    if (!line.empty() && line[0] == '#') {
      std::string hash, tag;
      std::size_t nl, nr;
      if (ss >> hash >> tag >> nl >> nr && tag == "bigraph") declared.emplace(nl, nr);
      continue;
    }
    long long l, r;
    if (!(ss >> l)) continue;  // blank line
    if (!(ss >> r) || l < 0 || r < 0)
      throw Error(ErrorCode::ParseError, "edge list line " + std::to_string(lineno) + ": expected 'left right'");
    edges.emplace_back(static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(r));
    max_l = std::max<std::size_t>(max_l, static_cast<std::size_t>(l) + 1);
    max_r = std::max<std::size_t>(max_r, static_cast<std::size_t>(r) + 1);
  }
  if (declared) return BiGraph(declared->first, declared->second, std::move(edges));
  return BiGraph(max_l, max_r, std::move(edges));
}

}  // namespace skalab
