// skalab: command-line front end for the plane, audit, protocol, cover and
// halving experiments. Exit codes: 0 ok, 2 bad or unsupported input, 3 an
// audit found an invariant violation.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "skalab/cover.hpp"
#include "skalab/error.hpp"
#include "skalab/halving.hpp"
#include "skalab/incidence.hpp"
#include "skalab/plane.hpp"
#include "skalab/report.hpp"
#include "skalab/ska.hpp"

namespace {

using skalab::report::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;

struct Options {
  std::uint64_t q = 3;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  unsigned threads = 1;

  bool list = false;  // plane

  std::size_t a = 0, b = 0;  // audit
  std::string strategy = "greedy-peel";
  std::uint64_t iters = 1000;
  bool baer = false;
  std::vector<double> random;

  std::string mode = "run";  // ska

  double c = 3.0;  // cover
  bool maps = false;

  std::string x_path, y_path;  // halve
  std::string estimator = "compress";
};

class Violation : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw skalab::Error(skalab::ErrorCode::InvalidArgument, "cannot write " + o.out);
  f << text;
}

std::string render(const Options& o, const Json& config, Json body) {
  return skalab::report::dump(skalab::report::envelope(std::move(body), config, o.seed));
}

Json base_config(const std::string& command, const Options& o) {
  return Json{{"command", command}, {"format", o.format}};
}

int cmd_plane(const Options& o) {
  Json config = base_config("plane", o);
  config["q"] = o.q;
  config["list"] = o.list;
  const skalab::Plane plane = skalab::Plane::of_order(o.q);
  if (o.format == "csv") {
    std::string text = skalab::report::csv_line({"flag", "line_id", "point_id"});
    for (std::size_t i = 0; i < plane.flags().size(); ++i)
      text += skalab::report::csv_line({std::to_string(i), std::to_string(plane.flags()[i].line),
                                        std::to_string(plane.flags()[i].point)});
    emit(o, text);
    return kExitOk;
  }
  Json body{{"q", o.q},
            {"field", skalab::report::field_json(plane.spec())},
            {"points", plane.points().size()},
            {"lines", plane.lines().size()},
            {"flags", plane.flags().size()},
            {"degree", o.q + 1}};
  if (o.list) {
    Json flags = Json::array();
    for (const auto& f : plane.flags()) flags.push_back(Json::array({f.line, f.point}));
    body["flag_list"] = std::move(flags);
  }
  emit(o, render(o, config, std::move(body)));
  return kExitOk;
}

int cmd_audit(const Options& o) {
  Json config = base_config("audit", o);
  config["strategy"] = o.strategy;
  config["iters"] = o.iters;

  std::optional<skalab::BiGraph> graph;
  if (!o.random.empty()) {
    if (o.random.size() != 3)
      throw skalab::Error(skalab::ErrorCode::InvalidArgument, "--random takes alpha beta gamma");
    config["random"] = o.random;
    graph = skalab::random_bigraph(o.random[0], o.random[1], o.random[2], o.seed);
  } else {
    config["q"] = o.q;
    graph = skalab::build_plane_graph(o.q);
  }

  std::vector<skalab::SubgraphQuery> queries;
  if (o.baer) {
    config["baer"] = true;
    queries.push_back(skalab::baer_subplane(o.q));
  }
  if (o.a > 0 || o.b > 0) {
    config["a"] = o.a;
    config["b"] = o.b;
    skalab::SearchOptions so;
    so.strategy = skalab::parse_strategy(o.strategy);
    so.seed = o.seed;
    so.iters = o.iters;
    so.threads = o.threads;
    queries.push_back(skalab::dense_subgraph_search(*graph, o.a, o.b, so).query);
  }
  if (queries.empty()) queries.push_back(skalab::SubgraphQuery::full(*graph));

  std::vector<skalab::BoundReport> reports;
  for (const auto& q : queries) reports.push_back(skalab::sdz_report(*graph, q));

  if (o.format == "csv") {
    auto header = skalab::report::bound_csv_header();
    header.insert(header.begin(), {"schema_version", "version", "seed", "config"});
    std::string text = skalab::report::csv_line(header);
    for (const auto& r : reports) {
      auto row = skalab::report::bound_csv_row(r);
      row.insert(row.begin(), {std::to_string(skalab::report::kSchemaVersion),
                               std::string(skalab::report::kVersion), std::to_string(o.seed), config.dump()});
      text += skalab::report::csv_line(row);
    }
    emit(o, text);
    return kExitOk;
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    Json row = skalab::report::bound_json(reports[i]);
    row["left"] = queries[i].left;
    row["right"] = queries[i].right;
    rows.push_back(std::move(row));
  }
  emit(o, render(o, config, Json{{"reports", rows}}));
  return kExitOk;
}

int cmd_ska(const Options& o) {
  Json config = base_config("ska", o);
  config["q"] = o.q;
  config["mode"] = o.mode;
  if (o.mode == "audit") {
    const auto audit = skalab::ska::secrecy_audit(o.q, o.threads);
    emit(o, render(o, config, skalab::report::audit_json(audit)));
    if (!audit.uniform) throw Violation("transcript key distribution is not uniform");
    return kExitOk;
  }
  const skalab::FieldSpec spec = skalab::field_for_order(o.q);
  if (spec.degree != 2)
    throw skalab::Error(skalab::ErrorCode::UnsupportedField, "the protocol needs q = p^2");
  const skalab::Flag flag = skalab::sample_flag(o.q, o.seed);
  const auto session = skalab::ska::run_session(flag);
  emit(o, render(o, config, skalab::report::session_json(session, flag)));
  return kExitOk;
}

int cmd_cover(const Options& o) {
  Json config = base_config("cover", o);
  config["q"] = o.q;
  config["c"] = o.c;
  config["maps"] = o.maps;
  const skalab::Plane plane = skalab::Plane::of_order(o.q);
  const auto fam = skalab::build_cover(plane, o.c, o.seed, o.threads);
  emit(o, render(o, config, skalab::report::cover_json(fam, o.maps)));
  return kExitOk;
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw skalab::Error(skalab::ErrorCode::InvalidArgument, "cannot read " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int cmd_halve(const Options& o) {
  Json config = base_config("halve", o);
  config["x"] = o.x_path;
  config["y"] = o.y_path;
  config["estimator"] = o.estimator;
  const auto x = read_bytes(o.x_path);
  const auto y = read_bytes(o.y_path);
  const auto est = skalab::halving::make_estimator(o.estimator, x, y);
  const auto rep = skalab::halving::halve(x, y, *est, o.threads);
  emit(o, render(o, config, skalab::report::halve_json(rep)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-geometry and key-agreement experiments"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file supplying option defaults");
  app.set_version_flag("--version", std::string(skalab::report::kVersion));

  Options o;
  app.add_option("--q", o.q, "Field order (p or p^2)");
  app.add_option("--seed", o.seed, "Random seed")->envname("SKALAB_SEED");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "Output path (default standard output)");
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  std::string command;
  auto* plane = app.add_subcommand("plane", "Counts and flags of PG(2,q)");
  plane->add_flag("--list", o.list, "Include every flag as [line, point]");

  auto* audit = app.add_subcommand("audit", "Incidence density audit of induced subgraphs");
  audit->add_option("--a", o.a, "Number of lines in the searched subgraph");
  audit->add_option("--b", o.b, "Number of points in the searched subgraph");
  audit->add_option("--strategy", o.strategy, "exhaustive | greedy-peel | local-swap");
  audit->add_option("--iters", o.iters, "Local-search iterations");
  audit->add_flag("--baer", o.baer, "Audit the Baer subplane");
  audit->add_option("--random", o.random, "Audit a random bigraph with log2 sizes alpha beta gamma")
      ->expected(3);

  auto* ska = app.add_subcommand("ska", "Two-round key agreement over PG(2,p^2)");
  ska->add_option("mode", o.mode, "run | audit")->check(CLI::IsMember({"run", "audit"}));

  auto* cover = app.add_subcommand("cover", "Random covering family of Baer subplane images");
  cover->add_option("--c", o.c, "Oversampling constant");
  cover->add_flag("--maps", o.maps, "Include the sampled matrices");

  auto* halve = app.add_subcommand("halve", "Prefix-grid halving walk for two files");
  halve->add_option("--x", o.x_path, "First input file")->required();
  halve->add_option("--y", o.y_path, "Second input file")->required();
  halve->add_option("--estimator", o.estimator, "compress | ramp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*plane) return cmd_plane(o);
    if (*audit) return cmd_audit(o);
    if (*ska) return cmd_ska(o);
    if (*cover) return cmd_cover(o);
    if (*halve) return cmd_halve(o);
  } catch (const Violation& e) {
    std::cerr << "skalab: " << e.what() << '\n';
    return kExitViolation;
  } catch (const skalab::Error& e) {
    std::cerr << "skalab: " << e.what() << '\n';
    return e.code() == skalab::ErrorCode::InvariantViolation ? kExitViolation : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "skalab: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
