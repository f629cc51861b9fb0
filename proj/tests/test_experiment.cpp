#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>

#include "infprop/experiment.hpp"
#include "infprop/propagation.hpp"
#include "infprop/synth.hpp"

using namespace infprop;

namespace {

struct Scenario {
  DirectedGraph g;
  std::vector<Label> truth;
};

Scenario small_scenario() {
  SynthParams params;
  params.communities = 2;
  params.size = 12;
  params.overlap = 2;
  params.noise = 0.05;
  params.intra = 0.5;
  Rng rng(90);
  SynthResult res = synth_community(params, rng);
  return {res.graph, res.labels};
}

std::string write_temp_json(const std::string& text) {
  std::string path = "/tmp/infprop_test_cfg_" + std::to_string(rand()) + ".json";
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("experiment: method names round-trip") {
  for (const char* name : {"infprop", "basic", "shortpaths", "labelprop"}) {
    CHECK(method_name(parse_method(name)) == name);
  }
  CHECK_THROWS(parse_method("nope"));
}

TEST_CASE("experiment: config validation") {
  ExperimentConfig c;
  c.k_abs = 2;
  CHECK_NOTHROW(c.validate());

  c.k_abs = 0;
  CHECK_THROWS(c.validate());  // neither k_fraction nor k_abs

  c.k_fraction = 0.1;
  c.k_abs = 2;
  CHECK_THROWS(c.validate());  // both

  c = ExperimentConfig{};
  c.k_abs = 2;
  c.eps = 0.1;  // eps without delta
  CHECK_THROWS(c.validate());
  c.delta = 0.05;
  CHECK_NOTHROW(c.validate());

  c = ExperimentConfig{};
  c.k_abs = 2;
  c.p_global = 1.5;
  CHECK_THROWS(c.validate());

  c = ExperimentConfig{};
  c.k_abs = 2;
  c.repetitions = 0;
  CHECK_THROWS(c.validate());

  c = ExperimentConfig{};
  c.k_abs = 2;
  c.model = "lt";
  CHECK_THROWS(c.validate());
}

TEST_CASE("experiment: deterministic report for a fixed master seed") {
  Scenario sc = small_scenario();
  ExperimentConfig c;
  c.method = Method::ShortPaths;
  c.k_abs = 2;
  c.repetitions = 3;
  c.master_seed = 11;
  c.omit_timing = true;

  ExperimentReport r1 = run_experiment(c, sc.g, sc.truth);
  ExperimentReport r2 = run_experiment(c, sc.g, sc.truth);
  CHECK(report_to_json(r1) == report_to_json(r2));

  c.master_seed = 12;
  ExperimentReport r3 = run_experiment(c, sc.g, sc.truth);
  CHECK(report_to_json(r1) != report_to_json(r3));
}

TEST_CASE("experiment: repetitions draw fresh seed sets of the configured size") {
  Scenario sc = small_scenario();
  ExperimentConfig c;
  c.method = Method::ShortPaths;
  c.k_fraction = 0.25;  // 24 nodes -> k = 6
  c.repetitions = 4;
  c.master_seed = 13;
  c.omit_timing = true;

  ExperimentReport report = run_experiment(c, sc.g, sc.truth);
  REQUIRE(report.repetitions.size() == 4);
  std::set<std::vector<NodeId>> distinct;
  for (const auto& rep : report.repetitions) {
    CHECK(rep.seed_nodes.size() == 6);
    std::set<NodeId> uniq(rep.seed_nodes.begin(), rep.seed_nodes.end());
    CHECK(uniq.size() == 6);
    distinct.insert(rep.seed_nodes);
    CHECK(rep.metrics.accuracy >= 0.0);
    CHECK(rep.metrics.accuracy <= 1.0);
  }
  CHECK(distinct.size() > 1);
}

TEST_CASE("experiment: sample bound overrides the instance count") {
  Scenario sc = small_scenario();
  ExperimentConfig c;
  c.method = Method::Basic;
  c.k_abs = 2;
  c.repetitions = 1;
  c.N = 7;
  c.eps = 1.0;
  c.delta = 0.05;
  c.p_global = 0.5;
  c.omit_timing = true;

  ExperimentReport report = run_experiment(c, sc.g, sc.truth);
  CHECK(report.n_used == required_samples(1.0, 0.05, sc.g.n, 2));

  c.eps.reset();
  c.delta.reset();
  report = run_experiment(c, sc.g, sc.truth);
  CHECK(report.n_used == 7);
}

TEST_CASE("experiment: labelprop path reports convergence in the JSON") {
  Scenario sc = small_scenario();
  ExperimentConfig c;
  c.method = Method::LabelProp;
  c.k_abs = 3;
  c.repetitions = 2;
  c.omit_timing = true;

  ExperimentReport report = run_experiment(c, sc.g, sc.truth);
  std::string json = report_to_json(report);
  CHECK(json.find("labelprop_converged") != std::string::npos);

  c.method = Method::ShortPaths;
  report = run_experiment(c, sc.g, sc.truth);
  CHECK(report_to_json(report).find("labelprop_converged") == std::string::npos);
}

TEST_CASE("experiment: rejects k at or above the node count and short truth") {
  Scenario sc = small_scenario();
  ExperimentConfig c;
  c.method = Method::ShortPaths;
  c.k_abs = sc.g.n;
  c.repetitions = 1;
  CHECK_THROWS(run_experiment(c, sc.g, sc.truth));

  c.k_abs = 2;
  std::vector<Label> short_truth(sc.g.n - 1, 1);
  CHECK_THROWS(run_experiment(c, sc.g, short_truth));
}

TEST_CASE("experiment: config file loading, overrides, and exclusivity") {
  std::string path = write_temp_json(R"({
    "method": "labelprop",
    "k_fraction": 0.1,
    "repetitions": 5,
    "n_instances": 250,
    "p": 0.4,
    "master_seed": 99,
    "omit_timing": true,
    "lp_max_iterations": 77
  })");
  ExperimentConfig c = load_experiment_config(path);
  std::remove(path.c_str());
  CHECK(c.method == Method::LabelProp);
  CHECK(c.k_fraction == 0.1);
  CHECK(c.repetitions == 5);
  CHECK(c.N == 250);
  CHECK(c.p_global == 0.4);
  CHECK(c.master_seed == 99);
  CHECK(c.omit_timing);
  CHECK(c.lp.max_iterations == 77);

  std::string both = write_temp_json(
      R"({"method": "infprop", "k": 2, "n_instances": 10, "eps": 0.1, "delta": 0.05})");
  CHECK_THROWS(load_experiment_config(both));
  std::remove(both.c_str());

  std::string missing = write_temp_json(R"({"k": 2})");
  CHECK_THROWS(load_experiment_config(missing));
  std::remove(missing.c_str());
}

TEST_CASE("experiment: curves file has one row per repetition") {
  Scenario sc = small_scenario();
  ExperimentConfig c;
  c.method = Method::ShortPaths;
  c.k_abs = 2;
  c.repetitions = 3;
  c.omit_timing = true;
  ExperimentReport report = run_experiment(c, sc.g, sc.truth);

  std::string path = "/tmp/infprop_test_curves_" + std::to_string(rand()) + ".tsv";
  write_curves_tsv(path, report);
  std::ifstream in(path);
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  std::remove(path.c_str());
  CHECK(lines == 4);  // header + 3 repetitions
}
