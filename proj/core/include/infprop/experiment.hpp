#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "infprop/baselines.hpp"
#include "infprop/dynamics.hpp"
#include "infprop/graph.hpp"
#include "infprop/metrics.hpp"
#include "infprop/types.hpp"

namespace infprop {

enum class Method { InfProp, Basic, ShortPaths, LabelProp };

Method parse_method(const std::string& name);
std::string method_name(Method m);

// Evaluation protocol: R repetitions, each sampling k seeds uniformly at
// random, running the chosen method, and scoring the remaining nodes.
// Exactly one of N and (eps, delta) drives the sample count.
struct ExperimentConfig {
  Method method = Method::InfProp;
  double k_fraction = 0.0;  // used when > 0; else k_abs
  int k_abs = 0;
  int repetitions = 10;
  int64_t N = 1000;
  std::optional<double> eps;    // with delta, overrides N via the sample bound
  std::optional<double> delta;
  double p_global = 1.0;            // applied via default_params
  bool keep_file_params = false;    // use p/theta already on the graph
  std::string model = "ic";         // ic | ctic
  bool theta_is_scale = false;      // ctic: theta as scale instead of rate
  uint64_t master_seed = 1;
  bool omit_timing = false;  // timing excluded so reports are byte-stable
  int workers = 0;
  LabelPropConfig lp;

  void validate() const;
};

struct Repetition {
  std::vector<NodeId> seed_nodes;
  Metrics metrics;
};

struct ExperimentReport {
  ExperimentConfig config;
  int64_t n_used = 0;  // resolved Monte-Carlo sample count
  std::vector<Repetition> repetitions;
  Metrics mean;
  Metrics stddev;
  double elapsed_ms = 0.0;
  bool labelprop_converged = true;
};

// Runs the protocol. truth must label every node (labels 1..L); priors may be
// null and are only valid for Method::InfProp.
ExperimentReport run_experiment(const ExperimentConfig& config, const DirectedGraph& g,
                                const std::vector<Label>& truth,
                                const PriorMatrix* priors = nullptr);

// JSON report; byte-identical for identical config and master seed when
// omit_timing is set.
std::string report_to_json(const ExperimentReport& report);

// Per-repetition metric rows as TSV: rep, accuracy, mse, auc, top1.
void write_curves_tsv(const std::string& path, const ExperimentReport& report);

// Parses an ExperimentConfig from a JSON file.
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace infprop
