#include "infprop/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "infprop/propagation.hpp"
#include "infprop/rng.hpp"

namespace infprop {

using nlohmann::json;

Method parse_method(const std::string& name) {
  if (name == "infprop") return Method::InfProp;
  if (name == "basic") return Method::Basic;
  if (name == "shortpaths") return Method::ShortPaths;
  if (name == "labelprop") return Method::LabelProp;
  throw std::invalid_argument("unknown method '" + name +
                              "' (expected infprop|basic|shortpaths|labelprop)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::InfProp: return "infprop";
    case Method::Basic: return "basic";
    case Method::ShortPaths: return "shortpaths";
    case Method::LabelProp: return "labelprop";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw std::invalid_argument("config: repetitions < 1");
  if (eps.has_value() != delta.has_value())
    throw std::invalid_argument("config: eps and delta must be given together");
  if (!eps && N < 1) throw std::invalid_argument("config: N < 1");
  if ((k_fraction > 0.0) == (k_abs > 0))
    throw std::invalid_argument("config: exactly one of k_fraction and k must be set");
  if (k_fraction < 0.0 || k_fraction > 1.0)
    throw std::invalid_argument("config: k_fraction outside [0,1]");
  if (!keep_file_params && !(p_global >= 0.0 && p_global <= 1.0))
    throw std::invalid_argument("config: p outside [0,1]");
  if (model != "ic" && model != "ctic")
    throw std::invalid_argument("config: model must be ic or ctic");
}

namespace {

Metrics metric_mean(const std::vector<Repetition>& reps) {
  Metrics m;
  for (const auto& r : reps) {
    m.accuracy += r.metrics.accuracy;
    m.mse += r.metrics.mse;
    m.auc += r.metrics.auc;
    m.top1 += r.metrics.top1;
  }
  double c = double(reps.size());
  m.accuracy /= c;
  m.mse /= c;
  m.auc /= c;
  m.top1 /= c;
  return m;
}

// Sample standard deviation; zero for a single repetition.
Metrics metric_std(const std::vector<Repetition>& reps, const Metrics& mean) {
  Metrics m;
  if (reps.size() < 2) return m;
  for (const auto& r : reps) {
    auto sq = [](double d) { return d * d; };
    m.accuracy += sq(r.metrics.accuracy - mean.accuracy);
    m.mse += sq(r.metrics.mse - mean.mse);
    m.auc += sq(r.metrics.auc - mean.auc);
    m.top1 += sq(r.metrics.top1 - mean.top1);
  }
  double c = double(reps.size() - 1);
  m.accuracy = std::sqrt(m.accuracy / c);
  m.mse = std::sqrt(m.mse / c);
  m.auc = std::sqrt(m.auc / c);
  m.top1 = std::sqrt(m.top1 / c);
  return m;
}

json metrics_json(const Metrics& m) {
  return json{{"accuracy", m.accuracy}, {"mse", m.mse}, {"auc", m.auc}, {"top1", m.top1}};
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, const DirectedGraph& g,
                                const std::vector<Label>& truth, const PriorMatrix* priors) {
  config.validate();
  if (int(truth.size()) != g.n)
    throw std::invalid_argument("run_experiment: truth must label every node");
  int L = 0;
  for (Label l : truth) {
    if (l < 1) throw std::invalid_argument("run_experiment: unlabeled node in truth");
    L = std::max(L, int(l));
  }
  if (priors && config.method != Method::InfProp)
    throw std::invalid_argument("run_experiment: priors require method infprop");

  int k = config.k_fraction > 0.0
              ? std::max(1, int(std::llround(config.k_fraction * g.n)))
              : config.k_abs;
  if (k >= g.n)
    throw std::invalid_argument("run_experiment: k >= n leaves nothing to evaluate");

  DirectedGraph gp;
  const DirectedGraph* graph = &g;
  if (config.keep_file_params) {
    if (!g.params_set)
      throw std::invalid_argument("run_experiment: keep_file_params but graph has none");
  } else {
    gp = default_params(g, config.p_global);
    graph = &gp;
  }

  ExperimentReport report;
  report.config = config;
  report.n_used = config.eps ? required_samples(*config.eps, *config.delta, g.n, L)
                             : config.N;

  DelayModel model =
      config.model == "ctic" ? DelayModel::ctic(config.theta_is_scale) : DelayModel::ic_unit();
  if (config.model != "ic" && config.model != "ctic")
    throw std::invalid_argument("run_experiment: model must be ic or ctic");

  std::optional<PenaltySource> penalties;
  if (priors) penalties.emplace(*priors);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<NodeId> order(g.n);
  for (int r = 1; r <= config.repetitions; ++r) {
    Rng rep_rng = derive_stream(config.master_seed, uint64_t(r));
    for (NodeId v = 0; v < g.n; ++v) order[v] = v;
    Repetition rep;
    for (int i = 0; i < k; ++i) {
      int j = i + int(rep_rng.next_below(uint64_t(g.n - i)));
      std::swap(order[i], order[j]);
      rep.seed_nodes.push_back(order[i]);
    }
    std::sort(rep.seed_nodes.begin(), rep.seed_nodes.end());
    uint64_t method_seed = rep_rng.next_u64();

    std::vector<SeedSet::Entry> entries;
    for (NodeId s : rep.seed_nodes) entries.push_back({s, truth[s]});
    SeedSet seeds(entries, L);

    PredictionMatrix pred;
    switch (config.method) {
      case Method::InfProp:
        pred = infprop(*graph, seeds, model, penalties ? &*penalties : nullptr,
                       report.n_used, method_seed, config.workers);
        break;
      case Method::Basic:
        pred = basic_infprop(*graph, seeds, model, report.n_used, method_seed,
                             config.workers);
        break;
      case Method::ShortPaths:
        pred = shortpaths(*graph, seeds);
        break;
      case Method::LabelProp: {
        LabelPropResult lp = labelprop(*graph, seeds, config.lp);
        report.labelprop_converged = report.labelprop_converged && lp.converged;
        pred = std::move(lp.pred);
        break;
      }
    }

    std::vector<NodeId> eval_nodes;
    std::vector<uint8_t> is_seed(g.n, 0);
    for (NodeId s : rep.seed_nodes) is_seed[s] = 1;
    for (NodeId v = 0; v < g.n; ++v)
      if (!is_seed[v]) eval_nodes.push_back(v);
    rep.metrics = compute_metrics(pred, truth, eval_nodes);
    report.repetitions.push_back(std::move(rep));
  }
  auto t1 = std::chrono::steady_clock::now();
  report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  report.mean = metric_mean(report.repetitions);
  report.stddev = metric_std(report.repetitions, report.mean);
  return report;
}

std::string report_to_json(const ExperimentReport& report) {
  const ExperimentConfig& c = report.config;
  json cfg{{"method", method_name(c.method)},
           {"repetitions", c.repetitions},
           {"n_instances", report.n_used},
           {"p", c.p_global},
           {"keep_file_params", c.keep_file_params},
           {"model", c.model},
           {"master_seed", c.master_seed},
           {"workers", c.workers}};
  if (c.k_fraction > 0.0)
    cfg["k_fraction"] = c.k_fraction;
  else
    cfg["k"] = c.k_abs;
  if (c.eps) {
    cfg["eps"] = *c.eps;
    cfg["delta"] = *c.delta;
  }
  if (c.method == Method::LabelProp) {
    cfg["lp_tolerance"] = c.lp.tolerance;
    cfg["lp_max_iterations"] = c.lp.max_iterations;
    cfg["lp_symmetrize"] = c.lp.symmetrize;
  }

  json reps = json::array();
  for (const auto& r : report.repetitions) {
    json jr{{"seeds", r.seed_nodes}, {"metrics", metrics_json(r.metrics)}};
    reps.push_back(jr);
  }

  json out{{"config", cfg},
           {"repetitions", reps},
           {"mean", metrics_json(report.mean)},
           {"std", metrics_json(report.stddev)}};
  if (report.config.method == Method::LabelProp)
    out["labelprop_converged"] = report.labelprop_converged;
  if (!report.config.omit_timing) out["elapsed_ms"] = report.elapsed_ms;
  return out.dump(2) + "\n";
}

void write_curves_tsv(const std::string& path, const ExperimentReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "rep\taccuracy\tmse\tauc\ttop1\n";
  for (size_t r = 0; r < report.repetitions.size(); ++r) {
    const Metrics& m = report.repetitions[r].metrics;
    out << (r + 1) << '\t' << m.accuracy << '\t' << m.mse << '\t' << m.auc << '\t'
        << m.top1 << '\n';
  }
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;

  ExperimentConfig c;
  c.method = parse_method(j.at("method").get<std::string>());
  if (j.contains("k_fraction")) c.k_fraction = j["k_fraction"].get<double>();
  if (j.contains("k")) c.k_abs = j["k"].get<int>();
  if (j.contains("repetitions")) c.repetitions = j["repetitions"].get<int>();
  if (j.contains("eps") || j.contains("delta")) {
    if (j.contains("n_instances"))
      throw std::invalid_argument(path + ": give either n_instances or eps/delta");
    c.eps = j.at("eps").get<double>();
    c.delta = j.at("delta").get<double>();
  } else if (j.contains("n_instances")) {
    c.N = j["n_instances"].get<int64_t>();
  }
  if (j.contains("p")) c.p_global = j["p"].get<double>();
  if (j.contains("p_global")) c.p_global = j["p_global"].get<double>();
  if (j.contains("keep_file_params")) c.keep_file_params = j["keep_file_params"].get<bool>();
  if (j.contains("model")) c.model = j["model"].get<std::string>();
  if (j.contains("theta_is_scale")) c.theta_is_scale = j["theta_is_scale"].get<bool>();
  if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<uint64_t>();
  if (j.contains("omit_timing")) c.omit_timing = j["omit_timing"].get<bool>();
  if (j.contains("workers")) c.workers = j["workers"].get<int>();
  if (j.contains("lp_tolerance")) c.lp.tolerance = j["lp_tolerance"].get<double>();
  if (j.contains("lp_max_iterations")) c.lp.max_iterations = j["lp_max_iterations"].get<int>();
  if (j.contains("lp_symmetrize")) c.lp.symmetrize = j["lp_symmetrize"].get<bool>();
  c.validate();
  return c;
}

}  // namespace infprop
