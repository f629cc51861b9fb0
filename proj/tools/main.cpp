// Command-line surface: predict, evaluate, active, oracle-check, synth.
// All subcommands honor --master-seed and exit 0 on success, 2 on any
// validation or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "infprop/active.hpp"
#include "infprop/baselines.hpp"
#include "infprop/dynamics.hpp"
#include "infprop/experiment.hpp"
#include "infprop/io.hpp"
#include "infprop/oracle.hpp"
#include "infprop/propagation.hpp"
#include "infprop/synth.hpp"

using namespace infprop;

namespace {

struct CommonGraphArgs {
  std::string graph_path;
  bool undirected = false;
};

DelayModel make_model(const std::string& model, bool theta_is_scale) {
  if (model == "ic") return DelayModel::ic_unit();
  if (model == "ctic") return DelayModel::ctic(theta_is_scale);
  throw std::invalid_argument("model must be ic or ctic");
}

// Graph with parameters resolved: file columns when present and requested,
// default_params(p) otherwise.
DirectedGraph with_params(const GraphFile& gf, double p, bool keep_file_params) {
  if (keep_file_params) {
    if (!gf.had_params)
      throw std::invalid_argument("--keep-file-params: graph file has no p/theta columns");
    return gf.g;
  }
  return default_params(gf.g, p);
}

int run_predict(const std::string& graph_path, bool undirected,
                const std::string& labels_path, const std::string& seed_path,
                const std::string& priors_path, const std::string& method_name,
                const std::string& model_name, bool theta_is_scale, int64_t n_instances,
                double p, bool keep_file_params, std::optional<double> eps,
                std::optional<double> delta, uint64_t master_seed, int workers,
                const std::string& out_path) {
  GraphFile gf = read_edge_tsv(graph_path, undirected);
  IdMap label_names;

  std::vector<SeedSet::Entry> truth_entries;
  if (!labels_path.empty())
    truth_entries = read_label_tsv(labels_path, gf.ids, label_names);

  SeedFile sf = read_seed_tsv(seed_path, gf.ids, label_names);
  std::vector<SeedSet::Entry> seed_entries;
  if (sf.has_labels) {
    seed_entries = sf.entries;
  } else {
    if (labels_path.empty())
      throw std::invalid_argument("seed file has no labels; provide --labels");
    std::vector<Label> truth(gf.g.n, 0);
    for (const auto& e : truth_entries) truth[e.node] = e.label;
    for (NodeId v : sf.nodes) {
      if (truth[v] == 0)
        throw std::invalid_argument("seed node " + gf.ids.names[v] +
                                    " missing from --labels");
      seed_entries.push_back({v, truth[v]});
    }
  }
  if (label_names.size() == 0)
    throw std::invalid_argument("no labels found in inputs");
  SeedSet seeds(seed_entries, int(label_names.size()));
  seeds.validate(gf.g.n);

  Method method = parse_method(method_name);
  std::optional<PenaltySource> penalties;
  if (!priors_path.empty()) {
    if (method != Method::InfProp)
      throw std::invalid_argument("--priors requires --method infprop");
    penalties.emplace(read_prior_tsv(priors_path, gf.ids, label_names, gf.g.n));
  }

  int64_t N = n_instances;
  if (eps.has_value() != delta.has_value())
    throw std::invalid_argument("--eps and --delta must be given together");
  if (eps) N = required_samples(*eps, *delta, gf.g.n, int(label_names.size()));

  PredictionMatrix pred;
  switch (method) {
    case Method::InfProp: {
      DirectedGraph g = with_params(gf, p, keep_file_params);
      pred = infprop::infprop(g, seeds, make_model(model_name, theta_is_scale),
                              penalties ? &*penalties : nullptr, N, master_seed, workers);
      break;
    }
    case Method::Basic: {
      DirectedGraph g = with_params(gf, p, keep_file_params);
      pred = basic_infprop(g, seeds, make_model(model_name, theta_is_scale), N,
                           master_seed, workers);
      break;
    }
    case Method::ShortPaths:
      pred = shortpaths(gf.g, seeds);
      break;
    case Method::LabelProp: {
      LabelPropResult lp = labelprop(gf.g, seeds);
      if (!lp.converged)
        std::cerr << "warning: labelprop hit the iteration cap before converging\n";
      pred = std::move(lp.pred);
      break;
    }
  }
  pred.validate(&seeds);

  write_prediction_csv(out_path, pred, gf.ids);
  write_id_map(out_path + ".ids.tsv", gf.ids);
  write_id_map(out_path + ".labels.tsv", label_names, true);
  std::cerr << "wrote " << out_path << " (" << pred.n << " nodes, "
            << label_names.size() << " labels, N=" << pred.mc_instances << ")\n";
  return 0;
}

int run_evaluate(const std::string& config_path, std::string graph_path,
                 std::string labels_path, std::string priors_path, bool undirected,
                 const std::string& out_path, const std::string& curves_path) {
  // Data paths may live in the config file; command-line flags override.
  {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open " + config_path);
    nlohmann::json j;
    in >> j;
    if (graph_path.empty() && j.contains("graph")) graph_path = j["graph"].get<std::string>();
    if (labels_path.empty() && j.contains("labels"))
      labels_path = j["labels"].get<std::string>();
    if (priors_path.empty() && j.contains("priors"))
      priors_path = j["priors"].get<std::string>();
    if (j.contains("undirected")) undirected = j["undirected"].get<bool>();
  }
  if (graph_path.empty() || labels_path.empty())
    throw std::invalid_argument("evaluate: graph and labels paths required");

  ExperimentConfig config = load_experiment_config(config_path);
  GraphFile gf = read_edge_tsv(graph_path, undirected);
  IdMap label_names;
  auto entries = read_label_tsv(labels_path, gf.ids, label_names);
  std::vector<Label> truth(gf.g.n, 0);
  for (const auto& e : entries) truth[e.node] = e.label;

  std::optional<PriorMatrix> priors;
  if (!priors_path.empty())
    priors = read_prior_tsv(priors_path, gf.ids, label_names, gf.g.n);

  const DirectedGraph* g = &gf.g;
  if (config.keep_file_params && !gf.had_params)
    throw std::invalid_argument("config: keep_file_params but graph has no p/theta columns");

  ExperimentReport report = run_experiment(config, *g, truth, priors ? &*priors : nullptr);
  std::string json_text = report_to_json(report);
  if (out_path.empty()) {
    std::cout << json_text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << json_text;
  }
  if (!curves_path.empty()) write_curves_tsv(curves_path, report);
  return 0;
}

int run_active(const std::string& graph_path, bool undirected, int k, int64_t n_samples,
               const std::string& method, const std::string& model_name,
               bool theta_is_scale, double p, bool keep_file_params, int candidates,
               uint64_t master_seed, const std::string& out_path) {
  GraphFile gf = read_edge_tsv(graph_path, undirected);
  SelectionResult sel;
  if (method == "greedy") {
    DirectedGraph g = with_params(gf, p, keep_file_params);
    sel = greedy_select(g, make_model(model_name, theta_is_scale), k, n_samples,
                        master_seed, candidates);
  } else if (method == "hideg") {
    sel = hideg_select(gf.g, k);
  } else if (method == "random") {
    Rng rng = derive_stream(master_seed, 0);
    sel = random_select(gf.g, k, rng);
  } else {
    throw std::invalid_argument("active method must be greedy|hideg|random");
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot write " + out_path);
    out = &file;
  }
  *out << "rank\tnode\tgain\tsamples\n";
  for (size_t i = 0; i < sel.chosen.size(); ++i)
    *out << (i + 1) << '\t' << gf.ids.names[sel.chosen[i]] << '\t' << sel.marginal_gains[i]
         << '\t' << sel.estimates[i] << '\n';
  return 0;
}

void print_matrix_csv(std::ostream& out, const std::string& name, const double* data,
                      int rows, int cols, const IdMap& ids) {
  out << "# " << name << "\n";
  for (int r = 0; r < rows; ++r) {
    out << ids.names[r];
    for (int c = 0; c < cols; ++c) {
      char buf[32];
      snprintf(buf, sizeof buf, "%.17g", data[size_t(r) * cols + c]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

int run_oracle_check(const std::string& graph_path, bool undirected,
                     const std::string& labels_path, double p, bool keep_file_params,
                     const std::string& out_prefix) {
  GraphFile gf = read_edge_tsv(graph_path, undirected);
  IdMap label_names;
  auto entries = read_label_tsv(labels_path, gf.ids, label_names);
  SeedSet seeds(entries, int(label_names.size()));
  DirectedGraph g = with_params(gf, p, keep_file_params);

  ExactSolution sol = exact_infector_and_bias(g, seeds);
  double residual = laplacian_residual(sol.f, sol.tbar, sol.b);
  double objective = quadratic_objective(sol.f, sol.tbar, sol.b);

  auto dump = [&](std::ostream& out) {
    print_matrix_csv(out, "f", sol.f.p.data(), g.n, seeds.num_labels + 1, gf.ids);
    print_matrix_csv(out, "tbar", sol.tbar.data(), g.n, g.n, gf.ids);
    print_matrix_csv(out, "b", sol.b.data(), g.n, seeds.num_labels + 1, gf.ids);
  };
  if (out_prefix.empty()) {
    dump(std::cout);
  } else {
    std::ofstream out(out_prefix + ".oracle.csv");
    if (!out) throw std::runtime_error("cannot write " + out_prefix + ".oracle.csv");
    dump(out);
  }
  printf("residual,%.17g\n", residual);
  printf("objective,%.17g\n", objective);
  return 0;
}

int run_synth(int communities, int size, int overlap, double noise, double intra,
              uint64_t master_seed, const std::string& out_prefix) {
  SynthParams params{communities, size, overlap, noise, intra};
  Rng rng = derive_stream(master_seed, 0);
  SynthResult res = synth_community(params, rng);

  IdMap ids;
  for (int v = 0; v < res.graph.n; ++v) ids.intern(std::to_string(v));
  write_edge_tsv(out_prefix + ".edges.tsv", res.graph, ids);
  std::ofstream out(out_prefix + ".labels.tsv");
  if (!out) throw std::runtime_error("cannot write " + out_prefix + ".labels.tsv");
  for (int v = 0; v < res.graph.n; ++v)
    out << v << '\t' << res.labels[v] << '\n';
  std::cerr << "wrote " << out_prefix << ".edges.tsv (" << res.graph.n << " nodes, "
            << res.graph.m << " arcs) and " << out_prefix << ".labels.tsv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competitive-infection label propagation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  uint64_t master_seed = 1;
  app.add_option("--master-seed", master_seed, "Seed for all randomized operations");

  // predict
  auto* predict = app.add_subcommand("predict", "Predict labels from a seed set");
  std::string graph_path, labels_path, seed_path, priors_path, out_path;
  std::string method = "infprop", model = "ic";
  bool undirected = false, keep_file_params = false, theta_is_scale = false;
  int64_t n_instances = 1000;
  double p = 1.0;
  int workers = 0;
  std::optional<double> eps, delta;
  predict->add_option("--graph", graph_path, "Edge TSV")->required();
  predict->add_option("--labels", labels_path, "Node label TSV (truth for seed lookup)");
  predict->add_option("--seed-file", seed_path, "Seed nodes (1 or 2 columns)")->required();
  predict->add_option("--priors", priors_path, "Prior TSV node<TAB>label<TAB>rho");
  predict->add_option("--method", method, "infprop|basic|shortpaths|labelprop");
  predict->add_option("--model", model, "ic|ctic");
  predict->add_flag("--theta-as-scale", theta_is_scale, "Treat theta as exponential scale");
  predict->add_option("--n", n_instances, "Monte-Carlo instances");
  predict->add_option("--eps", eps, "Accuracy target (with --delta, overrides --n)");
  predict->add_option("--delta", delta, "Failure probability for --eps");
  predict->add_option("--p", p, "Global activation probability");
  predict->add_flag("--keep-file-params", keep_file_params, "Use p/theta file columns");
  predict->add_flag("--undirected", undirected, "Expand edges to both directions");
  predict->add_option("--workers", workers, "Worker threads (0: INFPROP_WORKERS or cores)");
  predict->add_option("--out", out_path, "Output CSV path")->required();

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Run the repeated-seeding protocol");
  std::string config_path, curves_path, eval_out;
  std::string eval_graph, eval_labels, eval_priors;
  bool eval_undirected = false;
  evaluate->add_option("--config", config_path, "JSON experiment config")->required();
  evaluate->add_option("--graph", eval_graph, "Edge TSV (overrides config)");
  evaluate->add_option("--labels", eval_labels, "Truth labels TSV (overrides config)");
  evaluate->add_option("--priors", eval_priors, "Prior TSV (overrides config)");
  evaluate->add_flag("--undirected", eval_undirected, "Expand edges to both directions");
  evaluate->add_option("--out", eval_out, "Report JSON path (default stdout)");
  evaluate->add_option("--curves", curves_path, "Per-repetition metrics TSV");

  // active
  auto* active = app.add_subcommand("active", "Select seeds by influence");
  std::string active_graph, active_method = "greedy", active_model = "ic", active_out;
  bool active_undirected = false, active_keep = false, active_scale = false;
  int active_k = 1, candidates = 0;
  int64_t active_n = 1000;
  double active_p = 1.0;
  active->add_option("--graph", active_graph, "Edge TSV")->required();
  active->add_option("--k", active_k, "Number of seeds")->required();
  active->add_option("--n", active_n, "Monte-Carlo instances per estimate");
  active->add_option("--method", active_method, "greedy|hideg|random");
  active->add_option("--model", active_model, "ic|ctic");
  active->add_flag("--theta-as-scale", active_scale, "Treat theta as exponential scale");
  active->add_option("--p", active_p, "Global activation probability");
  active->add_flag("--keep-file-params", active_keep, "Use p/theta file columns");
  active->add_option("--candidates", candidates, "Restrict pool to top-degree count");
  active->add_flag("--undirected", active_undirected, "Expand edges to both directions");
  active->add_option("--out", active_out, "Output TSV (default stdout)");

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check", "Exact enumeration diagnostics");
  std::string oracle_graph, oracle_labels, oracle_prefix;
  bool oracle_undirected = false, oracle_keep = false;
  double oracle_p = 1.0;
  oracle->add_option("--graph", oracle_graph, "Edge TSV (at most 20 edges)")->required();
  oracle->add_option("--labels", oracle_labels, "Seed labels TSV")->required();
  oracle->add_option("--p", oracle_p, "Global activation probability");
  oracle->add_flag("--keep-file-params", oracle_keep, "Use p/theta file columns");
  oracle->add_flag("--undirected", oracle_undirected, "Expand edges to both directions");
  oracle->add_option("--out-prefix", oracle_prefix, "Write matrices to <prefix>.oracle.csv");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a planted-community graph");
  int communities = 3, size = 64, overlap = 8;
  double noise = 0.05, intra = 0.3;
  std::string synth_prefix;
  synth->add_option("--communities", communities, "Community count");
  synth->add_option("--size", size, "Nodes per community");
  synth->add_option("--overlap", overlap, "Overlap nodes per community");
  synth->add_option("--noise", noise, "Unrelated-pair edge probability");
  synth->add_option("--intra", intra, "Shared-community edge probability");
  synth->add_option("--out-prefix", synth_prefix, "Output prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*predict)
      return run_predict(graph_path, undirected, labels_path, seed_path, priors_path,
                         method, model, theta_is_scale, n_instances, p, keep_file_params,
                         eps, delta, master_seed, workers, out_path);
    if (*evaluate)
      return run_evaluate(config_path, eval_graph, eval_labels, eval_priors,
                          eval_undirected, eval_out, curves_path);
    if (*active)
      return run_active(active_graph, active_undirected, active_k, active_n, active_method,
                        active_model, active_scale, active_p, active_keep, candidates,
                        master_seed, active_out);
    if (*oracle)
      return run_oracle_check(oracle_graph, oracle_undirected, oracle_labels, oracle_p,
                              oracle_keep, oracle_prefix);
    if (*synth)
      return run_synth(communities, size, overlap, noise, intra, master_seed, synth_prefix);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
