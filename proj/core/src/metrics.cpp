#include "infprop/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace infprop {

namespace {

// Argmax over labels 1..L with smallest-label ties; rows without mass get 1.
Label quiet_argmax(const double* row, int num_labels) {
  Label best = 1;
  double best_mass = -1.0;
  for (Label l = 1; l <= num_labels; ++l) {
    if (row[l] > best_mass) {
      best_mass = row[l];
      best = l;
    }
  }
  return best;
}

}  // namespace

double rank_auc(const std::vector<double>& scores, const std::vector<uint8_t>& positive) {
  size_t n = scores.size();
  size_t pos = 0;
  for (uint8_t b : positive) pos += b;
  size_t neg = n - pos;
  if (pos == 0 || neg == 0) return std::numeric_limits<double>::quiet_NaN();

  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return scores[a] < scores[b]; });

  // Midranks for tied scores, then the Mann-Whitney identity.
  double rank_sum_pos = 0.0;
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
    double midrank = 0.5 * double(i + 1 + j);  // average of ranks i+1..j
    for (size_t t = i; t < j; ++t)
      if (positive[idx[t]]) rank_sum_pos += midrank;
    i = j;
  }
  return (rank_sum_pos - 0.5 * double(pos) * double(pos + 1)) / (double(pos) * double(neg));
}

Metrics compute_metrics(const PredictionMatrix& pred, const std::vector<Label>& true_labels,
                        const std::vector<NodeId>& eval_nodes) {
  if (eval_nodes.empty()) throw std::invalid_argument("metrics: empty evaluation set");
  if (int(true_labels.size()) != pred.n)
    throw std::invalid_argument("metrics: truth size mismatch");
  const int L = pred.num_labels;

  Metrics m;
  int correct = 0;
  double sq = 0.0;
  for (NodeId v : eval_nodes) {
    if (true_labels[v] < 1 || true_labels[v] > L)
      throw std::invalid_argument("metrics: true label out of range at node " +
                                  std::to_string(v));
    Label hat = quiet_argmax(pred.row(v), L);
    if (hat == true_labels[v]) ++correct;
    for (Label l = 1; l <= L; ++l) {
      double target = (l == true_labels[v]) ? 1.0 : 0.0;
      double d = pred.at(v, l) - target;
      sq += d * d;
    }
  }
  m.accuracy = double(correct) / double(eval_nodes.size());
  m.mse = sq / double(eval_nodes.size());
  m.top1 = m.accuracy;  // single-label truth

  double auc_sum = 0.0;
  int auc_terms = 0;
  std::vector<double> scores(eval_nodes.size());
  std::vector<uint8_t> positive(eval_nodes.size());
  for (Label l = 1; l <= L; ++l) {
    for (size_t i = 0; i < eval_nodes.size(); ++i) {
      scores[i] = pred.at(eval_nodes[i], l);
      positive[i] = true_labels[eval_nodes[i]] == l ? 1 : 0;
    }
    double a = rank_auc(scores, positive);
    if (!std::isnan(a)) {
      auc_sum += a;
      ++auc_terms;
    }
  }
  m.auc = auc_terms > 0 ? auc_sum / auc_terms : std::numeric_limits<double>::quiet_NaN();
  return m;
}

Metrics compute_metrics_multilabel(const std::vector<double>& scores, int n, int num_labels,
                                   const std::vector<std::vector<Label>>& true_label_sets,
                                   const std::vector<NodeId>& eval_nodes) {
  if (eval_nodes.empty()) throw std::invalid_argument("metrics: empty evaluation set");
  if (scores.size() != size_t(n) * num_labels || int(true_label_sets.size()) != n)
    throw std::invalid_argument("metrics: shape mismatch");

  Metrics m;
  int hits = 0;
  for (NodeId v : eval_nodes) {
    const double* row = &scores[size_t(v) * num_labels];
    Label best = 1;
    double best_score = -1.0;
    for (Label l = 1; l <= num_labels; ++l) {
      if (row[l - 1] > best_score) {
        best_score = row[l - 1];
        best = l;
      }
    }
    const auto& truth = true_label_sets[v];
    if (std::find(truth.begin(), truth.end(), best) != truth.end()) ++hits;
  }
  m.top1 = double(hits) / double(eval_nodes.size());

  double auc_sum = 0.0;
  int auc_terms = 0;
  std::vector<double> col(eval_nodes.size());
  std::vector<uint8_t> positive(eval_nodes.size());
  for (Label l = 1; l <= num_labels; ++l) {
    for (size_t i = 0; i < eval_nodes.size(); ++i) {
      col[i] = scores[size_t(eval_nodes[i]) * num_labels + (l - 1)];
      const auto& truth = true_label_sets[eval_nodes[i]];
      positive[i] = std::find(truth.begin(), truth.end(), l) != truth.end() ? 1 : 0;
    }
    double a = rank_auc(col, positive);
    if (!std::isnan(a)) {
      auc_sum += a;
      ++auc_terms;
    }
  }
  m.auc = auc_terms > 0 ? auc_sum / auc_terms : std::numeric_limits<double>::quiet_NaN();
  return m;
}

}  // namespace infprop
