#pragma once

#include <vector>

#include "infprop/types.hpp"

namespace infprop {

// Prediction quality on an evaluation set of nodes.
//   accuracy: fraction whose hard label matches the true label
//   mse: mean over nodes of sum_{l in 1..L} (f_vl - onehot_l)^2
//   auc: macro-average over labels of the rank AUC of column scores against
//        the binary truth; labels with no positives or no negatives on the
//        evaluation set are skipped (NaN if every label is skipped)
//   top1: fraction whose top-scored label is among the true labels; equals
//         accuracy for single-label truth
struct Metrics {
  double accuracy = 0.0;
  double mse = 0.0;
  double auc = 0.0;
  double top1 = 0.0;
};

Metrics compute_metrics(const PredictionMatrix& pred, const std::vector<Label>& true_labels,
                        const std::vector<NodeId>& eval_nodes);

// Multilabel variant over an n x L score matrix and per-node true label sets;
// fills auc and top1 (accuracy and mse are not defined here and stay 0).
Metrics compute_metrics_multilabel(const std::vector<double>& scores, int n, int num_labels,
                                   const std::vector<std::vector<Label>>& true_label_sets,
                                   const std::vector<NodeId>& eval_nodes);

// Rank AUC of scores against binary labels, ties by midrank; NaN when one
// class is empty.
double rank_auc(const std::vector<double>& scores, const std::vector<uint8_t>& positive);

}  // namespace infprop
