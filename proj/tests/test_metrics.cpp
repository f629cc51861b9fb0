#include <doctest.h>

#include <cmath>

#include "infprop/metrics.hpp"

using namespace infprop;

namespace {

PredictionMatrix make_pred(int n, int L) { return PredictionMatrix(n, L, 0); }

}  // namespace

TEST_CASE("metrics: accuracy and top1 coincide for single-label truth") {
  PredictionMatrix pred = make_pred(3, 2);
  pred.at(0, 1) = 0.9; pred.at(0, 2) = 0.1;
  pred.at(1, 1) = 0.2; pred.at(1, 2) = 0.8;
  pred.at(2, 1) = 0.6; pred.at(2, 2) = 0.4;
  std::vector<Label> truth = {1, 2, 2};
  Metrics m = compute_metrics(pred, truth, {0, 1, 2});
  CHECK(m.accuracy == doctest::Approx(2.0 / 3.0));
  CHECK(m.top1 == m.accuracy);
}

TEST_CASE("metrics: squared error of a coin-flip row is exactly one half") {
  PredictionMatrix pred = make_pred(1, 2);
  pred.at(0, 1) = 0.5;
  pred.at(0, 2) = 0.5;
  std::vector<Label> truth = {1};
  Metrics m = compute_metrics(pred, truth, {0});
  CHECK(m.mse == 0.5);  // (0.5-1)^2 + (0.5-0)^2
}

TEST_CASE("metrics: evaluation restricted to the requested nodes") {
  PredictionMatrix pred = make_pred(2, 2);
  pred.at(0, 1) = 1.0;
  pred.at(1, 0) = 1.0;  // no label mass: argmax falls back to label 1
  std::vector<Label> truth = {1, 2};
  Metrics all = compute_metrics(pred, truth, {0, 1});
  Metrics first = compute_metrics(pred, truth, {0});
  CHECK(all.accuracy == 0.5);
  CHECK(first.accuracy == 1.0);
}

TEST_CASE("metrics: rank AUC for clean, inverted, and tied scores") {
  CHECK(rank_auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}) == 1.0);
  CHECK(rank_auc({0.1, 0.2, 0.8, 0.9}, {1, 1, 0, 0}) == 0.0);
  CHECK(rank_auc({0.5, 0.5, 0.5, 0.5}, {1, 1, 0, 0}) == 0.5);
  CHECK(rank_auc({0.9, 0.5, 0.5, 0.1}, {1, 0, 1, 0}) == doctest::Approx(0.875));
  CHECK(std::isnan(rank_auc({0.9, 0.1}, {1, 1})));
}

TEST_CASE("metrics: macro AUC skips labels missing a class") {
  PredictionMatrix pred = make_pred(4, 2);
  // Label 1 separates perfectly; label 2 has no positives and must be skipped.
  pred.at(0, 1) = 0.9; pred.at(1, 1) = 0.8; pred.at(2, 1) = 0.1; pred.at(3, 1) = 0.2;
  for (int v = 0; v < 4; ++v) pred.at(v, 2) = 0.5;
  std::vector<Label> truth = {1, 1, 1, 1};
  // All-positive label 1 would also be skipped; evaluate on a mixed subset.
  truth[2] = 2;
  truth[3] = 2;
  Metrics m = compute_metrics(pred, truth, {0, 1, 2, 3});
  // Label 1: positives {0,1} scored above negatives {2,3} -> AUC 1.
  // Label 2: positives {2,3} all tied with negatives -> AUC 0.5.
  CHECK(m.auc == doctest::Approx(0.75));
}

TEST_CASE("metrics: multilabel top1 counts argmax membership") {
  std::vector<double> scores = {
      0.9, 0.1,   // node 0: argmax label 1
      0.2, 0.8,   // node 1: argmax label 2
  };
  std::vector<std::vector<Label>> truth = {{1, 2}, {1}};
  Metrics m = compute_metrics_multilabel(scores, 2, 2, truth, {0, 1});
  CHECK(m.top1 == 0.5);  // node 0 hits, node 1 misses
}
