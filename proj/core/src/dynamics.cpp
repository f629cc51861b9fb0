#include "infprop/dynamics.hpp"

#include <cmath>
#include <iostream>

namespace infprop {

double sample_delay(const DelayModel& model, const DirectedGraph& g, EdgeId e, Rng& rng) {
  switch (model.variant) {
    case DelayVariant::Replay:
      return model.table[e];
    case DelayVariant::ICUnit:
      if (!g.params_set) throw std::logic_error("sample_delay: edge parameters unset");
      return rng.bernoulli(g.p[e]) ? 1.0 : kInf;
    case DelayVariant::CTICExp: {
      if (!g.params_set) throw std::logic_error("sample_delay: edge parameters unset");
      if (!rng.bernoulli(g.p[e])) return kInf;
      double rate = model.theta_is_scale ? 1.0 / g.theta[e] : g.theta[e];
      return rng.exponential(rate);
    }
  }
  return kInf;
}

std::vector<double> make_replay_table(const DelayModel& model, const DirectedGraph& g,
                                      Rng& rng) {
  std::vector<double> table(g.m);
  for (EdgeId e = 0; e < g.m; ++e) table[e] = sample_delay(model, g, e, rng);
  return table;
}

PenaltySource::PenaltySource(PriorMatrix pm) : priors(std::move(pm)) {
  int zeros = 0;
  for (double r : priors.rho)
    if (r == 0.0) ++zeros;
  if (zeros > 0)
    std::cerr << "PenaltySource: " << zeros
              << " zero prior(s); those labels can never arrive first at those nodes\n";
}

double PenaltySource::penalty(NodeId v, Label l) const {
  double r = priors.at(v, l);
  if (r == 1.0) return 0.0;
  if (r == 0.0) return kInf;
  return -std::log(r);
}

std::vector<int32_t> sample_lt_active_set(const LTGraph& lt, Rng& rng) {
  const DirectedGraph& g = lt.g;
  std::vector<int32_t> chosen(g.n, -1);
  for (NodeId v = 0; v < g.n; ++v) {
    if (g.in_degree(v) == 0) continue;
    double u = rng.next_double();
    double acc = 0.0;
    for (int32_t e = g.in_off[v]; e < g.in_off[v + 1]; ++e) {
      acc += g.w[g.in_eid[e]];
      if (u < acc) {
        chosen[v] = e;
        break;
      }
    }
  }
  return chosen;
}

std::vector<double> lt_penalized_distribution(const LTGraph& lt, NodeId v, int32_t pos,
                                              double scale) {
  if (!(scale >= 0.0 && scale <= 1.0))
    throw std::invalid_argument("lt_penalized_distribution: scale outside [0,1]");
  const DirectedGraph& g = lt.g;
  int deg = g.in_degree(v);
  if (pos < g.in_off[v] || pos >= g.in_off[v + 1])
    throw std::invalid_argument("lt_penalized_distribution: pos is not an in-edge of v");

  std::vector<double> dist(deg + 1, 0.0);
  double wpen = g.w[g.in_eid[pos]];
  double penalized = wpen * scale;
  // Remaining mass is spread over the other choices in their original
  // proportions; degenerate when the penalized edge held all the mass.
  double others = 1.0 - wpen;
  double factor = others > 0.0 ? (1.0 - penalized) / others : 0.0;
  for (int i = 0; i < deg; ++i) {
    int32_t e = g.in_off[v] + i;
    dist[i] = (e == pos) ? penalized : g.w[g.in_eid[e]] * factor;
  }
  dist[deg] = others > 0.0 ? lt.residual[v] * factor : 1.0 - penalized;
  return dist;
}

}  // namespace infprop
