#include "infprop/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace infprop {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  for (;;) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

double parse_double(const std::string& s, const std::string& path, int lineno) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                ": bad numeric field '" + s + "'");
  return v;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

// Shortest decimal form that parses back to the same double.
std::string fmt_double(double v) {
  char buf[32];
  snprintf(buf, sizeof buf, "%.17g", v);
  if (std::strtod(buf, nullptr) == v) {
    for (int prec = 1; prec < 17; ++prec) {
      char shorter[32];
      snprintf(shorter, sizeof shorter, "%.*g", prec, v);
      if (std::strtod(shorter, nullptr) == v) return shorter;
    }
  }
  return buf;
}

bool skippable(const std::string& line) {
  return line.empty() || line[0] == '#';
}

}  // namespace

int32_t IdMap::intern(const std::string& name) {
  auto it = index.find(name);
  if (it != index.end()) return it->second;
  int32_t id = int32_t(names.size());
  names.push_back(name);
  index.emplace(name, id);
  return id;
}

int32_t IdMap::lookup(const std::string& name) const {
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

GraphFile read_edge_tsv(const std::string& path, bool undirected) {
  auto in = open_in(path);
  GraphFile gf;
  struct RawEdge {
    int32_t u, v;
    double w, p, theta;
  };
  std::vector<RawEdge> raw;
  int lineno = 0;
  int ncols = 0;  // established by the first edge line
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    auto f = split_tabs(line);
    if (f.size() < 2 || f.size() == 4 || f.size() > 5)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected 2, 3, or 5 tab-separated fields");
    if (ncols == 0) ncols = int(f.size());
    if (int(f.size()) != ncols)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": inconsistent column count");
    RawEdge e;
    e.u = gf.ids.intern(f[0]);
    e.v = gf.ids.intern(f[1]);
    e.w = f.size() >= 3 ? parse_double(f[2], path, lineno) : 1.0;
    e.p = e.theta = -1.0;
    if (f.size() == 5) {
      e.p = parse_double(f[3], path, lineno);
      e.theta = parse_double(f[4], path, lineno);
      if (!(e.p >= 0.0 && e.p <= 1.0))
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": p outside [0,1]");
      if (!(e.theta > 0.0))
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": theta must be positive");
    }
    raw.push_back(e);
  }
  gf.had_params = ncols == 5;

  std::vector<EdgeInput> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) edges.push_back({e.u, e.v, e.w});
  gf.g = build_graph(int(gf.ids.size()), edges, undirected);

  if (gf.had_params) {
    gf.g.p.assign(gf.g.m, 0.0);
    gf.g.theta.assign(gf.g.m, 0.0);
    for (const auto& e : raw) {
      EdgeId id = gf.g.find_edge(e.u, e.v);
      gf.g.p[id] = e.p;
      gf.g.theta[id] = e.theta;
      if (undirected) {
        EdgeId rid = gf.g.find_edge(e.v, e.u);
        gf.g.p[rid] = e.p;
        gf.g.theta[rid] = e.theta;
      }
    }
    gf.g.params_set = true;
  }
  return gf;
}

void write_edge_tsv(const std::string& path, const DirectedGraph& g, const IdMap& ids) {
  auto out = open_out(path);
  for (NodeId u = 0; u < g.n; ++u) {
    for (int32_t e = g.out_off[u]; e < g.out_off[u + 1]; ++e) {
      out << ids.names[u] << '\t' << ids.names[g.out_dst[e]] << '\t' << fmt_double(g.w[e]);
      if (g.params_set)
        out << '\t' << fmt_double(g.p[e]) << '\t' << fmt_double(g.theta[e]);
      out << '\n';
    }
  }
}

std::vector<SeedSet::Entry> read_label_tsv(const std::string& path, const IdMap& ids,
                                           IdMap& labels) {
  auto in = open_in(path);
  std::vector<SeedSet::Entry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    auto f = split_tabs(line);
    if (f.size() != 2)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected `node<TAB>label`");
    int32_t node = ids.lookup(f[0]);
    if (node < 0)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown node '" +
                                  f[0] + "'");
    entries.push_back({node, Label(labels.intern(f[1]) + 1)});
  }
  return entries;
}

SeedFile read_seed_tsv(const std::string& path, const IdMap& ids, IdMap& labels) {
  auto in = open_in(path);
  SeedFile sf;
  std::string line;
  int lineno = 0;
  int ncols = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    auto f = split_tabs(line);
    if (f.size() != 1 && f.size() != 2)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected `node` or `node<TAB>label`");
    if (ncols == 0) ncols = int(f.size());
    if (int(f.size()) != ncols)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": inconsistent column count");
    int32_t node = ids.lookup(f[0]);
    if (node < 0)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown node '" +
                                  f[0] + "'");
    sf.nodes.push_back(node);
    if (f.size() == 2) sf.entries.push_back({node, Label(labels.intern(f[1]) + 1)});
  }
  sf.has_labels = ncols == 2;
  return sf;
}

PriorMatrix read_prior_tsv(const std::string& path, const IdMap& ids, IdMap& labels, int n) {
  auto in = open_in(path);
  struct Raw {
    int32_t node;
    Label label;
    double rho;
  };
  std::vector<Raw> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    auto f = split_tabs(line);
    if (f.size() != 3)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected `node<TAB>label<TAB>rho`");
    int32_t node = ids.lookup(f[0]);
    if (node < 0)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown node '" +
                                  f[0] + "'");
    double rho = parse_double(f[2], path, lineno);
    if (!(rho >= 0.0 && rho <= 1.0))
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": rho outside [0,1]");
    raw.push_back({node, Label(labels.intern(f[1]) + 1), rho});
  }
  PriorMatrix pm(n, int(labels.size()));
  for (const auto& r : raw) pm.set(r.node, r.label, r.rho);
  return pm;
}

void write_prediction_csv(const std::string& path, const PredictionMatrix& pred,
                          const IdMap& ids) {
  auto out = open_out(path);
  out << "node,null";
  for (int l = 1; l <= pred.num_labels; ++l) out << ",label_" << l;
  out << '\n';
  for (NodeId v = 0; v < pred.n; ++v) {
    out << (v < int(ids.size()) ? ids.names[v] : std::to_string(v));
    for (int l = 0; l <= pred.num_labels; ++l) out << ',' << fmt_double(pred.at(v, l));
    out << '\n';
  }
}

void write_id_map(const std::string& path, const IdMap& ids, bool one_based) {
  auto out = open_out(path);
  for (size_t i = 0; i < ids.names.size(); ++i)
    out << (i + (one_based ? 1 : 0)) << '\t' << ids.names[i] << '\n';
}

}  // namespace infprop
