#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "infprop/graph.hpp"
#include "infprop/types.hpp"

namespace infprop {

// Stable first-seen-order mapping between external string identifiers and
// dense internal indices. Index 0 <=> first id encountered.
struct IdMap {
  std::vector<std::string> names;
  std::unordered_map<std::string, int32_t> index;

  int32_t intern(const std::string& name);
  int32_t lookup(const std::string& name) const;  // -1 when absent
  size_t size() const { return names.size(); }
};

struct GraphFile {
  DirectedGraph g;
  IdMap ids;
  bool had_params = false;  // file carried p and theta columns
};

// Edge list TSV: `u<TAB>v<TAB>w` with w optional (default 1), optionally
// followed by p and theta columns (all rows or none); `#` lines and blank
// lines are skipped. Node ids are arbitrary strings interned in first-seen
// order. undirected=true expands each line into two arcs.
GraphFile read_edge_tsv(const std::string& path, bool undirected = false);

// Writes the graph back in the same format (p/theta columns iff set).
void write_edge_tsv(const std::string& path, const DirectedGraph& g, const IdMap& ids);

// Label file `node<TAB>label`. Node ids must already exist in `ids`; label
// strings are interned into `labels` in first-seen order (1-based).
std::vector<SeedSet::Entry> read_label_tsv(const std::string& path, const IdMap& ids,
                                           IdMap& labels);

// Seed file: either one node id per line, or `node<TAB>label` lines.
struct SeedFile {
  std::vector<NodeId> nodes;
  std::vector<SeedSet::Entry> entries;  // filled iff has_labels
  bool has_labels = false;
};
SeedFile read_seed_tsv(const std::string& path, const IdMap& ids, IdMap& labels);

// Prior file `node<TAB>label<TAB>rho`; unlisted entries stay 1. Entries must
// lie in [0,1]; zeros are accepted and reported by PenaltySource.
PriorMatrix read_prior_tsv(const std::string& path, const IdMap& ids, IdMap& labels, int n);

// Prediction dump: header `node,null,label_1..label_L`; the node column uses
// external names. Label dictionaries are emitted separately via write_id_map.
void write_prediction_csv(const std::string& path, const PredictionMatrix& pred,
                          const IdMap& ids);

// Dictionaries emitted alongside outputs: `index<TAB>name` per line.
void write_id_map(const std::string& path, const IdMap& ids, bool one_based = false);

}  // namespace infprop
