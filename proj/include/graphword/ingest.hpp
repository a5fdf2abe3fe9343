#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

namespace graphword::ingest {

struct Interaction {
  int user = 0;       // dense, 0-based
  int item = 0;       // dense, 0-based
  std::int64_t timestamp = 0;
};

// Raw interaction log with id densification tables. Dense ids are assigned in
// first-appearance order; raw ids are kept for round-trip export.
struct ParsedInteractions {
  std::vector<Interaction> interactions;
  std::vector<std::int64_t> user_raw_ids;  // dense -> raw
  std::vector<std::int64_t> item_raw_ids;
  int num_users = 0;
  int num_items = 0;
};

// Leave-last-out split: last item -> test, second-to-last -> validation,
// remainder -> training sequence. Users with fewer than min_len interactions
// are dropped entirely.
struct UserSplit {
  int user = 0;
  std::vector<int> train;  // chronological
  int val_label = -1;
  int test_label = -1;
  std::vector<int> candidates;  // direct-recommendation list, empty until sampled
};

struct SplitDataset {
  int num_users = 0;
  int num_items = 0;
  std::vector<UserSplit> users;  // ascending user id, survivors only

  // All items a user ever touched (train + val + test).
  std::unordered_set<int> interacted_set(const UserSplit& u) const;
};

// Bipartite user-item graph in CSR form over num_users + num_items nodes.
// Users occupy nodes [0, num_users), items [num_users, num_users + num_items).
struct InteractionGraph {
  int num_users = 0;
  int num_items = 0;
  std::vector<int> row_ptr;  // size num_nodes() + 1
  std::vector<int> col;      // sorted neighbor lists
  std::vector<int> degree;   // row populations

  int num_nodes() const { return num_users + num_items; }
  int item_node(int item) const { return num_users + item; }
  bool has_edge(int user, int item) const;
};

ParsedInteractions parse_interactions(std::istream& in, const std::string& origin);
ParsedInteractions parse_interactions(const std::string& path);

SplitDataset make_splits(const ParsedInteractions& parsed, int min_len = 3);

// Draws num_neg uniform negatives per user (never from the user's interacted
// set), adds the test label and shuffles deterministically per (seed, user).
SplitDataset sample_direct_candidates(SplitDataset splits, int num_neg,
                                      std::uint64_t seed);

// Training edges only; duplicates collapse to a single edge.
InteractionGraph build_graph(const SplitDataset& splits);

// TSV export/import. The split manifest has lines `user<TAB>role<TAB>item`
// with roles train/val/test/cand (train and cand rows keep their order);
// the graph export is an edge list `user<TAB>item`. Both carry a
// `# users=U items=V` header.
void write_split_manifest(const std::string& path, const SplitDataset& splits);
SplitDataset read_split_manifest(const std::string& path);
void write_graph_tsv(const std::string& path, const InteractionGraph& graph);
InteractionGraph read_graph_tsv(const std::string& path);

void write_id_maps(const std::string& users_path, const std::string& items_path,
                   const ParsedInteractions& parsed);

}  // namespace graphword::ingest
