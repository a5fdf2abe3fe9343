#include "graphword/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "graphword/errors.hpp"
#include "graphword/rng.hpp"

namespace graphword::ingest {

namespace {

std::int64_t parse_int_field(std::string_view field, const std::string& origin,
                             std::size_t line_no) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw io_error(origin + ":" + std::to_string(line_no) +
                   ": non-integer field '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

ParsedInteractions parse_interactions(std::istream& in, const std::string& origin) {
  ParsedInteractions out;
  std::unordered_map<std::int64_t, int> user_index;
  std::unordered_map<std::int64_t, int> item_index;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;

    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? std::string::npos
                                                : line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos ||
        line.find('\t', tab2 + 1) != std::string::npos) {
      throw io_error(origin + ":" + std::to_string(line_no) +
                     ": expected `user<TAB>item<TAB>timestamp`");
    }
    const std::int64_t raw_user =
        parse_int_field(std::string_view(line).substr(0, tab1), origin, line_no);
    const std::int64_t raw_item = parse_int_field(
        std::string_view(line).substr(tab1 + 1, tab2 - tab1 - 1), origin, line_no);
    const std::int64_t ts =
        parse_int_field(std::string_view(line).substr(tab2 + 1), origin, line_no);
    if (ts < 0) {
      throw io_error(origin + ":" + std::to_string(line_no) +
                     ": negative timestamp");
    }

    auto [uit, u_new] = user_index.try_emplace(raw_user, out.num_users);
    if (u_new) {
      out.user_raw_ids.push_back(raw_user);
      ++out.num_users;
    }
    auto [iit, i_new] = item_index.try_emplace(raw_item, out.num_items);
    if (i_new) {
      out.item_raw_ids.push_back(raw_item);
      ++out.num_items;
    }
    out.interactions.push_back({uit->second, iit->second, ts});
  }
  return out;
}

ParsedInteractions parse_interactions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open interaction log: " + path);
  return parse_interactions(in, path);
}

std::unordered_set<int> SplitDataset::interacted_set(const UserSplit& u) const {
  std::unordered_set<int> s(u.train.begin(), u.train.end());
  s.insert(u.val_label);
  s.insert(u.test_label);
  return s;
}

SplitDataset make_splits(const ParsedInteractions& parsed, int min_len) {
  if (min_len < 3) throw argument_error("min_len must be at least 3");

  std::vector<std::vector<std::pair<std::int64_t, int>>> per_user(parsed.num_users);
  for (const auto& x : parsed.interactions) {
    per_user[x.user].push_back({x.timestamp, x.item});
  }

  SplitDataset out;
  out.num_users = parsed.num_users;
  out.num_items = parsed.num_items;
  for (int u = 0; u < parsed.num_users; ++u) {
    auto& seq = per_user[u];
    if (static_cast<int>(seq.size()) < min_len) continue;
    // Chronological; ties keep input order.
    std::stable_sort(seq.begin(), seq.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    UserSplit s;
    s.user = u;
    s.test_label = seq.back().second;
    s.val_label = seq[seq.size() - 2].second;
    s.train.reserve(seq.size() - 2);
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) s.train.push_back(seq[i].second);
    out.users.push_back(std::move(s));
  }
  if (out.users.empty()) {
    throw io_error("empty dataset: no user has " + std::to_string(min_len) +
                   " or more interactions");
  }
  return out;
}

SplitDataset sample_direct_candidates(SplitDataset splits, int num_neg,
                                      std::uint64_t seed) {
  if (num_neg < 0) throw argument_error("num_neg must be non-negative");
  for (auto& u : splits.users) {
    const auto interacted = splits.interacted_set(u);
    const int available = splits.num_items - static_cast<int>(interacted.size());
    if (available < num_neg) {
      throw io_error("user " + std::to_string(u.user) + ": only " +
                     std::to_string(available) + " items available for " +
                     std::to_string(num_neg) + " negatives");
    }
    auto eng = substream(seed, "negatives", static_cast<std::uint64_t>(u.user));

    std::vector<int> negs;
    negs.reserve(num_neg);
    std::unordered_set<int> chosen;
    if (available <= 4 * num_neg) {
      // Tight complement: enumerate and partially shuffle.
      std::vector<int> pool;
      pool.reserve(available);
      for (int v = 0; v < splits.num_items; ++v) {
        if (!interacted.count(v)) pool.push_back(v);
      }
      for (int i = 0; i < num_neg; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(uniform01(eng) * (pool.size() - i));
        std::swap(pool[i], pool[j]);
        negs.push_back(pool[i]);
      }
    } else {
      while (static_cast<int>(negs.size()) < num_neg) {
        const int v = static_cast<int>(uniform01(eng) * splits.num_items);
        if (interacted.count(v) || chosen.count(v)) continue;
        chosen.insert(v);
        negs.push_back(v);
      }
    }

    u.candidates = std::move(negs);
    u.candidates.push_back(u.test_label);
    auto shuffle_eng = substream(seed, "candidate-shuffle",
                                 static_cast<std::uint64_t>(u.user));
    for (std::size_t i = u.candidates.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(uniform01(shuffle_eng) * i);
      std::swap(u.candidates[i - 1], u.candidates[j]);
    }
  }
  return splits;
}

InteractionGraph build_graph(const SplitDataset& splits) {
  InteractionGraph g;
  g.num_users = splits.num_users;
  g.num_items = splits.num_items;
  const int n = g.num_nodes();

  std::vector<std::pair<int, int>> edges;  // (user node, item node)
  for (const auto& u : splits.users) {
    for (int item : u.train) edges.push_back({u.user, g.item_node(item)});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  g.degree.assign(n, 0);
  for (const auto& [a, b] : edges) {
    ++g.degree[a];
    ++g.degree[b];
  }
  g.row_ptr.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) g.row_ptr[i + 1] = g.row_ptr[i] + g.degree[i];
  g.col.assign(g.row_ptr.back(), 0);

  std::vector<int> cursor(g.row_ptr.begin(), g.row_ptr.end() - 1);
  for (const auto& [a, b] : edges) {
    g.col[cursor[a]++] = b;
    g.col[cursor[b]++] = a;
  }
  // Item rows fill in user order already; user rows fill in item order since
  // edges are sorted. Both neighbor lists end up sorted.
  return g;
}

bool InteractionGraph::has_edge(int user, int item) const {
  const int node = item_node(item);
  const auto begin = col.begin() + row_ptr[user];
  const auto end = col.begin() + row_ptr[user + 1];
  return std::binary_search(begin, end, node);
}

namespace {

void write_header(std::ostream& out, int num_users, int num_items) {
  out << "# users=" << num_users << " items=" << num_items << "\n";
}

std::pair<int, int> parse_header_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] != '#') break;
    int users = -1, items = -1;
    if (std::sscanf(line.c_str(), "# users=%d items=%d", &users, &items) == 2) {
      return {users, items};
    }
  }
  throw io_error(path + ": missing `# users=U items=V` header");
}

}  // namespace

void write_split_manifest(const std::string& path, const SplitDataset& splits) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write: " + path);
  write_header(out, splits.num_users, splits.num_items);
  for (const auto& u : splits.users) {
    for (int item : u.train) out << u.user << "\ttrain\t" << item << "\n";
    out << u.user << "\tval\t" << u.val_label << "\n";
    out << u.user << "\ttest\t" << u.test_label << "\n";
    for (int item : u.candidates) out << u.user << "\tcand\t" << item << "\n";
  }
  if (!out) throw io_error("write failed: " + path);
}

SplitDataset read_split_manifest(const std::string& path) {
  auto [num_users, num_items] = parse_header_counts(path);
  SplitDataset out;
  out.num_users = num_users;
  out.num_items = num_items;

  std::ifstream in(path);
  if (!in) throw io_error("cannot open: " + path);
  std::string line;
  std::size_t line_no = 0;
  UserSplit cur;
  bool have_cur = false;
  auto flush = [&] {
    if (have_cur) out.users.push_back(std::move(cur));
    cur = UserSplit{};
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int user = 0, item = 0;
    std::string role;
    if (!(ls >> user >> role >> item)) {
      throw io_error(path + ":" + std::to_string(line_no) + ": bad manifest row");
    }
    if (!have_cur || cur.user != user) {
      flush();
      cur.user = user;
      have_cur = true;
    }
    if (role == "train") {
      cur.train.push_back(item);
    } else if (role == "val") {
      cur.val_label = item;
    } else if (role == "test") {
      cur.test_label = item;
    } else if (role == "cand") {
      cur.candidates.push_back(item);
    } else {
      throw io_error(path + ":" + std::to_string(line_no) + ": unknown role '" +
                     role + "'");
    }
  }
  flush();
  if (out.users.empty()) throw io_error(path + ": empty split manifest");
  return out;
}

void write_graph_tsv(const std::string& path, const InteractionGraph& graph) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write: " + path);
  write_header(out, graph.num_users, graph.num_items);
  for (int u = 0; u < graph.num_users; ++u) {
    for (int k = graph.row_ptr[u]; k < graph.row_ptr[u + 1]; ++k) {
      out << u << "\t" << graph.col[k] - graph.num_users << "\n";
    }
  }
  if (!out) throw io_error("write failed: " + path);
}

InteractionGraph read_graph_tsv(const std::string& path) {
  auto [num_users, num_items] = parse_header_counts(path);
  std::ifstream in(path);
  if (!in) throw io_error("cannot open: " + path);

  SplitDataset shim;  // reuse build_graph's CSR assembly via a pseudo-split
  shim.num_users = num_users;
  shim.num_items = num_items;

  std::string line;
  std::size_t line_no = 0;
  std::unordered_map<int, UserSplit> per_user;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int user = 0, item = 0;
    if (!(ls >> user >> item)) {
      throw io_error(path + ":" + std::to_string(line_no) + ": bad edge row");
    }
    if (user < 0 || user >= num_users || item < 0 || item >= num_items) {
      throw io_error(path + ":" + std::to_string(line_no) + ": edge out of range");
    }
    per_user[user].train.push_back(item);
  }
  for (auto& [user, split] : per_user) {
    split.user = user;
    shim.users.push_back(std::move(split));
  }
  return build_graph(shim);
}

void write_id_maps(const std::string& users_path, const std::string& items_path,
                   const ParsedInteractions& parsed) {
  std::ofstream uo(users_path), io(items_path);
  if (!uo || !io) throw io_error("cannot write id maps");
  for (std::size_t i = 0; i < parsed.user_raw_ids.size(); ++i) {
    uo << i << "\t" << parsed.user_raw_ids[i] << "\n";
  }
  for (std::size_t i = 0; i < parsed.item_raw_ids.size(); ++i) {
    io << i << "\t" << parsed.item_raw_ids[i] << "\n";
  }
}

}  // namespace graphword::ingest
