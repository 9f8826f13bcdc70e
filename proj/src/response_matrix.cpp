#include "abilityrank/response_matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

namespace abilityrank {

namespace {

// Disjoint-set forest for the bipartite connectivity check.
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

void ResponseMatrix::finalize() {
  col_degree_.assign(columns_.size(), 0);
  for (std::int32_t c : col_idx_) ++col_degree_[c];
  item_col_idx_.resize(columns_.size());
  std::iota(item_col_idx_.begin(), item_col_idx_.end(), 0);
}

ResponseMatrix ResponseMatrix::from_records(
    std::span<const ResponseRecord> records) {
  if (records.empty()) throw EmptyInputError("no response records");

  std::set<std::int64_t> user_set;
  std::map<std::int64_t, std::set<std::int64_t>> item_options;
  for (const auto& r : records) {
    if (r.user < 0 || r.item < 0 || r.option < 0)
      throw ConfigInvalidError("negative id in response record");
    user_set.insert(r.user);
    item_options[r.item].insert(r.option);
  }

  ResponseMatrix m;
  m.user_ids_.assign(user_set.begin(), user_set.end());
  std::unordered_map<std::int64_t, int> user_index;
  for (int j = 0; j < static_cast<int>(m.user_ids_.size()); ++j)
    user_index[m.user_ids_[j]] = j;

  // Columns in item-major, option-minor order.
  std::map<std::pair<std::int64_t, std::int64_t>, std::int32_t> column_index;
  m.item_col_ptr_.push_back(0);
  for (const auto& [item, options] : item_options) {
    m.item_ids_.push_back(item);
    for (std::int64_t opt : options) {
      column_index[{item, opt}] = static_cast<std::int32_t>(m.columns_.size());
      m.columns_.push_back({item, opt, false});
      m.col_item_.push_back(static_cast<std::int32_t>(m.item_ids_.size()) - 1);
    }
    m.item_col_ptr_.push_back(static_cast<std::int64_t>(m.columns_.size()));
  }

  std::vector<std::vector<std::int32_t>> rows(m.user_ids_.size());
  std::vector<std::set<std::int64_t>> answered(m.user_ids_.size());
  for (const auto& r : records) {
    int u = user_index[r.user];
    if (!answered[u].insert(r.item).second)
      throw DuplicateAnswerError(r.user, r.item);
    rows[u].push_back(column_index[{r.item, r.option}]);
  }

  m.row_ptr_.push_back(0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    m.col_idx_.insert(m.col_idx_.end(), row.begin(), row.end());
    m.row_ptr_.push_back(static_cast<std::int64_t>(m.col_idx_.size()));
  }
  m.finalize();
  return m;
}

ResponseMatrix ResponseMatrix::from_records(
    std::span<const ResponseRecord> records, int users, int items,
    int options_per_item) {
  if (users <= 0 || items <= 0 || options_per_item <= 0)
    throw ConfigInvalidError("declared shape must be positive");

  ResponseMatrix m;
  m.user_ids_.resize(users);
  std::iota(m.user_ids_.begin(), m.user_ids_.end(), 0);
  m.item_ids_.resize(items);
  std::iota(m.item_ids_.begin(), m.item_ids_.end(), 0);
  m.item_col_ptr_.push_back(0);
  for (int i = 0; i < items; ++i) {
    for (int h = 0; h < options_per_item; ++h) {
      m.columns_.push_back({i, h, false});
      m.col_item_.push_back(i);
    }
    m.item_col_ptr_.push_back(static_cast<std::int64_t>(m.columns_.size()));
  }

  std::vector<std::vector<std::int32_t>> rows(users);
  std::vector<std::set<std::int64_t>> answered(users);
  for (const auto& r : records) {
    if (r.user < 0 || r.user >= users || r.item < 0 || r.item >= items ||
        r.option < 0 || r.option >= options_per_item)
      throw ConfigInvalidError("record id outside declared shape");
    if (!answered[r.user].insert(r.item).second)
      throw DuplicateAnswerError(r.user, r.item);
    rows[r.user].push_back(
        static_cast<std::int32_t>(r.item * options_per_item + r.option));
  }

  m.row_ptr_.push_back(0);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    m.col_idx_.insert(m.col_idx_.end(), row.begin(), row.end());
    m.row_ptr_.push_back(static_cast<std::int64_t>(m.col_idx_.size()));
  }
  m.finalize();
  return m;
}

std::span<const std::int32_t> ResponseMatrix::item_columns(int item) const {
  return {item_col_idx_.data() + item_col_ptr_[item],
          item_col_idx_.data() + item_col_ptr_[item + 1]};
}

bool ResponseMatrix::has_empty_column() const {
  return std::any_of(col_degree_.begin(), col_degree_.end(),
                     [](int d) { return d == 0; });
}

int ResponseMatrix::first_empty_row() const {
  for (int u = 0; u < user_count(); ++u)
    if (row_degree(u) == 0) return u;
  return -1;
}

ResponseMatrix ResponseMatrix::drop_empty_columns() const {
  std::vector<std::int32_t> remap(columns_.size(), -1);

  ResponseMatrix m;
  m.user_ids_ = user_ids_;
  m.row_ptr_ = row_ptr_;
  m.item_col_ptr_.push_back(0);
  for (int i = 0; i < item_count(); ++i) {
    bool item_kept = false;
    for (std::int32_t c : item_columns(i)) {
      if (col_degree_[c] == 0) continue;
      if (!item_kept) {
        m.item_ids_.push_back(item_ids_[i]);
        item_kept = true;
      }
      remap[c] = static_cast<std::int32_t>(m.columns_.size());
      m.columns_.push_back(columns_[c]);
      m.col_item_.push_back(static_cast<std::int32_t>(m.item_ids_.size()) - 1);
    }
    if (item_kept)
      m.item_col_ptr_.push_back(static_cast<std::int64_t>(m.columns_.size()));
  }

  m.col_idx_.reserve(col_idx_.size());
  for (std::int32_t c : col_idx_) m.col_idx_.push_back(remap[c]);
  m.finalize();
  return m;
}

ResponseMatrix ResponseMatrix::pad_equal_row_sums() const {
  int max_degree = 0;
  for (int u = 0; u < user_count(); ++u)
    max_degree = std::max(max_degree, row_degree(u));

  ResponseMatrix m;
  m.user_ids_ = user_ids_;
  m.item_ids_ = item_ids_;
  m.columns_ = columns_;
  m.col_item_ = col_item_;
  m.item_col_ptr_ = item_col_ptr_;

  std::int64_t next_item_id = 0;
  for (std::int64_t id : item_ids_) next_item_id = std::max(next_item_id, id + 1);

  // One pseudo-item of a single option per padding entry.
  std::vector<std::vector<std::int32_t>> pad_cols(user_count());
  for (int u = 0; u < user_count(); ++u) {
    for (int p = row_degree(u); p < max_degree; ++p) {
      std::int32_t col = static_cast<std::int32_t>(m.columns_.size());
      m.columns_.push_back({next_item_id, 0, true});
      m.col_item_.push_back(static_cast<std::int32_t>(m.item_ids_.size()));
      m.item_ids_.push_back(next_item_id);
      m.item_col_ptr_.push_back(static_cast<std::int64_t>(m.columns_.size()));
      ++next_item_id;
      pad_cols[u].push_back(col);
    }
  }

  m.row_ptr_.push_back(0);
  for (int u = 0; u < user_count(); ++u) {
    auto r = row(u);
    m.col_idx_.insert(m.col_idx_.end(), r.begin(), r.end());
    m.col_idx_.insert(m.col_idx_.end(), pad_cols[u].begin(), pad_cols[u].end());
    m.row_ptr_.push_back(static_cast<std::int64_t>(m.col_idx_.size()));
  }
  m.finalize();
  return m;
}

std::vector<std::vector<int>> ResponseMatrix::connected_components() const {
  UnionFind uf(user_count());
  std::vector<int> col_first(columns_.size(), -1);
  for (int u = 0; u < user_count(); ++u) {
    for (std::int32_t c : row(u)) {
      if (col_first[c] < 0)
        col_first[c] = u;
      else
        uf.unite(col_first[c], u);
    }
  }

  std::map<int, std::vector<int>> groups;
  for (int u = 0; u < user_count(); ++u) groups[uf.find(u)].push_back(u);

  std::vector<std::vector<int>> components;
  components.reserve(groups.size());
  for (auto& [root, members] : groups) components.push_back(std::move(members));
  std::stable_sort(components.begin(), components.end(),
                   [](const auto& a, const auto& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a.front() < b.front();
                   });
  return components;
}

ResponseMatrix ResponseMatrix::restrict_users(
    std::span<const int> users) const {
  ResponseMatrix m;
  m.item_ids_ = item_ids_;
  m.columns_ = columns_;
  m.col_item_ = col_item_;
  m.item_col_ptr_ = item_col_ptr_;

  std::vector<int> sorted(users.begin(), users.end());
  std::sort(sorted.begin(), sorted.end());
  m.row_ptr_.push_back(0);
  for (int u : sorted) {
    m.user_ids_.push_back(user_ids_[u]);
    auto r = row(u);
    m.col_idx_.insert(m.col_idx_.end(), r.begin(), r.end());
    m.row_ptr_.push_back(static_cast<std::int64_t>(m.col_idx_.size()));
  }
  m.finalize();
  return m;
}

std::vector<ResponseRecord> ResponseMatrix::to_records() const {
  std::vector<ResponseRecord> records;
  records.reserve(col_idx_.size());
  for (int u = 0; u < user_count(); ++u) {
    for (std::int32_t c : row(u)) {
      const ColumnInfo& info = columns_[c];
      records.push_back({user_ids_[u], info.item, info.option});
    }
  }
  return records;
}

}  // namespace abilityrank
