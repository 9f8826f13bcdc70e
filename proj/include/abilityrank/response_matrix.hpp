#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "abilityrank/errors.hpp"

namespace abilityrank {

// One answer: user `user` picked option `option` of item `item`.
struct ResponseRecord {
  std::int64_t user = 0;
  std::int64_t item = 0;
  std::int64_t option = 0;

  friend bool operator==(const ResponseRecord&, const ResponseRecord&) = default;
};

// Identity of one column of the one-hot response matrix.
struct ColumnInfo {
  std::int64_t item = 0;    // original item id
  std::int64_t option = 0;  // original option id within the item
  bool padding = false;     // true for columns added by pad_equal_row_sums
};

// Sparse one-hot response matrix: m users by (sum of per-item option counts)
// columns, at most one nonzero per (user, item). Immutable after
// construction; the transformation methods return new matrices.
//
// Column order is item-major, option-minor, fixed at load time. Users and
// items are compacted to 0-based indices but the original ids are retained
// for output.
class ResponseMatrix {
 public:
  // Builds a matrix from raw records. Users, items and options are compacted
  // to 0-based indices in ascending order of their original ids; only
  // observed options become columns. Throws EmptyInputError on an empty
  // record set and DuplicateAnswerError if a (user, item) pair repeats.
  static ResponseMatrix from_records(std::span<const ResponseRecord> records);

  // Same, but with a declared shape: users 0..m-1, items 0..n-1 and options
  // 0..k-1 all exist even when unanswered, so empty rows and columns are
  // representable. Ids outside the declared ranges raise ConfigInvalidError.
  static ResponseMatrix from_records(std::span<const ResponseRecord> records,
                                     int users, int items, int options_per_item);

  int user_count() const { return static_cast<int>(row_ptr_.size()) - 1; }
  int item_count() const { return static_cast<int>(item_col_ptr_.size()) - 1; }
  int column_count() const { return static_cast<int>(columns_.size()); }
  std::int64_t nnz() const { return static_cast<std::int64_t>(col_idx_.size()); }

  // Column indices chosen by one user, ascending.
  std::span<const std::int32_t> row(int user) const {
    return {col_idx_.data() + row_ptr_[user],
            col_idx_.data() + row_ptr_[user + 1]};
  }
  int row_degree(int user) const {
    return static_cast<int>(row_ptr_[user + 1] - row_ptr_[user]);
  }
  int col_degree(int column) const { return col_degree_[column]; }

  const ColumnInfo& column_info(int column) const { return columns_[column]; }

  // Columns belonging to one item (contiguous by construction).
  std::span<const std::int32_t> item_columns(int item) const;
  int item_of_column(int column) const { return col_item_[column]; }

  std::int64_t user_id(int user) const { return user_ids_[user]; }
  std::int64_t item_id(int item) const { return item_ids_[item]; }
  const std::vector<std::int64_t>& user_ids() const { return user_ids_; }

  bool has_empty_column() const;
  // Index of the first user with no answers, or -1 if none exists.
  int first_empty_row() const;

  // Removes never-chosen columns; mapping back to original (item, option)
  // ids is preserved through ColumnInfo.
  ResponseMatrix drop_empty_columns() const;

  // Appends single-entry columns until every row has the maximal row degree.
  // Each padding column forms its own pseudo-item, so the pre-P property of
  // the original matrix is preserved.
  ResponseMatrix pad_equal_row_sums() const;

  // Connected components of the user-option bipartite graph, largest first
  // (ties by smallest user index); users ascending within a component.
  std::vector<std::vector<int>> connected_components() const;

  // Submatrix with only the given users (indices into this matrix); columns
  // are retained, so empty columns may appear.
  ResponseMatrix restrict_users(std::span<const int> users) const;

  // Records with original ids, user-major then item-major order.
  std::vector<ResponseRecord> to_records() const;

 private:
  ResponseMatrix() = default;
  void finalize();

  std::vector<std::int64_t> row_ptr_;      // size m+1
  std::vector<std::int32_t> col_idx_;      // size nnz, ascending within a row
  std::vector<int> col_degree_;            // size columns
  std::vector<ColumnInfo> columns_;        // size columns
  std::vector<std::int32_t> col_item_;     // size columns, item index per column
  std::vector<std::int64_t> item_col_ptr_; // size n+1
  std::vector<std::int32_t> item_col_idx_; // size columns (identity ranges)
  std::vector<std::int64_t> user_ids_;     // size m
  std::vector<std::int64_t> item_ids_;     // size n
};

}  // namespace abilityrank
