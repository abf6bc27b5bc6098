#pragma once

// Sparse exact linear algebra over Q and Q(i): rank, kernel, solve, and a
// streaming eliminator for matrices too tall to materialize.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilrigid/scalar.hpp"

namespace nilrigid {

template <class F>
using Vector = std::vector<F>;

/// Sorted by column, no stored zeros.
template <class F>
using SparseRow = std::vector<std::pair<std::size_t, F>>;

template <class F>
SparseRow<F> sparsify(std::span<const F> dense) {
  SparseRow<F> row;
  for (std::size_t c = 0; c < dense.size(); ++c) {
    if (!is_zero(dense[c])) row.emplace_back(c, dense[c]);
  }
  return row;
}

template <class F>
Vector<F> densify(const SparseRow<F>& row, std::size_t ncols) {
  Vector<F> out(ncols, F(0));
  for (const auto& [c, v] : row) out[c] = v;
  return out;
}

/// a + factor * b, both sorted.
template <class F>
SparseRow<F> add_scaled(const SparseRow<F>& a, const F& factor, const SparseRow<F>& b) {
  SparseRow<F> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, F(factor * ib->second));
      ++ib;
    } else {
      F v = ia->second + factor * ib->second;
      if (!is_zero(v)) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

template <class F>
F dot(const SparseRow<F>& row, std::span<const F> dense) {
  F acc(0);
  for (const auto& [c, v] : row) {
    if (!is_zero(dense[c])) acc += v * dense[c];
  }
  return acc;
}

/// Dense scratch vector that remembers which slots it touched, so clearing is
/// proportional to the number of nonzeros rather than the length.
template <class F>
class SparseAccumulator {
 public:
  explicit SparseAccumulator(std::size_t n = 0) { resize(n); }

  void resize(std::size_t n) {
    values_.assign(n, F(0));
    touched_flag_.assign(n, 0);
    touched_.clear();
  }
  std::size_t size() const { return values_.size(); }

  void add(std::size_t c, const F& v) {
    if (!touched_flag_[c]) {
      touched_flag_[c] = 1;
      touched_.push_back(c);
    }
    values_[c] += v;
  }
  void add_scaled(const SparseRow<F>& row, const F& factor) {
    for (const auto& [c, v] : row) add(c, F(factor * v));
  }
  void add_row(const SparseRow<F>& row) {
    for (const auto& [c, v] : row) add(c, v);
  }
  const F& operator[](std::size_t c) const { return values_[c]; }

  /// Emits the nonzeros sorted and resets to zero.
  SparseRow<F> take() {
    std::sort(touched_.begin(), touched_.end());
    SparseRow<F> out;
    out.reserve(touched_.size());
    for (std::size_t c : touched_) {
      if (!is_zero(values_[c])) out.emplace_back(c, std::move(values_[c]));
      values_[c] = 0;
      touched_flag_[c] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  Vector<F> values_;
  std::vector<std::uint8_t> touched_flag_;
  std::vector<std::size_t> touched_;
};

template <class F>
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t nrows, std::size_t ncols) : ncols_(ncols), rows_(nrows) {}

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, F(1));
    return m;
  }

  static ExactMatrix from_dense(const std::vector<Vector<F>>& dense) {
    const std::size_t nc = dense.empty() ? 0 : dense.front().size();
    ExactMatrix m(dense.size(), nc);
    for (std::size_t r = 0; r < dense.size(); ++r) {
      if (dense[r].size() != nc) throw DimensionMismatch("ragged dense matrix");
      m.rows_[r] = sparsify<F>(dense[r]);
    }
    return m;
  }

  /// Columns given as dense vectors of equal length.
  static ExactMatrix from_columns(const std::vector<Vector<F>>& cols, std::size_t nrows) {
    ExactMatrix m(nrows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != nrows) throw DimensionMismatch("column length differs from row count");
      for (std::size_t r = 0; r < nrows; ++r) {
        if (!is_zero(cols[c][r])) m.rows_[r].emplace_back(c, cols[c][r]);
      }
    }
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return ncols_; }

  const SparseRow<F>& row(std::size_t r) const { return rows_.at(r); }

  void set_row(std::size_t r, SparseRow<F> row) {
    if (!row.empty() && row.back().first >= ncols_) throw DimensionMismatch("row entry beyond column count");
    std::erase_if(row, [](const auto& e) { return is_zero(e.second); });
    rows_.at(r) = std::move(row);
  }

  void append_row(SparseRow<F> row) {
    rows_.emplace_back();
    set_row(rows_.size() - 1, std::move(row));
  }

  F at(std::size_t r, std::size_t c) const {
    const auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
    return (it != row.end() && it->first == c) ? it->second : F(0);
  }

  void set(std::size_t r, std::size_t c, const F& v) {
    if (c >= ncols_) throw DimensionMismatch("column index out of range");
    auto& row = rows_.at(r);
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
    if (it != row.end() && it->first == c) {
      if (is_zero(v)) {
        row.erase(it);
      } else {
        it->second = v;
      }
    } else if (!is_zero(v)) {
      row.insert(it, {c, v});
    }
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }
  bool is_zero_matrix() const { return nonzeros() == 0; }

  ExactMatrix transpose() const {
    ExactMatrix t(ncols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
    }
    return t;
  }

  Vector<F> apply(std::span<const F> x) const {
    if (x.size() != ncols_) throw DimensionMismatch("vector length differs from column count");
    Vector<F> y(rows_.size(), F(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) y[r] = dot<F>(rows_[r], x);
    return y;
  }

  Vector<F> column(std::size_t c) const {
    Vector<F> col(rows_.size(), F(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) col[r] = at(r, c);
    return col;
  }

  std::vector<Vector<F>> to_dense() const {
    std::vector<Vector<F>> d;
    d.reserve(rows_.size());
    for (const auto& r : rows_) d.push_back(densify(r, ncols_));
    return d;
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
    ExactMatrix out(a.rows(), b.cols());
    SparseAccumulator<F> acc(b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (const auto& [k, v] : a.rows_[r]) acc.add_scaled(b.rows_[k], v);
      out.rows_[r] = acc.take();
    }
    return out;
  }

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t ncols_ = 0;
  std::vector<SparseRow<F>> rows_;
};

template <class F>
ExactMatrix<F> vstack(const ExactMatrix<F>& top, const ExactMatrix<F>& bottom) {
  if (top.cols() != bottom.cols()) throw DimensionMismatch("vstack: column counts differ");
  ExactMatrix<F> out(0, top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) out.append_row(top.row(r));
  for (std::size_t r = 0; r < bottom.rows(); ++r) out.append_row(bottom.row(r));
  return out;
}

template <class F>
ExactMatrix<F> hstack(const ExactMatrix<F>& left, const ExactMatrix<F>& right) {
  if (left.rows() != right.rows()) throw DimensionMismatch("hstack: row counts differ");
  ExactMatrix<F> out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    SparseRow<F> row = left.row(r);
    for (const auto& [c, v] : right.row(r)) row.emplace_back(c + left.cols(), v);
    out.set_row(r, std::move(row));
  }
  return out;
}

struct RankProfile {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // sorted column indices
};

/// Row echelon form of a set of sparse rows. `pivot_rows[k]` has leading
/// column `pivots[k]`; pivots are increasing. When `reduced` is set the form
/// is the RREF: pivot entries 1 and zeros above and below every pivot.
template <class F>
struct Echelon {
  std::vector<std::size_t> pivots;
  std::vector<SparseRow<F>> pivot_rows;
};

/// Sparse Gaussian elimination, column by column. Among the rows that lead
/// in the current column the pivot is the one whose leading entry has the
/// smallest bit-size (ties: fewest nonzeros), which keeps coefficient growth
/// down on the integer-heavy matrices built from structure constants.
template <class F>
Echelon<F> echelon(std::vector<SparseRow<F>> rows, bool reduced) {
  std::map<std::size_t, std::vector<SparseRow<F>>> by_lead;
  for (auto& r : rows) {
    if (!r.empty()) {
      std::size_t lead = r.front().first;
      by_lead[lead].push_back(std::move(r));
    }
  }
  Echelon<F> out;
  while (!by_lead.empty()) {
    auto node = by_lead.extract(by_lead.begin());
    const std::size_t col = node.key();
    auto& bucket = node.mapped();
    std::size_t best = 0;
    for (std::size_t k = 1; k < bucket.size(); ++k) {
      const auto bk = bit_size(bucket[k].front().second);
      const auto bb = bit_size(bucket[best].front().second);
      if (bk < bb || (bk == bb && bucket[k].size() < bucket[best].size())) best = k;
    }
    SparseRow<F> pivot = std::move(bucket[best]);
    const F inv = F(1) / pivot.front().second;
    for (auto& [c, v] : pivot) v *= inv;
    for (std::size_t k = 0; k < bucket.size(); ++k) {
      if (k == best) continue;
      const F factor = -bucket[k].front().second;
      SparseRow<F> reduced_row = add_scaled(bucket[k], factor, pivot);
      if (!reduced_row.empty()) {
        std::size_t lead = reduced_row.front().first;
        by_lead[lead].push_back(std::move(reduced_row));
      }
    }
    out.pivots.push_back(col);
    out.pivot_rows.push_back(std::move(pivot));
  }
  if (reduced) {
    // Back substitution: clear entries above each pivot, last pivot first.
    for (std::size_t k = out.pivots.size(); k-- > 0;) {
      const std::size_t col = out.pivots[k];
      for (std::size_t j = 0; j < k; ++j) {
        auto& row = out.pivot_rows[j];
        auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const auto& e, std::size_t c) { return e.first < c; });
        if (it != row.end() && it->first == col) {
          const F factor = -it->second;
          row = add_scaled(row, factor, out.pivot_rows[k]);
        }
      }
    }
  }
  return out;
}

template <class F>
std::vector<SparseRow<F>> rows_of(const ExactMatrix<F>& m) {
  std::vector<SparseRow<F>> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rows;
}

template <class F>
RankProfile rank(const ExactMatrix<F>& m) {
  Echelon<F> e = echelon<F>(rows_of(m), false);
  return {e.pivots.size(), e.pivots};
}

/// Basis of {v : M v = 0}, one vector per free column, in increasing order of
/// the free column.
template <class F>
std::vector<Vector<F>> kernel_basis(const ExactMatrix<F>& m) {
  Echelon<F> e = echelon<F>(rows_of(m), true);
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t p : e.pivots) is_pivot[p] = 1;
  std::vector<Vector<F>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector<F> v(m.cols(), F(0));
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      const auto& row = e.pivot_rows[k];
      auto it = std::lower_bound(row.begin(), row.end(), f,
                                 [](const auto& x, std::size_t c) { return x.first < c; });
      if (it != row.end() && it->first == f) v[e.pivots[k]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution of A x = b, or nullopt when the system is inconsistent.
template <class F>
std::optional<Vector<F>> solve(const ExactMatrix<F>& a, std::span<const F> b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: right-hand side length differs from row count");
  const std::size_t n = a.cols();
  std::vector<SparseRow<F>> rows;
  rows.reserve(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseRow<F> row = a.row(r);
    if (!is_zero(b[r])) row.emplace_back(n, b[r]);
    rows.push_back(std::move(row));
  }
  Echelon<F> e = echelon<F>(std::move(rows), true);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  Vector<F> x(n, F(0));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) {
    const auto& row = e.pivot_rows[k];
    if (!row.empty() && row.back().first == n) x[e.pivots[k]] = row.back().second;
  }
  return x;
}

/// Inverse of a square matrix; throws SingularMatrix.
template <class F>
ExactMatrix<F> inverse(const ExactMatrix<F>& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  std::vector<SparseRow<F>> rows;
  for (std::size_t r = 0; r < n; ++r) {
    SparseRow<F> row = a.row(r);
    row.emplace_back(n + r, F(1));
    rows.push_back(std::move(row));
  }
  Echelon<F> e = echelon<F>(std::move(rows), true);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw SingularMatrix("matrix is singular");
  ExactMatrix<F> inv(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    SparseRow<F> tail;
    for (const auto& [c, v] : e.pivot_rows[k]) {
      if (c >= n) tail.emplace_back(c - n, v);
    }
    inv.set_row(k, std::move(tail));
  }
  return inv;
}

/// Incremental row-space builder. Keeps at most `ncols` rows in reduced row
/// echelon form; each inserted row is reduced against them and kept only if
/// something survives. Memory is bounded by the pivot rows plus an optional
/// fixed-capacity cache of rows already seen (exact comparison, so a hash
/// collision never drops a row).
template <class F>
class StreamingEliminator {
 public:
  explicit StreamingEliminator(std::size_t ncols, std::size_t dedup_capacity = 1u << 16)
      : ncols_(ncols), dedup_capacity_(dedup_capacity), slot_(ncols, npos), acc_(ncols) {}

  std::size_t cols() const { return ncols_; }
  std::size_t rank() const { return pivots_.size(); }
  bool full() const { return pivots_.size() == ncols_; }
  std::uint64_t rows_seen() const { return seen_; }
  std::uint64_t rows_skipped() const { return skipped_; }

  /// Returns true when the row increased the rank.
  bool insert(SparseRow<F> row) {
    ++seen_;
    if (row.empty() || full()) {
      ++skipped_;
      return false;
    }
    if (row.back().first >= ncols_) throw DimensionMismatch("streamed row longer than declared column count");
    if (dedup_capacity_ > 0 && remember(row)) {
      ++skipped_;
      return false;
    }
    // Pivot columns cancel exactly: each stored row has a 1 at its pivot and
    // zeros at every other pivot column.
    acc_.add_row(row);
    for (const auto& [c, v] : row) {
      if (slot_[c] != npos) acc_.add_scaled(rows_[slot_[c]], F(-v));
    }
    SparseRow<F> rest = acc_.take();
    if (rest.empty()) return false;
    const std::size_t col = rest.front().first;
    const F inv = F(1) / rest.front().second;
    for (auto& [c, v] : rest) v *= inv;
    for (auto& stored : rows_) {
      auto it = std::lower_bound(stored.begin(), stored.end(), col,
                                 [](const auto& e, std::size_t c) { return e.first < c; });
      if (it != stored.end() && it->first == col) {
        const F factor = -it->second;
        stored = add_scaled(stored, factor, rest);
      }
    }
    slot_[col] = rows_.size();
    rows_.push_back(std::move(rest));
    pivots_.push_back(col);
    return true;
  }

  void insert_dense(std::span<const F> row) {
    if (row.size() != ncols_) throw DimensionMismatch("streamed row has wrong length");
    insert(sparsify<F>(row));
  }

  /// Current row-space basis in RREF, sorted by pivot column.
  Echelon<F> basis() const {
    std::vector<std::size_t> order(pivots_.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    Echelon<F> e;
    for (std::size_t k : order) {
      e.pivots.push_back(pivots_[k]);
      e.pivot_rows.push_back(rows_[k]);
    }
    return e;
  }

  /// True when v is orthogonal to every row inserted so far.
  bool annihilates(std::span<const F> v) const {
    if (v.size() != ncols_) throw DimensionMismatch("vector length differs from column count");
    return std::all_of(rows_.begin(), rows_.end(), [&](const SparseRow<F>& r) { return is_zero(dot<F>(r, v)); });
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct RowHash {
    std::size_t operator()(const SparseRow<F>& r) const {
      std::size_t h = r.size();
      for (const auto& [c, v] : r) h = h * 1000003ULL ^ (c * 0x9e3779b97f4a7c15ULL) ^ hash_value(v);
      return h;
    }
  };

  // Normalizes to leading coefficient 1 and records it; true if seen before.
  bool remember(const SparseRow<F>& row) {
    SparseRow<F> key = row;
    const F inv = F(1) / key.front().second;
    for (auto& [c, v] : key) v *= inv;
    if (cache_.contains(key)) return true;
    if (cache_.size() < dedup_capacity_) cache_.emplace(std::move(key), 0);
    return false;
  }

  std::size_t ncols_;
  std::size_t dedup_capacity_;
  std::vector<std::size_t> slot_;
  std::vector<SparseRow<F>> rows_;
  std::vector<std::size_t> pivots_;
  SparseAccumulator<F> acc_;
  std::unordered_map<SparseRow<F>, char, RowHash> cache_;
  std::uint64_t seen_ = 0;
  std::uint64_t skipped_ = 0;
};

/// Rank of a row sequence that is never stored as a whole.
template <class F, class RowRange>
std::size_t streaming_rank(const RowRange& rows, std::size_t ncols) {
  StreamingEliminator<F> elim(ncols);
  for (const auto& row : rows) {
    if (row.size() != ncols) throw DimensionMismatch("streamed row has wrong length");
    elim.insert(sparsify<F>(std::span<const F>(row)));
  }
  return elim.rank();
}

/// Generator form: `produce(sink)` calls `sink(SparseRow<F>)` once per row.
template <class F>
std::size_t streaming_rank_from(const std::function<void(const std::function<void(SparseRow<F>)>&)>& produce,
                                std::size_t ncols) {
  StreamingEliminator<F> elim(ncols);
  produce([&](SparseRow<F> row) { elim.insert(std::move(row)); });
  return elim.rank();
}

extern template class ExactMatrix<Rational>;
extern template class ExactMatrix<Gaussian>;
extern template class StreamingEliminator<Rational>;
extern template class StreamingEliminator<Gaussian>;

}  // namespace nilrigid
