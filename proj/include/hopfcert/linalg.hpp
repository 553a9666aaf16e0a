#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hopfcert/coeffs.hpp"

namespace hopfcert {

// Sparse vector over an exact field: sorted (column, coefficient) pairs with
// no explicit zeros. Columns are caller-defined indices; ordering of columns
// controls pivot preference in Echelon (leftmost column first).
class SparseVec {
 public:
  SparseVec() = default;

  static SparseVec unit(int col, Scalar c);

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  int lead() const;                     // smallest column with nonzero entry
  const Scalar* at(int col) const;      // nullptr if zero
  void set(int col, Scalar c);          // c may be zero (erases)
  const std::vector<std::pair<int, Scalar>>& entries() const { return entries_; }

  void add_scaled(const SparseVec& o, const Scalar& c);  // *this += c * o
  void scale(const Scalar& c);
  // Largest column index strictly below `limit`, or nullopt.
  std::optional<int> max_col_below(int limit) const;
  bool has_support_below(int limit) const;

 private:
  std::vector<std::pair<int, Scalar>> entries_;  // sorted by column
};

// Incremental exact row echelon. Pivots are chosen in columns [0, pivot_limit);
// columns >= pivot_limit ride along (tag columns for dependency tracking).
// Residues are fully reduced against all pivots, so they are canonical
// representatives of the quotient by the row space.
class Echelon {
 public:
  explicit Echelon(int pivot_limit) : pivot_limit_(pivot_limit) {}

  // Fully reduce v against the current rows (no insertion).
  SparseVec reduce(SparseVec v) const;

  // Reduce and insert if the residue has support below pivot_limit. Returns
  // true if rank increased. If out_residue is non-null it receives the
  // residue either way.
  bool insert(SparseVec v, SparseVec* out_residue = nullptr);

  int rank() const { return static_cast<int>(rows_.size()); }
  int pivot_limit() const { return pivot_limit_; }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  int pivot_limit_;
  std::map<int, SparseVec> rows_;  // pivot column -> normalized row
};

// Rank of the span of `vectors` within columns [0, limit).
int span_rank(const std::vector<SparseVec>& vectors, int limit);

// Kernel of the linear map e_j -> images[j], as coordinate vectors of length
// images.size(). Deterministic basis (reduced against earlier kernel rows).
std::vector<std::vector<Scalar>> kernel_coords(const std::vector<SparseVec>& images, int limit,
                                               const FieldSpec& field);

// Coordinates c with target = sum c_j * vectors[j], if the target lies in the
// span (within columns [0, limit)).
std::optional<std::vector<Scalar>> solve_in_span(const std::vector<SparseVec>& vectors,
                                                 const SparseVec& target, int limit,
                                                 const FieldSpec& field);

}  // namespace hopfcert
