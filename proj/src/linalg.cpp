#include "hopfcert/linalg.hpp"

#include <algorithm>

namespace hopfcert {

SparseVec SparseVec::unit(int col, Scalar c) {
  SparseVec v;
  if (!c.is_zero()) v.entries_.emplace_back(col, std::move(c));
  return v;
}

int SparseVec::lead() const {
  if (entries_.empty()) throw EngineError("lead() of zero vector");
  return entries_.front().first;
}

const Scalar* SparseVec::at(int col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  if (it != entries_.end() && it->first == col) return &it->second;
  return nullptr;
}

void SparseVec::set(int col, Scalar c) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), col,
                             [](const auto& e, int cc) { return e.first < cc; });
  if (it != entries_.end() && it->first == col) {
    if (c.is_zero())
      entries_.erase(it);
    else
      it->second = std::move(c);
  } else if (!c.is_zero()) {
    entries_.insert(it, {col, std::move(c)});
  }
}

void SparseVec::add_scaled(const SparseVec& o, const Scalar& c) {
  if (c.is_zero() || o.entries_.empty()) return;
  std::vector<std::pair<int, Scalar>> merged;
  merged.reserve(entries_.size() + o.entries_.size());
  std::size_t i = 0, j = 0;
  while (i < entries_.size() || j < o.entries_.size()) {
    if (j == o.entries_.size() ||
        (i < entries_.size() && entries_[i].first < o.entries_[j].first)) {
      merged.push_back(entries_[i++]);
    } else if (i == entries_.size() || o.entries_[j].first < entries_[i].first) {
      merged.emplace_back(o.entries_[j].first, o.entries_[j].second * c);
      ++j;
    } else {
      Scalar s = entries_[i].second + o.entries_[j].second * c;
      if (!s.is_zero()) merged.emplace_back(entries_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  entries_ = std::move(merged);
}

void SparseVec::scale(const Scalar& c) {
  if (c.is_zero()) {
    entries_.clear();
    return;
  }
  for (auto& e : entries_) e.second = e.second * c;
}

std::optional<int> SparseVec::max_col_below(int limit) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), limit,
                             [](const auto& e, int c) { return e.first < c; });
  if (it == entries_.begin()) return std::nullopt;
  return std::prev(it)->first;
}

bool SparseVec::has_support_below(int limit) const {
  return !entries_.empty() && entries_.front().first < limit;
}

SparseVec Echelon::reduce(SparseVec v) const {
  // One left-to-right pass: eliminating at column c only touches columns > c
  // because stored rows are normalized with leading column c.
  std::size_t i = 0;
  while (i < v.entries().size()) {
    int col = v.entries()[i].first;
    if (col >= pivot_limit_) break;
    auto it = rows_.find(col);
    if (it == rows_.end()) {
      ++i;
      continue;
    }
    Scalar coeff = v.entries()[i].second;
    v.add_scaled(it->second, -coeff);  // removes the entry at `col`
  }
  return v;
}

bool Echelon::insert(SparseVec v, SparseVec* out_residue) {
  SparseVec r = reduce(std::move(v));
  if (!r.has_support_below(pivot_limit_)) {
    if (out_residue) *out_residue = std::move(r);
    return false;
  }
  int p = r.lead();
  const Scalar* lc = r.at(p);
  r.scale(lc->inverse());
  if (out_residue) *out_residue = r;
  rows_.emplace(p, std::move(r));
  return true;
}

int span_rank(const std::vector<SparseVec>& vectors, int limit) {
  Echelon e(limit);
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

std::vector<std::vector<Scalar>> kernel_coords(const std::vector<SparseVec>& images, int limit,
                                               const FieldSpec& field) {
  Echelon e(limit);
  std::vector<std::vector<Scalar>> kernel;
  const int n = static_cast<int>(images.size());
  for (int j = 0; j < n; ++j) {
    SparseVec row = images[static_cast<std::size_t>(j)];
    row.set(limit + j, Scalar::one(field));
    SparseVec residue;
    if (!e.insert(std::move(row), &residue)) {
      std::vector<Scalar> coords(static_cast<std::size_t>(n), Scalar::zero(field));
      for (const auto& [col, c] : residue.entries()) {
        if (col < limit) throw EngineError("kernel residue has support below limit");
        coords[static_cast<std::size_t>(col - limit)] = c;
      }
      kernel.push_back(std::move(coords));
    }
  }
  return kernel;
}

std::optional<std::vector<Scalar>> solve_in_span(const std::vector<SparseVec>& vectors,
                                                 const SparseVec& target, int limit,
                                                 const FieldSpec& field) {
  Echelon e(limit);
  const int n = static_cast<int>(vectors.size());
  for (int j = 0; j < n; ++j) {
    SparseVec row = vectors[static_cast<std::size_t>(j)];
    row.set(limit + j, Scalar::one(field));
    e.insert(std::move(row));
  }
  SparseVec residue = e.reduce(target);
  if (residue.has_support_below(limit)) return std::nullopt;
  // target - sum(lambda_r * row_r) = residue; rows carry tag e_j, the target
  // carries tag 0, so coords_j = -(residue tag_j).
  std::vector<Scalar> coords(static_cast<std::size_t>(n), Scalar::zero(field));
  for (const auto& [col, c] : residue.entries()) {
    if (col < limit) throw EngineError("solve residue has support below limit");
    coords[static_cast<std::size_t>(col - limit)] = -c;
  }
  return coords;
}

}  // namespace hopfcert
