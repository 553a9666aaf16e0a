#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfcert/freealg.hpp"
#include "hopfcert/linalg.hpp"

namespace hopfcert {

// One summand of an ideal-membership certificate: coeff * left * rel_k * right,
// where rel_k is one of the original defining relations.
struct Cofactor {
  Scalar coeff;
  Word left;
  std::size_t relation_index;
  Word right;
};

// Oriented rule lhs -> rhs with every monomial of rhs strictly below lhs in
// the degree-lexicographic order. `provenance` certifies
//   lhs - rhs = sum_k coeff_k * left_k * relations[idx_k] * right_k.
struct RewriteRule {
  Word lhs;
  NCPoly rhs;
  std::vector<Cofactor> provenance;
};

enum class CompletionStatus { Confluent, CompleteUpToDegree };

// Record of the rewrite steps applied during one normal-form computation;
// flattened to cofactors over the original relations, so that
//   input - normal_form(input) = sum of the recorded cofactors.
struct ReductionTrace {
  std::vector<Cofactor> steps;
};

class RewriteSystem {
 public:
  static constexpr std::size_t kDefaultStepBudget = 1'000'000;

  RewriteSystem(CtxPtr ctx, std::vector<NCPoly> relations, std::vector<RewriteRule> rules,
                CompletionStatus status, int degree_cap);

  const CtxPtr& ctx() const { return ctx_; }
  const std::vector<NCPoly>& relations() const { return relations_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  CompletionStatus status() const { return status_; }
  int degree_cap() const { return degree_cap_; }

  // Degree up to which normal forms are certified unique: nullopt when the
  // system is confluent (certified at every degree), degree_cap otherwise.
  std::optional<int> certified_degree() const;
  bool covers_degree(int d) const;
  // Throws Refusal naming `purpose` when degree d is not certified.
  void require_degree(int d, const std::string& purpose) const;

  bool word_is_normal(const Word& w) const;
  // Leftmost reducible position in w together with the smallest matching rule
  // index at that position.
  std::optional<std::pair<std::size_t, std::size_t>> find_redex(const Word& w) const;

  // Deterministic normal form: repeatedly rewrites the largest reducible
  // monomial at its leftmost redex using the smallest matching rule.
  NCPoly normal_form(const NCPoly& p, ReductionTrace* trace = nullptr,
                     std::size_t step_budget = kDefaultStepBudget) const;
  TensorPoly normal_form(const TensorPoly& t, std::size_t step_budget = kDefaultStepBudget) const;

  int max_rule_degree() const;        // max degree over rule left-hand sides
  int max_relation_degree() const;    // max degree over original relations

 private:
  CtxPtr ctx_;
  std::vector<NCPoly> relations_;
  std::vector<RewriteRule> rules_;
  CompletionStatus status_;
  int degree_cap_;
};

// Diamond-lemma completion of `relations` up to `degree_cap`, with
// inter-reduction and provenance tracking. Deterministic. Throws Refusal if
// the step budget is exhausted and EngineError on malformed input.
RewriteSystem complete(CtxPtr ctx, std::vector<NCPoly> relations, int degree_cap,
                       std::size_t step_budget = 200'000);

// All normal words of degree <= degree, sorted ascending in the monomial
// order, together with a word -> column index map.
struct DegreeWindowBasis {
  int degree = 0;
  std::vector<Word> words;
  std::map<Word, int> index;

  int dim() const { return static_cast<int>(words.size()); }
  int col(const Word& w) const;                // throws EngineError if absent
  std::optional<int> col_opt(const Word& w) const;
  std::vector<int> dims_by_degree() const;     // counts per degree 0..degree
};

DegreeWindowBasis degree_basis(const RewriteSystem& rs, int degree);

// Coordinates of a normal-form polynomial in a window basis, as a sparse
// vector over the basis columns (optionally shifted by col_offset). Throws
// EngineError if a monomial of p lies outside the window.
SparseVec poly_to_vec(const NCPoly& p, const DegreeWindowBasis& window, int col_offset = 0);

// Inverse of poly_to_vec on columns [col_offset, col_offset + window.dim()).
NCPoly vec_to_poly(const SparseVec& v, const DegreeWindowBasis& window, CtxPtr ctx,
                   int col_offset = 0);

// Column layout over a wide window that lists words of degree > boundary
// first. Echelon rows whose pivot lands in the low block then span the
// intersection of the row space with the degree <= boundary window.
class SplitWindow {
 public:
  SplitWindow(const DegreeWindowBasis& big, int boundary);

  int boundary() const { return boundary_; }
  int high_count() const { return high_count_; }
  int total() const { return static_cast<int>(col_of_word_.size()); }
  const DegreeWindowBasis& big() const { return *big_; }

  SparseVec vec(const NCPoly& p) const;  // throws if p escapes the wide window
  NCPoly poly(const SparseVec& v, CtxPtr ctx) const;
  // Rows of the echelon with pivot in the low block, as polynomials: a basis
  // of (row space) ∩ (degree <= boundary window).
  std::vector<NCPoly> low_rows(const Echelon& e, CtxPtr ctx) const;

 private:
  const DegreeWindowBasis* big_;
  int boundary_;
  int high_count_ = 0;
  std::vector<int> col_of_word_;  // big basis index -> split column
  std::vector<int> word_of_col_;  // split column -> big basis index
};

}  // namespace hopfcert
