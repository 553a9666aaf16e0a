#include "hopfcert/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace hopfcert {

namespace {

// p expressed over the original relations: p = sum coeff*left*rel*right.
using Certificate = std::vector<Cofactor>;

Certificate scaled(Certificate c, const Scalar& s) {
  for (auto& cf : c) cf.coeff = cf.coeff * s;
  return c;
}

Certificate framed(const Certificate& c, const Word& l, const Word& r) {
  Certificate out;
  out.reserve(c.size());
  for (const auto& cf : c)
    out.push_back({cf.coeff, word_concat(l, cf.left), cf.relation_index, word_concat(cf.right, r)});
  return out;
}

void append(Certificate& dst, const Certificate& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

bool matches_at(const Word& w, const Word& pat, std::size_t pos) {
  if (pos + pat.letters.size() > w.letters.size()) return false;
  for (std::size_t i = 0; i < pat.letters.size(); ++i)
    if (w.letters[pos + i] != pat.letters[i]) return false;
  return true;
}

Word subword(const Word& w, std::size_t from, std::size_t len) {
  Word out;
  out.letters.assign(w.letters.begin() + static_cast<std::ptrdiff_t>(from),
                     w.letters.begin() + static_cast<std::ptrdiff_t>(from + len));
  return out;
}

}  // namespace

RewriteSystem::RewriteSystem(CtxPtr ctx, std::vector<NCPoly> relations,
                             std::vector<RewriteRule> rules, CompletionStatus status,
                             int degree_cap)
    : ctx_(std::move(ctx)),
      relations_(std::move(relations)),
      rules_(std::move(rules)),
      status_(status),
      degree_cap_(degree_cap) {
  for (const auto& r : rules_) {
    if (r.lhs.degree() == 0) throw EngineError("rewrite rule with empty left-hand side");
    for (const auto& t : r.rhs.terms())
      if (word_compare(t.word, r.lhs, ctx_->alphabet) >= 0)
        throw EngineError("rewrite rule is not order-decreasing: " +
                          word_to_string(r.lhs, ctx_->alphabet));
  }
}

std::optional<int> RewriteSystem::certified_degree() const {
  if (status_ == CompletionStatus::Confluent) return std::nullopt;
  return degree_cap_;
}

bool RewriteSystem::covers_degree(int d) const {
  if (status_ == CompletionStatus::Confluent) return true;
  return d <= degree_cap_;
}

void RewriteSystem::require_degree(int d, const std::string& purpose) const {
  if (!covers_degree(d)) {
    std::ostringstream os;
    os << "refusal: " << purpose << " needs normal forms certified up to degree " << d
       << ", but completion is only certified up to degree " << degree_cap_
       << " (status: complete-up-to-degree); rerun with a higher completion cap";
    throw Refusal(os.str());
  }
}

bool RewriteSystem::word_is_normal(const Word& w) const { return !find_redex(w).has_value(); }

std::optional<std::pair<std::size_t, std::size_t>> RewriteSystem::find_redex(const Word& w) const {
  for (std::size_t pos = 0; pos < w.letters.size(); ++pos)
    for (std::size_t ri = 0; ri < rules_.size(); ++ri)
      if (matches_at(w, rules_[ri].lhs, pos)) return std::make_pair(pos, ri);
  return std::nullopt;
}

NCPoly RewriteSystem::normal_form(const NCPoly& p, ReductionTrace* trace,
                                  std::size_t step_budget) const {
  NCPoly cur = p;
  std::size_t steps = 0;
  while (true) {
    // Terms are sorted descending, so the first reducible term is the largest
    // reducible monomial.
    bool rewritten = false;
    for (const auto& t : cur.terms()) {
      auto redex = find_redex(t.word);
      if (!redex) continue;
      if (++steps > step_budget)
        throw Refusal("refusal: normal-form step budget exhausted (" +
                      std::to_string(step_budget) + " steps)");
      auto [pos, ri] = *redex;
      const RewriteRule& rule = rules_[ri];
      Word left = subword(t.word, 0, pos);
      Word right = subword(t.word, pos + rule.lhs.letters.size(),
                           t.word.letters.size() - pos - rule.lhs.letters.size());
      // c * left*lhs*right  ->  c * left*rhs*right
      NCPoly replacement =
          NCPoly::monomial(ctx_, left, t.coeff) * rule.rhs * NCPoly::monomial(ctx_, right, Scalar::one(ctx_->field));
      NCPoly removed = NCPoly::monomial(ctx_, t.word, t.coeff);
      if (trace) append(trace->steps, framed(scaled(rule.provenance, t.coeff), left, right));
      cur = cur - removed + replacement;
      rewritten = true;
      break;
    }
    if (!rewritten) return cur;
  }
}

TensorPoly RewriteSystem::normal_form(const TensorPoly& t, std::size_t step_budget) const {
  TensorPoly out = t;
  for (int leg = 0; leg < t.legs(); ++leg)
    out = out.apply_leg(leg, [&](const Word& w) {
      return normal_form(NCPoly::monomial(ctx_, w, Scalar::one(ctx_->field)), nullptr, step_budget);
    });
  return out;
}

int RewriteSystem::max_rule_degree() const {
  int m = 0;
  for (const auto& r : rules_) m = std::max(m, r.lhs.degree());
  return m;
}

int RewriteSystem::max_relation_degree() const {
  int m = 0;
  for (const auto& r : relations_) m = std::max(m, r.degree());
  return m;
}

namespace {

struct PendingPoly {
  NCPoly poly;
  Certificate cert;  // poly = sum of cert over the original relations
};

class Completer {
 public:
  Completer(CtxPtr ctx, std::vector<NCPoly> relations, int cap, std::size_t budget)
      : ctx_(std::move(ctx)), relations_(std::move(relations)), cap_(cap), budget_(budget) {}

  RewriteSystem run() {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
      const NCPoly& r = relations_[i];
      if (r.is_zero()) continue;
      if (r.degree() > cap_)
        throw EngineError("relation exceeds the completion degree cap: " + r.to_string());
      pending_.push_back({r, Certificate{{Scalar::one(ctx_->field), Word{}, i, Word{}}}});
    }
    process_pending();
    while (true) {
      auto unresolved = find_unresolved_overlap();
      if (!unresolved) break;
      pending_.push_back(std::move(*unresolved));
      process_pending();
    }
    CompletionStatus status = CompletionStatus::Confluent;
    for (std::size_t a = 0; a < rules_.size(); ++a)
      for (std::size_t b = 0; b < rules_.size(); ++b)
        if (rules_[a].lhs.degree() + rules_[b].lhs.degree() - 1 > cap_)
          status = CompletionStatus::CompleteUpToDegree;
    std::vector<RewriteRule> rules = rules_;
    return RewriteSystem(ctx_, relations_, std::move(rules), status, cap_);
  }

 private:
  void spend() {
    if (++steps_ > budget_)
      throw Refusal("refusal: completion step budget exhausted (" + std::to_string(budget_) +
                    " steps); the presentation may not terminate below the degree cap");
  }

  RewriteSystem snapshot() const {
    return RewriteSystem(ctx_, relations_, rules_, CompletionStatus::CompleteUpToDegree, cap_);
  }

  // Fully reduce p, folding the applied steps into cert.
  void reduce_pending(NCPoly& p, Certificate& cert) {
    ReductionTrace trace;
    RewriteSystem rs = snapshot();
    NCPoly nf = rs.normal_form(p, &trace);
    // p - nf = sum(trace), so nf = cert - trace over the relations.
    append(cert, scaled(std::move(trace.steps), -Scalar::one(ctx_->field)));
    p = std::move(nf);
  }

  void process_pending() {
    while (!pending_.empty()) {
      spend();
      PendingPoly item = std::move(pending_.front());
      pending_.pop_front();
      reduce_pending(item.poly, item.cert);
      if (item.poly.is_zero()) continue;
      if (item.poly.degree() > cap_)
        throw EngineError("completion produced an element above the degree cap: " +
                          item.poly.to_string());
      add_rule(std::move(item));
    }
  }

  void add_rule(PendingPoly item) {
    const NCPoly::Term& lt = item.poly.leading_term();
    Scalar inv = lt.coeff.inverse();
    NCPoly monic = item.poly.scaled(inv);
    NCPoly rhs = NCPoly::monomial(ctx_, lt.word, Scalar::one(ctx_->field)) - monic;
    RewriteRule rule{lt.word, std::move(rhs), scaled(std::move(item.cert), inv)};

    // Retire any rule whose left-hand side contains the new lhs; its content
    // re-enters the queue and will be re-oriented in reduced form.
    std::vector<RewriteRule> kept;
    for (auto& r : rules_) {
      bool contains = false;
      for (std::size_t pos = 0; pos + rule.lhs.letters.size() <= r.lhs.letters.size(); ++pos)
        if (matches_at(r.lhs, rule.lhs, pos)) {
          contains = true;
          break;
        }
      if (!contains) {
        kept.push_back(std::move(r));
      } else {
        NCPoly diff = NCPoly::monomial(ctx_, r.lhs, Scalar::one(ctx_->field)) - r.rhs;
        pending_.push_back({std::move(diff), std::move(r.provenance)});
      }
    }
    rules_ = std::move(kept);
    rules_.push_back(std::move(rule));

    // Keep right-hand sides reduced against the current rule set.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < rules_.size(); ++i) {
        spend();
        ReductionTrace trace;
        RewriteSystem rs = snapshot();
        NCPoly nf = rs.normal_form(rules_[i].rhs, &trace);
        if (!trace.steps.empty()) {
          // lhs - nf(rhs) = (lhs - rhs) + (rhs - nf(rhs)).
          append(rules_[i].provenance, trace.steps);
          rules_[i].rhs = std::move(nf);
          changed = true;
        }
      }
    }
  }

  // First unresolved overlap ambiguity of degree <= cap, by (rule index a,
  // rule index b, overlap length) in deterministic order; nullopt if all
  // in-cap overlaps resolve.
  std::optional<PendingPoly> find_unresolved_overlap() {
    RewriteSystem rs = snapshot();
    for (std::size_t a = 0; a < rules_.size(); ++a) {
      for (std::size_t b = 0; b < rules_.size(); ++b) {
        const Word& u = rules_[a].lhs;
        const Word& v = rules_[b].lhs;
        std::size_t maxk = std::min(u.letters.size(), v.letters.size()) - 1;
        for (std::size_t k = 1; k <= maxk; ++k) {
          spend();
          // suffix of u of length k == prefix of v of length k?
          bool match = true;
          for (std::size_t i = 0; i < k; ++i)
            if (u.letters[u.letters.size() - k + i] != v.letters[i]) {
              match = false;
              break;
            }
          if (!match) continue;
          int overlap_deg =
              static_cast<int>(u.letters.size() + v.letters.size() - k);
          if (overlap_deg > cap_) continue;
          Word u_pre = subword(u, 0, u.letters.size() - k);
          Word v_suf = subword(v, k, v.letters.size() - k);
          // The overlap word u_pre*v[k:]*... reduces two ways; the difference
          //   delta = rhs_a * v_suf - u_pre * rhs_b
          // lies in the ideal with certificate u_pre*cert_b - cert_a*v_suf.
          NCPoly one_right = NCPoly::monomial(ctx_, v_suf, Scalar::one(ctx_->field));
          NCPoly one_left = NCPoly::monomial(ctx_, u_pre, Scalar::one(ctx_->field));
          NCPoly delta = rules_[a].rhs * one_right - one_left * rules_[b].rhs;
          Certificate cert = framed(rules_[b].provenance, u_pre, Word{});
          append(cert, scaled(framed(rules_[a].provenance, Word{}, v_suf),
                              -Scalar::one(ctx_->field)));
          ReductionTrace trace;
          NCPoly nf = rs.normal_form(delta, &trace);
          if (nf.is_zero()) continue;
          append(cert, scaled(std::move(trace.steps), -Scalar::one(ctx_->field)));
          return PendingPoly{std::move(nf), std::move(cert)};
        }
      }
    }
    return std::nullopt;
  }

  CtxPtr ctx_;
  std::vector<NCPoly> relations_;
  int cap_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::vector<RewriteRule> rules_;
  std::deque<PendingPoly> pending_;
};

}  // namespace

RewriteSystem complete(CtxPtr ctx, std::vector<NCPoly> relations, int degree_cap,
                       std::size_t step_budget) {
  if (degree_cap < 1) throw EngineError("completion degree cap must be positive");
  for (const auto& r : relations)
    if (!same_context(r.ctx(), ctx)) throw EngineError("relation from a different context");
  return Completer(std::move(ctx), std::move(relations), degree_cap, step_budget).run();
}

int DegreeWindowBasis::col(const Word& w) const {
  auto it = index.find(w);
  if (it == index.end())
    throw EngineError("word outside the degree window (degree " + std::to_string(degree) + ")");
  return it->second;
}

std::optional<int> DegreeWindowBasis::col_opt(const Word& w) const {
  auto it = index.find(w);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<int> DegreeWindowBasis::dims_by_degree() const {
  std::vector<int> out(static_cast<std::size_t>(degree) + 1, 0);
  for (const auto& w : words) out[static_cast<std::size_t>(w.degree())]++;
  return out;
}

DegreeWindowBasis degree_basis(const RewriteSystem& rs, int degree) {
  rs.require_degree(degree, "degree-window basis enumeration");
  const auto& alph = rs.ctx()->alphabet;
  int max_lhs = rs.max_rule_degree();

  DegreeWindowBasis out;
  out.degree = degree;
  std::vector<Word> level{Word{}};
  out.words.push_back(Word{});
  for (int d = 1; d <= degree; ++d) {
    std::vector<Word> next;
    for (const auto& w : level) {
      for (GenId g = 0; g < static_cast<GenId>(alph.size()); ++g) {
        Word cand = w;
        cand.letters.push_back(g);
        // w is normal, so any redex in cand must end at the final letter:
        // check suffixes up to the longest rule lhs.
        bool normal = true;
        std::size_t longest = std::min<std::size_t>(cand.letters.size(),
                                                    static_cast<std::size_t>(max_lhs));
        for (std::size_t len = 1; len <= longest && normal; ++len) {
          Word suf = subword(cand, cand.letters.size() - len, len);
          for (const auto& rule : rs.rules())
            if (rule.lhs == suf) {
              normal = false;
              break;
            }
        }
        if (normal) next.push_back(std::move(cand));
      }
    }
    std::sort(next.begin(), next.end(), [&](const Word& a, const Word& b) {
      return word_compare(a, b, alph) < 0;
    });
    for (const auto& w : next) out.words.push_back(w);
    level = std::move(next);
  }
  for (int i = 0; i < static_cast<int>(out.words.size()); ++i)
    out.index.emplace(out.words[static_cast<std::size_t>(i)], i);
  return out;
}

SparseVec poly_to_vec(const NCPoly& p, const DegreeWindowBasis& window, int col_offset) {
  SparseVec v;
  for (const auto& t : p.terms()) v.set(col_offset + window.col(t.word), t.coeff);
  return v;
}

NCPoly vec_to_poly(const SparseVec& v, const DegreeWindowBasis& window, CtxPtr ctx,
                   int col_offset) {
  NCPoly out = NCPoly::zero(ctx);
  for (const auto& [col, c] : v.entries()) {
    int idx = col - col_offset;
    if (idx < 0 || idx >= window.dim()) throw EngineError("vector entry outside the window");
    out = out + NCPoly::monomial(ctx, window.words[static_cast<std::size_t>(idx)], c);
  }
  return out;
}

SplitWindow::SplitWindow(const DegreeWindowBasis& big, int boundary)
    : big_(&big), boundary_(boundary) {
  const int n = big.dim();
  col_of_word_.assign(static_cast<std::size_t>(n), -1);
  word_of_col_.assign(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int i = 0; i < n; ++i)
    if (big.words[static_cast<std::size_t>(i)].degree() > boundary) {
      col_of_word_[static_cast<std::size_t>(i)] = next;
      word_of_col_[static_cast<std::size_t>(next)] = i;
      ++next;
    }
  high_count_ = next;
  for (int i = 0; i < n; ++i)
    if (col_of_word_[static_cast<std::size_t>(i)] < 0) {
      col_of_word_[static_cast<std::size_t>(i)] = next;
      word_of_col_[static_cast<std::size_t>(next)] = i;
      ++next;
    }
}

SparseVec SplitWindow::vec(const NCPoly& p) const {
  SparseVec v;
  for (const auto& t : p.terms())
    v.set(col_of_word_[static_cast<std::size_t>(big_->col(t.word))], t.coeff);
  return v;
}

NCPoly SplitWindow::poly(const SparseVec& v, CtxPtr ctx) const {
  NCPoly out = NCPoly::zero(ctx);
  for (const auto& [col, c] : v.entries())
    out = out +
          NCPoly::monomial(ctx, big_->words[static_cast<std::size_t>(word_of_col_[static_cast<std::size_t>(col)])], c);
  return out;
}

std::vector<NCPoly> SplitWindow::low_rows(const Echelon& e, CtxPtr ctx) const {
  std::vector<NCPoly> out;
  for (const auto& [pivot, row] : e.rows())
    if (pivot >= high_count_) out.push_back(poly(row, ctx));
  return out;
}

}  // namespace hopfcert
