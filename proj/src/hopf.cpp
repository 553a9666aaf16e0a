#include "hopfcert/hopf.hpp"

#include <algorithm>
#include <sstream>

namespace hopfcert {

namespace {

std::string render_sides(const std::string& lhs, const std::string& rhs) {
  return "lhs = " + lhs + " ; rhs = " + rhs;
}

std::string render_pairish(const NCPoly& p, const NCPoly& q) {
  return "p = " + p.to_string() + ", q = " + q.to_string();
}

}  // namespace

HopfPresentation::HopfPresentation(std::string name, CtxPtr ctx, RewriteSystem rs,
                                   GeneratorMaps maps)
    : name_(std::move(name)), ctx_(std::move(ctx)), rs_(std::move(rs)), maps_(std::move(maps)) {
  for (const auto& t : maps_.comul)
    for (const auto& term : t.terms())
      for (const auto& leg : term.legs)
        comul_growth_ = std::max(comul_growth_, leg.degree());
  for (const auto& p : maps_.antipode) antipode_growth_ = std::max(antipode_growth_, p.degree());
  if (maps_.antipode_inv)
    for (const auto& p : *maps_.antipode_inv)
      antipode_growth_ = std::max(antipode_growth_, p.degree());
}

HopfPtr HopfPresentation::build(std::string name, CtxPtr ctx, std::vector<NCPoly> relations,
                                GeneratorMaps maps, int completion_cap) {
  const std::size_t n = ctx->alphabet.size();
  if (maps.comul.size() != n || maps.counit.size() != n || maps.antipode.size() != n)
    throw EngineError(name + ": structure maps must cover every generator");
  if (maps.antipode_inv && maps.antipode_inv->size() != n)
    throw EngineError(name + ": inverse antipode must cover every generator");
  for (const auto& t : maps.comul) {
    if (t.legs() != 2) throw EngineError(name + ": comultiplication images must have 2 legs");
    if (!same_context(t.ctx(), ctx)) throw EngineError(name + ": comul image context mismatch");
  }
  for (const auto& p : maps.antipode)
    if (!same_context(p.ctx(), ctx)) throw EngineError(name + ": antipode image context mismatch");

  RewriteSystem rs = complete(ctx, relations, completion_cap);
  HopfPresentation H(std::move(name), ctx, std::move(rs), std::move(maps));

  // The structure maps must send every defining relation to zero in the
  // quotient (tensor-square quotient for comul); otherwise they do not
  // descend and the presentation is rejected.
  for (const auto& r : H.rs_.relations()) {
    int d = r.degree();
    H.rs_.require_degree(d * H.comul_growth_, "comultiplication compatibility check");
    H.rs_.require_degree(d * H.antipode_growth_, "antipode compatibility check");
    TensorPoly dm = H.comul(r);
    if (!dm.is_zero())
      throw EngineError(H.name_ + ": comultiplication does not preserve relation " +
                        r.to_string() + " (image " + dm.to_string() + ")");
    if (!H.counit(r).is_zero())
      throw EngineError(H.name_ + ": counit does not preserve relation " + r.to_string());
    NCPoly s = H.antipode(r);
    if (!s.is_zero())
      throw EngineError(H.name_ + ": antipode does not preserve relation " + r.to_string() +
                        " (image " + s.to_string() + ")");
    if (H.has_antipode_inv()) {
      NCPoly si = H.antipode_inv(r);
      if (!si.is_zero())
        throw EngineError(H.name_ + ": inverse antipode does not preserve relation " +
                          r.to_string());
    }
  }
  if (H.has_antipode_inv()) {
    for (GenId g = 0; g < static_cast<GenId>(H.ctx_->alphabet.size()); ++g) {
      NCPoly gen = NCPoly::gen(H.ctx_, g);
      if (H.nf(H.antipode_inv(H.antipode(gen))) != gen ||
          H.nf(H.antipode(H.antipode_inv(gen))) != gen)
        throw EngineError(H.name_ +
                          ": declared inverse antipode does not invert the antipode on " +
                          H.ctx_->alphabet.symbol(g).name);
    }
  }
  return HopfPtr(new HopfPresentation(std::move(H)));
}

TensorPoly HopfPresentation::comul(const NCPoly& p) const {
  TensorPoly out = TensorPoly::zero(ctx_, 2);
  for (const auto& t : p.terms()) {
    TensorPoly prod = TensorPoly::unit(ctx_, 2);
    for (GenId g : t.word.letters) prod = prod * maps_.comul[g];
    out = out + prod.scaled(t.coeff);
  }
  return rs_.normal_form(out);
}

TensorPoly HopfPresentation::iterated_comul(const NCPoly& p, int n) const {
  if (n < 0) throw EngineError("iterated comultiplication needs n >= 0");
  TensorPoly cur = TensorPoly::from_poly(nf(p));
  for (int i = 0; i < n; ++i) {
    cur = cur.expand_leg(0, [&](const Word& w) {
      return comul(NCPoly::monomial(ctx_, w, Scalar::one(ctx_->field)));
    });
    cur = rs_.normal_form(cur);
  }
  return cur;
}

TensorPoly HopfPresentation::iterated_comul_rightmost(const NCPoly& p, int n) const {
  if (n < 0) throw EngineError("iterated comultiplication needs n >= 0");
  TensorPoly cur = TensorPoly::from_poly(nf(p));
  for (int i = 0; i < n; ++i) {
    cur = cur.expand_leg(cur.legs() - 1, [&](const Word& w) {
      return comul(NCPoly::monomial(ctx_, w, Scalar::one(ctx_->field)));
    });
    cur = rs_.normal_form(cur);
  }
  return cur;
}

Scalar HopfPresentation::counit(const NCPoly& p) const {
  Scalar out = Scalar::zero(ctx_->field);
  for (const auto& t : p.terms()) {
    Scalar prod = t.coeff;
    for (GenId g : t.word.letters) prod = prod * maps_.counit[g];
    out = out + prod;
  }
  return out;
}

NCPoly HopfPresentation::antipode(const NCPoly& p) const {
  NCPoly out = NCPoly::zero(ctx_);
  for (const auto& t : p.terms()) {
    NCPoly prod = NCPoly::constant(ctx_, t.coeff);
    for (auto it = t.word.letters.rbegin(); it != t.word.letters.rend(); ++it)
      prod = prod * maps_.antipode[*it];
    out = out + prod;
  }
  return nf(out);
}

NCPoly HopfPresentation::antipode_inv(const NCPoly& p) const {
  if (!maps_.antipode_inv)
    throw Refusal("refusal: " + name_ +
                  " declares no inverse antipode; an identity requiring it cannot be evaluated");
  NCPoly out = NCPoly::zero(ctx_);
  for (const auto& t : p.terms()) {
    NCPoly prod = NCPoly::constant(ctx_, t.coeff);
    for (auto it = t.word.letters.rbegin(); it != t.word.letters.rend(); ++it)
      prod = prod * (*maps_.antipode_inv)[*it];
    out = out + prod;
  }
  return nf(out);
}

NCPoly HopfPresentation::antipode_squared(const NCPoly& p) const { return antipode(antipode(p)); }

bool HopfPresentation::antipode_squared_is_identity() const {
  for (GenId g = 0; g < static_cast<GenId>(ctx_->alphabet.size()); ++g) {
    NCPoly gen = NCPoly::gen(ctx_, g);
    if (antipode_squared(gen) != gen) return false;
  }
  return true;
}

SweedlerContext::SweedlerContext(HopfPtr pres, SamplerConfig cfg)
    : pres_(std::move(pres)), cfg_(cfg), rng_(cfg.seed) {
  basis_ = degree_basis(pres_->rewrite(), cfg_.max_degree);
}

Word SweedlerContext::sample_word() {
  std::uniform_int_distribution<std::size_t> pick(0, basis_.words.size() - 1);
  return basis_.words[pick(rng_)];
}

Scalar SweedlerContext::sample_coeff() {
  const FieldSpec& f = pres_->ctx()->field;
  if (f.kind == FieldKind::Rationals) {
    static const std::pair<long, long> pool[]{{1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {3, 1}};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
    auto [n, d] = pool[pick(rng_)];
    return Scalar::of_fraction(f, n, d);
  }
  std::uniform_int_distribution<long> pick(1, static_cast<long>(f.characteristic) - 1);
  return Scalar::of_int(f, pick(rng_));
}

NCPoly SweedlerContext::sample() {
  std::uniform_int_distribution<int> nterms(1, cfg_.max_terms);
  NCPoly out = NCPoly::zero(pres_->ctx());
  int n = nterms(rng_);
  for (int i = 0; i < n; ++i)
    out = out + NCPoly::monomial(pres_->ctx(), sample_word(), sample_coeff());
  return out;
}

namespace {

// m(S (x) id) applied to a 2-leg tensor, or m(id (x) S) when s_on_right.
NCPoly fold_antipode_mult(const HopfPresentation& H, const TensorPoly& t, bool s_on_right,
                          bool inverse) {
  NCPoly out = NCPoly::zero(H.ctx());
  for (const auto& term : t.terms()) {
    NCPoly a = NCPoly::monomial(H.ctx(), term.legs[0], Scalar::one(H.ctx()->field));
    NCPoly b = NCPoly::monomial(H.ctx(), term.legs[1], Scalar::one(H.ctx()->field));
    NCPoly sa = s_on_right ? a : (inverse ? H.antipode_inv(a) : H.antipode(a));
    NCPoly sb = s_on_right ? (inverse ? H.antipode_inv(b) : H.antipode(b)) : b;
    out = out + (sa * sb).scaled(term.coeff);
  }
  return H.nf(out);
}

std::optional<CheckFailure> element_axioms(const HopfPresentation& H, const NCPoly& x) {
  // Coassociativity via the two placements of the second comultiplication.
  TensorPoly left = H.iterated_comul(x, 2);
  TensorPoly right = H.iterated_comul_rightmost(x, 2);
  if (left != right)
    return CheckFailure{"coassociativity", x.to_string(),
                        render_sides(left.to_string(), right.to_string())};

  // Counit laws (eps (x) id) o comul = id = (id (x) eps) o comul.
  TensorPoly dx = H.comul(x);
  auto eps_word = [&](const Word& w) {
    return H.counit(NCPoly::monomial(H.ctx(), w, Scalar::one(H.ctx()->field)));
  };
  NCPoly eps_left = H.nf(dx.contract_leg(0, eps_word).to_poly());
  NCPoly xn = H.nf(x);
  if (eps_left != xn)
    return CheckFailure{"counit-left", x.to_string(),
                        render_sides(eps_left.to_string(), xn.to_string())};
  NCPoly eps_right = H.nf(dx.contract_leg(1, eps_word).to_poly());
  if (eps_right != xn)
    return CheckFailure{"counit-right", x.to_string(),
                        render_sides(eps_right.to_string(), xn.to_string())};

  // Antipode laws m(S (x) id)comul = unit o counit = m(id (x) S)comul.
  NCPoly target = NCPoly::constant(H.ctx(), H.counit(x));
  NCPoly s_left = fold_antipode_mult(H, dx, false, false);
  if (s_left != target)
    return CheckFailure{"antipode-left", x.to_string(),
                        render_sides(s_left.to_string(), target.to_string())};
  NCPoly s_right = fold_antipode_mult(H, dx, true, false);
  if (s_right != target)
    return CheckFailure{"antipode-right", x.to_string(),
                        render_sides(s_right.to_string(), target.to_string())};

  if (H.has_antipode_inv()) {
    // Inverse-antipode laws: sum S^-1(x_(2)) x_(1) = eps(x) 1 = sum x_(2) S^-1(x_(1)).
    NCPoly inv_a = NCPoly::zero(H.ctx());
    NCPoly inv_b = NCPoly::zero(H.ctx());
    for (const auto& term : dx.terms()) {
      NCPoly a = NCPoly::monomial(H.ctx(), term.legs[0], Scalar::one(H.ctx()->field));
      NCPoly b = NCPoly::monomial(H.ctx(), term.legs[1], Scalar::one(H.ctx()->field));
      inv_a = inv_a + (H.antipode_inv(b) * a).scaled(term.coeff);
      inv_b = inv_b + (b * H.antipode_inv(a)).scaled(term.coeff);
    }
    inv_a = H.nf(inv_a);
    inv_b = H.nf(inv_b);
    if (inv_a != target)
      return CheckFailure{"inverse-antipode-left", x.to_string(),
                          render_sides(inv_a.to_string(), target.to_string())};
    if (inv_b != target)
      return CheckFailure{"inverse-antipode-right", x.to_string(),
                          render_sides(inv_b.to_string(), target.to_string())};
  }
  return std::nullopt;
}

std::optional<CheckFailure> pair_axioms(const HopfPresentation& H, const NCPoly& p,
                                        const NCPoly& q) {
  NCPoly pq = H.nf(p * q);
  TensorPoly lhs = H.comul(pq);
  TensorPoly rhs = H.rewrite().normal_form(H.comul(p) * H.comul(q));
  if (lhs != rhs)
    return CheckFailure{"comul-multiplicative", render_pairish(p, q),
                        render_sides(lhs.to_string(), rhs.to_string())};
  Scalar el = H.counit(pq);
  Scalar er = H.counit(p) * H.counit(q);
  if (el != er)
    return CheckFailure{"counit-multiplicative", render_pairish(p, q),
                        render_sides(el.to_string(), er.to_string())};
  NCPoly sl = H.antipode(pq);
  NCPoly sr = H.nf(H.antipode(q) * H.antipode(p));
  if (sl != sr)
    return CheckFailure{"antipode-antimultiplicative", render_pairish(p, q),
                        render_sides(sl.to_string(), sr.to_string())};
  return std::nullopt;
}

}  // namespace

HopfCheckReport check_hopf_axioms(const HopfPtr& Hp, const SamplerConfig& cfg) {
  const HopfPresentation& H = *Hp;
  HopfCheckReport report;
  report.checks_run = {"coassociativity",       "counit-left",
                       "counit-right",          "antipode-left",
                       "antipode-right",        "comul-multiplicative",
                       "counit-multiplicative", "antipode-antimultiplicative"};
  if (H.has_antipode_inv()) {
    report.checks_run.push_back("inverse-antipode-left");
    report.checks_run.push_back("inverse-antipode-right");
  }

  // Conservative certified-degree requirement for the whole battery: pairs
  // reach degree 2*max_degree; the antipode law multiplies an antipode image
  // (growth factor) with a remaining comul leg, hence the (growth + 1) factor.
  int d = std::max(cfg.max_degree, 2);
  int required = 2 * d * H.comul_growth() * (H.antipode_growth() + 1);
  H.rewrite().require_degree(required, "Hopf axiom battery");
  report.certified_degree_used = required;

  auto run_element = [&](const NCPoly& x) -> bool {
    auto f = element_axioms(H, x);
    ++report.samples_run;
    if (f) {
      report.pass = false;
      report.failure = std::move(f);
      return false;
    }
    return true;
  };
  auto run_pair = [&](const NCPoly& p, const NCPoly& q) -> bool {
    auto f = pair_axioms(H, p, q);
    ++report.samples_run;
    if (f) {
      report.pass = false;
      report.failure = std::move(f);
      return false;
    }
    return true;
  };

  // Exhaustive low-degree sweep: every normal word of degree <= 2.
  DegreeWindowBasis low = degree_basis(H.rewrite(), std::min(2, std::max(1, cfg.max_degree)));
  for (const auto& w : low.words)
    if (!run_element(NCPoly::monomial(H.ctx(), w, Scalar::one(H.ctx()->field)))) return report;
  for (const auto& w : low.words) {
    NCPoly a = NCPoly::monomial(H.ctx(), w, Scalar::one(H.ctx()->field));
    for (GenId g = 0; g < static_cast<GenId>(H.ctx()->alphabet.size()); ++g)
      if (!run_pair(a, NCPoly::gen(H.ctx(), g))) return report;
  }

  // Seeded random battery.
  SweedlerContext sam(Hp, cfg);
  for (int i = 0; i < cfg.samples; ++i) {
    NCPoly x = sam.sample();
    if (!run_element(x)) return report;
    NCPoly y = sam.sample();
    if (!run_pair(x, y)) return report;
  }
  return report;
}

bool action_is_right(ActionKind k) {
  return k == ActionKind::TwistLeftThenRight || k == ActionKind::TwistRightThenLeft;
}

std::string action_name(ActionKind k) {
  switch (k) {
    case ActionKind::TwistLeftThenRight: return "twist-left-then-right";
    case ActionKind::SandwichOuter: return "sandwich-outer";
    case ActionKind::SandwichOuterFlipped: return "sandwich-outer-flipped";
    case ActionKind::TwistRightThenLeft: return "twist-right-then-left";
  }
  throw EngineError("unknown action kind");
}

namespace {

NCPoly action_eval_impl(const HopfPresentation& H, ActionKind k, const NCPoly& m, const NCPoly& h,
                        bool drop_antipode) {
  TensorPoly dh = H.comul(h);
  NCPoly out = NCPoly::zero(H.ctx());
  const Scalar one = Scalar::one(H.ctx()->field);
  for (const auto& term : dh.terms()) {
    NCPoly h1 = NCPoly::monomial(H.ctx(), term.legs[0], one);
    NCPoly h2 = NCPoly::monomial(H.ctx(), term.legs[1], one);
    NCPoly piece = NCPoly::zero(H.ctx());
    switch (k) {
      case ActionKind::TwistLeftThenRight:
        piece = (drop_antipode ? h1 : H.antipode(h1)) * m * h2;
        break;
      case ActionKind::SandwichOuter:
        piece = h1 * m * (drop_antipode ? h2 : H.antipode(h2));
        break;
      case ActionKind::SandwichOuterFlipped:
        piece = h2 * m * (drop_antipode ? h1 : H.antipode(h1));
        break;
      case ActionKind::TwistRightThenLeft:
        piece = (drop_antipode ? h2 : H.antipode(h2)) * m * h1;
        break;
    }
    out = out + piece.scaled(term.coeff);
  }
  return H.nf(out);
}

}  // namespace

NCPoly action_eval(const HopfPresentation& H, ActionKind k, const NCPoly& m, const NCPoly& h) {
  return action_eval_impl(H, k, m, h, false);
}

NCPoly action_eval_dropped_antipode(const HopfPresentation& H, ActionKind k, const NCPoly& m,
                                    const NCPoly& h) {
  return action_eval_impl(H, k, m, h, true);
}

ModuleAxiomReport check_module_axiom(const HopfPtr& Hp, ActionKind k, const SamplerConfig& cfg,
                                     bool dropped_antipode) {
  const HopfPresentation& H = *Hp;
  ModuleAxiomReport report;
  int d = std::max(cfg.max_degree, 2);
  // m of degree d acted on twice by elements of degree d.
  int required = d + 2 * d * H.comul_growth() * (H.antipode_growth() + 1);
  H.rewrite().require_degree(required, "module-structure axiom battery for " + action_name(k));

  auto eval = [&](const NCPoly& m, const NCPoly& h) {
    return dropped_antipode ? action_eval_dropped_antipode(H, k, m, h) : action_eval(H, k, m, h);
  };
  auto check_triple = [&](const NCPoly& m, const NCPoly& h1, const NCPoly& h2) -> bool {
    ++report.samples_run;
    NCPoly unit_side = eval(m, NCPoly::one(H.ctx()));
    NCPoly mn = H.nf(m);
    if (unit_side != mn) {
      report.pass = false;
      report.failure = CheckFailure{action_name(k) + "-unit", m.to_string(),
                                    render_sides(unit_side.to_string(), mn.to_string())};
      return false;
    }
    // Right action: (m . h1) . h2 == m . (h1 h2); left action mirrored.
    NCPoly lhs = action_is_right(k) ? eval(eval(m, h1), h2) : eval(eval(m, h2), h1);
    NCPoly rhs = eval(m, H.nf(h1 * h2));
    if (lhs != rhs) {
      report.pass = false;
      report.failure = CheckFailure{
          action_name(k) + "-associativity",
          "m = " + m.to_string() + ", h1 = " + h1.to_string() + ", h2 = " + h2.to_string(),
          render_sides(lhs.to_string(), rhs.to_string())};
      return false;
    }
    return true;
  };

  // Exhaustive on generator triples, then sampled.
  for (GenId a = 0; a < static_cast<GenId>(H.ctx()->alphabet.size()); ++a)
    for (GenId b = 0; b < static_cast<GenId>(H.ctx()->alphabet.size()); ++b)
      for (GenId c = 0; c < static_cast<GenId>(H.ctx()->alphabet.size()); ++c)
        if (!check_triple(NCPoly::gen(H.ctx(), a), NCPoly::gen(H.ctx(), b),
                          NCPoly::gen(H.ctx(), c)))
          return report;
  SweedlerContext sam(Hp, cfg);
  for (int i = 0; i < cfg.samples; ++i)
    if (!check_triple(sam.sample(), sam.sample(), sam.sample())) return report;
  return report;
}

SubalgebraWindow::SubalgebraWindow(CtxPtr ctx, std::vector<NCPoly> spanning,
                                   DegreeWindowBasis window)
    : ctx_(std::move(ctx)),
      spanning_(std::move(spanning)),
      window_(std::move(window)),
      ech_(window_.dim()) {
  for (const auto& p : spanning_) ech_.insert(poly_to_vec(p, window_));
}

bool SubalgebraWindow::contains(const NCPoly& p) const {
  SparseVec v;
  for (const auto& t : p.terms()) {
    auto col = window_.col_opt(t.word);
    if (!col)
      throw Refusal("refusal: membership query escapes the degree-" +
                    std::to_string(window_.degree) + " window (element " + p.to_string() + ")");
    v.set(*col, t.coeff);
  }
  return ech_.reduce(v).empty();
}

NCPoly adjoint_expression(const HopfPresentation& A, int form, const NCPoly& a, const NCPoly& b) {
  TensorPoly da = A.comul(a);
  NCPoly out = NCPoly::zero(A.ctx());
  const Scalar one = Scalar::one(A.ctx()->field);
  for (const auto& term : da.terms()) {
    NCPoly a1 = NCPoly::monomial(A.ctx(), term.legs[0], one);
    NCPoly a2 = NCPoly::monomial(A.ctx(), term.legs[1], one);
    NCPoly piece = NCPoly::zero(A.ctx());
    switch (form) {
      case 0: piece = a1 * b * A.antipode(a2); break;
      case 1: piece = A.antipode(a1) * b * a2; break;
      case 2: piece = a2 * b * A.antipode_inv(a1); break;
      case 3: piece = A.antipode_inv(a2) * b * a1; break;
      default: throw EngineError("adjoint expression form must be 0..3");
    }
    out = out + piece.scaled(term.coeff);
  }
  return A.nf(out);
}

AdjointReport adjoint_stability(const HopfPtr& Ap, const SubalgebraWindow& sub,
                                const SamplerConfig& cfg) {
  const HopfPresentation& A = *Ap;
  AdjointReport report;
  int forms = A.has_antipode_inv() ? 4 : 2;
  static const char* kFormNames[] = {"a1.b.S(a2)", "S(a1).b.a2", "a2.b.Sinv(a1)",
                                     "Sinv(a2).b.a1"};
  for (int f = 0; f < forms; ++f) report.forms_checked.emplace_back(kFormNames[f]);

  auto check = [&](const NCPoly& a, const NCPoly& b) -> bool {
    for (int f = 0; f < forms; ++f) {
      ++report.samples_run;
      NCPoly val = adjoint_expression(A, f, a, b);
      if (!sub.contains(val)) {
        report.pass = false;
        report.failure =
            CheckFailure{std::string("adjoint-stability:") + kFormNames[f],
                         "a = " + a.to_string() + ", b = " + b.to_string(),
                         "value " + val.to_string() + " is outside the subalgebra window"};
        return false;
      }
    }
    return true;
  };

  // Exhaustive: every generator of A against every spanning element of the
  // subalgebra window up to the configured degree.
  for (GenId g = 0; g < static_cast<GenId>(A.ctx()->alphabet.size()); ++g) {
    NCPoly a = NCPoly::gen(A.ctx(), g);
    for (const auto& b : sub.spanning()) {
      if (b.degree() > cfg.max_degree) continue;
      if (!check(a, b)) return report;
    }
  }
  // Sampled elements of A against sampled spanning elements.
  SweedlerContext sam(Ap, cfg);
  std::mt19937_64 pick_rng(cfg.seed + 1);
  std::vector<const NCPoly*> pool;
  for (const auto& b : sub.spanning())
    if (b.degree() <= cfg.max_degree) pool.push_back(&b);
  if (!pool.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < cfg.samples; ++i)
      if (!check(sam.sample(), *pool[pick(pick_rng)])) return report;
  }
  return report;
}

namespace {

// An element of (covariable algebra) (x) H: normal covariable word -> H part.
using CoactValue = std::map<Word, NCPoly>;

void coact_add(CoactValue& acc, const Word& w, const NCPoly& h) {
  if (h.is_zero()) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, h);
  } else {
    it->second = it->second + h;
    if (it->second.is_zero()) acc.erase(it);
  }
}

std::string coact_to_string(const CtxPtr& cctx, const CoactValue& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [w, h] : v) {
    if (!out.empty()) out += " + ";
    out += word_to_string(w, cctx->alphabet) + " (x) (" + h.to_string() + ")";
  }
  return out;
}

}  // namespace

CoactionReport check_coaction(const HopfPtr& Hp, const CoactionSpec& spec,
                              const SamplerConfig& cfg) {
  const HopfPresentation& H = *Hp;
  CoactionReport report;
  const CtxPtr& cctx = spec.covar_ctx;
  if (cctx->field != H.ctx()->field)
    throw EngineError("coaction: covariable algebra and Hopf algebra must share a field");
  const std::size_t n_covars = cctx->alphabet.size();
  if (spec.rho.size() != n_covars)
    throw EngineError("coaction: need one coaction image per covariable");

  // Rewrite system for the covariable algebra.
  RewriteSystem rc = complete(cctx, spec.covar_relations, spec.cap);

  // Degree growth per covariable letter on each tensor leg.
  int covar_growth = 1, h_growth = 1;
  for (const auto& image : spec.rho) {
    for (const auto& [w, h] : image) {
      covar_growth = std::max(covar_growth, w.degree());
      if (!h.is_zero()) h_growth = std::max(h_growth, h.leading_term().word.degree());
    }
  }
  int max_rel_deg = 0;
  for (const auto& r : spec.covar_relations)
    if (!r.is_zero()) max_rel_deg = std::max(max_rel_deg, r.leading_term().word.degree());
  const int d = std::max({cfg.max_degree, max_rel_deg, 2});
  rc.require_degree(d * covar_growth, "coaction covariable reduction");
  H.rewrite().require_degree(d * h_growth * std::max(H.comul_growth(), covar_growth),
                             "coaction coefficient reduction");

  auto rho_gen = [&](GenId g) -> CoactValue {
    CoactValue out;
    for (const auto& [w, h] : spec.rho[g]) {
      NCPoly cw = rc.normal_form(NCPoly::monomial(cctx, w, Scalar::one(cctx->field)));
      NCPoly hh = H.nf(h);
      for (const auto& term : cw.terms()) coact_add(out, term.word, hh.scaled(term.coeff));
    }
    return out;
  };

  auto rho_word = [&](const Word& w) -> CoactValue {
    CoactValue acc;
    acc.emplace(Word{}, NCPoly::one(H.ctx()));
    for (GenId g : w.letters) {
      CoactValue step = rho_gen(g);
      CoactValue next;
      for (const auto& [w1, h1] : acc)
        for (const auto& [w2, h2] : step) {
          NCPoly cprod = rc.normal_form(
              NCPoly::monomial(cctx, word_concat(w1, w2), Scalar::one(cctx->field)));
          NCPoly hprod = H.nf(h1 * h2);
          for (const auto& term : cprod.terms())
            coact_add(next, term.word, hprod.scaled(term.coeff));
        }
      acc = std::move(next);
    }
    return acc;
  };

  auto rho_poly = [&](const NCPoly& p) -> CoactValue {
    CoactValue acc;
    for (const auto& term : p.terms()) {
      CoactValue part = rho_word(term.word);
      for (const auto& [w, h] : part) coact_add(acc, w, h.scaled(term.coeff));
    }
    return acc;
  };

  auto fail = [&](const std::string& check, const std::string& witness,
                  const std::string& detail) {
    report.pass = false;
    report.failure = CheckFailure{check, witness, detail};
  };

  // Algebra-map well-definedness: the coaction must kill every covariable
  // relation when extended multiplicatively.
  for (const auto& r : spec.covar_relations) {
    ++report.samples_run;
    CoactValue v = rho_poly(r);
    if (!v.empty()) {
      fail("coaction:algebra-map", "relation " + r.to_string(),
           "coaction image " + coact_to_string(cctx, v) + " is nonzero");
      return report;
    }
  }

  auto check_element = [&](const NCPoly& p_raw) -> bool {
    NCPoly p = rc.normal_form(p_raw);
    ++report.samples_run;
    CoactValue v = rho_poly(p);

    // Grading preservation: for a homogeneous input, every covariable-leg
    // word of the coaction image must have the same degree as the input.
    if (!p.is_zero()) {
      const int in_deg = p.terms().front().word.degree();
      bool homogeneous = true;
      for (const auto& term : p.terms())
        if (term.word.degree() != in_deg) { homogeneous = false; break; }
      if (homogeneous) {
        for (const auto& [w, h] : v) {
          (void)h;
          if (w.degree() != in_deg) {
            fail("coaction:grading", p.to_string(),
                 "degree-" + std::to_string(in_deg) +
                     " input produced covariable word " +
                     word_to_string(w, cctx->alphabet) + " of degree " +
                     std::to_string(w.degree()));
            return false;
          }
        }
      }
    }

    // Counit law: applying the counit to the H leg must return the element.
    {
      NCPoly back = NCPoly::zero(cctx);
      for (const auto& [w, h] : v)
        back = back + NCPoly::monomial(cctx, w, H.counit(h));
      if (!(back == p)) {
        fail("coaction:counit", p.to_string(),
             "counit collapse gives " + back.to_string());
        return false;
      }
    }

    // Coassociativity: coacting again on the covariable leg must agree with
    // comultiplying the H leg.  Both sides live in C (x) H (x) H, keyed by the
    // covariable word with a 2-leg tensor over H as value.
    std::map<Word, TensorPoly> lhs, rhs;
    auto tensor_add = [&](std::map<Word, TensorPoly>& m, const Word& w,
                          const TensorPoly& t) {
      if (t.is_zero()) return;
      auto it = m.find(w);
      if (it == m.end()) {
        m.emplace(w, t);
      } else {
        it->second = it->second + t;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (const auto& [w, h] : v) {
      CoactValue inner = rho_word(w);
      for (const auto& [u, k] : inner) tensor_add(lhs, u, TensorPoly::outer(TensorPoly::from_poly(k), TensorPoly::from_poly(h)));
      tensor_add(rhs, w, H.comul(h));
    }
    if (!(lhs == rhs)) {
      fail("coaction:coassociativity", p.to_string(),
           "coacting on the covariable leg disagrees with comultiplying the "
           "coefficient leg");
      return false;
    }
    return true;
  };

  // Exhaustive battery: all normal covariable words of degree <= 2.
  DegreeWindowBasis small = degree_basis(rc, 2);
  for (const auto& w : small.words)
    if (!check_element(NCPoly::monomial(cctx, w, Scalar::one(cctx->field))))
      return report;

  // Sampled words up to the configured degree.
  std::mt19937_64 rng(cfg.seed);
  if (n_covars > 0) {
    std::uniform_int_distribution<int> len_dist(0, cfg.max_degree);
    std::uniform_int_distribution<std::size_t> gen_dist(0, n_covars - 1);
    for (int i = 0; i < cfg.samples; ++i) {
      Word w;
      int len = len_dist(rng);
      for (int j = 0; j < len; ++j)
        w.letters.push_back(static_cast<GenId>(gen_dist(rng)));
      if (!check_element(NCPoly::monomial(cctx, w, Scalar::one(cctx->field))))
        return report;
    }
  }
  return report;
}

}  // namespace hopfcert
