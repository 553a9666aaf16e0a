#include "hopfcert/exactseq.hpp"

#include <algorithm>

namespace hopfcert {

HopfMorphism HopfMorphism::build(std::string name, HopfPtr src, HopfPtr tgt,
                                 std::vector<NCPoly> gen_images) {
  HopfMorphism f;
  f.name_ = std::move(name);
  f.src_ = std::move(src);
  f.tgt_ = std::move(tgt);
  f.gen_images_ = std::move(gen_images);
  if (f.src_->ctx()->field != f.tgt_->ctx()->field)
    throw EngineError(f.name_ + ": source and target coefficient fields differ");
  if (f.gen_images_.size() != f.src_->ctx()->alphabet.size())
    throw EngineError(f.name_ + ": morphism must map every generator of the source");
  for (auto& img : f.gen_images_) {
    if (!same_context(img.ctx(), f.tgt_->ctx()))
      throw EngineError(f.name_ + ": generator image lives in the wrong algebra");
    img = f.tgt_->nf(img);
    f.growth_ = std::max(f.growth_, img.degree());
  }

  // Relations of the source must die in the target.
  for (const auto& r : f.src_->rewrite().relations()) {
    NCPoly img = f.apply(r);
    if (!img.is_zero())
      throw EngineError(f.name_ + ": image of relation " + r.to_string() +
                        " is nonzero in the target: " + img.to_string());
  }

  // Hopf compatibility on generators: comul, counit, antipode.
  const auto& alph = f.src_->ctx()->alphabet;
  for (GenId g = 0; g < static_cast<GenId>(alph.size()); ++g) {
    NCPoly gen = NCPoly::gen(f.src_->ctx(), g);
    const NCPoly& img = f.gen_images_[g];
    TensorPoly lhs = f.tgt_->comul(img);
    TensorPoly src_comul = f.src_->comul(gen);
    TensorPoly rhs = TensorPoly::zero(f.tgt_->ctx(), 2);
    for (const auto& term : src_comul.terms()) {
      TensorPoly piece = TensorPoly::outer(TensorPoly::from_poly(f.apply_word(term.legs[0])),
                                           TensorPoly::from_poly(f.apply_word(term.legs[1])));
      rhs = rhs + piece.scaled(term.coeff);
    }
    rhs = f.tgt_->rewrite().normal_form(rhs);
    if (lhs != rhs)
      throw EngineError(f.name_ + ": comultiplication compatibility fails on generator " +
                        alph.symbol(g).name);
    if (f.tgt_->counit(img) != f.src_->counit(gen))
      throw EngineError(f.name_ + ": counit compatibility fails on generator " +
                        alph.symbol(g).name);
    NCPoly s_lhs = f.tgt_->antipode(img);
    NCPoly s_rhs = f.apply(f.src_->antipode(gen));
    if (s_lhs != s_rhs)
      throw EngineError(f.name_ + ": antipode compatibility fails on generator " +
                        alph.symbol(g).name);
  }
  return f;
}

NCPoly HopfMorphism::apply_word(const Word& w) const {
  NCPoly out = NCPoly::one(tgt_->ctx());
  for (GenId g : w.letters) out = out * gen_images_[g];
  return tgt_->nf(out);
}

NCPoly HopfMorphism::apply(const NCPoly& p) const {
  NCPoly out = NCPoly::zero(tgt_->ctx());
  for (const auto& t : p.terms()) out = out + apply_word(t.word).scaled(t.coeff);
  return tgt_->nf(out);
}

SequenceSpec SequenceSpec::build(std::string name, HopfPtr base, HopfPtr total, HopfPtr quotient,
                                 HopfMorphism incl, HopfMorphism proj,
                                 std::vector<GenId> witness_gens) {
  if (incl.src() != base || incl.tgt() != total)
    throw EngineError(name + ": inclusion must map the base into the total algebra");
  if (proj.src() != total || proj.tgt() != quotient)
    throw EngineError(name + ": projection must map the total algebra onto the quotient");
  // proj o incl = unit o counit, checked on base generators.
  const auto& alph = base->ctx()->alphabet;
  for (GenId g = 0; g < static_cast<GenId>(alph.size()); ++g) {
    NCPoly through = proj.apply(incl.gen_images()[g]);
    NCPoly expected =
        NCPoly::constant(quotient->ctx(), base->counit(NCPoly::gen(base->ctx(), g)));
    if (through != expected)
      throw EngineError(name + ": composite of inclusion and projection is not trivial on " +
                        alph.symbol(g).name + " (got " + through.to_string() + ")");
  }
  for (GenId g : witness_gens)
    if (g >= total->ctx()->alphabet.size())
      throw EngineError(name + ": witness generator index out of range");
  return SequenceSpec{std::move(name),
                      std::move(base),
                      std::move(total),
                      std::move(quotient),
                      std::move(incl),
                      std::move(proj),
                      std::move(witness_gens)};
}

std::vector<Word> SequenceSpec::witness_words(int degree) const {
  const RewriteSystem& rs = total->rewrite();
  rs.require_degree(degree, "freeness witness enumeration");
  std::vector<Word> out{Word{}};
  std::vector<Word> level{Word{}};
  for (int d = 1; d <= degree; ++d) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (GenId g : witness_gens) {
        Word cand = w;
        cand.letters.push_back(g);
        if (rs.word_is_normal(cand)) next.push_back(std::move(cand));
      }
    std::sort(next.begin(), next.end(), [&](const Word& a, const Word& b) {
      return word_compare(a, b, total->ctx()->alphabet) < 0;
    });
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

namespace {

// Inclusion of span(lhs) in span(rhs) within a common coordinate space.
InclusionCert span_inclusion(const std::vector<SparseVec>& lhs, const std::vector<SparseVec>& rhs,
                             int limit, const DegreeWindowBasis& window, CtxPtr ctx) {
  Echelon e(limit);
  for (const auto& v : rhs) e.insert(v);
  for (const auto& v : lhs) {
    SparseVec residue = e.reduce(v);
    if (!residue.empty()) {
      InclusionCert cert;
      cert.holds = false;
      cert.witness = vec_to_poly(v, window, ctx).to_string();
      return cert;
    }
  }
  return InclusionCert{};
}

}  // namespace

InjectivityCert check_injectivity(const HopfMorphism& incl, int degree) {
  InjectivityCert cert;
  cert.degree = degree;
  const HopfPtr& B = incl.src();
  const HopfPtr& A = incl.tgt();
  DegreeWindowBasis wb = degree_basis(B->rewrite(), degree);
  DegreeWindowBasis wa = degree_basis(A->rewrite(), degree * incl.degree_growth());
  cert.domain_dim = wb.dim();
  std::vector<SparseVec> images;
  images.reserve(wb.words.size());
  for (const auto& w : wb.words) images.push_back(poly_to_vec(incl.apply_word(w), wa));
  auto kernel = kernel_coords(images, wa.dim(), B->ctx()->field);
  cert.image_rank = wb.dim() - static_cast<int>(kernel.size());
  cert.pass = kernel.empty();
  if (!kernel.empty()) {
    NCPoly witness = NCPoly::zero(B->ctx());
    for (std::size_t j = 0; j < kernel.front().size(); ++j)
      witness = witness + NCPoly::monomial(B->ctx(), wb.words[j], kernel.front()[j]);
    cert.kernel_witness = witness.to_string();
  }
  return cert;
}

SurjectivityCert check_surjectivity(const HopfMorphism& proj, int degree, int search_degree) {
  SurjectivityCert cert;
  cert.degree = degree;
  cert.search_degree = search_degree;
  const HopfPtr& A = proj.src();
  const HopfPtr& H = proj.tgt();
  DegreeWindowBasis wa = degree_basis(A->rewrite(), search_degree);
  DegreeWindowBasis wh = degree_basis(H->rewrite(), search_degree * proj.degree_growth());
  Echelon e(wh.dim());
  for (const auto& w : wa.words) e.insert(poly_to_vec(proj.apply_word(w), wh));
  DegreeWindowBasis target = degree_basis(H->rewrite(), degree);
  for (const auto& h : target.words) {
    SparseVec residue = e.reduce(poly_to_vec(
        NCPoly::monomial(H->ctx(), h, Scalar::one(H->ctx()->field)), wh));
    if (!residue.empty()) cert.unreached.push_back(word_to_string(h, H->ctx()->alphabet));
  }
  cert.pass = cert.unreached.empty();
  return cert;
}

namespace {

// Augmentation-shifted images z = nf(incl(b)) - counit(b) * 1 for every base
// window word b, paired with the degree bound of z (for product budgeting).
std::vector<NCPoly> augmentation_images(const SequenceSpec& seq, int degree) {
  DegreeWindowBasis wb = degree_basis(seq.base->rewrite(), degree);
  std::vector<NCPoly> out;
  const Scalar one = Scalar::one(seq.base->ctx()->field);
  for (const auto& b : wb.words) {
    Scalar eps = seq.base->counit(NCPoly::monomial(seq.base->ctx(), b, one));
    NCPoly z = seq.incl.apply_word(b) - NCPoly::constant(seq.total->ctx(), eps);
    z = seq.total->nf(z);
    if (!z.is_zero()) out.push_back(std::move(z));
  }
  return out;
}

}  // namespace

KernelConditionCert check_kernel_condition(const SequenceSpec& seq, int degree, int slack) {
  KernelConditionCert cert;
  cert.degree = degree;
  cert.slack = slack;
  const HopfPtr& A = seq.total;
  const HopfPtr& H = seq.quotient;
  const int wide = degree + slack;

  DegreeWindowBasis wa = degree_basis(A->rewrite(), degree);
  DegreeWindowBasis wh = degree_basis(H->rewrite(), degree * seq.proj.degree_growth());
  // Kernel of the projection restricted to the window.
  std::vector<SparseVec> images;
  for (const auto& w : wa.words) images.push_back(poly_to_vec(seq.proj.apply_word(w), wh));
  auto kernel = kernel_coords(images, wh.dim(), A->ctx()->field);
  std::vector<SparseVec> kvecs;
  for (const auto& coords : kernel) {
    SparseVec v;
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (!coords[j].is_zero()) v.set(static_cast<int>(j), coords[j]);
    kvecs.push_back(std::move(v));
  }
  cert.kernel_dim = static_cast<int>(kvecs.size());

  // Windowed one-sided ideal spans generated by the augmentation images.
  DegreeWindowBasis wbig = degree_basis(A->rewrite(), wide);
  SplitWindow split(wbig, degree);
  std::vector<NCPoly> zs = augmentation_images(seq, wide);
  Echelon left(split.total());   // span of a * z
  Echelon right(split.total());  // span of z * a
  for (const auto& z : zs) {
    int zdeg = z.degree();
    for (const auto& a : wbig.words) {
      if (a.degree() + zdeg > wide) continue;
      NCPoly am = NCPoly::monomial(A->ctx(), a, Scalar::one(A->ctx()->field));
      left.insert(split.vec(A->nf(am * z)));
      right.insert(split.vec(A->nf(z * am)));
    }
  }
  std::vector<SparseVec> lvecs, rvecs;
  for (const auto& p : split.low_rows(left, A->ctx())) lvecs.push_back(poly_to_vec(p, wa));
  for (const auto& p : split.low_rows(right, A->ctx())) rvecs.push_back(poly_to_vec(p, wa));
  cert.left_ideal_dim = static_cast<int>(lvecs.size());
  cert.right_ideal_dim = static_cast<int>(rvecs.size());

  cert.kernel_in_left = span_inclusion(kvecs, lvecs, wa.dim(), wa, A->ctx());
  cert.left_in_kernel = span_inclusion(lvecs, kvecs, wa.dim(), wa, A->ctx());
  cert.kernel_in_right = span_inclusion(kvecs, rvecs, wa.dim(), wa, A->ctx());
  cert.right_in_kernel = span_inclusion(rvecs, kvecs, wa.dim(), wa, A->ctx());
  cert.pass = cert.kernel_in_left.holds && cert.left_in_kernel.holds &&
              cert.kernel_in_right.holds && cert.right_in_kernel.holds;
  return cert;
}

CoinvariantsCert check_coinvariants(const SequenceSpec& seq, int degree, int slack) {
  CoinvariantsCert cert;
  cert.degree = degree;
  cert.slack = slack;
  const HopfPtr& A = seq.total;
  const HopfPtr& H = seq.quotient;
  const Scalar one = Scalar::one(A->ctx()->field);

  DegreeWindowBasis wa = degree_basis(A->rewrite(), degree);
  int leg_deg = degree * A->comul_growth();
  DegreeWindowBasis wleg = degree_basis(A->rewrite(), leg_deg);
  DegreeWindowBasis wh = degree_basis(H->rewrite(), leg_deg * seq.proj.degree_growth());
  const int pair_cols = wleg.dim() * wh.dim();
  auto pair_col = [&](int acol, int hcol) { return acol * wh.dim() + hcol; };

  // Right coinvariants: solutions of sum a_(1) (x) proj(a_(2)) = a (x) 1.
  std::vector<SparseVec> right_rows;
  for (const auto& w : wa.words) {
    NCPoly aw = NCPoly::monomial(A->ctx(), w, one);
    TensorPoly da = A->comul(aw);
    SparseVec row;
    for (const auto& term : da.terms()) {
      NCPoly h = seq.proj.apply_word(term.legs[1]);
      int acol = wleg.col(term.legs[0]);
      for (const auto& ht : h.terms()) {
        int col = pair_col(acol, wh.col(ht.word));
        const Scalar* cur = row.at(col);
        Scalar next = (cur ? *cur : Scalar::zero(A->ctx()->field)) + term.coeff * ht.coeff;
        row.set(col, next);
      }
    }
    // subtract a (x) 1
    int col = pair_col(wleg.col(w), wh.col(Word{}));
    const Scalar* cur = row.at(col);
    row.set(col, (cur ? *cur : Scalar::zero(A->ctx()->field)) - one);
    right_rows.push_back(std::move(row));
  }
  auto right_kernel = kernel_coords(right_rows, pair_cols, A->ctx()->field);

  // Left coinvariants: sum proj(a_(1)) (x) a_(2) = 1 (x) a.
  std::vector<SparseVec> left_rows;
  for (const auto& w : wa.words) {
    NCPoly aw = NCPoly::monomial(A->ctx(), w, one);
    TensorPoly da = A->comul(aw);
    SparseVec row;
    for (const auto& term : da.terms()) {
      NCPoly h = seq.proj.apply_word(term.legs[0]);
      int acol = wleg.col(term.legs[1]);
      for (const auto& ht : h.terms()) {
        int col = pair_col(acol, wh.col(ht.word));
        const Scalar* cur = row.at(col);
        Scalar next = (cur ? *cur : Scalar::zero(A->ctx()->field)) + term.coeff * ht.coeff;
        row.set(col, next);
      }
    }
    int col = pair_col(wleg.col(w), wh.col(Word{}));
    const Scalar* cur = row.at(col);
    row.set(col, (cur ? *cur : Scalar::zero(A->ctx()->field)) - one);
    left_rows.push_back(std::move(row));
  }
  auto left_kernel = kernel_coords(left_rows, pair_cols, A->ctx()->field);

  auto to_vecs = [&](const std::vector<std::vector<Scalar>>& kernel) {
    std::vector<SparseVec> out;
    for (const auto& coords : kernel) {
      SparseVec v;
      for (std::size_t j = 0; j < coords.size(); ++j)
        if (!coords[j].is_zero()) v.set(static_cast<int>(j), coords[j]);
      out.push_back(std::move(v));
    }
    return out;
  };
  std::vector<SparseVec> rvecs = to_vecs(right_kernel);
  std::vector<SparseVec> lvecs = to_vecs(left_kernel);
  cert.right_coinv_dim = static_cast<int>(rvecs.size());
  cert.left_coinv_dim = static_cast<int>(lvecs.size());

  // Windowed image of the base subalgebra.
  std::vector<SparseVec> ivecs;
  DegreeWindowBasis wb = degree_basis(seq.base->rewrite(), degree + slack);
  Echelon image_ech(wa.dim());
  for (const auto& b : wb.words) {
    NCPoly img = seq.incl.apply_word(b);
    if (img.is_zero()) continue;
    if (img.degree() > degree) continue;
    SparseVec v = poly_to_vec(img, wa);
    if (image_ech.insert(v)) ivecs.push_back(std::move(v));
  }
  cert.image_dim = static_cast<int>(ivecs.size());

  cert.image_in_right = span_inclusion(ivecs, rvecs, wa.dim(), wa, A->ctx());
  cert.right_in_image = span_inclusion(rvecs, ivecs, wa.dim(), wa, A->ctx());
  cert.image_in_left = span_inclusion(ivecs, lvecs, wa.dim(), wa, A->ctx());
  cert.left_in_image = span_inclusion(lvecs, ivecs, wa.dim(), wa, A->ctx());
  cert.pass = cert.image_in_right.holds && cert.right_in_image.holds &&
              cert.image_in_left.holds && cert.left_in_image.holds;
  return cert;
}

FreenessCert check_freeness(const SequenceSpec& seq, int degree) {
  FreenessCert cert;
  cert.degree = degree;
  const HopfPtr& A = seq.total;
  DegreeWindowBasis wa = degree_basis(A->rewrite(), degree);
  cert.window_dim = wa.dim();
  DegreeWindowBasis wb = degree_basis(seq.base->rewrite(), degree);
  std::vector<Word> wit = seq.witness_words(degree);

  const int gi = seq.incl.degree_growth();
  Echelon e(wa.dim());
  std::vector<std::pair<std::string, SparseVec>> products;
  for (const auto& b : wb.words) {
    NCPoly ib = seq.incl.apply_word(b);
    for (const auto& w : wit) {
      if (gi * b.degree() + w.degree() > degree) continue;
      NCPoly prod = A->nf(ib * NCPoly::monomial(A->ctx(), w, Scalar::one(A->ctx()->field)));
      std::string label = "incl(" + word_to_string(b, seq.base->ctx()->alphabet) + ") * " +
                          word_to_string(w, A->ctx()->alphabet);
      products.emplace_back(label, poly_to_vec(prod, wa));
    }
  }
  cert.products = static_cast<int>(products.size());
  cert.independent = true;
  for (const auto& [label, v] : products) {
    if (!e.insert(v)) {
      cert.independent = false;
      if (!cert.witness) cert.witness = "dependent product " + label;
      break;
    }
  }
  cert.spanning = cert.independent && e.rank() == wa.dim();
  if (cert.independent && !cert.spanning) {
    for (const auto& w : wa.words) {
      SparseVec v = poly_to_vec(NCPoly::monomial(A->ctx(), w, Scalar::one(A->ctx()->field)), wa);
      if (!e.reduce(v).empty()) {
        cert.witness = "window word not covered: " + word_to_string(w, A->ctx()->alphabet);
        break;
      }
    }
  }
  cert.pass = cert.independent && cert.spanning;
  return cert;
}

Tor0Cert check_tor0(const SequenceSpec& seq, int degree, int slack) {
  Tor0Cert cert;
  cert.degree = degree;
  cert.slack = slack;
  const HopfPtr& A = seq.total;
  const HopfPtr& H = seq.quotient;
  const int V = cert.fiber_rank;
  const int wide = degree + slack;

  DegreeWindowBasis wa = degree_basis(A->rewrite(), degree);
  DegreeWindowBasis wh = degree_basis(H->rewrite(), degree * seq.proj.degree_growth());

  // Kernel of phi : (window of A) (x) V -> (window of H) (x) V.
  std::vector<SparseVec> images;
  for (const auto& w : wa.words) {
    SparseVec hv = poly_to_vec(seq.proj.apply_word(w), wh);
    for (int j = 0; j < V; ++j) {
      SparseVec img;
      for (const auto& [col, c] : hv.entries()) img.set(col * V + j, c);
      images.push_back(std::move(img));
    }
  }
  auto kernel = kernel_coords(images, wh.dim() * V, A->ctx()->field);
  std::vector<SparseVec> kvecs;
  for (const auto& coords : kernel) {
    SparseVec v;
    for (std::size_t j = 0; j < coords.size(); ++j)
      if (!coords[j].is_zero()) v.set(static_cast<int>(j), coords[j]);
    kvecs.push_back(std::move(v));
  }
  cert.kernel_dim = static_cast<int>(kvecs.size());

  // Windowed span of (augmentation image) * A, tensored with V.
  DegreeWindowBasis wbig = degree_basis(A->rewrite(), wide);
  SplitWindow split(wbig, degree);
  Echelon right(split.total());
  for (const auto& z : augmentation_images(seq, wide)) {
    int zdeg = z.degree();
    for (const auto& a : wbig.words) {
      if (a.degree() + zdeg > wide) continue;
      right.insert(split.vec(A->nf(z * NCPoly::monomial(A->ctx(), a, Scalar::one(A->ctx()->field)))));
    }
  }
  std::vector<SparseVec> svecs;
  for (const auto& p : split.low_rows(right, A->ctx())) {
    SparseVec base = poly_to_vec(p, wa);
    for (int j = 0; j < V; ++j) {
      SparseVec v;
      for (const auto& [col, c] : base.entries()) v.set(col * V + j, c);
      svecs.push_back(std::move(v));
    }
  }
  cert.span_dim = static_cast<int>(svecs.size());

  // Inclusion checks in domain coordinates (window word, fiber coordinate).
  const int limit = wa.dim() * V;
  Echelon span_ech(limit);
  for (const auto& v : svecs) span_ech.insert(v);
  cert.kernel_in_span = InclusionCert{};
  for (const auto& v : kvecs) {
    if (!span_ech.reduce(v).empty()) {
      cert.kernel_in_span.holds = false;
      cert.kernel_in_span.witness = "kernel vector outside the ideal span";
      break;
    }
  }
  Echelon ker_ech(limit);
  for (const auto& v : kvecs) ker_ech.insert(v);
  cert.span_in_kernel = InclusionCert{};
  for (const auto& v : svecs) {
    if (!ker_ech.reduce(v).empty()) {
      cert.span_in_kernel.holds = false;
      cert.span_in_kernel.witness = "ideal-span vector outside the kernel";
      break;
    }
  }
  cert.pass = cert.kernel_in_span.holds && cert.span_in_kernel.holds;
  return cert;
}

ExactnessCertificate check_exactness(const SequenceSpec& seq, int degree, int slack) {
  ExactnessCertificate cert;
  cert.sequence = seq.name;
  cert.degree = degree;
  cert.slack = slack >= 0 ? slack : std::max(1, seq.total->rewrite().max_relation_degree());
  cert.injectivity = check_injectivity(seq.incl, degree);
  cert.surjectivity = check_surjectivity(seq.proj, degree, degree + cert.slack);
  cert.kernel_condition = check_kernel_condition(seq, degree, cert.slack);
  cert.coinvariants = check_coinvariants(seq, degree, cert.slack);
  cert.freeness = check_freeness(seq, degree);
  cert.tor0 = check_tor0(seq, degree, cert.slack);
  cert.pass = cert.injectivity.pass && cert.surjectivity.pass && cert.kernel_condition.pass &&
              cert.coinvariants.pass && cert.freeness.pass && cert.tor0.pass;
  return cert;
}

SubalgebraWindow image_window(const HopfMorphism& f, int degree, int slack) {
  DegreeWindowBasis wsrc = degree_basis(f.src()->rewrite(), degree + slack);
  DegreeWindowBasis wtgt = degree_basis(f.tgt()->rewrite(), degree);
  std::vector<NCPoly> spanning;
  for (const auto& w : wsrc.words) {
    NCPoly img = f.apply_word(w);
    if (img.is_zero()) continue;
    if (img.degree() <= degree) spanning.push_back(std::move(img));
  }
  return SubalgebraWindow(f.tgt()->ctx(), std::move(spanning), std::move(wtgt));
}

}  // namespace hopfcert
