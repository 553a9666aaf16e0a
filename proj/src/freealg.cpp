#include "hopfcert/freealg.hpp"

#include <algorithm>
#include <set>

namespace hopfcert {

Alphabet::Alphabet(std::vector<std::string> names) {
  std::set<std::string> seen;
  gens_.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw EngineError("empty generator name");
    if (!seen.insert(names[i]).second) {
      throw EngineError("duplicate generator name " + names[i]);
    }
    gens_.push_back(GenSymbol{static_cast<GenId>(i), names[i], static_cast<int>(i)});
  }
}

void Alphabet::set_precedence(const std::vector<std::string>& ascending) {
  if (ascending.size() != gens_.size()) {
    throw EngineError("precedence list must name every generator exactly once");
  }
  std::set<std::string> seen;
  for (std::size_t rank = 0; rank < ascending.size(); ++rank) {
    auto id = find(ascending[rank]);
    if (!id) throw EngineError("precedence names unknown generator " + ascending[rank]);
    if (!seen.insert(ascending[rank]).second) {
      throw EngineError("precedence repeats generator " + ascending[rank]);
    }
    gens_[*id].precedence = static_cast<int>(rank);
  }
}

std::optional<GenId> Alphabet::find(const std::string& name) const {
  for (const auto& g : gens_) {
    if (g.name == name) return g.id;
  }
  return std::nullopt;
}

bool Alphabet::operator==(const Alphabet& o) const {
  if (gens_.size() != o.gens_.size()) return false;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name != o.gens_[i].name || gens_[i].precedence != o.gens_[i].precedence) {
      return false;
    }
  }
  return true;
}

CtxPtr make_context(std::vector<std::string> gen_names, FieldSpec field) {
  auto ctx = std::make_shared<FreeContext>();
  ctx->alphabet = Alphabet(std::move(gen_names));
  ctx->field = field;
  return ctx;
}

bool same_context(const CtxPtr& a, const CtxPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->field == b->field && a->alphabet == b->alphabet;
}

int word_compare(const Word& a, const Word& b, const Alphabet& alph) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    int ra = alph.rank(a.letters[i]);
    int rb = alph.rank(b.letters[i]);
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  return 0;
}

Word word_concat(const Word& a, const Word& b) {
  Word r;
  r.letters.reserve(a.letters.size() + b.letters.size());
  r.letters.insert(r.letters.end(), a.letters.begin(), a.letters.end());
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  return r;
}

std::string word_to_string(const Word& w, const Alphabet& alph) {
  if (w.is_empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    if (!out.empty()) out += "*";
    out += alph.symbol(w.letters[i]).name;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

namespace {

void require_same_ctx(const CtxPtr& a, const CtxPtr& b, const char* op) {
  if (!same_context(a, b)) throw EngineError(std::string("context mismatch in ") + op);
}

}  // namespace

NCPoly NCPoly::zero(CtxPtr ctx) {
  NCPoly p;
  p.ctx_ = std::move(ctx);
  return p;
}

NCPoly NCPoly::one(CtxPtr ctx) {
  Scalar c = Scalar::one(ctx->field);
  return monomial(std::move(ctx), Word::empty(), std::move(c));
}

NCPoly NCPoly::gen(CtxPtr ctx, GenId id) {
  if (id >= ctx->alphabet.size()) throw EngineError("generator id out of range");
  Scalar c = Scalar::one(ctx->field);
  return monomial(std::move(ctx), Word({id}), std::move(c));
}

NCPoly NCPoly::monomial(CtxPtr ctx, Word w, Scalar c) {
  NCPoly p;
  p.ctx_ = std::move(ctx);
  if (!(c.field() == p.ctx_->field)) throw FieldMismatchError("monomial coefficient field");
  if (!c.is_zero()) p.terms_.push_back(Term{std::move(w), std::move(c)});
  return p;
}

NCPoly NCPoly::constant(CtxPtr ctx, Scalar c) {
  return monomial(std::move(ctx), Word::empty(), std::move(c));
}

NCPoly NCPoly::from_terms(CtxPtr ctx, std::vector<Term> terms) {
  NCPoly p;
  p.ctx_ = std::move(ctx);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

const NCPoly::Term& NCPoly::leading_term() const {
  if (terms_.empty()) throw EngineError("leading term of zero polynomial");
  return terms_.front();
}

void NCPoly::normalize() {
  if (!ctx_) throw EngineError("polynomial without context");
  const Alphabet& alph = ctx_->alphabet;
  std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
    return word_compare(a.word, b.word, alph) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!(t.coeff.field() == ctx_->field)) throw FieldMismatchError("term coefficient field");
    if (!out.empty() && out.back().word == t.word) {
      out.back().coeff = out.back().coeff + t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : out) {
    if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
  }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  require_same_ctx(ctx_, o.ctx_, "poly add");
  const Alphabet& alph = ctx_->alphabet;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = word_compare(terms_[i].word, o.terms_[j].word, alph);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      Scalar s = terms_[i].coeff + o.terms_[j].coeff;
      if (!s.is_zero()) out.push_back(Term{terms_[i].word, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) out.push_back(terms_[i++]);
  while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
  NCPoly r;
  r.ctx_ = ctx_;
  r.terms_ = std::move(out);
  return r;
}

NCPoly NCPoly::operator-() const {
  NCPoly r;
  r.ctx_ = ctx_;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.word, -t.coeff});
  return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const { return *this + (-o); }

NCPoly NCPoly::scaled(const Scalar& c) const {
  if (c.is_zero()) return NCPoly::zero(ctx_);
  NCPoly r;
  r.ctx_ = ctx_;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back(Term{t.word, t.coeff * c});
  return r;
}

NCPoly NCPoly::operator*(const NCPoly& o) const {
  require_same_ctx(ctx_, o.ctx_, "poly mul");
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      out.push_back(Term{word_concat(a.word, b.word), a.coeff * b.coeff});
    }
  }
  return from_terms(ctx_, std::move(out));
}

bool NCPoly::operator==(const NCPoly& o) const {
  if (!same_context(ctx_, o.ctx_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].word == o.terms_[i].word) || terms_[i].coeff != o.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  const Alphabet& alph = ctx_->alphabet;
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    std::string cs = t.coeff.to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    std::string mag = neg ? cs.substr(1) : cs;
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (t.word.is_empty()) {
      out += mag;
    } else if (mag == "1") {
      out += word_to_string(t.word, alph);
    } else {
      out += mag + "*" + word_to_string(t.word, alph);
    }
  }
  return out;
}

TensorPoly TensorPoly::zero(CtxPtr ctx, int legs) {
  if (legs < 1) throw EngineError("tensor power needs at least one leg");
  TensorPoly t;
  t.ctx_ = std::move(ctx);
  t.legs_ = legs;
  return t;
}

TensorPoly TensorPoly::from_poly(const NCPoly& p) {
  TensorPoly t;
  t.ctx_ = p.ctx();
  t.legs_ = 1;
  for (const auto& term : p.terms()) {
    t.terms_.push_back(Term{{term.word}, term.coeff});
  }
  return t;
}

TensorPoly TensorPoly::monomial(CtxPtr ctx, std::vector<Word> legs, Scalar c) {
  TensorPoly t = zero(std::move(ctx), static_cast<int>(legs.size()));
  if (!c.is_zero()) t.terms_.push_back(Term{std::move(legs), std::move(c)});
  return t;
}

TensorPoly TensorPoly::from_terms(CtxPtr ctx, int legs, std::vector<Term> terms) {
  TensorPoly t = zero(std::move(ctx), legs);
  t.terms_ = std::move(terms);
  t.normalize();
  return t;
}

TensorPoly TensorPoly::unit(CtxPtr ctx, int legs) {
  Scalar c = Scalar::one(ctx->field);
  return monomial(std::move(ctx), std::vector<Word>(static_cast<std::size_t>(legs)), std::move(c));
}

namespace {

int legs_compare(const std::vector<Word>& a, const std::vector<Word>& b, const Alphabet& alph) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = word_compare(a[i], b[i], alph);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace

void TensorPoly::normalize() {
  if (!ctx_) throw EngineError("tensor without context");
  const Alphabet& alph = ctx_->alphabet;
  for (const auto& t : terms_) {
    if (static_cast<int>(t.legs.size()) != legs_) throw EngineError("tensor leg count mismatch");
  }
  std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
    return legs_compare(a.legs, b.legs, alph) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().legs == t.legs) {
      out.back().coeff = out.back().coeff + t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : out) {
    if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
  }
}

TensorPoly TensorPoly::operator+(const TensorPoly& o) const {
  require_same_ctx(ctx_, o.ctx_, "tensor add");
  if (legs_ != o.legs_) throw EngineError("tensor add with different leg counts");
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return from_terms(ctx_, legs_, std::move(all));
}

TensorPoly TensorPoly::operator-() const {
  TensorPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

TensorPoly TensorPoly::operator-(const TensorPoly& o) const { return *this + (-o); }

TensorPoly TensorPoly::scaled(const Scalar& c) const {
  if (c.is_zero()) return zero(ctx_, legs_);
  TensorPoly r = *this;
  for (auto& t : r.terms_) t.coeff = t.coeff * c;
  return r;
}

TensorPoly TensorPoly::operator*(const TensorPoly& o) const {
  require_same_ctx(ctx_, o.ctx_, "tensor mul");
  if (legs_ != o.legs_) throw EngineError("tensor mul with different leg counts");
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      std::vector<Word> legs(static_cast<std::size_t>(legs_));
      for (int i = 0; i < legs_; ++i) {
        legs[static_cast<std::size_t>(i)] =
            word_concat(a.legs[static_cast<std::size_t>(i)], b.legs[static_cast<std::size_t>(i)]);
      }
      out.push_back(Term{std::move(legs), a.coeff * b.coeff});
    }
  }
  return from_terms(ctx_, legs_, std::move(out));
}

bool TensorPoly::operator==(const TensorPoly& o) const {
  if (!same_context(ctx_, o.ctx_) || legs_ != o.legs_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].legs != o.terms_[i].legs || terms_[i].coeff != o.terms_[i].coeff) return false;
  }
  return true;
}

TensorPoly TensorPoly::outer(const TensorPoly& a, const TensorPoly& b) {
  require_same_ctx(a.ctx_, b.ctx_, "tensor outer");
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      std::vector<Word> legs = s.legs;
      legs.insert(legs.end(), t.legs.begin(), t.legs.end());
      out.push_back(Term{std::move(legs), s.coeff * t.coeff});
    }
  }
  return from_terms(a.ctx_, a.legs_ + b.legs_, std::move(out));
}

TensorPoly TensorPoly::apply_leg(int leg, const std::function<NCPoly(const Word&)>& f) const {
  if (leg < 0 || leg >= legs_) throw EngineError("apply_leg: leg out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    NCPoly img = f(t.legs[static_cast<std::size_t>(leg)]);
    if (!same_context(img.ctx(), ctx_)) throw EngineError("apply_leg: map changed context");
    for (const auto& it : img.terms()) {
      std::vector<Word> legs = t.legs;
      legs[static_cast<std::size_t>(leg)] = it.word;
      out.push_back(Term{std::move(legs), t.coeff * it.coeff});
    }
  }
  return from_terms(ctx_, legs_, std::move(out));
}

TensorPoly TensorPoly::expand_leg(int leg, const std::function<TensorPoly(const Word&)>& f) const {
  if (leg < 0 || leg >= legs_) throw EngineError("expand_leg: leg out of range");
  std::vector<Term> out;
  int new_legs = -1;
  for (const auto& t : terms_) {
    TensorPoly img = f(t.legs[static_cast<std::size_t>(leg)]);
    if (!same_context(img.ctx(), ctx_)) throw EngineError("expand_leg: map changed context");
    if (new_legs == -1) new_legs = legs_ + img.legs() - 1;
    if (legs_ + img.legs() - 1 != new_legs) throw EngineError("expand_leg: inconsistent leg counts");
    for (const auto& it : img.terms()) {
      std::vector<Word> legs;
      legs.reserve(static_cast<std::size_t>(new_legs));
      for (int i = 0; i < leg; ++i) legs.push_back(t.legs[static_cast<std::size_t>(i)]);
      legs.insert(legs.end(), it.legs.begin(), it.legs.end());
      for (int i = leg + 1; i < legs_; ++i) legs.push_back(t.legs[static_cast<std::size_t>(i)]);
      out.push_back(Term{std::move(legs), t.coeff * it.coeff});
    }
  }
  if (new_legs == -1) {
    // Zero tensor: leg count determined by probing the map on the empty word.
    new_legs = legs_ + f(Word::empty()).legs() - 1;
  }
  return from_terms(ctx_, new_legs, std::move(out));
}

TensorPoly TensorPoly::contract_leg(int leg, const std::function<Scalar(const Word&)>& s) const {
  if (leg < 0 || leg >= legs_) throw EngineError("contract_leg: leg out of range");
  if (legs_ < 2) throw EngineError("contract_leg: need at least two legs");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    Scalar c = t.coeff * s(t.legs[static_cast<std::size_t>(leg)]);
    if (c.is_zero()) continue;
    std::vector<Word> legs;
    legs.reserve(t.legs.size() - 1);
    for (int i = 0; i < legs_; ++i) {
      if (i != leg) legs.push_back(t.legs[static_cast<std::size_t>(i)]);
    }
    out.push_back(Term{std::move(legs), std::move(c)});
  }
  return from_terms(ctx_, legs_ - 1, std::move(out));
}

NCPoly TensorPoly::to_poly() const {
  if (legs_ != 1) throw EngineError("to_poly: tensor has more than one leg");
  std::vector<NCPoly::Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(NCPoly::Term{t.legs[0], t.coeff});
  return NCPoly::from_terms(ctx_, std::move(out));
}

std::string TensorPoly::to_string() const {
  if (terms_.empty()) return "0";
  const Alphabet& alph = ctx_->alphabet;
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    std::string cs = t.coeff.to_string();
    bool neg = !cs.empty() && cs[0] == '-';
    std::string mag = neg ? cs.substr(1) : cs;
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string legs;
    for (std::size_t l = 0; l < t.legs.size(); ++l) {
      if (l) legs += " (x) ";
      legs += word_to_string(t.legs[l], alph);
    }
    // Coefficient attaches to the first leg so the rendering stays parseable
    // as a sum of (x)-separated leg products.
    if (mag == "1") {
      out += legs;
    } else {
      out += mag + "*" + legs;
    }
  }
  return out;
}

}  // namespace hopfcert
