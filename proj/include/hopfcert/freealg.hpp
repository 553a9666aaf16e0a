#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfcert/coeffs.hpp"

namespace hopfcert {

using GenId = std::uint16_t;

// Which side scalars of the algebra act on for module data (free module
// maps, resolutions).
enum class ModuleSide { Left, Right };

struct GenSymbol {
  GenId id = 0;         // index in the alphabet
  std::string name;
  int precedence = 0;   // rank in the monomial order; default = declaration order
};

// Immutable generator table. Precedence can be re-ranked once at build time
// (presentation files may carry an explicit precedence section).
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  // Re-rank: `ascending` must list every generator exactly once, smallest first.
  void set_precedence(const std::vector<std::string>& ascending);

  std::size_t size() const { return gens_.size(); }
  const GenSymbol& symbol(GenId id) const { return gens_.at(id); }
  std::optional<GenId> find(const std::string& name) const;
  int rank(GenId id) const { return gens_.at(id).precedence; }

  bool operator==(const Alphabet& o) const;

 private:
  std::vector<GenSymbol> gens_;
};

// Alphabet + coefficient field. Shared immutably by every value built over it.
struct FreeContext {
  Alphabet alphabet;
  FieldSpec field;
};
using CtxPtr = std::shared_ptr<const FreeContext>;

CtxPtr make_context(std::vector<std::string> gen_names, FieldSpec field);
bool same_context(const CtxPtr& a, const CtxPtr& b);

// A monomial: sequence of generator ids. Degree = length (every generator
// has degree 1, formal inverses included).
struct Word {
  std::vector<GenId> letters;

  Word() = default;
  explicit Word(std::vector<GenId> ls) : letters(std::move(ls)) {}
  static Word empty() { return Word{}; }
  static Word of(std::initializer_list<GenId> ls) { return Word(std::vector<GenId>(ls)); }

  int degree() const { return static_cast<int>(letters.size()); }
  bool is_empty() const { return letters.empty(); }
  bool operator==(const Word&) const = default;
  // Container order for map keys only; the monomial order is word_compare.
  bool operator<(const Word& o) const { return letters < o.letters; }
};

// Degree-lexicographic order: degree first, ties by precedence rank left to
// right. Total, multiplication-compatible, well-founded. Returns -1/0/+1.
int word_compare(const Word& a, const Word& b, const Alphabet& alph);

Word word_concat(const Word& a, const Word& b);
std::string word_to_string(const Word& w, const Alphabet& alph);  // "g^2*x", "1"

// Noncommutative polynomial over a FreeContext. Invariants: terms sorted
// strictly descending in the monomial order, no zero coefficients; the zero
// polynomial has no terms.
class NCPoly {
 public:
  struct Term {
    Word word;
    Scalar coeff;
  };

  NCPoly() = default;
  static NCPoly zero(CtxPtr ctx);
  static NCPoly one(CtxPtr ctx);
  static NCPoly gen(CtxPtr ctx, GenId id);
  static NCPoly monomial(CtxPtr ctx, Word w, Scalar c);
  static NCPoly constant(CtxPtr ctx, Scalar c);
  // From unsorted/duplicated terms; normalizes.
  static NCPoly from_terms(CtxPtr ctx, std::vector<Term> terms);

  const CtxPtr& ctx() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Degree of the leading term; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.front().word.degree(); }
  const Term& leading_term() const;

  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator-() const;
  NCPoly operator*(const NCPoly& o) const;  // poly_mul: concatenation, bilinear
  NCPoly scaled(const Scalar& c) const;
  bool operator==(const NCPoly& o) const;
  bool operator!=(const NCPoly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  CtxPtr ctx_;
  std::vector<Term> terms_;
  void normalize();  // sort desc, combine, drop zeros
};

// Element of the n-fold tensor power of the free algebra. Same invariants as
// NCPoly, terms ordered descending lexicographically across legs.
class TensorPoly {
 public:
  struct Term {
    std::vector<Word> legs;
    Scalar coeff;
  };

  TensorPoly() = default;
  static TensorPoly zero(CtxPtr ctx, int legs);
  static TensorPoly from_poly(const NCPoly& p);  // 1 leg
  static TensorPoly monomial(CtxPtr ctx, std::vector<Word> legs, Scalar c);
  static TensorPoly from_terms(CtxPtr ctx, int legs, std::vector<Term> terms);
  // Unit of the n-fold tensor power: 1 (x) ... (x) 1.
  static TensorPoly unit(CtxPtr ctx, int legs);

  const CtxPtr& ctx() const { return ctx_; }
  int legs() const { return legs_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TensorPoly operator+(const TensorPoly& o) const;
  TensorPoly operator-(const TensorPoly& o) const;
  TensorPoly operator-() const;
  TensorPoly operator*(const TensorPoly& o) const;  // tensor_mul: legwise
  TensorPoly scaled(const Scalar& c) const;
  bool operator==(const TensorPoly& o) const;
  bool operator!=(const TensorPoly& o) const { return !(*this == o); }

  // Outer product: legs(a) + legs(b).
  static TensorPoly outer(const TensorPoly& a, const TensorPoly& b);

  // Apply a linear map to one leg (0-based), leg count unchanged. f receives
  // each leg word as a monomial polynomial.
  TensorPoly apply_leg(int leg, const std::function<NCPoly(const Word&)>& f) const;
  // Replace one leg by a tensor factor: leg count becomes legs + k - 1 where
  // every f(word) has k legs. Used for comultiplication placements.
  TensorPoly expand_leg(int leg, const std::function<TensorPoly(const Word&)>& f) const;
  // Drop one leg, multiplying its scalar image into the coefficient.
  TensorPoly contract_leg(int leg, const std::function<Scalar(const Word&)>& s) const;

  NCPoly to_poly() const;  // requires legs == 1

  std::string to_string() const;

 private:
  CtxPtr ctx_;
  int legs_ = 1;
  std::vector<Term> terms_;
  void normalize();
};

}  // namespace hopfcert
