#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfcert/exactseq.hpp"
#include "hopfcert/freealg.hpp"
#include "hopfcert/hopf.hpp"

namespace hopfcert {

// ---------------------------------------------------------------------------
// Presentation file format (.hopf), line oriented, `#` starts a comment.
//
//   algebra NAME over Q          (or F<p> for a prime p)
//   gens: a, b, ...
//   inverses: (a, b), ...        each pair adds a*b - 1 and b*a - 1 up front
//   precedence: a < b < ...      monomial-order ranks; default declaration order
//   params: q = 2, ...           scalar constants usable in expressions
//   cap: 8                       completion degree cap
//   rels:                        defining relations, comma separated; lines
//     a*b - b*a - 1              may repeat
//   comul:                       one `gen -> tensor expression` per line
//     a -> a (x) a
//   counit:                      one `gen -> scalar` per line
//     a -> 1
//   antipode:                    one `gen -> expression` per line
//   antipode_inv:                optional; all generators or none
//   resolution: left|right       optional free-resolution block
//   ranks: 1, 3, 2
//   d1: ...                      matrix of the q-th map, one row per line,
//   d2: ...                      entries comma separated (d_q is r_{q-1} x r_q)
//   covars: x, y                 optional comodule-algebra block
//   covar_rels:
//     x*y - y*x
//   coact:                       one `covar -> tensor expression` per line;
//     x -> x (x) u11             left leg over covariables, right leg over gens
//
// Expression grammar: poly := ['-'] term (('+'|'-') term)*;
// term := factor ('*' factor)*; factor := atom ['^' INT];
// atom := INT ['/' scalar] | IDENT ['/' scalar, parameters only] | '(' poly ')'.
// Division is scalar-by-scalar only. The exact three-character token `(x)`
// is the tensor separator; write a parenthesized generator as `( x )`.
// Tensor expressions: top-level +/- separate summands, each summand is
// `leg (x) leg` with product-only legs (parenthesize sums inside a leg).
// ---------------------------------------------------------------------------

enum class DslErrorKind { Lex, Syntax, Semantic };

// Parse-stage failure with a source position. what() renders
// "file:line:col: <kind> error: message".
class DslError : public EngineError {
 public:
  DslError(DslErrorKind kind, const std::string& message, int line, int col,
           const std::string& file);

  DslErrorKind kind;
  int line = 0, col = 0;  // 1-based
  std::string file;
  std::string message;  // without the position prefix
};

// Free-resolution data exactly as written in the file: ranks r_0..r_n and the
// matrices maps[q] of d_{q+1} with ranks[q] rows and ranks[q+1] columns.
struct ParsedResolution {
  ModuleSide side = ModuleSide::Left;
  std::vector<int> ranks;
  std::vector<std::vector<std::vector<NCPoly>>> maps;
};

struct AlgebraFile {
  std::string name;
  FieldSpec field;
  CtxPtr ctx;  // generators in declaration order, precedence applied
  std::vector<std::pair<GenId, GenId>> inverse_pairs;
  std::optional<std::vector<std::string>> precedence;  // ascending, if declared
  std::vector<std::pair<std::string, Scalar>> params;  // declaration order
  std::vector<NCPoly> relations;                       // explicit rels only
  GeneratorMaps maps;
  int cap = 8;
  std::optional<ParsedResolution> resolution;
  std::optional<CoactionSpec> coaction;
  std::string source_path;  // empty for text parses

  // Relations fed to completion: inverse-pair relations first, then explicit.
  std::vector<NCPoly> all_relations() const;
  HopfPtr to_presentation() const;
};

AlgebraFile parse_algebra_text(const std::string& text, const std::string& filename);
AlgebraFile parse_algebra_file(const std::string& path);

// Canonical rendering; parsing it back yields a structurally equal file.
std::string serialize_algebra(const AlgebraFile& f);

// Semantic comparison: generators with precedences, field, inverse pairs,
// parameters, relations, structure maps, cap, resolution, coaction.
// Source paths and cosmetic spelling differences are ignored.
bool structurally_equal(const AlgebraFile& a, const AlgebraFile& b);

// ---------------------------------------------------------------------------
// Sequence file format (.seq):
//
//   sequence NAME
//   B: base.hopf                 paths resolve relative to this file
//   A: total.hopf
//   H: quotient.hopf
//   i:                           inclusion B -> A, one `gen -> expr` per line
//     g -> u11
//   p:                           projection A -> H
//     u11 -> 1
//   witness: u12, u22, v22       generators of A witnessing freeness over B
// ---------------------------------------------------------------------------

struct RawMapEntry {
  std::string gen;
  std::string expr;       // raw text, parsed once the algebras are loaded
  int line = 0, col = 0;  // position of the expression payload
};

struct SequenceFileData {
  std::string name;
  std::string base_path, total_path, quotient_path;  // resolved
  std::vector<RawMapEntry> incl_entries, proj_entries;
  std::vector<std::string> witness_names;
  std::string source_path;
};

SequenceFileData parse_sequence_file(const std::string& path);

struct LoadedSequence {
  AlgebraFile base_file, total_file, quotient_file;
  SequenceSpec seq;
};

// Parses the sequence file, loads and builds the three algebras, parses the
// morphism payloads, and constructs the validated sequence. Construction
// failures of the morphisms or the sequence surface as semantic DslErrors.
LoadedSequence load_sequence(const std::string& path);

}  // namespace hopfcert
