// Deduction calculus for homological-duality facts about presented Hopf
// algebras: base facts certified by resolutions and Ext windows, cited facts
// from the literature, and composition along exact sequences with explicit
// hypothesis tracking and deterministic derivation trees.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hopfcert/homcalc.hpp"

namespace hopfcert {

// What kind of duality a fact asserts, strongest last.
enum class DualityFlavor {
  Duality,    // one-sided homological duality in the stated dimension
  TwistedCY,  // one-dimensional top class twisted by a character
  CY,         // twisted with trivial character and identity modular map
};

std::string duality_flavor_token(DualityFlavor f);  // "Duality" / "TwistedCY" / "CY"
std::string duality_flavor_prose(DualityFlavor f);  // "duality" / "twisted Calabi-Yau" / ...

enum class ProvenanceKind { ComputedCertificate, Cited, ComposedByExtension };

std::string provenance_kind_token(ProvenanceKind k);

// Character data attached to a twisted fact: explicit generator values from a
// computed certificate, deferred to a citation, or inherited structurally
// from the two inputs of a composition.
struct CharacterExplicit {
  std::vector<CharacterValue> values;
  bool trivial = false;
};
struct CharacterFromCitation {
  std::string source;
};
struct CharacterInherited {
  std::string base_id, quotient_id;
};
using CharacterData = std::variant<std::monostate, CharacterExplicit,
                                   CharacterFromCitation, CharacterInherited>;

struct DualityFact {
  std::string algebra_id;
  int dimension = 0;
  DualityFlavor flavor = DualityFlavor::Duality;
  ProvenanceKind provenance = ProvenanceKind::ComputedCertificate;
  std::string rule;     // descriptive name of the deriving rule
  std::string summary;  // one-line provenance summary for the ledger
  CharacterData character;
  std::vector<std::string> inputs;    // child fact ids (compositions)
  std::vector<std::string> evidence;  // leaf evidence lines, fixed order
};

// Hypotheses attached to one exact sequence, recorded before composition
// rules may fire.  The cohomological-dimension equality entry is consumable:
// the converse rule uses it up.
struct SequenceHypotheses {
  std::string sequence_id;
  std::string base_id, total_id, quotient_id;
  bool exactness_verified = false;
  int exactness_degree = 0;
  bool freeness_witnessed = false;
  std::string freeness_detail;
  bool antipode_bijective = false;
  bool cd_equality_available = false;
  std::string cd_equality_source;
};

class FactStore {
 public:
  // Record (or replace) the hypothesis ledger for a sequence.
  void attach_sequence(SequenceHypotheses hyp);
  const SequenceHypotheses* find_sequence(const std::string& sequence_id) const;

  // Base fact from a verified resolution plus an Ext certificate for every
  // index 0..length.  Exactly one index may be nonzero; it becomes the
  // dimension.  OneDimensional there yields a twisted fact (Calabi-Yau when
  // the character is trivial and the modular map is the identity);
  // NonzeroOnWindow yields plain duality.  Any Inconclusive certificate, a
  // failed resolution, or a zero/ambiguous pattern is refused with the
  // offending index named.
  const DualityFact& register_base_fact(const std::string& algebra_id,
                                        const ResolutionReport& resolution,
                                        const std::vector<ExtCertificate>& exts);

  // Fact taken from the literature.  A conflicting registration for the same
  // algebra is refused with both records shown; an identical one is idempotent.
  const DualityFact& register_cited_fact(const std::string& algebra_id, int dimension,
                                         DualityFlavor flavor,
                                         const std::string& citation);

  // Composition along a registered sequence: dimension adds; the result is
  // twisted when both inputs are (Calabi-Yau included), plain duality
  // otherwise.  Requires verified exactness, the freeness witness, and a
  // bijective antipode; each missing hypothesis is refused by name.
  const DualityFact& apply_extension_rule(const std::string& sequence_id);

  // Converse splitting: given facts for the total algebra and one end of the
  // sequence plus a consumable cohomological-dimension equality entry, the
  // unknown end receives plain duality in the subtracted dimension.
  const DualityFact& apply_converse_rule(const std::string& sequence_id,
                                         const std::string& unknown_id);

  bool has_fact(const std::string& algebra_id) const;
  const DualityFact& fact(const std::string& algebra_id) const;

  // Deterministic derivation tree for a registered fact; cited leaves are
  // flagged.  Byte-identical across runs for the same derivation.
  std::string explain(const std::string& algebra_id) const;

  // One line per fact: id, dimension, flavor token, provenance summary,
  // TAB-separated, sorted by id, each line LF-terminated.
  std::vector<std::string> ledger_lines() const;

 private:
  const DualityFact& store(DualityFact f);

  std::map<std::string, DualityFact> facts_;
  std::map<std::string, SequenceHypotheses> sequences_;
};

}  // namespace hopfcert
