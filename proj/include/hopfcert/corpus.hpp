// Bundled-corpus utilities: the manifest index, construction of declared
// resolutions, and the standard duality derivation over the bundled algebras
// and sequences.
#pragma once

#include <string>
#include <vector>

#include "hopfcert/dsl.hpp"
#include "hopfcert/duality.hpp"
#include "hopfcert/exactseq.hpp"
#include "hopfcert/homcalc.hpp"

namespace hopfcert {

struct ManifestEntry {
  std::string path;  // resolved, absolute or relative to the caller's cwd
  std::string kind;  // algebra | sequence | coaction
  std::string description;
};

// Reads <corpus_dir>/manifest.txt: one `path<TAB>kind<TAB>description` per
// line, `#` comments and blank lines skipped.  Paths resolve relative to the
// manifest.
std::vector<ManifestEntry> load_manifest(const std::string& corpus_dir);

// Builds the free resolution declared in the algebra file over the given
// presentation (which must share the file's context).  Refuses when the file
// declares none.
Resolution resolution_from_file(const AlgebraFile& file, const HopfPtr& algebra);

// Hypothesis ledger distilled from a full exactness certificate.
SequenceHypotheses hypotheses_from_certificate(const SequenceSpec& seq,
                                               const std::string& base_id,
                                               const std::string& total_id,
                                               const std::string& quotient_id,
                                               const ExactnessCertificate& cert);

struct DualityDerivation {
  FactStore store;
  std::vector<std::string> trace;  // one deterministic line per rule firing
};

// The standard derivation over the bundled corpus:
//   - base facts for the Laurent algebra and the free-product algebra from
//     their declared resolutions and Ext windows,
//   - a cited fact for the SL-type quantum group at q = 2,
//   - extension compositions along both bundled sequences.
// battery_degree bounds the exactness windows recorded in the hypothesis
// ledgers; ext_window is the Ext certification window for the base facts.
DualityDerivation derive_duality_facts(const std::string& corpus_dir,
                                       int battery_degree = 2, int ext_window = 6);

}  // namespace hopfcert
