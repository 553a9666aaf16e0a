#include "hopfcert/duality.hpp"

#include <algorithm>
#include <sstream>

namespace hopfcert {

std::string duality_flavor_token(DualityFlavor f) {
  switch (f) {
    case DualityFlavor::Duality: return "Duality";
    case DualityFlavor::TwistedCY: return "TwistedCY";
    case DualityFlavor::CY: return "CY";
  }
  return "Duality";
}

std::string duality_flavor_prose(DualityFlavor f) {
  switch (f) {
    case DualityFlavor::Duality: return "duality";
    case DualityFlavor::TwistedCY: return "twisted Calabi-Yau";
    case DualityFlavor::CY: return "Calabi-Yau";
  }
  return "duality";
}

std::string provenance_kind_token(ProvenanceKind k) {
  switch (k) {
    case ProvenanceKind::ComputedCertificate: return "computed";
    case ProvenanceKind::Cited: return "cited";
    case ProvenanceKind::ComposedByExtension: return "composed";
  }
  return "computed";
}

namespace {

std::string fact_headline(const DualityFact& f) {
  std::string line = f.algebra_id + ": " + duality_flavor_prose(f.flavor) +
                     " in dimension " + std::to_string(f.dimension);
  if (f.provenance == ProvenanceKind::Cited) line += " [cited]";
  return line;
}

std::string render_fact_record(const DualityFact& f) {
  return f.algebra_id + " / dimension " + std::to_string(f.dimension) + " / " +
         duality_flavor_token(f.flavor) + " / " + f.summary;
}

}  // namespace

void FactStore::attach_sequence(SequenceHypotheses hyp) {
  sequences_[hyp.sequence_id] = std::move(hyp);
}

const SequenceHypotheses* FactStore::find_sequence(const std::string& sequence_id) const {
  const auto it = sequences_.find(sequence_id);
  return it == sequences_.end() ? nullptr : &it->second;
}

const DualityFact& FactStore::store(DualityFact f) {
  const auto it = facts_.find(f.algebra_id);
  if (it != facts_.end()) {
    const DualityFact& old = it->second;
    if (old.dimension != f.dimension || old.flavor != f.flavor)
      throw Refusal("conflicting duality facts for '" + f.algebra_id +
                    "': existing record (" + render_fact_record(old) +
                    ") vs new record (" + render_fact_record(f) + ")");
    return old;  // idempotent re-registration
  }
  return facts_.emplace(f.algebra_id, std::move(f)).first->second;
}

const DualityFact& FactStore::register_base_fact(const std::string& algebra_id,
                                                 const ResolutionReport& resolution,
                                                 const std::vector<ExtCertificate>& exts) {
  if (!resolution.pass)
    throw Refusal("base fact for '" + algebra_id +
                  "': the resolution is not verified (" +
                  (resolution.failure.empty() ? std::string("no detail") : resolution.failure) +
                  "); no smoothness witness is available");
  if (exts.empty())
    throw Refusal("base fact for '" + algebra_id + "': no Ext certificates supplied");

  std::vector<int> nonzero;
  for (const auto& c : exts) {
    if (c.verdict == ExtVerdict::Inconclusive)
      throw Refusal("base fact for '" + algebra_id + "': Ext certificate at index " +
                    std::to_string(c.index) + " is inconclusive (" + c.detail + ")");
    if (c.verdict != ExtVerdict::ZeroOnWindow) nonzero.push_back(c.index);
  }
  if (nonzero.empty())
    throw Refusal("base fact for '" + algebra_id +
                  "': every Ext certificate vanishes on its window; no duality "
                  "dimension is visible");
  if (nonzero.size() > 1) {
    std::string idxs;
    for (std::size_t k = 0; k < nonzero.size(); ++k)
      idxs += (k ? ", " : "") + std::to_string(nonzero[k]);
    throw Refusal("base fact for '" + algebra_id +
                  "': more than one nonzero Ext index on the window (" + idxs + ")");
  }

  const int d = nonzero.front();
  const ExtCertificate* top = nullptr;
  for (const auto& c : exts)
    if (c.index == d) top = &c;

  DualityFact f;
  f.algebra_id = algebra_id;
  f.dimension = d;
  f.provenance = ProvenanceKind::ComputedCertificate;
  f.rule = "duality certificate from a finite free resolution";
  f.evidence.push_back("resolution verified: differentials compose to zero, the "
                       "augmentation is compatible, and the complex is exact on the "
                       "degree window up to " + std::to_string(resolution.window_degree));
  for (const auto& c : exts) {
    std::string line = "Ext^" + std::to_string(c.index) + " on window [0, " +
                       std::to_string(c.window_hi) + "]: " + ext_verdict_name(c.verdict);
    if (c.verdict == ExtVerdict::OneDimensional) {
      line += ", witness " + c.witness;
      line += c.character_trivial ? ", trivial character" : ", nontrivial character";
      line += c.nakayama_identity ? ", modular map = identity" : ", nontrivial modular map";
    } else if (c.verdict == ExtVerdict::NonzeroOnWindow) {
      line += " (" + c.detail + ")";
    }
    f.evidence.push_back(std::move(line));
  }

  if (top->verdict == ExtVerdict::OneDimensional) {
    CharacterExplicit ch;
    ch.values = top->character;
    ch.trivial = top->character_trivial;
    f.character = std::move(ch);
    f.flavor = (top->character_trivial && top->nakayama_identity) ? DualityFlavor::CY
                                                                  : DualityFlavor::TwistedCY;
  } else {
    f.flavor = DualityFlavor::Duality;
  }
  f.summary = "computed: resolution + Ext certificates on window [0, " +
              std::to_string(top->window_hi) + "]";
  return store(std::move(f));
}

const DualityFact& FactStore::register_cited_fact(const std::string& algebra_id,
                                                  int dimension, DualityFlavor flavor,
                                                  const std::string& citation) {
  DualityFact f;
  f.algebra_id = algebra_id;
  f.dimension = dimension;
  f.flavor = flavor;
  f.provenance = ProvenanceKind::Cited;
  f.rule = "cited result";
  f.summary = "cited: " + citation;
  f.character = CharacterFromCitation{citation};
  f.evidence.push_back("citation: " + citation);
  return store(std::move(f));
}

const DualityFact& FactStore::apply_extension_rule(const std::string& sequence_id) {
  const SequenceHypotheses* hyp = find_sequence(sequence_id);
  if (!hyp)
    throw Refusal("extension rule: no hypothesis ledger for sequence '" + sequence_id + "'");
  if (!has_fact(hyp->base_id))
    throw Refusal("extension rule on '" + sequence_id + "': no duality fact for the base '" +
                  hyp->base_id + "'");
  if (!has_fact(hyp->quotient_id))
    throw Refusal("extension rule on '" + sequence_id +
                  "': no duality fact for the quotient '" + hyp->quotient_id + "'");
  if (!hyp->exactness_verified)
    throw Refusal("extension rule on '" + sequence_id +
                  "': the sequence has no verified exactness certificate");
  if (!hyp->freeness_witnessed)
    throw Refusal("extension rule on '" + sequence_id + "': the total algebra is not "
                  "witnessed faithfully flat as a left and right B-module over its base");
  if (!hyp->antipode_bijective)
    throw Refusal("extension rule on '" + sequence_id +
                  "': the antipode of the total algebra is not attested bijective");

  const DualityFact& base = fact(hyp->base_id);
  const DualityFact& quot = fact(hyp->quotient_id);
  const bool both_twisted = (base.flavor == DualityFlavor::TwistedCY ||
                             base.flavor == DualityFlavor::CY) &&
                            (quot.flavor == DualityFlavor::TwistedCY ||
                             quot.flavor == DualityFlavor::CY);

  DualityFact f;
  f.algebra_id = hyp->total_id;
  f.dimension = base.dimension + quot.dimension;
  f.flavor = both_twisted ? DualityFlavor::TwistedCY : DualityFlavor::Duality;
  f.provenance = ProvenanceKind::ComposedByExtension;
  f.rule = "cohomological-dimension additivity for exact sequences";
  f.summary = "composed: extension along '" + sequence_id + "' (" + hyp->base_id + " + " +
              hyp->quotient_id + ")";
  if (both_twisted) f.character = CharacterInherited{hyp->base_id, hyp->quotient_id};
  f.inputs = {hyp->base_id, hyp->quotient_id};
  f.evidence.push_back("sequence '" + sequence_id + "': exactness verified on the degree "
                       "window up to " + std::to_string(hyp->exactness_degree));
  f.evidence.push_back("sequence '" + sequence_id + "': total algebra witnessed "
                       "faithfully flat as a left and right B-module (" +
                       hyp->freeness_detail + ")");
  f.evidence.push_back("sequence '" + sequence_id + "': antipode of the total algebra "
                       "is bijective");
  f.evidence.push_back("dimension " + std::to_string(f.dimension) + " = " +
                       std::to_string(base.dimension) + " + " +
                       std::to_string(quot.dimension));
  return store(std::move(f));
}

const DualityFact& FactStore::apply_converse_rule(const std::string& sequence_id,
                                                  const std::string& unknown_id) {
  const auto it = sequences_.find(sequence_id);
  if (it == sequences_.end())
    throw Refusal("converse rule: no hypothesis ledger for sequence '" + sequence_id + "'");
  SequenceHypotheses& hyp = it->second;
  std::string known_id;
  if (unknown_id == hyp.base_id) known_id = hyp.quotient_id;
  else if (unknown_id == hyp.quotient_id) known_id = hyp.base_id;
  else
    throw Refusal("converse rule on '" + sequence_id + "': '" + unknown_id +
                  "' is neither the base nor the quotient of the sequence");
  if (has_fact(unknown_id))
    throw Refusal("converse rule on '" + sequence_id + "': '" + unknown_id +
                  "' already has a registered fact");
  if (!has_fact(hyp.total_id))
    throw Refusal("converse rule on '" + sequence_id +
                  "': no duality fact for the total algebra '" + hyp.total_id + "'");
  if (!has_fact(known_id))
    throw Refusal("converse rule on '" + sequence_id + "': no duality fact for '" +
                  known_id + "'");
  if (!hyp.exactness_verified)
    throw Refusal("converse rule on '" + sequence_id +
                  "': the sequence has no verified exactness certificate");
  if (!hyp.freeness_witnessed)
    throw Refusal("converse rule on '" + sequence_id + "': the total algebra is not "
                  "witnessed faithfully flat as a left and right B-module over its base");
  if (!hyp.antipode_bijective)
    throw Refusal("converse rule on '" + sequence_id +
                  "': the antipode of the total algebra is not attested bijective");
  if (!hyp.cd_equality_available)
    throw Refusal("converse rule on '" + sequence_id + "': no cohomological-dimension "
                  "equality entry is available in the hypothesis ledger (it is "
                  "consumed by each use)");

  const DualityFact& total = fact(hyp.total_id);
  const DualityFact& known = fact(known_id);
  const int dim = total.dimension - known.dimension;
  if (dim < 0)
    throw Refusal("converse rule on '" + sequence_id + "': dimension subtraction " +
                  std::to_string(total.dimension) + " - " + std::to_string(known.dimension) +
                  " is negative; the registered facts are inconsistent");

  DualityFact f;
  f.algebra_id = unknown_id;
  f.dimension = dim;
  f.flavor = DualityFlavor::Duality;
  f.provenance = ProvenanceKind::ComposedByExtension;
  f.rule = "converse dimension splitting for exact sequences";
  f.summary = "composed: converse along '" + sequence_id + "' (" + hyp.total_id + " - " +
              known_id + ")";
  f.inputs = {hyp.total_id, known_id};
  f.evidence.push_back("sequence '" + sequence_id + "': exactness verified on the degree "
                       "window up to " + std::to_string(hyp.exactness_degree));
  f.evidence.push_back("sequence '" + sequence_id + "': total algebra witnessed "
                       "faithfully flat as a left and right B-module (" +
                       hyp.freeness_detail + ")");
  f.evidence.push_back("sequence '" + sequence_id + "': antipode of the total algebra "
                       "is bijective");
  f.evidence.push_back("cohomological-dimension equality entry consumed (" +
                       hyp.cd_equality_source + ")");
  f.evidence.push_back("dimension " + std::to_string(dim) + " = " +
                       std::to_string(total.dimension) + " - " +
                       std::to_string(known.dimension));
  const DualityFact& stored = store(std::move(f));
  hyp.cd_equality_available = false;  // consumed only on success
  return stored;
}

bool FactStore::has_fact(const std::string& algebra_id) const {
  return facts_.count(algebra_id) != 0;
}

const DualityFact& FactStore::fact(const std::string& algebra_id) const {
  const auto it = facts_.find(algebra_id);
  if (it == facts_.end())
    throw Refusal("no duality fact registered for '" + algebra_id + "'");
  return it->second;
}

std::string FactStore::explain(const std::string& algebra_id) const {
  std::ostringstream os;
  // Depth-first, inputs in stored order; cycles cannot occur because every
  // rule only consumes facts that already exist.
  const auto render = [&](const auto& self, const std::string& id, int depth) -> void {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const auto it = facts_.find(id);
    if (it == facts_.end()) {
      os << pad << id << ": (no registered fact)\n";
      return;
    }
    const DualityFact& f = it->second;
    os << pad << fact_headline(f) << "\n";
    os << pad << "  rule: " << f.rule << "\n";
    for (const auto& ev : f.evidence) os << pad << "  - " << ev << "\n";
    for (const auto& child : f.inputs) self(self, child, depth + 1);
  };
  if (!facts_.count(algebra_id))
    throw Refusal("no duality fact registered for '" + algebra_id + "'");
  render(render, algebra_id, 0);
  return os.str();
}

std::vector<std::string> FactStore::ledger_lines() const {
  std::vector<std::string> lines;
  for (const auto& [id, f] : facts_) {
    lines.push_back(id + "\t" + std::to_string(f.dimension) + "\t" +
                    duality_flavor_token(f.flavor) + "\t" + f.summary + "\n");
  }
  return lines;  // map iteration is already sorted by id
}

}  // namespace hopfcert
