#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hopfcert/rewrite.hpp"

namespace hopfcert {

// Structure maps given on generators; extended multiplicatively (comul,
// counit) resp. anti-multiplicatively (antipode) to all of the algebra.
struct GeneratorMaps {
  std::vector<TensorPoly> comul;              // one per generator, 2 legs each
  std::vector<Scalar> counit;                 // one per generator
  std::vector<NCPoly> antipode;               // one per generator
  std::optional<std::vector<NCPoly>> antipode_inv;  // inverse antipode, if declared
};

class HopfPresentation;
using HopfPtr = std::shared_ptr<const HopfPresentation>;

// A finitely presented Hopf algebra with a completed rewriting system.
// Construction validates that the structure maps descend to the quotient
// (each defining relation is sent to zero by comul/counit/antipode) and that
// a declared inverse antipode really inverts the antipode on generators.
class HopfPresentation {
 public:
  static HopfPtr build(std::string name, CtxPtr ctx, std::vector<NCPoly> relations,
                       GeneratorMaps maps, int completion_cap);

  const std::string& name() const { return name_; }
  const CtxPtr& ctx() const { return ctx_; }
  const RewriteSystem& rewrite() const { return rs_; }
  const GeneratorMaps& maps() const { return maps_; }
  bool has_antipode_inv() const { return maps_.antipode_inv.has_value(); }

  NCPoly nf(const NCPoly& p) const { return rs_.normal_form(p); }

  // Comultiplication (2 legs, legwise normal form).
  TensorPoly comul(const NCPoly& p) const;
  // n applications of comul: n + 1 legs. n = 0 returns p as a 1-leg tensor.
  // Each step expands the leftmost leg.
  TensorPoly iterated_comul(const NCPoly& p, int n) const;
  // Same, expanding the rightmost leg (used by the coassociativity check).
  TensorPoly iterated_comul_rightmost(const NCPoly& p, int n) const;
  Scalar counit(const NCPoly& p) const;
  NCPoly antipode(const NCPoly& p) const;
  NCPoly antipode_inv(const NCPoly& p) const;  // throws Refusal if not declared
  NCPoly antipode_squared(const NCPoly& p) const;

  // Max degree of an antipode image of a generator (>= 1); bounds growth.
  int antipode_growth() const { return antipode_growth_; }
  // Max leg degree across comul images of generators (>= 1).
  int comul_growth() const { return comul_growth_; }
  int completion_cap() const { return rs_.degree_cap(); }

  // True when nf(S(S(g))) == g for every generator.
  bool antipode_squared_is_identity() const;

 private:
  HopfPresentation(std::string name, CtxPtr ctx, RewriteSystem rs, GeneratorMaps maps);

  std::string name_;
  CtxPtr ctx_;
  RewriteSystem rs_;
  GeneratorMaps maps_;
  int antipode_growth_ = 1;
  int comul_growth_ = 1;
};

// Deterministic sampler drawing elements from a degree window of the algebra.
struct SamplerConfig {
  int max_degree = 3;
  int max_terms = 3;
  int samples = 100;
  std::uint64_t seed = 0;
};

class SweedlerContext {
 public:
  SweedlerContext(HopfPtr pres, SamplerConfig cfg);

  const HopfPresentation& pres() const { return *pres_; }
  const SamplerConfig& config() const { return cfg_; }
  Word sample_word();
  NCPoly sample();       // random nonzero-or-zero element within the window
  Scalar sample_coeff();

 private:
  HopfPtr pres_;
  SamplerConfig cfg_;
  DegreeWindowBasis basis_;
  std::mt19937_64 rng_;
};

struct CheckFailure {
  std::string check;    // which identity failed
  std::string witness;  // the element(s) it failed on
  std::string detail;   // both sides, rendered
};

struct HopfCheckReport {
  bool pass = true;
  int samples_run = 0;
  std::vector<std::string> checks_run;
  std::optional<CheckFailure> failure;  // first failure in deterministic order
  int certified_degree_used = 0;        // degree bound the battery needed
};

// Certified axiom battery: coassociativity, counit laws, antipode laws,
// multiplicativity of comul/counit, anti-multiplicativity of the antipode,
// inverse-antipode laws when declared. Exhaustive on generators and all
// normal words of degree <= 2, then on cfg.samples sampled elements/pairs.
// Throws Refusal when the rewrite system does not certify the degrees the
// battery needs.
HopfCheckReport check_hopf_axioms(const HopfPtr& H, const SamplerConfig& cfg);

// The four twisted conjugation module structures on the underlying algebra.
enum class ActionKind {
  TwistLeftThenRight,      //  m <- h  =  S(h_(1)) m h_(2)      (right action)
  SandwichOuter,           //  h -> m  =  h_(1) m S(h_(2))      (left action)
  SandwichOuterFlipped,    //  h -> m  =  h_(2) m S(h_(1))      (left action)
  TwistRightThenLeft,      //  m <- h  =  S(h_(2)) m h_(1)      (right action)
};

bool action_is_right(ActionKind k);
std::string action_name(ActionKind k);

NCPoly action_eval(const HopfPresentation& H, ActionKind k, const NCPoly& m, const NCPoly& h);
// Negative control: same shapes with the antipode dropped; not an action.
NCPoly action_eval_dropped_antipode(const HopfPresentation& H, ActionKind k, const NCPoly& m,
                                    const NCPoly& h);

struct ModuleAxiomReport {
  bool pass = true;
  int samples_run = 0;
  std::optional<CheckFailure> failure;
};

// Unit + associativity of the given action on sampled triples (exhaustive on
// low-degree words first). `dropped_antipode` selects the negative control.
ModuleAxiomReport check_module_axiom(const HopfPtr& H, ActionKind k, const SamplerConfig& cfg,
                                     bool dropped_antipode = false);

// Windowed span of a subalgebra image, with exact membership tests.
class SubalgebraWindow {
 public:
  // `spanning` must already be normal forms fitting the window.
  SubalgebraWindow(CtxPtr ctx, std::vector<NCPoly> spanning, DegreeWindowBasis window);

  // Membership in the windowed span. Throws Refusal when p does not fit the
  // window (the windowed certificate cannot decide it).
  bool contains(const NCPoly& p) const;
  const std::vector<NCPoly>& spanning() const { return spanning_; }
  const DegreeWindowBasis& window() const { return window_; }

 private:
  CtxPtr ctx_;
  std::vector<NCPoly> spanning_;
  DegreeWindowBasis window_;
  Echelon ech_;
};

// Right comodule-algebra data over a Hopf algebra: covariables with their own
// relations and a coaction sending each covariable into
// (covariable algebra) (x) H, extended multiplicatively.
struct CoactionSpec {
  CtxPtr covar_ctx;                     // same coefficient field as H
  std::vector<NCPoly> covar_relations;  // over covar_ctx
  // rho[g]: coaction image of covariable g as (covariable word, H-coefficient)
  std::vector<std::vector<std::pair<Word, NCPoly>>> rho;
  int cap = 8;
};

struct CoactionReport {
  bool pass = true;
  int samples_run = 0;
  std::optional<CheckFailure> failure;
};

// Verifies the coaction is a well-defined algebra map (kills the covariable
// relations), coassociative, and counital, on generators and sampled words.
CoactionReport check_coaction(const HopfPtr& H, const CoactionSpec& spec,
                              const SamplerConfig& cfg);

// The four adjoint-stability expressions for a in A, b in the subalgebra:
//   0: a_(1) b S(a_(2))      1: S(a_(1)) b a_(2)
//   2: a_(2) b S^{-1}(a_(1)) 3: S^{-1}(a_(2)) b a_(1)
// Forms 2 and 3 require a declared inverse antipode.
NCPoly adjoint_expression(const HopfPresentation& A, int form, const NCPoly& a, const NCPoly& b);

struct AdjointReport {
  bool pass = true;
  int samples_run = 0;
  std::vector<std::string> forms_checked;
  std::optional<CheckFailure> failure;
};

// Checks that all four expressions land in the subalgebra window for sampled
// a (from A) and b (from the subalgebra spanning set).
AdjointReport adjoint_stability(const HopfPtr& A, const SubalgebraWindow& sub,
                                const SamplerConfig& cfg);

}  // namespace hopfcert
