#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcert/hopf.hpp"

namespace hopfcert {

// A Hopf algebra morphism given on generators. Construction verifies that it
// kills the defining relations of the source and commutes with the structure
// maps on generators.
class HopfMorphism {
 public:
  static HopfMorphism build(std::string name, HopfPtr src, HopfPtr tgt,
                            std::vector<NCPoly> gen_images);

  const std::string& name() const { return name_; }
  const HopfPtr& src() const { return src_; }
  const HopfPtr& tgt() const { return tgt_; }
  const std::vector<NCPoly>& gen_images() const { return gen_images_; }
  // Max degree of a generator image (>= 1): degree growth bound.
  int degree_growth() const { return growth_; }

  NCPoly apply_word(const Word& w) const;  // normal form in the target
  NCPoly apply(const NCPoly& p) const;

 private:
  HopfMorphism() = default;
  std::string name_;
  HopfPtr src_, tgt_;
  std::vector<NCPoly> gen_images_;
  int growth_ = 1;
};

// B --incl--> A --proj--> H with proj o incl = unit o counit (checked on
// generators of B at construction). `witness_gens` names the sub-alphabet of
// A whose normal words witness freeness of A over the image of B.
struct SequenceSpec {
  std::string name;
  HopfPtr base, total, quotient;
  HopfMorphism incl, proj;
  std::vector<GenId> witness_gens;

  static SequenceSpec build(std::string name, HopfPtr base, HopfPtr total, HopfPtr quotient,
                            HopfMorphism incl, HopfMorphism proj,
                            std::vector<GenId> witness_gens);

  // Normal words over the witness sub-alphabet up to `degree`, ascending.
  std::vector<Word> witness_words(int degree) const;
};

struct InclusionCert {
  bool holds = true;
  std::optional<std::string> witness;  // element of the left side not in the right side
};

struct InjectivityCert {
  bool pass = false;
  int degree = 0;
  int domain_dim = 0;
  int image_rank = 0;
  std::optional<std::string> kernel_witness;
};

struct SurjectivityCert {
  bool pass = false;
  int degree = 0;         // every quotient window word of this degree is hit
  int search_degree = 0;  // preimages searched in the total window up to here
  std::vector<std::string> unreached;
};

struct KernelConditionCert {
  bool pass = false;
  int degree = 0;
  int slack = 0;
  int kernel_dim = 0;
  int left_ideal_dim = 0;   // (A * im aug)  ∩ window
  int right_ideal_dim = 0;  // (im aug * A) ∩ window
  InclusionCert kernel_in_left, left_in_kernel;
  InclusionCert kernel_in_right, right_in_kernel;
};

struct CoinvariantsCert {
  bool pass = false;
  int degree = 0;
  int slack = 0;
  int image_dim = 0;
  int right_coinv_dim = 0;
  int left_coinv_dim = 0;
  InclusionCert image_in_right, right_in_image;
  InclusionCert image_in_left, left_in_image;
};

struct FreenessCert {
  bool pass = false;
  int degree = 0;
  int products = 0;
  int window_dim = 0;
  bool independent = false;
  bool spanning = false;
  std::optional<std::string> witness;
};

struct Tor0Cert {
  bool pass = false;
  int degree = 0;
  int slack = 0;
  int fiber_rank = 2;  // dimension of the auxiliary trivial module
  int kernel_dim = 0;
  int span_dim = 0;
  InclusionCert kernel_in_span, span_in_kernel;
};

struct ExactnessCertificate {
  std::string sequence;
  int degree = 0;
  int slack = 0;
  InjectivityCert injectivity;
  SurjectivityCert surjectivity;
  KernelConditionCert kernel_condition;
  CoinvariantsCert coinvariants;
  FreenessCert freeness;
  Tor0Cert tor0;
  bool pass = false;
};

InjectivityCert check_injectivity(const HopfMorphism& incl, int degree);
SurjectivityCert check_surjectivity(const HopfMorphism& proj, int degree, int search_degree);
KernelConditionCert check_kernel_condition(const SequenceSpec& seq, int degree, int slack);
CoinvariantsCert check_coinvariants(const SequenceSpec& seq, int degree, int slack);
FreenessCert check_freeness(const SequenceSpec& seq, int degree);
Tor0Cert check_tor0(const SequenceSpec& seq, int degree, int slack);

// Runs the whole battery at the given window degree. slack < 0 selects the
// default (max relation degree of the total algebra).
ExactnessCertificate check_exactness(const SequenceSpec& seq, int degree, int slack = -1);

// Windowed span of the image subalgebra of f inside its target, for
// membership queries (adjoint stability).
SubalgebraWindow image_window(const HopfMorphism& f, int degree, int slack);

}  // namespace hopfcert
