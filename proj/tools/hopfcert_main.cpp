// Command-line front end: completion and basis queries, axiom batteries,
// exact-sequence certification, Ext certificates, chain-level identity
// suites, the duality deduction calculus, and coaction checks.
//
// Exit codes: 0 = pass, 1 = a check failed (witness printed), 2 = the engine
// refused to certify (reason printed), 64 = usage or input parse error.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hopfcert/corpus.hpp"
#include "hopfcert/dsl.hpp"
#include "hopfcert/duality.hpp"
#include "hopfcert/exactseq.hpp"
#include "hopfcert/homcalc.hpp"
#include "hopfcert/hopf.hpp"
#include "hopfcert/report.hpp"

namespace {

using namespace hopfcert;

struct Options {
  std::string file;
  std::string format = "text";
  std::string window = "";
  std::string suite = "all";
  std::string corpus = "corpus";
  std::string manifest;  // optional positional alternative to --corpus
  std::string algebra_id;
  int degree = 3;
  int duality_degree = 2;
  int samples = 100;
  int slack = -1;  // negative selects each command's own default
  int index = 0;
  int stage = 0;
  int rank = 2;
  std::uint64_t seed = 0;
  bool negative = false;
};

ReportFormat format_of(const Options& o) {
  ReportFormat fmt;
  if (!parse_report_format(o.format, fmt))
    throw Refusal("unknown output format '" + o.format + "' (expected text or kv)");
  return fmt;
}

// --window accepts "N" (meaning 0..N) or "LO..HI"; the engine certifies
// windows anchored at degree 0.
int parse_window_hi(const std::string& s) {
  const auto dots = s.find("..");
  std::size_t pos = 0;
  if (dots == std::string::npos) {
    const int hi = std::stoi(s, &pos);
    if (pos != s.size() || hi < 0) throw Refusal("bad --window value '" + s + "'");
    return hi;
  }
  const int lo = std::stoi(s.substr(0, dots), &pos);
  if (pos != dots) throw Refusal("bad --window value '" + s + "'");
  const std::string hi_part = s.substr(dots + 2);
  const int hi = std::stoi(hi_part, &pos);
  if (pos != hi_part.size() || hi < lo) throw Refusal("bad --window value '" + s + "'");
  if (lo != 0)
    throw Refusal("windows are certified from degree 0; a window starting at degree " +
                  std::to_string(lo) + " is not supported");
  return hi;
}

void emit(const Report& rep, const Options& o) { std::cout << rep.render(format_of(o)); }

void add_failure(Report& rep, const CheckFailure& f) {
  rep.add("failed check", f.check);
  rep.add("witness", f.witness);
  if (!f.detail.empty()) rep.add("detail", f.detail);
}

std::string dims_to_string(const std::vector<int>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) out += (i ? ", " : "") + std::to_string(dims[i]);
  return out;
}

int cmd_complete(const Options& o) {
  const AlgebraFile file = parse_algebra_file(o.file);
  const HopfPtr H = file.to_presentation();
  const RewriteSystem& rs = H->rewrite();
  Report rep;
  rep.add("algebra", H->name());
  rep.add("field", file.field.to_string());
  rep.add("generators", std::to_string(file.ctx->alphabet.size()));
  rep.add("relations", std::to_string(rs.relations().size()));
  rep.add("status", rs.status() == CompletionStatus::Confluent ? "confluent"
                                                               : "complete up to degree cap");
  rep.add("degree cap", std::to_string(rs.degree_cap()));
  rep.add("rules", std::to_string(rs.rules().size()));
  auto& rules = rep.section("rewrite rules");
  for (std::size_t i = 0; i < rs.rules().size(); ++i) {
    const RewriteRule& r = rs.rules()[i];
    rules.add("rule " + std::to_string(i),
              word_to_string(r.lhs, file.ctx->alphabet) + " -> " + r.rhs.to_string());
  }
  emit(rep, o);
  return 0;
}

int cmd_basis(const Options& o) {
  const AlgebraFile file = parse_algebra_file(o.file);
  const HopfPtr H = file.to_presentation();
  H->rewrite().require_degree(o.degree, "degree basis");
  const DegreeWindowBasis basis = degree_basis(H->rewrite(), o.degree);
  Report rep;
  rep.add("algebra", H->name());
  rep.add("degree", std::to_string(o.degree));
  rep.add("dimensions by degree", dims_to_string(basis.dims_by_degree()));
  rep.add("window dimension", std::to_string(basis.dim()));
  emit(rep, o);
  return 0;
}

int cmd_check_hopf(const Options& o) {
  const AlgebraFile file = parse_algebra_file(o.file);
  const HopfPtr H = file.to_presentation();
  SamplerConfig cfg;
  cfg.max_degree = o.degree;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  const HopfCheckReport r = check_hopf_axioms(H, cfg);
  Report rep;
  rep.add("algebra", H->name());
  rep.add("samples", std::to_string(r.samples_run));
  rep.add("certified degree used", std::to_string(r.certified_degree_used));
  std::string checks;
  for (std::size_t i = 0; i < r.checks_run.size(); ++i)
    checks += (i ? ", " : "") + r.checks_run[i];
  rep.add("checks", checks);
  rep.add("result", r.pass ? "pass" : "fail");
  if (!r.pass && r.failure) add_failure(rep, *r.failure);
  emit(rep, o);
  return r.pass ? 0 : 1;
}

int cmd_check_exact(const Options& o) {
  const LoadedSequence ls = load_sequence(o.file);
  const ExactnessCertificate cert = check_exactness(ls.seq, o.degree, o.slack);
  Report rep;
  rep.add("sequence", ls.seq.name);
  rep.add("degree", std::to_string(cert.degree));
  rep.add("slack", std::to_string(cert.slack));
  auto& parts = rep.section("components");
  parts.add("injectivity", cert.injectivity.pass ? "pass" : "fail");
  parts.add("surjectivity", cert.surjectivity.pass ? "pass" : "fail");
  parts.add("kernel condition", cert.kernel_condition.pass ? "pass" : "fail");
  parts.add("coinvariants", cert.coinvariants.pass ? "pass" : "fail");
  parts.add("freeness", cert.freeness.pass ? "pass" : "fail");
  parts.add("trivial-fiber comparison", cert.tor0.pass ? "pass" : "fail");
  auto& res = rep.section("result");
  res.add("result", cert.pass ? "pass" : "fail");
  if (!cert.pass) {
    if (!cert.injectivity.pass && cert.injectivity.kernel_witness)
      res.add("injectivity witness", *cert.injectivity.kernel_witness);
    if (!cert.surjectivity.pass && !cert.surjectivity.unreached.empty())
      res.add("unreached quotient word", cert.surjectivity.unreached.front());
    if (!cert.kernel_condition.pass) {
      const auto& kc = cert.kernel_condition;
      for (const auto* inc : {&kc.kernel_in_left, &kc.left_in_kernel, &kc.kernel_in_right,
                              &kc.right_in_kernel})
        if (!inc->holds && inc->witness) res.add("kernel witness", *inc->witness);
    }
    if (!cert.coinvariants.pass) {
      const auto& cv = cert.coinvariants;
      for (const auto* inc :
           {&cv.image_in_right, &cv.right_in_image, &cv.image_in_left, &cv.left_in_image})
        if (!inc->holds && inc->witness) res.add("coinvariants witness", *inc->witness);
    }
    if (!cert.freeness.pass && cert.freeness.witness)
      res.add("freeness witness", *cert.freeness.witness);
  }
  emit(rep, o);
  return cert.pass ? 0 : 1;
}

int cmd_ext(const Options& o) {
  const AlgebraFile file = parse_algebra_file(o.file);
  const HopfPtr H = file.to_presentation();
  const Resolution res = resolution_from_file(file, H);
  const int window_hi = o.window.empty() ? 6 : parse_window_hi(o.window);
  const ExtCertificate cert = ext_certificate(res, o.index, window_hi, o.slack);
  Report rep;
  rep.add("algebra", cert.algebra);
  rep.add("index", std::to_string(cert.index));
  rep.add("window", std::to_string(cert.window_lo) + ".." + std::to_string(cert.window_hi));
  rep.add("dimensions by degree", dims_to_string(cert.dims_by_degree));
  rep.add("window dimension", std::to_string(cert.total_dim));
  rep.add("verdict", ext_verdict_name(cert.verdict));
  if (!cert.detail.empty()) rep.add("detail", cert.detail);
  if (cert.verdict == ExtVerdict::OneDimensional) {
    rep.add("witness", cert.witness);
    auto& ch = rep.section("character");
    for (const auto& cv : cert.character) ch.add(cv.generator, cv.value);
    ch.add("trivial", cert.character_trivial ? "yes" : "no");
    auto& nk = rep.section("modular map");
    for (const auto& cv : cert.nakayama) nk.add(cv.generator, cv.value);
    nk.add("identity", cert.nakayama_identity ? "yes" : "no");
  }
  emit(rep, o);
  return cert.verdict == ExtVerdict::Inconclusive ? 2 : 0;
}

void add_chain_report(Report& rep, const ChainCheckReport& r) {
  auto& sec = rep.section(r.name);
  sec.add("samples", std::to_string(r.samples_run));
  sec.add("checks", std::to_string(r.checks_run));
  sec.add("result", r.pass ? "pass" : "fail");
  if (r.failure) {
    sec.add(r.pass ? "detected by" : "failed check", r.failure->check);
    sec.add("witness", r.failure->witness);
    if (!r.failure->detail.empty()) sec.add("detail", r.failure->detail);
  }
}

int cmd_verify_chain(const Options& o) {
  const LoadedSequence ls = load_sequence(o.file);
  ChainSuiteConfig cfg;
  cfg.resolution_stage = o.stage;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.negative_control = o.negative;

  const bool needs_res =
      o.suite == "all" || o.suite == "star-action" || o.suite == "harpoon-action" ||
      o.suite == "hmod-iso";
  std::optional<Resolution> res;
  if (needs_res) res = resolution_from_file(ls.total_file, ls.seq.total);

  Report rep;
  rep.add("sequence", ls.seq.name);
  rep.add("samples", std::to_string(cfg.samples));
  rep.add("seed", std::to_string(cfg.seed));
  rep.add("mode", cfg.negative_control ? "negative control" : "positive");

  std::vector<ChainCheckReport> results;
  const auto want = [&](const char* name) { return o.suite == "all" || o.suite == name; };
  if (want("star-action")) results.push_back(star_action_check(ls.seq, *res, cfg));
  if (want("harpoon-action")) results.push_back(harpoon_action_check(ls.seq, *res, cfg));
  if (want("phi-map")) results.push_back(phi_map_check(ls.seq, o.rank, cfg));
  if (want("uv-iso")) results.push_back(uv_iso_check(ls.seq, cfg));
  if (want("hmod-iso")) results.push_back(hmod_iso_check(ls.seq, *res, cfg));
  if (want("tor0-iso")) results.push_back(tor0_iso_check(ls.seq, cfg));
  if (results.empty())
    throw Refusal("unknown chain suite '" + o.suite +
                  "' (expected star-action, harpoon-action, phi-map, uv-iso, hmod-iso, "
                  "tor0-iso, or all)");

  bool all_pass = true;
  for (const auto& r : results) {
    add_chain_report(rep, r);
    all_pass = all_pass && r.pass;
  }
  auto& sec = rep.section("result");
  sec.add("result", all_pass ? "pass" : "fail");
  emit(rep, o);
  return all_pass ? 0 : 1;
}

int cmd_duality_derive(const Options& o) {
  const int window_hi = o.window.empty() ? 6 : parse_window_hi(o.window);
  DualityDerivation d = derive_duality_facts(o.corpus, o.duality_degree, window_hi);
  Report rep;
  auto& tr = rep.section("derivation");
  for (std::size_t i = 0; i < d.trace.size(); ++i)
    tr.add("step " + std::to_string(i + 1), d.trace[i]);
  auto& lg = rep.section("ledger");
  std::string joined;
  for (const auto& line : d.store.ledger_lines()) joined += line;
  if (!joined.empty() && joined.back() == '\n') joined.pop_back();
  lg.add("facts", joined);
  emit(rep, o);
  return 0;
}

int cmd_duality_explain(const Options& o) {
  const int window_hi = o.window.empty() ? 6 : parse_window_hi(o.window);
  DualityDerivation d = derive_duality_facts(o.corpus, o.duality_degree, window_hi);
  std::string tree = d.store.explain(o.algebra_id);
  if (format_of(o) == ReportFormat::Text) {
    std::cout << tree;
    return 0;
  }
  Report rep;
  if (!tree.empty() && tree.back() == '\n') tree.pop_back();
  rep.add("explanation", tree);
  emit(rep, o);
  return 0;
}

int cmd_coaction_check(const Options& o) {
  const AlgebraFile file = parse_algebra_file(o.file);
  if (!file.coaction)
    throw Refusal("algebra '" + file.name + "' declares no coaction block");
  const HopfPtr H = file.to_presentation();
  SamplerConfig cfg;
  cfg.max_degree = o.degree;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  const CoactionReport r = check_coaction(H, *file.coaction, cfg);
  Report rep;
  rep.add("algebra", H->name());
  rep.add("samples", std::to_string(r.samples_run));
  rep.add("result", r.pass ? "pass" : "fail");
  if (!r.pass && r.failure) add_failure(rep, *r.failure);
  emit(rep, o);
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification engine for finitely presented Hopf algebras"};
  app.require_subcommand(1);
  Options o;
  int code = 0;

  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "output format: text or kv");
  };

  auto* complete = app.add_subcommand("complete", "complete a presentation's rewrite system");
  complete->add_option("file", o.file, "algebra file")->required();
  add_format(complete);
  complete->callback([&] { code = cmd_complete(o); });

  auto* basis = app.add_subcommand("basis", "normal-word basis dimensions per degree");
  basis->add_option("file", o.file, "algebra file")->required();
  basis->add_option("--degree", o.degree, "window degree");
  add_format(basis);
  basis->callback([&] { code = cmd_basis(o); });

  auto* hopf = app.add_subcommand("check-hopf", "certified Hopf axiom battery");
  hopf->add_option("file", o.file, "algebra file")->required();
  hopf->add_option("--degree", o.degree, "sampling window degree");
  hopf->add_option("--samples", o.samples, "sample count");
  hopf->add_option("--seed", o.seed, "sampler seed");
  add_format(hopf);
  hopf->callback([&] { code = cmd_check_hopf(o); });

  auto* exact = app.add_subcommand("check-exact", "exact-sequence certification battery");
  exact->add_option("file", o.file, "sequence file")->required();
  exact->add_option("--degree", o.degree, "window degree");
  exact->add_option("--slack", o.slack, "preimage search slack (-1 = default)");
  add_format(exact);
  exact->callback([&] { code = cmd_check_exact(o); });

  auto* ext = app.add_subcommand("ext", "Ext certificate from the declared resolution");
  ext->add_option("file", o.file, "algebra file with a resolution block")->required();
  ext->add_option("--i", o.index, "cohomological index")->required();
  ext->add_option("--window", o.window, "window degree N or 0..N");
  ext->add_option("--slack", o.slack, "image search slack");
  add_format(ext);
  ext->callback([&] {
    if (o.slack < 0) o.slack = 2;
    code = cmd_ext(o);
  });

  auto* chain = app.add_subcommand("verify-chain", "chain-level module-structure suites");
  chain->add_option("file", o.file, "sequence file")->required();
  chain->add_option("--suite", o.suite,
                    "star-action | harpoon-action | phi-map | uv-iso | hmod-iso | "
                    "tor0-iso | all");
  chain->add_option("--samples", o.samples, "sample count");
  chain->add_option("--seed", o.seed, "sampler seed");
  chain->add_option("--stage", o.stage, "resolution stage the cochains live on");
  chain->add_option("--rank", o.rank, "free-module rank for the evaluation map suite");
  chain->add_flag("--negative", o.negative, "run the paired corrupted variants");
  add_format(chain);
  chain->callback([&] { code = cmd_verify_chain(o); });

  auto* duality = app.add_subcommand("duality", "duality deduction calculus");
  duality->require_subcommand(1);
  auto* derive = duality->add_subcommand("derive", "run the standard corpus derivation");
  derive->add_option("--corpus", o.corpus, "corpus directory");
  derive->add_option("--degree", o.duality_degree, "exactness window for hypothesis ledgers");
  derive->add_option("--window", o.window, "Ext window for base facts");
  add_format(derive);
  derive->callback([&] { code = cmd_duality_derive(o); });
  auto* explain = duality->add_subcommand("explain", "print a derivation tree");
  explain->add_option("algebra", o.algebra_id, "algebra id")->required();
  explain->add_option("--corpus", o.corpus, "corpus directory");
  explain->add_option("--degree", o.duality_degree, "exactness window for hypothesis ledgers");
  explain->add_option("--window", o.window, "Ext window for base facts");
  add_format(explain);
  explain->callback([&] { code = cmd_duality_explain(o); });

  auto* coact = app.add_subcommand("coaction-check", "comodule-algebra coaction battery");
  coact->add_option("file", o.file, "algebra file with a coaction block")->required();
  coact->add_option("--degree", o.degree, "sampling window degree");
  coact->add_option("--samples", o.samples, "sample count");
  coact->add_option("--seed", o.seed, "sampler seed");
  add_format(coact);
  coact->callback([&] { code = cmd_coaction_check(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int cli_code = app.exit(e);
    return cli_code == 0 ? 0 : 64;  // keep 0 for --help, map usage errors to 64
  } catch (const DslError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  } catch (const Refusal& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const EngineError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
