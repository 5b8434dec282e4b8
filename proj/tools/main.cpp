#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blocknorm/commands.hpp"

namespace {

void add_tol(CLI::App* cmd, double& tol) {
  cmd->add_option("--tol", tol, "relative tolerance for PSD verdicts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"norm compressions of block-partitioned PSD matrices"};
  app.require_subcommand(1);

  blocknorm::CheckOptions check;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "compress a partitioned PSD matrix and test positivity");
  check_cmd->add_option("matrix-file", check.matrix_path, "JSON matrix file")
      ->required();
  check_cmd
      ->add_option("--partition", check.partition,
                   "block sizes, e.g. 1,2,3 (overrides the file's partition)")
      ->delimiter(',');
  check_cmd->add_option("--norm", check.norm_spec,
                        "norm spec (default: trace)");
  add_tol(check_cmd, check.tol);

  blocknorm::ReduceOptions reduce;
  CLI::App* reduce_cmd = app.add_subcommand(
      "reduce", "run the verified trace-norm reduction of a 3-block matrix");
  reduce_cmd->add_option("matrix-file", reduce.matrix_path, "JSON matrix file")
      ->required();
  reduce_cmd
      ->add_option("--partition", reduce.partition,
                   "three block sizes (overrides the file's partition)")
      ->delimiter(',');
  add_tol(reduce_cmd, reduce.tol);

  blocknorm::CertifyOptions certify;
  CLI::App* certify_cmd = app.add_subcommand(
      "certify", "test the flatness condition ||E11+...+Ekk|| = k||E11||");
  certify_cmd->add_option("--norm", certify.norm_spec, "norm spec")
      ->required();
  certify_cmd
      ->add_option("--ambient", certify.ambient,
                   "dimension the norm lives on")
      ->required();
  certify_cmd->add_option("--k", certify.k, "prefix length to certify")
      ->required();
  certify_cmd->add_option("--tol", certify.tol,
                          "absolute slack tolerance (default 1e-9*k)");

  blocknorm::CounterexampleOptions counter;
  CLI::App* counter_cmd = app.add_subcommand(
      "counterexample", "emit a certified failure of compression positivity");
  counter_cmd
      ->add_option("--kind", counter.kind,
                   "schatten | thm2 | thompson | m4")
      ->required()
      ->check(CLI::IsMember({"schatten", "thm2", "thompson", "m4"}));
  counter_cmd->add_option("--p", counter.p,
                          "Schatten exponent > 1 (kind schatten)");
  counter_cmd->add_option("--norm", counter.norm_spec,
                          "norm spec (kinds thm2, m4)");
  counter_cmd->add_option("--ambient", counter.ambient,
                          "norm ambient dimension (default: derived)");
  counter_cmd
      ->add_option("--sizes", counter.sizes, "n1,n2,n (kind thm2)")
      ->delimiter(',');
  counter_cmd->add_option("--trials", counter.trials,
                          "search budget (kinds thompson, m4)");
  counter_cmd->add_option("--seed", counter.seed, "search seed");
  counter_cmd->add_option("--block-dim", counter.block_dim,
                          "block size of the lift (kind m4)");
  counter_cmd->add_option("--matrix-file", counter.matrix_path,
                          "scalar seed matrix (kind m4; default: search)");
  add_tol(counter_cmd, counter.tol);

  blocknorm::FuzzOptions fuzz;
  CLI::App* fuzz_cmd = app.add_subcommand(
      "fuzz", "stress a proven positivity statement on random PSD inputs");
  fuzz_cmd->add_option("--mode", fuzz.mode, "thm1 | thm2 | m2 | abs3")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "m2", "abs3"}));
  fuzz_cmd->add_option("--sizes", fuzz.sizes, "block sizes, e.g. 2,3,4")
      ->delimiter(',');
  fuzz_cmd->add_option("--norm", fuzz.norm_spec, "norm spec (mode thm2, m2)");
  fuzz_cmd->add_option("--trials", fuzz.trials, "number of trials");
  fuzz_cmd->add_option("--seed", fuzz.seed, "master seed");
  add_tol(fuzz_cmd, fuzz.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return blocknorm::kExitInput;
  }

  if (check_cmd->parsed()) {
    return blocknorm::cmd_check(check, std::cout, std::cerr);
  }
  if (reduce_cmd->parsed()) {
    return blocknorm::cmd_reduce(reduce, std::cout, std::cerr);
  }
  if (certify_cmd->parsed()) {
    return blocknorm::cmd_certify(certify, std::cout, std::cerr);
  }
  if (counter_cmd->parsed()) {
    return blocknorm::cmd_counterexample(counter, std::cout, std::cerr);
  }
  if (fuzz_cmd->parsed()) {
    return blocknorm::cmd_fuzz(fuzz, std::cout, std::cerr);
  }
  return blocknorm::kExitInput;
}
