#include <cmath>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "invgen/certify.hpp"
#include "invgen/e2stats.hpp"
#include "invgen/kummer.hpp"
#include "invgen/permgroups.hpp"
#include "invgen/scan.hpp"
#include "invgen/store.hpp"

namespace {

using namespace invgen;

struct PolicyFlags {
  std::string mode = "prime-order";
  double c = 0.02;
  u64 fixed_h = 0;
  u64 max_h = 0;
  double growth = 2.0;
  bool unsafe_lemma = false;

  SearchPolicy to_policy() const {
    SearchPolicy policy;
    policy.c = c;
    if (fixed_h) policy.fixed_h = fixed_h;
    policy.max_h = max_h;
    policy.growth = growth;
    policy.unsafe_lemma = unsafe_lemma;
    policy.mode = mode == "question1" ? SearchMode::question1 : SearchMode::prime_order;
    return policy;
  }
};

void add_policy_flags(CLI::App* cmd, PolicyFlags& flags) {
  cmd->add_option("--mode", flags.mode, "prime-order or question1")
      ->check(CLI::IsMember({"prime-order", "question1"}));
  cmd->add_option("--c", flags.c, "window exponent, in (0, 1/25]");
  cmd->add_option("--fixed-h", flags.fixed_h, "fixed initial interval length");
  cmd->add_option("--max-h", flags.max_h, "interval growth cap (0 = sqrt(n))");
  cmd->add_option("--growth", flags.growth, "interval growth factor");
  cmd->add_flag("--unsafe-lemma", flags.unsafe_lemma,
                "drop the prime-power path guards (experimentation only)");
}

int run(int argc, char** argv) {
  CLI::App app{"certificate search and verification for invariable generation of A_n"};
  app.require_subcommand(1);
  app.set_config("--config");

  PolicyFlags flags;
  unsigned jobs = 1;
  std::string out_path, checkpoint_path;
  u64 seed = 0;

  // certify
  auto* cmd_certify = app.add_subcommand("certify", "find and verify a certificate for one n");
  u64 certify_n = 0;
  cmd_certify->add_option("n", certify_n, "group degree")->required();
  add_policy_flags(cmd_certify, flags);

  // scan
  auto* cmd_scan = app.add_subcommand("scan", "scan a range of n, writing a JSONL store");
  u64 scan_lo = 0, scan_hi = 0;
  cmd_scan->add_option("lo", scan_lo)->required();
  cmd_scan->add_option("hi", scan_hi)->required();
  add_policy_flags(cmd_scan, flags);
  cmd_scan->add_option("--jobs", jobs, "worker threads");
  cmd_scan->add_option("--out", out_path, "output JSONL path")->required();
  cmd_scan->add_option("--checkpoint", checkpoint_path, "checkpoint path (enables resume)");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "re-verify every record in a store file");
  std::string verify_path;
  cmd_verify->add_option("file", verify_path)->required();

  // oracle
  auto* cmd_oracle = app.add_subcommand("oracle", "ground-truth invariable-generation check");
  u64 oracle_n = 0;
  std::string type1, type2;
  u64 samples = 0;
  cmd_oracle->add_option("n", oracle_n)->required();
  cmd_oracle->add_option("type1", type1, "cycle type, e.g. \"5\" or \"3,1,1\"")->required();
  cmd_oracle->add_option("type2", type2)->required();
  cmd_oracle->add_option("--samples", samples, "sample count (0 = exhaustive)");
  cmd_oracle->add_option("--seed", seed, "sampling seed");

  // kummer
  auto* cmd_kummer = app.add_subcommand("kummer", "binomial-coefficient cover check");
  u64 kummer_n = 0, kummer_p1 = 0, kummer_p2 = 0;
  cmd_kummer->add_option("n", kummer_n)->required();
  cmd_kummer->add_option("p1", kummer_p1)->required();
  cmd_kummer->add_option("p2", kummer_p2)->required();

  // e2
  auto* cmd_e2 = app.add_subcommand("e2", "semiprimes in short intervals, empirical stats");
  double e2_x = 0, e2_c = 0.02;
  u64 e2_h = 0, e2_sample = 0, e2_stride = 0;
  cmd_e2->set_help_flag("--help", "print help");  // frees --h below
  cmd_e2->add_option("--x-max", e2_x, "upper end of the x range")->required();
  cmd_e2->add_option("--h", e2_h, "interval length")->required();
  cmd_e2->add_option("--c", e2_c, "exponent c");
  cmd_e2->add_option("--sample", e2_sample, "random sample count (default: all x)");
  cmd_e2->add_option("--stride", e2_stride, "stride sampling instead of random");
  cmd_e2->add_option("--seed", seed, "sampling seed");
  cmd_e2->add_option("--out", out_path, "CSV output path (default stdout)");

  // report
  auto* cmd_report = app.add_subcommand("report", "summarize a store file");
  std::string report_path;
  cmd_report->add_option("file", report_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : 2;
  }

  if (cmd_certify->parsed()) {
    SearchPolicy policy = flags.to_policy();
    policy.verify_inline = false;
    Certificate cert = certify(certify_n, policy);
    bool flagged = std::holds_alternative<Flagged>(cert);
    bool verified = !flagged && verify(cert);
    std::cout << CertificateRecord::from_certificate(cert, verified).serialize() << "\n";
    return flagged ? 1 : 0;
  }

  if (cmd_scan->parsed()) {
    ScanOptions options;
    options.lo = scan_lo;
    options.hi = scan_hi;
    options.policy = flags.to_policy();
    options.jobs = jobs;
    options.out_path = out_path;
    options.checkpoint_path = checkpoint_path;
    ScanSummary summary;
    try {
      summary = scan_range(options);
    } catch (const CheckpointMismatch& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    }
    std::cout << "scanned " << summary.total << " values of n\n"
              << "  prime_order  " << summary.prime_order << "\n"
              << "  prime_power  " << summary.prime_power << "\n"
              << "  flagged      " << summary.flagged << " ("
              << summary.flagged_fraction << ")\n";
    for (const auto& [reason, count] : summary.flagged_by_reason)
      std::cout << "    " << reason << "  " << count << "\n";
    std::cout << "  reference shape exp(-c sqrt(log X log log X)) = "
              << summary.reference_shape << "\n";
    return 0;
  }

  if (cmd_verify->parsed()) {
    VerifyFileResult result = verify_file(verify_path);
    for (const auto& [line_no, what] : result.problems)
      std::cerr << "line " << line_no << ": " << what << "\n";
    if (result.empty_input) std::cerr << "warning: empty store file\n";
    std::cout << result.records << " records, " << result.verify_failures
              << " verification failures, " << result.malformed_lines
              << " malformed lines\n";
    if (result.malformed_lines) return 2;
    return result.verify_failures ? 1 : 0;
  }

  if (cmd_oracle->parsed()) {
    CycleType ct1 = parse_cycle_type(type1);
    CycleType ct2 = parse_cycle_type(type2);
    OracleMode mode;
    if (samples)
      mode = SampleMode{samples, seed};
    else
      mode = ExhaustiveMode{};
    Verdict verdict = invariably_generates(oracle_n, ct1, ct2, mode);
    switch (verdict.kind) {
      case VerdictKind::proven_true:
        std::cout << "proven-true (" << verdict.pairs_tested << " pairs)\n";
        return 0;
      case VerdictKind::sampled_no_refutation:
        std::cout << "sampled-no-refutation (" << verdict.pairs_tested
                  << " pairs, seed " << verdict.seed << ")\n";
        return 0;
      case VerdictKind::refuted: {
        std::cout << "refuted\n";
        auto print_perm = [](const Permutation& g) {
          for (int i = 0; i < g.degree(); ++i) std::cout << (i ? " " : "") << g[i];
          std::cout << "\n";
        };
        std::cout << "witness g1: ";
        print_perm(verdict.witness->first);
        std::cout << "witness g2: ";
        print_perm(verdict.witness->second);
        return 1;
      }
    }
  }

  if (cmd_kummer->parsed()) {
    bool covered = binomial_cover_check(kummer_n, kummer_p1, kummer_p2);
    std::cout << (covered ? "true" : "false") << "\n";
    return covered ? 0 : 1;
  }

  if (cmd_e2->parsed()) {
    E2Config cfg;
    cfg.X = (u64)e2_x;
    cfg.h = e2_h;
    cfg.c = e2_c;
    if (e2_sample)
      cfg.sample = SampleRandom{e2_sample, seed};
    else if (e2_stride)
      cfg.sample = SampleStride{e2_stride};
    else
      cfg.sample = SampleAll{};
    E2Summary summary = scan_intervals(cfg);
    for (const std::string& warning : summary.warnings)
      std::cerr << "warning: " << warning << "\n";
    std::string csv = e2_csv(summary);
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream out(out_path);
      out << csv;
    }
    std::cerr << "deficient fraction " << summary.deficient_fraction
              << " (reference h^-c = " << summary.reference_ratio << ")\n";
    return 0;
  }

  if (cmd_report->parsed()) {
    std::ifstream in(report_path);
    if (!in) {
      std::cerr << "error: cannot open " << report_path << "\n";
      return 2;
    }
    std::string line;
    u64 counts[3] = {0, 0, 0};
    std::map<std::string, u64> reasons;
    u64 max_n = 0;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (first && parse_store_header(line)) {
        first = false;
        continue;
      }
      first = false;
      CertificateRecord rec = CertificateRecord::parse(line);
      counts[(int)rec.type]++;
      max_n = std::max(max_n, rec.n);
      if (rec.reason) reasons[flag_reason_name(*rec.reason)]++;
    }
    u64 total = counts[0] + counts[1] + counts[2];
    std::cout << "records        " << total << "\n"
              << "prime_order    " << counts[0] << "\n"
              << "prime_power    " << counts[1] << "\n"
              << "flagged        " << counts[2] << "\n";
    for (const auto& [reason, count] : reasons)
      std::cout << "  " << reason << "  " << count << "\n";
    if (total) {
      double logX = std::log((double)std::max<u64>(max_n, 3));
      std::cout << "flagged fraction " << (double)counts[2] / (double)total << "\n"
                << "reference shape  "
                << std::exp(-0.02 * std::sqrt(logX * std::log(logX))) << "\n";
    }
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
