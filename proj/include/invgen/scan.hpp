#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "invgen/certify.hpp"
#include "invgen/store.hpp"

namespace invgen {

struct CheckpointMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScanOptions {
  u64 lo = 0, hi = 0;
  SearchPolicy policy;
  unsigned jobs = 1;
  std::string out_path;
  std::string checkpoint_path;  // empty disables checkpointing
};

struct ScanSummary {
  u64 total = 0;
  u64 prime_order = 0, prime_power = 0, flagged = 0;
  std::map<std::string, u64> flagged_by_reason;
  double flagged_fraction = 0.0;
  // exp(-c (log X)^(1/2) (log log X)^(1/2)), the asymptotic shape of the
  // exceptional density, reported for reference only.
  double reference_shape = 0.0;
  bool resumed = false;
};

/// Scans [lo, hi], one record per n, workers processing fixed-size chunks
/// out of order but emitted in order. Output content is a pure function
/// of (lo, hi, policy, engine version). Resumable from the checkpoint;
/// a fingerprint mismatch throws CheckpointMismatch.
ScanSummary scan_range(const ScanOptions& options);

}  // namespace invgen
