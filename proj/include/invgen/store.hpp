#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "invgen/certify.hpp"

namespace invgen {

inline constexpr const char* kEngineVersion = "0.1.0";

enum class RecordType { prime_order, prime_power, flagged };

std::string record_type_name(RecordType type);

/// Wire form of a certificate: one JSONL line, fixed field order
/// (n, type, p, a, r, t, u, verified, reason, engine_version), absent
/// fields omitted, numbers in decimal.
struct CertificateRecord {
  u64 n = 0;
  RecordType type = RecordType::flagged;
  std::optional<u64> p, r, t, u;
  std::optional<int> a;
  bool verified = false;
  std::optional<FlagReason> reason;
  std::string engine_version = kEngineVersion;

  static CertificateRecord from_certificate(const Certificate& cert, bool verified);
  Certificate to_certificate() const;
  std::string serialize() const;
  static CertificateRecord parse(const std::string& line);
};

/// Stable hash of the content-relevant policy fields, as a hex string.
std::string policy_fingerprint(const SearchPolicy& policy);

std::string store_header_line(const SearchPolicy& policy);
/// Fingerprint carried by a header line, if the line is one.
std::optional<std::string> parse_store_header(const std::string& line);

struct ScanCheckpoint {
  u64 lo = 0, hi = 0;
  u64 last_completed = 0;  // lo-1 when nothing done yet
  std::string fingerprint;
  u64 file_offset = 0;  // output bytes written so far
  std::map<std::string, u64> counts;

  std::string serialize() const;
  static ScanCheckpoint parse(const std::string& text);
};

/// Write-then-rename; the checkpoint on disk is always complete.
void write_file_atomic(const std::string& path, const std::string& content);

struct VerifyFileResult {
  u64 records = 0;
  u64 verify_failures = 0;
  u64 malformed_lines = 0;
  std::vector<std::pair<std::size_t, std::string>> problems;  // (line number, what)
  bool empty_input = false;
};

/// Re-verifies every non-flagged record in a store file with the
/// independent verifier.
VerifyFileResult verify_file(const std::string& path);

}  // namespace invgen
