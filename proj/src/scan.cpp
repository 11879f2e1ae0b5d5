#include "invgen/scan.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

namespace invgen {

namespace {

constexpr u64 kChunk = 512;

std::vector<std::string> process_chunk(u64 lo, u64 hi, const SearchPolicy& policy) {
  std::vector<std::string> lines;
  lines.reserve(hi - lo + 1);
  for (u64 n = lo; n <= hi; ++n) {
    Certificate cert = certify(n, policy);
    bool verified = !std::holds_alternative<Flagged>(cert) && verify(cert);
    lines.push_back(CertificateRecord::from_certificate(cert, verified).serialize());
  }
  return lines;
}

}  // namespace

ScanSummary scan_range(const ScanOptions& options) {
  if (options.lo < 5 || options.lo > options.hi || options.hi > 1000000000000ull)
    throw std::invalid_argument("scan_range: need 5 <= lo <= hi <= 10^12");
  if (options.out_path.empty())
    throw std::invalid_argument("scan_range: output path required");

  SearchPolicy policy = options.policy;
  policy.verify_inline = false;  // scan verifies explicitly per record
  std::string fingerprint = policy_fingerprint(policy);

  ScanSummary summary;
  ScanCheckpoint cp;
  cp.lo = options.lo;
  cp.hi = options.hi;
  cp.last_completed = options.lo - 1;
  cp.fingerprint = fingerprint;

  bool resuming = false;
  if (!options.checkpoint_path.empty() &&
      std::filesystem::exists(options.checkpoint_path)) {
    std::ifstream in(options.checkpoint_path);
    std::stringstream buf;
    buf << in.rdbuf();
    ScanCheckpoint prev = ScanCheckpoint::parse(buf.str());
    if (prev.fingerprint != fingerprint || prev.lo != options.lo ||
        prev.hi != options.hi)
      throw CheckpointMismatch("checkpoint does not match this scan's policy/range");
    cp = prev;
    resuming = true;
  }
  summary.resumed = resuming;

  if (resuming) {
    // Drop any bytes past the last completed chunk boundary.
    std::filesystem::resize_file(options.out_path, cp.file_offset);
  } else {
    std::ofstream out(options.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + options.out_path);
    out << store_header_line(policy) << "\n";
    out.flush();
    cp.file_offset = (u64)out.tellp();
  }

  u64 start = cp.last_completed + 1;
  if (start <= options.hi) {
    u64 total_left = options.hi - start + 1;
    u64 n_chunks = (total_left + kChunk - 1) / kChunk;
    std::atomic<u64> next_chunk{0};
    std::mutex mu;
    std::condition_variable cv;
    std::map<u64, std::vector<std::string>> done;

    unsigned jobs = std::max(1u, options.jobs);
    auto worker = [&] {
      for (;;) {
        u64 idx = next_chunk.fetch_add(1);
        if (idx >= n_chunks) return;
        u64 lo = start + idx * kChunk;
        u64 hi = std::min(options.hi, lo + kChunk - 1);
        std::vector<std::string> lines = process_chunk(lo, hi, policy);
        std::lock_guard<std::mutex> lock(mu);
        done[idx] = std::move(lines);
        cv.notify_all();
      }
    };
    std::vector<std::thread> threads;
    for (unsigned i = 0; i + 1 < jobs && i + 1 < n_chunks + 1; ++i)
      threads.emplace_back(worker);

    std::ofstream out(options.out_path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot append to " + options.out_path);
    for (u64 idx = 0; idx < n_chunks; ++idx) {
      std::vector<std::string> lines;
      {
        std::unique_lock<std::mutex> lock(mu);
        while (!done.count(idx)) {
          lock.unlock();
          // The emitting thread doubles as a worker while waiting.
          u64 steal = next_chunk.fetch_add(1);
          if (steal < n_chunks) {
            u64 lo = start + steal * kChunk;
            u64 hi = std::min(options.hi, lo + kChunk - 1);
            std::vector<std::string> mine = process_chunk(lo, hi, policy);
            lock.lock();
            done[steal] = std::move(mine);
          } else {
            lock.lock();
            cv.wait_for(lock, std::chrono::milliseconds(20),
                        [&] { return done.count(idx) > 0; });
          }
        }
        lines = std::move(done[idx]);
        done.erase(idx);
      }
      for (const std::string& line : lines) {
        out << line << "\n";
        CertificateRecord rec = CertificateRecord::parse(line);
        cp.counts[record_type_name(rec.type)]++;
        if (rec.reason) cp.counts["reason:" + flag_reason_name(*rec.reason)]++;
      }
      out.flush();
      cp.last_completed = std::min(options.hi, start + (idx + 1) * kChunk - 1);
      cp.file_offset = (u64)out.tellp();
      if (!options.checkpoint_path.empty())
        write_file_atomic(options.checkpoint_path, cp.serialize());
    }
    for (std::thread& t : threads) t.join();
  }

  summary.total = options.hi - options.lo + 1;
  summary.prime_order = cp.counts["prime_order"];
  summary.prime_power = cp.counts["prime_power"];
  summary.flagged = cp.counts["flagged"];
  for (const auto& [key, value] : cp.counts) {
    if (key.rfind("reason:", 0) == 0)
      summary.flagged_by_reason[key.substr(7)] = value;
  }
  summary.flagged_fraction =
      summary.total ? (double)summary.flagged / (double)summary.total : 0.0;
  double logX = std::log((double)options.hi);
  summary.reference_shape =
      std::exp(-policy.c * std::sqrt(logX * std::log(std::max(logX, 1.5))));
  return summary;
}

}  // namespace invgen
