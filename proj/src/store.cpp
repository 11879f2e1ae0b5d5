#include "invgen/store.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace invgen {

std::string record_type_name(RecordType type) {
  switch (type) {
    case RecordType::prime_order: return "prime_order";
    case RecordType::prime_power: return "prime_power";
    case RecordType::flagged: return "flagged";
  }
  return "unknown";
}

CertificateRecord CertificateRecord::from_certificate(const Certificate& cert,
                                                      bool verified) {
  CertificateRecord rec;
  rec.verified = verified;
  if (const auto* po = std::get_if<PrimeOrderPair>(&cert)) {
    rec.n = po->n;
    rec.type = RecordType::prime_order;
    rec.p = po->p;
    rec.r = po->r;
    rec.t = po->t;
    rec.u = po->u;
  } else if (const auto* pp = std::get_if<PrimePowerPair>(&cert)) {
    rec.n = pp->n;
    rec.type = RecordType::prime_power;
    rec.p = pp->p;
    rec.a = pp->a;
    rec.r = pp->r;
  } else {
    const auto& fl = std::get<Flagged>(cert);
    rec.n = fl.n;
    rec.type = RecordType::flagged;
    rec.verified = false;
    rec.reason = fl.reason;
  }
  return rec;
}

Certificate CertificateRecord::to_certificate() const {
  switch (type) {
    case RecordType::prime_order:
      if (!p || !r || !t || !u)
        throw std::invalid_argument("record: prime_order needs p, r, t, u");
      return PrimeOrderPair{n, *p, *r, *t, *u};
    case RecordType::prime_power:
      if (!p || !a || !r)
        throw std::invalid_argument("record: prime_power needs p, a, r");
      return PrimePowerPair{n, *p, *a, *r};
    case RecordType::flagged:
      return Flagged{n, reason.value_or(FlagReason::budget_exhausted), ""};
  }
  throw std::invalid_argument("record: unknown type");
}

std::string CertificateRecord::serialize() const {
  std::ostringstream os;
  os << "{\"n\":" << n << ",\"type\":\"" << record_type_name(type) << "\"";
  if (p) os << ",\"p\":" << *p;
  if (a) os << ",\"a\":" << *a;
  if (r) os << ",\"r\":" << *r;
  if (t) os << ",\"t\":" << *t;
  if (u) os << ",\"u\":" << *u;
  os << ",\"verified\":" << (verified ? "true" : "false");
  if (reason) os << ",\"reason\":\"" << flag_reason_name(*reason) << "\"";
  os << ",\"engine_version\":\"" << engine_version << "\"}";
  return os.str();
}

CertificateRecord CertificateRecord::parse(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  CertificateRecord rec;
  rec.n = j.at("n").get<u64>();
  std::string type = j.at("type").get<std::string>();
  if (type == "prime_order")
    rec.type = RecordType::prime_order;
  else if (type == "prime_power")
    rec.type = RecordType::prime_power;
  else if (type == "flagged")
    rec.type = RecordType::flagged;
  else
    throw std::invalid_argument("record: unknown type " + type);
  if (j.contains("p")) rec.p = j["p"].get<u64>();
  if (j.contains("a")) rec.a = j["a"].get<int>();
  if (j.contains("r")) rec.r = j["r"].get<u64>();
  if (j.contains("t")) rec.t = j["t"].get<u64>();
  if (j.contains("u")) rec.u = j["u"].get<u64>();
  rec.verified = j.at("verified").get<bool>();
  if (j.contains("reason")) {
    auto reason = flag_reason_from_name(j["reason"].get<std::string>());
    if (!reason) throw std::invalid_argument("record: unknown reason");
    rec.reason = *reason;
  }
  rec.engine_version = j.value("engine_version", std::string(kEngineVersion));
  return rec;
}

std::string policy_fingerprint(const SearchPolicy& policy) {
  std::ostringstream canonical;
  canonical.precision(17);
  canonical << "c=" << policy.c << ";h0=";
  if (policy.fixed_h)
    canonical << "fixed:" << *policy.fixed_h;
  else
    canonical << "adaptive";
  canonical << ";growth=" << policy.growth << ";max_h=" << policy.max_h
            << ";mode=" << (policy.mode == SearchMode::question1 ? "question1" : "prime-order")
            << ";unsafe=" << (policy.unsafe_lemma ? 1 : 0);
  std::string text = canonical.str();
  u64 hash = 14695981039346656037ull;  // FNV-1a
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << hash;
  return hex.str();
}

std::string store_header_line(const SearchPolicy& policy) {
  std::ostringstream os;
  os << "{\"type\":\"header\",\"policy_fingerprint\":\"" << policy_fingerprint(policy)
     << "\",\"engine_version\":\"" << kEngineVersion << "\"}";
  return os.str();
}

std::optional<std::string> parse_store_header(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (j.value("type", "") != "header") return std::nullopt;
  return j.value("policy_fingerprint", "");
}

std::string ScanCheckpoint::serialize() const {
  nlohmann::ordered_json j;
  j["lo"] = lo;
  j["hi"] = hi;
  j["last_completed"] = last_completed;
  j["policy_fingerprint"] = fingerprint;
  j["file_offset"] = file_offset;
  j["counts"] = counts;
  return j.dump();
}

ScanCheckpoint ScanCheckpoint::parse(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ScanCheckpoint cp;
  cp.lo = j.at("lo").get<u64>();
  cp.hi = j.at("hi").get<u64>();
  cp.last_completed = j.at("last_completed").get<u64>();
  cp.fingerprint = j.at("policy_fingerprint").get<std::string>();
  cp.file_offset = j.at("file_offset").get<u64>();
  if (j.contains("counts"))
    cp.counts = j["counts"].get<std::map<std::string, u64>>();
  return cp;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed for " + path);
}

VerifyFileResult verify_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  VerifyFileResult result;
  std::string line;
  std::size_t line_no = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    any = true;
    if (line_no == 1 && parse_store_header(line)) continue;
    CertificateRecord rec;
    try {
      rec = CertificateRecord::parse(line);
    } catch (const std::exception& e) {
      ++result.malformed_lines;
      result.problems.push_back({line_no, std::string("malformed: ") + e.what()});
      continue;
    }
    ++result.records;
    if (rec.type == RecordType::flagged) continue;
    bool ok = false;
    try {
      ok = verify(rec.to_certificate());
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok || !rec.verified) {
      ++result.verify_failures;
      std::ostringstream what;
      what << "record n=" << rec.n << " fails re-verification";
      result.problems.push_back({line_no, what.str()});
    }
  }
  result.empty_input = !any;
  return result;
}

}  // namespace invgen
