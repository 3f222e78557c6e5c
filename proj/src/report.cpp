#include "walkerlie/report.hpp"

#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

namespace walkerlie {

CheckRecord CheckRecord::assertion(std::string name, const Verdict& v) {
  CheckRecord r;
  r.name = std::move(name);
  r.kind = CheckKind::Assert;
  r.verdict = v.value;
  r.confidence = v.confidence;
  r.note = v.note;
  r.witness = v.witness;
  return r;
}

CheckRecord CheckRecord::assertion(std::string name, bool ok, Confidence c) {
  CheckRecord r;
  r.name = std::move(name);
  r.kind = CheckKind::Assert;
  r.verdict = ok;
  r.confidence = c;
  return r;
}

CheckRecord CheckRecord::info(std::string name, std::string note) {
  CheckRecord r;
  r.name = std::move(name);
  r.kind = CheckKind::Info;
  r.note = std::move(note);
  return r;
}

CheckRecord CheckRecord::quantity(std::string name, std::string value, std::optional<Confidence> c) {
  CheckRecord r;
  r.name = std::move(name);
  r.kind = CheckKind::Value;
  r.value = std::move(value);
  r.confidence = c;
  return r;
}

bool Report::all_passed() const {
  for (const auto& c : checks) {
    if (c.kind == CheckKind::Assert && c.verdict.has_value() && !*c.verdict) return false;
  }
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = kind;
  j["seed"] = seed;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    switch (c.kind) {
      case CheckKind::Assert: jc["kind"] = "assert"; break;
      case CheckKind::Info: jc["kind"] = "info"; break;
      case CheckKind::Value: jc["kind"] = "value"; break;
    }
    if (c.verdict.has_value()) jc["verdict"] = *c.verdict;
    if (c.confidence.has_value()) jc["confidence"] = confidence_name(*c.confidence);
    if (!c.value.empty()) jc["value"] = c.value;
    if (!c.note.empty()) jc["note"] = c.note;
    if (c.witness.has_value()) {
      nlohmann::ordered_json w;
      for (const auto& [k, v] : c.witness->values()) w[k] = v;
      jc["witness"] = w;
    }
    j["checks"].push_back(std::move(jc));
  }
  j["tensors"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : tensors) j["tensors"][name] = value;
  j["timings"] = nlohmann::ordered_json::object();
  if (include_timings) {
    for (const auto& [name, ms] : timings_ms) j["timings"][name] = ms;
  }
  return j;
}

std::string Report::to_json_string() const { return to_json().dump(2) + "\n"; }

std::string Report::human_table() const {
  std::ostringstream os;
  os << "kind: " << kind << "   seed: " << seed << "\n";
  std::size_t width = 4;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  for (const auto& c : checks) {
    std::string tag;
    switch (c.kind) {
      case CheckKind::Assert: tag = *c.verdict ? "PASS" : "FAIL"; break;
      case CheckKind::Info: tag = "info"; break;
      case CheckKind::Value: tag = " val"; break;
    }
    os << "[" << tag << "] " << std::left << std::setw(static_cast<int>(width)) << c.name;
    if (c.confidence.has_value()) os << "  (" << confidence_name(*c.confidence) << ")";
    if (!c.value.empty()) os << "  " << c.value;
    if (!c.note.empty()) os << "  -- " << c.note;
    if (c.witness.has_value()) {
      os << "  witness:";
      for (const auto& [k, v] : c.witness->values()) os << " " << k << "=" << v;
    }
    os << "\n";
  }
  if (!tensors.empty()) {
    os << "tensors:\n";
    for (const auto& [name, value] : tensors) os << "  " << name << " = " << value << "\n";
  }
  if (!timings_ms.empty()) {
    os << "timings (ms):\n";
    for (const auto& [name, ms] : timings_ms) {
      os << "  " << name << ": " << std::fixed << std::setprecision(1) << ms << "\n";
    }
  }
  os << (all_passed() ? "all checks passed" : "CHECKS FAILED") << "\n";
  return os.str();
}

}  // namespace walkerlie
