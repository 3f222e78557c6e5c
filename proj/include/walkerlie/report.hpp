#pragma once

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "walkerlie/verdict.hpp"

namespace walkerlie {

enum class CheckKind {
  Assert,  // pass/fail; failures drive the exit status
  Info,    // diagnostic note, never fails
  Value,   // reported quantity (label, tensor, classification)
};

struct CheckRecord {
  std::string name;
  CheckKind kind = CheckKind::Assert;
  std::optional<bool> verdict;
  std::optional<Confidence> confidence;
  std::string value;
  std::string note;
  std::optional<Point> witness;

  static CheckRecord assertion(std::string name, const Verdict& v);
  static CheckRecord assertion(std::string name, bool ok, Confidence c = Confidence::Exact);
  static CheckRecord info(std::string name, std::string note);
  static CheckRecord quantity(std::string name, std::string value,
                           std::optional<Confidence> c = std::nullopt);
};

/// Result of one CLI run: checks in execution order plus tensor printouts.
/// The JSON rendering is byte-identical across runs with the same document
/// and seed; wall-clock timings are collected separately and only embedded
/// on request.
struct Report {
  std::string kind;
  std::uint64_t seed = 42;
  std::vector<CheckRecord> checks;
  std::vector<std::pair<std::string, std::string>> tensors;
  std::vector<std::pair<std::string, double>> timings_ms;
  bool include_timings = false;

  void add(CheckRecord record) { checks.push_back(std::move(record)); }
  bool all_passed() const;

  nlohmann::ordered_json to_json() const;
  std::string to_json_string() const;
  std::string human_table() const;
};

}  // namespace walkerlie
