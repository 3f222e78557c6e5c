#pragma once

#include <optional>
#include <string>

#include "walkerlie/zerotest.hpp"

namespace walkerlie {

/// Boolean result of a geometric check together with how it was decided
/// and, when available, a witness point for the failing case.
struct Verdict {
  bool value = false;
  Confidence confidence = Confidence::Exact;
  std::optional<Point> witness;
  std::string note;

  static Verdict pass(Confidence c = Confidence::Exact) { return {true, c, std::nullopt, {}}; }
  static Verdict fail(Confidence c = Confidence::Exact, std::optional<Point> w = std::nullopt,
                      std::string note = {}) {
    return {false, c, std::move(w), std::move(note)};
  }

  /// Conjunction: false dominates, confidence degrades to the weakest seen.
  Verdict& merge(const Verdict& other) {
    confidence = weaker(confidence, other.confidence);
    if (!other.value && value) {
      value = false;
      witness = other.witness;
      if (note.empty()) note = other.note;
    }
    return *this;
  }

  Verdict& merge(const ZeroResult& zr) {
    confidence = weaker(confidence, zr.confidence);
    if (!zr.zero && value) {
      value = false;
      witness = zr.witness;
    }
    return *this;
  }
};

}  // namespace walkerlie
