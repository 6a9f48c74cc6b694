#pragma once
/// @file validation.hpp
/// @brief Validation reports that carry human-readable witnesses.

#include <string>
#include <vector>

namespace hh {

/// Result of validating one structure; axiom failures are recorded with a
/// witness message (which axiom, at which basis elements, what was expected).
struct ValidationReport {
  std::string subject;
  bool ok = true;
  std::vector<std::string> failures;

  static constexpr std::size_t kMaxWitnesses = 64;

  explicit ValidationReport(std::string subj = "") : subject(std::move(subj)) {}

  void fail(const std::string& witness) {
    ok = false;
    if (failures.size() < kMaxWitnesses) failures.push_back(witness);
  }

  void merge(const ValidationReport& other) {
    if (!other.ok) {
      ok = false;
      for (const auto& f : other.failures) {
        if (failures.size() >= kMaxWitnesses) break;
        failures.push_back(other.subject.empty() ? f : other.subject + ": " + f);
      }
    }
  }
};

}  // namespace hh
