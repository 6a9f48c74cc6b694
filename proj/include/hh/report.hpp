#pragma once
/// @file report.hpp
/// @brief Command reports and their three output formats.
///
/// JSON is the canonical machine format: keys are sorted, dimension entries
/// are integers, rational scalars are "num/den" strings, and nothing
/// time-dependent is included, so identical inputs produce byte-identical
/// bytes. CSV carries only the Betti tables under the fixed header
/// "complex,degree,dim". Text is for humans and includes elapsed time.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hh/validation.hpp"

namespace hh::io {

struct BettiTable {
  std::string complex;            ///< which complex the rows describe
  std::vector<std::size_t> dims;  ///< entry n is the dimension in degree n
};

struct ValidationSummary {
  std::string subject;
  bool ok = true;
  std::vector<std::string> witnesses;
};

struct Report {
  std::string command;
  std::string field_label;
  std::optional<std::size_t> max_degree;
  bool ok = true;
  std::vector<ValidationSummary> validations;
  std::vector<BettiTable> tables;
  std::vector<std::string> notes;
  nlohmann::json extra = nlohmann::json::object();  ///< command-specific payload
  double seconds = 0.0;                             ///< text format only

  void add(const ValidationReport& rep) {
    validations.push_back({rep.subject, rep.ok, rep.failures});
    ok = ok && rep.ok;
  }

  void add_table(std::string name, std::vector<std::size_t> dims) {
    tables.push_back({std::move(name), std::move(dims)});
  }
};

inline std::string emit_json(const Report& r) {
  nlohmann::json j;
  j["command"] = r.command;
  j["field"] = r.field_label;
  j["ok"] = r.ok;
  if (r.max_degree) j["max_degree"] = *r.max_degree;
  if (!r.tables.empty()) {
    nlohmann::json tables = nlohmann::json::array();
    for (const auto& t : r.tables) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t n = 0; n < t.dims.size(); ++n)
        rows.push_back({{"degree", n}, {"dim", t.dims[n]}});
      tables.push_back({{"complex", t.complex}, {"rows", rows}});
    }
    j["tables"] = tables;
  }
  if (!r.validations.empty()) {
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : r.validations)
      vals.push_back({{"subject", v.subject}, {"ok", v.ok}, {"witnesses", v.witnesses}});
    j["validations"] = vals;
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  for (const auto& [key, value] : r.extra.items()) j[key] = value;
  return j.dump(2) + "\n";
}

inline std::string emit_csv(const Report& r) {
  std::string out = "complex,degree,dim\n";
  for (const auto& t : r.tables)
    for (std::size_t n = 0; n < t.dims.size(); ++n)
      out += t.complex + "," + std::to_string(n) + "," + std::to_string(t.dims[n]) + "\n";
  return out;
}

inline std::string emit_text(const Report& r) {
  std::string out;
  out += "command: " + r.command + "\n";
  out += "field:   " + r.field_label + "\n";
  if (r.max_degree) out += "degrees: 0.." + std::to_string(*r.max_degree) + "\n";
  out += std::string("status:  ") + (r.ok ? "ok" : "FAILED") + "\n";
  for (const auto& t : r.tables) {
    out += "\n" + t.complex + ":\n";
    for (std::size_t n = 0; n < t.dims.size(); ++n)
      out += "  degree " + std::to_string(n) + ": " + std::to_string(t.dims[n]) + "\n";
  }
  if (!r.validations.empty()) out += "\n";
  for (const auto& v : r.validations) {
    out += std::string("check ") + v.subject + ": " + (v.ok ? "ok" : "FAILED") + "\n";
    for (const auto& w : v.witnesses) out += "  witness: " + w + "\n";
  }
  if (!r.notes.empty()) out += "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  if (!r.extra.empty()) out += "\npayload:\n" + r.extra.dump(2) + "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r.seconds);
  out += "\nelapsed: " + std::string(buf) + " s\n";
  return out;
}

}  // namespace hh::io
