#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "omni/document.hpp"

namespace omni {

struct CheckResult {
  std::string label;
  std::string verb;
  std::string target;
  bool holds = false;     // the verified property holds
  bool expected = true;   // outcome declared in the document
  bool pass = false;      // holds == expected and no error
  double seconds = 0.0;
  nlohmann::json details = nlohmann::json::object();
  std::vector<Witness> witnesses;
  std::vector<std::string> coordinates;  // names for witness points
  std::string error;      // exception text; a recorded error counts as a failure
};

struct RunReport {
  std::string source;
  Oracle oracle;
  std::vector<CheckResult> results;  // declaration order
  std::size_t passed() const;
  bool ok() const { return passed() == results.size(); }
};

// Command line overrides of the document oracle block.
struct OracleOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> atol, rtol;
  Oracle apply(Oracle o) const;
};

// Runs one check; never throws.
CheckResult run_check(const Document& doc, const CheckDef& check, const Oracle& o);
// Runs every check (or only `only` when non-empty) in declaration order.
RunReport run_document(const Document& doc, const Oracle& o, const std::string& only = "");

// Check verbs available from the command line build a synthetic check block.
CheckDef synthetic_check(const std::string& verb, const std::string& target,
                         const std::vector<std::pair<std::string, std::string>>& args);

}  // namespace omni
