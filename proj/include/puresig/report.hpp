#pragma once

// Report envelope shared by every CLI command, and its json / csv / table
// renderings. Rationals are always serialized as "num/den".

#include <string>
#include <vector>

#include <json.hpp>

#include "puresig/binomial.hpp"

namespace puresig {

inline constexpr const char* kVersion = "0.1.0";

/// "invariant" verdicts drive the exit status; "conjecture" and "finding"
/// verdicts are reported only.
struct VerdictEntry {
  std::string name;
  Verdict verdict = Verdict::kPass;
  std::string kind = "invariant";
  std::string detail;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<VerdictEntry> verdicts;
  Table table;  // tabular view for csv/table output; derived from results when empty

  void add_verdict(std::string name, bool ok, std::string kind = "invariant", std::string detail = {});
  bool invariant_failed() const;
};

enum class Format { kJson, kCsv, kTable };

Format parse_format(const std::string& s);
std::string render(const Report& r, Format f);

nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const std::vector<Rational>& v);
nlohmann::json to_json(const AlgebraicOdds& t);

}  // namespace puresig
