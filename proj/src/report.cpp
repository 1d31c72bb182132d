#include "puresig/report.hpp"

#include <algorithm>
#include <sstream>

namespace puresig {

void Report::add_verdict(std::string name, bool ok, std::string kind, std::string detail) {
  verdicts.push_back({std::move(name), ok ? Verdict::kPass : Verdict::kFail, std::move(kind), std::move(detail)});
}

bool Report::invariant_failed() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const VerdictEntry& v) { return v.kind == "invariant" && v.verdict == Verdict::kFail; });
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  if (s == "table") return Format::kTable;
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + s + "' (json, csv, table)");
}

nlohmann::json to_json(const Rational& r) { return r.to_string(); }

nlohmann::json to_json(const std::vector<Rational>& v) {
  auto a = nlohmann::json::array();
  for (const auto& r : v) a.push_back(r.to_string());
  return a;
}

nlohmann::json to_json(const AlgebraicOdds& t) { return t.to_string(); }

namespace {

std::string cell(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

Table derive_table(const Report& r) {
  if (!r.table.header.empty()) return r.table;
  Table t{{"key", "value"}, {}};
  for (const auto& [k, v] : r.results.items()) t.rows.push_back({k, cell(v)});
  for (const auto& v : r.verdicts) t.rows.push_back({"verdict:" + v.name, verdict_name(v.verdict)});
  return t;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string render(const Report& r, Format f) {
  if (f == Format::kJson) {
    nlohmann::json env;
    env["command"] = r.command;
    env["parameters"] = r.parameters;
    env["results"] = r.results;
    auto verdicts = nlohmann::json::array();
    for (const auto& v : r.verdicts) {
      nlohmann::json e{{"name", v.name}, {"verdict", verdict_name(v.verdict)}, {"kind", v.kind}};
      if (!v.detail.empty()) e["detail"] = v.detail;
      verdicts.push_back(std::move(e));
    }
    env["verdicts"] = std::move(verdicts);
    env["version"] = kVersion;
    return env.dump(2) + "\n";
  }
  const Table t = derive_table(r);
  std::ostringstream os;
  if (f == Format::kCsv) {
    auto line = [&os](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
      os << "\n";
    };
    line(t.header);
    for (const auto& row : t.rows) line(row);
    return os.str();
  }
  std::vector<std::size_t> width(t.header.size(), 0);
  auto widen = [&width](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  };
  widen(t.header);
  for (const auto& row : t.rows) widen(row);
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i];
      if (i + 1 < row.size()) os << std::string(width[i] - row[i].size() + 2, ' ');
    }
    os << "\n";
  };
  line(t.header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  os << std::string(total > 2 ? total - 2 : total, '-') << "\n";
  for (const auto& row : t.rows) line(row);
  return os.str();
}

}  // namespace puresig
