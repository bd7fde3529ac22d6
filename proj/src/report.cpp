#include "ndirac/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "ndirac/errors.hpp"

namespace ndirac {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw std::logic_error("CsvTable: row width does not match the header");
  rows.push_back(std::move(row));
}

std::string render_csv(const CsvTable& t, const RunMeta& m) {
  std::string out = "schema_version,config_hash,seed";
  for (const auto& c : t.columns) out += "," + csv_field(c);
  out += "\r\n";
  const std::string prefix = std::to_string(kSchemaVersion) + "," + m.config_hash + "," + std::to_string(m.seed);
  for (const auto& row : t.rows) {
    out += prefix;
    for (const auto& f : row) out += "," + csv_field(f);
    out += "\r\n";
  }
  return out;
}

std::string render_json(nlohmann::json j, const RunMeta& m) {
  j["schema_version"] = kSchemaVersion;
  j["config_hash"] = m.config_hash;
  j["seed"] = m.seed;
  return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& p, const std::string& s) {
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("output.directory: cannot write " + p.string());
  out << s;
}

}  // namespace ndirac
