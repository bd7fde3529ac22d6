#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "ndirac/config.hpp"
#include "ndirac/constants.hpp"

namespace ndirac {

// Round-trip decimal form; NaN and infinities as "nan", "inf", "-inf".
std::string fmt(double v);

// RFC-4180 field quoting.
std::string csv_field(const std::string& s);

// Rows are prefixed with schema_version, config_hash and seed on write.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

struct RunMeta {
  std::string config_hash;
  std::uint64_t seed = 0;
};

std::string render_csv(const CsvTable& t, const RunMeta& m);
// Adds schema_version, config_hash and seed at the top level.
std::string render_json(nlohmann::json j, const RunMeta& m);

void write_text(const std::filesystem::path& p, const std::string& s);

}  // namespace ndirac
