// io.cpp — CSV/JSON artifact formatting.

#include "pgc/io.hpp"

#include <cstdio>
#include <fstream>

namespace pgc {

std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string Csv::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  if (!metadata.empty()) out += "# " + metadata + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::BadConfig, "cannot open '" + path + "' for writing");
  f << content;
  if (!f) fail(ErrorCode::BadConfig, "short write to '" + path + "'");
}

Csv moment_table_csv(const MomentTable& table) {
  Csv csv;
  csv.columns = {"k", "L", "m_rational", "m_float"};
  for (int k = 1; k <= table.k_max; ++k)
    for (int l = 0; l <= table.L; ++l) {
      std::vector<std::string> row;
      row.push_back(std::to_string(k));
      row.push_back(std::to_string(l));
      row.push_back(table.exact ? table.m_rat[k - 1][l].to_string() : "");
      row.push_back(format_sig9(table.m[k - 1][l]));
      csv.rows.push_back(std::move(row));
    }
  csv.metadata = "activation=" + table.activation + " x2=" + format_sig9(table.x2) +
                 " exact=" + (table.exact ? "1" : "0");
  return csv;
}

nlohmann::json moment_table_json(const MomentTable& table) {
  nlohmann::json j;
  j["k_max"] = table.k_max;
  j["L"] = table.L;
  j["exact"] = table.exact;
  j["activation"] = table.activation;
  j["x2"] = table.x2;
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 1; k <= table.k_max; ++k)
    for (int l = 0; l <= table.L; ++l) {
      nlohmann::json row;
      row["k"] = k;
      row["L"] = l;
      if (table.exact) row["m_rational"] = table.m_rat[k - 1][l].to_string();
      row["m_float"] = table.m[k - 1][l];
      rows.push_back(std::move(row));
    }
  j["moments"] = std::move(rows);
  return j;
}

nlohmann::json run_metadata(std::uint64_t seed, const std::string& git_version,
                            double wallclock_sec) {
  nlohmann::json j;
  j["seed"] = seed;
  j["git_version"] = git_version;
  j["wallclock_sec"] = wallclock_sec;
  return j;
}

}  // namespace pgc
