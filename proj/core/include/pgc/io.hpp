#pragma once
// io.hpp — CSV/JSON artifact formatting shared by the tool and tests.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgc/kernels.hpp"

namespace pgc {

// 9 significant digits, stable for golden-file diffs.
std::string format_sig9(double v);

// Header row, data rows, and one trailing comment line starting with '#'.
struct Csv {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string metadata;  // rendered as "# <metadata>"

  std::string to_string() const;
};

void write_text_file(const std::string& path, const std::string& content);

Csv moment_table_csv(const MomentTable& table);
nlohmann::json moment_table_json(const MomentTable& table);

nlohmann::json run_metadata(std::uint64_t seed, const std::string& git_version,
                            double wallclock_sec);

}  // namespace pgc
