#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace bhlab::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Comma-separated rows with a header, LF line endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_string() const;
};

/// Parses a header row followed by numeric rows. Throws std::runtime_error on malformed input.
CsvTable parse_csv(const std::string& text);

std::string read_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

std::filesystem::path manifest_path(const std::filesystem::path& out);

/// UTC time in ISO 8601, the only non-deterministic manifest field.
std::string utc_timestamp();

}  // namespace bhlab::cli
