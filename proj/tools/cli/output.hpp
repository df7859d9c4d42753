#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace sbparity::cli {

/// 17 significant digits, '.' separator, independent of the C locale.
std::string format_double(double value);

/// Column label for a spectral exponent: 0.1 -> "0.1", 1 -> "1.0".
std::string format_label(double value);

using Cell = std::variant<double, long long, std::string>;

/// Fixed-header table rendered byte-identically as CSV or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string row_csv(std::size_t index) const;
    std::string to_csv() const;
    std::string to_json() const;
};

enum class Format { Csv, Json };

std::string sha256_hex(const std::string& bytes);

/// Collects every file written by a command and emits manifest.json listing
/// each one with its checksum.
class OutputDirectory {
public:
    explicit OutputDirectory(std::filesystem::path root);

    const std::filesystem::path& root() const noexcept { return root_; }

    /// Writes `content` to root/name and records its checksum.
    void write(const std::string& name, const std::string& content);
    void write_table(const std::string& stem, const Table& table, Format format);

    /// Writes manifest.json; `extra` keys are merged at top level.
    void write_manifest(const std::string& command, const nlohmann::json& extra);

private:
    std::filesystem::path root_;
    nlohmann::json files_ = nlohmann::json::array();
};

inline constexpr const char* kToolVersion = "0.3.0";

}  // namespace sbparity::cli
