#include "output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace sbparity::cli {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_csv(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    return csv_escape(std::get<std::string>(cell));
}

std::string cell_json(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return std::isfinite(*d) ? format_double(*d) : "null";
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    return nlohmann::json(std::get<std::string>(cell)).dump();
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), end);
}

std::string format_label(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) throw std::runtime_error("format_label: conversion failed");
    std::string s(buf.data(), end);
    if (s.find_first_of(".eE") == std::string::npos && std::isfinite(value)) s += ".0";
    return s;
}

std::string Table::row_csv(std::size_t index) const {
    std::string line;
    const auto& row = rows.at(index);
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) line += ',';
        line += cell_csv(row[c]);
    }
    return line;
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += csv_escape(columns[c]);
    }
    out += '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += row_csv(r);
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    std::string out = "{\"columns\":" + nlohmann::json(columns).dump() + ",\"rows\":[";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r) out += ',';
        out += '[';
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c) out += ',';
            out += cell_json(rows[r][c]);
        }
        out += ']';
    }
    out += "]}\n";
    return out;
}

std::string sha256_hex(const std::string& bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return os.str();
}

OutputDirectory::OutputDirectory(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_);
}

void OutputDirectory::write(const std::string& name, const std::string& content) {
    const auto path = root_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path, std::make_error_code(std::errc::io_error));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::filesystem::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
    files_.push_back({{"path", name}, {"sha256", sha256_hex(content)}, {"bytes", content.size()}});
}

void OutputDirectory::write_table(const std::string& stem, const Table& table, Format format) {
    if (format == Format::Csv) write(stem + ".csv", table.to_csv());
    else write(stem + ".json", table.to_json());
}

void OutputDirectory::write_manifest(const std::string& command, const nlohmann::json& extra) {
    nlohmann::json manifest = {
        {"tool", "sbparity"},
        {"version", kToolVersion},
        {"command", command},
        {"files", files_},
    };
    for (const auto& [key, value] : extra.items()) manifest[key] = value;
    const std::string text = manifest.dump(2) + "\n";
    std::ofstream out(root_ / "manifest.json", std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::filesystem::filesystem_error("write failed", root_ / "manifest.json", std::make_error_code(std::errc::io_error));
}

}  // namespace sbparity::cli
