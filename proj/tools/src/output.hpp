#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace htype::cli {

using json = nlohmann::json;

/// %.17g for every float; integers, strings and structure as nlohmann would print them.
/// Objects keep nlohmann's sorted key order, so equal values give equal bytes.
std::string dump_json(const json& value, int indent = 2);

/// %.17g; non-finite values print as nan / inf / -inf.
std::string format_double(double v);

/// Rows of already-formatted cells; quoting follows RFC 4180.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Writes through a temporary file and rename, so readers never see partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);
std::string read_file_bytes(const std::filesystem::path& path);

/// Lower-case hex SHA-256.
std::string sha256_hex(const std::string& bytes);

}  // namespace htype::cli
