#include "cache.hpp"

#include "output.hpp"

namespace htype::cli {

std::string ResultCache::key(const std::string& command, const nlohmann::json& inputs) {
    return sha256_hex(command + "\n" + dump_json(inputs, 0) + kModuleVersions);
}

std::optional<std::string> ResultCache::load(const std::string& key) const {
    const auto p = path(key);
    if (!std::filesystem::exists(p)) return std::nullopt;
    return read_file_bytes(p);
}

void ResultCache::store(const std::string& key, const std::string& bytes) {
    const std::lock_guard<std::mutex> lock(write_mutex_);
    write_file_atomic(path(key), bytes);
}

}  // namespace htype::cli
