#pragma once

#include <json.hpp>

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

namespace htype::cli {

/// Bumped whenever a module changes numbers it emits; part of every cache key.
inline constexpr const char* kModuleVersions =
    "clifford_rep=1;nilpotent_algebra=1;geometry=1;harmonic_analysis=1;glz_spectrum=1;"
    "twisted_fourier=1;wave_operators=1;isospectral=1;cli=1";

/// Content-addressed store under <out>/cache: one file per key holding the exact result bytes.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// SHA-256 of the command name, the canonical input JSON and the module versions.
    static std::string key(const std::string& command, const nlohmann::json& inputs);

    std::optional<std::string> load(const std::string& key) const;
    /// Serialized: concurrent jobs funnel through one writer.
    void store(const std::string& key, const std::string& bytes);

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path path(const std::string& key) const { return dir_ / (key + ".json"); }

    std::filesystem::path dir_;
    std::mutex write_mutex_;
};

}  // namespace htype::cli
