#pragma once

#include <filesystem>
#include <string>

namespace ransomtrace {

/// Provenance record written atomically at the end of every pipeline
/// stage. Re-runs with identical inputs produce identical manifests
/// except for the timestamps.
struct RunManifest {
    std::string stage;
    std::string campaign;
    std::string provider;    // "fixture:<dir>" / "http:<url>" / ""
    std::string store_path;
    std::string price_path;
    std::string config_hash;  // SHA-256 of the campaign config file
    std::string tool_version;
    std::string started_at;   // ISO 8601 UTC
    std::string finished_at;
};

std::string sha256_file(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace ransomtrace
