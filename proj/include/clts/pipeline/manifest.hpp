#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace clts::pipeline {

struct ArtifactEntry {
    std::string role;  // e.g. "outputs", "kept:wiki"
    std::string path;  // relative to the run directory
    std::string sha256;
};

struct StageRecord {
    std::string started_at;
    std::string finished_at;
    std::map<std::string, long> counts;
    std::vector<ArtifactEntry> artifacts;
    /// Error ledger summary: error kind -> occurrences.
    std::map<std::string, long> errors;

    /// Throws MissingArtifact naming the stage when the role is absent.
    const ArtifactEntry& artifact(const std::string& stage, const std::string& role) const;
    std::vector<const ArtifactEntry*> artifacts_with_prefix(const std::string& prefix) const;
};

/// Run-level record of configuration, tool version and every artifact with
/// its content hash. Stored as manifest.json in the run directory.
class RunManifest {
public:
    std::string tool_version = CLTS_VERSION;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::map<std::string, StageRecord> stages;

    /// Loads manifest.json, or returns an empty manifest when absent.
    static RunManifest load(const std::filesystem::path& run_dir);
    void save(const std::filesystem::path& run_dir) const;

    bool has_stage(const std::string& name) const { return stages.contains(name); }
    /// Throws MissingArtifact(name).
    const StageRecord& stage(const std::string& name) const;
    /// Absolute path of a recorded artifact.
    std::filesystem::path artifact_path(const std::filesystem::path& run_dir, const std::string& stage,
                                        const std::string& role) const;
    /// True when every artifact of the stage still exists with its recorded hash.
    bool stage_intact(const std::filesystem::path& run_dir, const std::string& name) const;
};

/// Hashes `path` (relative to run_dir) into a manifest entry.
ArtifactEntry make_artifact(const std::filesystem::path& run_dir, const std::string& role,
                            const std::filesystem::path& relative_path);

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

}  // namespace clts::pipeline
