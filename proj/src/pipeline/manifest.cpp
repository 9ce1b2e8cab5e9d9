#include "clts/pipeline/manifest.hpp"

#include <fstream>

#include "clts/common/error.hpp"
#include "clts/common/hash.hpp"

namespace clts::pipeline {

namespace {

constexpr const char* kManifestName = "manifest.json";

}  // namespace

const ArtifactEntry& StageRecord::artifact(const std::string& stage, const std::string& role) const {
    for (const auto& a : artifacts)
        if (a.role == role) return a;
    throw MissingArtifact("stage '" + stage + "' recorded no artifact '" + role + "'");
}

std::vector<const ArtifactEntry*> StageRecord::artifacts_with_prefix(const std::string& prefix) const {
    std::vector<const ArtifactEntry*> out;
    for (const auto& a : artifacts)
        if (a.role.rfind(prefix, 0) == 0) out.push_back(&a);
    return out;
}

RunManifest RunManifest::load(const std::filesystem::path& run_dir) {
    const auto path = run_dir / kManifestName;
    if (!std::filesystem::exists(path)) return {};
    std::ifstream in(path);
    try {
        return manifest_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(1, "manifest " + path.string() + ": " + e.what());
    }
}

void RunManifest::save(const std::filesystem::path& run_dir) const {
    std::filesystem::create_directories(run_dir);
    const auto tmp = run_dir / (std::string(kManifestName) + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot write manifest in " + run_dir.string());
        out << to_json(*this).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, run_dir / kManifestName);
}

const StageRecord& RunManifest::stage(const std::string& name) const {
    const auto it = stages.find(name);
    if (it == stages.end()) throw MissingArtifact(name);
    return it->second;
}

std::filesystem::path RunManifest::artifact_path(const std::filesystem::path& run_dir, const std::string& stage_name,
                                                 const std::string& role) const {
    return run_dir / stage(stage_name).artifact(stage_name, role).path;
}

bool RunManifest::stage_intact(const std::filesystem::path& run_dir, const std::string& name) const {
    const auto it = stages.find(name);
    if (it == stages.end()) return false;
    for (const auto& a : it->second.artifacts) {
        const auto path = run_dir / a.path;
        if (!std::filesystem::exists(path) || sha256_file(path) != a.sha256) return false;
    }
    return true;
}

ArtifactEntry make_artifact(const std::filesystem::path& run_dir, const std::string& role,
                            const std::filesystem::path& relative_path) {
    return {role, relative_path.generic_string(), sha256_file(run_dir / relative_path)};
}

nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json stages = nlohmann::json::object();
    for (const auto& [name, s] : m.stages) {
        nlohmann::json artifacts = nlohmann::json::array();
        for (const auto& a : s.artifacts)
            artifacts.push_back({{"role", a.role}, {"path", a.path}, {"sha256", a.sha256}});
        stages[name] = {{"started_at", s.started_at}, {"finished_at", s.finished_at}, {"counts", s.counts},
                        {"errors", s.errors},         {"artifacts", artifacts}};
    }
    return {{"tool_version", m.tool_version}, {"config_hash", m.config_hash}, {"seed", m.seed}, {"stages", stages}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.seed = j.value("seed", std::uint64_t{0});
    for (const auto& [name, s] : j.at("stages").items()) {
        StageRecord r;
        r.started_at = s.value("started_at", "");
        r.finished_at = s.value("finished_at", "");
        r.counts = s.value("counts", std::map<std::string, long>{});
        r.errors = s.value("errors", std::map<std::string, long>{});
        for (const auto& a : s.at("artifacts"))
            r.artifacts.push_back({a.at("role").get<std::string>(), a.at("path").get<std::string>(),
                                   a.at("sha256").get<std::string>()});
        m.stages.emplace(name, std::move(r));
    }
    return m;
}

}  // namespace clts::pipeline
