#include <nlohmann/json.hpp>

#include <fstream>
#include <set>

#include "envtrack/io.hpp"

namespace envtrack {

using nlohmann::json;

void TrialManifest::validate(const std::filesystem::path& base_dir) const {
    std::set<std::string> ids;
    for (const auto& t : trials) {
        if (!ids.insert(t.trial_id).second)
            throw IoError("manifest: duplicate trial_id " + t.trial_id);
        condition_from_string(t.condition);
        noise_from_string(t.noise);
        if (!t.audio_path.empty() && !std::filesystem::exists(base_dir / t.audio_path))
            throw IoError("manifest: missing audio file " + t.audio_path);
        if (!t.eeg_path.empty() && !std::filesystem::exists(base_dir / t.eeg_path))
            throw IoError("manifest: missing eeg file " + t.eeg_path);
    }
}

TrialManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("bad manifest JSON: " + std::string(e.what()));
    }
    TrialManifest m;
    if (j.contains("metadata")) {
        const auto& meta = j["metadata"];
        m.subject_id = meta.value("subject_id", "");
        if (meta.contains("likeability_ratings"))
            m.likeability_json = meta["likeability_ratings"].dump();
    }
    for (const auto& jt : j.at("trials")) {
        ManifestTrial t;
        t.trial_id = jt.at("trial_id").get<std::string>();
        t.speaker_id = jt.value("speaker_id", "");
        t.condition = jt.at("condition").get<std::string>();
        t.noise = jt.at("noise").get<std::string>();
        t.audio_path = jt.value("audio_path", "");
        t.eeg_path = jt.value("eeg_path", "");
        t.eeg_offset_s = jt.value("eeg_offset_s", 0.0);
        t.duration_s = jt.value("duration_s", 30.0);
        m.trials.push_back(std::move(t));
    }
    return m;
}

void write_manifest(const std::filesystem::path& path, const TrialManifest& manifest) {
    json j;
    j["metadata"]["subject_id"] = manifest.subject_id;
    if (!manifest.likeability_json.empty())
        j["metadata"]["likeability_ratings"] = json::parse(manifest.likeability_json);
    j["trials"] = json::array();
    for (const auto& t : manifest.trials) {
        j["trials"].push_back({
            {"trial_id", t.trial_id},
            {"speaker_id", t.speaker_id},
            {"condition", t.condition},
            {"noise", t.noise},
            {"audio_path", t.audio_path},
            {"eeg_path", t.eeg_path},
            {"eeg_offset_s", t.eeg_offset_s},
            {"duration_s", t.duration_s},
        });
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write manifest: " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace envtrack
