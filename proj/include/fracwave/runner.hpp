#pragma once

#include <string>
#include <vector>

#include "fracwave/config.hpp"

namespace fracwave::runner {

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct RunManifest {
    std::string config_hash;      // FNV-1a 64 of the ingested config bytes
    std::string artifact_version;
    std::string started_at;       // ISO 8601, UTC
    std::string finished_at;
    std::vector<std::string> outputs; // paths relative to output_dir
    std::vector<Verdict> verdicts;

    bool all_pass() const;
};

extern const char* kArtifactVersion;

std::string fnv1a_hex(const std::string& bytes);

// Executes the experiment, writes every report plus `manifest.json` under
// config.output_dir (atomically), and returns the manifest.
RunManifest run(const config::RunConfig& config, const std::string& config_bytes);

} // namespace fracwave::runner
