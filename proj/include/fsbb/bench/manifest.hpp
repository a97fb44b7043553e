#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fsbb/instance.hpp"

namespace fsbb::bench {

/// One row of a manifest CSV (`instance,expected_makespan`).
struct ManifestEntry {
    /// As written in the file; relative paths are relative to the manifest.
    std::string instance;
    /// Resolved against the manifest's directory.
    std::string path;
    Time expected_makespan = 0;
};

/// Throws std::runtime_error on a missing file, a wrong header or a
/// malformed row.
std::vector<ManifestEntry> read_manifest(const std::string& manifest_path);
std::vector<ManifestEntry> read_manifest(std::istream& in, const std::string& base_dir);

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries);

}  // namespace fsbb::bench
