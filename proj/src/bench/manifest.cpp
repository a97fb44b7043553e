#include "fsbb/bench/manifest.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace fsbb::bench {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw std::runtime_error("cannot open manifest '" + manifest_path + "'");
    return read_manifest(in, std::filesystem::path(manifest_path).parent_path().string());
}

std::vector<ManifestEntry> read_manifest(std::istream& in, const std::string& base_dir) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<ManifestEntry> entries;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (!have_header) {
            if (line != "instance,expected_makespan") {
                throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                         ": expected header 'instance,expected_makespan'");
            }
            have_header = true;
            continue;
        }
        const auto comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) + ": missing ','");
        }
        ManifestEntry e;
        e.instance = trim(line.substr(0, comma));
        const std::string value = trim(line.substr(comma + 1));
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), e.expected_makespan);
        if (e.instance.empty() || value.empty() || ec != std::errc{} ||
            ptr != value.data() + value.size()) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) + ": malformed row '" +
                                     line + "'");
        }
        const std::filesystem::path p(e.instance);
        e.path = p.is_absolute() || base_dir.empty() ? p.string()
                                                     : (std::filesystem::path(base_dir) / p).string();
        entries.push_back(std::move(e));
    }
    if (!have_header) throw std::runtime_error("manifest is empty");
    return entries;
}

void write_manifest(std::ostream& out, const std::vector<ManifestEntry>& entries) {
    out << "instance,expected_makespan\n";
    for (const auto& e : entries) out << e.instance << ',' << e.expected_makespan << '\n';
}

}  // namespace fsbb::bench
