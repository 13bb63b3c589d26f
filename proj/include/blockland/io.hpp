#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace blockland {

// Shortest decimal form that parses back to the same 64-bit float.
// Shared by every text artifact (CSV, SVG) so identical inputs produce
// byte-identical files.
std::string format_double(double v);

double parse_double(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// FNV-1a 64-bit over raw bytes, hex-encoded. Content digest for
// checkpoints and manifests.
std::string fnv1a64_hex(std::string_view bytes);

// UTC timestamp, ISO-8601. Only manifests may contain this.
std::string timestamp_utc();

}  // namespace blockland
