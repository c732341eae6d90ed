#ifndef TAGTAXA_UTIL_HPP
#define TAGTAXA_UTIL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tagtaxa {

// All numeric report output goes through this: fixed 9 decimal digits,
// C-locale decimal point.
std::string format_fixed9(double v);

// FNV-1a over raw bytes, rendered as 16 hex chars. Used for manifest
// digests; not cryptographic.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const std::string& bytes);

// Minimal RFC-4180-ish CSV: quoted fields with "" escapes, no embedded
// newlines in fields.
std::vector<std::string> split_csv_row(const std::string& line);
std::string csv_escape(const std::string& field);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace tagtaxa

#endif
