#pragma once

#include <string>
#include <vector>

#include "micropush/bench/episode.hpp"

namespace micropush::bench {

/// Column names, in order.
extern const char* const kCsvHeader;

/// %.6g with "-0" normalized to "0".
std::string format_number(double v);

std::string csv_row(const EpisodeRecord& r);
std::string csv_text(const std::vector<EpisodeRecord>& records);
std::vector<EpisodeRecord> parse_csv(const std::string& text);

/// Writes `path.tmp` and renames it over `path`; nothing is left behind on
/// failure. Throws Error.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace micropush::bench
