#pragma once

#include "treecount/count_table.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace treecount {

inline constexpr int cache_format_version = 1;

// Resolution order: explicit dir (from a CLI flag) > TREECOUNT_CACHE_DIR >
// XDG_CACHE_HOME/treecount > ~/.cache/treecount.
std::filesystem::path resolve_cache_dir(const std::string& flag_value);

// One file per (schedule, max_q, format version), e.g. "nary2-q40.json".
std::string cache_file_name(const BranchingSchedule& schedule, std::int64_t max_q);

// Atomic write (temp file + rename). Returns false when the directory cannot
// be created or written.
bool save_table(const CountTable& table, const std::filesystem::path& file);

// Returns nullopt on missing file, version/key mismatch, or corruption.
std::optional<CountTable> load_table(const std::filesystem::path& file);

} // namespace treecount
