#pragma once

// Sweep configuration files and the on-disk atlas cache.
//
// Config format: one `key = value` per line, `#` starts a comment. Values
// are integers, ranges `a..b`, lists `[x, y, z]`, words, or booleans.
//
//   genus = [2, 3]
//   rank = 2..4
//   degree = -3..5
//   curve = general
//   output_dir = out/
//   coprime_only = true
//   trust_paper_strata = false
//   cache_dir = .cache/   # optional; HNSTRATA_CACHE_DIR overrides

#include "hnstrata/exact.hpp"
#include "hnstrata/rules.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hnstrata {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct SweepConfig {
    std::vector<Integer> genera;
    std::vector<Integer> ranks;
    std::vector<Integer> degrees;
    CurveClass curve = CurveClass::Arbitrary;
    std::string output_dir;
    std::optional<std::string> cache_dir;
    bool coprime_only = true;
    bool trust_paper_strata = false;
};

/// `a..b` (empty when b < a), `[x, y]`, or a single integer.
std::vector<Integer> parse_integer_list(std::string_view text);

/// Throws ConfigError on unknown keys, duplicates, bad values, a missing
/// genus/rank/degree/output_dir, or a genus below 2.
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::filesystem::path& path);

/// HNSTRATA_CACHE_DIR if set and non-empty, else config.cache_dir.
std::optional<std::filesystem::path> resolve_cache_dir(const SweepConfig& config);

/// Write-once file cache keyed by strings. Writes go through a temporary
/// file and a rename, so concurrent writers of identical content are safe.
class AtlasCache {
public:
    explicit AtlasCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& content) const;

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path path_for(const std::string& key) const;
    std::filesystem::path dir_;
};

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename; throws std::runtime_error.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace hnstrata
