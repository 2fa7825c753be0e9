#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "intricacy/markov.hpp"
#include "intricacy/pressure.hpp"
#include "intricacy/sft.hpp"
#include "intricacy/sweep.hpp"

namespace intricacy::io {

std::string read_text(const std::filesystem::path& path);

/// {"alphabet_size": r, "adjacency": [[...]]} or {"alphabet_size": r, "forbidden_words": [...]}.
/// Adjacency input reuses a reachability cache under `cache_dir` when given.
Sft parse_sft(const std::string& json_text,
              const std::optional<std::filesystem::path>& cache_dir = std::nullopt);
Sft read_sft(const std::filesystem::path& path,
             const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// {"values": {"0": 0.0, "1": 1.0, ...}}
Potential parse_potential(const std::string& json_text, int alphabet_size);

/// {"block_len": 1, "P": [[...]], "p": [...]} or
/// {"block_len": 2, "states": ["00", ...], "P": [[...]]}
MarkovMeasure parse_markov(const std::string& json_text);

/// {"name": ..., "states": [...], "parameters": [...], "P": [[entry...]...],
///  "box": [[lo, hi], ...]} with entries number | parameter name | "rest".
MarkovFamily parse_family(const std::string& json_text);

/// INTRICACY_CACHE_DIR, if set and nonempty.
std::optional<std::filesystem::path> cache_dir_from_env();

}  // namespace intricacy::io
