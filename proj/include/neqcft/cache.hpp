#pragma once

// On-disk cache of exact operator matrices, one JSON file per
// (species, cutoff, operator name). Files are written to a temporary name and
// renamed into place so readers never observe a partial file.

#include "neqcft/graded_operator.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace neqcft::cache {

inline constexpr int format_version = 1;
inline constexpr const char* directory_variable = "NEQCFT_CACHE_DIR";

/// Cache directory from the environment, if set and non-empty.
std::optional<std::filesystem::path> directory_from_environment();

std::filesystem::path entry_path(const std::filesystem::path& dir, const fock::StateSpace& space,
                                 const std::string& name);

/// Only single-flavor spaces are cached; the header records species, cutoff and dimension.
void store(const std::filesystem::path& dir, const std::string& name,
           const fock::GradedOperator<Rational>& op);

/// Returns nullopt when the entry is missing. A present entry whose header does
/// not match the space throws std::runtime_error.
std::optional<fock::GradedOperator<Rational>> load(const std::filesystem::path& dir,
                                                   const std::string& name,
                                                   const fock::SpacePtr& space);

/// L_n on a one-flavor space, read from or written to the cache when a directory is given.
fock::GradedOperator<Rational> virasoro(int n, const fock::SpacePtr& space,
                                        const std::optional<std::filesystem::path>& dir);

}  // namespace neqcft::cache
