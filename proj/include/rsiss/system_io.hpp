#pragma once

#include <filesystem>
#include <string>

#include "rsiss/system.hpp"

namespace rsiss {

// System data file (JSON):
//   eigenvalues   [[re, im], ...]
//   b, a          one array of [re, im] per channel
//   gram_blocks   [{"modes": [i, j, ...], "G": [[[re, im], ...], ...]}, ...]
//   m_R, M_R, m, c_E
//   tail_bound    optional
//   lift_norms, stationary_norms, ab_norm    optional exact values
//
// Missing gram_blocks means an orthonormal eigenbasis.

SystemDefinition system_from_json_text(const std::string& text);
SystemDefinition load_system(const std::filesystem::path& path);

std::string system_to_json_text(const SystemDefinition& system);
void save_system(const SystemDefinition& system, const std::filesystem::path& path);

}  // namespace rsiss
