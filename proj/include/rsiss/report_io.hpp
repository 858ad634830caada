#pragma once

#include <filesystem>

#include <json.hpp>

#include "rsiss/verifier.hpp"

namespace rsiss {

/// Infinite constants are written as the string "inf".
nlohmann::json extended_json(const ExtendedReal& x);
nlohmann::json certificate_to_json(const ISSCertificate& certificate);

/// {config, min_margin, n_violations, samples: [{t, lhs, rhs, margin}]}
nlohmann::json report_to_json(const VerificationReport& report, const nlohmann::json& config);

/// Report of the campaign's worst case (smallest relative margin), with a
/// per-case summary under "cases".
nlohmann::json campaign_to_json(const CampaignResult& result, const nlohmann::json& config);

nlohmann::json weak_to_json(const WeakSolutionResult& result);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace rsiss
