// Profile file persistence (versioned JSON, 17-significant-digit decimals so
// binary64 values round-trip losslessly and byte-identically), report JSON,
// and CSV export.
#pragma once

#include <string>

#include "grayforge/profile.hpp"
#include "grayforge/report.hpp"
#include "grayforge/ricci.hpp"

namespace grayforge {

inline constexpr int kProfileFormatVersion = 1;

/// Deterministic serialization: fixed key order, fixed number formatting.
std::string profile_to_json(const MetricProfile& profile);
void write_profile_file(const MetricProfile& profile, const std::string& path);

/// Parse a profile file and rebuild the evaluation recipe from its
/// family-specific coefficient block. Throws std::runtime_error on malformed
/// or unsupported input.
MetricProfile read_profile_file(const std::string& path);
MetricProfile profile_from_json(const std::string& text);

std::string report_to_json(const VerificationReport& report);

/// Columns: t, f, g, h, lambda0, lambda1, lambda2.
std::string profile_to_csv(const MetricProfile& profile, const RicciField& field);
void write_profile_csv(const MetricProfile& profile, const RicciField& field,
                       const std::string& path);

}  // namespace grayforge
