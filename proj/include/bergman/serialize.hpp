#pragma once

#include <string>
#include <vector>

#include "bergman/battery.hpp"
#include "bergman/bergman_space.hpp"
#include "bergman/experiments.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

// JSON keys are emitted sorted and numbers in shortest round-trip form, so
// equal inputs give byte-identical text. An empty timestamp omits the field.

std::string report_to_json(const ExperimentReport& r, const std::string& timestamp = "");
/// Rows "metric,re,im".
std::string report_to_csv(const ExperimentReport& r);

std::string matrix_to_json(const TruncatedOperator& op);
/// Rows "j,k,re,im", one per entry.
std::string matrix_to_csv(const TruncatedOperator& op);

std::string coeffs_to_json(const CoeffVector& v);
/// Rows "index,re,im".
std::string coeffs_to_csv(const CoeffVector& v);

std::string decomposition_to_json(const DecompositionResult& d);

std::string moment_table_to_json(const MomentTable& t);
/// Rows "n,j,re,im".
std::string moment_table_to_csv(const MomentTable& t);

/// Plot-ready rows "N,<metric>".
std::string sweep_to_csv(const std::vector<SweepPoint>& points, const std::string& metric);

std::string battery_to_json(const std::vector<BatteryEntry>& entries, const std::string& timestamp = "");

/// Current UTC time, e.g. 2026-10-16T12:00:00Z.
std::string iso8601_now();

}  // namespace bergman
