#pragma once

#include <string>
#include <vector>

#include "bergman/experiments.hpp"

namespace bergman {

struct BatteryEntry {
  ExperimentReport report;
  double seconds = 0.0;
};

/// The fixed experiment battery behind `verify`: one report per acceptance
/// criterion, each pinned to its own inputs and tolerances.
std::vector<BatteryEntry> run_default_battery();

/// One-line "PASS name  key=value ..." rendering of an entry.
std::string summary_line(const BatteryEntry& entry);

}  // namespace bergman
