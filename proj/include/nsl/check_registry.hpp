#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsl/checks.hpp"

namespace nsl {

/// Command-line overrides applied on top of a check's default parameters.
/// `rho` replaces the check's correlation or scaled kernel parameter; grid axes
/// are matched by name and a check that lacks the axis rejects it.
struct CheckOverrides {
  std::optional<double> rho;
  std::optional<int> depth;
  std::vector<GridAxis> grid;
  /// Also rerun at twice the resolution and warn when the verdict flips or the
  /// margin moves by more than 10%.
  bool refine = false;
};

struct CheckInfo {
  std::string name;
  std::string summary;
  bool replica = false;  // reproduces a published Matlab listing
};

const std::vector<CheckInfo>& registered_checks();
bool is_registered_check(const std::string& name);

/// "all", "matlab" or "scalar"; an empty result means the suite does not exist.
std::vector<std::string> suite_members(const std::string& suite);

/// Runs one check. Throws GridError for an override the check does not accept
/// and DomainError for an unknown name.
CheckReport run_check(const std::string& name, const CheckOverrides& overrides = {});

}  // namespace nsl
