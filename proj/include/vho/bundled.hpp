#pragma once

// Data files compiled into the library (see data/).

#include <string_view>

namespace vho::bundled {

std::string_view default_scenario_ini();

/// Case Study 1 decision matrix (reference values).
std::string_view case_study_1_csv();

/// Case Study 1 normalized matrix (reference values), as an all-"max" matrix so that
/// normalization passes it through unchanged.
std::string_view case_study_1_normalized_csv();

/// Case Study 2 decision matrix (reference values).
std::string_view case_study_2_csv();

} // namespace vho::bundled
