#pragma once

// Reference case-study tables, 4 d.p.

#include <string>
#include <vector>

namespace golden {

using Rows = std::vector<std::vector<double>>;

inline const std::vector<std::string> cs2_names{"WLAN1", "WLAN2", "WiMAX1", "WiMAX2", "3G"};

inline const Rows cs2_normalized{
    {1.0000, 1.0000, 0.7500, 0.0000, 1.0000, 0.1034},
    {1.0000, 0.7333, 0.5000, 0.1667, 1.0000, 0.3793},
    {0.8592, 0.9333, 1.0000, 0.9167, 0.6667, 1.0000},
    {0.8592, 0.6667, 0.7500, 0.6667, 0.6667, 0.5517},
    {0.0000, 0.0000, 0.0000, 1.0000, 0.0000, 0.0000},
};

inline const Rows cs2_coefficients{
    {1.0000, 1.0000, 0.6667, 0.3333, 1.0000, 0.3580},
    {1.0000, 0.6522, 0.5000, 0.3750, 1.0000, 0.4462},
    {0.7802, 0.8824, 1.0000, 0.8571, 0.6000, 1.0000},
    {0.7802, 0.6000, 0.6667, 0.6000, 0.6000, 0.5273},
    {0.3333, 0.3333, 0.3333, 1.0000, 0.3333, 0.3333},
};

inline const std::vector<double> cs2_grades{0.7263, 0.6622, 0.8533, 0.6290, 0.4444};

inline const std::vector<std::string> cs2_order{"WiMAX1", "WLAN1", "WLAN2", "WiMAX2", "3G"};

inline const std::vector<std::string> cs1_names{"WLAN", "WiMAX", "3G"};

inline const Rows cs1_coefficients{
    {1.0000, 1.0000, 1.0000, 0.3333, 1.0000},
    {0.5420, 0.8462, 0.5556, 0.4400, 0.6000},
    {0.3333, 0.3333, 0.3333, 1.0000, 0.3333},
};

inline const std::vector<double> cs1_grades{0.8667, 0.5967, 0.4667};

inline const std::vector<std::string> cs1_order{"WLAN", "WiMAX", "3G"};

} // namespace golden
