#pragma once

// Scenario files.
//
//   # comment
//   [section]
//   key = value
//
// Sections: [cell] [mobility] [latency] [trigger] [sweep] [gra]. Lists are
// comma-separated. A user file is layered over the bundled default scenario,
// so it only needs the keys it changes; strict parsing requires every key.

#include "vho/sim.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace vho {

enum class ConfigMode {
    Overlay, ///< start from the bundled defaults
    Strict,  ///< every key must be present
};

/// Throws std::invalid_argument with "<source>:<line>: ..." on syntax errors,
/// unknown sections or keys, duplicates and unparsable values. In strict mode
/// missing keys are reported together with their default values.
Scenario parse_scenario(std::string_view text, const std::string& source = "<config>",
    ConfigMode mode = ConfigMode::Overlay);

/// Throws std::runtime_error("cannot open config file '<path>'") if unreadable.
Scenario load_scenario(const std::string& path, ConfigMode mode = ConfigMode::Overlay);

/// Every key, reals at 17 significant digits so parsing the text back gives
/// an identical scenario.
std::string dump_scenario(const Scenario& scenario);

/// The bundled default scenario, parsed strictly.
const Scenario& default_scenario();

/// Reads a whole file; throws std::runtime_error naming the path.
std::string read_text_file(const std::string& path, const char* what);

} // namespace vho
