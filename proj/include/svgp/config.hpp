#ifndef SVGP_CONFIG_HPP
#define SVGP_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "svgp/planner.hpp"

namespace svgp {

/// Config-file problem with the offending line number (0 when the file
/// itself could not be read).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Parses an INI-style scenario file into a PlanRequest. Sections:
/// [state], [prior], [world], [robot], [obstacle], [planner]. '#' starts a
/// comment. Unknown sections or keys raise ConfigError with the line
/// number; `circle`, `box`, and `sphere` may repeat.
PlanRequest load_plan_request(const std::string& path);

/// Canonical text rendering of a resolved request (17 significant digits),
/// itself loadable as a config file.
std::string render_config(const PlanRequest& req);

}  // namespace svgp

#endif  // SVGP_CONFIG_HPP
