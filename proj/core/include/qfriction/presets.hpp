#pragma once

#include <string>
#include <vector>

namespace qfriction {

/// Named parameter set loaded from a JSON preset file. Zero or negative
/// sentinel values mean "not provided".
struct Preset {
    std::string name;
    std::string description;
    double particle_mass = 0.0;      // kg
    double gas_particle_mass = 0.0;  // kg, optional
    double mean_free_path = 0.0;     // m, optional
    double cross_section = 0.0;      // m^2, optional
    double number_density = 0.0;     // m^-3, optional
    double temperature = -1.0;       // K, optional

    bool has_mean_free_path() const { return mean_free_path > 0.0; }
    bool has_temperature() const { return temperature >= 0.0; }
};

/// Built-in default: a hydrogen atom diffusing through a solid-like
/// environment, mean free path set to a typical lattice constant (3 A).
Preset hydrogen_preset();

/// Directories searched for "<name>.json", in order: $QFRICTION_PRESET_DIR,
/// <exe dir>/presets, <exe dir>/../share/qfriction/presets.
std::vector<std::string> preset_search_dirs();

/// Loads a preset by file path (anything containing '/' or ending in
/// ".json") or by name through the search path; the built-in hydrogen
/// preset backs the names "hydrogen" and "hydrogen-in-solid" when no
/// file shadows them. Unknown names raise std::invalid_argument listing
/// the search path.
Preset load_preset(const std::string& name_or_path);

/// Names available via the search path plus built-ins.
std::vector<std::string> list_presets();

}  // namespace qfriction
