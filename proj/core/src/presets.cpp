#include "qfriction/presets.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qfriction/errors.hpp"

namespace qfriction {

namespace fs = std::filesystem;

Preset hydrogen_preset() {
    Preset preset;
    preset.name = "hydrogen-in-solid";
    preset.description =
        "Hydrogen atom in a solid-like environment; the mean free path is a "
        "typical lattice constant (3 angstrom), which puts the collision time "
        "in the picosecond range and the transition temperature near 1 K.";
    preset.particle_mass = 1.6735e-27;
    preset.mean_free_path = 3e-10;
    return preset;
}

namespace {

fs::path executable_dir() {
    std::error_code ec;
    const fs::path exe = fs::read_symlink("/proc/self/exe", ec);
    if (ec) return fs::current_path();
    return exe.parent_path();
}

Preset parse_preset_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open preset file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw io_error("invalid preset JSON in '" + path + "': " + e.what());
    }
    Preset preset;
    preset.name = doc.value("name", fs::path(path).stem().string());
    preset.description = doc.value("description", "");
    preset.particle_mass = doc.value("particle_mass_kg", 0.0);
    preset.gas_particle_mass = doc.value("gas_particle_mass_kg", 0.0);
    preset.mean_free_path = doc.value("mean_free_path_m", 0.0);
    preset.cross_section = doc.value("cross_section_m2", 0.0);
    preset.number_density = doc.value("number_density_m3", 0.0);
    preset.temperature = doc.value("temperature_K", -1.0);
    if (!(preset.particle_mass > 0.0)) {
        throw std::invalid_argument("preset '" + path +
                                    "' must provide a positive particle_mass_kg");
    }
    if (!preset.has_mean_free_path() && preset.cross_section > 0.0 &&
        preset.number_density > 0.0) {
        preset.mean_free_path =
            1.0 / (preset.cross_section * preset.number_density);
    }
    return preset;
}

}  // namespace

std::vector<std::string> preset_search_dirs() {
    std::vector<std::string> dirs;
    if (const char* env = std::getenv("QFRICTION_PRESET_DIR")) {
        dirs.push_back(env);
    }
    const fs::path exe_dir = executable_dir();
    dirs.push_back((exe_dir / "presets").string());
    dirs.push_back((exe_dir / ".." / "share" / "qfriction" / "presets")
                       .lexically_normal()
                       .string());
    return dirs;
}

Preset load_preset(const std::string& name_or_path) {
    const bool looks_like_path =
        name_or_path.find('/') != std::string::npos ||
        (name_or_path.size() > 5 &&
         name_or_path.substr(name_or_path.size() - 5) == ".json");
    if (looks_like_path) {
        return parse_preset_json(name_or_path);
    }
    for (const auto& dir : preset_search_dirs()) {
        const fs::path candidate = fs::path(dir) / (name_or_path + ".json");
        std::error_code ec;
        if (fs::exists(candidate, ec)) {
            return parse_preset_json(candidate.string());
        }
    }
    if (name_or_path == "hydrogen" || name_or_path == "hydrogen-in-solid") {
        return hydrogen_preset();
    }
    std::ostringstream msg;
    msg << "unknown preset '" << name_or_path << "'; searched:";
    for (const auto& dir : preset_search_dirs()) msg << " " << dir;
    msg << "; built-in: hydrogen-in-solid";
    throw std::invalid_argument(msg.str());
}

std::vector<std::string> list_presets() {
    std::vector<std::string> names;
    for (const auto& dir : preset_search_dirs()) {
        std::error_code ec;
        if (!fs::is_directory(dir, ec)) continue;
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            if (entry.path().extension() == ".json") {
                names.push_back(entry.path().stem().string());
            }
        }
    }
    names.push_back("hydrogen-in-solid");
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

}  // namespace qfriction
