#pragma once

namespace qfriction::constants {

/// Reduced Planck constant [J s] (2019 SI).
inline constexpr double hbar = 1.054571817e-34;

/// Boltzmann constant [J/K] (exact since the 2019 SI redefinition).
inline constexpr double k_boltzmann = 1.380649e-23;

}  // namespace qfriction::constants
