#pragma once

#include "qfriction/table.hpp"
#include "qfriction/montecarlo.hpp"

namespace qfriction {

/// Reduced friction coefficient versus reduced temperature on a
/// logarithmic grid: columns [theta, friction_reduced, friction_classical].
/// friction_reduced is form B; friction_classical is its high-T
/// asymptote sqrt(theta) (the metadata documents the sqrt(theta)/2
/// convention of the dimensional classical formula as the alternative).
CurveTable friction_curve_table(double theta_min, double theta_max, int points);

/// Reduced dispersion versus reduced time for the zero-temperature
/// quantum bath: columns [s, dispersion_sqrt, dispersion_virial,
/// dispersion_superposition, dispersion_approx] on a logarithmic grid
/// starting at the collision time s = 1.
CurveTable dispersion_curve_table(double s_max, int points, double rel_tol);

/// Ensemble statistics flattened to a table (one row per grid time).
CurveTable ensemble_table(const EnsembleStats& stats);

}  // namespace qfriction
