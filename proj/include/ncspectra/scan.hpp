#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncspectra/analytic.hpp"
#include "ncspectra/params.hpp"

namespace ncspectra::scan {

struct SweepSpec {
    analytic::Model model = analytic::Model::landau_nc;
    PhysParams base;
    std::string parameter = "theta";  ///< one of theta, B, omega, m
    std::vector<double> grid;         ///< nonempty, strictly ascending
    /// Levels tabulated per row; empty selects the ground pair (0,0,+1), (0,0,-1).
    std::vector<analytic::LevelIndex> levels;
};

struct SweepRow {
    double value = 0.0;
    PhysParams phys;
    DerivedParams derived;
    bool well_posed = false;
    std::vector<std::optional<double>> E_squared;  ///< one per requested level, empty if ill-posed
    std::vector<std::optional<double>> E_nonrel;
    std::optional<double> splitting;  ///< E^2(+1) - E^2(-1) of the (0,0) pair
    std::string reason;               ///< why the row is not well posed
};

struct SweepTable {
    SweepSpec spec;
    std::vector<SweepRow> rows;  ///< one per grid point, grid order
};

/// PhysParams with one named field replaced. Throws UnknownParameter.
PhysParams with_parameter(PhysParams phys, std::string_view name, double value);

/// Inclusive linear grid; steps == 1 gives {from}.
std::vector<double> linear_grid(double from, double to, int steps);

/// Evaluates the analytic spectrum across the grid. Ill-posed points are flagged and
/// carry no spectra; the oscillator critical model substitutes the critical field.
SweepTable sweep(const SweepSpec& spec);

enum class CriticalFamily { landau, oscillator };

CriticalFamily parse_critical_family(std::string_view name);

struct CriticalResult {
    CriticalFamily family = CriticalFamily::landau;
    std::string parameter;
    double root = 0.0;                 ///< bisection root of the L_z coefficient
    std::optional<double> closed_form;  ///< theta_c = -4/eB or B_c = -m^2 omega^2 theta / 2e
    std::optional<double> difference;   ///< root - closed_form
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

/// Root of the L_z coefficient (landau: omega_c (1 + eB theta/4) in theta; oscillator:
/// (m_tilde/2) varpi^2 theta + omega_c in B or theta) nearest the origin, found by
/// outward bracketing from 0 and bisection to full double precision.
/// Throws NoSignChange or UnknownParameter.
CriticalResult locate_critical(CriticalFamily family, const PhysParams& phys,
                               std::string_view parameter);

struct SplittingPoint {
    double theta = 0.0;
    double gap = 0.0;
};

/// Gap of the (0,0) spin pair per theta. Errors of the analytic tables propagate.
std::vector<SplittingPoint> splitting_scan(analytic::Model model, const PhysParams& phys,
                                           const std::vector<double>& theta_grid);

}  // namespace ncspectra::scan
