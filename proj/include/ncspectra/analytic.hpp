#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncspectra/params.hpp"

namespace ncspectra::analytic {

/// Closed-form spectra that can be tabulated.
enum class Model {
    landau_nc,
    landau_critical,
    oscillator_commutative,
    oscillator_nc,
    oscillator_critical,
};

std::string_view to_string(Model model);
/// Accepts hyphen or underscore spellings ("landau-nc", "landau_nc"). Throws UnknownModel.
Model parse_model(std::string_view name);

/// Quantum numbers of a level. Critical-point towers carry their single index in n1 (n2 = 0).
struct LevelIndex {
    int n1 = 0;
    int n2 = 0;
    int sigma_z = 1;

    int m_l() const { return n1 - n2; }
    auto operator<=>(const LevelIndex&) const = default;
};

struct SpectrumLine {
    LevelIndex level;
    double E_squared = 0.0;
    std::optional<double> E;  ///< absent when E^2 < 0
    double E_nonrel = 0.0;
    double E_bar = 0.0;  ///< (E^2 - m^2 + eB) / 2m
    /// Only for oscillator_nc: the alternate non-relativistic limit with the
    /// varpi/m leading coefficient. Kept as a flagged alternate, never used as E_nonrel.
    std::optional<double> E_nonrel_literal;
};

struct SpectrumTable {
    Model model = Model::landau_nc;
    PhysParams phys;
    DerivedParams derived;
    std::vector<SpectrumLine> lines;  ///< ascending E^2, ties by (n1, n2, sigma_z)
};

inline constexpr int kDefaultLevelBound = 5;

SpectrumTable landau_nc_levels(const PhysParams& phys, int n1_max = kDefaultLevelBound,
                               int n2_max = kDefaultLevelBound);

/// Evaluated at theta_c = -4/eB, which replaces phys.theta in the returned table.
SpectrumTable landau_critical_levels(const PhysParams& phys, int n_max = kDefaultLevelBound);

SpectrumTable oscillator_commutative_levels(const PhysParams& phys,
                                            int n1_max = kDefaultLevelBound,
                                            int n2_max = kDefaultLevelBound);

SpectrumTable oscillator_nc_levels(const PhysParams& phys, int n1_max = kDefaultLevelBound,
                                   int n2_max = kDefaultLevelBound);

/// Requires B at the critical field within 1e-9 relative, unless `substitute_critical_field`
/// is set, in which case B is replaced by critical_field_oscillator(phys).
SpectrumTable oscillator_critical_levels(const PhysParams& phys, int n_max = kDefaultLevelBound,
                                         bool substitute_critical_field = false);

/// Dispatches on `model`; critical models use n1_max as their single bound.
SpectrumTable levels(Model model, const PhysParams& phys, int n1_max = kDefaultLevelBound,
                     int n2_max = kDefaultLevelBound, bool substitute_critical_field = false);

/// theta_c = -4 / eB, where the L_z coefficient omega_c (1 + eB theta / 4) vanishes.
double critical_theta_landau(const PhysParams& phys);

/// B_c = -m^2 omega^2 theta / 2e.
double critical_field_oscillator(const PhysParams& phys);

/// L_z coefficient of the expanded Landau Hamiltonian: omega_c (1 + eB theta / 4).
double landau_lz_coefficient(const PhysParams& phys);

/// L_z coefficient of the expanded oscillator Hamiltonian, (m_tilde/2) varpi^2 theta + omega_c.
double oscillator_lz_coefficient(const PhysParams& phys);

struct ZeemanGap {
    int n1 = 0;
    int n2 = 0;
    double gap = 0.0;  ///< E^2(sigma=+1) - E^2(sigma=-1)
};

/// One gap per (n1, n2), ordered by (n1, n2). Throws MissingPartner.
std::vector<ZeemanGap> zeeman_splitting(const SpectrumTable& table);

struct NonrelResidual {
    LevelIndex level;
    double residual = 0.0;  ///< E_nonrel - (E^2 - m^2) / 2m
    double tolerance = 0.0;  ///< two ulp on the E^2 scale, divided by 2m
    bool consistent = true;
    std::optional<double> literal_residual;  ///< same check for E_nonrel_literal
    bool literal_flagged = false;            ///< literal residual exceeds tolerance
};

std::vector<NonrelResidual> nonrel_consistency(const SpectrumTable& table);

/// A named closed-form candidate for the reduced eigenvalue E_bar = (E^2 - m^2 + eB)/2m.
struct Variant {
    std::string name;
    std::string source;
    std::function<double(const PhysParams&, const LevelIndex&)> e_bar;
    bool single_index = false;  ///< critical towers: only n1 is enumerated
};

/// Candidate formulas registered for a model family: "landau", "landau_commutative",
/// "oscillator", "oscillator_commutative", "oscillator_critical", "landau_critical".
std::vector<Variant> variants_for(std::string_view family);

}  // namespace ncspectra::analytic
