#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncspectra/analytic.hpp"
#include "ncspectra/fock.hpp"
#include "ncspectra/params.hpp"

namespace ncspectra::oracle {

enum class ModelId {
    landau_commutative,
    landau_nc_expanded,
    landau_nc_shifted,
    landau_critical,
    oscillator_commutative,
    oscillator_nc_expanded,
    oscillator_nc_shifted,
    oscillator_critical,
};

std::string_view to_string(ModelId id);
/// Accepts the canonical names with '-' or '_' plus the short forms "landau-nc" and
/// "oscillator-nc" for the expanded models. Throws UnknownModel.
ModelId parse_model_id(std::string_view name);

/// Vector-potential convention the model is written in (informational).
std::string_view gauge_descriptor(ModelId id);

struct HamiltonianModel {
    ModelId id = ModelId::landau_nc_expanded;
    fock::ShiftOrder shift_order = fock::ShiftOrder::first_order;  ///< shifted models only
};

inline const std::vector<int> kDefaultSchedule{16, 24, 32, 40};
inline constexpr double kDefaultTolerance = 1e-6;

/// Hamiltonian matrix on the E_bar = (E^2 - m^2 + eB)/2m scale.
///
/// Expanded models transcribe the consolidated quadratic forms term by term. Shifted
/// models form the gauge-covariant product blocks from Bopp-shifted coordinates: the
/// upper block (s_z = +1/2) is D D^dagger, the lower one D^dagger D, with
/// D = 2 p_z + i (eB/2) z^_bar; the oscillator adds m^2 omega^2 z^_bar z^ (upper) or
/// m^2 omega^2 z^ z^_bar (lower).
fock::OperatorMatrix assemble(const HamiltonianModel& model, const PhysParams& phys, int N,
                              double l_ref);

/// Lowest k eigenvalues, ascending, of the Hermitised matrix (M + M^dagger)/2.
std::vector<double> eigen_hermitian(const fock::Matrix& m, int k);
std::vector<double> eigen_hermitian(const fock::OperatorMatrix& m, int k);

struct ConvergenceResult {
    std::vector<double> eigenvalues;
    int cutoff_used = 0;
    bool converged = false;
    double delta = 0.0;  ///< max |lambda_i(N) - lambda_i(N_prev)| at the last comparison
    double l_ref = 0.0;
};

/// Walks the cutoff schedule until the lowest k eigenvalues move by less than tol.
/// An exhausted schedule returns the last values with converged = false.
ConvergenceResult converge(const HamiltonianModel& model, const PhysParams& phys, int k,
                           double tol, const std::vector<int>& schedule = kDefaultSchedule,
                           std::optional<double> l_ref = std::nullopt);

struct VariantComparison {
    std::string name;
    std::string source;
    std::vector<double> predicted;
    std::vector<double> residuals;
    double max_residual = 0.0;
};

/// Nearest-analytic-level label attached to a numeric eigenvalue.
struct LevelAssignment {
    double numeric = 0.0;
    analytic::LevelIndex level;
    double distance = 0.0;
    bool tie = false;
};

struct VerificationReport {
    ModelId model = ModelId::landau_nc_expanded;
    PhysParams phys;
    int cutoff = 0;
    int k = 0;
    double tolerance = 0.0;
    double l_ref = 0.0;
    std::vector<int> schedule;
    std::vector<double> numeric;  ///< E_bar scale, ascending
    std::vector<VariantComparison> variants;
    std::string matched_variant = "none";
    double convergence_delta = 0.0;
    bool converged = false;
    std::vector<LevelAssignment> assignment;  ///< against the matched (or best) variant
    std::vector<std::string> notes;
};

VerificationReport verify(const HamiltonianModel& model, const PhysParams& phys, int k,
                          double tol = kDefaultTolerance,
                          const std::vector<int>& schedule = kDefaultSchedule,
                          std::optional<double> l_ref = std::nullopt);

/// Coefficients of a Hamiltonian in the monomial basis {p_z p_z_bar, z z_bar, L_z, I},
/// fitted by least squares over the interior block.
struct QuadraticCoefficients {
    double kinetic = 0.0;
    double confinement = 0.0;
    double angular = 0.0;
    double constant = 0.0;
    double fit_residual = 0.0;  ///< max interior entry of H minus the fitted combination
};

QuadraticCoefficients decompose_quadratic(const fock::OperatorMatrix& h, const PhysParams& phys,
                                          int margin);

enum class GaugePair { landau, oscillator };

struct GaugeComparison {
    double residual = 0.0;       ///< interior max |H_shifted,first_order - H_expanded| at theta
    double residual_half = 0.0;  ///< same at theta / 2
    double ratio = 0.0;          ///< residual / residual_half
    double theta_order_estimate = 0.0;  ///< log2(ratio)
    bool first_order_agreement = false;  ///< residual < 1e-9 or ratio in [3.5, 4.5]
    double exact_vs_first_order = 0.0;   ///< interior max |H_exact - H_first_order| at theta
    QuadraticCoefficients shifted_first_order;
    QuadraticCoefficients shifted_exact;
    QuadraticCoefficients expanded;
};

GaugeComparison gauge_compare(GaugePair pair, const PhysParams& phys, int N, double l_ref);

struct RayleighCheck {
    double quotient = 0.0;
    double residual = 0.0;  ///< || H v - <v|H|v> v ||
};

RayleighCheck rayleigh(const fock::OperatorMatrix& h, const fock::Vector& v);

/// Eigenvalue-wise E^2 difference between the s_z = +1/2 and s_z = -1/2 assemblies at a
/// fixed cutoff: 2m (lambda_i(+) - lambda_i(-)) for the lowest k levels.
std::vector<double> spin_gap(const HamiltonianModel& model, const PhysParams& phys, int k, int N,
                             double l_ref);

}  // namespace ncspectra::oracle
