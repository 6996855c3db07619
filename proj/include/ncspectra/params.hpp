#pragma once

#include <string>
#include <vector>

namespace ncspectra {

/// Physical inputs in natural units (hbar = c = 1).
///
/// `theta` is the non-commutativity scale with [z^, zbar^] = 2 theta, so it carries
/// dimension energy^-2. `s_z` is the spin projection and must be exactly +1/2 or -1/2.
struct PhysParams {
    double m = 1.0;
    double e = 1.0;
    double B = 0.0;
    double omega = 0.0;
    double theta = 0.0;
    double s_z = 0.5;

    /// sigma_z = 2 s_z, i.e. +1 or -1.
    int sigma_z() const { return s_z > 0.0 ? 1 : -1; }

    bool operator==(const PhysParams&) const = default;
};

/// Deformed quantities derived from PhysParams.
///
/// Ill-posed regimes (non-positive effective mass or non-positive squared frequency)
/// are reported through the flags; derive() never throws.
struct DerivedParams {
    double omega_c = 0.0;      ///< eB / 2m
    double m_tilde = 0.0;      ///< m (1 + eB theta / 2)
    double omega_tilde = 0.0;  ///< (eB / 2 m_tilde)(1 + eB theta / 4), stored as e B_tilde / m_tilde
    double B_tilde = 0.0;      ///< (B / 2)(1 + eB theta / 4)
    double varpi_sq = 0.0;     ///< (omega^2 + omega_c^2) / (1 + eB theta / 2)
    bool well_posed_landau = false;
    bool well_posed_oscillator = false;
};

DerivedParams derive(const PhysParams& phys);

/// Human-readable invariant violations; empty when the parameters are admissible.
std::vector<std::string> validate(const PhysParams& phys);

/// Reference length of the auxiliary Fock basis: 1 / sqrt(m max(omega, omega_c, 1)).
double default_l_ref(const PhysParams& phys);

}  // namespace ncspectra
