#include "ncspectra/params.hpp"

#include <algorithm>
#include <cmath>

namespace ncspectra {

DerivedParams derive(const PhysParams& p) {
    DerivedParams d;
    const double eB = p.e * p.B;
    const double mass_factor = 1.0 + eB * p.theta / 2.0;
    const double field_factor = 1.0 + eB * p.theta / 4.0;

    d.omega_c = eB / (2.0 * p.m);
    d.m_tilde = p.m * mass_factor;
    d.B_tilde = (p.B / 2.0) * field_factor;
    // e B_tilde / m_tilde is algebraically (eB / 2 m_tilde)(1 + eB theta / 4); this form keeps
    // omega_tilde * m_tilde == e * B_tilde to rounding.
    d.omega_tilde = p.e * d.B_tilde / d.m_tilde;
    d.varpi_sq = (p.omega * p.omega + d.omega_c * d.omega_c) / mass_factor;

    d.well_posed_landau = d.m_tilde > 0.0 && d.omega_tilde * d.omega_tilde > 0.0 &&
                          std::isfinite(d.omega_tilde);
    d.well_posed_oscillator = d.m_tilde > 0.0 && d.varpi_sq > 0.0 && std::isfinite(d.varpi_sq);
    return d;
}

std::vector<std::string> validate(const PhysParams& p) {
    std::vector<std::string> out;
    auto finite = [&](double v, const char* name) {
        if (!std::isfinite(v)) {
            out.push_back(std::string(name) + " must be finite");
            return false;
        }
        return true;
    };
    if (finite(p.m, "m") && !(p.m > 0.0)) out.emplace_back("m must be > 0");
    if (finite(p.e, "e") && !(p.e > 0.0)) out.emplace_back("e must be > 0");
    if (finite(p.omega, "omega") && !(p.omega >= 0.0)) out.emplace_back("omega must be >= 0");
    finite(p.B, "B");
    finite(p.theta, "theta");
    if (p.s_z != 0.5 && p.s_z != -0.5) out.emplace_back("s_z must be ±1/2");
    return out;
}

double default_l_ref(const PhysParams& p) {
    const double scale = std::max({p.omega, p.e * p.B / (2.0 * p.m), 1.0});
    return 1.0 / std::sqrt(p.m * scale);
}

}  // namespace ncspectra
