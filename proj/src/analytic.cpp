#include "ncspectra/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "ncspectra/error.hpp"

namespace ncspectra::analytic {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string normalized(std::string_view name) {
    std::string s(name);
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

void check_bounds(int a, int b) {
    if (a < 0 || b < 0) {
        throw Error(ErrorKind::InvalidArgument, "level bounds must be >= 0");
    }
}

SpectrumLine make_line(const PhysParams& p, LevelIndex level, double e_squared, double e_nonrel) {
    SpectrumLine line;
    line.level = level;
    line.E_squared = e_squared;
    if (e_squared >= 0.0) line.E = std::sqrt(e_squared);
    line.E_nonrel = e_nonrel;
    line.E_bar = (e_squared - p.m * p.m + p.e * p.B) / (2.0 * p.m);
    return line;
}

void sort_lines(std::vector<SpectrumLine>& lines) {
    std::sort(lines.begin(), lines.end(), [](const SpectrumLine& a, const SpectrumLine& b) {
        if (a.E_squared != b.E_squared) return a.E_squared < b.E_squared;
        return a.level < b.level;
    });
}

SpectrumTable make_table(Model model, const PhysParams& p) {
    SpectrumTable t;
    t.model = model;
    t.phys = p;
    t.derived = derive(p);
    return t;
}

// Reduced eigenvalues of the closed forms. Each matches the corresponding E^2 formula
// through E_bar = (E^2 - m^2 + eB) / 2m.

double landau_closed_form_ebar(const PhysParams& p, const LevelIndex& l, int sigma) {
    const DerivedParams d = derive(p);
    const double eBt = p.e * d.B_tilde;
    const double eB = p.e * p.B;
    return (eBt / d.m_tilde) * (l.n1 + l.n2 + 1) + (eBt / p.m) * (l.n2 - l.n1) +
           sigma * eB * eB * p.theta / (8.0 * p.m);
}

double landau_number_form_ebar(const PhysParams& p, const LevelIndex& l, int sigma) {
    const DerivedParams d = derive(p);
    const double eBt = p.e * d.B_tilde;
    const double eB = p.e * p.B;
    return (eBt / d.m_tilde) * (l.n1 + l.n2 + 1) + eBt / p.m + (eBt / p.m) * (l.n2 - l.n1) +
           (sigma / 2.0) * eB * eB * p.theta / (4.0 * p.m);
}

double oscillator_closed_form_ebar(const PhysParams& p, const LevelIndex& l, double lz_mass) {
    const DerivedParams d = derive(p);
    const double varpi = std::sqrt(d.varpi_sq);
    const double lz = (lz_mass / 2.0) * d.varpi_sq * p.theta + d.omega_c;
    return varpi * (l.n1 + l.n2 + 1) - lz * (l.n1 - l.n2) +
           l.sigma_z * (p.m / 2.0) * d.varpi_sq * p.theta;
}

double oscillator_literal_nonrel(const PhysParams& p, const LevelIndex& l) {
    const DerivedParams d = derive(p);
    const double varpi = std::sqrt(d.varpi_sq);
    const double eB = p.e * p.B;
    return (varpi / p.m) * (l.n1 + l.n2 + 1) -
           ((p.m * d.varpi_sq * p.theta + 2.0 * d.omega_c) / (2.0 * p.m)) * (l.n1 - l.n2) -
           eB / (2.0 * p.m) + l.sigma_z * (p.m / 2.0) * d.varpi_sq * p.theta;
}

double oscillator_critical_w_sq(const PhysParams& p) {
    const double wc = p.e * p.B / (2.0 * p.m);
    return p.omega * p.omega + wc * wc;
}

}  // namespace

std::string_view to_string(Model model) {
    switch (model) {
        case Model::landau_nc: return "landau-nc";
        case Model::landau_critical: return "landau-critical";
        case Model::oscillator_commutative: return "oscillator-commutative";
        case Model::oscillator_nc: return "oscillator-nc";
        case Model::oscillator_critical: return "oscillator-critical";
    }
    return "unknown";
}

Model parse_model(std::string_view name) {
    const std::string s = normalized(name);
    for (Model m : {Model::landau_nc, Model::landau_critical, Model::oscillator_commutative,
                    Model::oscillator_nc, Model::oscillator_critical}) {
        if (s == to_string(m)) return m;
    }
    throw Error(ErrorKind::UnknownModel, "unknown spectrum model '" + std::string(name) + "'");
}

SpectrumTable landau_nc_levels(const PhysParams& p, int n1_max, int n2_max) {
    check_bounds(n1_max, n2_max);
    SpectrumTable t = make_table(Model::landau_nc, p);
    const DerivedParams& d = t.derived;
    if (!d.well_posed_landau) {
        throw Error(ErrorKind::IllPosed, "landau-nc requires m_tilde > 0 and omega_tilde != 0");
    }
    const double eB = p.e * p.B;
    const double eBt = p.e * d.B_tilde;
    const double split = eB * eB * p.theta;
    for (int n1 = 0; n1 <= n1_max; ++n1) {
        for (int n2 = 0; n2 <= n2_max; ++n2) {
            for (int sigma : {1, -1}) {
                const int total = n1 + n2 + 1;
                const double e2 = p.m * p.m + 2.0 * (p.m * eBt / d.m_tilde) * total +
                                  2.0 * eBt * (n2 - n1) - eB + sigma * split / 4.0;
                const double enr = (eBt / d.m_tilde) * total + (eBt / p.m) * (n2 - n1) -
                                   eB / (2.0 * p.m) + sigma * split / (8.0 * p.m);
                t.lines.push_back(make_line(p, {n1, n2, sigma}, e2, enr));
            }
        }
    }
    sort_lines(t.lines);
    return t;
}

SpectrumTable landau_critical_levels(const PhysParams& phys, int n_max) {
    check_bounds(n_max, 0);
    if (!(phys.e * phys.B > 0.0)) {
        throw Error(ErrorKind::InvalidField, "landau-critical requires eB > 0");
    }
    PhysParams p = phys;
    p.theta = critical_theta_landau(phys);
    SpectrumTable t = make_table(Model::landau_critical, p);
    const double eB = p.e * p.B;
    for (int n = 0; n <= n_max; ++n) {
        for (int sigma : {1, -1}) {
            const double shifted = n + sigma / 2.0;
            t.lines.push_back(
                make_line(p, {n, 0, sigma}, 2.0 * eB * shifted + p.m * p.m, (eB / p.m) * shifted));
        }
    }
    sort_lines(t.lines);
    return t;
}

SpectrumTable oscillator_commutative_levels(const PhysParams& p, int n1_max, int n2_max) {
    check_bounds(n1_max, n2_max);
    const double eB = p.e * p.B;
    if (p.omega == 0.0 && !(eB > 0.0)) {
        throw Error(ErrorKind::InvalidField, "oscillator-commutative needs omega > 0 or eB > 0");
    }
    SpectrumTable t = make_table(Model::oscillator_commutative, p);
    const double wc = t.derived.omega_c;
    const double w = std::sqrt(p.omega * p.omega + wc * wc);
    for (int n1 = 0; n1 <= n1_max; ++n1) {
        for (int n2 = 0; n2 <= n2_max; ++n2) {
            for (int sigma : {1, -1}) {
                const int total = n1 + n2 + 1;
                const double e2 = 2.0 * p.m * w * total + eB * (n1 - n2 - 1) + p.m * p.m;
                const double enr = w * total + wc * (n1 - n2 - 1);
                t.lines.push_back(make_line(p, {n1, n2, sigma}, e2, enr));
            }
        }
    }
    sort_lines(t.lines);
    return t;
}

SpectrumTable oscillator_nc_levels(const PhysParams& p, int n1_max, int n2_max) {
    check_bounds(n1_max, n2_max);
    SpectrumTable t = make_table(Model::oscillator_nc, p);
    const DerivedParams& d = t.derived;
    if (!d.well_posed_oscillator) {
        throw Error(ErrorKind::IllPosed, "oscillator-nc requires m_tilde > 0 and varpi^2 > 0");
    }
    const double eB = p.e * p.B;
    const double varpi = std::sqrt(d.varpi_sq);
    const double lz = (p.m / 2.0) * d.varpi_sq * p.theta + d.omega_c;
    for (int n1 = 0; n1 <= n1_max; ++n1) {
        for (int n2 = 0; n2 <= n2_max; ++n2) {
            for (int sigma : {1, -1}) {
                const double e2 = p.m * p.m - eB + 2.0 * p.m * varpi * (n1 + n2 + 1) -
                                  2.0 * p.m * lz * (n1 - n2) +
                                  sigma * p.m * p.m * d.varpi_sq * p.theta;
                SpectrumLine line =
                    make_line(p, {n1, n2, sigma}, e2, (e2 - p.m * p.m) / (2.0 * p.m));
                line.E_nonrel_literal = oscillator_literal_nonrel(p, line.level);
                t.lines.push_back(line);
            }
        }
    }
    sort_lines(t.lines);
    return t;
}

SpectrumTable oscillator_critical_levels(const PhysParams& phys, int n_max,
                                         bool substitute_critical_field) {
    check_bounds(n_max, 0);
    if (phys.omega == 0.0) {
        throw Error(ErrorKind::InvalidField, "oscillator-critical requires omega != 0");
    }
    PhysParams p = phys;
    const double b_c = critical_field_oscillator(phys);
    if (substitute_critical_field) {
        p.B = b_c;
    } else if (std::abs(p.B - b_c) > 1e-9 * std::max(std::abs(b_c), std::abs(p.B))) {
        throw Error(ErrorKind::NotAtCriticalPoint,
                    "B differs from the critical field -m^2 omega^2 theta / 2e");
    }
    SpectrumTable t = make_table(Model::oscillator_critical, p);
    const double w_sq = oscillator_critical_w_sq(p);
    const double w = std::sqrt(w_sq);
    const double eB = p.e * p.B;
    const double zeeman = 2.0 * w_sq / (p.m * p.omega * p.omega) * p.B;
    for (int n = 0; n <= n_max; ++n) {
        for (int sigma : {1, -1}) {
            // Upper sign of "-+" belongs to sigma_z = +1: that level is lowered.
            const double e2 = 2.0 * p.m * w * (2 * n + 1) - sigma * zeeman - eB + p.m * p.m;
            const double enr = w * (2 * n + 1) - eB / (2.0 * p.m) - sigma * zeeman / (2.0 * p.m);
            t.lines.push_back(make_line(p, {n, 0, sigma}, e2, enr));
        }
    }
    sort_lines(t.lines);
    return t;
}

SpectrumTable levels(Model model, const PhysParams& phys, int n1_max, int n2_max,
                     bool substitute_critical_field) {
    switch (model) {
        case Model::landau_nc: return landau_nc_levels(phys, n1_max, n2_max);
        case Model::landau_critical: return landau_critical_levels(phys, n1_max);
        case Model::oscillator_commutative:
            return oscillator_commutative_levels(phys, n1_max, n2_max);
        case Model::oscillator_nc: return oscillator_nc_levels(phys, n1_max, n2_max);
        case Model::oscillator_critical:
            return oscillator_critical_levels(phys, n1_max, substitute_critical_field);
    }
    throw Error(ErrorKind::UnknownModel, "unhandled model");
}

double critical_theta_landau(const PhysParams& p) {
    const double eB = p.e * p.B;
    if (eB == 0.0) throw Error(ErrorKind::InvalidField, "no critical theta when eB = 0");
    return -4.0 / eB;
}

double critical_field_oscillator(const PhysParams& p) {
    if (p.e == 0.0) throw Error(ErrorKind::InvalidField, "critical field undefined for e = 0");
    return -p.m * p.m * p.omega * p.omega * p.theta / (2.0 * p.e);
}

double landau_lz_coefficient(const PhysParams& p) {
    const double eB = p.e * p.B;
    return eB / (2.0 * p.m) * (1.0 + eB * p.theta / 4.0);
}

double oscillator_lz_coefficient(const PhysParams& p) {
    const DerivedParams d = derive(p);
    return 0.5 * d.m_tilde * d.varpi_sq * p.theta + d.omega_c;
}

std::vector<ZeemanGap> zeeman_splitting(const SpectrumTable& table) {
    std::map<std::pair<int, int>, std::pair<std::optional<double>, std::optional<double>>> pairs;
    for (const auto& line : table.lines) {
        auto& slot = pairs[{line.level.n1, line.level.n2}];
        (line.level.sigma_z > 0 ? slot.first : slot.second) = line.E_squared;
    }
    std::vector<ZeemanGap> out;
    out.reserve(pairs.size());
    for (const auto& [key, values] : pairs) {
        if (!values.first || !values.second) {
            throw Error(ErrorKind::MissingPartner, "level (" + std::to_string(key.first) + "," +
                                                       std::to_string(key.second) +
                                                       ") lacks one sigma_z partner");
        }
        out.push_back({key.first, key.second, *values.first - *values.second});
    }
    return out;
}

std::vector<NonrelResidual> nonrel_consistency(const SpectrumTable& table) {
    const double m = table.phys.m;
    const double eB = table.phys.e * table.phys.B;
    std::vector<NonrelResidual> out;
    out.reserve(table.lines.size());
    for (const auto& line : table.lines) {
        NonrelResidual r;
        r.level = line.level;
        const double reference = (line.E_squared - m * m) / (2.0 * m);
        const double scale = std::max({std::abs(line.E_squared), m * m, std::abs(eB),
                                       std::abs(2.0 * m * line.E_nonrel)});
        r.tolerance = 4.0 * kEps * scale / (2.0 * m);
        r.residual = line.E_nonrel - reference;
        r.consistent = std::abs(r.residual) <= r.tolerance;
        if (line.E_nonrel_literal) {
            r.literal_residual = *line.E_nonrel_literal - reference;
            r.literal_flagged = std::abs(*r.literal_residual) > r.tolerance;
        }
        out.push_back(r);
    }
    return out;
}

std::vector<Variant> variants_for(std::string_view family) {
    const std::string f = normalized(family);
    if (f == "landau") {
        return {
            {"closed_form", "E^2 closed form of the deformed Landau problem, upper sign for sigma_z=+1",
             [](const PhysParams& p, const LevelIndex& l) {
                 return landau_closed_form_ebar(p, l, l.sigma_z);
             }},
            {"closed_form_spin_reversed", "same closed form with the sign bound to -s_z",
             [](const PhysParams& p, const LevelIndex& l) {
                 return landau_closed_form_ebar(p, l, -l.sigma_z);
             }},
            {"number_form", "number-operator form with the extra +e B_tilde / m constant",
             [](const PhysParams& p, const LevelIndex& l) {
                 return landau_number_form_ebar(p, l, l.sigma_z);
             }},
            {"number_form_spin_reversed", "number-operator form, extra constant, sign bound to -s_z",
             [](const PhysParams& p, const LevelIndex& l) {
                 return landau_number_form_ebar(p, l, -l.sigma_z);
             }},
        };
    }
    if (f == "landau-commutative") {
        return {{"commutative_tower", "Landau tower E^2 = m^2 + 2 eB n2",
                 [](const PhysParams& p, const LevelIndex& l) {
                     PhysParams q = p;
                     q.theta = 0.0;
                     return landau_closed_form_ebar(q, l, l.sigma_z);
                 }}};
    }
    if (f == "landau-critical") {
        return {{"critical_tower", "critical-point tower E^2 = 2eB(n +- 1/2) + m^2",
                 [](const PhysParams& p, const LevelIndex& l) {
                     const double eB = p.e * p.B;
                     return (2.0 * eB * (l.n1 + l.sigma_z / 2.0) + eB) / (2.0 * p.m);
                 },
                 true}};
    }
    if (f == "oscillator") {
        return {
            {"closed_form_bare_mass_lz", "closed form with m in the L_z coefficient",
             [](const PhysParams& p, const LevelIndex& l) {
                 return oscillator_closed_form_ebar(p, l, p.m);
             }},
            {"closed_form_tilde_mass_lz", "closed form with m_tilde in the L_z coefficient",
             [](const PhysParams& p, const LevelIndex& l) {
                 return oscillator_closed_form_ebar(p, l, derive(p).m_tilde);
             }},
            {"varpi_over_m_nonrel", "non-relativistic limit with a varpi/m leading term",
             [](const PhysParams& p, const LevelIndex& l) {
                 return oscillator_literal_nonrel(p, l) + p.e * p.B / (2.0 * p.m);
             }},
        };
    }
    if (f == "oscillator-commutative") {
        return {{"commutative_field", "commutative oscillator in a field",
                 [](const PhysParams& p, const LevelIndex& l) {
                     const double wc = p.e * p.B / (2.0 * p.m);
                     const double w = std::sqrt(p.omega * p.omega + wc * wc);
                     return w * (l.n1 + l.n2 + 1) + wc * (l.n1 - l.n2);
                 }}};
    }
    if (f == "oscillator-critical") {
        return {{"critical_field_tower", "critical-field oscillator with (2n+1) spacing",
                 [](const PhysParams& p, const LevelIndex& l) {
                     const double w_sq = oscillator_critical_w_sq(p);
                     return std::sqrt(w_sq) * (2 * l.n1 + 1) -
                            l.sigma_z * w_sq * p.B / (p.m * p.m * p.omega * p.omega);
                 },
                 true}};
    }
    throw Error(ErrorKind::UnknownModel, "no variants registered for '" + std::string(family) + "'");
}

}  // namespace ncspectra::analytic
