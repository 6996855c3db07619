#include "ncspectra/scan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ncspectra/error.hpp"

namespace ncspectra::scan {

namespace {

void require_ascending(const std::vector<double>& grid) {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "grid must not be empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, "grid must be strictly ascending");
        }
    }
}

bool is_flaggable(ErrorKind kind) {
    return kind == ErrorKind::IllPosed || kind == ErrorKind::InvalidField ||
           kind == ErrorKind::NotAtCriticalPoint;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

PhysParams with_parameter(PhysParams phys, std::string_view name, double value) {
    if (name == "theta") {
        phys.theta = value;
    } else if (name == "B") {
        phys.B = value;
    } else if (name == "omega") {
        phys.omega = value;
    } else if (name == "m") {
        phys.m = value;
    } else {
        throw Error(ErrorKind::UnknownParameter,
                    "unknown sweep parameter '" + std::string(name) + "'");
    }
    return phys;
}

std::vector<double> linear_grid(double from, double to, int steps) {
    if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be >= 1");
    std::vector<double> grid(steps);
    if (steps == 1) {
        grid[0] = from;
        return grid;
    }
    const double h = (to - from) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid[i] = from + h * i;
    grid.back() = to;
    return grid;
}

SweepTable sweep(const SweepSpec& spec) {
    require_ascending(spec.grid);
    with_parameter(spec.base, spec.parameter, 0.0);  // validates the name up front

    SweepTable table;
    table.spec = spec;
    if (table.spec.levels.empty()) table.spec.levels = {{0, 0, 1}, {0, 0, -1}};
    int bound = 0;
    for (const auto& l : table.spec.levels) bound = std::max({bound, l.n1, l.n2});
    const bool substitute = spec.model == analytic::Model::oscillator_critical;

    for (double value : spec.grid) {
        SweepRow row;
        row.value = value;
        row.phys = with_parameter(spec.base, spec.parameter, value);
        row.derived = derive(row.phys);
        try {
            const analytic::SpectrumTable t =
                analytic::levels(spec.model, row.phys, bound, bound, substitute);
            row.well_posed = true;
            for (const auto& want : table.spec.levels) {
                auto it = std::find_if(t.lines.begin(), t.lines.end(),
                                       [&](const auto& line) { return line.level == want; });
                if (it == t.lines.end()) {
                    row.E_squared.emplace_back();
                    row.E_nonrel.emplace_back();
                } else {
                    row.E_squared.emplace_back(it->E_squared);
                    row.E_nonrel.emplace_back(it->E_nonrel);
                }
            }
            try {
                const auto gaps = analytic::zeeman_splitting(t);
                if (!gaps.empty()) row.splitting = gaps.front().gap;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::MissingPartner) throw;
            }
        } catch (const Error& e) {
            if (!is_flaggable(e.kind())) throw;
            row.well_posed = false;
            row.reason = e.what();
            row.E_squared.clear();
            row.E_nonrel.clear();
            row.splitting.reset();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CriticalFamily parse_critical_family(std::string_view name) {
    if (name.starts_with("landau")) return CriticalFamily::landau;
    if (name.starts_with("oscillator")) return CriticalFamily::oscillator;
    throw Error(ErrorKind::UnknownModel, "unknown critical family '" + std::string(name) + "'");
}

CriticalResult locate_critical(CriticalFamily family, const PhysParams& phys,
                               std::string_view parameter) {
    CriticalResult out;
    out.family = family;
    out.parameter = std::string(parameter);

    std::function<double(double)> coefficient;
    if (family == CriticalFamily::landau) {
        if (parameter != "theta") {
            throw Error(ErrorKind::UnknownParameter, "landau critical search runs over theta");
        }
        coefficient = [phys](double x) {
            return analytic::landau_lz_coefficient(with_parameter(phys, "theta", x));
        };
        if (phys.e * phys.B != 0.0) out.closed_form = analytic::critical_theta_landau(phys);
    } else {
        if (parameter != "B" && parameter != "theta") {
            throw Error(ErrorKind::UnknownParameter, "oscillator critical search runs over B or theta");
        }
        const std::string name(parameter);
        coefficient = [phys, name](double x) {
            return analytic::oscillator_lz_coefficient(with_parameter(phys, name, x));
        };
        if (parameter == "B") {
            out.closed_form = analytic::critical_field_oscillator(phys);
        } else if (phys.m * phys.omega != 0.0) {
            // B = -m^2 omega^2 theta / 2e solved for theta.
            out.closed_form = -2.0 * phys.e * phys.B / (phys.m * phys.m * phys.omega * phys.omega);
        }
    }

    const double f0 = coefficient(0.0);
    double lo = 0.0;
    double hi = 0.0;
    bool found = false;
    for (double h = 1e-6; h < 1e300 && !found; h *= 2.0) {
        const double fp = coefficient(h);
        const double fm = coefficient(-h);
        if (f0 == 0.0) {
            if (fp != 0.0 || fm != 0.0) {
                lo = hi = 0.0;
                found = true;
            }
        } else if (sign(fp) != sign(f0) && std::isfinite(fp)) {
            lo = 0.0;
            hi = h;
            found = true;
        } else if (sign(fm) != sign(f0) && std::isfinite(fm)) {
            lo = -h;
            hi = 0.0;
            found = true;
        }
    }
    if (!found) {
        throw Error(ErrorKind::NoSignChange, "the L_z coefficient has no sign change");
    }
    out.bracket_lo = lo;
    out.bracket_hi = hi;

    double flo = coefficient(lo);
    for (int iter = 0; iter < 2000 && lo != hi; ++iter) {
        const double mid = lo + (hi - lo) / 2.0;
        if (mid == lo || mid == hi) break;
        const double fm = coefficient(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (sign(fm) == sign(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    out.root = std::abs(coefficient(lo)) <= std::abs(coefficient(hi)) ? lo : hi;
    if (out.closed_form) out.difference = out.root - *out.closed_form;
    return out;
}

std::vector<SplittingPoint> splitting_scan(analytic::Model model, const PhysParams& phys,
                                           const std::vector<double>& theta_grid) {
    require_ascending(theta_grid);
    std::vector<SplittingPoint> out;
    out.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        PhysParams p = phys;
        p.theta = theta;
        const auto gaps = analytic::zeeman_splitting(
            analytic::levels(model, p, 0, 0, model == analytic::Model::oscillator_critical));
        out.push_back({theta, gaps.front().gap});
    }
    return out;
}

}  // namespace ncspectra::scan
