#include "ncspectra/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "ncspectra/error.hpp"

namespace ncspectra::io {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

int parse_int(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::InvalidArgument, "malformed integer '" + std::string(text) + "'");
    }
    return value;
}

std::string format_optional(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string{};
}

Json optional_json(const std::optional<double>& value) {
    return value ? Json(*value) : Json(nullptr);
}

Json level_json(const analytic::LevelIndex& l) {
    return Json{{"n1", l.n1}, {"n2", l.n2}, {"sigma_z", l.sigma_z}};
}

Json envelope(std::string_view kind) {
    return Json{{"schema_version", kSchemaVersion}, {"kind", kind}};
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                         std::chars_format::scientific, 16);
    if (ec != std::errc{}) throw Error(ErrorKind::InvalidArgument, "number formatting failed");
    return std::string(buf, ptr);
}

double parse_number(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::InvalidArgument, "malformed number '" + std::string(text) + "'");
    }
    return value;
}

std::vector<SpectrumRecord> to_records(const analytic::SpectrumTable& table) {
    std::vector<SpectrumRecord> out;
    out.reserve(table.lines.size());
    const std::string model(analytic::to_string(table.model));
    for (const auto& line : table.lines) {
        out.push_back({model, line.level.n1, line.level.n2, line.level.sigma_z, line.E_squared,
                       line.E, line.E_nonrel, line.E_bar});
    }
    return out;
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRecord>& records) {
    out << kSpectrumHeader << '\n';
    for (const auto& r : records) {
        out << r.model << ',' << r.n1 << ',' << r.n2 << ',' << r.sigma_z << ','
            << format_number(r.E_squared) << ',' << format_optional(r.E) << ','
            << format_number(r.E_nonrel) << ',' << format_number(r.E_bar) << '\n';
    }
}

std::vector<SpectrumRecord> parse_spectrum_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSpectrumHeader) {
        throw Error(ErrorKind::InvalidArgument, "spectrum CSV header mismatch");
    }
    std::vector<SpectrumRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 8) throw Error(ErrorKind::InvalidArgument, "spectrum row needs 8 fields");
        SpectrumRecord r;
        r.model = f[0];
        r.n1 = parse_int(f[1]);
        r.n2 = parse_int(f[2]);
        r.sigma_z = parse_int(f[3]);
        r.E_squared = parse_number(f[4]);
        if (!f[5].empty()) r.E = parse_number(f[5]);
        r.E_nonrel = parse_number(f[6]);
        r.E_bar = parse_number(f[7]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string level_column(std::string_view prefix, const analytic::LevelIndex& level) {
    return std::string(prefix) + "_" + std::to_string(level.n1) + "_" + std::to_string(level.n2) +
           "_" + (level.sigma_z > 0 ? "+1" : "-1");
}

void write_sweep_csv(std::ostream& out, const scan::SweepTable& table) {
    out << "param_value,well_posed";
    for (const auto& l : table.spec.levels) out << ',' << level_column("E_squared", l);
    out << ",splitting\n";
    for (const auto& row : table.rows) {
        out << format_number(row.value) << ',' << (row.well_posed ? "true" : "false");
        for (std::size_t i = 0; i < table.spec.levels.size(); ++i) {
            out << ',';
            if (i < row.E_squared.size()) out << format_optional(row.E_squared[i]);
        }
        out << ',' << format_optional(row.splitting) << '\n';
    }
}

Json to_json(const PhysParams& p) {
    return Json{{"m", p.m},         {"e", p.e},         {"B", p.B},
                {"omega", p.omega}, {"theta", p.theta}, {"s_z", p.s_z}};
}

Json to_json(const DerivedParams& d) {
    return Json{{"omega_c", d.omega_c},
                {"m_tilde", d.m_tilde},
                {"omega_tilde", d.omega_tilde},
                {"B_tilde", d.B_tilde},
                {"varpi_sq", d.varpi_sq},
                {"well_posed_landau", d.well_posed_landau},
                {"well_posed_oscillator", d.well_posed_oscillator}};
}

Json to_json(const analytic::SpectrumTable& table) {
    Json j = envelope("spectrum");
    j["model"] = analytic::to_string(table.model);
    j["params"] = to_json(table.phys);
    j["derived"] = to_json(table.derived);
    Json lines = Json::array();
    for (const auto& line : table.lines) {
        Json l = level_json(line.level);
        l["E_squared"] = line.E_squared;
        l["E"] = optional_json(line.E);
        l["E_nonrel"] = line.E_nonrel;
        l["E_bar"] = line.E_bar;
        if (line.E_nonrel_literal) l["E_nonrel_literal"] = *line.E_nonrel_literal;
        lines.push_back(std::move(l));
    }
    j["lines"] = std::move(lines);
    return j;
}

Json to_json(const oracle::VerificationReport& r) {
    Json j = envelope("verification");
    j["model"] = oracle::to_string(r.model);
    j["gauge"] = oracle::gauge_descriptor(r.model);
    j["params"] = to_json(r.phys);
    j["k"] = r.k;
    j["tolerance"] = r.tolerance;
    j["schedule"] = r.schedule;
    j["l_ref"] = r.l_ref;
    j["cutoff"] = r.cutoff;
    j["converged"] = r.converged;
    j["convergence_delta"] = r.convergence_delta;
    j["numeric_E_bar"] = r.numeric;
    j["matched_variant"] = r.matched_variant;
    Json variants = Json::array();
    for (const auto& v : r.variants) {
        variants.push_back(Json{{"name", v.name},
                                {"source", v.source},
                                {"max_residual", v.max_residual},
                                {"predicted_E_bar", v.predicted},
                                {"residuals", v.residuals}});
    }
    j["variants"] = std::move(variants);
    Json assignment = Json::array();
    for (const auto& a : r.assignment) {
        Json entry = level_json(a.level);
        entry["numeric_E_bar"] = a.numeric;
        entry["distance"] = a.distance;
        entry["tie"] = a.tie;
        assignment.push_back(std::move(entry));
    }
    j["assignment"] = std::move(assignment);
    j["notes"] = r.notes;
    return j;
}

Json to_json(const scan::SweepTable& table) {
    Json j = envelope("sweep");
    j["model"] = analytic::to_string(table.spec.model);
    j["parameter"] = table.spec.parameter;
    j["base"] = to_json(table.spec.base);
    Json levels = Json::array();
    for (const auto& l : table.spec.levels) levels.push_back(level_json(l));
    j["levels"] = std::move(levels);
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r{{"param_value", row.value},
               {"well_posed", row.well_posed},
               {"derived", to_json(row.derived)}};
        Json e2 = Json::array();
        Json enr = Json::array();
        for (std::size_t i = 0; i < row.E_squared.size(); ++i) {
            e2.push_back(optional_json(row.E_squared[i]));
            enr.push_back(optional_json(row.E_nonrel[i]));
        }
        r["E_squared"] = std::move(e2);
        r["E_nonrel"] = std::move(enr);
        r["splitting"] = optional_json(row.splitting);
        if (!row.reason.empty()) r["reason"] = row.reason;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

Json to_json(const scan::CriticalResult& c) {
    Json j = envelope("critical");
    j["family"] = c.family == scan::CriticalFamily::landau ? "landau" : "oscillator";
    j["parameter"] = c.parameter;
    j["closed_form"] = optional_json(c.closed_form);
    j["bisection"] = c.root;
    j["difference"] = optional_json(c.difference);
    j["bracket"] = {c.bracket_lo, c.bracket_hi};
    return j;
}

Json to_json(const std::vector<fock::AlgebraCheck>& checks, int N, int margin, double theta) {
    Json j = envelope("fock_check");
    j["N"] = N;
    j["margin"] = margin;
    j["theta"] = theta;
    j["threshold"] = fock::kAlgebraThreshold;
    Json list = Json::array();
    bool all = true;
    for (const auto& c : checks) {
        list.push_back(Json{{"name", c.name},
                            {"residual", c.residual},
                            {"corner", {c.corner.real(), c.corner.imag()}},
                            {"passed", c.passed}});
        all = all && c.passed;
    }
    j["checks"] = std::move(list);
    j["passed"] = all;
    return j;
}

}  // namespace ncspectra::io
