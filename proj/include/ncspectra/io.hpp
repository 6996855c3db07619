#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ncspectra/analytic.hpp"
#include "ncspectra/fock.hpp"
#include "ncspectra/oracle.hpp"
#include "ncspectra/scan.hpp"

namespace ncspectra::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Scientific notation with 17 significant digits, locale independent.
std::string format_number(double value);
/// Inverse of format_number (from_chars). Throws InvalidArgument.
double parse_number(std::string_view text);

/// One row of the spectrum CSV.
struct SpectrumRecord {
    std::string model;
    int n1 = 0;
    int n2 = 0;
    int sigma_z = 1;
    double E_squared = 0.0;
    std::optional<double> E;
    double E_nonrel = 0.0;
    double E_bar = 0.0;
};

inline constexpr std::string_view kSpectrumHeader =
    "model,n1,n2,sigma_z,E_squared,E,E_nonrel,E_bar";

std::vector<SpectrumRecord> to_records(const analytic::SpectrumTable& table);
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumRecord>& records);
/// Throws InvalidArgument on a malformed header or row.
std::vector<SpectrumRecord> parse_spectrum_csv(std::istream& in);

/// Header names such as E_squared_0_0_+1.
std::string level_column(std::string_view prefix, const analytic::LevelIndex& level);
void write_sweep_csv(std::ostream& out, const scan::SweepTable& table);

Json to_json(const PhysParams& phys);
Json to_json(const DerivedParams& derived);
Json to_json(const analytic::SpectrumTable& table);
Json to_json(const oracle::VerificationReport& report);
Json to_json(const scan::SweepTable& table);
Json to_json(const scan::CriticalResult& result);
Json to_json(const std::vector<fock::AlgebraCheck>& checks, int N, int margin, double theta);

}  // namespace ncspectra::io
