#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ncspectra {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
    IllPosed,
    InvalidField,
    NotAtCriticalPoint,
    MissingPartner,
    CutoffTooSmall,
    DimensionMismatch,
    InvalidScale,
    InvalidMargin,
    NotHermitian,
    NotConverged,
    NoSignChange,
    UnknownModel,
    UnknownParameter,
    AnalyticUnavailable,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IllPosed: return "IllPosed";
        case ErrorKind::InvalidField: return "InvalidField";
        case ErrorKind::NotAtCriticalPoint: return "NotAtCriticalPoint";
        case ErrorKind::MissingPartner: return "MissingPartner";
        case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidScale: return "InvalidScale";
        case ErrorKind::InvalidMargin: return "InvalidMargin";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotConverged: return "NotConverged";
        case ErrorKind::NoSignChange: return "NoSignChange";
        case ErrorKind::UnknownModel: return "UnknownModel";
        case ErrorKind::UnknownParameter: return "UnknownParameter";
        case ErrorKind::AnalyticUnavailable: return "AnalyticUnavailable";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace ncspectra
