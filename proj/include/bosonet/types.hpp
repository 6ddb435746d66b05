// types.hpp: Shared aliases, the error type, and the extended-real time value.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace bosonet {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// ------------------------------- Errors --------------------------------------

enum class Errc {
    InvalidArgument,
    DimensionMismatch,
    NonPositiveNormalMode,
    NonDissipativeMode,
    DefectiveMatrix,
    SingularSystem,
    SingularWidth,
    NullState,
    QuadratureNotConverged,
    NoBracket,
    CutoffOverflow,
    Configuration,
    Precondition,
};

inline const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NonPositiveNormalMode: return "NonPositiveNormalMode";
        case Errc::NonDissipativeMode: return "NonDissipativeMode";
        case Errc::DefectiveMatrix: return "DefectiveMatrix";
        case Errc::SingularSystem: return "SingularSystem";
        case Errc::SingularWidth: return "SingularWidth";
        case Errc::NullState: return "NullState";
        case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
        case Errc::NoBracket: return "NoBracket";
        case Errc::CutoffOverflow: return "CutoffOverflow";
        case Errc::Configuration: return "Configuration";
        case Errc::Precondition: return "Precondition";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// ------------------------------ Time values ----------------------------------

// A time on the extended positive reals: either a finite value or +inf.
class Time {
public:
    static Time finite(double value) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw Error(Errc::InvalidArgument, "finite time must be positive, got " + std::to_string(value));
        }
        return Time(value);
    }
    static Time infinite() noexcept { return Time(std::numeric_limits<double>::infinity()); }

    // 1/rate, with rate <= 0 mapping to +inf.
    static Time from_rate(double rate) {
        return rate > 0.0 ? finite(1.0 / rate) : infinite();
    }

    bool is_infinite() const noexcept { return std::isinf(value_); }
    bool is_finite() const noexcept { return !is_infinite(); }
    double value() const noexcept { return value_; }
    double rate() const noexcept { return is_infinite() ? 0.0 : 1.0 / value_; }

    friend bool operator==(const Time& a, const Time& b) noexcept { return a.value_ == b.value_; }

private:
    explicit Time(double v) noexcept : value_(v) {}
    double value_;
};

// 1/tau = sum of 1/tau_k on the extended reals.
inline Time harmonic_sum(Time a, Time b) {
    return Time::from_rate(a.rate() + b.rate());
}

// ------------------------------ Small helpers --------------------------------

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

}  // namespace bosonet
