#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace nlc {

enum class ScheduleKind {
    constant,        // alpha(t) = alpha
    inverse_t,       // alpha(t) = 1/(t+1)
    harmonic,        // alpha(t) = a/(t+1)
    custom_a_over_t, // alpha(t) = a/(t+t0)
};

/// Step-size sequence. The decreasing kinds structurally satisfy
/// alpha(t) > 0, sum alpha = inf, sum alpha^2 < inf.
struct Schedule {
    ScheduleKind kind = ScheduleKind::inverse_t;
    double alpha = 0.0;  // constant kind
    double a = 1.0;      // gain for the a/t kinds
    double t0 = 1.0;     // offset for custom_a_over_t

    double at(std::int64_t t) const;
    bool decreasing() const { return kind != ScheduleKind::constant; }

    /// Gain of the a/t envelope (1 for inverse_t); invalid for constant.
    double gain() const;

    /// sum_{t=0}^{T-1} alpha(t)^2; T = nullopt means the full series.
    /// Throws ValidationError for the constant kind with T = nullopt.
    double sum_sq(std::optional<std::int64_t> steps) const;

    static Schedule make_constant(double alpha);
    static Schedule make_inverse_t();
    static Schedule make_harmonic(double a);
    static Schedule make_a_over_t(double a, double t0);

    /// `constant:0.5`, `inverse_t`, `harmonic:0.1`, `custom_a_over_t:0.5:10`.
    static Schedule parse(const std::string& designator);
    std::string designator() const;

    bool operator==(const Schedule&) const = default;
};

/// psi_1(x) = sum_{k>=0} 1/(x+k)^2 for x > 0.
double trigamma(double x);

}  // namespace nlc
