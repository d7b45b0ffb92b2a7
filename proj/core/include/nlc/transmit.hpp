#pragma once

#include <span>
#include <string>

namespace nlc {

enum class TransmitKind {
    linear,
    tanh,
    arctan,
    arctan_normalized,
    gudermannian,
    algebraic_sigmoid,
};

/// A monotone transmit map h with exact analytic derivative.
///
/// Bounded kinds are odd, strictly increasing, scaled by sqrt(rho) so the
/// squared amplitude stays within the peak power budget rho (the literal
/// arctan kind tops out at rho*(pi/2)^2; the normalized variant at rho).
/// The linear kind is the unbounded identity baseline.
class TransmitFunction {
public:
    static TransmitFunction make(TransmitKind kind, double omega, double rho_db);
    static TransmitFunction identity();

    /// Designator grammar: `kind:omega:rho_db` (`tanh:0.05:10`), or bare `linear`.
    static TransmitFunction parse(const std::string& designator);
    std::string designator() const;

    double operator()(double x) const;
    double derivative(double x) const;

    /// c = sup_x h'(x), attained at the origin for every bounded kind.
    double derivative_bound() const;

    /// sup_x |h(x)|; +infinity for the linear kind.
    double amplitude_bound() const;

    bool bounded() const { return kind_ != TransmitKind::linear; }
    TransmitKind kind() const { return kind_; }
    double omega() const { return omega_; }
    double rho_db() const { return rho_db_; }
    double rho_linear() const { return rho_; }

    bool operator==(const TransmitFunction&) const = default;

private:
    TransmitFunction(TransmitKind kind, double omega, double rho_db, double rho);

    TransmitKind kind_ = TransmitKind::linear;
    double omega_ = 0.0;
    double rho_db_ = 0.0;
    double rho_ = 1.0;
};

inline double transmit_power(const TransmitFunction& f, double x) {
    const double v = f(x);
    return v * v;
}

/// Max relative gap between the analytic derivative and a central difference
/// over the grid: max |diff - h'| / max(1, |h'|).
double derivative_check(const TransmitFunction& f, std::span<const double> grid,
                        double h_step);

std::string transmit_kind_name(TransmitKind k);

}  // namespace nlc
