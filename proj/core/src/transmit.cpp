#include "nlc/transmit.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

#include "nlc/errors.hpp"

namespace nlc {

namespace {

constexpr double kHalfPi = M_PI / 2.0;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

TransmitFunction::TransmitFunction(TransmitKind kind, double omega, double rho_db,
                                   double rho)
    : kind_(kind), omega_(omega), rho_db_(rho_db), rho_(rho) {}

TransmitFunction TransmitFunction::make(TransmitKind kind, double omega, double rho_db) {
    if (kind == TransmitKind::linear) return identity();
    if (!(omega > 0.0)) throw ValidationError("transmit: omega must be > 0");
    const double rho = std::pow(10.0, rho_db / 10.0);
    return TransmitFunction(kind, omega, rho_db, rho);
}

TransmitFunction TransmitFunction::identity() {
    return TransmitFunction(TransmitKind::linear, 0.0, 0.0, 1.0);
}

double TransmitFunction::operator()(double x) const {
    const double s = std::sqrt(rho_);
    const double u = omega_ * x;
    switch (kind_) {
        case TransmitKind::linear: return x;
        case TransmitKind::tanh: return s * std::tanh(u);
        case TransmitKind::arctan: return s * std::atan(u);
        case TransmitKind::arctan_normalized: return s * (2.0 / M_PI) * std::atan(u);
        case TransmitKind::gudermannian:
            return s * (2.0 / M_PI) * std::atan(std::sinh(kHalfPi * u));
        case TransmitKind::algebraic_sigmoid: return s * u / std::sqrt(1.0 + u * u);
    }
    return x;
}

double TransmitFunction::derivative(double x) const {
    const double s = std::sqrt(rho_);
    const double u = omega_ * x;
    switch (kind_) {
        case TransmitKind::linear: return 1.0;
        case TransmitKind::tanh: {
            const double sech = 1.0 / std::cosh(u);
            return s * omega_ * sech * sech;
        }
        case TransmitKind::arctan: return s * omega_ / (1.0 + u * u);
        case TransmitKind::arctan_normalized:
            return s * (2.0 / M_PI) * omega_ / (1.0 + u * u);
        case TransmitKind::gudermannian: return s * omega_ / std::cosh(kHalfPi * u);
        case TransmitKind::algebraic_sigmoid: {
            const double d = 1.0 + u * u;
            return s * omega_ / (d * std::sqrt(d));
        }
    }
    return 1.0;
}

double TransmitFunction::derivative_bound() const {
    return derivative(0.0);
}

double TransmitFunction::amplitude_bound() const {
    const double s = std::sqrt(rho_);
    switch (kind_) {
        case TransmitKind::linear: return std::numeric_limits<double>::infinity();
        case TransmitKind::arctan: return s * kHalfPi;
        default: return s;
    }
}

TransmitFunction TransmitFunction::parse(const std::string& designator) {
    const auto parts = split(designator, ':');
    if (parts[0] == "linear") {
        if (parts.size() != 1) {
            throw ValidationError("transmit designator 'linear' takes no parameters");
        }
        return identity();
    }
    TransmitKind kind;
    if (parts[0] == "tanh") kind = TransmitKind::tanh;
    else if (parts[0] == "arctan") kind = TransmitKind::arctan;
    else if (parts[0] == "arctan_normalized") kind = TransmitKind::arctan_normalized;
    else if (parts[0] == "gudermannian") kind = TransmitKind::gudermannian;
    else if (parts[0] == "algebraic_sigmoid") kind = TransmitKind::algebraic_sigmoid;
    else throw ValidationError("unknown transmit kind '" + parts[0] + "'");
    if (parts.size() != 3) {
        throw ValidationError("transmit designator '" + designator +
                              "': expected kind:omega:rho_db");
    }
    double omega, rho_db;
    try {
        omega = std::stod(parts[1]);
        rho_db = std::stod(parts[2]);
    } catch (...) {
        throw ValidationError("transmit designator '" + designator + "': bad number");
    }
    return make(kind, omega, rho_db);
}

std::string TransmitFunction::designator() const {
    if (kind_ == TransmitKind::linear) return "linear";
    std::ostringstream out;
    out << transmit_kind_name(kind_) << ":" << format_double(omega_) << ":"
        << format_double(rho_db_);
    return out.str();
}

double derivative_check(const TransmitFunction& f, std::span<const double> grid,
                        double h_step) {
    if (!(h_step > 0.0)) throw ValidationError("derivative_check: h_step must be > 0");
    double worst = 0.0;
    for (double x : grid) {
        const double xp = x + h_step;
        const double xm = x - h_step;
        // actual rounded abscissa gap as denominator keeps affine maps exact
        const double diff = (f(xp) - f(xm)) / (xp - xm);
        const double exact = f.derivative(x);
        const double err = std::fabs(diff - exact) / std::max(1.0, std::fabs(exact));
        worst = std::max(worst, err);
    }
    return worst;
}

std::string transmit_kind_name(TransmitKind k) {
    switch (k) {
        case TransmitKind::linear: return "linear";
        case TransmitKind::tanh: return "tanh";
        case TransmitKind::arctan: return "arctan";
        case TransmitKind::arctan_normalized: return "arctan_normalized";
        case TransmitKind::gudermannian: return "gudermannian";
        case TransmitKind::algebraic_sigmoid: return "algebraic_sigmoid";
    }
    return "?";
}

}  // namespace nlc
