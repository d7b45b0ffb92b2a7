#include "nlc/schedule.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "nlc/errors.hpp"

namespace nlc {

namespace {

constexpr double kPiSqOver6 = 1.6449340668482264;  // zeta(2)

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

double trigamma(double x) {
    if (!(x > 0.0)) throw ValidationError("trigamma: requires x > 0");
    double acc = 0.0;
    while (x < 30.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    // asymptotic series 1/x + 1/(2x^2) + 1/(6x^3) - 1/(30x^5) + 1/(42x^7)
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    return acc + inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 +
                        inv2 * (-1.0 / 30.0 + inv2 * (1.0 / 42.0)))));
}

double Schedule::at(std::int64_t t) const {
    switch (kind) {
        case ScheduleKind::constant: return alpha;
        case ScheduleKind::inverse_t: return 1.0 / static_cast<double>(t + 1);
        case ScheduleKind::harmonic: return a / static_cast<double>(t + 1);
        case ScheduleKind::custom_a_over_t: return a / (static_cast<double>(t) + t0);
    }
    return alpha;
}

double Schedule::gain() const {
    switch (kind) {
        case ScheduleKind::constant:
            throw ValidationError("schedule: constant kind has no a/t gain");
        case ScheduleKind::inverse_t: return 1.0;
        case ScheduleKind::harmonic:
        case ScheduleKind::custom_a_over_t: return a;
    }
    return a;
}

double Schedule::sum_sq(std::optional<std::int64_t> steps) const {
    if (kind == ScheduleKind::constant) {
        if (!steps) {
            throw ValidationError("schedule: sum of squared constant steps diverges");
        }
        return alpha * alpha * static_cast<double>(*steps);
    }
    const double g = gain();
    const double offset = kind == ScheduleKind::custom_a_over_t ? t0 : 1.0;
    const double full = offset == 1.0 ? kPiSqOver6 : trigamma(offset);
    if (!steps) return g * g * full;
    if (*steps <= 0) return 0.0;
    return g * g * (full - trigamma(offset + static_cast<double>(*steps)));
}

Schedule Schedule::make_constant(double alpha) {
    if (!(alpha > 0.0)) throw ValidationError("schedule: constant alpha must be > 0");
    Schedule s;
    s.kind = ScheduleKind::constant;
    s.alpha = alpha;
    s.a = 0.0;
    s.t0 = 0.0;
    return s;
}

Schedule Schedule::make_inverse_t() {
    Schedule s;
    s.kind = ScheduleKind::inverse_t;
    s.a = 1.0;
    s.t0 = 1.0;
    return s;
}

Schedule Schedule::make_harmonic(double a) {
    if (!(a > 0.0)) throw ValidationError("schedule: harmonic gain must be > 0");
    Schedule s;
    s.kind = ScheduleKind::harmonic;
    s.a = a;
    s.t0 = 1.0;
    return s;
}

Schedule Schedule::make_a_over_t(double a, double t0) {
    if (!(a > 0.0)) throw ValidationError("schedule: gain must be > 0");
    if (!(t0 > 0.0)) throw ValidationError("schedule: t0 must be > 0");
    Schedule s;
    s.kind = ScheduleKind::custom_a_over_t;
    s.a = a;
    s.t0 = t0;
    return s;
}

Schedule Schedule::parse(const std::string& designator) {
    const auto parts = split(designator, ':');
    const auto num = [&](std::size_t i) {
        try {
            return std::stod(parts[i]);
        } catch (...) {
            throw ValidationError("schedule designator '" + designator + "': bad number");
        }
    };
    if (parts[0] == "constant" && parts.size() == 2) return make_constant(num(1));
    if (parts[0] == "inverse_t" && parts.size() == 1) return make_inverse_t();
    if (parts[0] == "harmonic" && parts.size() == 2) return make_harmonic(num(1));
    if (parts[0] == "custom_a_over_t" && parts.size() == 3) {
        return make_a_over_t(num(1), num(2));
    }
    throw ValidationError("schedule designator '" + designator +
                          "': expected constant:alpha | inverse_t | harmonic:a | "
                          "custom_a_over_t:a:t0");
}

std::string Schedule::designator() const {
    std::ostringstream out;
    switch (kind) {
        case ScheduleKind::constant: out << "constant:" << format_double(alpha); break;
        case ScheduleKind::inverse_t: out << "inverse_t"; break;
        case ScheduleKind::harmonic: out << "harmonic:" << format_double(a); break;
        case ScheduleKind::custom_a_over_t:
            out << "custom_a_over_t:" << format_double(a) << ":" << format_double(t0);
            break;
    }
    return out.str();
}

}  // namespace nlc
