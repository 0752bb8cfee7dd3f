#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asymgeo/errors.hpp"

namespace asymgeo {
namespace bounds {

inline constexpr double kDomainSlack = 1e-12;

inline double phi() { return (1.0 + std::sqrt(5.0)) / 2.0; }

namespace bdetail {

inline void check_s(double s) {
    if (!(s >= 1.0 - kDomainSlack && s <= 2.0 + kDomainSlack))
        throw OutOfDomain("s outside [1, 2]");
}

inline void check_tau(double t) {
    if (!(t >= 2.0 / 3.0 - kDomainSlack && t <= 1.0 + kDomainSlack))
        throw OutOfDomain("tau outside [2/3, 1]");
}

inline double c_mid(double s) {
    const double s2 = s * s;
    return (s2 + 1) * (s2 + 1) / ((s2 - 1) * (s2 + 2 * s - 1 + 2 * std::sqrt(s * (s2 - 1))));
}

inline double c_high(double s) { return 2 * (s * s - 2 * s - 1) / ((s - 3) * (s + 1)); }

inline double sqrt_clamped(double x) { return std::sqrt(std::max(x, 0.0)); }

}  // namespace bdetail

inline double nu_star(double tau) {
    bdetail::check_tau(tau);
    const double ti = 1.0 / tau;
    return bdetail::sqrt_clamped((ti - 1) * (2 * ti - 1));
}

inline double nu_plus(double tau) {
    bdetail::check_tau(tau);
    const double ti = 1.0 / tau;
    return 1 - ti + bdetail::sqrt_clamped(ti * (2 - ti));
}

inline double b_of_tau_nu(double tau, double nu) {
    const double ti = 1.0 / tau;
    return 4 * ti * (ti + nu - 1) / ((nu + 1) * (2 * ti + nu - 1));
}

// Larger root of s^2 - B(tau,nu) s - 1 = 0.
inline double s_of_tau_nu(double tau, double nu) {
    bdetail::check_tau(tau);
    if (!(nu > 0.0 && nu <= 1.0 + kDomainSlack)) throw OutOfDomain("nu outside (0, 1]");
    const double b = b_of_tau_nu(tau, nu);
    return 0.5 * (b + std::sqrt(b * b + 4));
}

struct BoundConstants {
    double phi;
    double tau_hat;  // where nu_star and nu_plus cross
    double s_hat;    // s(tau_hat, nu_plus(tau_hat)); branch point of c(s)
};

// tau_hat by bisection on nu_star - nu_plus (clean sign change on [0.7, 0.9]);
// s_hat then follows from the parametrization. The difference of the two
// c-branches itself touches zero tangentially at s_hat and has no sign
// change, so it cannot be bisected directly.
inline const BoundConstants& constants() {
    static const BoundConstants k = [] {
        BoundConstants c{};
        c.phi = phi();
        double lo = 0.7, hi = 0.9;
        auto f = [](double t) { return nu_star(t) - nu_plus(t); };
        const bool lo_pos = f(lo) > 0;
        for (int i = 0; i < 200; ++i) {
            const double m = 0.5 * (lo + hi);
            if ((f(m) > 0) == lo_pos)
                lo = m;
            else
                hi = m;
        }
        c.tau_hat = 0.5 * (lo + hi);
        c.s_hat = s_of_tau_nu(c.tau_hat, nu_plus(c.tau_hat));
        if (std::fabs(c.phi * c.phi - c.phi - 1) > 1e-12)
            throw std::logic_error("golden ratio identity failed");
        if (std::fabs(bdetail::c_mid(c.s_hat) - bdetail::c_high(c.s_hat)) > 1e-10)
            throw std::logic_error("c-branches disagree at s_hat");
        if (!(c.s_hat > 1.8535 && c.s_hat < 1.8537))
            throw std::logic_error("s_hat outside the reference window");
        if (std::fabs(nu_star(c.tau_hat) - nu_plus(c.tau_hat)) > 1e-10)
            throw std::logic_error("nu_star(tau_hat) != nu_plus(tau_hat)");
        return c;
    }();
    return k;
}

// Piecewise upper bound for tau in terms of the asymmetry, branch points at
// phi and s_hat.
inline double c_of_s(double s) {
    bdetail::check_s(s);
    const BoundConstants& k = constants();
    if (s <= k.phi) return 1.0;
    if (s <= k.s_hat) return bdetail::c_mid(s);
    return bdetail::c_high(std::min(s, 2.0));
}

// (s+1)/2 c(s): envelope of the diameter-width ratio for pseudo-complete sets.
inline double dw_envelope(double s) {
    bdetail::check_s(s);
    return 0.5 * (s + 1) * c_of_s(s);
}

inline double s_max(double tau) {
    bdetail::check_tau(tau);
    return s_of_tau_nu(tau, std::max(nu_star(tau), nu_plus(tau)));
}

inline bool tau_region_contains(double s, double tau) {
    bdetail::check_s(s);
    const double tol = 1e-9;
    return tau >= 2.0 / (s + 1) - tol && tau <= c_of_s(s) + tol;
}

inline bool dw_region_contains(double s, double rho) {
    bdetail::check_s(s);
    const double tol = 1e-9;
    return rho >= 1.0 - tol && rho <= dw_envelope(s) + tol;
}

}  // namespace bounds
}  // namespace asymgeo
