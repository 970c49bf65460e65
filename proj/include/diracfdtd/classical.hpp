// classical.hpp - relativistic classical particle integrators used as the
// comparison baseline for the Dirac solver. Motion is confined to the
// symmetry line z = 0, y = 0, so the state is one-dimensional.
//
// All integrators are classic fixed-step RK4 on (x, p); the velocity-form
// equation (d v/dt with the (1-v^2)^{3/2} factor) is implemented as an
// independent cross-check. Fixed steps keep golden outputs reproducible.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "diracfdtd/potentials.hpp"
#include "diracfdtd/units.hpp"

namespace dfdtd {

struct ClassicalState {
    double t = 0.0;
    double x = 0.0; // nm
    double v = 0.0; // c units
    double p = 0.0; // MeV/c

    static ClassicalState from_momentum(double x, double p,
                                        double mass = constants::electron_rest_energy) {
        ClassicalState s;
        s.x = x;
        s.p = p;
        s.v = p / energy_of_momentum(p, mass);
        return s;
    }

    static ClassicalState from_velocity(double x, double v,
                                        double mass = constants::electron_rest_energy) {
        if (std::abs(v) >= 1.0)
            throw std::invalid_argument("ClassicalState: |v| must be < 1");
        ClassicalState s;
        s.x = x;
        s.v = v;
        s.p = mass * v / std::sqrt(1.0 - v * v);
        return s;
    }
};

struct ClassicalTrajectory {
    std::vector<ClassicalState> states;
    double max_neglected_va_term = 0.0; // max |q (dv/dt) A_x| along the path, MeV/(nm/c)

    const ClassicalState& front() const { return states.front(); }
    const ClassicalState& back() const { return states.back(); }
};

namespace classical_detail {

// On-axis scalar potential energies q-free (charge applied by caller):
// e*A0 for the two dipole-line configurations, z = 0.
inline double dipole_a0_on_axis(const DipoleLineSpec& d, double x) {
    const double a = d.half_separation;
    const double den = x * x + a * a;
    if (d.orientation == DipoleOrientation::Parallel)
        return d.sign * d.coef * 2.0 * x / den;
    return d.sign * d.coef * (-2.0 * a) / den;
}

inline double dipole_da0_dx(const DipoleLineSpec& d, double x) {
    const double a = d.half_separation;
    const double den = x * x + a * a;
    if (d.orientation == DipoleOrientation::Parallel)
        return d.sign * d.coef * 2.0 * (a * a - x * x) / (den * den);
    return d.sign * d.coef * 4.0 * a * x / (den * den);
}

// Mid-path component of the solenoid-pair vector potential and its slope.
inline double pair_ax_on_axis(const SolenoidPairSpec& s, double x) {
    return -s.flux * s.half_separation / (M_PI * (x * x + s.half_separation * s.half_separation));
}

inline double pair_dax_dx(const SolenoidPairSpec& s, double x) {
    const double den = x * x + s.half_separation * s.half_separation;
    return 2.0 * s.flux * s.half_separation * x / (M_PI * den * den);
}

// RK4 on state y = (x, p) with dp/dt supplied by `force(x, v)`.
template <typename Force>
ClassicalTrajectory integrate_momentum_form(Force force, const ClassicalState& initial,
                                            double x_end, double dt, double mass) {
    if (dt <= 0.0) throw std::invalid_argument("integrate: dt must be > 0");
    const double dir = (x_end >= initial.x) ? 1.0 : -1.0;
    if (dir * initial.v <= 0.0)
        throw std::invalid_argument("integrate: initial velocity does not point toward x_end");

    auto vel = [mass](double p) { return p / energy_of_momentum(p, mass); };

    ClassicalTrajectory traj;
    ClassicalState s = initial;
    s.v = vel(s.p);
    traj.states.push_back(s);

    const long max_steps = 100'000'000;
    for (long n = 0; n < max_steps; ++n) {
        if (dir * (s.x - x_end) >= 0.0) return traj;

        const double x1 = s.x, p1 = s.p;
        const double k1x = vel(p1), k1p = force(x1, k1x);
        const double k2x = vel(p1 + 0.5 * dt * k1p), k2p = force(x1 + 0.5 * dt * k1x, k2x);
        const double k3x = vel(p1 + 0.5 * dt * k2p), k3p = force(x1 + 0.5 * dt * k2x, k3x);
        const double k4x = vel(p1 + dt * k3p), k4p = force(x1 + dt * k3x, k4x);

        s.x += dt / 6.0 * (k1x + 2.0 * (k2x + k3x) + k4x);
        s.p += dt / 6.0 * (k1p + 2.0 * (k2p + k3p) + k4p);
        s.t += dt;
        s.v = vel(s.p);
        traj.states.push_back(s);

        if (!std::isfinite(s.x) || !std::isfinite(s.p))
            throw std::runtime_error("integrate: trajectory diverged");
        if (dir * s.v <= 0.0 && std::abs(s.x - x_end) > 0.0) {
            // turned around before reaching x_end; stop cleanly
            return traj;
        }
    }
    throw std::runtime_error("integrate: step budget exhausted before reaching x_end");
}

} // namespace classical_detail

/// Classical motion along the mid-line between two parallel dipole lines
/// (scalar force -q dA0/dx). `charge` in units of e (+1 positron, -1
/// electron).
inline ClassicalTrajectory integrate_dipole_parallel(const DipoleLineSpec& spec,
                                                     const ClassicalState& initial,
                                                     double x_end, double dt,
                                                     double charge = -1.0,
                                                     double mass = constants::electron_rest_energy) {
    spec.validate();
    if (spec.orientation != DipoleOrientation::Parallel)
        throw std::invalid_argument("integrate_dipole_parallel: spec orientation must be parallel");
    auto force = [&spec, charge](double x, double /*v*/) {
        return -charge * classical_detail::dipole_da0_dx(spec, x);
    };
    return classical_detail::integrate_momentum_form(force, initial, x_end, dt, mass);
}

inline ClassicalTrajectory integrate_dipole_perpendicular(const DipoleLineSpec& spec,
                                                          const ClassicalState& initial,
                                                          double x_end, double dt,
                                                          double charge = -1.0,
                                                          double mass = constants::electron_rest_energy) {
    spec.validate();
    if (spec.orientation != DipoleOrientation::Perpendicular)
        throw std::invalid_argument("integrate_dipole_perpendicular: spec orientation must be perpendicular");
    auto force = [&spec, charge](double x, double /*v*/) {
        return -charge * classical_detail::dipole_da0_dx(spec, x);
    };
    return classical_detail::integrate_momentum_form(force, initial, x_end, dt, mass);
}

/// Canonical-momentum-conserving motion along the mid-path between two
/// opposite solenoids: dp_x/dt = -q (dA_x/dx) v_x. Momentum form; the
/// velocity form below must agree to 1e-9. Also records the magnitude of
/// the neglected q (dv/dt) A_x term along the trajectory.
inline ClassicalTrajectory integrate_canonical_conservation(const SolenoidPairSpec& spec,
                                                            const ClassicalState& initial,
                                                            double x_end, double dt,
                                                            double charge = -1.0,
                                                            double mass = constants::electron_rest_energy) {
    spec.validate();
    if (std::abs(initial.x) < 8.0 * spec.half_separation)
        throw std::invalid_argument("integrate_canonical_conservation: start at |x| >= 8a");
    auto force = [&spec, charge](double x, double v) {
        return -charge * classical_detail::pair_dax_dx(spec, x) * v;
    };
    auto traj = classical_detail::integrate_momentum_form(force, initial, x_end, dt, mass);
    if (std::abs(traj.back().v) >= 1.0)
        throw std::runtime_error("integrate_canonical_conservation: |v| reached c (unphysical parameters)");
    // dv/dt = force / (gamma^3 m); neglected term magnitude q (dv/dt) A_x
    for (const auto& s : traj.states) {
        const double gamma2 = 1.0 / (1.0 - s.v * s.v);
        const double dvdt = force(s.x, s.v) / (mass * gamma2 * std::sqrt(gamma2));
        const double term = std::abs(charge * dvdt * classical_detail::pair_ax_on_axis(spec, s.x));
        if (term > traj.max_neglected_va_term) traj.max_neglected_va_term = term;
    }
    return traj;
}

/// Velocity-form cross-check of the same dynamics:
/// dv/dt = -(q/m) v (1-v^2)^{3/2} dA_x/dx.
inline ClassicalTrajectory integrate_canonical_conservation_velocity_form(
    const SolenoidPairSpec& spec, const ClassicalState& initial, double x_end, double dt,
    double charge = -1.0, double mass = constants::electron_rest_energy) {
    spec.validate();
    if (dt <= 0.0) throw std::invalid_argument("integrate: dt must be > 0");
    const double dir = (x_end >= initial.x) ? 1.0 : -1.0;
    if (dir * initial.v <= 0.0)
        throw std::invalid_argument("integrate: initial velocity does not point toward x_end");

    auto accel = [&spec, charge, mass](double x, double v) {
        const double f = 1.0 - v * v;
        return -(charge / mass) * v * f * std::sqrt(f) * classical_detail::pair_dax_dx(spec, x);
    };

    ClassicalTrajectory traj;
    ClassicalState s = initial;
    traj.states.push_back(s);
    const long max_steps = 100'000'000;
    for (long n = 0; n < max_steps; ++n) {
        if (dir * (s.x - x_end) >= 0.0) return traj;
        const double x1 = s.x, v1 = s.v;
        const double k1x = v1, k1v = accel(x1, v1);
        const double k2x = v1 + 0.5 * dt * k1v, k2v = accel(x1 + 0.5 * dt * k1x, k2x);
        const double k3x = v1 + 0.5 * dt * k2v, k3v = accel(x1 + 0.5 * dt * k2x, k3x);
        const double k4x = v1 + dt * k3v, k4v = accel(x1 + dt * k3x, k4x);
        s.x += dt / 6.0 * (k1x + 2.0 * (k2x + k3x) + k4x);
        s.v += dt / 6.0 * (k1v + 2.0 * (k2v + k3v) + k4v);
        s.t += dt;
        if (std::abs(s.v) >= 1.0)
            throw std::runtime_error("velocity form: |v| reached c (unphysical parameters)");
        s.p = mass * s.v / std::sqrt(1.0 - s.v * s.v);
        traj.states.push_back(s);
    }
    throw std::runtime_error("integrate: step budget exhausted before reaching x_end");
}

/// Max deviation of p_x + q A_x(x) from its initial value along a
/// solenoid-pair trajectory.
inline double conserved_quantity_check(const ClassicalTrajectory& traj,
                                       const SolenoidPairSpec& spec, double charge = -1.0) {
    if (traj.states.empty()) return 0.0;
    const double c0 = traj.front().p + charge * classical_detail::pair_ax_on_axis(spec, traj.front().x);
    double worst = 0.0;
    for (const auto& s : traj.states) {
        const double c = s.p + charge * classical_detail::pair_ax_on_axis(spec, s.x);
        worst = std::max(worst, std::abs(c - c0));
    }
    return worst;
}

/// Total-energy conservation check for the scalar (dipole-line) force:
/// max deviation of E_kin(p) + q A0(x) from its initial value, MeV.
inline double energy_conservation_check(const ClassicalTrajectory& traj,
                                        const DipoleLineSpec& spec, double charge = -1.0,
                                        double mass = constants::electron_rest_energy) {
    if (traj.states.empty()) return 0.0;
    auto total = [&](const ClassicalState& s) {
        return energy_of_momentum(s.p, mass) +
               charge * classical_detail::dipole_a0_on_axis(spec, s.x);
    };
    const double e0 = total(traj.front());
    double worst = 0.0;
    for (const auto& s : traj.states) worst = std::max(worst, std::abs(total(s) - e0));
    return worst;
}

/// r_class = p / (e B0), nm; b0 in internal units (e*c*B0, MeV/nm).
inline double classical_orbit_radius(double p, double b0) {
    if (b0 == 0.0) throw std::invalid_argument("classical_orbit_radius: b0 must be nonzero");
    return p / std::abs(b0);
}

/// Step-halving refinement wrapper: halves dt until the final velocity
/// changes by less than `rel_tol` relative, then returns the finer run.
template <typename Integrate>
ClassicalTrajectory refine_until(Integrate integrate, double dt0, double rel_tol = 1e-6,
                                 int max_halvings = 20) {
    ClassicalTrajectory coarse = integrate(dt0);
    double dt = dt0;
    for (int h = 0; h < max_halvings; ++h) {
        dt *= 0.5;
        ClassicalTrajectory fine = integrate(dt);
        const double ref = std::max(std::abs(fine.back().v), 1e-300);
        if (std::abs(fine.back().v - coarse.back().v) / ref < rel_tol) return fine;
        coarse = std::move(fine);
    }
    throw std::runtime_error("refine_until: no convergence within halving budget");
}

} // namespace dfdtd
