// packet.hpp - Gaussian spinor wave-packet initializer.
//
// Initial wave function: a normalized Gaussian envelope exp(-x.x/4x0^2)
// times the plane-wave phase exp(i p.x/hbar), carried by the free
// positive-energy spinor of the central momentum (Dirac representation,
// sigma_z diagonal; the spin-up packet is an eigenstate of Sigma_z at
// p = 0). After discrete renormalization, components 1-2 are moved half a
// time step behind components 3-4 by the analytic phase
// exp(+i E dt / 2 hbar), matching the leapfrog entry state of the stepper.

#pragma once

#include <cmath>
#include <stdexcept>

#include "diracfdtd/spinor_field.hpp"
#include "diracfdtd/units.hpp"

namespace dfdtd {

enum class Spin { Up, Down };

struct PacketSpec {
    double width = 0.0;   // x0, nm
    Vec3 momentum{};      // MeV/c
    Vec3 center{};        // nm
    Spin spin = Spin::Up;
    double mass = constants::electron_rest_energy;

    double energy() const { return energy_of_momentum(momentum.norm(), mass); }

    void validate() const {
        if (width <= 0.0) throw std::invalid_argument("PacketSpec: width must be > 0");
        if (mass < 0.0) throw std::invalid_argument("PacketSpec: mass must be >= 0");
    }
};

/// Gaussian momentum spread hbar/(2 x0), MeV/c.
inline double momentum_spread(const PacketSpec& spec) {
    return constants::hbar_c / (2.0 * spec.width);
}

inline SpinorField init_packet(const GridSpec& grid, const PacketSpec& spec) {
    spec.validate();

    const double support = 6.0 * spec.width;
    const Vec3 lo = grid.domain_min();
    const Vec3 hi = grid.domain_max();
    if (spec.center.x - support < lo.x || spec.center.x + support > hi.x ||
        spec.center.y - support < lo.y || spec.center.y + support > hi.y ||
        spec.center.z - support < lo.z || spec.center.z + support > hi.z)
        throw std::invalid_argument("init_packet: packet support (center +- 6 x0) outside grid");

    const double E = spec.energy();
    const double denom = E + spec.mass;
    const Vec3 p = spec.momentum;
    const double hbar = constants::hbar;

    // Positive-energy spinor weights for the central momentum.
    cplx w1, w2, w3, w4;
    if (spec.spin == Spin::Up) {
        w1 = 1.0;
        w2 = 0.0;
        w3 = p.z / denom;
        w4 = cplx(p.x, p.y) / denom;
    } else {
        w1 = 0.0;
        w2 = 1.0;
        w3 = cplx(p.x, -p.y) / denom;
        w4 = -p.z / denom;
    }
    const double amp = std::sqrt(denom / (2.0 * E));

    SpinorField field(grid);
    const double inv4x02 = 1.0 / (4.0 * spec.width * spec.width);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j)
            for (int k = 0; k < grid.nz; ++k) {
                const Vec3 r = grid.position(i, j, k) - spec.center;
                const double r2 = r.dot(r);
                const double gauss = std::exp(-r2 * inv4x02);
                const double phase = (p.x * r.x + p.y * r.y + p.z * r.z) / hbar;
                const cplx carrier = gauss * cplx(std::cos(phase), std::sin(phase)) * amp;
                const std::size_t c = grid.index(i, j, k);
                field.psi1[c] = w1 * carrier;
                field.psi2[c] = w2 * carrier;
                field.psi3[c] = w3 * carrier;
                field.psi4[c] = w4 * carrier;
            }

    const double norm = total_norm(field);
    if (norm <= 0.0) throw std::runtime_error("init_packet: degenerate packet (zero norm)");
    field.scale(1.0 / std::sqrt(norm));

    // Leapfrog stagger: upper pair enters the stepper half a step behind.
    const double half = 0.5 * grid.delta_t;
    const cplx back(std::cos(E * half / hbar), std::sin(E * half / hbar));
    for (auto& v : field.psi1) v *= back;
    for (auto& v : field.psi2) v *= back;
    field.stagger.time_of_12 = -half;
    field.stagger.time_of_34 = 0.0;
    return field;
}

} // namespace dfdtd
