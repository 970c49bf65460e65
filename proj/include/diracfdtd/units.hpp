// units.hpp - internal unit system, physical constants, lattice geometry.
//
// Internal units used everywhere in this library:
//   energy   : MeV
//   length   : nm
//   time     : nm/c   (so c = 1 exactly)
//   momentum : MeV/c  (numerically equal to MeV)
//
// Electromagnetic quantities are stored pre-multiplied by the elementary
// charge (and by c for the vector potential), so that the arrays handed to
// the kernel are already energies:
//   a0  = e*A0      [MeV]      scalar potential energy of a unit (+e) charge
//   a_i = e*c*A_i   [MeV]      vector potential coupling of a unit charge
// The signed particle charge q = -1 (electron) or +1 (positron) multiplies
// these inside the Hamiltonian.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dfdtd {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

namespace constants {

// Speed of light: unity by construction of the unit system.
inline constexpr double c = 1.0;

// Action bridging constant, MeV*nm. Also the numeric value of hbar in
// MeV*(nm/c).
inline constexpr double hbar_c = 0.197327;
inline constexpr double hbar = hbar_c / c;

// Electron rest energy, MeV.
inline constexpr double electron_rest_energy = 0.510999;

// SI values used only by the conversion helpers below.
inline constexpr double si_speed_of_light = 2.99792458e8;       // m/s
inline constexpr double si_elementary_charge = 1.602176634e-19; // C
inline constexpr double si_vacuum_permittivity = 8.8541878128e-12; // F/m

} // namespace constants

// SI <-> internal conversions for the externally specified field quantities.
// All of these are exact decimal factors built from c and the definition of
// the electronvolt (the elementary charge cancels).
namespace convert {

// Magnetic field B [T] -> e*c*B [MeV/nm].
inline constexpr double mev_per_nm_per_tesla = 2.99792458e-7;

// Magnetic flux Phi [Wb] -> e*c*Phi [MeV*nm].
inline constexpr double mev_nm_per_weber = 2.99792458e11;

// Dipole line density p [C*m/m] -> e*p/(2*pi*eps0) [MeV*nm].
// 1/(2*pi*eps0) = 2 * 8.9875517873681764e9 V*m/C; eV*m = 1e3 MeV*nm.
inline constexpr double dipole_coef_mev_nm_per_si = 1.7975103574736351e13;

inline double tesla_to_internal(double b_si) { return b_si * mev_per_nm_per_tesla; }
inline double internal_to_tesla(double b_int) { return b_int / mev_per_nm_per_tesla; }

inline double weber_to_internal(double phi_si) { return phi_si * mev_nm_per_weber; }
inline double internal_to_weber(double phi_int) { return phi_int / mev_nm_per_weber; }

inline double line_density_to_internal(double rho_si) { return rho_si * dipole_coef_mev_nm_per_si; }
inline double internal_to_line_density(double coef_int) { return coef_int / dipole_coef_mev_nm_per_si; }

} // namespace convert

/// Relativistic dispersion E = sqrt((pc)^2 + (mc^2)^2), all in MeV.
inline double energy_of_momentum(double p, double mass = constants::electron_rest_energy) {
    return std::sqrt(p * p + mass * mass);
}

/// v/c = pc^2/E for momentum p [MeV/c].
inline double velocity_of_momentum(double p, double mass = constants::electron_rest_energy) {
    return p / energy_of_momentum(p, mass);
}

/// Stability bound for the explicit leapfrog stencil on a cubic lattice:
/// safety * delta / (c*sqrt(3)). The sqrt(3) is the 3D central-difference
/// leapfrog bound; the default safety 0.5 leaves headroom for the
/// diagonal mass/potential term and for norm-drift tolerances.
inline double cfl_limit(double delta, double safety = 0.5) {
    if (delta <= 0.0) throw std::invalid_argument("cfl_limit: delta must be > 0");
    return safety * delta / (constants::c * std::sqrt(3.0));
}

/// Uniform cubic lattice: counts, spacing, time step, physical origin of
/// index (0,0,0). Value type, immutable in spirit; validated on construction.
struct GridSpec {
    int nx = 0, ny = 0, nz = 0;
    double delta = 0.0;    // nm, same for all axes
    double delta_t = 0.0;  // nm/c
    Vec3 origin{};         // position of cell (0,0,0)
    double cfl_safety = 0.5;

    GridSpec() = default;

    GridSpec(int nx_, int ny_, int nz_, double delta_, double delta_t_,
             Vec3 origin_ = {}, double cfl_safety_ = 0.5)
        : nx(nx_), ny(ny_), nz(nz_), delta(delta_), delta_t(delta_t_),
          origin(origin_), cfl_safety(cfl_safety_) {
        if (nx < 3 || ny < 3 || nz < 3)
            throw std::invalid_argument("GridSpec: all cell counts must be >= 3");
        if (delta <= 0.0) throw std::invalid_argument("GridSpec: delta must be > 0");
        if (delta_t <= 0.0) throw std::invalid_argument("GridSpec: delta_t must be > 0");
        const double limit = cfl_limit(delta, cfl_safety);
        if (delta_t > limit * (1.0 + 1e-12))
            throw std::invalid_argument("GridSpec: delta_t " + std::to_string(delta_t) +
                                        " exceeds CFL limit " + std::to_string(limit));
    }

    std::size_t cell_count() const {
        return static_cast<std::size_t>(nx) * ny * nz;
    }

    // Flat index; k (z) fastest-varying, then j, then i.
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * ny + j) * nz + k;
    }

    bool in_bounds(int i, int j, int k) const {
        return i >= 0 && i < nx && j >= 0 && j < ny && k >= 0 && k < nz;
    }

    // Axis convention fixed project-wide: i<->x, j<->y, k<->z.
    Vec3 position(int i, int j, int k) const {
        return {origin.x + delta * i, origin.y + delta * j, origin.z + delta * k};
    }

    Vec3 domain_min() const { return origin; }
    Vec3 domain_max() const {
        return {origin.x + delta * (nx - 1), origin.y + delta * (ny - 1),
                origin.z + delta * (nz - 1)};
    }
};

/// Convenience: centered cubic-ish grid whose physical center is at `center`.
inline GridSpec make_centered_grid(int nx, int ny, int nz, double delta,
                                   double delta_t, Vec3 center = {},
                                   double cfl_safety = 0.5) {
    Vec3 origin{center.x - 0.5 * delta * (nx - 1), center.y - 0.5 * delta * (ny - 1),
                center.z - 0.5 * delta * (nz - 1)};
    return GridSpec(nx, ny, nz, delta, delta_t, origin, cfl_safety);
}

} // namespace dfdtd
