// stepper.hpp - leapfrog FDTD kernel advancing the 4-spinor one full time
// step under a sampled four-potential.
//
// Scheme: components 1-2 live at half-integer time levels, 3-4 at integer
// levels. A full step first advances 1-2 across [t-dt/2, t+dt/2] using 3-4
// at t, then advances 3-4 across [t, t+dt] using the new 1-2 values. The
// diagonal (mass + q*a0) term uses the Cayley rational factor (2-C)/C with
//   C = 1 + i*dt/(2*hbar) * (beta*m + q*a0),
// spatial derivatives are two-sided central differences over 2*delta, and
// the vector-potential coupling enters through the standard Dirac alpha
// matrices (sigma_z diagonal): a1, a2 couple 1<->4 and 2<->3; a3 couples
// 1<->3 and 2<->4.
//
// Cells are written once per half-update from read-only sources, so the
// result is bit-identical regardless of OpenMP worker count.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>

#include "diracfdtd/potentials.hpp"
#include "diracfdtd/spinor_field.hpp"
#include "diracfdtd/units.hpp"

namespace dfdtd {

struct ReflectingBoundary {};

/// Cosine-ramp absorbing layer: inside the layer each component is scaled
/// once per full step by 1 - strength*cos^2(pi/2 * d/width), where d is
/// the cell distance from the outer face (strongest at the face).
struct DampingLayerBoundary {
    int width = 8;
    double strength = 0.05;
};

using BoundaryCondition = std::variant<ReflectingBoundary, DampingLayerBoundary>;

enum class ParticleKind { Electron, Positron };

struct StepperConfig {
    double charge = -1.0; // -1 electron, +1 positron (units of e)
    double mass = constants::electron_rest_energy; // rest energy, MeV
    BoundaryCondition boundary = ReflectingBoundary{};

    static StepperConfig for_particle(ParticleKind kind) {
        StepperConfig c;
        c.charge = (kind == ParticleKind::Electron) ? -1.0 : +1.0;
        return c;
    }

    void validate(const GridSpec& grid) const {
        if (mass < 0.0) throw std::invalid_argument("StepperConfig: mass must be >= 0");
        if (charge != -1.0 && charge != 1.0 && charge != 0.0)
            throw std::invalid_argument("StepperConfig: charge must be -1, 0 or +1");
        if (const auto* d = std::get_if<DampingLayerBoundary>(&boundary)) {
            const int min_dim = std::min(grid.nx, std::min(grid.ny, grid.nz));
            if (d->width < 1 || d->width >= min_dim / 4)
                throw std::invalid_argument("StepperConfig: damping width must be in [1, min grid dim / 4)");
            if (d->strength < 0.0 || d->strength >= 1.0)
                throw std::invalid_argument("StepperConfig: damping strength must be in [0, 1)");
        }
    }
};

class BlowUpError : public std::runtime_error {
public:
    explicit BlowUpError(long step)
        : std::runtime_error("numerical blow-up: non-finite field after step " +
                             std::to_string(step)),
          step_index(step) {}
    long step_index;
};

namespace detail {

inline cplx cayley_inverse(double theta) {
    // 1 / (1 + i*theta)
    const double den = 1.0 + theta * theta;
    return {1.0 / den, -theta / den};
}

// Advance the pair (f, g) = (psi1, psi2) or (psi3, psi4) by one full step
// in place. `u` and `v` are the other pair's components in the roles of
// Eq.-style (psi3, psi4) relative to (psi1, psi2); for the lower update the
// roles are (psi1, psi2) themselves. `beta_m` is +m for the upper pair and
// -m for the lower pair.
inline void update_pair(std::vector<cplx>& f, std::vector<cplx>& g,
                        const std::vector<cplx>& u, const std::vector<cplx>& v,
                        const PotentialGrid& pot, const GridSpec& grid,
                        double beta_m, double q, double dt) {
    const double hbar = constants::hbar;
    const double half_theta = dt / (2.0 * hbar);
    const double grad = dt / (2.0 * grid.delta);
    const double pot_scale = q * dt / hbar;
    const std::ptrdiff_t si = static_cast<std::ptrdiff_t>(grid.ny) * grid.nz;
    const std::ptrdiff_t sj = grid.nz;

    const cplx I(0.0, 1.0);

#pragma omp parallel for schedule(static)
    for (int i = 1; i < grid.nx - 1; ++i) {
        for (int j = 1; j < grid.ny - 1; ++j) {
            const std::size_t row = grid.index(i, j, 1);
            for (int k = 1; k < grid.nz - 1; ++k) {
                const std::size_t c = row + (k - 1);
                const double a0 = pot.a0[c];
                const double a1 = pot.a1[c];
                const double a2 = pot.a2[c];
                const double a3 = pot.a3[c];

                const double theta = half_theta * (beta_m + q * a0);
                const cplx inv_c = cayley_inverse(theta);
                const cplx diag = cplx(2.0, 0.0) * inv_c - 1.0; // (2-C)/C

                // sigma.grad acting on (u, v):
                //   row f: dz u + dx v - i dy v
                //   row g: dx u + i dy u - dz v
                const cplx du_x = u[c + si] - u[c - si];
                const cplx du_y = u[c + sj] - u[c - sj];
                const cplx du_z = u[c + 1] - u[c - 1];
                const cplx dv_x = v[c + si] - v[c - si];
                const cplx dv_y = v[c + sj] - v[c - sj];
                const cplx dv_z = v[c + 1] - v[c - 1];

                const cplx grad_f = du_z + dv_x - I * dv_y;
                const cplx grad_g = du_x + I * du_y - dv_z;

                // alpha.a acting on (u, v):
                //   row f: a3 u + (a1 - i a2) v
                //   row g: (a1 + i a2) u - a3 v
                const cplx pot_f = a3 * u[c] + cplx(a1, -a2) * v[c];
                const cplx pot_g = cplx(a1, a2) * u[c] - a3 * v[c];

                f[c] = diag * f[c] + inv_c * (-grad * grad_f + I * pot_scale * pot_f);
                g[c] = diag * g[c] + inv_c * (-grad * grad_g + I * pot_scale * pot_g);
            }
        }
    }
}

inline void apply_damping(SpinorField& field, const DampingLayerBoundary& layer) {
    const GridSpec& g = field.grid;
    const int w = layer.width;
    auto ramp = [&](int dist) {
        if (dist >= w) return 1.0;
        const double cs = std::cos(0.5 * M_PI * static_cast<double>(dist) / w);
        return 1.0 - layer.strength * cs * cs;
    };
#pragma omp parallel for schedule(static)
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const int dist = std::min(std::min(std::min(i, g.nx - 1 - i),
                                                   std::min(j, g.ny - 1 - j)),
                                          std::min(k, g.nz - 1 - k));
                if (dist >= w) continue;
                const double s = ramp(dist);
                const std::size_t c = g.index(i, j, k);
                field.psi1[c] *= s;
                field.psi2[c] *= s;
                field.psi3[c] *= s;
                field.psi4[c] *= s;
            }
    }
}

inline bool pair_finite(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double acc = 0.0;
    const std::size_t n = a.size();
#pragma omp parallel for reduction(+ : acc) schedule(static)
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(n); ++idx)
        acc += std::norm(a[idx]) + std::norm(b[idx]);
    return std::isfinite(acc);
}

} // namespace detail

/// Advance the field by one full delta_t. Preconditions: the field's
/// stagger has components 1-2 half a step behind 3-4, and the potential
/// grid was sampled on the same grid. Throws BlowUpError (with
/// `step_index` = -1; run() rethrows with the real index) if the field
/// leaves the finite range.
inline void step(SpinorField& field, const PotentialGrid& pot, const StepperConfig& cfg) {
    const GridSpec& g = field.grid;
    if (pot.a0.size() != field.size())
        throw std::invalid_argument("step: potential grid does not match field grid");
    const double dt = g.delta_t;

    // upper pair across [t12, t12 + dt], lower components at t34 = t12 + dt/2
    detail::update_pair(field.psi1, field.psi2, field.psi3, field.psi4, pot, g,
                        +cfg.mass, cfg.charge, dt);
    field.stagger.time_of_12 += dt;

    // lower pair across [t34, t34 + dt], upper components now at t34 + dt/2
    detail::update_pair(field.psi3, field.psi4, field.psi1, field.psi2, pot, g,
                        -cfg.mass, cfg.charge, dt);
    field.stagger.time_of_34 += dt;

    if (const auto* layer = std::get_if<DampingLayerBoundary>(&cfg.boundary))
        detail::apply_damping(field, *layer);

    if (!detail::pair_finite(field.psi1, field.psi3)) throw BlowUpError(-1);
}

} // namespace dfdtd
