// observables.hpp - physical observables extracted from the spinor field:
// norm, center of probability, velocity series, energy and momentum
// expectation values.
//
// All reductions run in fixed flat-index order (deterministic). Component
// pairs are used as stored; the half-step stagger skew contributes an
// O(dt) co-location error that is far below the tolerances used here.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "diracfdtd/potentials.hpp"
#include "diracfdtd/spinor_field.hpp"
#include "diracfdtd/stepper.hpp"

namespace dfdtd {

struct ObservableRecord {
    double t = 0.0;
    double norm = 0.0;
    Vec3 center{};
    Vec3 velocity{};   // c units; filled from the center series
    double energy = 0.0; // MeV
    Vec3 p_mech{};     // MeV/c
    Vec3 p_canon{};    // MeV/c
};

struct ObservableSeries {
    std::vector<ObservableRecord> records;
    bool failed = false;     // numerical blow-up marker
    long failed_step = -1;

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
};

/// |Psi|^2-weighted mean position.
inline Vec3 center_of_probability(const SpinorField& f) {
    const GridSpec& g = f.grid;
    double sx = 0.0, sy = 0.0, sz = 0.0, sw = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const double w = f.density(g.index(i, j, k));
                const Vec3 p = g.position(i, j, k);
                sx += w * p.x;
                sy += w * p.y;
                sz += w * p.z;
                sw += w;
            }
    if (sw <= 0.0) throw std::runtime_error("center_of_probability: zero norm");
    return {sx / sw, sy / sw, sz / sw};
}

/// Central differences of center positions over a uniform observation
/// stride; endpoints one-sided. Needs at least two records.
inline std::vector<Vec3> velocity_series(const std::vector<Vec3>& centers, double dt_obs) {
    const std::size_t n = centers.size();
    if (n < 2) throw std::invalid_argument("velocity_series: needs at least 2 records");
    if (dt_obs <= 0.0) throw std::invalid_argument("velocity_series: dt_obs must be > 0");
    std::vector<Vec3> v(n);
    v[0] = (centers[1] - centers[0]) / dt_obs;
    v[n - 1] = (centers[n - 1] - centers[n - 2]) / dt_obs;
    for (std::size_t m = 1; m + 1 < n; ++m)
        v[m] = (centers[m + 1] - centers[m - 1]) / (2.0 * dt_obs);
    return v;
}

namespace detail {

// Accumulators for one pass over the field: norm, Re<psi|H psi>, <-i hbar grad>,
// and the density-weighted potential average.
struct ExpectationSums {
    double weight = 0.0;
    double energy = 0.0;
    Vec3 p_canon{};
    Vec3 a_avg{};
};

inline ExpectationSums expectation_pass(const SpinorField& f, const PotentialGrid& pot,
                                        const StepperConfig& cfg) {
    const GridSpec& g = f.grid;
    const double hbar = constants::hbar;
    const double inv2d = 1.0 / (2.0 * g.delta);
    const double q = cfg.charge;
    const double m = cfg.mass;
    const std::ptrdiff_t si = static_cast<std::ptrdiff_t>(g.ny) * g.nz;
    const std::ptrdiff_t sj = g.nz;
    const cplx I(0.0, 1.0);

    ExpectationSums s;
    for (int i = 1; i < g.nx - 1; ++i)
        for (int j = 1; j < g.ny - 1; ++j)
            for (int k = 1; k < g.nz - 1; ++k) {
                const std::size_t c = g.index(i, j, k);
                const cplx p1 = f.psi1[c], p2 = f.psi2[c], p3 = f.psi3[c], p4 = f.psi4[c];
                const double w = std::norm(p1) + std::norm(p2) + std::norm(p3) + std::norm(p4);
                s.weight += w;

                const cplx d1x = (f.psi1[c + si] - f.psi1[c - si]) * inv2d;
                const cplx d1y = (f.psi1[c + sj] - f.psi1[c - sj]) * inv2d;
                const cplx d1z = (f.psi1[c + 1] - f.psi1[c - 1]) * inv2d;
                const cplx d2x = (f.psi2[c + si] - f.psi2[c - si]) * inv2d;
                const cplx d2y = (f.psi2[c + sj] - f.psi2[c - sj]) * inv2d;
                const cplx d2z = (f.psi2[c + 1] - f.psi2[c - 1]) * inv2d;
                const cplx d3x = (f.psi3[c + si] - f.psi3[c - si]) * inv2d;
                const cplx d3y = (f.psi3[c + sj] - f.psi3[c - sj]) * inv2d;
                const cplx d3z = (f.psi3[c + 1] - f.psi3[c - 1]) * inv2d;
                const cplx d4x = (f.psi4[c + si] - f.psi4[c - si]) * inv2d;
                const cplx d4y = (f.psi4[c + sj] - f.psi4[c - sj]) * inv2d;
                const cplx d4z = (f.psi4[c + 1] - f.psi4[c - 1]) * inv2d;

                // canonical momentum density: Re[psi^dag (-i hbar d) psi]
                s.p_canon.x += (conj(p1) * (-I * hbar) * d1x + conj(p2) * (-I * hbar) * d2x +
                                conj(p3) * (-I * hbar) * d3x + conj(p4) * (-I * hbar) * d4x)
                                   .real();
                s.p_canon.y += (conj(p1) * (-I * hbar) * d1y + conj(p2) * (-I * hbar) * d2y +
                                conj(p3) * (-I * hbar) * d3y + conj(p4) * (-I * hbar) * d4y)
                                   .real();
                s.p_canon.z += (conj(p1) * (-I * hbar) * d1z + conj(p2) * (-I * hbar) * d2z +
                                conj(p3) * (-I * hbar) * d3z + conj(p4) * (-I * hbar) * d4z)
                                   .real();

                const double a0 = pot.a0[c], a1 = pot.a1[c], a2 = pot.a2[c], a3 = pot.a3[c];
                s.a_avg.x += w * a1;
                s.a_avg.y += w * a2;
                s.a_avg.z += w * a3;

                // H psi rows: free Dirac + q a0 - q alpha.a
                const cplx h1 = -I * hbar * (d3z + d4x - I * d4y) + (m + q * a0) * p1 -
                                q * (a3 * p3 + cplx(a1, -a2) * p4);
                const cplx h2 = -I * hbar * (d3x + I * d3y - d4z) + (m + q * a0) * p2 -
                                q * (cplx(a1, a2) * p3 - a3 * p4);
                const cplx h3 = -I * hbar * (d1z + d2x - I * d2y) + (-m + q * a0) * p3 -
                                q * (a3 * p1 + cplx(a1, -a2) * p2);
                const cplx h4 = -I * hbar * (d1x + I * d1y - d2z) + (-m + q * a0) * p4 -
                                q * (cplx(a1, a2) * p1 - a3 * p2);

                s.energy += (conj(p1) * h1 + conj(p2) * h2 + conj(p3) * h3 + conj(p4) * h4).real();
            }
    return s;
}

} // namespace detail

/// Re<Psi|H_free + H_int|Psi> / norm, using the same central-difference
/// derivative stencil as the stepper.
inline double expectation_energy(const SpinorField& f, const PotentialGrid& pot,
                                 const StepperConfig& cfg) {
    const auto s = detail::expectation_pass(f, pot, cfg);
    if (s.weight <= 0.0) throw std::runtime_error("expectation_energy: zero norm");
    return s.energy / s.weight;
}

/// <-i hbar grad> / norm, MeV/c. Does not involve the potential.
inline Vec3 expectation_canonical_momentum(const SpinorField& f) {
    const GridSpec& g = f.grid;
    const double hbar = constants::hbar;
    const double inv2d = 1.0 / (2.0 * g.delta);
    const std::ptrdiff_t si = static_cast<std::ptrdiff_t>(g.ny) * g.nz;
    const std::ptrdiff_t sj = g.nz;
    double weight = 0.0;
    Vec3 p{};
    auto accumulate = [&](const std::vector<cplx>& a) {
        for (int i = 1; i < g.nx - 1; ++i)
            for (int j = 1; j < g.ny - 1; ++j)
                for (int k = 1; k < g.nz - 1; ++k) {
                    const std::size_t c = g.index(i, j, k);
                    const cplx v = a[c];
                    // Re[conj(psi) * (-i hbar) d psi] = hbar * Im[conj(psi) d psi]
                    p.x += hbar * (std::conj(v) * ((a[c + si] - a[c - si]) * inv2d)).imag();
                    p.y += hbar * (std::conj(v) * ((a[c + sj] - a[c - sj]) * inv2d)).imag();
                    p.z += hbar * (std::conj(v) * ((a[c + 1] - a[c - 1]) * inv2d)).imag();
                    weight += std::norm(v);
                }
    };
    accumulate(f.psi1);
    accumulate(f.psi2);
    accumulate(f.psi3);
    accumulate(f.psi4);
    if (weight <= 0.0) throw std::runtime_error("expectation_canonical_momentum: zero norm");
    return p / weight;
}

/// p_mech = p_canon - q <a_vec>, with <a_vec> the |Psi|^2-weighted average
/// of the sampled potential.
inline Vec3 expectation_mechanical_momentum(const SpinorField& f, const PotentialGrid& pot,
                                            const StepperConfig& cfg) {
    const auto s = detail::expectation_pass(f, pot, cfg);
    if (s.weight <= 0.0) throw std::runtime_error("expectation_mechanical_momentum: zero norm");
    return (s.p_canon - cfg.charge * s.a_avg) / s.weight;
}

/// One full observable record (velocity left zero; filled by the caller
/// from the center series once neighbors exist).
inline ObservableRecord measure_record(const SpinorField& f, const PotentialGrid& pot,
                                       const StepperConfig& cfg) {
    ObservableRecord r;
    r.t = f.stagger.time_of_34;
    r.norm = total_norm(f);
    r.center = center_of_probability(f);
    const auto s = detail::expectation_pass(f, pot, cfg);
    if (s.weight > 0.0) {
        r.energy = s.energy / s.weight;
        r.p_canon = s.p_canon / s.weight;
        r.p_mech = (s.p_canon - cfg.charge * s.a_avg) / s.weight;
    }
    return r;
}

/// Fill the velocity column of a recorded series from its centers.
inline void fill_velocities(ObservableSeries& series) {
    if (series.records.size() < 2) return;
    std::vector<Vec3> centers;
    centers.reserve(series.records.size());
    for (const auto& r : series.records) centers.push_back(r.center);
    const double dt_obs = series.records[1].t - series.records[0].t;
    const auto v = velocity_series(centers, dt_obs);
    for (std::size_t i = 0; i < v.size(); ++i) series.records[i].velocity = v[i];
}

} // namespace dfdtd
