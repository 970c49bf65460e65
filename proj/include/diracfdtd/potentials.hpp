// potentials.hpp - analytic four-potential evaluators for every field
// configuration used by the simulator, plus grid sampling with
// singularity flagging.
//
// Internal representation: evaluators return charge-premultiplied
// energies, a0 = e*A0 [MeV] and a_vec = e*c*A [MeV]; the signed particle
// charge q = +-1 multiplies them in the kernel. All configurations here
// are static; the time argument exists for interface generality.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "diracfdtd/units.hpp"

namespace dfdtd {

struct ZeroPotentialSpec {};

enum class UniformGauge {
    Symmetric, // A = B0/2 (z, 0, -x)
    LandauX,   // A = B0 (z, 0, 0)
    LandauZ    // A = B0 (0, 0, -x)
};

struct UniformBSpec {
    UniformGauge gauge = UniformGauge::Symmetric;
    double b0 = 0.0; // e*c*B0, MeV/nm
};

enum class DipoleOrientation { Parallel, Perpendicular };

/// Two infinite lines of electric dipoles parallel to the y-axis at
/// (x=0, z=+-a). `coef` is e*line_density/(2*pi*eps0) in MeV*nm.
struct DipoleLineSpec {
    double coef = 0.0;        // MeV*nm
    double half_separation = 0.0; // a, nm
    DipoleOrientation orientation = DipoleOrientation::Parallel;
    int sign = +1;

    void validate() const {
        if (!std::isfinite(coef)) throw std::invalid_argument("DipoleLineSpec: line density not finite");
        if (half_separation <= 0.0)
            throw std::invalid_argument("DipoleLineSpec: half_separation must be > 0");
        if (sign != 1 && sign != -1)
            throw std::invalid_argument("DipoleLineSpec: sign must be +1 or -1");
    }
};

/// One infinite solenoid along y at (x,z) = (center_x, center_z).
/// `flux` is e*c*Phi in MeV*nm.
struct SolenoidSpec {
    double flux = 0.0;   // MeV*nm
    double radius = 0.0; // R0, nm
    double center_x = 0.0;
    double center_z = 0.0;

    void validate() const {
        if (!std::isfinite(flux)) throw std::invalid_argument("SolenoidSpec: flux not finite");
        if (radius < 0.0) throw std::invalid_argument("SolenoidSpec: radius must be >= 0");
    }
};

/// Two parallel solenoids along y at (x=0, z=+-a) carrying opposite
/// fluxes +-Phi. Axis fixed to y.
struct SolenoidPairSpec {
    double flux = 0.0;            // e*c*Phi, MeV*nm
    double half_separation = 0.0; // a, nm
    double radius = 0.0;          // R0, nm

    void validate() const {
        if (!std::isfinite(flux)) throw std::invalid_argument("SolenoidPairSpec: flux not finite");
        if (!(half_separation > radius) || radius < 0.0)
            throw std::invalid_argument("SolenoidPairSpec: requires half_separation > radius >= 0");
    }
};

using PotentialDescriptor = std::variant<ZeroPotentialSpec, UniformBSpec, DipoleLineSpec,
                                         SolenoidSpec, SolenoidPairSpec>;

namespace detail {

inline Vec3 solenoid_vector(const SolenoidSpec& s, const Vec3& p) {
    const double rx = p.x - s.center_x;
    const double rz = p.z - s.center_z;
    const double r2 = rx * rx + rz * rz;
    const double two_pi = 2.0 * M_PI;
    if (s.radius > 0.0 && r2 <= s.radius * s.radius) {
        const double f = s.flux / (two_pi * s.radius * s.radius);
        return {f * rz, 0.0, -f * rx};
    }
    if (r2 == 0.0) return {0.0, 0.0, 0.0}; // degenerate R0 = 0 flux line axis
    const double f = s.flux / (two_pi * r2);
    return {f * rz, 0.0, -f * rx};
}

inline double dipole_scalar(const DipoleLineSpec& d, const Vec3& p) {
    const double zm = p.z - d.half_separation;
    const double zp = p.z + d.half_separation;
    const double dm = p.x * p.x + zm * zm;
    const double dp = p.x * p.x + zp * zp;
    if (dm == 0.0 || dp == 0.0)
        throw std::domain_error("dipole_lines: evaluation exactly on a singular dipole line");
    double v;
    if (d.orientation == DipoleOrientation::Parallel)
        v = p.x / dm + p.x / dp;
    else
        v = zm / dm - zp / dp;
    return d.sign * d.coef * v;
}

} // namespace detail

/// Analytic evaluator for (a0, a_vec) at any position and time. Pure and
/// thread-safe; copies are cheap.
class FourPotential {
public:
    FourPotential() : desc_(ZeroPotentialSpec{}) {}
    explicit FourPotential(PotentialDescriptor d) : desc_(std::move(d)) {}

    const PotentialDescriptor& descriptor() const { return desc_; }

    double a0(const Vec3& p, double /*t*/ = 0.0) const {
        if (const auto* d = std::get_if<DipoleLineSpec>(&desc_)) return detail::dipole_scalar(*d, p);
        return 0.0;
    }

    Vec3 a_vec(const Vec3& p, double /*t*/ = 0.0) const {
        if (const auto* u = std::get_if<UniformBSpec>(&desc_)) {
            switch (u->gauge) {
            case UniformGauge::Symmetric: return {0.5 * u->b0 * p.z, 0.0, -0.5 * u->b0 * p.x};
            case UniformGauge::LandauX: return {u->b0 * p.z, 0.0, 0.0};
            case UniformGauge::LandauZ: return {0.0, 0.0, -u->b0 * p.x};
            }
        }
        if (const auto* s = std::get_if<SolenoidSpec>(&desc_)) return detail::solenoid_vector(*s, p);
        if (const auto* sp = std::get_if<SolenoidPairSpec>(&desc_)) {
            SolenoidSpec up{sp->flux, sp->radius, 0.0, +sp->half_separation};
            SolenoidSpec dn{-sp->flux, sp->radius, 0.0, -sp->half_separation};
            return detail::solenoid_vector(up, p) + detail::solenoid_vector(dn, p);
        }
        return {0.0, 0.0, 0.0};
    }

    /// True when `p` lies on a singular feature, within an absolute
    /// distance tolerance (0 = exact hit only).
    bool is_singular_at(const Vec3& p, double tol = 0.0) const {
        if (const auto* d = std::get_if<DipoleLineSpec>(&desc_)) {
            const double dm = std::hypot(p.x, p.z - d->half_separation);
            const double dp = std::hypot(p.x, p.z + d->half_separation);
            return dm <= tol || dp <= tol;
        }
        return false;
    }

    /// Signed distance in the x-z plane from `p` to the nearest keep-out
    /// feature: solenoid winding disks or dipole singular lines.
    /// +infinity when the configuration has no such feature.
    double keep_out_distance(const Vec3& p) const {
        const double inf = std::numeric_limits<double>::infinity();
        if (const auto* d = std::get_if<DipoleLineSpec>(&desc_)) {
            const double dm = std::hypot(p.x, p.z - d->half_separation);
            const double dp = std::hypot(p.x, p.z + d->half_separation);
            return std::min(dm, dp);
        }
        if (const auto* s = std::get_if<SolenoidSpec>(&desc_))
            return std::hypot(p.x - s->center_x, p.z - s->center_z) - s->radius;
        if (const auto* sp = std::get_if<SolenoidPairSpec>(&desc_)) {
            const double dm = std::hypot(p.x, p.z - sp->half_separation);
            const double dp = std::hypot(p.x, p.z + sp->half_separation);
            return std::min(dm, dp) - sp->radius;
        }
        return inf;
    }

private:
    PotentialDescriptor desc_;
};

inline FourPotential zero_potential() { return FourPotential(ZeroPotentialSpec{}); }

/// Uniform B along y, rotationally invariant gauge A = B0/2 (z,0,-x).
/// b0 in internal units (e*c*B0, MeV/nm).
inline FourPotential uniform_b_symmetric(double b0) {
    return FourPotential(UniformBSpec{UniformGauge::Symmetric, b0});
}

/// Uniform B along y, translationally invariant gauge A = B0 (z,0,0).
inline FourPotential uniform_b_landau_x(double b0) {
    return FourPotential(UniformBSpec{UniformGauge::LandauX, b0});
}

/// Uniform B along y, translationally invariant gauge A = B0 (0,0,-x).
inline FourPotential uniform_b_landau_z(double b0) {
    return FourPotential(UniformBSpec{UniformGauge::LandauZ, b0});
}

inline FourPotential dipole_lines(const DipoleLineSpec& spec) {
    spec.validate();
    return FourPotential(spec);
}

inline FourPotential solenoid_single(double flux, double radius, Vec3 center = {}) {
    SolenoidSpec s{flux, radius, center.x, center.z};
    s.validate();
    return FourPotential(s);
}

inline FourPotential solenoid_pair(const SolenoidPairSpec& spec) {
    spec.validate();
    return FourPotential(spec);
}

/// Cached per-cell samples of a four-potential. Singular cells are zeroed
/// and recorded.
struct PotentialGrid {
    std::vector<double> a0, a1, a2, a3;
    std::vector<std::size_t> singular_cells;

    bool empty() const { return a0.empty(); }
};

inline PotentialGrid sample_on_grid(const FourPotential& pot, const GridSpec& grid,
                                    double t = 0.0) {
    PotentialGrid pg;
    const std::size_t n = grid.cell_count();
    pg.a0.assign(n, 0.0);
    pg.a1.assign(n, 0.0);
    pg.a2.assign(n, 0.0);
    pg.a3.assign(n, 0.0);
    // cells that were meant to sit on a singular line but miss it by
    // floating-point rounding are flagged too
    const double tol = grid.delta * 1e-9;
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j)
            for (int k = 0; k < grid.nz; ++k) {
                const std::size_t idx = grid.index(i, j, k);
                const Vec3 p = grid.position(i, j, k);
                if (pot.is_singular_at(p, tol)) {
                    pg.singular_cells.push_back(idx);
                    continue;
                }
                pg.a0[idx] = pot.a0(p, t);
                const Vec3 a = pot.a_vec(p, t);
                pg.a1[idx] = a.x;
                pg.a2[idx] = a.y;
                pg.a3[idx] = a.z;
            }
    return pg;
}

} // namespace dfdtd
