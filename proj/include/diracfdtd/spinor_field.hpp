// spinor_field.hpp - storage and elementary reductions for the 4-component
// complex wave function on the lattice, with leapfrog time-stagger
// bookkeeping.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "diracfdtd/units.hpp"

namespace dfdtd {

using cplx = std::complex<double>;

/// Tracks the leapfrog half-step offset: components 1-2 live at
/// half-integer time levels, components 3-4 at integer levels.
struct StaggerState {
    double time_of_12 = 0.0;
    double time_of_34 = 0.0;
};

/// 4-component complex field on a uniform lattice. Array layout is flat
/// with k (z) fastest-varying, then j, then i, so snapshot files are
/// byte-reproducible across implementations.
struct SpinorField {
    GridSpec grid;
    std::vector<cplx> psi1, psi2, psi3, psi4;
    StaggerState stagger;

    SpinorField() = default;

    explicit SpinorField(const GridSpec& g)
        : grid(g),
          psi1(g.cell_count()), psi2(g.cell_count()),
          psi3(g.cell_count()), psi4(g.cell_count()) {}

    std::size_t size() const { return psi1.size(); }

    /// Per-cell probability density |Psi|^2 (sum over the four components).
    double density(std::size_t idx) const {
        return std::norm(psi1[idx]) + std::norm(psi2[idx]) +
               std::norm(psi3[idx]) + std::norm(psi4[idx]);
    }

    void scale(double s) {
        for (auto& v : psi1) v *= s;
        for (auto& v : psi2) v *= s;
        for (auto& v : psi3) v *= s;
        for (auto& v : psi4) v *= s;
    }

    bool all_finite() const {
        auto ok = [](const std::vector<cplx>& a) {
            for (const auto& v : a)
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
            return true;
        };
        return ok(psi1) && ok(psi2) && ok(psi3) && ok(psi4);
    }
};

/// Discrete norm: sum over cells of |Psi|^2 * delta^3. The half-step skew
/// between component pairs is ignored (documented O(dt) co-location).
/// Reduction runs in fixed flat-index order, so the result is
/// bit-reproducible regardless of thread count.
inline double total_norm(const SpinorField& f) {
    double acc = 0.0;
    const std::size_t n = f.size();
    for (std::size_t idx = 0; idx < n; ++idx) acc += f.density(idx);
    const double d = f.grid.delta;
    const double result = acc * d * d * d;
    if (!std::isfinite(result))
        throw std::runtime_error("total_norm: field contains non-finite values (numerical blow-up)");
    return result;
}

enum class Axis { X = 0, Y = 1, Z = 2 };

struct PlaneSelector {
    Axis axis = Axis::Y;
    int index = 0;
};

/// 2D array of per-cell |Psi|^2 on the requested lattice plane.
/// Row/column convention: axis X -> (rows=j, cols=k); axis Y -> (rows=i,
/// cols=k); axis Z -> (rows=i, cols=j). Column index varies fastest.
struct DensitySlice {
    int rows = 0, cols = 0;
    std::vector<double> values; // row-major

    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

inline DensitySlice probability_density_slice(const SpinorField& f, PlaneSelector plane) {
    const GridSpec& g = f.grid;
    const int bound = plane.axis == Axis::X ? g.nx : plane.axis == Axis::Y ? g.ny : g.nz;
    if (plane.index < 0 || plane.index >= bound)
        throw std::out_of_range("probability_density_slice: plane index out of bounds");

    DensitySlice s;
    switch (plane.axis) {
    case Axis::X:
        s.rows = g.ny; s.cols = g.nz;
        s.values.resize(static_cast<std::size_t>(s.rows) * s.cols);
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k)
                s.values[static_cast<std::size_t>(j) * s.cols + k] =
                    f.density(g.index(plane.index, j, k));
        break;
    case Axis::Y:
        s.rows = g.nx; s.cols = g.nz;
        s.values.resize(static_cast<std::size_t>(s.rows) * s.cols);
        for (int i = 0; i < g.nx; ++i)
            for (int k = 0; k < g.nz; ++k)
                s.values[static_cast<std::size_t>(i) * s.cols + k] =
                    f.density(g.index(i, plane.index, k));
        break;
    case Axis::Z:
        s.rows = g.nx; s.cols = g.ny;
        s.values.resize(static_cast<std::size_t>(s.rows) * s.cols);
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                s.values[static_cast<std::size_t>(i) * s.cols + j] =
                    f.density(g.index(i, j, plane.index));
        break;
    }
    return s;
}

/// Largest per-cell |Psi| on the outermost shell of cells, and in the
/// whole volume. Used by run manifests to confirm the packet never
/// reached the boundary.
struct BoundaryAmplitude {
    double shell_max = 0.0;
    double volume_max = 0.0;
};

inline BoundaryAmplitude boundary_amplitude(const SpinorField& f) {
    const GridSpec& g = f.grid;
    BoundaryAmplitude r;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            for (int k = 0; k < g.nz; ++k) {
                const double a = std::sqrt(f.density(g.index(i, j, k)));
                if (a > r.volume_max) r.volume_max = a;
                const bool shell = i == 0 || j == 0 || k == 0 ||
                                   i == g.nx - 1 || j == g.ny - 1 || k == g.nz - 1;
                if (shell && a > r.shell_max) r.shell_max = a;
            }
    return r;
}

} // namespace dfdtd
