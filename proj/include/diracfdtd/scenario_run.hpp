// scenario_run.hpp - executes a Scenario end to end: packet init, step
// loop with snapshot observers, classical-oracle overlay for the
// configurations that have one, series/snapshot/manifest output.
//
// Outputs under <out_dir>/<scenario name>/:
//   series.csv           observable time series
//   snapshots/snap_<step>_<axis><index>.bin   plane snapshots (optional)
//   classical_overlay.csv  classical v(x) baseline (dipole/solenoid runs)
//   manifest.txt         parameters and final drift metrics
// Reruns produce byte-identical series, snapshot and overlay files; the
// manifest contains the wall time and is the one non-reproducible file.

#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "diracfdtd/classical.hpp"
#include "diracfdtd/io.hpp"
#include "diracfdtd/runner.hpp"
#include "diracfdtd/scenario.hpp"

namespace dfdtd {

inline constexpr const char* version_string = "diracfdtd 1.0.0";

enum class RunStatus { Ok, BlowUp };

struct RunResult {
    RunStatus status = RunStatus::Ok;
    long failed_step = -1;
    ObservableSeries series;
    std::filesystem::path output_dir;
    Manifest manifest;
};

namespace run_detail {

inline std::string axis_letter(Axis a) {
    switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    default: return "z";
    }
}

inline std::string potential_type_name(const PotentialDescriptor& d) {
    if (std::holds_alternative<ZeroPotentialSpec>(d)) return "none";
    if (const auto* u = std::get_if<UniformBSpec>(&d)) {
        switch (u->gauge) {
        case UniformGauge::Symmetric: return "uniform_b_symmetric";
        case UniformGauge::LandauX: return "uniform_b_landau_x";
        case UniformGauge::LandauZ: return "uniform_b_landau_z";
        }
    }
    if (std::holds_alternative<DipoleLineSpec>(d)) return "dipole_lines";
    if (std::holds_alternative<SolenoidSpec>(d)) return "solenoid_single";
    return "solenoid_pair";
}

/// Classical baseline over the same x-range as the quantum run, written
/// as a t,x,v,p series. Returns false when the configuration has no
/// classical oracle.
inline bool write_classical_overlay(const std::filesystem::path& path, const Scenario& sc,
                                    double x_end) {
    const auto& desc = sc.potential.descriptor();
    const double q = sc.stepper.charge;
    const double p0 = sc.packet.momentum.x;
    if (p0 == 0.0) return false;
    const auto initial = ClassicalState::from_momentum(sc.packet.center.x, p0);
    ClassicalTrajectory traj;
    if (const auto* d = std::get_if<DipoleLineSpec>(&desc)) {
        auto integrate = [&](double dt) {
            return d->orientation == DipoleOrientation::Parallel
                       ? integrate_dipole_parallel(*d, initial, x_end, dt, q)
                       : integrate_dipole_perpendicular(*d, initial, x_end, dt, q);
        };
        traj = refine_until(integrate, 2e-3 / std::abs(initial.v));
    } else if (const auto* sp = std::get_if<SolenoidPairSpec>(&desc)) {
        auto integrate = [&](double dt) {
            return integrate_canonical_conservation(*sp, initial, x_end, dt, q);
        };
        traj = refine_until(integrate, 2e-3 / std::abs(initial.v));
    } else {
        return false;
    }

    std::string out = "t,x,v,p\n";
    // keep the file small: at most ~2000 rows
    const std::size_t stride = std::max<std::size_t>(1, traj.states.size() / 2000);
    for (std::size_t i = 0; i < traj.states.size(); i += stride) {
        const auto& s = traj.states[i];
        out += detail::fmt17(s.t) + ',' + detail::fmt17(s.x) + ',' + detail::fmt17(s.v) + ',' +
               detail::fmt17(s.p) + '\n';
    }
    detail::write_file(path.string(), out);
    return true;
}

} // namespace run_detail

inline RunResult run_scenario(const Scenario& sc, const std::filesystem::path& out_root) {
    namespace fs = std::filesystem;
    sc.validate();

    RunResult result;
    result.output_dir = out_root / sc.name;
    std::error_code ec;
    fs::create_directories(result.output_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + result.output_dir.string());

    const auto wall_start = std::chrono::steady_clock::now();

    auto pot = sample_on_grid(sc.potential, sc.grid);
    auto field = init_packet(sc.grid, sc.packet);

    const fs::path snap_dir = result.output_dir / "snapshots";
    std::vector<Observer> observers;
    if (sc.run.snapshot_stride > 0 && !sc.run.snapshot_planes.empty()) {
        fs::create_directories(snap_dir, ec);
        if (ec) throw IoError("cannot create snapshot directory: " + snap_dir.string());
        const auto hash = fnv1a64(sc.name);
        observers.push_back(Observer{
            sc.run.snapshot_stride, [&sc, snap_dir, hash](long step, const SpinorField& f) {
                for (const auto& plane : sc.run.snapshot_planes) {
                    char name[64];
                    std::snprintf(name, sizeof name, "snap_%06ld_%s%d.bin", step,
                                  run_detail::axis_letter(plane.axis).c_str(), plane.index);
                    SnapshotMeta meta;
                    meta.time = f.stagger.time_of_34;
                    meta.axis = plane.axis;
                    meta.plane_index = static_cast<std::uint32_t>(plane.index);
                    meta.scenario_hash = hash;
                    write_snapshot((snap_dir / name).string(),
                                   probability_density_slice(f, plane), meta);
                }
            }});
    }

    result.series = run(field, pot, sc.stepper, sc.run.n_steps, sc.run.record_stride, observers);
    if (result.series.failed) {
        result.status = RunStatus::BlowUp;
        result.failed_step = result.series.failed_step;
    }

    write_series((result.output_dir / "series.csv").string(), result.series);

    bool overlay_written = false;
    if (result.status == RunStatus::Ok && !result.series.records.empty()) {
        const double x_end = result.series.records.back().center.x;
        try {
            overlay_written = run_detail::write_classical_overlay(
                result.output_dir / "classical_overlay.csv", sc, x_end);
        } catch (const std::exception&) {
            overlay_written = false; // oracle preconditions not met; not fatal
        }
    }

    const auto wall_end = std::chrono::steady_clock::now();
    const double wall_s = std::chrono::duration<double>(wall_end - wall_start).count();

    // manifest
    Manifest& m = result.manifest;
    m.add("scenario", sc.name);
    m.add("version", std::string(version_string));
    m.add("status", result.status == RunStatus::Ok ? "ok" : "blowup");
    m.add("failed_step", result.failed_step);
    m.add("nx", static_cast<long>(sc.grid.nx));
    m.add("ny", static_cast<long>(sc.grid.ny));
    m.add("nz", static_cast<long>(sc.grid.nz));
    m.add("delta_nm", sc.grid.delta);
    m.add("delta_t_nm_per_c", sc.grid.delta_t);
    m.add("n_steps", sc.run.n_steps);
    m.add("record_stride", sc.run.record_stride);
    m.add("particle", sc.stepper.charge < 0 ? "electron" : "positron");
    m.add("potential_type", run_detail::potential_type_name(sc.potential.descriptor()));
    m.add("packet_x0_nm", sc.packet.width);
    m.add("packet_p_mev_c", sc.packet.momentum.norm());
    const double pmag = sc.packet.momentum.norm();
    m.add("momentum_spread_ratio", pmag > 0 ? momentum_spread(sc.packet) / pmag : 0.0);
    m.add("singular_cells_zeroed", static_cast<long>(pot.singular_cells.size()));
    m.add("records", static_cast<long>(result.series.records.size()));
    m.add("classical_overlay", overlay_written ? "yes" : "no");
    if (!result.series.records.empty()) {
        const auto& first = result.series.records.front();
        const auto& last = result.series.records.back();
        m.add("norm_initial", first.norm);
        m.add("norm_final", last.norm);
        double norm_drift = 0.0, e_drift = 0.0, pc_drift = 0.0;
        double pm_min = first.p_mech.x, pm_max = first.p_mech.x;
        for (const auto& r : result.series.records) {
            norm_drift = std::max(norm_drift, std::abs(r.norm - first.norm));
            e_drift = std::max(e_drift, std::abs(r.energy - first.energy));
            pc_drift = std::max(pc_drift, std::abs(r.p_canon.x - first.p_canon.x));
            pm_min = std::min(pm_min, r.p_mech.x);
            pm_max = std::max(pm_max, r.p_mech.x);
        }
        m.add("norm_drift", norm_drift);
        m.add("energy_initial_mev", first.energy);
        m.add("energy_drift_rel", first.energy != 0.0 ? e_drift / std::abs(first.energy) : 0.0);
        m.add("pcanon_x_drift_mev_c", pc_drift);
        m.add("pcanon_x_drift_rel_p", pmag > 0 ? pc_drift / pmag : 0.0);
        m.add("pmech_x_min_mev_c", pm_min);
        m.add("pmech_x_max_mev_c", pm_max);
    }
    const auto bamp = boundary_amplitude(field);
    m.add("boundary_shell_peak_ratio",
          bamp.volume_max > 0 ? bamp.shell_max / bamp.volume_max : 0.0);
    m.add("wall_time_s", wall_s);
    m.write((result.output_dir / "manifest.txt").string());

    return result;
}

} // namespace dfdtd
