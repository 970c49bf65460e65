// Acceptance suite: runs every acceptance criterion at desk scale and
// prints one PASS/FAIL line per criterion with the measured numbers.
// Exit code is the number of failed criteria.
//
// Usage: acceptance_suite [path-to-cli-binary]
// When the CLI path is given, the format/CLI criterion also exercises the
// real executable (preset validation, exit codes).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "diracfdtd/classical.hpp"
#include "diracfdtd/io.hpp"
#include "diracfdtd/packet.hpp"
#include "diracfdtd/runner.hpp"
#include "diracfdtd/scenario.hpp"
#include "diracfdtd/scenario_run.hpp"

using namespace dfdtd;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%-4s %s  %s\n", id.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v, const char* f = "%.4g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Centered running mean (window w, clipped at the edges). Used to average
// the zitterbewegung oscillation (period ~ pi hbar / E) out of sampled
// series so the underlying drift is visible.
std::vector<double> smooth(const std::vector<double>& v, std::size_t w) {
    std::vector<double> out(v.size());
    const std::size_t half = w / 2;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t lo = i > half ? i - half : 0;
        const std::size_t hi = std::min(v.size() - 1, i + half);
        double acc = 0.0;
        for (std::size_t m = lo; m <= hi; ++m) acc += v[m];
        out[i] = acc / (hi - lo + 1);
    }
    return out;
}

struct FreeRun {
    ObservableSeries series;
    double end_drift = 0.0;
    double max_drift = 0.0;
};

FreeRun free_run(double cfl_safety, long steps) {
    const double delta = 0.11;
    const double dt = cfl_limit(delta, cfl_safety);
    auto grid = make_centered_grid(128, 104, 104, delta, dt, {}, cfl_safety);
    PacketSpec spec;
    spec.width = 0.7;
    spec.momentum = {0.53, 0, 0};
    spec.center = {-1.3, 0, 0};
    auto field = init_packet(grid, spec);
    auto pot = sample_on_grid(zero_potential(), grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);
    FreeRun out;
    out.series = run(field, pot, cfg, steps, 10);
    const double n0 = out.series.records.front().norm;
    for (const auto& r : out.series.records)
        out.max_drift = std::max(out.max_drift, std::abs(r.norm - n0));
    out.end_drift = std::abs(out.series.records.back().norm - n0);
    return out;
}

// ---------------------------------------------------------------- C1 ---
void criterion1() {
    const double v_ref = velocity_of_momentum(0.53); // 0.719893
    auto a = free_run(0.5, 2000);
    if (a.series.failed) {
        report("C1", false, "free run blew up at step " + std::to_string(a.series.failed_step));
        return;
    }

    // drift velocity over the records before the packet first nears the
    // +x wall (it reflects later in the run; only the clean leg counts)
    const auto& recs = a.series.records;
    std::size_t last = 2;
    while (last + 1 < recs.size() && recs[last + 1].center.x <= 1.3) ++last;
    const std::size_t first = std::max<std::size_t>(2, last / 4);
    const double v_fit =
        (recs[last].center.x - recs[first].center.x) / (recs[last].t - recs[first].t);
    const bool v_ok = std::abs(v_fit - v_ref) <= 0.01 * v_ref;

    const bool drift_ok = a.end_drift < 1e-3;

    auto b = free_run(0.25, 2000);
    const double ratio = b.end_drift > 0 ? a.end_drift / b.end_drift : 0.0;
    const bool order_ok = ratio >= 2.8 && ratio <= 5.7;

    const double v_pe = recs[last].p_mech.x / recs[last].energy;
    report("C1", v_ok && drift_ok && order_ok,
           "free packet: v_fit=" + fmt(v_fit) + " (target " + fmt(v_ref) + " +-1%, " +
               (v_ok ? "ok" : "out") + "); p_mech*c^2/E=" + fmt(v_pe) +
               "; norm end-drift=" + fmt(a.end_drift) + " (<1e-3 " +
               (drift_ok ? "ok" : "out") + ", max osc " + fmt(a.max_drift) +
               "); dt-halving drift ratio=" + fmt(ratio) + " (~4x " +
               (order_ok ? "ok" : "out") + ")");
}

// ------------------------------------------------------------- C2/C3 ---
ObservableSeries orbit_run(const FourPotential& pot_src, long steps, long stride,
                           Spin spin = Spin::Up) {
    const double delta = 0.02;
    const double dtt = 0.001;
    auto grid = make_centered_grid(80, 80, 80, delta, dtt, {}, 1.0);
    PacketSpec spec;
    spec.width = 0.08;
    spec.momentum = {0.53, 0, 0};
    spec.spin = spin;
    auto field = init_packet(grid, spec);
    auto pot = sample_on_grid(pot_src, grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);
    return run(field, pot, cfg, steps, stride);
}

void criterion2() {
    const double b0 = convert::tesla_to_internal(1e8);
    const double r_class = classical_orbit_radius(0.53, b0); // 0.0176789
    const double t_orbit = 2.0 * M_PI * energy_of_momentum(0.53) / b0;
    const long steps = static_cast<long>(t_orbit / 0.001); // 154

    auto fwd = orbit_run(uniform_b_symmetric(b0), steps, 2);
    // mean locus radius about the classical orbit center (0, 0, -r)
    double mean_r = 0.0;
    double acc = 0.0;
    for (const auto& r : fwd.records)
        acc += std::hypot(r.center.x, r.center.z + r_class);
    mean_r = acc / fwd.records.size();
    const bool radius_ok = std::abs(mean_r - r_class) <= 0.15 * r_class;

    auto rev = orbit_run(uniform_b_symmetric(-b0), steps / 4, 2);
    double mirror_err = 0.0;
    const std::size_t n = std::min(fwd.records.size(), rev.records.size());
    for (std::size_t i = 0; i < n; ++i)
        mirror_err = std::max(mirror_err,
                              std::abs(fwd.records[i].center.z + rev.records[i].center.z));
    const bool reversal_ok = mirror_err < 1e-9;

    report("C2", radius_ok && reversal_ok,
           "uniform B orbit: mean radius=" + fmt(mean_r) + " nm vs r_class=" + fmt(r_class) +
               " (" + fmt(100.0 * (mean_r - r_class) / r_class, "%.1f") + "%, |..|<=15% " +
               (radius_ok ? "ok" : "out") + "); B-flip mirror err=" + fmt(mirror_err) +
               " (" + (reversal_ok ? "ok" : "out") + ")");
}

void criterion3() {
    const double b0 = convert::tesla_to_internal(1e8);
    const double r_class = classical_orbit_radius(0.53, b0);
    const double t_half = M_PI * energy_of_momentum(0.53) / b0;
    const long steps = static_cast<long>(t_half / 0.001); // half orbit

    auto sym = orbit_run(uniform_b_symmetric(b0), steps, 5);
    auto lx = orbit_run(uniform_b_landau_x(b0), steps, 5);
    auto lz = orbit_run(uniform_b_landau_z(b0), steps, 5);

    auto pair_gap = [](const ObservableSeries& a, const ObservableSeries& b) {
        double worst = 0.0;
        const std::size_t n = std::min(a.records.size(), b.records.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto d = a.records[i].center - b.records[i].center;
            worst = std::max(worst, std::hypot(d.x, d.z));
        }
        return worst;
    };
    const double g1 = pair_gap(sym, lx), g2 = pair_gap(sym, lz), g3 = pair_gap(lx, lz);
    const double worst = std::max(g1, std::max(g2, g3));
    const bool ok = worst <= 0.05 * r_class;
    report("C3", ok,
           "gauge consistency over half orbit: max pairwise center gap=" + fmt(worst) +
               " nm vs bound " + fmt(0.05 * r_class) + " nm (sym/lx=" + fmt(g1) +
               ", sym/lz=" + fmt(g2) + ", lx/lz=" + fmt(g3) + ")");
}

// ---------------------------------------------------------------- C4 ---
void criterion4() {
    bool all_ok = true;
    std::string detail;
    for (auto orient : {DipoleOrientation::Parallel, DipoleOrientation::Perpendicular}) {
        auto sc = load_preset(orient == DipoleOrientation::Parallel
                                  ? "fig6_dipoles_parallel"
                                  : "fig6_dipoles_perpendicular");
        auto pot = sample_on_grid(sc.potential, sc.grid);
        auto field = init_packet(sc.grid, sc.packet);
        auto series = run(field, pot, sc.stepper, sc.run.n_steps, sc.run.record_stride);

        const auto* d = std::get_if<DipoleLineSpec>(&sc.potential.descriptor());
        const auto initial = ClassicalState::from_momentum(sc.packet.center.x,
                                                           sc.packet.momentum.x);
        auto integrate = [&](double dt) {
            return orient == DipoleOrientation::Parallel
                       ? integrate_dipole_parallel(*d, initial, 0.4, dt, sc.stepper.charge)
                       : integrate_dipole_perpendicular(*d, initial, 0.4, dt, sc.stepper.charge);
        };
        auto cl = refine_until(integrate, 1e-2);

        auto v_classical_at = [&cl](double x) {
            for (std::size_t i = 1; i < cl.states.size(); ++i) {
                const auto& a = cl.states[i - 1];
                const auto& b = cl.states[i];
                if ((a.x - x) * (b.x - x) <= 0.0 && a.x != b.x)
                    return a.v + (x - a.x) / (b.x - a.x) * (b.v - a.v);
            }
            return cl.states.back().v;
        };

        // RMS gap between the Dirac v(x) samples and the classical curve,
        // over the portion of the run where the packet still exists
        // (the absorber eats the spreading halo as the run progresses)
        const double n0 = series.records.front().norm;
        double sum2 = 0.0;
        long count = 0;
        for (std::size_t i = 1; i + 1 < series.records.size(); ++i) {
            const auto& r = series.records[i];
            if (r.center.x < -0.4 || r.center.x > 0.4) continue;
            if (r.norm < 0.5 * n0) break;
            const double gap = r.velocity.x - v_classical_at(r.center.x);
            sum2 += gap * gap;
            ++count;
        }
        const double rms = count > 0 ? std::sqrt(sum2 / count) : 1e9;
        const double bound = 0.03 * initial.v;
        const bool ok = rms < bound;
        all_ok = all_ok && ok;
        detail += std::string(orient == DipoleOrientation::Parallel ? "parallel" : "perp") +
                  ": rms gap=" + fmt(rms) + " vs bound " + fmt(bound) + " over " +
                  std::to_string(count) + " samples (" + (ok ? "ok" : "out") + "); ";
    }
    report("C4", all_ok, "dipole lines vs classical oracle: " + detail);
}

// ------------------------------------------------------------- C5/C6 ---
struct SolenoidRun {
    ObservableSeries series;
};

SolenoidRun solenoid_run(double flux_wb, double half_sep, double p1, double charge,
                         Spin spin, bool with_potential) {
    const double delta = 0.1;
    const double x0 = 0.7;
    auto grid = make_centered_grid(96, 90, 90, delta, cfl_limit(delta));
    PacketSpec spec;
    spec.width = x0;
    spec.momentum = {p1, 0, 0};
    spec.center = {-8.0 * half_sep, 0, 0};
    spec.spin = spin;
    auto field = init_packet(grid, spec);

    FourPotential pot_src = zero_potential();
    if (with_potential) {
        SolenoidPairSpec sp;
        sp.flux = convert::weber_to_internal(flux_wb);
        sp.half_separation = half_sep;
        sp.radius = half_sep / 5.0;
        pot_src = solenoid_pair(sp);
    }
    auto pot = sample_on_grid(pot_src, grid);
    StepperConfig cfg;
    cfg.charge = charge;

    // run until the center crosses +8a (plus a small tail)
    SolenoidRun out;
    const double dt = grid.delta_t;
    const long max_steps = static_cast<long>(2.6 * 8.0 * half_sep / (0.55 * dt)) + 40;
    out.series = run(field, pot, cfg, max_steps, 2);
    return out;
}

void criteria5and6() {
    const double p1 = 0.53;
    const double a = 0.05;       // half separation, 2a = 0.1 nm
    const double flux = -5.2e-14; // orientation chosen so the electron accelerates

    auto electron = solenoid_run(flux, a, p1, -1.0, Spin::Up, true);
    auto positron = solenoid_run(flux, a, p1, +1.0, Spin::Up, true);
    auto spin_down = solenoid_run(flux, a, p1, -1.0, Spin::Down, true);
    auto baseline = solenoid_run(flux, a, p1, -1.0, Spin::Up, false);

    const auto& er = electron.series.records;
    const auto& br = baseline.series.records;
    const std::size_t n = std::min(er.size(), br.size());

    // (a) single interior maximum near x = 0, return within 1%.
    // Two measurement steps, both reported: the zitterbewegung of the
    // packet wobbles the raw velocity samples at a few 1e-3 c (record
    // spacing is well inside the wobble period), so each series is
    // averaged over one zitter period, and the solenoid-induced change is
    // isolated against an identical free-packet baseline run.
    const double t_rec = er[1].t - er[0].t;
    const double t_zitter = M_PI * constants::hbar / er.front().energy;
    const std::size_t w = std::max<std::size_t>(3, static_cast<std::size_t>(t_zitter / t_rec));

    std::vector<double> xs, ve_raw, dv_raw;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        xs.push_back(er[i].center.x);
        ve_raw.push_back(er[i].velocity.x);
        dv_raw.push_back(er[i].velocity.x - br[i].velocity.x);
    }
    const auto ve = smooth(ve_raw, w);
    const auto dv = smooth(dv_raw, w);

    // argmax over fully-averaged samples only (edge windows are clipped
    // and noisier)
    std::size_t peak = std::min(w, dv.size() - 1);
    for (std::size_t i = w; i + w < dv.size(); ++i)
        if (dv[i] > dv[peak]) peak = i;
    const bool peak_interior = peak > 0 && peak + 1 < dv.size();
    const bool peak_near_zero = peak_interior && std::abs(xs[peak]) <= 2.0 * a;
    // period-averaged drift speed at the first and last fully-averaged
    // samples with |x| >= 8a
    const double v0 = ve[std::min(w, ve.size() - 1)];
    double v_end = v0;
    for (std::size_t i = w; i + w < ve.size(); ++i)
        if (xs[i] >= 8.0 * a) v_end = ve[i];
    const bool returns = std::abs(v_end - v0) <= 0.01 * std::abs(v0);
    const bool c5a = peak_near_zero && returns;

    // (b) energy / canonical momentum conservation while p_mech varies.
    // Drifts are asserted on the raw electron series; the mechanical-
    // momentum variation attributable to the solenoids is read from the
    // period-averaged, baseline-subtracted series.
    const double e0 = er.front().energy;
    double e_drift = 0.0, pc_drift = 0.0;
    std::vector<double> dpm_raw, dpc_raw;
    for (std::size_t i = 0; i < n; ++i) {
        e_drift = std::max(e_drift, std::abs(er[i].energy - e0));
        pc_drift = std::max(pc_drift, std::abs(er[i].p_canon.x - er.front().p_canon.x));
        dpm_raw.push_back(er[i].p_mech.x - br[i].p_mech.x);
        dpc_raw.push_back(er[i].p_canon.x - br[i].p_canon.x);
    }
    const auto dpm = smooth(dpm_raw, w);
    const auto dpc = smooth(dpc_raw, w);
    double pm_lo = 1e9, pm_hi = -1e9, pc_diff_drift = 0.0;
    for (std::size_t i = w; i + w < n; ++i) {
        pm_lo = std::min(pm_lo, dpm[i]);
        pm_hi = std::max(pm_hi, dpm[i]);
        pc_diff_drift = std::max(pc_diff_drift, std::abs(dpc[i] - dpc[w]));
    }
    const bool energy_ok = e_drift <= 0.005 * e0;
    const bool canon_ok = pc_drift <= 0.01 * p1;
    const double pm_range = pm_hi - pm_lo;
    const bool ratio_ok = pm_range >= 10.0 * pc_diff_drift;
    const bool c5b = energy_ok && canon_ok && ratio_ok;

    // (c) electron / positron mirror and common asymptote. Mirrored means
    // the two charges deviate from the free baseline in opposite
    // directions: the period-averaged deviations must anticorrelate.
    const auto& pr = positron.series.records;
    const std::size_t np = std::min(n, pr.size());
    std::vector<double> dve_raw, dvp_raw;
    for (std::size_t i = 2; i + 2 < np; ++i) {
        dve_raw.push_back(er[i].velocity.x - br[i].velocity.x);
        dvp_raw.push_back(pr[i].velocity.x - br[i].velocity.x);
    }
    const auto dve = smooth(dve_raw, w);
    const auto dvp = smooth(dvp_raw, w);
    double see = 0.0, spp = 0.0, sep = 0.0;
    for (std::size_t i = w; i + w < dve.size(); ++i) {
        see += dve[i] * dve[i];
        spp += dvp[i] * dvp[i];
        sep += dve[i] * dvp[i];
    }
    const double corr = (see > 0 && spp > 0) ? sep / std::sqrt(see * spp) : 0.0;
    const bool mirror_signal = corr < -0.5;
    const double asym_gap =
        dve.size() > 2 * w ? std::abs(dve[dve.size() - 1 - w] - dvp[dvp.size() - 1 - w]) : 1e9;
    const bool asym_ok = asym_gap <= 0.01 * std::abs(v0);
    const bool c5c = mirror_signal && asym_ok;

    // (d) spin independence
    const auto& sr = spin_down.series.records;
    double spin_gap = 0.0;
    for (std::size_t i = 0; i < std::min(n, sr.size()); ++i)
        spin_gap = std::max(spin_gap, std::abs(er[i].velocity.x - sr[i].velocity.x));
    const bool c5d = spin_gap <= 1e-6;

    report("C5", c5a && c5b && c5c && c5d,
           std::string("two solenoids: (a) peak x=") +
               (peak_interior ? fmt(xs[peak]) : "n/a") + " (|x|<=2a " +
               (peak_near_zero ? "ok" : "out") + "), return gap=" +
               fmt(std::abs(v_end - v0) / std::abs(v0), "%.2e") + " (<=1% " +
               (returns ? "ok" : "out") + "); (b) dE/E=" + fmt(e_drift / e0, "%.2e") +
               " (<=0.5% " + (energy_ok ? "ok" : "out") + "), dpc=" + fmt(pc_drift / p1, "%.2e") +
               "p1 (<=1% " + (canon_ok ? "ok" : "out") + "), pm-range/pc-drift=" +
               fmt(pc_diff_drift > 0 ? pm_range / pc_diff_drift : 1e9, "%.3g") + " (>=10 " +
               (ratio_ok ? "ok" : "out") + "); (c) mirror corr=" + fmt(corr, "%.2f") + " (<-0.5 " + (mirror_signal ? "ok" : "out") +
               "), asym gap=" + fmt(asym_gap, "%.2e") + " (" + (asym_ok ? "ok" : "out") +
               "); (d) spin gap=" + fmt(spin_gap, "%.2e") + " (" + (c5d ? "ok" : "out") + ")");

    // ---- C6: qualitative agreement with the velocity-form oracle ----
    SolenoidPairSpec sp;
    sp.flux = convert::weber_to_internal(flux);
    sp.half_separation = a;
    sp.radius = a / 5.0;
    const auto initial = ClassicalState::from_momentum(-8.0 * a, p1);
    auto integrate = [&](double dt) {
        return integrate_canonical_conservation(sp, initial, 8.0 * a, dt, -1.0);
    };
    auto oracle = refine_until(integrate, 1e-3);
    double or_vmax = 0.0, or_xmax = 0.0;
    for (const auto& st : oracle.states)
        if (st.v > or_vmax) {
            or_vmax = st.v;
            or_xmax = st.x;
        }
    // Dirac peak position from the period-averaged baseline-subtracted
    // curve above; peak height read from the averaged electron curve
    const double dirac_peak_x = peak_interior ? xs[peak] : 1e9;
    const double dirac_v_at_peak = peak_interior ? ve[peak] : 0.0;
    const bool peaks_close = std::abs(dirac_peak_x - or_xmax) <= 2.0 * a;
    const bool ordering = or_vmax >= dirac_v_at_peak;
    report("C6", peaks_close && ordering,
           "oracle overlay: oracle peak v=" + fmt(or_vmax) + " at x=" + fmt(or_xmax) +
               "; Dirac peak at x=" + fmt(dirac_peak_x) + " (|dx|<=2a " +
               (peaks_close ? "ok" : "out") + "), Dirac v at peak=" + fmt(dirac_v_at_peak) +
               " (oracle >= Dirac " + (ordering ? "ok" : "out") + ")");
}

// ---------------------------------------------------------------- C7 ---
void criterion7() {
    bool ok = true;
    std::string detail;

    SolenoidPairSpec sp;
    sp.flux = convert::weber_to_internal(-5.2e-14);
    sp.half_separation = 0.05;
    sp.radius = 0.01;
    const auto initial = ClassicalState::from_momentum(-0.4, 0.53);

    // 4th order under halving, probed through the conserved quantity
    const double d0 = conserved_quantity_check(
        integrate_canonical_conservation(sp, initial, 0.4, 8e-3), sp, -1.0);
    const double d1 = conserved_quantity_check(
        integrate_canonical_conservation(sp, initial, 0.4, 4e-3), sp, -1.0);
    const double d2 = conserved_quantity_check(
        integrate_canonical_conservation(sp, initial, 0.4, 2e-3), sp, -1.0);
    const bool order_ok = d0 / d1 > 10 && d0 / d1 < 26 && d1 / d2 > 10 && d1 / d2 < 26;
    ok = ok && order_ok;
    detail += "RK4 ratios " + fmt(d0 / d1, "%.1f") + ", " + fmt(d1 / d2, "%.1f") + " (~16 " +
              (order_ok ? "ok" : "out") + "); ";

    DipoleLineSpec dip;
    dip.coef = convert::line_density_to_internal(1.7e-17);
    dip.half_separation = 0.19;
    dip.orientation = DipoleOrientation::Parallel;
    const auto di = ClassicalState::from_momentum(-0.4, 0.09);
    const double e0 = energy_conservation_check(
        integrate_dipole_parallel(dip, di, 0.4, 2e-2), dip, -1.0);
    const double e1 = energy_conservation_check(
        integrate_dipole_parallel(dip, di, 0.4, 1e-2), dip, -1.0);
    const bool dip_order_ok = e0 / e1 > 10 && e0 / e1 < 26;
    ok = ok && dip_order_ok;
    detail += "dipole ratio " + fmt(e0 / e1, "%.1f") + " (" + (dip_order_ok ? "ok" : "out") + "); ";

    // conservation at refinement tolerance
    const auto traj = integrate_canonical_conservation(sp, initial, 0.4, 5e-4);
    const double dev = conserved_quantity_check(traj, sp, -1.0);
    const bool cons_ok = dev < 1e-6 * 0.53;
    ok = ok && cons_ok;
    detail += "p_x+qA_x dev=" + fmt(dev, "%.2e") + " (<1e-6 p1 " + (cons_ok ? "ok" : "out") + "); ";

    // zero-coupling degeneracy, exact
    SolenoidPairSpec zero_sp = sp;
    zero_sp.flux = 0.0;
    const auto t0 = integrate_canonical_conservation(zero_sp, initial, 0.4, 1e-3);
    DipoleLineSpec zero_dip = dip;
    zero_dip.coef = 0.0;
    const auto t1 = integrate_dipole_parallel(zero_dip, di, 0.4, 1e-3);
    const bool zero_ok = t0.back().v == t0.front().v && t1.back().v == t1.front().v;
    ok = ok && zero_ok;
    detail += std::string("zero-coupling constant v ") + (zero_ok ? "ok" : "out");

    report("C7", ok, "oracle self-tests: " + detail);
}

// ---------------------------------------------------------------- C8 ---
void criterion8(const std::string& cli) {
    bool ok = true;
    std::string detail;

    // snapshot and series round-trips, byte-exact
    const fs::path tmp = fs::temp_directory_path() / "dfdtd_acceptance";
    fs::create_directories(tmp);

    DensitySlice slice;
    slice.rows = 3;
    slice.cols = 4;
    for (int i = 0; i < 12; ++i) slice.values.push_back(std::sin(i * 0.7) * 1e-3);
    SnapshotMeta meta;
    meta.time = 0.625;
    meta.axis = Axis::Y;
    meta.plane_index = 11;
    meta.scenario_hash = fnv1a64("acceptance");
    write_snapshot((tmp / "s.bin").string(), slice, meta);
    auto back = read_snapshot((tmp / "s.bin").string());
    const bool snap_ok = back.slice.values == slice.values && back.meta.time == meta.time &&
                         back.meta.plane_index == meta.plane_index;
    ok = ok && snap_ok;
    detail += std::string("snapshot round-trip ") + (snap_ok ? "ok" : "out") + "; ";

    // repeated preset runs are byte-identical
    auto sc = load_preset("fig8_two_solenoids");
    auto r1 = run_scenario(sc, tmp / "a");
    auto r2 = run_scenario(sc, tmp / "b");
    bool rerun_ok = detail::read_file((r1.output_dir / "series.csv").string()) ==
                    detail::read_file((r2.output_dir / "series.csv").string());
    for (const auto& entry : fs::directory_iterator(r1.output_dir / "snapshots")) {
        const auto other = r2.output_dir / "snapshots" / entry.path().filename();
        rerun_ok = rerun_ok && detail::read_file(entry.path().string()) ==
                                   detail::read_file(other.string());
    }
    const auto series_back = read_series((r1.output_dir / "series.csv").string());
    rerun_ok = rerun_ok && series_back.records.size() == r1.series.records.size();
    ok = ok && rerun_ok;
    detail += std::string("byte-identical rerun ") + (rerun_ok ? "ok" : "out") + "; ";

    // all presets validate
    bool presets_ok = true;
    for (const auto& [name, text] : preset_catalog()) {
        try {
            parse_scenario(text, name);
        } catch (const std::exception& e) {
            presets_ok = false;
            detail += std::string("preset ") + name + " invalid: " + e.what() + "; ";
        }
    }
    ok = ok && presets_ok;
    detail += std::string("presets validate ") + (presets_ok ? "ok" : "out");

    // CLI conformance when the binary path is provided
    if (!cli.empty()) {
        int cli_fails = 0;
        for (const auto& [name, text] : preset_catalog()) {
            const std::string cmd = cli + " run --preset " + name + " --validate-only > /dev/null";
            if (std::system(cmd.c_str()) != 0) ++cli_fails;
        }
        const std::string bad = cli + " run /nonexistent.cfg --validate-only 2> /dev/null";
        const int rc = std::system(bad.c_str());
        const bool bad_maps_to_io = WIFEXITED(rc) && WEXITSTATUS(rc) == 4;
        const bool cli_ok = cli_fails == 0 && bad_maps_to_io;
        ok = ok && cli_ok;
        detail += "; CLI --validate-only " + std::string(cli_fails == 0 ? "ok" : "out") +
                  ", missing-file exit code " + std::string(bad_maps_to_io ? "ok" : "out");
    }

    std::error_code ec;
    fs::remove_all(tmp, ec);
    report("C8", ok, "format/CLI conformance: " + detail);
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::string only = argc > 2 ? argv[2] : ""; // e.g. "c1,c5" (development aid)
    auto wanted = [&only](const char* id) {
        return only.empty() || only.find(id) != std::string::npos;
    };
    std::printf("acceptance suite, %s\n", version_string);
    if (wanted("c1")) criterion1();
    if (wanted("c2")) criterion2();
    if (wanted("c3")) criterion3();
    if (wanted("c4")) criterion4();
    if (wanted("c5") || wanted("c6")) criteria5and6();
    if (wanted("c7")) criterion7();
    if (wanted("c8")) criterion8(cli);
    std::printf("%d of 8 criteria failed\n", g_failures);
    return g_failures;
}
