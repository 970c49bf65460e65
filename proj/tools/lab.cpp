// Development scratch bench. Not part of the deliverable surface; used to
// calibrate expected values for tests.
#include <cstdio>
#include <cstring>
#include <chrono>
#include <string>

#include "diracfdtd/classical.hpp"
#include "diracfdtd/packet.hpp"
#include "diracfdtd/runner.hpp"

using namespace dfdtd;

static void free_velocity(int n, double x0, double delta, long stride,
                          double cfl_safety) {
    const double p = 0.53;
    const double dt = cfl_limit(delta, cfl_safety);
    auto grid = make_centered_grid(n, n, n, delta, dt, {}, cfl_safety);
    PacketSpec spec;
    spec.width = x0;
    spec.momentum = {p, 0, 0};
    // start left of center to use travel room
    spec.center = {grid.domain_min().x + 6.2 * x0, 0, 0};
    // stop while the packet is still 6.2 x0 clear of the +x wall
    const double travel = (grid.domain_max().x - 6.2 * x0) - spec.center.x;
    const long steps = static_cast<long>(travel / (0.75 * dt));
    auto field = init_packet(grid, spec);
    auto pot = sample_on_grid(zero_potential(), grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);

    auto series = run(field, pot, cfg, steps, stride);
    if (series.failed) {
        std::printf("BLEW UP at step %ld\n", series.failed_step);
        return;
    }
    // fit drift velocity between 25%% and 100%% of the series
    const auto& recs = series.records;
    const std::size_t i0 = recs.size() / 4;
    const double vfit = (recs.back().center.x - recs[i0].center.x) /
                        (recs.back().t - recs[i0].t);
    const double E = energy_of_momentum(p);
    const double v_exact = p / E;

    // lattice group-velocity prediction at the central momentum
    const double k = p / constants::hbar_c;
    const double s = k * delta;
    const double p_eff = p * std::sin(s) / s;
    const double Esd = std::sqrt(p_eff * p_eff +
                                 constants::electron_rest_energy * constants::electron_rest_energy);
    const double tcorr = 1.0 / std::sqrt(1.0 - std::pow(p_eff * dt / (2.0 * constants::hbar), 2));
    const double v_lattice = p_eff * std::cos(s) / Esd * tcorr;

    std::printf("n=%d x0=%.4g delta=%.4g dt=%.5g steps=%ld\n", n, x0, delta, dt, steps);
    std::printf("  v_fit=%.6f v_exact=%.6f v_lattice(k0)=%.6f\n", vfit, v_exact, v_lattice);
    std::printf("  norm drift=%.3e  pmech_x(end)=%.6f pcanon_x(end)=%.6f E(end)=%.6f\n",
                std::abs(recs.back().norm - recs.front().norm), recs.back().p_mech.x,
                recs.back().p_canon.x, recs.back().energy);
    std::printf("  v(p/E from obs)=%.6f\n", recs.back().p_mech.x / recs.back().energy);
    // zitter: residual oscillation of center.x after removing linear fit
    double worst = 0.0;
    for (std::size_t m = i0; m < recs.size(); ++m) {
        const double lin = recs[i0].center.x + vfit * (recs[m].t - recs[i0].t);
        worst = std::max(worst, std::abs(recs[m].center.x - lin));
    }
    std::printf("  max |center residual| after linear fit = %.3e nm\n", worst);
    // per-record instantaneous velocity range (zitter on derivative)
    double vmin = 1e9, vmax = -1e9;
    for (std::size_t m = 1; m + 1 < recs.size(); ++m) {
        vmin = std::min(vmin, recs[m].velocity.x);
        vmax = std::max(vmax, recs[m].velocity.x);
    }
    std::printf("  strided velocity range = [%.6f, %.6f]\n", vmin, vmax);
}

static void stability(double factor, long steps) {
    const int n = 48;
    const double delta = 0.2;
    const double dt = factor * delta / std::sqrt(3.0);
    auto grid = make_centered_grid(n, n, n, delta, dt, {}, factor * 1.0001);
    PacketSpec spec;
    spec.width = 3 * delta;
    spec.momentum = {0.53, 0, 0};
    auto field = init_packet(grid, spec);
    auto pot = sample_on_grid(zero_potential(), grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);
    double n0 = total_norm(field);
    long blew = -1;
    double drift = 0.0;
    for (long s = 1; s <= steps; ++s) {
        try {
            step(field, pot, cfg);
        } catch (const BlowUpError&) {
            blew = s;
            break;
        }
        if (s % 25 == 0) {
            double nn = total_norm(field);
            drift = std::max(drift, std::abs(nn - n0));
        }
    }
    if (blew > 0)
        std::printf("factor=%.3f: BLEW UP at step %ld\n", factor, blew);
    else
        std::printf("factor=%.3f: stable over %ld steps, max|norm-1|=%.3e\n", factor, steps, drift);
}

static void rest_phase() {
    const double m = constants::electron_rest_energy;
    const double delta = 0.04;
    const int n = 72;
    const double dt = cfl_limit(delta);
    auto grid = make_centered_grid(n, n, n, delta, dt);
    SpinorField f(grid);
    for (auto& v : f.psi1) v = 1.0;
    f.stagger.time_of_12 = -dt / 2;
    // phase-advance the constant spinor back half a step, as init_packet does
    const cplx back(std::cos(m * dt / (2 * constants::hbar)), std::sin(m * dt / (2 * constants::hbar)));
    for (auto& v : f.psi1) v *= back;
    auto pot = sample_on_grid(zero_potential(), grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);
    const double T = M_PI * constants::hbar / m;
    const long steps = static_cast<long>(std::round(T / dt));
    for (long s = 0; s < steps; ++s) step(f, pot, cfg);
    const auto c = f.psi1[grid.index(n / 2, n / 2, n / 2)];
    std::printf("rest phase: steps=%ld, psi1(center)=(%.6f, %.6f), |psi1+1|=%.3e\n", steps,
                c.real(), c.imag(), std::abs(c + cplx(1.0, 0)));
}

static void momentum_conservation(bool with_pair, double safety = 0.5, double x0 = 0.3,
                                  int n = 48) {
    const double delta = 0.1;
    const double dt = cfl_limit(delta, safety);
    auto grid = make_centered_grid(n, n, n, delta, dt, {}, safety);
    PacketSpec spec;
    spec.width = x0;
    spec.momentum = {0.53, 0, 0};
    spec.center = {x0 > 0.35 ? 0.0 : -0.5, 0, 0};
    auto field = init_packet(grid, spec);
    FourPotential pot = zero_potential();
    if (with_pair) {
        SolenoidPairSpec sp;
        sp.flux = convert::weber_to_internal(-5.2e-14);
        sp.half_separation = 0.05;
        sp.radius = 0.01;
        pot = solenoid_pair(sp);
    }
    auto pg = sample_on_grid(pot, grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);
    std::printf("%s:\n", with_pair ? "solenoid pair" : "free");
    for (long s = 0; s <= 20; ++s) {
        if (s % 5 == 0) {
            auto pc = expectation_canonical_momentum(field);
            std::printf("  step %2ld: pc=(%.6f, %.6f, %.6f) norm=%.6f\n", s, pc.x, pc.y, pc.z,
                        total_norm(field));
        }
        if (s < 20) step(field, pg, cfg);
    }
}

static void orbit(const FourPotential& pot, const char* label, int n = 80, double delta = 0.02,
                  double dtt = 0.001, double x0 = 0.08, long steps = 200, long stride = 10) {
    auto grid = make_centered_grid(n, n, n, delta, dtt, {}, 1.0);
    PacketSpec spec;
    spec.width = x0;
    spec.momentum = {0.53, 0, 0};
    auto field = init_packet(grid, spec);
    auto pg = sample_on_grid(pot, grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);
    auto series = run(field, pg, cfg, steps, stride);
    const double rc = 0.53 / convert::tesla_to_internal(1e8);
    std::printf("%s: r_class=%.5f, T_orbit=%.5f\n", label, rc,
                2 * M_PI * energy_of_momentum(0.53) / convert::tesla_to_internal(1e8));
    for (const auto& r : series.records) {
        std::printf("  t=%.4f center=(%+.5f, %+.2e, %+.5f) |r-center_guess|.. norm=%.4f E=%.4f\n",
                    r.t, r.center.x, r.center.y, r.center.z, r.norm, r.energy);
    }
}

static void timing(int n, long steps) {
    const double delta = 0.1;
    const double dt = cfl_limit(delta);
    auto grid = make_centered_grid(n, n, n, delta, dt);
    PacketSpec spec;
    spec.width = 4 * delta;
    spec.momentum = {0.53, 0, 0};
    auto field = init_packet(grid, spec);
    auto pg = sample_on_grid(zero_potential(), grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);
    const auto t0 = std::chrono::steady_clock::now();
    for (long s = 0; s < steps; ++s) step(field, pg, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    std::printf("n=%d: %.3f s/step (%.1f s for %ld)\n", n, secs / steps, secs, steps);
}

static void drift2000(double safety, long steps) {
    const double delta = 0.11;
    const double dt = cfl_limit(delta, safety);
    auto grid = make_centered_grid(128, 104, 104, delta, dt, {}, safety);
    PacketSpec spec;
    spec.width = 0.7;
    spec.momentum = {0.53, 0, 0};
    spec.center = {-1.3, 0, 0};
    auto field = init_packet(grid, spec);
    auto pg = sample_on_grid(zero_potential(), grid);
    auto cfg = StepperConfig::for_particle(ParticleKind::Electron);
    const double n0 = total_norm(field);
    double max_drift = 0.0, end_drift = 0.0;
    for (long s = 1; s <= steps; ++s) {
        step(field, pg, cfg);
        if (s % 10 == 0 || s == steps) {
            const double nn = total_norm(field);
            max_drift = std::max(max_drift, std::abs(nn - n0));
            if (s == steps) end_drift = std::abs(nn - n0);
        }
    }
    std::printf("safety=%.3f steps=%ld: max_drift=%.4e end_drift=%.4e\n", safety, steps,
                max_drift, end_drift);
    std::fflush(stdout);
}

static void c5_dump(double x0, const char* path) {
    const double delta = 0.1;
    const double a = 0.05, p1 = 0.53;
    auto grid = make_centered_grid(96, 90, 90, delta, cfl_limit(delta));
    auto run_one = [&](double charge, bool with_pot) {
        PacketSpec spec;
        spec.width = x0;
        spec.momentum = {p1, 0, 0};
        spec.center = {-8.0 * a, 0, 0};
        auto field = init_packet(grid, spec);
        FourPotential src = zero_potential();
        if (with_pot) {
            SolenoidPairSpec sp;
            sp.flux = convert::weber_to_internal(-5.2e-14);
            sp.half_separation = a;
            sp.radius = a / 5.0;
            src = solenoid_pair(sp);
        }
        auto pot = sample_on_grid(src, grid);
        StepperConfig cfg;
        cfg.charge = charge;
        const long max_steps = static_cast<long>(2.6 * 8.0 * a / (0.55 * grid.delta_t)) + 40;
        return run(field, pot, cfg, max_steps, 2);
    };
    auto e = run_one(-1.0, true);
    auto pz = run_one(+1.0, true);
    auto b = run_one(-1.0, false);
    FILE* f = std::fopen(path, "w");
    std::fprintf(f, "t,xe,ve,vp,vb,pme,pmb,pce,pcb,Ee\n");
    const std::size_t n = std::min(e.records.size(), std::min(pz.records.size(), b.records.size()));
    for (std::size_t i = 0; i < n; ++i)
        std::fprintf(f, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                     e.records[i].t, e.records[i].center.x, e.records[i].velocity.x,
                     pz.records[i].velocity.x, b.records[i].velocity.x, e.records[i].p_mech.x,
                     b.records[i].p_mech.x, e.records[i].p_canon.x, b.records[i].p_canon.x,
                     e.records[i].energy);
    std::fclose(f);
    std::printf("wrote %s (%zu records)\n", path, n);
}

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "all";
    if (mode == "pcons") {
        momentum_conservation(false);
        momentum_conservation(true);
        return 0;
    }
    if (mode == "c5dump") {
        c5_dump(argc > 2 ? std::atof(argv[2]) : 0.7, argc > 3 ? argv[3] : "/tmp/c5.csv");
        return 0;
    }
    if (mode == "drift") {
        drift2000(0.5, 2000);
        drift2000(0.25, 2000);
        return 0;
    }
    if (mode == "time") {
        timing(64, 20);
        timing(96, 10);
        timing(128, 6);
        return 0;
    }
    if (mode == "orbit") {
        const double b0 = convert::tesla_to_internal(1e8);
        orbit(uniform_b_symmetric(b0), "symmetric");
        orbit(uniform_b_landau_x(b0), "landau_x");
        orbit(uniform_b_landau_z(b0), "landau_z");
        orbit(uniform_b_symmetric(-b0), "symmetric flipped B");
        return 0;
    }
    if (mode == "pcons2") {
        std::printf("=== dt halved ===\n");
        momentum_conservation(false, 0.25);
        std::printf("=== dt quartered ===\n");
        momentum_conservation(false, 0.125);
        std::printf("=== wider packet x0=0.5 ===\n");
        momentum_conservation(false, 0.5, 0.5, 64);
        return 0;
    }
    if (mode == "vel" || mode == "all") {
        free_velocity(64, 0.55, 0.13, 2, 0.5);
        free_velocity(96, 0.80, 0.11, 2, 0.5);
    }
    if (mode == "vel160") {
        free_velocity(160, 1.05, 0.088, 4, 0.5);
    }
    if (mode == "stab" || mode == "all") {
        stability(0.5, 500);
        stability(1.2, 500);
        stability(2.0 * 1.2, 500);
        stability(2.0 * 0.98, 500);
    }
    if (mode == "rest" || mode == "all") rest_phase();
    return 0;
}
