#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "diracfdtd/io.hpp"
#include "diracfdtd/scenario.hpp"
#include "diracfdtd/scenario_run.hpp"

using namespace dfdtd;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

const char* minimal_free_doc =
    "[grid]\n"
    "nx = 24\nny = 24\nnz = 24\ndelta_nm = 0.1\n"
    "[packet]\n"
    "x0_nm = 0.12\n"
    "[run]\n"
    "n_steps = 4\n";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("dfdtd_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("minimal free-particle document parses with defaults", "[scenario_io]") {
    auto sc = parse_scenario(minimal_free_doc, "mini");
    CHECK(sc.name == "mini");
    CHECK(std::holds_alternative<ZeroPotentialSpec>(sc.potential.descriptor()));
    CHECK(sc.grid.nx == 24);
    CHECK(sc.grid.delta_t == Approx(cfl_limit(0.1)));
    CHECK(sc.stepper.charge == -1.0);
    CHECK(sc.run.record_stride == 1);
}

TEST_CASE("parser reports line numbers and rejects unknown keys", "[scenario_io]") {
    CHECK_THROWS_WITH(parse_scenario("[grid]\nnx == 3\n", "x"),
                      Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THROWS_WITH(parse_scenario("nx = 3\n", "x"),
                      Catch::Matchers::ContainsSubstring("outside any section"));
    const std::string with_unknown = std::string(minimal_free_doc) + "[grid]\nwhatever = 3\n";
    CHECK_THROWS_WITH(parse_scenario(with_unknown, "x"),
                      Catch::Matchers::ContainsSubstring("unknown key grid.whatever"));
    CHECK_THROWS_AS(parse_scenario("[grid]\nnx = 24\n", "x"), ConfigError); // missing keys
    const std::string bad_spin =
        std::string(minimal_free_doc) + "[packet]\nspin = sideways\n";
    CHECK_THROWS_AS(parse_scenario(bad_spin, "x"), ConfigError);
}

TEST_CASE("named invariants are enforced at validation", "[scenario_io]") {
    // packet margin: x0 too large for the box
    const char* cramped =
        "[grid]\nnx = 24\nny = 24\nnz = 24\ndelta_nm = 0.1\n"
        "[packet]\nx0_nm = 0.4\n"
        "[run]\nn_steps = 1\n";
    CHECK_THROWS_WITH(parse_scenario(cramped, "x"),
                      Catch::Matchers::ContainsSubstring("margin"));

    // packet support over a solenoid disk
    const char* over_solenoid =
        "[grid]\nnx = 64\nny = 64\nnz = 64\ndelta_nm = 0.05\n"
        "[packet]\nx0_nm = 0.1\npx_mev_c = 0.53\ncenter_x_nm = -0.3\n"
        "[potential]\ntype = solenoid_pair\nflux_wb = 5.2e-14\nhalf_separation_nm = 0.05\n"
        "radius_nm = 0.01\n"
        "[run]\nn_steps = 1\n";
    CHECK_THROWS_WITH(parse_scenario(over_solenoid, "x"),
                      Catch::Matchers::ContainsSubstring("keep-out"));

    // CFL violation via explicit delta_t
    const char* too_fast =
        "[grid]\nnx = 24\nny = 24\nnz = 24\ndelta_nm = 0.1\ndelta_t_nm_per_c = 0.1\n"
        "[packet]\nx0_nm = 0.12\n"
        "[run]\nn_steps = 1\n";
    CHECK_THROWS_AS(parse_scenario(too_fast, "x"), ConfigError);
}

TEST_CASE("every bundled preset parses and validates", "[scenario_io]") {
    for (const auto& [name, text] : preset_catalog()) {
        INFO(name);
        CHECK_NOTHROW(parse_scenario(text, name));
    }
}

TEST_CASE("the two-solenoid preset carries the published parameters", "[scenario_io]") {
    auto sc = load_preset("fig8_two_solenoids");
    const auto* sp = std::get_if<SolenoidPairSpec>(&sc.potential.descriptor());
    REQUIRE(sp != nullptr);
    CHECK(std::abs(convert::internal_to_weber(sp->flux)) == Approx(5.2e-14).epsilon(1e-12));
    CHECK(2.0 * sp->half_separation == Approx(0.1));
    CHECK(sc.packet.momentum.x == Approx(0.53));

    auto sc9 = load_preset("fig9_electron_positron");
    const auto* sp9 = std::get_if<SolenoidPairSpec>(&sc9.potential.descriptor());
    REQUIRE(sp9 != nullptr);
    CHECK(std::abs(convert::internal_to_weber(sp9->flux)) == Approx(4.2e-14).epsilon(1e-12));
    CHECK(2.0 * sp9->half_separation == Approx(0.072));
}

TEST_CASE("overrides rewrite or append keys", "[scenario_io]") {
    auto text = apply_override(minimal_free_doc, "grid.nx=32");
    auto sc = parse_scenario(text, "x");
    CHECK(sc.grid.nx == 32);

    text = apply_override(minimal_free_doc, "stepper.particle=positron");
    sc = parse_scenario(text, "x");
    CHECK(sc.stepper.charge == +1.0);

    CHECK_THROWS_AS(apply_override(minimal_free_doc, "garbage"), ConfigError);
    CHECK_THROWS_AS(apply_override(minimal_free_doc, "nodot=3"), ConfigError);
}

TEST_CASE("snapshot format arithmetic: 2x2 zero slice is 80 bytes", "[scenario_io]") {
    TempDir tmp;
    DensitySlice slice;
    slice.rows = 2;
    slice.cols = 2;
    slice.values = {0.0, 0.0, 0.0, 0.0};
    SnapshotMeta meta;
    meta.time = 1.5;
    meta.axis = Axis::Y;
    meta.plane_index = 7;
    meta.scenario_hash = fnv1a64("demo");
    const auto path = (tmp.path / "snap.bin").string();
    write_snapshot(path, slice, meta);

    CHECK(fs::file_size(path) == 16 + 8 + 32 + 24);
    const std::string bytes = detail::read_file(path);
    CHECK(bytes.compare(0, 8, "DFDTSNAP") == 0);
    CHECK(static_cast<unsigned char>(bytes[8]) == 1); // version u16 LE
    CHECK(static_cast<unsigned char>(bytes[9]) == 0);

    const auto snap = read_snapshot(path);
    CHECK(snap.slice.rows == 2);
    CHECK(snap.slice.cols == 2);
    CHECK(snap.slice.values == slice.values);
    CHECK(snap.meta.time == meta.time);
    CHECK(snap.meta.axis == meta.axis);
    CHECK(snap.meta.plane_index == meta.plane_index);
    CHECK(snap.meta.scenario_hash == meta.scenario_hash);
}

TEST_CASE("snapshot round trip is exact for arbitrary payloads", "[scenario_io]") {
    TempDir tmp;
    DensitySlice slice;
    slice.rows = 5;
    slice.cols = 3;
    for (int i = 0; i < 15; ++i) slice.values.push_back(std::exp(i * 0.37) * 1e-7);
    SnapshotMeta meta;
    meta.time = 0.123456789012345;
    meta.axis = Axis::Z;
    meta.plane_index = 2;
    meta.scenario_hash = 0xdeadbeefcafef00dull;
    const auto path = (tmp.path / "snap.bin").string();
    write_snapshot(path, slice, meta);
    const auto snap = read_snapshot(path);
    CHECK(snap.slice.values == slice.values); // bitwise
    CHECK(snap.meta.time == meta.time);
    CHECK(snap.meta.scenario_hash == meta.scenario_hash);
}

TEST_CASE("series: empty file is header-only, round trip is exact", "[scenario_io]") {
    TempDir tmp;
    const auto path = (tmp.path / "series.csv").string();
    ObservableSeries empty;
    write_series(path, empty);
    CHECK(detail::read_file(path) == std::string(series_header) + "\n");

    ObservableSeries one;
    ObservableRecord r;
    r.t = 0.3333333333333333;
    r.norm = 0.9999999999999859;
    r.center = {1.0 / 3.0, -2.0 / 7.0, 1e-17};
    r.velocity = {0.7198934965, 0, 0};
    r.energy = 0.7362201;
    r.p_mech = {0.53, 0, 0};
    r.p_canon = {0.53, 1e-300, -4.9e17};
    one.records.push_back(r);
    write_series(path, one);
    const auto back = read_series(path);
    REQUIRE(back.records.size() == 1);
    const auto& b = back.records[0];
    // %.17g round-trips doubles exactly
    CHECK(b.t == r.t);
    CHECK(b.norm == r.norm);
    CHECK(b.center.x == r.center.x);
    CHECK(b.center.z == r.center.z);
    CHECK(b.p_canon.z == r.p_canon.z);
}

TEST_CASE("plane lists parse and reject malformed tokens", "[scenario_io]") {
    const std::string doc = std::string(minimal_free_doc) +
                            "[run]\nsnapshot_stride = 2\nsnapshot_planes = y:12 z:3\n";
    auto sc = parse_scenario(doc, "x");
    REQUIRE(sc.run.snapshot_planes.size() == 2);
    CHECK(sc.run.snapshot_planes[0].axis == Axis::Y);
    CHECK(sc.run.snapshot_planes[0].index == 12);
    CHECK(sc.run.snapshot_planes[1].axis == Axis::Z);

    const std::string bad = std::string(minimal_free_doc) + "[run]\nsnapshot_planes = q:1\n";
    CHECK_THROWS_AS(parse_scenario(bad, "x"), ConfigError);
    const std::string oob =
        std::string(minimal_free_doc) + "[run]\nsnapshot_stride = 1\nsnapshot_planes = y:99\n";
    CHECK_THROWS_AS(parse_scenario(oob, "x"), ConfigError);
}

TEST_CASE("scenario runs are byte-identical when repeated", "[scenario_io]") {
    const char* doc =
        "[grid]\nnx = 20\nny = 20\nnz = 20\ndelta_nm = 0.1\n"
        "[packet]\nx0_nm = 0.11\npx_mev_c = 0.53\n"
        "[potential]\ntype = solenoid_pair\nflux_wb = 5.2e-14\nhalf_separation_nm = 0.75\n"
        "radius_nm = 0.05\n"
        "[run]\nn_steps = 12\nrecord_stride = 3\nsnapshot_stride = 6\nsnapshot_planes = y:10\n";
    auto sc = parse_scenario(doc, "rerun_check");

    TempDir tmp;
    auto r1 = run_scenario(sc, tmp.path / "a");
    auto r2 = run_scenario(sc, tmp.path / "b");
    CHECK(r1.status == RunStatus::Ok);

    const auto bytes = [](const fs::path& p) { return detail::read_file(p.string()); };
    CHECK(bytes(r1.output_dir / "series.csv") == bytes(r2.output_dir / "series.csv"));
    for (const auto& entry : fs::directory_iterator(r1.output_dir / "snapshots")) {
        const auto other = r2.output_dir / "snapshots" / entry.path().filename();
        CHECK(bytes(entry.path()) == bytes(other));
    }
    // manifest exists and carries the boundary metric
    const auto man = bytes(r1.output_dir / "manifest.txt");
    CHECK(man.find("boundary_shell_peak_ratio") != std::string::npos);
    CHECK(man.find("norm_drift") != std::string::npos);
}

TEST_CASE("run_scenario emits a classical overlay for oracle-backed potentials",
          "[scenario_io]") {
    // small but valid solenoid-pair run starting at |x| >= 8a
    const char* doc =
        "[grid]\nnx = 40\nny = 24\nnz = 24\ndelta_nm = 0.1\ncenter_x_nm = -0.2\n"
        "[packet]\nx0_nm = 0.12\npx_mev_c = 0.53\ncenter_x_nm = -0.85\n"
        "[potential]\ntype = solenoid_pair\nflux_wb = -5.2e-14\nhalf_separation_nm = 0.1\n"
        "radius_nm = 0.02\n"
        "[run]\nn_steps = 30\nrecord_stride = 5\n";
    auto sc = parse_scenario(doc, "overlay_check");
    TempDir tmp;
    auto r = run_scenario(sc, tmp.path);
    CHECK(r.status == RunStatus::Ok);
    CHECK(fs::exists(r.output_dir / "classical_overlay.csv"));
    const auto text = detail::read_file((r.output_dir / "classical_overlay.csv").string());
    CHECK(text.rfind("t,x,v,p\n", 0) == 0);
}
