// scenario.hpp - scenario configuration: plain-text sectioned key=value
// documents, validation of the physical invariants, and the preset
// catalog.
//
// Document format: sections [grid], [packet], [potential], [stepper],
// [run]; one key = value per line; '#' starts a comment. Keys carry their
// units in the name (e.g. flux_wb, px_mev_c). Unknown keys are errors.

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "diracfdtd/packet.hpp"
#include "diracfdtd/potentials.hpp"
#include "diracfdtd/stepper.hpp"
#include "diracfdtd/units.hpp"

namespace dfdtd {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunControls {
    long n_steps = 0;
    long record_stride = 1;
    long snapshot_stride = 0; // 0 disables snapshots
    std::vector<PlaneSelector> snapshot_planes;
};

struct Scenario {
    std::string name = "scenario";
    GridSpec grid;
    PacketSpec packet;
    FourPotential potential;
    StepperConfig stepper;
    RunControls run;

    void validate() const;
};

namespace scenario_detail {

struct Line {
    int number = 0;
    std::string section;
    std::string key;
    std::string value;
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ConfigError("line " + std::to_string(number) + ": malformed section header");
            section = trim(body.substr(1, body.size() - 2));
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(number) + ": expected key = value");
        if (section.empty())
            throw ConfigError("line " + std::to_string(number) + ": key outside any section");
        Line l;
        l.number = number;
        l.section = section;
        l.key = trim(body.substr(0, eq));
        l.value = trim(body.substr(eq + 1));
        if (l.key.empty() || l.value.empty())
            throw ConfigError("line " + std::to_string(number) + ": empty key or value");
        lines.push_back(l);
    }
    return lines;
}

class KeyTable {
public:
    void set(const Line& l) { values_[l.section + "." + l.key] = l; }

    bool has(const std::string& path) const { return values_.count(path) != 0; }

    std::string str(const std::string& path) {
        auto it = values_.find(path);
        if (it == values_.end()) throw ConfigError("missing required key: " + path);
        used_.insert(path);
        return it->second.value;
    }

    std::string str_or(const std::string& path, const std::string& dflt) {
        if (!has(path)) return dflt;
        return str(path);
    }

    double num(const std::string& path) {
        const std::string v = str(path); // throws on missing key
        const int line = values_.at(path).number;
        try {
            std::size_t used = 0;
            const double d = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(line) + ": key " + path +
                              ": not a number: '" + v + "'");
        }
    }

    double num_or(const std::string& path, double dflt) {
        if (!has(path)) return dflt;
        return num(path);
    }

    long integer(const std::string& path) {
        const double d = num(path); // throws on missing key
        const int line = values_.at(path).number;
        const long l = static_cast<long>(d);
        if (static_cast<double>(l) != d)
            throw ConfigError("line " + std::to_string(line) + ": key " + path +
                              ": expected an integer");
        return l;
    }

    long integer_or(const std::string& path, long dflt) {
        if (!has(path)) return dflt;
        return integer(path);
    }

    void reject_unknown() const {
        for (const auto& [path, line] : values_)
            if (!used_.count(path))
                throw ConfigError("line " + std::to_string(line.number) + ": unknown key " + path);
    }

private:
    std::map<std::string, Line> values_;
    std::set<std::string> used_;
};

inline std::vector<PlaneSelector> parse_planes(const std::string& text) {
    std::vector<PlaneSelector> planes;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.size() < 3 || tok[1] != ':')
            throw ConfigError("snapshot_planes: expected axis:index tokens, got '" + tok + "'");
        PlaneSelector p;
        switch (tok[0]) {
        case 'x': p.axis = Axis::X; break;
        case 'y': p.axis = Axis::Y; break;
        case 'z': p.axis = Axis::Z; break;
        default: throw ConfigError("snapshot_planes: unknown axis in '" + tok + "'");
        }
        try {
            p.index = std::stoi(tok.substr(2));
        } catch (const std::exception&) {
            throw ConfigError("snapshot_planes: bad index in '" + tok + "'");
        }
        planes.push_back(p);
    }
    return planes;
}

} // namespace scenario_detail

inline Scenario parse_scenario(const std::string& text, const std::string& name = "scenario") {
    using namespace scenario_detail;
    KeyTable keys;
    for (const auto& line : tokenize(text)) keys.set(line);

    Scenario s;
    s.name = name;

    // [grid]
    const int nx = static_cast<int>(keys.integer("grid.nx"));
    const int ny = static_cast<int>(keys.integer("grid.ny"));
    const int nz = static_cast<int>(keys.integer("grid.nz"));
    const double delta = keys.num("grid.delta_nm");
    const double safety = keys.num_or("grid.cfl_safety", 0.5);
    double delta_t;
    try {
        delta_t = keys.num_or("grid.delta_t_nm_per_c", cfl_limit(delta, safety));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const Vec3 gcenter{keys.num_or("grid.center_x_nm", 0.0), keys.num_or("grid.center_y_nm", 0.0),
                       keys.num_or("grid.center_z_nm", 0.0)};
    try {
        s.grid = make_centered_grid(nx, ny, nz, delta, delta_t, gcenter, safety);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    // [packet]
    s.packet.width = keys.num("packet.x0_nm");
    s.packet.momentum = {keys.num_or("packet.px_mev_c", 0.0), keys.num_or("packet.py_mev_c", 0.0),
                         keys.num_or("packet.pz_mev_c", 0.0)};
    s.packet.center = {keys.num_or("packet.center_x_nm", 0.0), keys.num_or("packet.center_y_nm", 0.0),
                       keys.num_or("packet.center_z_nm", 0.0)};
    const std::string spin = keys.str_or("packet.spin", "up");
    if (spin == "up")
        s.packet.spin = Spin::Up;
    else if (spin == "down")
        s.packet.spin = Spin::Down;
    else
        throw ConfigError("packet.spin: expected up or down, got '" + spin + "'");

    // [potential]
    const std::string type = keys.str_or("potential.type", "none");
    try {
        if (type == "none") {
            s.potential = zero_potential();
        } else if (type == "uniform_b_symmetric" || type == "uniform_b_landau_x" ||
                   type == "uniform_b_landau_z") {
            const double b0 = convert::tesla_to_internal(keys.num("potential.b0_tesla"));
            if (type == "uniform_b_symmetric") s.potential = uniform_b_symmetric(b0);
            if (type == "uniform_b_landau_x") s.potential = uniform_b_landau_x(b0);
            if (type == "uniform_b_landau_z") s.potential = uniform_b_landau_z(b0);
        } else if (type == "dipole_lines") {
            DipoleLineSpec d;
            d.coef = convert::line_density_to_internal(keys.num("potential.line_density_cm_per_m"));
            d.half_separation = keys.num("potential.half_separation_nm");
            const std::string orient = keys.str("potential.orientation");
            if (orient == "parallel")
                d.orientation = DipoleOrientation::Parallel;
            else if (orient == "perpendicular")
                d.orientation = DipoleOrientation::Perpendicular;
            else
                throw ConfigError("potential.orientation: expected parallel or perpendicular");
            d.sign = static_cast<int>(keys.integer_or("potential.sign", +1));
            s.potential = dipole_lines(d);
        } else if (type == "solenoid_single") {
            const double flux = convert::weber_to_internal(keys.num("potential.flux_wb"));
            const double radius = keys.num("potential.radius_nm");
            const Vec3 center{keys.num_or("potential.center_x_nm", 0.0), 0.0,
                              keys.num_or("potential.center_z_nm", 0.0)};
            s.potential = solenoid_single(flux, radius, center);
        } else if (type == "solenoid_pair") {
            SolenoidPairSpec sp;
            sp.flux = convert::weber_to_internal(keys.num("potential.flux_wb"));
            sp.half_separation = keys.num("potential.half_separation_nm");
            // winding radius defaults to a/5; the exterior potential does
            // not depend on it at fixed flux
            sp.radius = keys.num_or("potential.radius_nm", sp.half_separation / 5.0);
            s.potential = solenoid_pair(sp);
        } else {
            throw ConfigError("potential.type: unknown type '" + type + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    // [stepper]
    const std::string particle = keys.str_or("stepper.particle", "electron");
    if (particle == "electron")
        s.stepper.charge = -1.0;
    else if (particle == "positron")
        s.stepper.charge = +1.0;
    else
        throw ConfigError("stepper.particle: expected electron or positron");
    const std::string boundary = keys.str_or("stepper.boundary", "reflecting");
    if (boundary == "reflecting") {
        s.stepper.boundary = ReflectingBoundary{};
    } else if (boundary == "damping") {
        DampingLayerBoundary d;
        d.width = static_cast<int>(keys.integer_or("stepper.damping_width_cells", 8));
        d.strength = keys.num_or("stepper.damping_strength", 0.05);
        s.stepper.boundary = d;
    } else {
        throw ConfigError("stepper.boundary: expected reflecting or damping");
    }

    // [run]
    s.run.n_steps = keys.integer("run.n_steps");
    s.run.record_stride = keys.integer_or("run.record_stride", 1);
    s.run.snapshot_stride = keys.integer_or("run.snapshot_stride", 0);
    if (keys.has("run.snapshot_planes"))
        s.run.snapshot_planes = scenario_detail::parse_planes(keys.str("run.snapshot_planes"));

    keys.reject_unknown();
    s.validate();
    return s;
}

inline void Scenario::validate() const {
    try {
        packet.validate();
        stepper.validate(grid);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (run.n_steps < 0) throw ConfigError("run.n_steps must be >= 0");
    if (run.record_stride < 1) throw ConfigError("run.record_stride must be >= 1");
    if (run.snapshot_stride < 0) throw ConfigError("run.snapshot_stride must be >= 0");
    for (const auto& p : run.snapshot_planes) {
        const int bound = p.axis == Axis::X ? grid.nx : p.axis == Axis::Y ? grid.ny : grid.nz;
        if (p.index < 0 || p.index >= bound)
            throw ConfigError("snapshot plane index out of bounds");
    }

    // packet must sit inside the grid with >= 8 x0 of margin per face
    const double margin = 8.0 * packet.width;
    const Vec3 lo = grid.domain_min();
    const Vec3 hi = grid.domain_max();
    if (packet.center.x - lo.x < margin || hi.x - packet.center.x < margin ||
        packet.center.y - lo.y < margin || hi.y - packet.center.y < margin ||
        packet.center.z - lo.z < margin || hi.z - packet.center.z < margin)
        throw ConfigError("packet margin rule violated: need >= 8 x0 from the packet center "
                          "to every domain face");

    // packet support (center +- 6 x0) must stay clear of solenoid windings
    // and dipole singular lines; distance test in the x-z plane against the
    // support box
    const double support = 6.0 * packet.width;
    struct Feature {
        double x, z, radius;
    };
    std::vector<Feature> features;
    const auto& desc = potential.descriptor();
    if (const auto* d = std::get_if<DipoleLineSpec>(&desc)) {
        features.push_back({0.0, +d->half_separation, 0.0});
        features.push_back({0.0, -d->half_separation, 0.0});
    } else if (const auto* so = std::get_if<SolenoidSpec>(&desc)) {
        features.push_back({so->center_x, so->center_z, so->radius});
    } else if (const auto* sp = std::get_if<SolenoidPairSpec>(&desc)) {
        features.push_back({0.0, +sp->half_separation, sp->radius});
        features.push_back({0.0, -sp->half_separation, sp->radius});
    }
    for (const auto& f : features) {
        const double dx = std::max(0.0, std::abs(f.x - packet.center.x) - support);
        const double dz = std::max(0.0, std::abs(f.z - packet.center.z) - support);
        if (std::hypot(dx, dz) <= f.radius)
            throw ConfigError("keep-out rule violated: packet support (center +- 6 x0) "
                              "overlaps a singular line or solenoid winding");
    }
}

/// Applies a "section.key=value" override to a config document by
/// rewriting (or appending) the key in its section.
inline std::string apply_override(const std::string& text, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override: expected section.key=value, got '" + assignment + "'");
    const std::string path = scenario_detail::trim(assignment.substr(0, eq));
    const std::string value = scenario_detail::trim(assignment.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= path.size())
        throw ConfigError("override: expected section.key=value, got '" + assignment + "'");
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);

    std::istringstream in(text);
    std::ostringstream out;
    std::string raw, current;
    bool replaced = false, section_seen = false;
    while (std::getline(in, raw)) {
        const std::string body = scenario_detail::trim(raw);
        if (!body.empty() && body.front() == '[' && body.back() == ']') {
            // leaving the target section without a hit: insert there
            if (current == section && !replaced) {
                out << key << " = " << value << "\n";
                replaced = true;
            }
            current = scenario_detail::trim(body.substr(1, body.size() - 2));
            if (current == section) section_seen = true;
        } else if (current == section && !replaced) {
            const auto keq = body.find('=');
            if (keq != std::string::npos &&
                scenario_detail::trim(body.substr(0, keq)) == key) {
                out << key << " = " << value << "\n";
                replaced = true;
                continue;
            }
        }
        out << raw << "\n";
    }
    if (!replaced) {
        if (!section_seen) out << "[" << section << "]\n";
        out << key << " = " << value << "\n";
    }
    return out.str();
}

// ----------------------------------------------------------------------
// Preset catalog. Each preset reproduces one of the published field
// arrangements at a resolution that runs on a workstation. Packet widths
// for the solenoid/dipole presets are capped by the keep-out rule; the
// resulting momentum-spread ratio is recorded in the run manifest.
// ----------------------------------------------------------------------

inline const std::vector<std::pair<std::string, std::string>>& preset_catalog() {
    static const std::vector<std::pair<std::string, std::string>> presets = {
        {"free_particle",
         "[grid]\n"
         "nx = 128\nny = 104\nnz = 104\ndelta_nm = 0.11\n"
         "[packet]\n"
         "x0_nm = 0.7\npx_mev_c = 0.53\ncenter_x_nm = -1.3\n"
         "[potential]\n"
         "type = none\n"
         "[run]\n"
         "n_steps = 120\nrecord_stride = 2\n"},
        {"fig2_uniform_b",
         "[grid]\n"
         "nx = 80\nny = 80\nnz = 80\ndelta_nm = 0.02\ndelta_t_nm_per_c = 0.001\n"
         "[packet]\n"
         "x0_nm = 0.08\npx_mev_c = 0.53\n"
         "[potential]\n"
         "type = uniform_b_symmetric\nb0_tesla = 1e8\n"
         "[run]\n"
         "n_steps = 200\nrecord_stride = 4\nsnapshot_stride = 50\nsnapshot_planes = y:40\n"},
        {"fig2_uniform_b_landau_x",
         "[grid]\n"
         "nx = 80\nny = 80\nnz = 80\ndelta_nm = 0.02\ndelta_t_nm_per_c = 0.001\n"
         "[packet]\n"
         "x0_nm = 0.08\npx_mev_c = 0.53\n"
         "[potential]\n"
         "type = uniform_b_landau_x\nb0_tesla = 1e8\n"
         "[run]\n"
         "n_steps = 200\nrecord_stride = 4\n"},
        {"fig2_uniform_b_landau_z",
         "[grid]\n"
         "nx = 80\nny = 80\nnz = 80\ndelta_nm = 0.02\ndelta_t_nm_per_c = 0.001\n"
         "[packet]\n"
         "x0_nm = 0.08\npx_mev_c = 0.53\n"
         "[potential]\n"
         "type = uniform_b_landau_z\nb0_tesla = 1e8\n"
         "[run]\n"
         "n_steps = 200\nrecord_stride = 4\n"},
        {"fig6_dipoles_parallel",
         "[grid]\n"
         "nx = 48\nny = 32\nnz = 32\ndelta_nm = 0.05\n"
         "[packet]\n"
         "x0_nm = 0.06\npx_mev_c = 0.09\ncenter_x_nm = -0.4\n"
         "[potential]\n"
         "type = dipole_lines\nline_density_cm_per_m = 1.7e-17\nhalf_separation_nm = 0.19\n"
         "orientation = parallel\nsign = 1\n"
         "[stepper]\n"
         "boundary = damping\ndamping_width_cells = 6\ndamping_strength = 0.05\n"
         "[run]\n"
         "n_steps = 800\nrecord_stride = 8\n"},
        {"fig6_dipoles_perpendicular",
         "[grid]\n"
         "nx = 48\nny = 32\nnz = 32\ndelta_nm = 0.05\n"
         "[packet]\n"
         "x0_nm = 0.06\npx_mev_c = 0.09\ncenter_x_nm = -0.4\n"
         "[potential]\n"
         "type = dipole_lines\nline_density_cm_per_m = 1.7e-17\nhalf_separation_nm = 0.19\n"
         "orientation = perpendicular\nsign = 1\n"
         "[stepper]\n"
         "boundary = damping\ndamping_width_cells = 6\ndamping_strength = 0.05\n"
         "[run]\n"
         "n_steps = 800\nrecord_stride = 8\n"},
        {"fig8_two_solenoids",
         "[grid]\n"
         "nx = 52\nny = 48\nnz = 48\ndelta_nm = 0.05\n"
         "[packet]\n"
         "x0_nm = 0.06\npx_mev_c = 0.53\ncenter_x_nm = -0.4\n"
         "[potential]\n"
         "type = solenoid_pair\nflux_wb = -5.2e-14\nhalf_separation_nm = 0.05\nradius_nm = 0.01\n"
         "[stepper]\n"
         "boundary = damping\ndamping_width_cells = 8\ndamping_strength = 0.05\n"
         "[run]\n"
         "n_steps = 300\nrecord_stride = 4\nsnapshot_stride = 75\nsnapshot_planes = y:24\n"},
        {"fig8_two_solenoids_p064",
         "[grid]\n"
         "nx = 52\nny = 48\nnz = 48\ndelta_nm = 0.05\n"
         "[packet]\n"
         "x0_nm = 0.06\npx_mev_c = 0.64\ncenter_x_nm = -0.4\n"
         "[potential]\n"
         "type = solenoid_pair\nflux_wb = -5.2e-14\nhalf_separation_nm = 0.05\nradius_nm = 0.01\n"
         "[stepper]\n"
         "boundary = damping\ndamping_width_cells = 8\ndamping_strength = 0.05\n"
         "[run]\n"
         "n_steps = 300\nrecord_stride = 4\n"},
        {"fig9_electron_positron",
         "[grid]\n"
         "nx = 48\nny = 44\nnz = 44\ndelta_nm = 0.045\n"
         "[packet]\n"
         "x0_nm = 0.045\npx_mev_c = 0.53\ncenter_x_nm = -0.288\n"
         "[potential]\n"
         "type = solenoid_pair\nflux_wb = -4.2e-14\nhalf_separation_nm = 0.036\nradius_nm = 0.0072\n"
         "[stepper]\n"
         "particle = electron\n"
         "boundary = damping\ndamping_width_cells = 8\ndamping_strength = 0.05\n"
         "[run]\n"
         "n_steps = 260\nrecord_stride = 4\n"},
        {"fig10_oracle_overlay",
         "[grid]\n"
         "nx = 52\nny = 48\nnz = 48\ndelta_nm = 0.05\n"
         "[packet]\n"
         "x0_nm = 0.06\npx_mev_c = 0.53\ncenter_x_nm = -0.4\n"
         "[potential]\n"
         "type = solenoid_pair\nflux_wb = -5.2e-14\nhalf_separation_nm = 0.05\nradius_nm = 0.01\n"
         "[stepper]\n"
         "boundary = damping\ndamping_width_cells = 8\ndamping_strength = 0.05\n"
         "[run]\n"
         "n_steps = 300\nrecord_stride = 2\n"},
    };
    return presets;
}

inline std::string preset_text(const std::string& name) {
    for (const auto& [n, text] : preset_catalog())
        if (n == name) return text;
    throw ConfigError("unknown preset: " + name);
}

inline Scenario load_preset(const std::string& name) {
    return parse_scenario(preset_text(name), name);
}

} // namespace dfdtd
