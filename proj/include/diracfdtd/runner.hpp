// runner.hpp - step loop with strided observable recording and read-only
// observer callbacks.

#pragma once

#include <functional>
#include <vector>

#include "diracfdtd/observables.hpp"
#include "diracfdtd/stepper.hpp"

namespace dfdtd {

/// Read-only callback invoked after every `stride` full steps (and at
/// step 0 before any stepping).
struct Observer {
    long stride = 1;
    std::function<void(long step, const SpinorField&)> fn;
};

/// Runs `n_steps` full steps, recording an ObservableRecord every
/// `record_stride` steps (including step 0). On numerical blow-up the
/// partial series is returned with its failure marker set.
inline ObservableSeries run(SpinorField& field, const PotentialGrid& pot,
                            const StepperConfig& cfg, long n_steps,
                            long record_stride = 1,
                            const std::vector<Observer>& observers = {}) {
    if (n_steps < 0) throw std::invalid_argument("run: n_steps must be >= 0");
    if (record_stride < 1) throw std::invalid_argument("run: record_stride must be >= 1");
    cfg.validate(field.grid);

    ObservableSeries series;
    series.records.push_back(measure_record(field, pot, cfg));
    for (const auto& o : observers)
        if (o.fn) o.fn(0, field);

    for (long s = 1; s <= n_steps; ++s) {
        try {
            step(field, pot, cfg);
        } catch (const BlowUpError&) {
            series.failed = true;
            series.failed_step = s;
            break;
        }
        if (s % record_stride == 0)
            series.records.push_back(measure_record(field, pot, cfg));
        for (const auto& o : observers)
            if (o.fn && s % o.stride == 0) o.fn(s, field);
    }
    fill_velocities(series);
    return series;
}

} // namespace dfdtd
