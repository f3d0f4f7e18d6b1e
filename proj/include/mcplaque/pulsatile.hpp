#pragma once

#include <string>
#include <vector>

namespace mcplaque {

// Phases of the cardiac cycle used as release anchors.
struct CardiacLandmarks {
    double t_ps = 0.16;  // peak systole [s]
    double t_ed = 0.40;  // end of systole / diastolic trough [s]
    double t_ld = 0.90;  // late diastole; the cycle end, identical to t = 0
};

struct WaveformSample {
    double t;          // [s], within [0, period]
    double q_ml_s;     // volumetric flow rate [mL/s]
};

// One period of a volumetric flow-rate waveform, linearly interpolated and
// periodically extended.  Sample times are strictly increasing within
// [0, period]; a final sample exactly at t = period is the cycle-closure
// value.  When the samples do not reach the period, interpolation wraps
// between the last and first samples.
struct PulsatileWaveform {
    std::vector<WaveformSample> samples;
    double period = 0.9;
    CardiacLandmarks landmarks;
};

// Validates and assembles a waveform.  Throws std::invalid_argument on
// fewer than 2 samples, non-increasing or out-of-range times, negative or
// non-finite rates, or a non-positive period.
PulsatileWaveform load_waveform(std::vector<WaveformSample> samples,
                                double period = 0.9,
                                CardiacLandmarks landmarks = {});

// Parse a waveform table: one "time_s,flow_rate_ml_per_s" pair per line,
// '#' comments, optional header line (auto-detected).  Throws
// std::invalid_argument with the offending line number on malformed input.
PulsatileWaveform parse_waveform_table(const std::string& text,
                                       double period = 0.9,
                                       CardiacLandmarks landmarks = {});

// Flow rate at absolute time t >= 0 (periodic extension).
double flow_rate_at(const PulsatileWaveform& w, double t);

// Cycle-averaged flow rate [mL/s], exact trapezoid over one period.
double cycle_mean_flow(const PulsatileWaveform& w);

// Cross-section averaged velocity [m/s] at time t in a vessel of radius r_c.
double mean_velocity_at(const PulsatileWaveform& w, double t, double r_c);

// Uniformly rescaled copy whose cycle-averaged mean velocity in a vessel of
// radius r_c equals target_u_avg.  Idempotent; throws std::domain_error for
// a zero-mean waveform.
PulsatileWaveform normalize_mean(const PulsatileWaveform& w,
                                 double target_u_avg, double r_c);

// The shipped 91-point, 10 ms-spaced digitization of a common-carotid
// flow-rate cycle (period 0.9 s, peak ~24 mL/s at t = 0.16 s, diastolic
// trough at t = 0.40 s, cycle mean ~9.5 mL/s).
const PulsatileWaveform& default_waveform();

}  // namespace mcplaque
