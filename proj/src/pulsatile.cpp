#include "mcplaque/pulsatile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mcplaque {

PulsatileWaveform load_waveform(std::vector<WaveformSample> samples,
                                double period, CardiacLandmarks landmarks) {
    if (!(period > 0.0))
        throw std::invalid_argument("load_waveform: period must be positive");
    if (samples.size() < 2)
        throw std::invalid_argument("load_waveform: need at least 2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (!std::isfinite(s.t) || !std::isfinite(s.q_ml_s))
            throw std::invalid_argument("load_waveform: non-finite sample");
        if (!(s.q_ml_s >= 0.0))
            throw std::invalid_argument("load_waveform: negative flow rate");
        if (!(s.t >= 0.0 && s.t <= period))
            throw std::invalid_argument(
                "load_waveform: sample time outside [0, period]");
        if (i > 0 && !(s.t > samples[i - 1].t))
            throw std::invalid_argument(
                "load_waveform: sample times must be strictly increasing");
    }
    return PulsatileWaveform{std::move(samples), period, landmarks};
}

PulsatileWaveform parse_waveform_table(const std::string& text, double period,
                                       CardiacLandmarks landmarks) {
    std::vector<WaveformSample> samples;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;  // blank / comment-only
        const auto comma = line.find(',');
        double t = 0.0, q = 0.0;
        bool ok = comma != std::string::npos;
        if (ok) {
            try {
                std::size_t used_t = 0, used_q = 0;
                const std::string left = line.substr(0, comma);
                const std::string right = line.substr(comma + 1);
                t = std::stod(left, &used_t);
                q = std::stod(right, &used_q);
                ok = left.find_first_not_of(" \t\r", used_t) == std::string::npos &&
                     right.find_first_not_of(" \t\r", used_q) == std::string::npos;
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok) {
            if (header_allowed) {  // first data-looking line may be a header
                header_allowed = false;
                continue;
            }
            throw std::invalid_argument("parse_waveform_table: line " +
                                        std::to_string(line_no) +
                                        ": expected 'time_s,flow_rate_ml_per_s'");
        }
        header_allowed = false;
        samples.push_back({t, q});
    }
    if (samples.size() < 2)
        throw std::invalid_argument(
            "parse_waveform_table: fewer than 2 samples in table");
    return load_waveform(std::move(samples), period, landmarks);
}

double flow_rate_at(const PulsatileWaveform& w, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::domain_error("flow_rate_at: t must be finite and nonnegative");
    const auto& s = w.samples;
    double phase = std::fmod(t, w.period);
    if (phase < 0.0) phase += w.period;
    const double t_first = s.front().t;
    const double t_last = s.back().t;
    if (phase < t_first || phase >= t_last) {
        // wrap segment between the last and (first + period) samples
        const double span = w.period - t_last + t_first;
        if (span <= 0.0) return s.back().q_ml_s;  // table reaches the period
        double d = phase >= t_last ? phase - t_last : phase + w.period - t_last;
        const double f = d / span;
        return s.back().q_ml_s + f * (s.front().q_ml_s - s.back().q_ml_s);
    }
    auto it = std::upper_bound(
        s.begin(), s.end(), phase,
        [](double v, const WaveformSample& smp) { return v < smp.t; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double f = (phase - lo.t) / (hi.t - lo.t);
    return lo.q_ml_s + f * (hi.q_ml_s - lo.q_ml_s);
}

double cycle_mean_flow(const PulsatileWaveform& w) {
    const auto& s = w.samples;
    double integral = 0.0;  // [mL]
    for (std::size_t i = 1; i < s.size(); ++i)
        integral += 0.5 * (s[i].q_ml_s + s[i - 1].q_ml_s) * (s[i].t - s[i - 1].t);
    // wrap segment (zero-length when the table reaches the period)
    const double span = w.period - s.back().t + s.front().t;
    integral += 0.5 * (s.back().q_ml_s + s.front().q_ml_s) * span;
    return integral / w.period;
}

double mean_velocity_at(const PulsatileWaveform& w, double t, double r_c) {
    if (!(r_c > 0.0))
        throw std::domain_error("mean_velocity_at: r_c must be positive");
    // mL/s -> m^3/s over the lumen area
    return flow_rate_at(w, t) * 1.0e-6 / (std::numbers::pi * r_c * r_c);
}

PulsatileWaveform normalize_mean(const PulsatileWaveform& w,
                                 double target_u_avg, double r_c) {
    if (!(target_u_avg > 0.0))
        throw std::domain_error("normalize_mean: target_u_avg must be positive");
    if (!(r_c > 0.0))
        throw std::domain_error("normalize_mean: r_c must be positive");
    const double mean_q = cycle_mean_flow(w);
    if (!(mean_q > 0.0))
        throw std::domain_error("normalize_mean: waveform has zero mean flow");
    const double target_q = target_u_avg * std::numbers::pi * r_c * r_c * 1.0e6;
    const double scale = target_q / mean_q;
    // an already-normalized waveform comes back unchanged (idempotence),
    // even when the recomputed mean is a few ulp off the target
    if (std::abs(scale - 1.0) < 8.0 * std::numeric_limits<double>::epsilon())
        return w;
    PulsatileWaveform out = w;
    for (auto& smp : out.samples) smp.q_ml_s *= scale;
    return out;
}

}  // namespace mcplaque
