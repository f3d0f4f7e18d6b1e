#include "mcplaque/pulsatile.hpp"

namespace mcplaque {

// 91-point, 10 ms-spaced digitization of one common-carotid flow-rate cycle:
// systolic foot ~7.7 mL/s, upstroke from ~0.05 s, peak 24.0 mL/s at 0.16 s,
// diastolic trough 5.80 mL/s at 0.40 s, secondary bump 7.40 mL/s near 0.50 s,
// gentle recovery to the cycle-closure value 8.00 mL/s = Q(0).
const PulsatileWaveform& default_waveform() {
    static const PulsatileWaveform w = load_waveform(
        {
            {0.00, 8.00},  {0.01, 7.85},  {0.02, 7.75},  {0.03, 7.68},
            {0.04, 7.65},  {0.05, 7.80},  {0.06, 8.60},  {0.07, 10.60},
            {0.08, 14.00}, {0.09, 18.60}, {0.10, 21.80}, {0.11, 22.90},
            {0.12, 23.40}, {0.13, 23.68}, {0.14, 23.85}, {0.15, 23.95},
            {0.16, 24.00}, {0.17, 23.40}, {0.18, 22.10}, {0.19, 20.20},
            {0.20, 17.80}, {0.21, 15.26}, {0.22, 13.00}, {0.23, 11.31},
            {0.24, 10.00}, {0.25, 9.04},  {0.26, 8.30},  {0.27, 7.74},
            {0.28, 7.30},  {0.29, 6.97},  {0.30, 6.70},  {0.31, 6.48},
            {0.32, 6.30},  {0.33, 6.16},  {0.34, 6.05},  {0.35, 5.98},
            {0.36, 5.92},  {0.37, 5.87},  {0.38, 5.84},  {0.39, 5.81},
            {0.40, 5.80},  {0.41, 5.88},  {0.42, 6.05},  {0.43, 6.26},
            {0.44, 6.50},  {0.45, 6.74},  {0.46, 6.95},  {0.47, 7.12},
            {0.48, 7.25},  {0.49, 7.35},  {0.50, 7.40},  {0.51, 7.39},
            {0.52, 7.38},  {0.53, 7.35},  {0.54, 7.33},  {0.55, 7.30},
            {0.56, 7.27},  {0.57, 7.23},  {0.58, 7.20},  {0.59, 7.17},
            {0.60, 7.15},  {0.61, 7.14},  {0.62, 7.13},  {0.63, 7.13},
            {0.64, 7.12},  {0.65, 7.12},  {0.66, 7.12},  {0.67, 7.13},
            {0.68, 7.13},  {0.69, 7.14},  {0.70, 7.15},  {0.71, 7.16},
            {0.72, 7.18},  {0.73, 7.20},  {0.74, 7.22},  {0.75, 7.25},
            {0.76, 7.28},  {0.77, 7.32},  {0.78, 7.36},  {0.79, 7.41},
            {0.80, 7.45},  {0.81, 7.50},  {0.82, 7.54},  {0.83, 7.59},
            {0.84, 7.65},  {0.85, 7.70},  {0.86, 7.76},  {0.87, 7.81},
            {0.88, 7.87},  {0.89, 7.94},  {0.90, 8.00},
        },
        0.9);
    return w;
}

}  // namespace mcplaque
