// Copyright 2026 The qdbloch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <numbers>

#include "qdbloch/constants.hpp"
#include "qdbloch/errors.hpp"

namespace qdbloch {

/// Number of pulse durations on each side of the peak kept when the sech
/// envelope is cut off for injection.
inline constexpr double pulse_window_half_width = 10.0;

/// Fraction of the full-line sech area that survives truncation to
/// [-10 tau, 10 tau]: (2/pi) arctan(sinh 10) = 0.999942...
inline double truncated_area_fraction() {
    return 2.0 / std::numbers::pi * std::atan(std::sinh(pulse_window_half_width));
}

/// Hyperbolic-secant pulse. The envelope is E0 sech((t - t0)/tau), the
/// carrier sin(omega0 (t - t0)), and the envelope is cut to
/// |t - t0| <= 10 tau. A k pi-pulse has full-line area
/// (M/hbar) * integral(E0 sech) = M E0 tau pi / hbar = k pi.
struct PulseSpec {
    double E0 = 0.0;      // peak amplitude, V/m
    double tau = 50e-15;  // duration, s
    double omega0 = 0.0;  // carrier angular frequency, rad/s
    double k = 0.0;       // pulse-area multiple the amplitude was derived from (0 = explicit E0)

    double envelope(double t_minus_t0) const {
        const double x = t_minus_t0 / tau;
        if (std::abs(x) > pulse_window_half_width) return 0.0;
        return E0 / std::cosh(x);
    }

    double field(double t_minus_t0) const {
        return envelope(t_minus_t0) * std::sin(omega0 * t_minus_t0);
    }
};

/// Peak amplitude that makes the truncated numerical area of a k pi-pulse
/// exactly k pi: E0 = k hbar / (M tau f) with f the truncated area fraction.
inline double corrected_amplitude(double k, double dipole, double tau) {
    if (!(k > 0.0)) throw ConfigError("corrected_amplitude: k must be positive");
    if (!(dipole > 0.0) || !(tau > 0.0)) {
        throw ConfigError("corrected_amplitude: dipole moment and tau must be positive");
    }
    return k * hbar / (dipole * tau * truncated_area_fraction());
}

inline PulseSpec make_kpi_pulse(double k, double dipole, double tau, double omega0) {
    PulseSpec p;
    p.E0 = corrected_amplitude(k, dipole, tau);
    p.tau = tau;
    p.omega0 = omega0;
    p.k = k;
    return p;
}

/// Envelope area (M/hbar) * integral of E0 sech((t-t0)/tau) over the cutoff
/// window, by composite Simpson quadrature. Radians.
inline double pulse_area(const PulseSpec& pulse, double dipole,
                         double window_half_width = pulse_window_half_width) {
    const int n = 1 << 15;  // interval count; quadrature error far below 1e-12 relative
    const double a = -window_half_width;
    const double h = 2.0 * window_half_width / n;
    auto f = [](double x) { return 1.0 / std::cosh(x); };
    double sum = f(a) + f(-a);
    for (int i = 1; i < n; ++i) {
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    const double integral_dimensionless = sum * h / 3.0;
    return dipole / hbar * pulse.E0 * pulse.tau * integral_dimensionless;
}

}  // namespace qdbloch
