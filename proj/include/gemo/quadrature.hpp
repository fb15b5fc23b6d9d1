#pragma once

#include <functional>

namespace gemo::quad {

struct SimpsonOptions {
    double abs_tol = 1e-10;
    int max_depth = 48;
    /// Uniform pre-split depth before adaptivity starts (2^min_depth panels);
    /// keeps narrow peaks from slipping between the first three samples.
    int min_depth = 4;
};

/// Adaptive composite Simpson with Richardson correction on [a, b].
/// Throws ConvergenceError naming the offending subinterval when a panel
/// cannot reach its share of the tolerance within max_depth bisections.
[[nodiscard]] double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                      const SimpsonOptions& opt = {});

/// Integral over a possibly unbounded interval (lo/hi may be ±infinity).
/// Infinite ends are mapped with x = c + scale·tan(θ); the integrand must decay.
/// Non-finite integrand values at the mapped end points are treated as 0.
[[nodiscard]] double integrate_line(const std::function<double(double)>& f, double lo, double hi,
                                    double scale = 1.0, const SimpsonOptions& opt = {});

} // namespace gemo::quad
