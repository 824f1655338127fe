#include "convpow/stability.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace convpow {

StabilityVerdict classify_stability(const SymbolAnalysis& analysis, const LatticeFunction& f) {
    if (std::abs(analysis.normalization - 1.0) > 1e-9)
        throw std::invalid_argument("classify_stability: analysis must be normalized to A = 1");

    StabilityVerdict v;
    for (const auto& p : analysis.points)
        v.witnesses.push_back({p.theta, p.kind, p.mu, p.nu});

    if (f.support_width() == 1 && std::abs(std::abs(f.coeffs()[0]) - 1.0) <= 1e-9) {
        v.verdict = StabilityCase::TrivialShift;
        return v;
    }

    bool all_even = true;
    bool any_drift = false;
    for (const auto& p : analysis.points) {
        if (p.kind == PointKind::Degenerate)
            throw std::runtime_error("inconclusive expansion");
        if (p.kind != PointKind::EvenDecay) all_even = false;
        if (p.kind == PointKind::OddDrift) any_drift = true;
    }

    if (all_even) {
        v.verdict = StabilityCase::Stable;
        return v;
    }
    v.verdict = StabilityCase::Unstable;
    if (any_drift) {
        double best = -1.0;
        bool have = false;
        for (const auto& p : analysis.points) {
            if (p.kind != PointKind::OddDrift || p.nu == 0) continue;
            const double e =
                0.5 * (1.0 - static_cast<double>(p.mu) / static_cast<double>(p.nu));
            if (e > best) best = e;
            have = true;
        }
        if (have) v.growth_exponent = best;
    }
    return v;
}

double growth_exponent_fit(const LatticeFunction& f, std::int64_t n_min, std::int64_t n_max,
                           int points) {
    if (n_min < 100 || n_max > 8192 || n_max < 4 * n_min)
        throw std::invalid_argument("growth_exponent_fit: need 100 <= n_min, n_max <= 8192, n_max >= 4 n_min");
    if (points < 2) throw std::invalid_argument("growth_exponent_fit: need at least 2 grid points");

    // geometric grid; widen the sample count until rounding collisions leave
    // at least `points` distinct values
    std::set<std::int64_t> grid;
    const double ratio = static_cast<double>(n_max) / static_cast<double>(n_min);
    for (int m = points; grid.size() < static_cast<std::size_t>(points) && m <= 64 * points; m *= 2) {
        grid.clear();
        for (int i = 0; i < m; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(m - 1);
            grid.insert(static_cast<std::int64_t>(
                std::llround(static_cast<double>(n_min) * std::pow(ratio, t))));
        }
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double count = 0.0;
    for (const std::int64_t n : grid) {
        const double norm = l1_norm(power(f, n, PowerMethod::Fft));
        if (!std::isfinite(norm) || norm <= 0.0)
            throw std::runtime_error("growth_exponent_fit: non-finite norm");
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(norm);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        count += 1.0;
    }
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (count * sxy - sx * sy) / denom;
}

}  // namespace convpow
