#pragma once

#include <optional>
#include <vector>

#include "convpow/symbol.hpp"

namespace convpow {

enum class StabilityCase { TrivialShift, Stable, Unstable };

struct PointWitness {
    double theta = 0.0;
    PointKind kind = PointKind::Degenerate;
    int mu = 0;
    int nu = 0;
};

/// Outcome of the boundedness trichotomy for the iterated convolution norms:
/// a pure shift, uniformly bounded l1 norms, or polynomial growth with
/// exponent (1 - mu/nu)/2 taken over the drift-dominated maxima.
struct StabilityVerdict {
    StabilityCase verdict = StabilityCase::Stable;
    std::optional<double> growth_exponent;  // present iff Unstable and nu known
    std::vector<PointWitness> witnesses;
};

/// Requires the analysis to be normalized (A = 1 within 1e-9).
StabilityVerdict classify_stability(const SymbolAnalysis& analysis, const LatticeFunction& f);

/// Least-squares slope of log ||f^(n)||_1 against log n over a geometric grid
/// of at least `points` values in [n_min, n_max].
double growth_exponent_fit(const LatticeFunction& f, std::int64_t n_min, std::int64_t n_max,
                           int points = 12);

}  // namespace convpow
