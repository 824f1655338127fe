#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "convpow/stability.hpp"
#include "convpow/symbol.hpp"

namespace convpow {

/// Expected analysis record for a fixture: maxima in (-pi, pi] sorted
/// ascending, with per-point drift and decay data where pinned.
struct ExpectedAnalysis {
    std::optional<double> normalization;
    std::vector<double> thetas;
    std::optional<double> alpha;
    std::optional<int> nu;
    std::optional<cplx> gamma;
    std::optional<StabilityCase> verdict;
    double tol = 1e-8;
};

struct ExampleFixture {
    std::string name;
    std::string provenance;   // "reference" for values quoted from the source
                              // material, "derived" for independently computed
    std::string description;
    LatticeFunction function;
    std::optional<ExpectedAnalysis> expected;
    // full acceptance assertion; prints one line per check
    std::function<bool(std::ostream&, std::uint64_t seed)> run;
};

const std::vector<ExampleFixture>& fixture_registry();

const ExampleFixture* find_fixture(const std::string& name);

/// Generic expected-analysis assertion used by the analysis fixtures.
bool check_expected_analysis(const LatticeFunction& f, const ExpectedAnalysis& exp,
                             std::ostream& out);

// The worked example functions.
LatticeFunction quartic_smoother();          // (12): -1/9, 4/9, 1/3, 4/9, -1/9
LatticeFunction cubic_drift_family(double a);  // (14): a, 1-3a, 3a, -a on {-1..2}
LatticeFunction cos4_symbol_function();      // 5/8 at 0, -1/4 at +-2, -1/16 at +-4
LatticeFunction three_point(double a0, double ap, double am);
LatticeFunction binomial_smoother(double lambda, int k);  // delta0 - lambda (delta0 - beta)^k

/// Closed-form analysis data for the three-point family.
struct ThreePointForms {
    double A = 0.0;
    struct Pt {
        double theta;
        double alpha;
        cplx gamma;
    };
    std::vector<Pt> points;  // sorted by theta
    bool twin = false;
};
ThreePointForms three_point_forms(double a0, double ap, double am);

}  // namespace convpow
