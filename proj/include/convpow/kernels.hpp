#pragma once

#include <complex>
#include <utility>

#include "convpow/lattice_function.hpp"

namespace convpow {

enum class KernelParity { Even, OddAiry };

/// Attractor kernel specification: the inverse Fourier transform of
/// e^{-(1+ib) xi^m} for even m, or the order-3 kernel expressed through the
/// Airy function (m = 3, b = 0).
struct KernelSpec {
    int m = 2;
    double b = 0.0;
    KernelParity parity = KernelParity::Even;

    static KernelSpec even(int m, double b = 0.0) { return {m, b, KernelParity::Even}; }
    static KernelSpec airy() { return {3, 0.0, KernelParity::OddAiry}; }
};

/// Evaluator with a per-spec cached switch point between the power-series
/// branch and the oscillatory-quadrature branch, plus a far-field cutoff
/// below which values are returned as zero.
class KernelEvaluator {
  public:
    explicit KernelEvaluator(KernelSpec spec);

    cplx operator()(double x) const;

    // branch internals, exposed for overlap checks
    cplx series_branch(double x) const;
    cplx quadrature_branch(double x) const;

    double switch_point() const { return x_switch_; }
    double far_cutoff() const { return x_far_; }
    const KernelSpec& spec() const { return spec_; }

  private:
    KernelSpec spec_;
    double x_switch_ = 0.0;
    double x_far_ = 0.0;
    double tail_limit_ = 0.0;  // quadrature truncation point
};

cplx eval_kernel(const KernelSpec& spec, double x);

/// Numerical integral of the kernel over the real line (even parity only);
/// equals 1 for any admissible (m, b).
cplx kernel_normalization(const KernelSpec& spec);

/// Smallest C such that |H(x)| <= C exp(-c |x|^{m/(m-1)}) on a grid over
/// [0, x_max], at fixed rate c. Returns (C, c).
std::pair<double, double> kernel_decay_fit(const KernelSpec& spec, double x_max, double c = 0.1);

/// Airy function Ai on the real line: Maclaurin two-series form for
/// |z| <= 8, asymptotic expansions beyond.
double airy_ai(double z);

}  // namespace convpow
