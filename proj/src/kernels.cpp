#include "convpow/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "convpow/quadrature.hpp"

namespace convpow {

namespace {

void validate(const KernelSpec& spec) {
    if (spec.parity == KernelParity::OddAiry) {
        if (spec.m != 3 || spec.b != 0.0)
            throw std::invalid_argument("KernelSpec: OddAiry requires m = 3, b = 0");
        return;
    }
    if (spec.m < 2 || spec.m % 2 != 0) {
        if (spec.m % 2 != 0)
            throw std::invalid_argument("KernelSpec: odd orders other than 3 are unsupported");
        throw std::invalid_argument("KernelSpec: m must be >= 2");
    }
}

struct SeriesDiverged {};

}  // namespace

KernelEvaluator::KernelEvaluator(KernelSpec spec) : spec_(spec) {
    validate(spec_);
    if (spec_.parity == KernelParity::OddAiry) return;

    x_switch_ = spec_.m <= 4 ? 6.0 : 8.0;
    // truncation with e^{-T^m} <= 1e-18
    tail_limit_ = std::pow(18.0 * std::log(10.0), 1.0 / static_cast<double>(spec_.m));

    // Far-field cutoff: march outward until the quadrature value stays below
    // 1e-17 at three consecutive integer abscissae. The envelope of |H|
    // decays monotonically, so everything beyond is smaller still.
    int below = 0;
    double x = x_switch_;
    while (below < 3 && x < 400.0) {
        x += 1.0;
        if (std::abs(quadrature_branch(x)) < 1e-17)
            ++below;
        else
            below = 0;
    }
    x_far_ = x;
}

cplx KernelEvaluator::series_branch(double x) const {
    const int m = spec_.m;
    const double b = spec_.b;
    // H(x) = (1/(m pi)) sum_n (-x^2)^n Gamma((2n+1)/m) (1+ib)^{-(2n+1)/m} / (2n)!
    const double log1pb2 = 0.5 * std::log1p(b * b);
    const double phase_b = std::atan(b);
    const double x2 = x * x;

    cplx sum(0.0, 0.0);
    // first term and ratio recurrence; Gamma ratios through lgamma keep the
    // intermediate magnitudes representable
    double log_mag = std::lgamma(1.0 / m) - (1.0 / m) * log1pb2;
    double arg = -(1.0 / m) * phase_b;
    int sign = 1;
    int growth_streak = 0;
    double prev_mag = 0.0;
    for (int n = 0; n < 4000; ++n) {
        const double mag = std::exp(log_mag);
        const cplx term = static_cast<double>(sign) * std::polar(mag, arg);
        sum += term;
        if (mag < 1e-16 * std::abs(sum) && n > 0) {
            return sum / (static_cast<double>(m) * M_PI);
        }
        if (n > 0 && mag > prev_mag) {
            if (++growth_streak >= 60) throw SeriesDiverged{};
        } else {
            growth_streak = 0;
        }
        prev_mag = mag;
        // advance to term n+1
        if (x2 == 0.0) return sum / (static_cast<double>(m) * M_PI);
        const double a0 = (2.0 * n + 1.0) / m, a1 = (2.0 * n + 3.0) / m;
        log_mag += std::log(x2) + std::lgamma(a1) - std::lgamma(a0) - (2.0 / m) * log1pb2 -
                   std::log((2.0 * n + 1.0) * (2.0 * n + 2.0));
        arg -= (2.0 / m) * phase_b;
        sign = -sign;
    }
    throw SeriesDiverged{};
}

cplx KernelEvaluator::quadrature_branch(double x) const {
    const int m = spec_.m;
    const double b = spec_.b;
    const double T = tail_limit_;
    const auto damp = [m](double xi) { return std::exp(-std::pow(xi, m)); };
    const double re = filon_cos([&](double xi) { return damp(xi) * std::cos(b * std::pow(xi, m)); },
                                0.0, T, std::abs(x), 1e-12) /
                      M_PI;
    double im = 0.0;
    if (b != 0.0)
        im = -filon_cos([&](double xi) { return damp(xi) * std::sin(b * std::pow(xi, m)); }, 0.0, T,
                        std::abs(x), 1e-12) /
             M_PI;
    return cplx(re, im);
}

cplx KernelEvaluator::operator()(double x) const {
    if (std::abs(x) > 1e6) throw std::invalid_argument("eval_kernel: |x| too large");
    if (spec_.parity == KernelParity::OddAiry) {
        const double d = std::pow(3.0, -1.0 / 3.0);
        return cplx(d * airy_ai(-d * x), 0.0);
    }
    const double ax = std::abs(x);
    if (ax <= x_switch_) {
        try {
            return series_branch(x);
        } catch (const SeriesDiverged&) {
            return quadrature_branch(x);
        }
    }
    if (ax >= x_far_) return cplx(0.0, 0.0);
    return quadrature_branch(x);
}

cplx eval_kernel(const KernelSpec& spec, double x) { return KernelEvaluator(spec)(x); }

cplx kernel_normalization(const KernelSpec& spec) {
    if (spec.parity != KernelParity::Even)
        throw std::invalid_argument("kernel_normalization: even parity required");
    const KernelEvaluator H(spec);
    const double R = H.far_cutoff();
    const double re =
        adaptive_simpson([&](double x) { return H(x).real(); }, 0.0, R, 1e-11);
    double im = 0.0;
    if (spec.b != 0.0)
        im = adaptive_simpson([&](double x) { return H(x).imag(); }, 0.0, R, 1e-11);
    return 2.0 * cplx(re, im);  // even integrand
}

std::pair<double, double> kernel_decay_fit(const KernelSpec& spec, double x_max, double c) {
    if (spec.parity != KernelParity::Even)
        throw std::invalid_argument("kernel_decay_fit: even parity required");
    const KernelEvaluator H(spec);
    const double expo = static_cast<double>(spec.m) / (spec.m - 1.0);
    const int npts = 1201;
    double C = 0.0;
    for (int i = 0; i < npts; ++i) {
        const double x = x_max * static_cast<double>(i) / (npts - 1);
        const double needed = std::abs(H(x)) * std::exp(c * std::pow(x, expo));
        C = std::fmax(C, needed);
    }
    return {C, c};
}

namespace {

// Maclaurin two-series form of Ai.
double airy_series(double z) {
    static const double c1 = std::pow(3.0, -2.0 / 3.0) / std::tgamma(2.0 / 3.0);
    static const double c2 = std::pow(3.0, -1.0 / 3.0) / std::tgamma(1.0 / 3.0);
    const double z3 = z * z * z;
    double f = 1.0, g = z;
    double tf = 1.0, tg = z;
    for (int k = 0; k < 200; ++k) {
        tf *= z3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
        tg *= z3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
        f += tf;
        g += tg;
        if (std::abs(tf) < 1e-17 * std::abs(f) && std::abs(tg) < 1e-17 * std::fmax(std::abs(g), 1.0))
            break;
    }
    return c1 * f - c2 * g;
}

// Asymptotic series coefficients u_k, by ratio.
double asym_sum_pos(double zeta) {
    double u = 1.0, sum = 1.0, prev = 1.0;
    for (int k = 0; k < 40; ++k) {
        u *= (3.0 * k + 0.5) * (3.0 * k + 1.5) * (3.0 * k + 2.5) /
             (54.0 * (k + 1.0) * (k + 0.5));
        const double term = (k % 2 == 0 ? -1.0 : 1.0) * u / std::pow(zeta, k + 1);
        if (std::abs(term) > prev) break;  // asymptotic tail turned
        sum += term;
        prev = std::abs(term);
    }
    return sum;
}

double airy_asym_pos(double z) {
    const double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    if (zeta > 700.0) return 0.0;
    return std::exp(-zeta) / (2.0 * std::sqrt(M_PI) * std::pow(z, 0.25)) * asym_sum_pos(zeta);
}

double airy_asym_neg(double za) {
    // Ai(-za), za > 0
    const double zeta = 2.0 / 3.0 * std::pow(za, 1.5);
    double u = 1.0;
    double p = 1.0, q = 0.0;
    double mag_prev = 1.0;
    for (int k = 1; k < 80; ++k) {
        u *= (3.0 * (k - 1) + 0.5) * (3.0 * (k - 1) + 1.5) * (3.0 * (k - 1) + 2.5) /
             (54.0 * k * (k - 0.5));
        const double term = u / std::pow(zeta, k);
        if (term > mag_prev) break;
        mag_prev = term;
        const int r = k % 4;
        if (r == 1) q += term;         // + u1/zeta, ...
        else if (r == 2) p -= term;    // - u2/zeta^2
        else if (r == 3) q -= term;    // - u3/zeta^3
        else p += term;                // + u4/zeta^4
    }
    const double phase = zeta + M_PI / 4.0;
    return (std::sin(phase) * p - std::cos(phase) * q) /
           (std::sqrt(M_PI) * std::pow(za, 0.25));
}

}  // namespace

double airy_ai(double z) {
    if (std::abs(z) <= 8.0) return airy_series(z);
    if (z > 0.0) return airy_asym_pos(z);
    return airy_asym_neg(-z);
}

}  // namespace convpow
