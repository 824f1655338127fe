#include "convpow/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace convpow {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    int max_depth;
};

double simpson_rule(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_recurse(const SimpsonState& st, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st.f(lm), frm = st.f(rm);
    const double left = simpson_rule(fa, flm, fm, a, m);
    const double right = simpson_rule(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (depth >= st.max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

// Weight functions of the classical Filon rule, with series fallback for
// small arguments where the closed forms cancel.
void filon_weights(double theta, double& alpha, double& beta, double& gamma) {
    if (std::abs(theta) < 1.0 / 16.0) {
        const double t2 = theta * theta;
        alpha = theta * t2 * (2.0 / 45.0 + t2 * (-2.0 / 315.0 + t2 * (2.0 / 4725.0)));
        beta = 2.0 / 3.0 + t2 * (2.0 / 15.0 + t2 * (-4.0 / 105.0 + t2 * (2.0 / 567.0)));
        gamma = 4.0 / 3.0 + t2 * (-2.0 / 15.0 + t2 * (1.0 / 210.0 + t2 * (-1.0 / 11340.0)));
        return;
    }
    const double s = std::sin(theta), c = std::cos(theta);
    const double t3 = theta * theta * theta;
    alpha = (theta * theta + theta * s * c - 2.0 * s * s) / t3;
    beta = 2.0 * (theta * (1.0 + c * c) - 2.0 * s * c) / t3;
    gamma = 4.0 * (s - theta * c) / t3;
}

enum class Kernel { Cos, Sin };

double filon_once(const std::function<double(double)>& g, double a, double b, double omega,
                  std::size_t n, Kernel kernel) {
    const double h = (b - a) / (2.0 * static_cast<double>(n));
    double alpha, beta, gamma;
    filon_weights(omega * h, alpha, beta, gamma);

    double c_even = 0.0, c_odd = 0.0;
    for (std::size_t i = 0; i <= 2 * n; ++i) {
        const double x = a + h * static_cast<double>(i);
        const double trig = kernel == Kernel::Cos ? std::cos(omega * x) : std::sin(omega * x);
        double w = g(x) * trig;
        if (i % 2 == 0) {
            if (i == 0 || i == 2 * n) w *= 0.5;
            c_even += w;
        } else {
            c_odd += w;
        }
    }
    double boundary;
    if (kernel == Kernel::Cos)
        boundary = g(b) * std::sin(omega * b) - g(a) * std::sin(omega * a);
    else
        boundary = g(a) * std::cos(omega * a) - g(b) * std::cos(omega * b);
    return h * (alpha * boundary + beta * c_even + gamma * c_odd);
}

double filon_adaptive(const std::function<double(double)>& g, double a, double b, double omega,
                      double abs_tol, Kernel kernel) {
    if (a == b) return 0.0;
    if (omega < 0.0) {
        if (kernel == Kernel::Cos) return filon_adaptive(g, a, b, -omega, abs_tol, kernel);
        return -filon_adaptive(g, a, b, -omega, abs_tol, kernel);
    }
    std::size_t n = 64;
    double prev = filon_once(g, a, b, omega, n, kernel);
    for (n *= 2; n <= (1u << 21); n *= 2) {
        const double cur = filon_once(g, a, b, omega, n, kernel);
        if (std::abs(cur - prev) <= std::fmax(abs_tol, 1e-16)) return cur;
        prev = cur;
    }
    return prev;
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth) {
    if (a == b) return 0.0;
    const SimpsonState st{f, max_depth};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson_rule(fa, fm, fb, a, b);
    return simpson_recurse(st, a, b, fa, fm, fb, whole, abs_tol, 0);
}

double filon_cos(const std::function<double(double)>& g, double a, double b, double omega,
                 double abs_tol) {
    return filon_adaptive(g, a, b, omega, abs_tol, Kernel::Cos);
}

double filon_sin(const std::function<double(double)>& g, double a, double b, double omega,
                 double abs_tol) {
    return filon_adaptive(g, a, b, omega, abs_tol, Kernel::Sin);
}

}  // namespace convpow
