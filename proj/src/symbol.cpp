#include "convpow/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace convpow {

namespace {

constexpr int kMaxDerivativeOrder = 32;

double abs2(const cplx& z) { return z.real() * z.real() + z.imag() * z.imag(); }

// d/dtheta |symbol|^2 = 2 Re(symbol' conj(symbol)), and its derivative.
double mod2_deriv(const LatticeFunction& f, double theta) {
    const cplx s = eval_symbol(f, theta);
    const cplx s1 = symbol_derivative(f, theta, 1);
    return 2.0 * (s1 * std::conj(s)).real();
}

double mod2_deriv2(const LatticeFunction& f, double theta) {
    const cplx s = eval_symbol(f, theta);
    const cplx s1 = symbol_derivative(f, theta, 1);
    const cplx s2 = symbol_derivative(f, theta, 2);
    return 2.0 * ((s2 * std::conj(s)).real() + abs2(s1));
}

double golden_section_max(const LatticeFunction& f, double a, double b) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = abs2(eval_symbol(f, c));
    double fd = abs2(eval_symbol(f, d));
    for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = abs2(eval_symbol(f, c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = abs2(eval_symbol(f, d));
        }
    }
    return 0.5 * (a + b);
}

// log of a power series with unit constant term: t_0 = 1, returns c_1..c_J
// via j t_j = sum_{i<=j} i c_i t_{j-i}.
std::vector<cplx> log_series(const std::vector<cplx>& t) {
    const std::size_t J = t.size() - 1;
    std::vector<cplx> c(J + 1, cplx(0.0, 0.0));
    for (std::size_t j = 1; j <= J; ++j) {
        cplx acc = static_cast<double>(j) * t[j];
        for (std::size_t i = 1; i < j; ++i) acc -= static_cast<double>(i) * c[i] * t[j - i];
        c[j] = acc / static_cast<double>(j);
    }
    return c;  // c[0] unused
}

}  // namespace

double wrap_angle(double theta) {
    double t = std::remainder(theta, 2.0 * M_PI);
    if (t <= -M_PI) t += 2.0 * M_PI;
    return t;
}

cplx eval_symbol(const LatticeFunction& f, double theta) {
    cplx s(0.0, 0.0);
    std::int64_t x = f.min_index();
    for (const auto& v : f.coeffs()) {
        s += v * std::polar(1.0, static_cast<double>(x) * theta);
        ++x;
    }
    return s;
}

cplx symbol_derivative(const LatticeFunction& f, double theta, int k) {
    if (k < 0 || k > kMaxDerivativeOrder)
        throw std::invalid_argument("symbol_derivative: unsupported order");
    if (k == 0) return eval_symbol(f, theta);
    cplx s(0.0, 0.0);
    std::int64_t x = f.min_index();
    for (const auto& v : f.coeffs()) {
        const cplx ix(0.0, static_cast<double>(x));
        cplx w = v;
        for (int j = 0; j < k; ++j) w *= ix;
        s += w * std::polar(1.0, static_cast<double>(x) * theta);
        ++x;
    }
    return s;
}

std::vector<double> find_max_modulus_points(const LatticeFunction& f, double tol) {
    if (f.is_zero()) throw std::invalid_argument("find_max_modulus_points: zero function");
    if (f.support_width() == 1) return {0.0};  // flat modulus

    const std::int64_t width = f.support_width();
    const std::size_t grid_n =
        std::max<std::size_t>(1024, static_cast<std::size_t>(32 * width));
    std::vector<double> g(grid_n);
    double grid_max = 0.0;
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double th = -M_PI + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(grid_n);
        g[i] = abs2(eval_symbol(f, th));
        grid_max = std::max(grid_max, g[i]);
    }
    const double residual_scale = std::max(1.0, grid_max);

    std::vector<double> refined;
    std::vector<double> refined_mod2;
    const double h = 2.0 * M_PI / static_cast<double>(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) {
        const std::size_t prev = (i + grid_n - 1) % grid_n;
        const std::size_t next = (i + 1) % grid_n;
        if (!(g[i] >= g[prev] && g[i] >= g[next])) continue;
        const double th0 = -M_PI + h * static_cast<double>(i);
        const double lo = th0 - h, hi = th0 + h;
        double th = th0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const double d1 = mod2_deriv(f, th);
            if (std::abs(d1) <= 1e-13 * residual_scale) {
                converged = true;
                break;
            }
            const double d2 = mod2_deriv2(f, th);
            if (d2 == 0.0) break;
            double step = d1 / d2;
            double cand = th - step;
            if (cand < lo || cand > hi) cand = std::clamp(cand, lo, hi);
            if (cand == th) break;
            th = cand;
        }
        if (!converged) {
            th = golden_section_max(f, lo, hi);
            if (std::abs(mod2_deriv(f, th)) > 1e-9 * residual_scale)
                throw std::runtime_error("maximum refinement failed");
        }
        refined.push_back(wrap_angle(th));
        refined_mod2.push_back(abs2(eval_symbol(f, th)));
    }
    if (refined.empty()) throw std::runtime_error("maximum refinement failed");

    const double A = std::sqrt(*std::max_element(refined_mod2.begin(), refined_mod2.end()));
    const double keep_level = A * (1.0 - tol);

    // sort by angle, keep near-max ones, dedupe within 1e-8 (circularly)
    std::vector<std::pair<double, double>> cand;  // (theta, modulus)
    for (std::size_t i = 0; i < refined.size(); ++i) {
        const double mod = std::sqrt(refined_mod2[i]);
        if (mod >= keep_level) cand.emplace_back(refined[i], mod);
    }
    std::sort(cand.begin(), cand.end());
    std::vector<std::pair<double, double>> dedup;
    for (const auto& [th, mod] : cand) {
        if (!dedup.empty() && th - dedup.back().first < 1e-8) {
            if (mod > dedup.back().second) dedup.back() = {th, mod};
        } else {
            dedup.emplace_back(th, mod);
        }
    }
    // circular wrap: -pi ~ pi
    if (dedup.size() > 1 &&
        (dedup.front().first + M_PI) + (M_PI - dedup.back().first) < 1e-8) {
        if (dedup.back().second > dedup.front().second)
            dedup.front() = dedup.back();
        dedup.pop_back();
    }
    std::vector<double> out;
    out.reserve(dedup.size());
    for (const auto& [th, mod] : dedup) out.push_back(th);
    return out;
}

MaxPoint local_expansion(const LatticeFunction& f, double theta_q, int max_order) {
    if (max_order < 2 || max_order > kMaxDerivativeOrder)
        throw std::invalid_argument("local_expansion: max_order out of range");
    const cplx value = eval_symbol(f, theta_q);
    if (value == cplx(0.0, 0.0))
        throw std::invalid_argument("local_expansion: symbol vanishes at theta_q");

    // Taylor coefficients of symbol(theta_q + xi)/symbol(theta_q)
    std::vector<cplx> t(static_cast<std::size_t>(max_order) + 1);
    t[0] = cplx(1.0, 0.0);
    double fact = 1.0;
    for (int j = 1; j <= max_order; ++j) {
        fact *= static_cast<double>(j);
        t[static_cast<std::size_t>(j)] = symbol_derivative(f, theta_q, j) / (fact * value);
    }
    std::vector<cplx> c = log_series(t);

    MaxPoint p;
    p.theta = theta_q;
    p.value = value;
    p.expansion.assign(c.begin() + 1, c.end());
    p.alpha = c[1].imag();

    double cmax = 0.0;
    for (int j = 1; j <= max_order; ++j) cmax = std::max(cmax, std::abs(c[static_cast<std::size_t>(j)]));
    const double thresh = 1e-9 * std::max(1.0, cmax);

    for (int j = 2; j <= max_order; ++j) {
        if (std::abs(c[static_cast<std::size_t>(j)]) > thresh) {
            p.mu = j;
            break;
        }
    }
    for (int j = 2; j <= max_order; j += 2) {
        if (c[static_cast<std::size_t>(j)].real() < -thresh) {
            p.nu = j;
            p.gamma = -c[static_cast<std::size_t>(j)];
            break;
        }
    }

    if (p.mu == 0) {
        p.kind = PointKind::Degenerate;
    } else if (p.nu == p.mu) {
        p.kind = PointKind::EvenDecay;
    } else if (std::abs(c[static_cast<std::size_t>(p.mu)].real()) <= thresh) {
        p.kind = PointKind::OddDrift;
    } else {
        // a leading term with positive real part cannot occur at a true
        // modulus maximum; report it as inconclusive
        p.kind = PointKind::Degenerate;
    }
    return p;
}

SymbolAnalysis analyze(const LatticeFunction& f, int max_order, double tol) {
    if (f.is_zero()) throw std::invalid_argument("analyze: zero function");
    SymbolAnalysis an;

    if (f.support_width() == 1) {
        // |symbol| is constant; flat case
        MaxPoint p = local_expansion(f, 0.0, max_order);
        an.normalization = std::abs(p.value);
        an.points.push_back(std::move(p));
        an.strictness = false;
        return an;
    }

    const std::vector<double> thetas = find_max_modulus_points(f, tol);
    double A = 0.0;
    for (double th : thetas) A = std::max(A, std::abs(eval_symbol(f, th)));
    an.normalization = A;
    for (double th : thetas) an.points.push_back(local_expansion(f, th, max_order));

    // strictness: no grid point clearly away from every reported maximum may
    // come within a relative 1e-10 of A. The exclusion radius around a point
    // grows with the flatness of its expansion so that the deficit at the
    // boundary clears the 1e-10 test level.
    std::vector<double> radius(an.points.size(), 1e-3);
    for (std::size_t q = 0; q < an.points.size(); ++q) {
        const auto& p = an.points[q];
        if (p.nu > 0 && p.gamma.real() > 0.0)
            radius[q] = std::max(
                1e-3, 2.0 * std::pow(1e-10 / p.gamma.real(), 1.0 / static_cast<double>(p.nu)));
    }
    const std::size_t grid_n =
        std::max<std::size_t>(4096, static_cast<std::size_t>(64 * f.support_width()));
    bool strict = true;
    for (std::size_t i = 0; i < grid_n && strict; ++i) {
        const double th = -M_PI + 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(grid_n);
        bool near = false;
        for (std::size_t q = 0; q < an.points.size() && !near; ++q) {
            const double d = std::abs(wrap_angle(th - an.points[q].theta));
            near = d < radius[q];
        }
        if (near) continue;
        if (std::abs(eval_symbol(f, th)) > A * (1.0 - 1e-10)) strict = false;
    }
    an.strictness = strict;
    return an;
}

LatticeFunction modulate(const LatticeFunction& f, double theta0) {
    const cplx v = eval_symbol(f, theta0);
    if (v == cplx(0.0, 0.0)) throw std::invalid_argument("modulate: symbol vanishes at theta0");
    std::vector<cplx> c = f.coeffs();
    std::int64_t x = f.min_index();
    for (auto& z : c) {
        z *= std::polar(1.0, static_cast<double>(x) * theta0) / v;
        ++x;
    }
    return LatticeFunction(f.offset(), std::move(c));
}

}  // namespace convpow
