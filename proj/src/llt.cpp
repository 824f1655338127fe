#include "convpow/llt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <stdexcept>

namespace convpow {

namespace {

cplx unit_pow(cplx z, std::int64_t n) {
    cplx r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

void require_normalized(const SymbolAnalysis& analysis) {
    if (std::abs(analysis.normalization - 1.0) > 1e-9)
        throw std::invalid_argument("llt: analysis must be normalized to A = 1");
}

const MaxPoint& single_even_point(const SymbolAnalysis& analysis) {
    if (analysis.points.size() != 1)
        throw std::invalid_argument("llt: a single maximum is required");
    const MaxPoint& p = analysis.points[0];
    if (p.kind != PointKind::EvenDecay)
        throw std::invalid_argument("llt: the maximum must be of even-decay type");
    return p;
}

double default_decay_rate(const MaxPoint& p) {
    const double nu = static_cast<double>(p.nu);
    return 0.5 * std::pow(p.gamma.real(), 1.0 / (nu - 1.0)) * (nu - 1.0) / nu;
}

}  // namespace

LltApproximator::LltApproximator(const SymbolAnalysis& analysis) {
    require_normalized(analysis);
    int nu_max = 0;
    for (const auto& p : analysis.points) {
        if (p.kind == PointKind::OddDrift)
            throw std::invalid_argument("llt_approx: drift-dominated maximum present");
        if (p.kind == PointKind::Degenerate)
            throw std::invalid_argument("llt_approx: degenerate maximum present");
        nu_max = std::max(nu_max, p.nu);
    }
    if (nu_max == 0) throw std::invalid_argument("llt_approx: no decay order found");
    m_ = nu_max;
    for (const auto& p : analysis.points) {
        if (p.nu != nu_max) continue;  // lower-order points are o(n^{-1/m})
        const double b = p.gamma.real();
        const double bp = p.gamma.imag();
        terms_.push_back(Term{p.theta, p.value, p.alpha, b,
                              KernelEvaluator(KernelSpec::even(m_, bp / b))});
    }
}

cplx LltApproximator::operator()(std::int64_t n, std::int64_t x) const {
    cplx sum(0.0, 0.0);
    const double nn = static_cast<double>(n);
    const double xx = static_cast<double>(x);
    for (const auto& t : terms_) {
        const double s = std::pow(t.b * nn, -1.0 / static_cast<double>(m_));
        const cplx osc = std::polar(1.0, -xx * t.theta) * unit_pow(t.value, n);
        sum += s * osc * t.kernel((xx - t.alpha * nn) * s);
    }
    return sum;
}

cplx llt_approx(const SymbolAnalysis& analysis, std::int64_t n, std::int64_t x) {
    return LltApproximator(analysis)(n, x);
}

double llt_odd3_approx(const LatticeFunction& f, const SymbolAnalysis& analysis, std::int64_t n,
                       std::int64_t x) {
    require_normalized(analysis);
    for (const auto& z : f.coeffs())
        if (z.imag() != 0.0) throw std::invalid_argument("llt_odd3_approx: function must be real");
    if (analysis.points.size() != 1 || std::abs(analysis.points[0].theta) > 1e-12)
        throw std::invalid_argument("llt_odd3_approx: need a single maximum at 0");
    const MaxPoint& p = analysis.points[0];
    if (p.mu != 3) throw std::invalid_argument("llt_odd3_approx: cubic term required");
    const cplx c3 = p.expansion[2];
    if (std::abs(c3.real()) > 1e-9 * std::abs(c3))
        throw std::invalid_argument("llt_odd3_approx: cubic term must be purely imaginary");
    // symbol = 1 + a (i t)^3 + O(t^4) gives c3 = -i a, so a = -Im(c3) and the
    // reflection sign is sign(a i^2) = sign(-a)
    const double a = -c3.imag();
    const double eps = a < 0.0 ? 1.0 : -1.0;
    const double s = std::pow(std::abs(a) * static_cast<double>(n), -1.0 / 3.0);
    const KernelEvaluator h3(KernelSpec::airy());
    return s * h3(eps * static_cast<double>(x) * s).real();
}

namespace {

LLTReport error_report(const LatticeFunction& exact, std::int64_t n, double order,
                       const std::function<cplx(std::int64_t)>& approx) {
    LLTReport rep;
    rep.n = n;
    rep.window_offset = exact.min_index();
    rep.approx.resize(static_cast<std::size_t>(exact.support_width()));
    double sup = 0.0;
    for (std::int64_t x = exact.min_index(); x <= exact.max_index(); ++x) {
        const cplx a = approx(x);
        rep.approx[static_cast<std::size_t>(x - exact.min_index())] = a;
        sup = std::fmax(sup, std::abs(exact.at(x) - a));
    }
    rep.sup_error_scaled = sup * std::pow(static_cast<double>(n), 1.0 / order);
    return rep;
}

}  // namespace

std::vector<LLTReport> llt_error_curve(const LatticeFunction& f, const SymbolAnalysis& analysis,
                                       const std::vector<std::int64_t>& n_list, int threads) {
    const LltApproximator approx(analysis);
    const double order = approx.order();
    auto one = [&](std::int64_t n) {
        const LatticeFunction exact = power(f, n, PowerMethod::Fft);
        return error_report(exact, n, order, [&](std::int64_t x) { return approx(n, x); });
    };
    std::vector<LLTReport> out(n_list.size());
    if (threads > 1) {
        std::vector<std::future<LLTReport>> futs;
        futs.reserve(n_list.size());
        for (std::int64_t n : n_list)
            futs.push_back(std::async(std::launch::async, one, n));
        for (std::size_t i = 0; i < futs.size(); ++i) out[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < n_list.size(); ++i) out[i] = one(n_list[i]);
    }
    return out;
}

std::vector<LLTReport> llt_odd3_error_curve(const LatticeFunction& f,
                                            const SymbolAnalysis& analysis,
                                            const std::vector<std::int64_t>& n_list) {
    std::vector<LLTReport> out;
    out.reserve(n_list.size());
    for (std::int64_t n : n_list) {
        const LatticeFunction exact = power(f, n, PowerMethod::Fft);
        out.push_back(error_report(exact, n, 3.0, [&](std::int64_t x) {
            return cplx(llt_odd3_approx(f, analysis, n, x), 0.0);
        }));
    }
    return out;
}

DecayFit verify_decay_bound(const LatticeFunction& f, const SymbolAnalysis& analysis,
                            const std::vector<std::int64_t>& n_list, double c) {
    require_normalized(analysis);
    const MaxPoint& p = single_even_point(analysis);
    const double nu = static_cast<double>(p.nu);
    if (c <= 0.0) c = default_decay_rate(p);

    DecayFit fit;
    fit.c = c;
    fit.exponent = nu / (nu - 1.0);
    for (std::int64_t n : n_list) {
        const LatticeFunction pw = power(f, n, PowerMethod::Fft);
        const double nn = static_cast<double>(n);
        double log_best = -1e308;
        for (std::int64_t x = pw.min_index(); x <= pw.max_index(); ++x) {
            const double mag = std::abs(pw.at(x));
            if (mag == 0.0) continue;
            const double u = std::abs(static_cast<double>(x) - p.alpha * nn) /
                             std::pow(nn, 1.0 / nu);
            const double lg = std::log(mag) + std::log(nn) / nu + c * std::pow(u, fit.exponent);
            log_best = std::fmax(log_best, lg);
        }
        fit.C_of_n[n] = std::exp(log_best);
    }
    return fit;
}

double verify_regularity_bound(const LatticeFunction& f, const SymbolAnalysis& analysis,
                               std::int64_t n, const std::vector<std::int64_t>& y_list,
                               double c) {
    require_normalized(analysis);
    const MaxPoint& p = single_even_point(analysis);
    const double nu = static_cast<double>(p.nu);
    const int m = static_cast<int>(y_list.size());
    if (m < 1 || m > 3)
        throw std::invalid_argument("verify_regularity_bound: need 1 to 3 difference steps");
    const double nn = static_cast<double>(n);
    const double n_nu = std::pow(nn, 1.0 / nu);
    double prod_y = 1.0;
    for (std::int64_t y : y_list) {
        if (std::abs(static_cast<double>(y)) > n_nu)
            throw std::invalid_argument("verify_regularity_bound: |y| exceeds n^{1/nu}");
        prod_y *= std::abs(static_cast<double>(y));
    }
    if (prod_y == 0.0) return 0.0;
    if (c <= 0.0) c = default_decay_rate(p);

    LatticeFunction d = power(f, n, PowerMethod::Fft);
    for (std::int64_t y : y_list) d = difference(d, y);

    const double expo = nu / (nu - 1.0);
    double log_best = -1e308;
    for (std::int64_t x = d.min_index(); x <= d.max_index(); ++x) {
        const double mag = std::abs(d.at(x));
        if (mag == 0.0) continue;
        const double u = std::abs(static_cast<double>(x) - p.alpha * nn) / n_nu;
        const double lg = std::log(mag) - std::log(prod_y) +
                          (1.0 + m) / nu * std::log(nn) + c * std::pow(u, expo);
        log_best = std::fmax(log_best, lg);
    }
    if (log_best == -1e308) return 0.0;
    return std::exp(log_best / m);
}

MultipointReport verify_multipoint_bound(const LatticeFunction& f, const SymbolAnalysis& analysis,
                                         const std::vector<std::int64_t>& n_list, int N) {
    require_normalized(analysis);
    for (const auto& p : analysis.points)
        if (p.kind != PointKind::EvenDecay)
            throw std::invalid_argument("verify_multipoint_bound: all maxima must be even-decay");

    MultipointReport rep;
    for (std::int64_t n : n_list) {
        const LatticeFunction pw = power(f, n, PowerMethod::Fft);
        const double nn = static_cast<double>(n);
        double best = 0.0;
        for (std::int64_t x = pw.min_index(); x <= pw.max_index(); ++x) {
            const double mag = std::abs(pw.at(x));
            if (mag == 0.0) continue;
            double denom = 0.0;
            for (const auto& p : analysis.points) {
                const double n_nu = std::pow(nn, 1.0 / static_cast<double>(p.nu));
                const double u = std::abs(static_cast<double>(x) - p.alpha * nn) / n_nu;
                denom += std::pow(1.0 + u, -static_cast<double>(N)) / n_nu;
            }
            best = std::fmax(best, mag / denom);
        }
        rep.per_n[n] = best;
        rep.overall = std::fmax(rep.overall, best);
    }
    return rep;
}

std::vector<NearDiagonalEntry> near_diagonal_check(const LatticeFunction& f,
                                                   const SymbolAnalysis& analysis,
                                                   const std::vector<std::int64_t>& n_list,
                                                   double c1, int point_index) {
    require_normalized(analysis);
    if (point_index < 0) {
        if (analysis.points.size() != 1)
            throw std::invalid_argument(
                "near_diagonal_check: multiple maxima, select one explicitly");
        point_index = 0;
    }
    const MaxPoint& p = analysis.points.at(static_cast<std::size_t>(point_index));
    if (p.nu == 0) throw std::invalid_argument("near_diagonal_check: no decay order at the point");
    const double nu = static_cast<double>(p.nu);
    const double im_gamma_sign = p.gamma.imag() > 0 ? 1.0 : (p.gamma.imag() < 0 ? -1.0 : 0.0);

    std::vector<NearDiagonalEntry> out;
    for (std::int64_t n : n_list) {
        const double nn = static_cast<double>(n);
        const double n_nu = std::pow(nn, 1.0 / nu);
        const std::int64_t lo = static_cast<std::int64_t>(std::ceil(p.alpha * nn - c1 * n_nu));
        const std::int64_t hi = static_cast<std::int64_t>(std::floor(p.alpha * nn + c1 * n_nu));
        if (lo > hi) throw std::runtime_error("near_diagonal_check: window empty, n too small");

        const LatticeFunction pw = power(f, n, PowerMethod::Fft);
        const cplx mod_base = unit_pow(std::conj(p.value), n);  // value^{-n} on the unit circle
        NearDiagonalEntry e;
        e.n = n;
        e.min_scaled_re = 1e308;
        e.min_scaled_im = 1e308;
        e.max_scaled_im = -1e308;
        for (std::int64_t x = lo; x <= hi; ++x) {
            const cplx w =
                mod_base * std::polar(1.0, static_cast<double>(x) * p.theta) * pw.at(x);
            const double re = w.real() * n_nu;
            const double im = w.imag() * n_nu;
            e.min_scaled_re = std::fmin(e.min_scaled_re, re);
            e.min_scaled_im = std::fmin(e.min_scaled_im, im);
            e.max_scaled_im = std::fmax(e.max_scaled_im, im);
            ++e.im_sign_total;
            if (im_gamma_sign != 0.0 && im * im_gamma_sign > 0.0) ++e.im_sign_agree;
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace convpow
