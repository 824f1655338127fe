#include "convpow/lattice_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "convpow/fft.hpp"

namespace convpow {

namespace {

bool finite(const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_finite(const std::vector<cplx>& coeffs) {
    for (const auto& z : coeffs)
        if (!finite(z)) throw std::runtime_error("non-finite result");
}

// Complex z^n by repeated squaring (n >= 0).
cplx int_pow(cplx z, std::int64_t n) {
    cplx r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

}  // namespace

LatticeFunction::LatticeFunction() : offset_(0), coeffs_{cplx(0.0, 0.0)} {}

LatticeFunction::LatticeFunction(std::int64_t offset, std::vector<cplx> coeffs)
    : offset_(offset), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("LatticeFunction: empty coefficient list");
    check_finite(coeffs_);
    // canonical trim: exact zeros only
    std::size_t lo = 0, hi = coeffs_.size();
    while (lo < hi && coeffs_[lo] == cplx(0.0, 0.0)) ++lo;
    while (hi > lo && coeffs_[hi - 1] == cplx(0.0, 0.0)) --hi;
    if (lo == hi) {
        offset_ = 0;
        coeffs_.assign(1, cplx(0.0, 0.0));
        return;
    }
    if (lo > 0 || hi < coeffs_.size()) {
        coeffs_ = std::vector<cplx>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lo),
                                    coeffs_.begin() + static_cast<std::ptrdiff_t>(hi));
        offset_ += static_cast<std::int64_t>(lo);
    }
}

LatticeFunction LatticeFunction::delta(std::int64_t position, cplx value) {
    return LatticeFunction(position, {value});
}

LatticeFunction LatticeFunction::from_points(
    std::initializer_list<std::pair<std::int64_t, cplx>> pts) {
    if (pts.size() == 0) return LatticeFunction();
    std::int64_t lo = pts.begin()->first, hi = pts.begin()->first;
    for (const auto& [x, v] : pts) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1), cplx(0.0, 0.0));
    for (const auto& [x, v] : pts) c[static_cast<std::size_t>(x - lo)] += v;
    return LatticeFunction(lo, std::move(c));
}

LatticeFunction LatticeFunction::bernoulli() {
    return from_points({{-1, cplx(0.5, 0.0)}, {1, cplx(0.5, 0.0)}});
}

LatticeFunction LatticeFunction::lazy_bernoulli(double s) {
    return from_points(
        {{-1, cplx(0.5 * s, 0.0)}, {0, cplx(1.0 - s, 0.0)}, {1, cplx(0.5 * s, 0.0)}});
}

bool LatticeFunction::is_zero() const {
    return coeffs_.size() == 1 && coeffs_[0] == cplx(0.0, 0.0);
}

cplx LatticeFunction::at(std::int64_t x) const {
    const std::int64_t i = x - offset_;
    if (i < 0 || i >= static_cast<std::int64_t>(coeffs_.size())) return cplx(0.0, 0.0);
    return coeffs_[static_cast<std::size_t>(i)];
}

LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g) {
    if (f.is_zero() || g.is_zero()) return LatticeFunction();
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    std::vector<cplx> out(a.size() + b.size() - 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cplx(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return LatticeFunction(f.offset() + g.offset(), std::move(out));
}

namespace {

LatticeFunction power_direct(const LatticeFunction& f, std::int64_t n) {
    LatticeFunction acc = f;
    for (std::int64_t i = 1; i < n; ++i) acc = convolve(acc, f);
    return acc;
}

LatticeFunction power_squaring(const LatticeFunction& f, std::int64_t n) {
    LatticeFunction result = LatticeFunction::delta(0);
    LatticeFunction base = f;
    bool have_result = false;
    while (n > 0) {
        if (n & 1) {
            result = have_result ? convolve(result, base) : base;
            have_result = true;
        }
        n >>= 1;
        if (n > 0) base = convolve(base, base);
    }
    return result;
}

LatticeFunction power_fft(const LatticeFunction& f, std::int64_t n) {
    if (f.is_zero()) return LatticeFunction();
    const std::size_t width = f.coeffs().size();
    const std::size_t out_width = static_cast<std::size_t>(n) * (width - 1) + 1;
    const std::size_t len = detail::next_pow2(out_width);
    std::vector<cplx> buf(len, cplx(0.0, 0.0));
    std::copy(f.coeffs().begin(), f.coeffs().end(), buf.begin());
    detail::fft_radix2(buf, false);
    for (auto& z : buf) z = int_pow(z, n);
    detail::fft_radix2(buf, true);
    buf.resize(out_width);
    check_finite(buf);
    return LatticeFunction(n * f.offset(), std::move(buf));
}

}  // namespace

LatticeFunction power(const LatticeFunction& f, std::int64_t n, PowerMethod method) {
    if (n < 0) throw std::invalid_argument("power: negative exponent");
    if (n == 0) return LatticeFunction::delta(0);
    if (n == 1) return f;
    switch (method) {
        case PowerMethod::Direct: return power_direct(f, n);
        case PowerMethod::Squaring: return power_squaring(f, n);
        case PowerMethod::Fft: return power_fft(f, n);
    }
    throw std::logic_error("power: unknown method");
}

double l1_norm(const LatticeFunction& f) {
    double s = 0.0;
    for (const auto& z : f.coeffs()) s += std::abs(z);
    return s;
}

double sup_norm(const LatticeFunction& f) {
    double s = 0.0;
    for (const auto& z : f.coeffs()) s = std::max(s, std::abs(z));
    return s;
}

cplx total_sum(const LatticeFunction& f) {
    cplx s(0.0, 0.0);
    for (const auto& z : f.coeffs()) s += z;
    return s;
}

LatticeFunction difference(const LatticeFunction& f, std::int64_t y) {
    if (y == 0) return LatticeFunction();
    // f(x+y) lives on [min-y, max-y]
    const std::int64_t lo = std::min(f.min_index() - y, f.min_index());
    const std::int64_t hi = std::max(f.max_index() - y, f.max_index());
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), cplx(0.0, 0.0));
    for (std::int64_t x = lo; x <= hi; ++x)
        out[static_cast<std::size_t>(x - lo)] = f.at(x + y) - f.at(x);
    return LatticeFunction(lo, std::move(out));
}

LatticeFunction scale(const LatticeFunction& f, cplx z) {
    std::vector<cplx> c = f.coeffs();
    for (auto& v : c) v *= z;
    return LatticeFunction(f.offset(), std::move(c));
}

LatticeFunction translate(const LatticeFunction& f, std::int64_t shift) {
    return LatticeFunction(f.offset() + shift, f.coeffs());
}

LatticeFunction walk_measure(double s, int k) {
    if (k < 1) throw std::invalid_argument("walk_measure: k must be positive");
    if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("walk_measure: s must be in (0,1]");
    LatticeFunction core = LatticeFunction::from_points({{-1, cplx(-0.5 * s, 0.0)},
                                                         {0, cplx(s, 0.0)},
                                                         {1, cplx(-0.5 * s, 0.0)}});  // delta0 - beta_s
    LatticeFunction pk = power(core, k, PowerMethod::Direct);
    // delta_0 - pk
    const std::int64_t lo = std::min<std::int64_t>(pk.min_index(), 0);
    const std::int64_t hi = std::max<std::int64_t>(pk.max_index(), 0);
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), cplx(0.0, 0.0));
    out[static_cast<std::size_t>(-lo)] = cplx(1.0, 0.0);
    for (std::int64_t x = pk.min_index(); x <= pk.max_index(); ++x)
        out[static_cast<std::size_t>(x - lo)] -= pk.at(x);
    return LatticeFunction(lo, std::move(out));
}

double sup_distance(const LatticeFunction& f, const LatticeFunction& g) {
    const std::int64_t lo = std::min(f.min_index(), g.min_index());
    const std::int64_t hi = std::max(f.max_index(), g.max_index());
    double d = 0.0;
    for (std::int64_t x = lo; x <= hi; ++x) d = std::max(d, std::abs(f.at(x) - g.at(x)));
    return d;
}

}  // namespace convpow
