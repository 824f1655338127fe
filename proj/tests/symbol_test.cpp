#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "convpow/fixtures.hpp"
#include "convpow/symbol.hpp"

using namespace convpow;

namespace {

// central finite-difference oracle for symbol derivatives
cplx fd_derivative(const LatticeFunction& f, double theta, int k, double h = 1e-2) {
    // 9-point stencils built by Richardson extrapolation of first differences
    if (k == 0) return eval_symbol(f, theta);
    const auto lower = [&](double t) { return fd_derivative(f, t, k - 1, h); };
    const cplx d1 = (lower(theta + h) - lower(theta - h)) / (2.0 * h);
    const cplx d2 = (lower(theta + h / 2) - lower(theta - h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

LatticeFunction random_function(std::mt19937_64& rng, int width) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c(static_cast<std::size_t>(width));
    for (auto& z : c) z = cplx(u(rng), u(rng));
    return LatticeFunction(-width / 2, std::move(c));
}

}  // namespace

TEST_CASE("symbol evaluation") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> th(-M_PI, M_PI);

    SUBCASE("Bernoulli symbol is cos") {
        for (int i = 0; i < 10; ++i) {
            const double t = th(rng);
            CHECK(std::abs(eval_symbol(LatticeFunction::bernoulli(), t) - cplx(std::cos(t), 0.0)) <
                  1e-14);
        }
    }

    SUBCASE("delta symbol is constant") {
        CHECK(eval_symbol(LatticeFunction::delta(0), 1.234) == cplx(1.0, 0.0));
    }

    SUBCASE("the 1 - cos^4 example") {
        const LatticeFunction f = cos4_symbol_function();
        for (int i = 0; i < 10; ++i) {
            const double t = th(rng);
            const double expected = 1.0 - std::pow(std::cos(t), 4);
            CHECK(std::abs(eval_symbol(f, t) - cplx(expected, 0.0)) < 1e-13);
        }
    }
}

TEST_CASE("symbol derivatives") {
    SUBCASE("cos' vanishes at 0") {
        CHECK(std::abs(symbol_derivative(LatticeFunction::bernoulli(), 0.0, 1)) < 1e-15);
    }

    SUBCASE("shifted delta") {
        const double t = 0.7;
        const cplx expected = cplx(0.0, 1.0) * std::polar(1.0, t);
        CHECK(std::abs(symbol_derivative(LatticeFunction::delta(1), t, 1) - expected) < 1e-14);
    }

    SUBCASE("fourth derivative of the quartic smoother at 0") {
        const cplx d4 = symbol_derivative(quartic_smoother(), 0.0, 4);
        CHECK(d4.real() == doctest::Approx(-8.0 / 3.0).epsilon(1e-12));
        CHECK(std::abs(d4.imag()) < 1e-14);
    }

    SUBCASE("finite-difference cross-check") {
        std::mt19937_64 rng(103);
        const LatticeFunction f = random_function(rng, 5);
        for (int k : {1, 2, 3}) {
            const double t = 0.35;
            const cplx exact = symbol_derivative(f, t, k);
            const cplx approx = fd_derivative(f, t, k, 5e-3);
            CHECK(std::abs(exact - approx) < 1e-6 * std::max(1.0, std::abs(exact)));
        }
    }

    SUBCASE("order limit") { CHECK_THROWS(symbol_derivative(LatticeFunction::delta(0), 0.0, 33)); }
}

TEST_CASE("maximum-modulus point location") {
    SUBCASE("quartic smoother peaks only at 0") {
        const auto pts = find_max_modulus_points(quartic_smoother());
        REQUIRE(pts.size() == 1);
        CHECK(std::abs(pts[0]) < 1e-10);
    }

    SUBCASE("cos^4 example peaks at +-pi/2") {
        auto pts = find_max_modulus_points(cos4_symbol_function());
        REQUIRE(pts.size() == 2);
        std::sort(pts.begin(), pts.end());
        CHECK(pts[0] == doctest::Approx(-M_PI / 2).epsilon(1e-10));
        CHECK(pts[1] == doctest::Approx(M_PI / 2).epsilon(1e-10));
    }

    SUBCASE("Bernoulli peaks at 0 and pi") {
        auto pts = find_max_modulus_points(LatticeFunction::bernoulli());
        REQUIRE(pts.size() == 2);
        std::sort(pts.begin(), pts.end());
        CHECK(std::abs(pts[0]) < 1e-10);
        CHECK(pts[1] == doctest::Approx(M_PI).epsilon(1e-10));
    }

    SUBCASE("stationarity at every reported point") {
        for (const LatticeFunction& f :
             {quartic_smoother(), cos4_symbol_function(), three_point(0.5, 0.25, -0.25)}) {
            const SymbolAnalysis an = analyze(f);
            const double A2 = an.normalization * an.normalization;
            for (const auto& p : an.points) {
                const cplx s = eval_symbol(f, p.theta);
                const cplx s1 = symbol_derivative(f, p.theta, 1);
                const cplx s2 = symbol_derivative(f, p.theta, 2);
                const double d1 = 2.0 * (s1 * std::conj(s)).real();
                const double d2 = 2.0 * ((s2 * std::conj(s)).real() + std::norm(s1));
                CHECK(std::abs(d1) <= 1e-10 * A2);
                CHECK(d2 <= 1e-8 * A2);
            }
        }
    }
}

TEST_CASE("local expansions") {
    SUBCASE("quartic smoother") {
        const MaxPoint p = local_expansion(quartic_smoother(), 0.0);
        CHECK(p.alpha == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(p.mu == 4);
        CHECK(p.nu == 4);
        CHECK(std::abs(p.gamma - cplx(1.0 / 9.0, 0.0)) < 1e-10);
        CHECK(p.kind == PointKind::EvenDecay);
    }

    SUBCASE("sixth-order smoother from the binomial family") {
        const MaxPoint p = local_expansion(binomial_smoother(0.5, 3), 0.0);
        CHECK(p.nu == 6);
        CHECK(p.alpha == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(std::abs(p.gamma - cplx(1.0 / 16.0, 0.0)) < 1e-9);
        CHECK(p.kind == PointKind::EvenDecay);
    }

    SUBCASE("cubic-drift family at a = 1/8") {
        const MaxPoint p = local_expansion(cubic_drift_family(0.125), 0.0);
        CHECK(p.mu == 3);
        CHECK(std::abs(p.expansion[2] - cplx(0.0, 0.125)) < 1e-10);
        CHECK(p.nu == 4);
        CHECK(p.expansion[3].real() == doctest::Approx(-1.0 / 16.0).epsilon(1e-9));
        CHECK(p.kind == PointKind::OddDrift);
    }

    SUBCASE("Re c1 vanishes at modulus maxima") {
        for (const LatticeFunction& f :
             {quartic_smoother(), three_point(0.7, 0.5, -0.3), LatticeFunction::bernoulli()}) {
            const SymbolAnalysis an = analyze(f);
            for (const auto& p : an.points) CHECK(std::abs(p.expansion[0].real()) < 1e-9);
        }
    }
}

TEST_CASE("full analysis") {
    SUBCASE("single-point support is the flat case") {
        const SymbolAnalysis an = analyze(LatticeFunction::delta(3));
        REQUIRE(an.points.size() == 1);
        CHECK(an.normalization == doctest::Approx(1.0));
        CHECK(an.points[0].kind == PointKind::Degenerate);
        CHECK(an.points[0].alpha == doctest::Approx(3.0));  // pure shift drift
        CHECK_FALSE(an.strictness);
    }

    SUBCASE("three-point closed forms at (1/2, 1/4, -1/4)") {
        const SymbolAnalysis an = analyze(three_point(0.5, 0.25, -0.25));
        CHECK(an.normalization == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
        REQUIRE(an.points.size() == 2);
        auto pts = an.points;
        std::sort(pts.begin(), pts.end(),
                  [](const MaxPoint& a, const MaxPoint& b) { return a.theta < b.theta; });
        CHECK(pts[0].theta == doctest::Approx(-M_PI / 2).epsilon(1e-10));
        CHECK(pts[1].theta == doctest::Approx(M_PI / 2).epsilon(1e-10));
        for (const auto& p : pts) {
            CHECK(p.alpha == doctest::Approx(0.0).epsilon(1e-10));
            CHECK(p.nu == 2);
            CHECK(p.gamma.real() == doctest::Approx(0.25).epsilon(1e-9));
        }
        CHECK(pts[1].gamma.imag() == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(pts[0].gamma.imag() == doctest::Approx(-0.5).epsilon(1e-9));
    }

    SUBCASE("lazy Bernoulli at s = 1/2") {
        const SymbolAnalysis an = analyze(LatticeFunction::lazy_bernoulli(0.5));
        REQUIRE(an.points.size() == 1);
        CHECK(std::abs(an.points[0].theta) < 1e-10);
        CHECK(an.points[0].nu == 2);
        CHECK(std::abs(an.points[0].gamma - cplx(0.25, 0.0)) < 1e-10);
        CHECK(an.strictness);
    }

    SUBCASE("strictness holds for the quartic smoother") {
        CHECK(analyze(quartic_smoother()).strictness);
    }

    SUBCASE("normalization equivariance") {
        const LatticeFunction f = three_point(0.5, 0.25, -0.25);
        const SymbolAnalysis base = analyze(f);
        for (cplx z : {cplx(2.5, 0.0), cplx(0.0, 1.0), cplx(-0.3, 0.4)}) {
            const SymbolAnalysis scaled = analyze(scale(f, z));
            CHECK(scaled.normalization ==
                  doctest::Approx(std::abs(z) * base.normalization).epsilon(1e-10));
            REQUIRE(scaled.points.size() == base.points.size());
            auto a = base.points, b = scaled.points;
            auto by_theta = [](const MaxPoint& x, const MaxPoint& y) { return x.theta < y.theta; };
            std::sort(a.begin(), a.end(), by_theta);
            std::sort(b.begin(), b.end(), by_theta);
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(std::abs(a[i].theta - b[i].theta) < 1e-10);
                for (std::size_t j = 0; j < a[i].expansion.size(); ++j)
                    CHECK(std::abs(a[i].expansion[j] - b[i].expansion[j]) < 1e-9);
            }
        }
    }

    SUBCASE("modulation equivariance") {
        const LatticeFunction f = cos4_symbol_function();
        const double theta0 = M_PI / 2;
        const SymbolAnalysis base = analyze(f);
        const SymbolAnalysis moved = analyze(modulate(f, theta0));
        REQUIRE(moved.points.size() == base.points.size());
        // maxima shift by -theta0 (mod 2pi)
        std::vector<double> expect, got;
        for (const auto& p : base.points) expect.push_back(wrap_angle(p.theta - theta0));
        for (const auto& p : moved.points) got.push_back(p.theta);
        std::sort(expect.begin(), expect.end());
        std::sort(got.begin(), got.end());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(std::abs(got[i] - expect[i]) < 1e-9);
        // the expansion data at the moved principal point is unchanged
        for (const auto& p : moved.points) {
            if (std::abs(p.theta) > 1e-6) continue;
            CHECK(p.nu == 4);
            CHECK(std::abs(p.gamma - cplx(1.0, 0.0)) < 1e-9);
            CHECK(p.alpha == doctest::Approx(0.0).epsilon(1e-10));
        }
    }

    SUBCASE("random three-point family against closed forms") {
        std::mt19937_64 rng(107);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        int done = 0;
        while (done < 60) {
            const double a0 = 0.2 + 1.8 * u01(rng);
            const double ap = -2.0 + 4.0 * u01(rng);
            const double am = -2.0 + 4.0 * u01(rng);
            if (std::abs(ap) < 0.05 || std::abs(am) < 0.05) continue;
            const double s = ap + am, d = ap - am;
            if (std::abs(s) < 0.05 || std::abs(d) < 0.05) continue;
            const double lhs = 4.0 * std::abs(ap * am), rhs = a0 * std::abs(s);
            if (lhs > 0.95 * rhs && lhs < 1.05 * rhs) continue;
            ++done;
            const ThreePointForms forms = three_point_forms(a0, ap, am);
            const SymbolAnalysis an = analyze(three_point(a0, ap, am));
            REQUIRE(an.points.size() == forms.points.size());
            CHECK(an.normalization == doctest::Approx(forms.A).epsilon(1e-9));
            auto pts = an.points;
            std::sort(pts.begin(), pts.end(),
                      [](const MaxPoint& a, const MaxPoint& b) { return a.theta < b.theta; });
            for (std::size_t i = 0; i < pts.size(); ++i) {
                CHECK(std::abs(pts[i].theta - forms.points[i].theta) < 1e-7);
                CHECK(std::abs(pts[i].alpha - forms.points[i].alpha) < 1e-7);
                CHECK(std::abs(pts[i].gamma - forms.points[i].gamma) < 1e-7);
            }
        }
    }

    SUBCASE("zero function is rejected") { CHECK_THROWS(analyze(LatticeFunction())); }
}
