#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "convpow/fixtures.hpp"
#include "convpow/lattice_function.hpp"
#include "convpow/quadrature.hpp"
#include "convpow/symbol.hpp"

using namespace convpow;

namespace {

// independent convolution oracle on a sparse map
std::map<std::int64_t, cplx> to_map(const LatticeFunction& f) {
    std::map<std::int64_t, cplx> m;
    for (std::int64_t x = f.min_index(); x <= f.max_index(); ++x)
        if (f.at(x) != cplx(0.0, 0.0)) m[x] = f.at(x);
    return m;
}

std::map<std::int64_t, cplx> conv_oracle(const std::map<std::int64_t, cplx>& a,
                                         const std::map<std::int64_t, cplx>& b) {
    std::map<std::int64_t, cplx> out;
    for (const auto& [x, u] : a)
        for (const auto& [y, v] : b) out[x + y] += u * v;
    return out;
}

double sup_diff(const LatticeFunction& f, const std::map<std::int64_t, cplx>& m) {
    double d = 0.0;
    for (const auto& [x, v] : m) d = std::fmax(d, std::abs(f.at(x) - v));
    for (std::int64_t x = f.min_index(); x <= f.max_index(); ++x) {
        const auto it = m.find(x);
        const cplx v = it == m.end() ? cplx(0.0, 0.0) : it->second;
        d = std::fmax(d, std::abs(f.at(x) - v));
    }
    return d;
}

LatticeFunction random_function(std::mt19937_64& rng, int width, double l1_target) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> c(static_cast<std::size_t>(width));
    for (auto& z : c) z = cplx(u(rng), u(rng));
    LatticeFunction f(-width / 2, std::move(c));
    return scale(f, cplx(l1_target / l1_norm(f), 0.0));
}

}  // namespace

TEST_CASE("convolution identities") {
    const LatticeFunction delta0 = LatticeFunction::delta(0);
    const LatticeFunction beta = LatticeFunction::bernoulli();

    SUBCASE("delta is the unit") {
        const LatticeFunction f = quartic_smoother();
        CHECK(sup_distance(convolve(delta0, f), f) == 0.0);
        CHECK(sup_distance(convolve(f, delta0), f) == 0.0);
    }

    SUBCASE("beta * beta") {
        const LatticeFunction b2 = convolve(beta, beta);
        CHECK(std::abs(b2.at(-2) - cplx(0.25, 0.0)) == 0.0);
        CHECK(std::abs(b2.at(0) - cplx(0.5, 0.0)) == 0.0);
        CHECK(std::abs(b2.at(2) - cplx(0.25, 0.0)) == 0.0);
        CHECK(std::abs(b2.at(1) - cplx(0.0, 0.0)) == 0.0);
        CHECK(b2.min_index() == -2);
        CHECK(b2.max_index() == 2);
    }

    SUBCASE("(delta0 - beta)^2 matches the symmetric second-difference table") {
        const LatticeFunction d = LatticeFunction::from_points(
            {{-1, cplx(-0.5, 0.0)}, {0, cplx(1.0, 0.0)}, {1, cplx(-0.5, 0.0)}});
        const LatticeFunction d2 = convolve(d, d);
        CHECK(d2.at(-2).real() == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(d2.at(-1).real() == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(d2.at(0).real() == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(d2.at(1).real() == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(d2.at(2).real() == doctest::Approx(0.25).epsilon(1e-15));
    }

    SUBCASE("random functions against the sparse-map oracle") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const LatticeFunction f = random_function(rng, 5, 1.0);
            const LatticeFunction g = random_function(rng, 7, 1.0);
            CHECK(sup_diff(convolve(f, g), conv_oracle(to_map(f), to_map(g))) < 1e-14);
        }
    }

    SUBCASE("commutativity and associativity") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 10; ++trial) {
            const LatticeFunction f = random_function(rng, 4, 1.0);
            const LatticeFunction g = random_function(rng, 6, 1.0);
            const LatticeFunction h = random_function(rng, 3, 1.0);
            CHECK(sup_distance(convolve(f, g), convolve(g, f)) < 1e-12);
            CHECK(sup_distance(convolve(convolve(f, g), h), convolve(f, convolve(g, h))) < 1e-12);
        }
    }

    SUBCASE("symbol homomorphism") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> th(-M_PI, M_PI);
        for (int trial = 0; trial < 10; ++trial) {
            const LatticeFunction f = random_function(rng, 5, 1.0);
            const LatticeFunction g = random_function(rng, 4, 1.0);
            const double theta = th(rng);
            CHECK(std::abs(eval_symbol(convolve(f, g), theta) -
                           eval_symbol(f, theta) * eval_symbol(g, theta)) < 1e-12);
        }
    }

    SUBCASE("zero function annihilates") {
        CHECK(convolve(LatticeFunction(), beta).is_zero());
    }
}

TEST_CASE("convolution powers") {
    const LatticeFunction beta = LatticeFunction::bernoulli();

    SUBCASE("power of delta") {
        const LatticeFunction p = power(LatticeFunction::delta(0), 7);
        CHECK(p.support_width() == 1);
        CHECK(std::abs(p.at(0) - cplx(1.0, 0.0)) == 0.0);
    }

    SUBCASE("n = 0 gives the unit") {
        CHECK(std::abs(power(beta, 0).at(0) - cplx(1.0, 0.0)) == 0.0);
        CHECK(power(beta, 0).support_width() == 1);
    }

    SUBCASE("square matches convolve") {
        CHECK(sup_distance(power(beta, 2, PowerMethod::Direct), convolve(beta, beta)) == 0.0);
    }

    SUBCASE("mass is preserved by the quartic smoother") {
        const LatticeFunction f = quartic_smoother();
        for (std::int64_t n : {1, 3, 16, 100, 512}) {
            const cplx s = total_sum(power(f, n, PowerMethod::Fft));
            CHECK(std::abs(s - cplx(1.0, 0.0)) < 1e-10);
        }
    }

    SUBCASE("sum rule under powers") {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 5; ++trial) {
            const LatticeFunction f = random_function(rng, 5, 1.0);
            const cplx s = total_sum(f);
            for (std::int64_t n : {2, 9, 33}) {
                cplx sn(1.0, 0.0);
                for (std::int64_t i = 0; i < n; ++i) sn *= s;
                CHECK(std::abs(total_sum(power(f, n)) - sn) < 1e-10 * std::abs(sn) + 1e-14);
            }
        }
    }

    SUBCASE("engines agree") {
        std::mt19937_64 rng(19);
        for (int trial = 0; trial < 3; ++trial) {
            const LatticeFunction f = random_function(rng, 5, 2.0);
            for (std::int64_t n : {1, 2, 17, 128, 512}) {
                const LatticeFunction a = power(f, n, PowerMethod::Squaring);
                const LatticeFunction b = power(f, n, PowerMethod::Fft);
                const double scale_ref = sup_norm(a);
                CHECK(sup_distance(a, b) <= 1e-9 * scale_ref);
                if (n <= 17) {
                    const LatticeFunction c = power(f, n, PowerMethod::Direct);
                    CHECK(sup_distance(a, c) <= 1e-9 * scale_ref);
                }
            }
        }
    }

    SUBCASE("real even inputs stay real and even") {
        const LatticeFunction f = quartic_smoother();
        const LatticeFunction p = power(f, 64, PowerMethod::Fft);
        for (std::int64_t x = 0; x <= p.max_index(); ++x) {
            CHECK(std::abs(p.at(x).imag()) < 1e-12);
            CHECK(std::abs(p.at(x) - p.at(-x)) < 1e-12);
        }
    }

    SUBCASE("Parseval for moderate powers") {
        const LatticeFunction f = quartic_smoother();
        for (std::int64_t n : {4, 16, 64}) {
            const LatticeFunction p = power(f, n, PowerMethod::Fft);
            double lhs = 0.0;
            for (const auto& z : p.coeffs()) lhs += std::norm(z);
            const double rhs =
                adaptive_simpson(
                    [&](double th) {
                        return std::pow(std::norm(eval_symbol(f, th)), static_cast<double>(n));
                    },
                    -M_PI, M_PI, 1e-12) /
                (2.0 * M_PI);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("norms, sums, differences") {
    SUBCASE("lazy Bernoulli has unit l1 norm") {
        for (double s : {0.0, 0.25, 0.5, 1.0}) {
            const LatticeFunction b = LatticeFunction::lazy_bernoulli(s);
            CHECK(l1_norm(b) == doctest::Approx(1.0).epsilon(1e-15));
        }
    }

    SUBCASE("cubic-drift family sums to one and has l1 norm 1.25 at a=1/8") {
        const LatticeFunction f = cubic_drift_family(0.125);
        CHECK(std::abs(total_sum(f) - cplx(1.0, 0.0)) < 1e-15);
        CHECK(l1_norm(f) == doctest::Approx(1.25).epsilon(1e-15));
    }

    SUBCASE("difference basics") {
        const LatticeFunction d = difference(LatticeFunction::delta(0), 1);
        CHECK(std::abs(d.at(-1) - cplx(1.0, 0.0)) == 0.0);
        CHECK(std::abs(d.at(0) - cplx(-1.0, 0.0)) == 0.0);
        CHECK(difference(LatticeFunction::bernoulli(), 0).is_zero());
    }

    SUBCASE("difference against shift-subtract oracle") {
        std::mt19937_64 rng(23);
        const LatticeFunction f = random_function(rng, 6, 1.0);
        for (std::int64_t y : {-3, -1, 2, 5}) {
            const LatticeFunction d = difference(f, y);
            for (std::int64_t x = d.min_index() - 1; x <= d.max_index() + 1; ++x)
                CHECK(std::abs(d.at(x) - (f.at(x + y) - f.at(x))) == 0.0);
        }
    }
}

TEST_CASE("canonical representation") {
    SUBCASE("end zeros are trimmed") {
        const LatticeFunction f(3, {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(0.0, 0.0)});
        CHECK(f.offset() == 4);
        CHECK(f.support_width() == 1);
    }

    SUBCASE("all-zero collapses to the canonical zero") {
        const LatticeFunction f(17, {cplx(0.0, 0.0), cplx(0.0, 0.0)});
        CHECK(f.is_zero());
        CHECK(f.offset() == 0);
    }

    SUBCASE("interior zeros survive") {
        const LatticeFunction f = LatticeFunction::from_points({{0, 1.0}, {2, 1.0}});
        CHECK(f.support_width() == 3);
        CHECK(std::abs(f.at(1) - cplx(0.0, 0.0)) == 0.0);
    }

    SUBCASE("non-finite values are rejected") {
        CHECK_THROWS(LatticeFunction(0, {cplx(std::nan(""), 0.0)}));
        const LatticeFunction big(0, {cplx(1e308, 0.0), cplx(1e308, 0.0)});
        CHECK_THROWS_WITH(convolve(big, big), "non-finite result");
    }

    SUBCASE("walk measure symbol identity") {
        std::mt19937_64 rng(29);
        std::uniform_real_distribution<double> th(-M_PI, M_PI);
        for (int k : {1, 2, 3}) {
            for (double s : {0.3, 0.5}) {
                const LatticeFunction psi = walk_measure(s, k);
                CHECK(std::abs(total_sum(psi) - cplx(1.0, 0.0)) < 1e-14);
                for (int i = 0; i < 5; ++i) {
                    const double theta = th(rng);
                    const double expected =
                        1.0 - std::pow(s, k) * std::pow(1.0 - std::cos(theta), k);
                    CHECK(std::abs(eval_symbol(psi, theta) - cplx(expected, 0.0)) < 1e-12);
                }
            }
        }
    }
}
