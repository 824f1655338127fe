#include "convpow/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "convpow/llt.hpp"

namespace convpow {

LatticeFunction quartic_smoother() {
    return LatticeFunction::from_points({{-2, cplx(-1.0 / 9.0, 0.0)},
                                         {-1, cplx(4.0 / 9.0, 0.0)},
                                         {0, cplx(1.0 / 3.0, 0.0)},
                                         {1, cplx(4.0 / 9.0, 0.0)},
                                         {2, cplx(-1.0 / 9.0, 0.0)}});
}

LatticeFunction cubic_drift_family(double a) {
    return LatticeFunction::from_points({{-1, cplx(a, 0.0)},
                                         {0, cplx(1.0 - 3.0 * a, 0.0)},
                                         {1, cplx(3.0 * a, 0.0)},
                                         {2, cplx(-a, 0.0)}});
}

LatticeFunction cos4_symbol_function() {
    return LatticeFunction::from_points({{-4, cplx(-1.0 / 16.0, 0.0)},
                                         {-2, cplx(-1.0 / 4.0, 0.0)},
                                         {0, cplx(5.0 / 8.0, 0.0)},
                                         {2, cplx(-1.0 / 4.0, 0.0)},
                                         {4, cplx(-1.0 / 16.0, 0.0)}});
}

LatticeFunction three_point(double a0, double ap, double am) {
    return LatticeFunction::from_points(
        {{-1, cplx(am, 0.0)}, {0, cplx(a0, 0.0)}, {1, cplx(ap, 0.0)}});
}

LatticeFunction binomial_smoother(double lambda, int k) {
    LatticeFunction base = LatticeFunction::from_points(
        {{-1, cplx(-0.5, 0.0)}, {0, cplx(1.0, 0.0)}, {1, cplx(-0.5, 0.0)}});  // delta0 - beta
    LatticeFunction pk = scale(power(base, k, PowerMethod::Direct), cplx(lambda, 0.0));
    const std::int64_t lo = std::min<std::int64_t>(pk.min_index(), 0);
    const std::int64_t hi = std::max<std::int64_t>(pk.max_index(), 0);
    std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1), cplx(0.0, 0.0));
    out[static_cast<std::size_t>(-lo)] = cplx(1.0, 0.0);
    for (std::int64_t x = pk.min_index(); x <= pk.max_index(); ++x)
        out[static_cast<std::size_t>(x - lo)] -= pk.at(x);
    return LatticeFunction(lo, std::move(out));
}

ThreePointForms three_point_forms(double a0, double ap, double am) {
    ThreePointForms out;
    const double s = ap + am;
    const double d = ap - am;
    const bool twin = ap * am < 0.0 && 4.0 * std::abs(ap * am) > a0 * std::abs(s);
    out.twin = twin;
    if (!twin) {
        // single maximum at 0 or pi; A = |symbol| at the dominant endpoint
        out.A = a0 + std::abs(s);
        const double theta0 = s > 0.0 ? 0.0 : M_PI;
        const double sign = s > 0.0 ? 1.0 : -1.0;
        const double alpha = sign * d / out.A;
        const double gamma = std::abs(s) / (2.0 * out.A) - 0.5 * alpha * alpha;
        out.points.push_back({theta0, alpha, cplx(gamma, 0.0)});
        return out;
    }
    const double prod = std::abs(ap * am);
    out.A = std::abs(d) * std::sqrt(1.0 + a0 * a0 / (4.0 * prod));
    const double theta0 = std::acos(a0 * s / (4.0 * prod));
    const double alpha = s / d;
    const double b = 4.0 * a0 * prod * std::sin(theta0) / (d * (4.0 * prod + a0 * a0));
    const double gamma =
        (16.0 * prod * prod - a0 * a0 * s * s) / (2.0 * (a0 * a0 + 4.0 * prod) * d * d);
    out.points.push_back({-theta0, alpha, cplx(gamma, -b)});
    out.points.push_back({theta0, alpha, cplx(gamma, b)});
    return out;
}

namespace {

struct Harness {
    std::ostream& out;
    bool pass = true;

    void check(bool ok, const std::string& label, const std::string& detail = "") {
        out << (ok ? "  ok   " : "  FAIL ") << label;
        if (!detail.empty()) out << "  (" << detail << ")";
        out << "\n";
        pass = pass && ok;
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

bool decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

}  // namespace

bool check_expected_analysis(const LatticeFunction& f, const ExpectedAnalysis& exp,
                             std::ostream& out) {
    Harness h{out};
    const SymbolAnalysis an = analyze(f);
    if (exp.normalization)
        h.check(std::abs(an.normalization - *exp.normalization) <= exp.tol, "normalization",
                fmt(an.normalization));
    if (!exp.thetas.empty()) {
        std::vector<double> got;
        for (const auto& p : an.points) got.push_back(p.theta);
        std::sort(got.begin(), got.end());
        bool ok = got.size() == exp.thetas.size();
        if (ok)
            for (std::size_t i = 0; i < got.size(); ++i)
                ok = ok && std::abs(got[i] - exp.thetas[i]) <= exp.tol;
        std::ostringstream detail;
        detail << got.size() << " maxima";
        h.check(ok, "maximum-modulus points", detail.str());
    }
    for (const auto& p : an.points) {
        if (exp.alpha) h.check(std::abs(p.alpha - *exp.alpha) <= exp.tol, "alpha", fmt(p.alpha));
        if (exp.nu) h.check(p.nu == *exp.nu, "nu", std::to_string(p.nu));
        if (exp.gamma)
            h.check(std::abs(p.gamma - *exp.gamma) <= exp.tol, "gamma",
                    fmt(p.gamma.real()) + (p.gamma.imag() >= 0 ? "+" : "") + fmt(p.gamma.imag()) + "i");
    }
    if (exp.verdict) {
        const LatticeFunction f0 = scale(f, cplx(1.0 / an.normalization, 0.0));
        const StabilityVerdict v = classify_stability(analyze(f0), f0);
        h.check(v.verdict == *exp.verdict, "stability verdict");
    }
    return h.pass;
}

namespace {

std::vector<ExampleFixture> build_registry() {
    std::vector<ExampleFixture> reg;

    auto add_analysis_fixture = [&reg](std::string name, std::string prov, std::string desc,
                                       LatticeFunction f, ExpectedAnalysis exp) {
        ExampleFixture fx;
        fx.name = std::move(name);
        fx.provenance = std::move(prov);
        fx.description = std::move(desc);
        fx.function = f;
        fx.expected = exp;
        fx.run = [f, exp](std::ostream& out, std::uint64_t) {
            return check_expected_analysis(f, exp, out);
        };
        reg.push_back(std::move(fx));
    };

    {
        ExpectedAnalysis e;
        e.normalization = 1.0;
        e.verdict = StabilityCase::TrivialShift;
        add_analysis_fixture("delta0", "trivial", "unit mass at the origin",
                             LatticeFunction::delta(0), e);
        add_analysis_fixture("delta5", "trivial", "unit mass at 5, a pure shift",
                             LatticeFunction::delta(5), e);
    }

    {
        ExpectedAnalysis e;
        e.normalization = 1.0;
        e.thetas = {0.0};
        e.alpha = 0.0;
        e.nu = 4;
        e.gamma = cplx(1.0 / 9.0, 0.0);
        e.verdict = StabilityCase::Stable;
        add_analysis_fixture("eq12", "reference",
                             "quartic smoother -1/9,4/9,1/3,4/9,-1/9 preserving quadratics",
                             quartic_smoother(), e);
    }

    {
        ExpectedAnalysis e;
        e.normalization = 1.0;
        e.thetas = {-M_PI / 2.0, M_PI / 2.0};
        e.alpha = 0.0;
        e.nu = 4;
        e.gamma = cplx(1.0, 0.0);
        e.verdict = StabilityCase::Stable;
        add_analysis_fixture("cos4", "reference",
                             "symbol 1 - cos^4(theta), twin maxima at +-pi/2",
                             cos4_symbol_function(), e);
    }

    {
        ExpectedAnalysis e;
        e.normalization = 1.0;
        e.thetas = {0.0, M_PI};
        e.alpha = 0.0;
        e.nu = 2;
        e.gamma = cplx(0.5, 0.0);
        e.verdict = StabilityCase::Stable;
        add_analysis_fixture("bernoulli", "reference", "symbol cos(theta), periodic walk",
                             LatticeFunction::bernoulli(), e);
    }

    {
        ExpectedAnalysis e;
        e.normalization = 1.0;
        e.thetas = {0.0};
        e.alpha = 0.0;
        e.nu = 2;
        e.gamma = cplx(0.25, 0.0);
        e.verdict = StabilityCase::Stable;
        add_analysis_fixture("bernoulli-lazy", "derived", "symbol (1+cos(theta))/2",
                             LatticeFunction::lazy_bernoulli(0.5), e);
    }

    {
        ExpectedAnalysis e;
        e.normalization = 1.0;
        e.thetas = {0.0};
        e.alpha = 0.0;
        e.nu = 6;
        e.gamma = cplx(1.0 / 16.0, 0.0);
        e.verdict = StabilityCase::Stable;
        add_analysis_fixture("smoother-k3", "reference",
                             "symbol 1 - (1/2)(1-cos theta)^3, sixth-order decay",
                             binomial_smoother(0.5, 3), e);
    }

    {
        // drift family at a = 1/8
        ExampleFixture fx;
        fx.name = "eq14-a0.125";
        fx.provenance = "derived";
        fx.description = "cubic-drift family a=1/8: unstable with growth exponent 1/8";
        fx.function = cubic_drift_family(0.125);
        ExpectedAnalysis e;
        e.normalization = 1.0;
        e.thetas = {0.0};
        e.alpha = 0.0;
        e.verdict = StabilityCase::Unstable;
        fx.expected = e;
        fx.run = [](std::ostream& out, std::uint64_t) {
            Harness h{out};
            const LatticeFunction f = cubic_drift_family(0.125);
            const SymbolAnalysis an = analyze(f);
            h.check(an.points.size() == 1, "single maximum");
            const MaxPoint& p = an.points[0];
            h.check(p.mu == 3, "mu = 3", std::to_string(p.mu));
            h.check(std::abs(p.expansion[2] - cplx(0.0, 0.125)) <= 1e-9, "c3 = i/8");
            h.check(p.nu == 4, "nu = 4", std::to_string(p.nu));
            h.check(std::abs(p.expansion[3].real() + 1.0 / 16.0) <= 1e-9, "Re c4 = -1/16");
            const StabilityVerdict v = classify_stability(an, f);
            h.check(v.verdict == StabilityCase::Unstable, "unstable");
            h.check(v.growth_exponent && std::abs(*v.growth_exponent - 0.125) <= 1e-12,
                    "growth exponent 1/8");
            return h.pass;
        };
        reg.push_back(std::move(fx));
    }

    {
        ExampleFixture fx;
        fx.name = "eq12-llt";
        fx.provenance = "reference";
        fx.description = "quartic smoother versus its order-4 kernel limit";
        fx.function = quartic_smoother();
        fx.run = [](std::ostream& out, std::uint64_t) {
            Harness h{out};
            const LatticeFunction f = quartic_smoother();
            const auto reports = llt_error_curve(f, analyze(f), {200, 800, 3200});
            std::vector<double> errs;
            for (const auto& r : reports) errs.push_back(r.sup_error_scaled);
            h.check(decreasing(errs), "scaled sup error decreasing",
                    fmt(errs[0]) + " > " + fmt(errs[1]) + " > " + fmt(errs[2]));
            h.check(errs.back() <= 0.05, "error at n=3200 below 0.05", fmt(errs.back()));
            return h.pass;
        };
        reg.push_back(std::move(fx));
    }

    {
        ExampleFixture fx;
        fx.name = "cos4-llt";
        fx.provenance = "reference";
        fx.description = "twin-maxima function versus 2cos(pi x/2) kernel sum";
        fx.function = cos4_symbol_function();
        fx.run = [](std::ostream& out, std::uint64_t) {
            Harness h{out};
            const LatticeFunction f = cos4_symbol_function();
            const auto reports = llt_error_curve(f, analyze(f), {200, 800, 3200});
            std::vector<double> errs;
            for (const auto& r : reports) errs.push_back(r.sup_error_scaled);
            h.check(decreasing(errs), "scaled sup error decreasing",
                    fmt(errs[0]) + " > " + fmt(errs[1]) + " > " + fmt(errs[2]));
            return h.pass;
        };
        reg.push_back(std::move(fx));
    }

    {
        ExampleFixture fx;
        fx.name = "eq14-llt3";
        fx.provenance = "derived";
        fx.description = "cubic-drift family a=1/8 versus the order-3 kernel";
        fx.function = cubic_drift_family(0.125);
        fx.run = [](std::ostream& out, std::uint64_t) {
            Harness h{out};
            const LatticeFunction f = cubic_drift_family(0.125);
            const auto reports = llt_odd3_error_curve(f, analyze(f), {500, 2000, 8000});
            std::vector<double> errs;
            for (const auto& r : reports) errs.push_back(r.sup_error_scaled);
            h.check(decreasing(errs), "scaled sup error decreasing",
                    fmt(errs[0]) + " > " + fmt(errs[1]) + " > " + fmt(errs[2]));
            return h.pass;
        };
        reg.push_back(std::move(fx));
    }

    {
        ExampleFixture fx;
        fx.name = "threept";
        fx.provenance = "derived";
        fx.description = "three-point function (1/2, 1/4, -1/4): twin-maxima closed forms";
        fx.function = three_point(0.5, 0.25, -0.25);
        fx.run = [](std::ostream& out, std::uint64_t) {
            Harness h{out};
            const LatticeFunction f = three_point(0.5, 0.25, -0.25);
            const ThreePointForms forms = three_point_forms(0.5, 0.25, -0.25);
            const SymbolAnalysis an = analyze(f);
            h.check(std::abs(an.normalization - forms.A) <= 1e-8, "A = 1/sqrt(2)",
                    fmt(an.normalization));
            h.check(an.points.size() == 2, "two maxima");
            std::vector<MaxPoint> pts = an.points;
            std::sort(pts.begin(), pts.end(),
                      [](const MaxPoint& a, const MaxPoint& b) { return a.theta < b.theta; });
            for (std::size_t i = 0; i < pts.size() && i < forms.points.size(); ++i) {
                h.check(std::abs(pts[i].theta - forms.points[i].theta) <= 1e-8, "theta");
                h.check(std::abs(pts[i].alpha - forms.points[i].alpha) <= 1e-8, "alpha");
                h.check(std::abs(pts[i].gamma - forms.points[i].gamma) <= 1e-8, "gamma");
            }
            return h.pass;
        };
        reg.push_back(std::move(fx));
    }

    {
        ExampleFixture fx;
        fx.name = "threept-random";
        fx.provenance = "derived";
        fx.description = "random three-point functions against the closed forms, 200 per regime";
        fx.function = three_point(0.5, 0.25, -0.25);
        fx.run = [](std::ostream& out, std::uint64_t seed) {
            Harness h{out};
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            int checked[3] = {0, 0, 0};
            double worst = 0.0;
            while (checked[0] < 200 || checked[1] < 200 || checked[2] < 200) {
                const double a0 = 0.2 + 1.8 * u01(rng);
                double ap = -2.0 + 4.0 * u01(rng);
                double am = -2.0 + 4.0 * u01(rng);
                if (std::abs(ap) < 0.05 || std::abs(am) < 0.05) continue;
                const double s = ap + am, d = ap - am;
                if (std::abs(s) < 0.05 || std::abs(d) < 0.05) continue;
                const double lhs = 4.0 * std::abs(ap * am), rhs = a0 * std::abs(s);
                if (lhs > 0.95 * rhs && lhs < 1.05 * rhs) continue;  // near the boundary
                int regime;
                if (ap * am < 0.0 && lhs > rhs)
                    regime = 2;  // twin maxima
                else
                    regime = s > 0.0 ? 0 : 1;  // single maximum at 0 or pi
                if (checked[regime] >= 200) continue;
                ++checked[regime];

                const ThreePointForms forms = three_point_forms(a0, ap, am);
                const SymbolAnalysis an = analyze(three_point(a0, ap, am));
                double err = std::abs(an.normalization - forms.A);
                bool ok = an.points.size() == forms.points.size();
                if (ok) {
                    std::vector<MaxPoint> pts = an.points;
                    std::sort(pts.begin(), pts.end(), [](const MaxPoint& a, const MaxPoint& b) {
                        return a.theta < b.theta;
                    });
                    for (std::size_t i = 0; i < pts.size(); ++i) {
                        err = std::fmax(err, std::abs(pts[i].theta - forms.points[i].theta));
                        err = std::fmax(err, std::abs(pts[i].alpha - forms.points[i].alpha));
                        err = std::fmax(err, std::abs(pts[i].gamma - forms.points[i].gamma));
                    }
                }
                if (!ok || err > 1e-7) {
                    std::ostringstream os;
                    os << "a0=" << a0 << " ap=" << ap << " am=" << am << " err=" << err;
                    h.check(false, "closed-form match", os.str());
                    return h.pass;
                }
                worst = std::fmax(worst, err);
            }
            h.check(true, "600 random draws match closed forms", "worst error " + fmt(worst));
            return h.pass;
        };
        reg.push_back(std::move(fx));
    }

    {
        ExampleFixture fx;
        fx.name = "twin-limit";
        fx.provenance = "reference";
        fx.description = "2 beta_s - beta_s^2 at s = 1/sqrt(2): orders 4 at 0 and 2 at pi";
        const double s = 1.0 / std::sqrt(2.0);
        const LatticeFunction bs = LatticeFunction::lazy_bernoulli(s);
        const LatticeFunction two_bs = scale(bs, cplx(2.0, 0.0));
        const LatticeFunction bs2 = convolve(bs, bs);
        const std::int64_t lo = std::min(two_bs.min_index(), bs2.min_index());
        const std::int64_t hi = std::max(two_bs.max_index(), bs2.max_index());
        std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
        for (std::int64_t x = lo; x <= hi; ++x)
            c[static_cast<std::size_t>(x - lo)] = two_bs.at(x) - bs2.at(x);
        const LatticeFunction f(lo, std::move(c));
        fx.function = f;
        fx.run = [f](std::ostream& out, std::uint64_t) {
            Harness h{out};
            const SymbolAnalysis an = analyze(f);
            h.check(an.points.size() == 2, "two maxima");
            for (const auto& p : an.points) {
                if (std::abs(p.theta) < 1e-6) {
                    h.check(p.nu == 4, "nu = 4 at 0", std::to_string(p.nu));
                    h.check(std::abs(p.gamma - cplx(0.125, 0.0)) <= 1e-8, "gamma = 1/8 at 0");
                } else {
                    h.check(std::abs(std::abs(p.theta) - M_PI) <= 1e-8, "second maximum at pi");
                    h.check(p.nu == 2, "nu = 2 at pi", std::to_string(p.nu));
                }
            }
            const auto reports = llt_error_curve(f, an, {400, 1600});
            h.check(reports[1].sup_error_scaled < reports[0].sup_error_scaled,
                    "scaled error decreasing with the order-2 point dropped",
                    fmt(reports[0].sup_error_scaled) + " > " + fmt(reports[1].sup_error_scaled));
            return h.pass;
        };
        reg.push_back(std::move(fx));
    }

    return reg;
}

}  // namespace

const std::vector<ExampleFixture>& fixture_registry() {
    static const std::vector<ExampleFixture> reg = build_registry();
    return reg;
}

const ExampleFixture* find_fixture(const std::string& name) {
    for (const auto& fx : fixture_registry())
        if (fx.name == name) return &fx;
    return nullptr;
}

}  // namespace convpow
