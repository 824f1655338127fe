#include "convpow/carne.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <tuple>

namespace convpow {

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

BandedHermitian::BandedHermitian(std::vector<double> pi, std::vector<double> diag,
                                 std::vector<cplx> upper)
    : pi_(std::move(pi)), diag_(std::move(diag)), upper_(std::move(upper)) {
    const std::size_t n = diag_.size();
    if (n == 0) throw std::invalid_argument("BandedHermitian: empty");
    if (pi_.size() != n || upper_.size() + 1 != n)
        throw std::invalid_argument("BandedHermitian: inconsistent sizes");
    for (double w : pi_)
        if (!(w > 0.0)) throw std::invalid_argument("BandedHermitian: pi must be positive");
    lower_.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        lower_[i] = pi_[i] * std::conj(upper_[i]) / pi_[i + 1];
}

BandedHermitian BandedHermitian::lazy_path(int dim) {
    if (dim < 2) throw std::invalid_argument("lazy_path: dim must be >= 2");
    std::vector<double> pi(static_cast<std::size_t>(dim), 1.0);
    std::vector<double> diag(static_cast<std::size_t>(dim), 0.5);
    std::vector<cplx> upper(static_cast<std::size_t>(dim) - 1, cplx(0.25, 0.0));
    diag.front() = 0.75;
    diag.back() = 0.75;
    return BandedHermitian(std::move(pi), std::move(diag), std::move(upper));
}

BandedHermitian BandedHermitian::from_edges(
    const std::vector<std::tuple<std::int64_t, std::int64_t, double>>& edges) {
    if (edges.empty()) throw std::invalid_argument("from_edges: no edges");
    std::int64_t hi = 0;
    for (const auto& [x, y, w] : edges) {
        if (x < 0 || y < 0) throw std::invalid_argument("from_edges: negative vertex");
        if (std::llabs(x - y) > 1)
            throw std::invalid_argument("from_edges: edges must be nearest-neighbor");
        if (!(w > 0.0)) throw std::invalid_argument("from_edges: weights must be positive");
        hi = std::max({hi, x, y});
    }
    const std::size_t n = static_cast<std::size_t>(hi) + 1;
    std::vector<double> loop(n, 0.0), link(n > 1 ? n - 1 : 0, 0.0);
    for (const auto& [x, y, w] : edges) {
        if (x == y)
            loop[static_cast<std::size_t>(x)] += w;
        else
            link[static_cast<std::size_t>(std::min(x, y))] += w;
    }
    std::vector<double> pi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        pi[i] = loop[i];
        if (i > 0) pi[i] += link[i - 1];
        if (i + 1 < n) pi[i] += link[i];
        if (!(pi[i] > 0.0)) throw std::invalid_argument("from_edges: isolated vertex");
    }
    std::vector<double> diag(n);
    std::vector<cplx> upper(n - 1);
    for (std::size_t i = 0; i < n; ++i) diag[i] = loop[i] / pi[i];
    for (std::size_t i = 0; i + 1 < n; ++i) upper[i] = cplx(link[i] / pi[i], 0.0);
    return BandedHermitian(std::move(pi), std::move(diag), std::move(upper));
}

cplx BandedHermitian::entry(int x, int y) const {
    if (x < 0 || y < 0 || x >= dim() || y >= dim()) return cplx(0.0, 0.0);
    if (x == y) return cplx(diag_[static_cast<std::size_t>(x)], 0.0);
    if (y == x + 1) return upper_[static_cast<std::size_t>(x)];
    if (y == x - 1) return lower_[static_cast<std::size_t>(y)];
    return cplx(0.0, 0.0);
}

void BandedHermitian::apply(const std::vector<cplx>& in, std::vector<cplx>& out) const {
    const std::size_t n = diag_.size();
    if (in.size() != n) throw std::invalid_argument("apply: size mismatch");
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = diag_[i] * in[i];
        if (i + 1 < n) acc += upper_[i] * in[i + 1];
        if (i > 0) acc += lower_[i - 1] * in[i - 1];
        out[i] = acc;
    }
}

void BandedHermitian::apply_mk(const std::vector<cplx>& in, std::vector<cplx>& out, int k) const {
    if (k < 1) throw std::invalid_argument("apply_mk: k must be positive");
    std::vector<cplx> w = in, tmp;
    for (int j = 0; j < k; ++j) {
        apply(w, tmp);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= tmp[i];
    }
    out.resize(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] - w[i];
}

double BandedHermitian::pi_norm(const std::vector<cplx>& v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += pi_[i] * std::norm(v[i]);
    return std::sqrt(s);
}

BandedHermitian::SpectrumCertificate BandedHermitian::certify_spectrum() const {
    const std::size_t n = diag_.size();
    SpectrumCertificate cert;
    cert.lo = 1e308;
    cert.hi = -1e308;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i + 1 < n) r += std::abs(upper_[i]) * std::sqrt(pi_[i] / pi_[i + 1]);
        if (i > 0) r += std::abs(upper_[i - 1]) * std::sqrt(pi_[i] / pi_[i - 1]);
        cert.lo = std::fmin(cert.lo, diag_[i] - r);
        cert.hi = std::fmax(cert.hi, diag_[i] + r);
    }
    if (cert.lo >= -1.0 - 1e-9 && cert.hi <= 1.0 + 1e-9) return cert;

    // Discs leave [-1,1]: estimate the extreme eigenvalues instead.
    cert.gershgorin = false;
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto extreme = [&](double shift_sign) {
        std::vector<cplx> v(n), w;
        for (auto& z : v) z = cplx(gauss(rng), gauss(rng));
        double lambda = 0.0;
        for (int it = 0; it < 200; ++it) {
            apply(v, w);
            // power iteration on shift_sign * M + 2I keeps the target extreme dominant
            for (std::size_t i = 0; i < n; ++i) w[i] = shift_sign * w[i] + 2.0 * v[i];
            const double norm = pi_norm(w);
            if (norm == 0.0) break;
            for (auto& z : w) z /= norm;
            v = w;
            lambda = norm - 2.0;
        }
        return shift_sign * lambda;
    };
    cert.hi = extreme(1.0);
    cert.lo = extreme(-1.0);
    return cert;
}

WalkParams::WalkParams(double s_, int k_) : s(s_), k(k_), a(1.0 - 2.0 * s_) {
    if (k < 1) throw std::invalid_argument("WalkParams: k must be positive");
    const double s_limit = std::pow(2.0, -1.0 + 1.0 / k);
    if (!(s > 0.0 && s < s_limit))
        throw std::invalid_argument("WalkParams: need 0 < s < 2^{-1+1/k}");
}

double chebyshev_Q(std::int64_t m, double z) {
    m = std::llabs(m);
    if (m > 1000000) throw std::invalid_argument("chebyshev_Q: order too large");
    if (m == 0) return 1.0;
    double prev = 1.0, cur = z;
    for (std::int64_t j = 1; j < m; ++j) {
        const double next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

cplx chebyshev_Q(std::int64_t m, cplx z) {
    m = std::llabs(m);
    if (m > 1000000) throw std::invalid_argument("chebyshev_Q: order too large");
    if (m == 0) return cplx(1.0, 0.0);
    cplx prev(1.0, 0.0), cur = z;
    for (std::int64_t j = 1; j < m; ++j) {
        const cplx next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// y = (2 M - (1+a) I) v / (1-a)
void apply_mapped(const BandedHermitian& M, double a, const std::vector<cplx>& v,
                  std::vector<cplx>& out) {
    M.apply(v, out);
    const double scale = 1.0 / (1.0 - a);
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = (2.0 * out[i] - (1.0 + a) * v[i]) * scale;
}

std::vector<cplx> random_probe(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& z : v) z = cplx(gauss(rng), gauss(rng));
    return v;
}

}  // namespace

std::vector<cplx> shifted_cheb_apply(const BandedHermitian& M, double a, std::int64_t m,
                                     const std::vector<cplx>& v) {
    if (a >= 1.0) throw std::invalid_argument("shifted_cheb_apply: invalid interval");
    m = std::llabs(m);
    if (m == 0) return v;
    std::vector<cplx> prev = v, cur, next;
    apply_mapped(M, a, v, cur);
    for (std::int64_t j = 1; j < m; ++j) {
        apply_mapped(M, a, cur, next);
        for (std::size_t i = 0; i < v.size(); ++i) next[i] = 2.0 * next[i] - prev[i];
        prev.swap(cur);
        cur.swap(next);
    }
    return cur;
}

double transmutation_check(const BandedHermitian& M, const WalkParams& params, int n, int probes,
                           std::uint64_t seed) {
    if (n < 0 || n > 200) throw std::invalid_argument("transmutation_check: need 0 <= n <= 200");
    if (M.dim() > 2001) throw std::invalid_argument("transmutation_check: dim too large");
    const auto cert = M.certify_spectrum();
    if (cert.lo < params.a - 1e-9 || cert.hi > 1.0 + 1e-9)
        throw std::invalid_argument("transmutation_check: spectrum outside [a, 1]");

    const LatticeFunction psi_n =
        power(walk_measure(params.s, params.k), n, PowerMethod::Squaring);
    const std::int64_t L = std::max(psi_n.max_index(), -psi_n.min_index());
    const std::size_t dim = static_cast<std::size_t>(M.dim());

    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int pr = 0; pr < probes; ++pr) {
        const std::vector<cplx> v = random_probe(dim, rng);

        // direct side: n applications of M_k
        std::vector<cplx> direct = v, tmp;
        for (int i = 0; i < n; ++i) {
            M.apply_mk(direct, tmp, params.k);
            direct.swap(tmp);
        }

        // transmutation side: Chebyshev recurrence with walk weights
        std::vector<cplx> acc(dim, cplx(0.0, 0.0));
        std::vector<cplx> prev = v, cur, next;
        const cplx w0 = psi_n.at(0);
        for (std::size_t i = 0; i < dim; ++i) acc[i] = w0 * v[i];
        if (L >= 1) {
            apply_mapped(M, params.a, v, cur);
            const cplx w1 = psi_n.at(1) + psi_n.at(-1);
            for (std::size_t i = 0; i < dim; ++i) acc[i] += w1 * cur[i];
            for (std::int64_t mdeg = 2; mdeg <= L; ++mdeg) {
                apply_mapped(M, params.a, cur, next);
                for (std::size_t i = 0; i < dim; ++i) next[i] = 2.0 * next[i] - prev[i];
                prev.swap(cur);
                cur.swap(next);
                const cplx wm = psi_n.at(mdeg) + psi_n.at(-mdeg);
                if (wm != cplx(0.0, 0.0))
                    for (std::size_t i = 0; i < dim; ++i) acc[i] += wm * cur[i];
            }
        }

        for (std::size_t i = 0; i < dim; ++i) acc[i] -= direct[i];
        worst = std::fmax(worst, M.pi_norm(acc) / M.pi_norm(v));
    }
    return worst;
}

namespace {

// Columns of M_k^n, evolved one multiplication per step; cols[y] holds the
// vector M_k^n e_y, so cols[y][x] = M_k^n(x, y).
class MkPowerColumns {
  public:
    MkPowerColumns(const BandedHermitian& M, int k)
        : M_(M), k_(k), n_(0), cols_(static_cast<std::size_t>(M.dim())) {
        for (std::size_t y = 0; y < cols_.size(); ++y) {
            cols_[y].assign(cols_.size(), cplx(0.0, 0.0));
            cols_[y][y] = cplx(1.0, 0.0);
        }
    }

    void advance_to(int n) {
        std::vector<cplx> tmp;
        for (; n_ < n; ++n_)
            for (auto& col : cols_) {
                M_.apply_mk(col, tmp, k_);
                col.swap(tmp);
            }
    }

    cplx entry(int x, int y) const {
        return cols_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
    }

    int n() const { return n_; }

  private:
    const BandedHermitian& M_;
    int k_;
    int n_;
    std::vector<std::vector<cplx>> cols_;
};

}  // namespace

CarneBoundReport carne_bound_report(const BandedHermitian& M, int k,
                                    const std::vector<int>& n_list, double c) {
    CarneBoundReport rep;
    rep.c = c;
    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());
    const double expo = 2.0 * k / (2.0 * k - 1.0);
    MkPowerColumns cols(M, k);
    const auto& pi = M.pi();
    for (int n : ns) {
        cols.advance_to(n);
        const double n_scale = std::pow(static_cast<double>(n), 1.0 / (2.0 * k));
        double log_best = -1e308, log_best_cv = -1e308;
        for (int x = 0; x < M.dim(); ++x) {
            for (int y = 0; y < M.dim(); ++y) {
                const double mag = std::abs(cols.entry(x, y));
                if (mag == 0.0) continue;
                const double d = std::abs(x - y);
                const double pw = 0.5 * (std::log(pi[static_cast<std::size_t>(y)]) -
                                         std::log(pi[static_cast<std::size_t>(x)]));
                log_best =
                    std::fmax(log_best, std::log(mag) + pw + c * std::pow(d / n_scale, expo));
                if (k == 1)
                    log_best_cv =
                        std::fmax(log_best_cv, std::log(mag) + pw + d * d / (2.0 * n));
            }
        }
        rep.C[n] = std::exp(log_best);
        if (k == 1) rep.classical[n] = std::exp(log_best_cv);
    }
    return rep;
}

RegularizedBoundReport regularized_bound_report(const BandedHermitian& M, int k, int ell,
                                                const std::vector<int>& n_list, double c) {
    if (ell < 0 || ell > 3)
        throw std::invalid_argument("regularized_bound_report: need 0 <= ell <= 3");
    RegularizedBoundReport rep;
    rep.c = c;
    rep.ell = ell;
    if (ell == 0) {
        rep.pointwise = carne_bound_report(M, k, n_list, c).C;
        return rep;
    }

    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());
    const double expo = 2.0 * k / (2.0 * k - 1.0);
    const auto& pi = M.pi();
    const int center = M.dim() / 2;
    MkPowerColumns cols(M, k);
    std::vector<cplx> col(static_cast<std::size_t>(M.dim())), tmp;
    for (int n : ns) {
        cols.advance_to(n);
        const double n_scale = std::pow(static_cast<double>(n), 1.0 / (2.0 * k));
        const double log_decay_gain = (static_cast<double>(ell) / k) * std::log1p(n);
        double log_best = -1e308;
        // center-row magnitudes of (I-M)^ell M_k^n, collected for the annulus sum
        std::vector<double> row_mag(static_cast<std::size_t>(M.dim()), 0.0);
        for (int y = 0; y < M.dim(); ++y) {
            for (int x = 0; x < M.dim(); ++x) col[static_cast<std::size_t>(x)] = cols.entry(x, y);
            for (int j = 0; j < ell; ++j) {
                M.apply(col, tmp);
                for (std::size_t i = 0; i < col.size(); ++i) col[i] -= tmp[i];
            }
            row_mag[static_cast<std::size_t>(y)] = std::abs(col[static_cast<std::size_t>(center)]);
            for (int x = 0; x < M.dim(); ++x) {
                const double mag = std::abs(col[static_cast<std::size_t>(x)]);
                if (mag == 0.0) continue;
                const double d = std::abs(x - y);
                const double pw = 0.5 * (std::log(pi[static_cast<std::size_t>(y)]) -
                                         std::log(pi[static_cast<std::size_t>(x)]));
                const double lg = std::log(mag) + pw + log_decay_gain +
                                  c * std::pow(d / n_scale, expo);
                log_best = std::fmax(log_best, lg);
            }
        }
        rep.pointwise[n] = std::exp(log_best / ell);

        // annulus display at x = center, r = 2 n^{1/2k}, R = 4r
        const double r = 2.0 * n_scale;
        const double R = 4.0 * r;
        double lhs = 0.0;
        for (int y = 0; y < M.dim(); ++y) {
            const double d = std::abs(y - center);
            if (d > r && d <= R)
                lhs += row_mag[static_cast<std::size_t>(y)] * row_mag[static_cast<std::size_t>(y)] *
                       pi[static_cast<std::size_t>(y)];
        }
        if (lhs > 0.0) {
            const double lg = std::log(lhs) + log_decay_gain + c * std::pow(r / n_scale, expo) -
                              0.5 * std::log(pi[static_cast<std::size_t>(center)]);
            rep.annulus[n] = std::exp(lg / ell);
        } else {
            rep.annulus[n] = 0.0;
        }
    }
    return rep;
}

DiagLowerReport diag_lower_check(const BandedHermitian& M, int k, const std::vector<int>& n_list,
                                 int center) {
    if (n_list.empty()) throw std::invalid_argument("diag_lower_check: empty n list");
    if (center < 0) center = M.dim() / 2;
    // mass conservation is part of the hypothesis
    for (int x = 0; x < M.dim(); ++x) {
        cplx row_sum(0.0, 0.0);
        for (int y = std::max(0, x - 1); y <= std::min(M.dim() - 1, x + 1); ++y)
            row_sum += M.entry(x, y);
        if (std::abs(row_sum - cplx(1.0, 0.0)) > 1e-9)
            throw std::invalid_argument("diag_lower_check: row sums must equal 1");
    }
    const int n_max = *std::max_element(n_list.begin(), n_list.end());
    const double reach = 4.0 * std::pow(static_cast<double>(n_max), 1.0 / (2.0 * k)) *
                         std::log(static_cast<double>(n_max));
    if (center < reach || (M.dim() - 1 - center) < reach)
        throw std::runtime_error("truncation effect");

    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());
    std::vector<cplx> v(static_cast<std::size_t>(M.dim()), cplx(0.0, 0.0)), tmp;
    v[static_cast<std::size_t>(center)] = cplx(1.0, 0.0);
    DiagLowerReport rep;
    int step = 0;
    for (int n : ns) {
        for (; step < 2 * n; ++step) {
            M.apply_mk(v, tmp, k);
            v.swap(tmp);
        }
        const double diag_val = v[static_cast<std::size_t>(center)].real();
        const double bracket =
            std::pow((1.0 + n) * std::log1p(static_cast<double>(n)), 1.0 / (2.0 * k));
        rep.ratios[n] = diag_val * bracket / M.pi()[static_cast<std::size_t>(center)];
    }
    std::vector<double> vals;
    for (const auto& [n, r] : rep.ratios) vals.push_back(r);
    rep.median = median_of(vals);
    double lo = 1e308, hi = -1e308;
    for (double r : vals) {
        lo = std::fmin(lo, r);
        hi = std::fmax(hi, r);
    }
    rep.min_over_median = rep.median != 0.0 ? lo / rep.median : 0.0;
    rep.max_over_median = rep.median != 0.0 ? hi / rep.median : 0.0;
    return rep;
}

}  // namespace convpow
