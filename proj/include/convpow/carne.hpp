#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "convpow/lattice_function.hpp"

namespace convpow {

/// Hermitian contraction with half-bandwidth 1 on a weighted finite path,
/// self-adjoint for the pi-weighted inner product. The lower off-diagonal is
/// derived from the upper one, so self-adjointness holds by construction.
class BandedHermitian {
  public:
    BandedHermitian(std::vector<double> pi, std::vector<double> diag, std::vector<cplx> upper);

    /// Nearest-neighbor walk on {0..dim-1} with holding 1/2 in the interior
    /// and reflecting mass folded into the endpoints; pi is uniform and the
    /// spectrum lies in [0, 1].
    static BandedHermitian lazy_path(int dim);

    /// Weighted-graph walk: M(x,y) = w(x,y)/pi(x) with pi(x) = sum_y w(x,y).
    /// Edges must connect nearest neighbors or be self-loops.
    static BandedHermitian from_edges(
        const std::vector<std::tuple<std::int64_t, std::int64_t, double>>& edges);

    int dim() const { return static_cast<int>(diag_.size()); }
    const std::vector<double>& pi() const { return pi_; }
    cplx entry(int x, int y) const;

    void apply(const std::vector<cplx>& in, std::vector<cplx>& out) const;  // M v

    /// v - (I-M)^k v.
    void apply_mk(const std::vector<cplx>& in, std::vector<cplx>& out, int k) const;

    double pi_norm(const std::vector<cplx>& v) const;

    struct SpectrumCertificate {
        double lo = 0.0;
        double hi = 0.0;
        bool gershgorin = true;  // false when estimated by power iteration
    };

    /// Spectrum enclosure from Gershgorin discs of the symmetrized matrix;
    /// falls back to power-iteration estimates when the discs leave [-1, 1].
    SpectrumCertificate certify_spectrum() const;

  private:
    std::vector<double> pi_;
    std::vector<double> diag_;
    std::vector<cplx> upper_;  // M(i, i+1)
    std::vector<cplx> lower_;  // M(i+1, i), derived
};

/// Walk parameters tying the spectral floor a to the holding parameter s of
/// the underlying lazy measure, s = (1-a)/2 with s bounded away from the
/// instability threshold 2^{-1+1/k}.
struct WalkParams {
    double s;
    int k;
    double a;
    WalkParams(double s_, int k_);
};

double chebyshev_Q(std::int64_t m, double z);
cplx chebyshev_Q(std::int64_t m, cplx z);

/// Q_{a,m}(M) v via the three-term recurrence on (2M - (1+a)I) / (1-a).
std::vector<cplx> shifted_cheb_apply(const BandedHermitian& M, double a, std::int64_t m,
                                     const std::vector<cplx>& v);

/// Operator-norm discrepancy (20 random probes by default) between M_k^n and
/// the walk-weighted Chebyshev sum over the support of the walk distribution.
double transmutation_check(const BandedHermitian& M, const WalkParams& params, int n,
                           int probes = 20, std::uint64_t seed = 42);

struct CarneBoundReport {
    double c = 0.0;
    std::map<int, double> C;          // minimal constant per n
    std::map<int, double> classical;  // k = 1 only: constant against exp(-d^2/2n)
};

CarneBoundReport carne_bound_report(const BandedHermitian& M, int k,
                                    const std::vector<int>& n_list, double c = 0.1);

struct RegularizedBoundReport {
    double c = 0.0;
    int ell = 0;
    std::map<int, double> pointwise;  // minimal C in the pointwise display
    std::map<int, double> annulus;    // minimal C in the annulus l2 display
};

RegularizedBoundReport regularized_bound_report(const BandedHermitian& M, int k, int ell,
                                                const std::vector<int>& n_list, double c = 0.1);

struct DiagLowerReport {
    std::map<int, double> ratios;  // n -> M_k^{2n}(x,x) [(1+n)log(1+n)]^{1/(2k)} / pi(x)
    double median = 0.0;
    double min_over_median = 0.0;
    double max_over_median = 0.0;
};

/// Shape of the on-diagonal lower bound for the polynomial-volume case.
/// center = -1 picks the midpoint.
DiagLowerReport diag_lower_check(const BandedHermitian& M, int k, const std::vector<int>& n_list,
                                 int center = -1);

}  // namespace convpow
