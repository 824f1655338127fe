#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "convpow/kernels.hpp"
#include "convpow/symbol.hpp"

namespace convpow {

/// Scaled sup error between an exact convolution power and its kernel
/// approximation, together with the approximation over the window.
struct LLTReport {
    std::int64_t n = 0;
    double sup_error_scaled = 0.0;
    std::int64_t window_offset = 0;
    std::vector<cplx> approx;
};

struct DecayFit {
    double c = 0.0;
    std::map<std::int64_t, double> C_of_n;
    double exponent = 0.0;  // nu/(nu-1)
};

struct MultipointReport {
    std::map<std::int64_t, double> per_n;
    double overall = 0.0;
};

struct NearDiagonalEntry {
    std::int64_t n = 0;
    double min_scaled_re = 0.0;
    double min_scaled_im = 0.0;
    double max_scaled_im = 0.0;
    int im_sign_agree = 0;  // count of window points whose Im sign matches sign(Im gamma)
    int im_sign_total = 0;
};

/// Kernel-sum approximation built from an analysis whose principal points all
/// decay at the same even order. Points of lower order contribute o(n^{-1/m})
/// and are dropped from the sum.
class LltApproximator {
  public:
    explicit LltApproximator(const SymbolAnalysis& analysis);

    cplx operator()(std::int64_t n, std::int64_t x) const;
    int order() const { return m_; }

  private:
    struct Term {
        double theta;
        cplx value;
        double alpha;
        double b;  // Re(gamma)
        KernelEvaluator kernel;
    };
    int m_ = 0;
    std::vector<Term> terms_;
};

cplx llt_approx(const SymbolAnalysis& analysis, std::int64_t n, std::int64_t x);

/// Order-3 approximation for a real function with a single maximum at 0 whose
/// expansion starts with a purely imaginary cubic term.
double llt_odd3_approx(const LatticeFunction& f, const SymbolAnalysis& analysis, std::int64_t n,
                       std::int64_t x);

std::vector<LLTReport> llt_error_curve(const LatticeFunction& f, const SymbolAnalysis& analysis,
                                       const std::vector<std::int64_t>& n_list, int threads = 1);

/// Like llt_error_curve but against the order-3 approximation.
std::vector<LLTReport> llt_odd3_error_curve(const LatticeFunction& f,
                                            const SymbolAnalysis& analysis,
                                            const std::vector<std::int64_t>& n_list);

/// Pointwise minimal constant in the off-diagonal decay bound
/// |f^(n)(x)| <= C n^{-1/nu} exp(-c (|x - alpha n| / n^{1/nu})^{nu/(nu-1)}),
/// per n at fixed c. c = 0 selects half the saddle rate.
DecayFit verify_decay_bound(const LatticeFunction& f, const SymbolAnalysis& analysis,
                            const std::vector<std::int64_t>& n_list, double c = 0.0);

/// Minimal C' in the iterated-difference bound at fixed c, scanning x.
double verify_regularity_bound(const LatticeFunction& f, const SymbolAnalysis& analysis,
                               std::int64_t n, const std::vector<std::int64_t>& y_list,
                               double c = 0.0);

/// Minimal C_N in the multi-point bound
/// |f^(n)(x)| <= C_N sum_q n^{-1/nu_q} (1 + |x - alpha_q n| / n^{1/nu_q})^{-N}.
MultipointReport verify_multipoint_bound(const LatticeFunction& f, const SymbolAnalysis& analysis,
                                         const std::vector<std::int64_t>& n_list, int N);

/// Near-diagonal behavior of the modulated power around the drift center.
/// point_index selects the maximum to modulate by; -1 requires a single
/// maximum.
std::vector<NearDiagonalEntry> near_diagonal_check(const LatticeFunction& f,
                                                   const SymbolAnalysis& analysis,
                                                   const std::vector<std::int64_t>& n_list,
                                                   double c1 = 0.5, int point_index = -1);

}  // namespace convpow
