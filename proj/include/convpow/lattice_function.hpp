#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace convpow {

using cplx = std::complex<double>;

enum class PowerMethod { Direct, Squaring, Fft };

/// Finitely supported complex-valued function on the integer lattice.
///
/// Stored as the smallest support index plus a contiguous coefficient block.
/// The representation is canonical: the first and last coefficients are
/// nonzero unless the function is identically zero, which is stored as
/// offset 0 with a single zero coefficient. All coefficients are finite.
/// Instances are immutable after construction.
class LatticeFunction {
  public:
    /// The zero function.
    LatticeFunction();

    /// Trims exact zeros at both ends and validates finiteness.
    LatticeFunction(std::int64_t offset, std::vector<cplx> coeffs);

    static LatticeFunction delta(std::int64_t position, cplx value = cplx(1.0, 0.0));
    static LatticeFunction from_points(std::initializer_list<std::pair<std::int64_t, cplx>> pts);

    /// Bernoulli measure: mass 1/2 at each of -1, +1.
    static LatticeFunction bernoulli();

    /// Lazy Bernoulli measure: (1-s) at 0, s/2 at each of -1, +1.
    static LatticeFunction lazy_bernoulli(double s);

    std::int64_t offset() const { return offset_; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    std::int64_t min_index() const { return offset_; }
    std::int64_t max_index() const { return offset_ + static_cast<std::int64_t>(coeffs_.size()) - 1; }
    std::int64_t support_width() const { return static_cast<std::int64_t>(coeffs_.size()); }

    /// Value at x, zero outside the stored block.
    cplx at(std::int64_t x) const;

    bool operator==(const LatticeFunction& other) const = default;

  private:
    std::int64_t offset_;
    std::vector<cplx> coeffs_;
};

LatticeFunction convolve(const LatticeFunction& f, const LatticeFunction& g);

/// n-th convolution power. n = 0 returns the unit delta at 0.
LatticeFunction power(const LatticeFunction& f, std::int64_t n,
                      PowerMethod method = PowerMethod::Squaring);

double l1_norm(const LatticeFunction& f);
double sup_norm(const LatticeFunction& f);
cplx total_sum(const LatticeFunction& f);

/// Forward difference along y: g(x) = f(x+y) - f(x).
LatticeFunction difference(const LatticeFunction& f, std::int64_t y);

LatticeFunction scale(const LatticeFunction& f, cplx z);
LatticeFunction translate(const LatticeFunction& f, std::int64_t shift);

/// Iterated-smoothing measure delta_0 - (delta_0 - beta_s)^k with
/// beta_s = (1-s) delta_0 + s beta. Its symbol is 1 - s^k (1 - cos t)^k.
LatticeFunction walk_measure(double s, int k);

/// Distance between two functions in the sup norm.
double sup_distance(const LatticeFunction& f, const LatticeFunction& g);

}  // namespace convpow
