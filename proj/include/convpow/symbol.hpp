#pragma once

#include <vector>

#include "convpow/lattice_function.hpp"

namespace convpow {

enum class PointKind { EvenDecay, OddDrift, Degenerate };

/// A maximum-modulus point of the symbol together with the local expansion
/// of log(symbol(theta+xi)/symbol(theta)) = sum_j c_j xi^j.
///
/// alpha  = Im(c_1), the local drift (Re(c_1) vanishes at a modulus maximum).
/// mu     = smallest j >= 2 with c_j nonzero above threshold, 0 when absent.
/// nu     = smallest even j with Re(c_j) < 0 above threshold, 0 when absent.
/// gamma  = -c_nu when nu is present.
/// kind   = EvenDecay when the leading nonlinear term decays (nu == mu),
///          OddDrift when a purely imaginary term enters first (mu < nu or
///          nu absent), Degenerate when no nonlinear term is detected.
struct MaxPoint {
    double theta = 0.0;
    cplx value;
    double alpha = 0.0;
    std::vector<cplx> expansion;  // c_1 .. c_max_order
    int mu = 0;
    int nu = 0;
    cplx gamma;
    PointKind kind = PointKind::Degenerate;
};

struct SymbolAnalysis {
    double normalization = 0.0;  // A = max |symbol|
    std::vector<MaxPoint> points;
    bool strictness = false;  // |symbol| < A away from the reported points
};

/// Symbol value sum_x f(x) e^{i x theta}.
cplx eval_symbol(const LatticeFunction& f, double theta);

/// Exact k-th derivative of the symbol, k <= 32.
cplx symbol_derivative(const LatticeFunction& f, double theta, int k);

/// All theta in (-pi, pi] where |symbol| comes within a relative tol of its
/// maximum, located on a dense grid and refined by Newton iteration on the
/// derivative of |symbol|^2 (golden-section fallback).
std::vector<double> find_max_modulus_points(const LatticeFunction& f, double tol = 1e-10);

/// Local expansion of the symbol at a modulus maximum theta_q.
MaxPoint local_expansion(const LatticeFunction& f, double theta_q, int max_order = 12);

/// Full analysis: maxima, expansions, normalization, strictness flag.
SymbolAnalysis analyze(const LatticeFunction& f, int max_order = 12, double tol = 1e-10);

/// The modulation symbol(theta0)^{-1} e^{i x theta0} f(x), which moves a
/// maximum-modulus point at theta0 to 0.
LatticeFunction modulate(const LatticeFunction& f, double theta0);

/// Wrap an angle into (-pi, pi].
double wrap_angle(double theta);

}  // namespace convpow
