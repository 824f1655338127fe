#pragma once

#include <functional>

namespace convpow {

/// Adaptive Simpson integration of f on [a, b] to an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 50);

/// Filon quadrature for int_a^b g(x) cos(omega x) dx with g smooth and the
/// oscillation carried by the cosine factor. Panel count doubles until two
/// successive composite values agree within abs_tol.
double filon_cos(const std::function<double(double)>& g, double a, double b, double omega,
                 double abs_tol);

/// Same with a sine kernel.
double filon_sin(const std::function<double(double)>& g, double a, double b, double omega,
                 double abs_tol);

}  // namespace convpow
