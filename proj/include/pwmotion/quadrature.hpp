#pragma once

#include <functional>

namespace pwmotion {

/// Adaptive Gauss-Kronrod integration of f over the finite interval [a, b]
/// to the given absolute tolerance. Thin wrapper so the rest of the library
/// does not carry the boost include everywhere.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-9);

}  // namespace pwmotion
