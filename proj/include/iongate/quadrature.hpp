#pragma once

#include <complex>
#include <functional>

namespace iongate {

struct QuadratureControl {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;      // absolute floor; 0 means purely relative
    int max_intervals = 1000000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

struct ComplexQuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    int intervals = 0;
};

// Globally adaptive Gauss-Kronrod 7-15 integration of f over [a, b].
//
// The termination scale is the L1 accumulation sum_i |I_i| over subintervals,
// which keeps the relative criterion meaningful for integrals that cancel to
// (near) zero. Throws QuadratureFailure when the interval budget is exhausted
// before sum_i err_i <= max(abs_tol, rel_tol * scale).
QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           const QuadratureControl& ctrl = {});

ComplexQuadratureResult integrate_complex(
    const std::function<std::complex<double>(double)>& f,
    double a, double b,
    const QuadratureControl& ctrl = {});

} // namespace iongate
