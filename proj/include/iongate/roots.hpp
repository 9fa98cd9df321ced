#pragma once

#include <functional>

namespace iongate {

struct RootControl {
    double rel_tol = 1e-6;
    int max_iterations = 200;
};

// Brent's method on [a, b]. Requires f(a) and f(b) to have opposite signs;
// throws NoSignChange otherwise and NoSolution if the iteration budget runs
// out (which for Brent on a continuous function essentially cannot happen).
double brent_root(const std::function<double(double)>& f,
                  double a, double b,
                  const RootControl& ctrl = {});

} // namespace iongate
