#include "iongate/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>
#include <type_traits>
#include <vector>

#include "iongate/errors.hpp"

namespace iongate {
namespace {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1] (QUADPACK dqk15).
constexpr int kNodes = 8;
constexpr double kXgk[kNodes] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[kNodes] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <typename V>
double vnorm(const V& v) {
    if constexpr (std::is_same_v<V, double>) {
        return std::fabs(v);
    } else {
        return std::abs(v);
    }
}

template <typename V>
struct Panel {
    double a, b;
    V value;
    double err;
    double l1;
    bool operator<(const Panel& other) const { return err < other.err; }
};

template <typename V, typename F>
Panel<V> evaluate_panel(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    V kronrod{};
    V gauss{};
    for (int j = 0; j < kNodes - 1; ++j) {
        const V lo = f(c - h * kXgk[j]);
        const V hi = f(c + h * kXgk[j]);
        kronrod += kWgk[j] * (lo + hi);
        if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
    }
    const V mid = f(c);
    kronrod += kWgk[kNodes - 1] * mid;
    gauss += kWg[3] * mid;
    kronrod *= h;
    gauss *= h;
    Panel<V> p;
    p.a = a;
    p.b = b;
    p.value = kronrod;
    p.err = vnorm<V>(kronrod - gauss);
    p.l1 = vnorm<V>(kronrod);
    return p;
}

template <typename V, typename F>
std::tuple<V, double, int> adapt(const F& f, double a, double b,
                                 const QuadratureControl& ctrl) {
    if (a == b) return {V{}, 0.0, 0};

    std::priority_queue<Panel<V>> queue;
    queue.push(evaluate_panel<V>(f, a, b));
    V total = queue.top().value;
    double total_err = queue.top().err;
    double scale = queue.top().l1;
    int panels = 1;

    while (total_err > std::max(ctrl.abs_tol, ctrl.rel_tol * scale)) {
        if (panels >= ctrl.max_intervals) {
            throw QuadratureFailure(
                "quadrature: interval budget exhausted before reaching "
                "tolerance (error estimate " + std::to_string(total_err) + ")");
        }
        Panel<V> worst = queue.top();
        queue.pop();
        if (worst.b - worst.a <= std::fabs(worst.a) * 1e-15) {
            // Interval width at machine resolution; accept what we have.
            queue.push(worst);
            break;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Panel<V> left = evaluate_panel<V>(f, worst.a, mid);
        Panel<V> right = evaluate_panel<V>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        scale += left.l1 + right.l1 - worst.l1;
        queue.push(left);
        queue.push(right);
        ++panels;
    }
    return {total, total_err, panels};
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           double a, double b,
                           const QuadratureControl& ctrl) {
    auto [value, err, n] = adapt<double>(f, a, b, ctrl);
    return {value, err, n};
}

ComplexQuadratureResult integrate_complex(
    const std::function<std::complex<double>(double)>& f,
    double a, double b,
    const QuadratureControl& ctrl) {
    auto [value, err, n] = adapt<std::complex<double>>(f, a, b, ctrl);
    return {value, err, n};
}

} // namespace iongate
