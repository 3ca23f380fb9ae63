#include "qnet/quadrature.hpp"

#include <array>
#include <stdexcept>

namespace qnet {

namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1, 1] (7-point Gauss embedded).
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {0.129484966168870, 0.279705391489277,
                                       0.381830050505119, 0.417959183673469};

struct Panel {
    double integral;
    double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double s = f(c - x) + f(c + x);
        resk += kWgk[j] * s;
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

// `floor` is an absolute error level below which further subdivision cannot
// help (machine precision relative to the whole integral); it keeps sharply
// peaked integrands from forcing unbounded recursion.
double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double tol, double floor, int depth, int max_depth) {
    const Panel p = gk15(f, a, b);
    if (p.error <= std::max(tol, floor) || depth >= max_depth) return p.integral;
    const double c = 0.5 * (a + b);
    const double child_tol = std::max(tol * 0.5, floor);
    return integrate_rec(f, a, c, child_tol, floor, depth + 1, max_depth) +
           integrate_rec(f, c, b, child_tol, floor, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: b < a");
    if (a == b) return 0.0;
    const Panel whole = gk15(f, a, b);
    const double scale = std::abs(whole.integral) + std::abs(whole.error);
    const double floor = 1e-15 * scale;
    return integrate_rec(f, a, b, abs_tol, floor, 0, max_depth);
}

}  // namespace qnet
