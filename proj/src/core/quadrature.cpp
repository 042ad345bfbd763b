#include "tvc/core/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace tvc::quad {

namespace {

// Bisection depth cap; integrands with rounding noise above abs_tol stop here.
constexpr unsigned kMaxDepth = 15;

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       double abs_tol) {
    using Rule = boost::math::quadrature::gauss_kronrod<double, 21>;
    double error = 0.0;
    double l1 = 0.0;
    const double coarse = Rule::integrate(f, a, b, 0, 0.0, &error, &l1);
    if (error <= abs_tol) return coarse;
    const double rel = std::max(abs_tol / std::max(l1, abs_tol), 1e-15);
    return Rule::integrate(f, a, b, kMaxDepth, rel, &error, &l1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 const std::vector<double>& breakpoints) {
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, abs_tol, breakpoints);

    std::vector<double> edges{a};
    for (double c : breakpoints) {
        if (c > a && c < b) edges.push_back(c);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const double panel_tol = abs_tol / static_cast<double>(edges.size() - 1);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        total += integrate_panel(f, edges[k], edges[k + 1], panel_tol);
    }
    return total;
}

}  // namespace tvc::quad
