#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

namespace tvc::quad {

/// Adaptive Gauss-Kronrod (21-point) integration of f over [a, b].
///
/// The interval is split at every breakpoint strictly inside (a, b) so that
/// kinks and jumps of piecewise integrands sit on panel edges. `abs_tol` is an
/// absolute error target; it is translated into the relative tolerance the
/// underlying rule works with.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 const std::vector<double>& breakpoints = {});

}  // namespace tvc::quad
