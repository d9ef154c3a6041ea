#include "filament/report.hpp"

#include <cmath>
#include <limits>

namespace filament {

double convergence_order(double coarse_error, double fine_error) {
    if (!(coarse_error > 0.0) || !(fine_error > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return std::log2(coarse_error / fine_error);
}

} // namespace filament
