#include "bplab/gaussian.hpp"

#include <cmath>
#include <stdexcept>

namespace bplab {

GaussianModel::GaussianModel(double sigma_x, double sigma_y) : sx_(sigma_x), sy_(sigma_y) {
    if (!(sigma_x > 0.0) || !(sigma_y > 0.0) || !std::isfinite(sigma_x) || !std::isfinite(sigma_y)) {
        throw std::invalid_argument("Gaussian widths must be finite and strictly positive");
    }
}

namespace {

// Exponent of the Gaussian. The isotropic branch uses the (x^2 + y^2) / (2 s^2)
// form so isotropic models evaluate identically through either constructor.
double exponent(const GaussianModel& m, double x, double y) {
    if (m.is_isotropic()) {
        const double s = m.sigma_x();
        return -(x * x + y * y) / (2 * s * s);
    }
    return -(x * x) / (2 * m.sigma_x() * m.sigma_x()) - (y * y) / (2 * m.sigma_y() * m.sigma_y());
}

} // namespace

double value(const GaussianModel& model, double x, double y) { return -std::exp(exponent(model, x, y)); }

double derivative_x(const GaussianModel& model, double x, double y) {
    const double sx = model.sigma_x();
    return x / (sx * sx) * std::exp(exponent(model, x, y));
}

double derivative_y(const GaussianModel& model, double x, double y) { return derivative_x(model.swapped(), y, x); }

} // namespace bplab
