#pragma once

namespace bplab {

/// f(x, y) = -exp(-x^2 / (2 sx^2) - y^2 / (2 sy^2)). Minimum -1 at the origin.
class GaussianModel {
  public:
    GaussianModel(double sigma_x, double sigma_y);
    static GaussianModel isotropic(double sigma) { return GaussianModel(sigma, sigma); }

    [[nodiscard]] double sigma_x() const noexcept { return sx_; }
    [[nodiscard]] double sigma_y() const noexcept { return sy_; }
    [[nodiscard]] bool is_isotropic() const noexcept { return sx_ == sy_; }

    /// Same model with the axes exchanged.
    [[nodiscard]] GaussianModel swapped() const { return GaussianModel(sy_, sx_); }

  private:
    double sx_;
    double sy_;
};

double value(const GaussianModel& model, double x, double y);

/// df/dx = x / sx^2 * exp(...). Odd in x, even in y.
double derivative_x(const GaussianModel& model, double x, double y);

/// df/dy via axis swap: derivative_x(swapped, y, x).
double derivative_y(const GaussianModel& model, double x, double y);

} // namespace bplab
