#include "rkmk/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rkmk {

void StepController::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("StepController: tol must be > 0");
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("StepController: theta must lie in (0, 1)");
  }
  if (!(h_min > 0.0 && h_min <= h_max)) {
    throw std::invalid_argument("StepController: need 0 < h_min <= h_max");
  }
  if (max_rejects_per_step < 1) {
    throw std::invalid_argument("StepController: max_rejects_per_step must be >= 1");
  }
  if (!(growth_cap >= 1.0) || !(min_factor > 0.0 && min_factor <= 1.0)) {
    throw std::invalid_argument("StepController: need growth_cap >= 1 and 0 < min_factor <= 1");
  }
}

double propose_step(const StepController& controller, double e, double h, int p_aux) {
  if (!(e >= 0.0) || !(h > 0.0)) {
    throw std::invalid_argument("propose_step: need e >= 0 and h > 0");
  }
  double factor = controller.growth_cap;
  if (e > 0.0) {
    factor = controller.theta * std::pow(controller.tol / e, 1.0 / (p_aux + 1));
    factor = std::clamp(factor, controller.min_factor, controller.growth_cap);
  }
  return std::clamp(factor * h, controller.h_min, controller.h_max);
}

}  // namespace rkmk
