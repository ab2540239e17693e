#pragma once

#include <cstddef>
#include <vector>

namespace rkmk {

/// Explicit embedded Runge-Kutta pair. `a` is strictly lower triangular; `b`
/// is the propagating weight set of order `order`, `b_aux` the embedded set of
/// order `order_aux` < `order`.
struct ButcherTableau {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> b_aux;
  std::vector<double> c;
  int order = 0;
  int order_aux = 0;

  std::size_t stages() const { return c.size(); }

  /// Throws std::invalid_argument on shape errors, c_i != sum_j a_ij (1e-14),
  /// a non-explicit row, or order_aux >= order.
  void validate() const;
};

/// Which weight set of a pair advances the solution.
enum class Weights { Main, Auxiliary };

/// Dormand-Prince 5(4), seven stages.
const ButcherTableau& dormand_prince_54();

}  // namespace rkmk
