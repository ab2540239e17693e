#include "rkmk/tableau.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rkmk {

void ButcherTableau::validate() const {
  const std::size_t s = stages();
  if (s == 0 || a.size() != s || b.size() != s || b_aux.size() != s) {
    throw std::invalid_argument("ButcherTableau: inconsistent stage counts");
  }
  if (order_aux >= order || order_aux < 1) {
    throw std::invalid_argument("ButcherTableau: need 1 <= order_aux < order");
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (a[i].size() != s) {
      throw std::invalid_argument("ButcherTableau: row " + std::to_string(i) + " has wrong length");
    }
    double row_sum = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      if (j >= i && a[i][j] != 0.0) {
        throw std::invalid_argument("ButcherTableau: method is not explicit");
      }
      row_sum += a[i][j];
    }
    if (std::abs(row_sum - c[i]) > 1e-14) {
      throw std::invalid_argument("ButcherTableau: c[" + std::to_string(i) +
                                  "] does not match the row sum");
    }
  }
}

const ButcherTableau& dormand_prince_54() {
  static const ButcherTableau tableau = [] {
    ButcherTableau t;
    t.c = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
    t.a = {
        {0, 0, 0, 0, 0, 0, 0},
        {1.0 / 5.0, 0, 0, 0, 0, 0, 0},
        {3.0 / 40.0, 9.0 / 40.0, 0, 0, 0, 0, 0},
        {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0, 0, 0, 0},
        {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0, 0, 0},
        {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0, 0},
        {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0},
    };
    t.b = {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0};
    t.b_aux = {5179.0 / 57600.0,   0.0,           7571.0 / 16695.0, 393.0 / 640.0,
               -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0};
    t.order = 5;
    t.order_aux = 4;
    t.validate();
    return t;
  }();
  return tableau;
}

}  // namespace rkmk
