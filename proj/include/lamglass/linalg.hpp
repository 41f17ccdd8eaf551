#pragma once

#include <Eigen/Dense>

namespace lamglass {

using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix2x6 = Eigen::Matrix<double, 2, 6>;

}  // namespace lamglass
