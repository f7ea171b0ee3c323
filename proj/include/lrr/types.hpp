#pragma once

#include <Eigen/Dense>

namespace lrr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace lrr
