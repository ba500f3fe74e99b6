#pragma once

#include <Eigen/Dense>

namespace gossip {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace gossip
