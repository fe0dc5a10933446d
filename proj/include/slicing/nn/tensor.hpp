#pragma once

#include <Eigen/Dense>
#include <vector>

namespace slicing::nn {

using Mat = Eigen::MatrixXd;  // column-major; one sample per column
using Vec = Eigen::VectorXd;
using MatMap = Eigen::Map<Mat>;
using ConstMatMap = Eigen::Map<const Mat>;
using VecMap = Eigen::Map<Vec>;
using ConstVecMap = Eigen::Map<const Vec>;

// Flat parameter storage. Eigen peels unaligned heads in scalar code, so a
// buffer's address would otherwise change the rounding of every product.
using Buffer = std::vector<double, Eigen::aligned_allocator<double>>;

}  // namespace slicing::nn
