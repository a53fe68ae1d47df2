#ifndef DSW_TYPES_HPP
#define DSW_TYPES_HPP

#include <Eigen/Dense>

namespace dsw {

using Real = double;
using Array = Eigen::ArrayX<Real>;
using Vector = Eigen::VectorX<Real>;
using Matrix = Eigen::MatrixX<Real>;

inline constexpr Real pi = 3.14159265358979323846264338327950288;

}  // namespace dsw

#endif
