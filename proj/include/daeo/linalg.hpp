#ifndef DAEO_LINALG_HPP
#define DAEO_LINALG_HPP

#include <span>

#include "Eigen/Dense"

namespace daeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline std::span<const double> as_span(const Vector &v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

} // namespace daeo

#endif // DAEO_LINALG_HPP
