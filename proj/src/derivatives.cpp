#include "daeo/derivatives.hpp"

#include <vector>

namespace daeo {

namespace {

template <typename D> std::vector<D> constants(const Vector &v) {
  using Base = std::remove_cvref_t<decltype(std::declval<D>().value)>;
  std::vector<D> out;
  out.reserve(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.emplace_back(Base(v[i]));
  }
  return out;
}

template <typename D>
std::vector<D> seeded(const Vector &v, std::size_t n, std::size_t offset) {
  using Base = std::remove_cvref_t<decltype(std::declval<D>().value)>;
  std::vector<D> out;
  out.reserve(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(D::variable(Base(v[i]), n, offset + static_cast<std::size_t>(i)));
  }
  return out;
}

template <typename S>
S call(const Objective &h, const std::vector<S> &x, const std::vector<S> &y) {
  return h(std::span<const S>(x), std::span<const S>(y));
}

auto idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

} // namespace

Vector gradient_y(const Objective &h, const Vector &x, const Vector &y) {
  using D = Dual1<double>;
  const auto ny = static_cast<std::size_t>(y.size());
  D r = call(h, constants<D>(x), seeded<D>(y, ny, 0));
  Vector g(y.size());
  for (std::size_t i = 0; i < ny; ++i) {
    g[idx(i)] = r.derivative(i);
  }
  return g;
}

Vector gradient_x(const Objective &h, const Vector &x, const Vector &y) {
  using D = Dual1<double>;
  const auto nx = static_cast<std::size_t>(x.size());
  D r = call(h, seeded<D>(x, nx, 0), constants<D>(y));
  Vector g(x.size());
  for (std::size_t i = 0; i < nx; ++i) {
    g[idx(i)] = r.derivative(i);
  }
  return g;
}

Matrix hessian_yy(const Objective &h, const Vector &x, const Vector &y) {
  using D = Dual2<double>;
  const auto ny = static_cast<std::size_t>(y.size());
  D r = call(h, constants<D>(x), seeded<D>(y, ny, 0));
  Matrix m(y.size(), y.size());
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      m(idx(i), idx(j)) = r.second_derivative(i, j);
    }
  }
  return m;
}

Matrix hessian_yx(const Objective &h, const Vector &x, const Vector &y) {
  return objective_derivatives(h, x, y).hess_yx;
}

ObjectiveDerivatives objective_derivatives(const Objective &h, const Vector &x,
                                           const Vector &y) {
  using D = Dual2<double>;
  const auto nx = static_cast<std::size_t>(x.size());
  const auto ny = static_cast<std::size_t>(y.size());
  const std::size_t n = nx + ny;
  D r = call(h, seeded<D>(x, n, 0), seeded<D>(y, n, nx));

  ObjectiveDerivatives d;
  d.value = r.value;
  d.grad_x.resize(x.size());
  d.grad_y.resize(y.size());
  d.hess_yy.resize(y.size(), y.size());
  d.hess_yx.resize(y.size(), x.size());
  for (std::size_t i = 0; i < nx; ++i) {
    d.grad_x[idx(i)] = r.derivative(i);
  }
  for (std::size_t i = 0; i < ny; ++i) {
    d.grad_y[idx(i)] = r.derivative(nx + i);
    for (std::size_t j = 0; j < ny; ++j) {
      d.hess_yy(idx(i), idx(j)) = r.second_derivative(nx + i, nx + j);
    }
    for (std::size_t j = 0; j < nx; ++j) {
      d.hess_yx(idx(i), idx(j)) = r.second_derivative(nx + i, j);
    }
  }
  return d;
}

IntervalEnclosure interval_enclosure_y(const Objective &h, const Vector &x,
                                       const IntervalVector &ybox) {
  using D = Dual2<Interval>;
  const std::size_t ny = ybox.size();
  std::vector<D> ys;
  ys.reserve(ny);
  for (std::size_t i = 0; i < ny; ++i) {
    ys.push_back(D::variable(ybox[i], ny, i));
  }
  D r = call(h, constants<D>(x), ys);

  std::vector<Interval> grad(ny);
  std::vector<Interval> packed(detail::packed_size(ny));
  for (std::size_t i = 0; i < ny; ++i) {
    grad[i] = r.derivative(i);
    for (std::size_t j = 0; j <= i; ++j) {
      packed[detail::packed_index(i, j)] = r.second_derivative(i, j);
    }
  }
  return {r.value, IntervalVector(std::move(grad)),
          IntervalSymMatrix(ny, std::move(packed))};
}

IntervalVector interval_gradient_y(const Objective &h, const Vector &x,
                                   const IntervalVector &ybox) {
  using D = Dual1<Interval>;
  const std::size_t ny = ybox.size();
  std::vector<D> ys;
  ys.reserve(ny);
  for (std::size_t i = 0; i < ny; ++i) {
    ys.push_back(D::variable(ybox[i], ny, i));
  }
  D r = call(h, constants<D>(x), ys);
  std::vector<Interval> grad(ny);
  for (std::size_t i = 0; i < ny; ++i) {
    grad[i] = r.derivative(i);
  }
  return IntervalVector(std::move(grad));
}

IntervalSymMatrix interval_hessian_yy(const Objective &h, const Vector &x,
                                      const IntervalVector &ybox) {
  return interval_enclosure_y(h, x, ybox).hessian;
}

Vector evaluate_dynamics(const Dynamics &f, const Vector &x, const Vector &y) {
  Vector out(x.size());
  f(as_span(x), as_span(y), std::span<double>(out.data(), out.size()));
  return out;
}

DynamicsJacobian dynamics_jacobian(const Dynamics &f, const Vector &x,
                                   const Vector &y) {
  using D = Dual1<double>;
  const auto nx = static_cast<std::size_t>(x.size());
  const auto ny = static_cast<std::size_t>(y.size());
  const std::size_t n = nx + ny;
  auto xs = seeded<D>(x, n, 0);
  auto ys = seeded<D>(y, n, nx);
  std::vector<D> out(nx);
  f(std::span<const D>(xs), std::span<const D>(ys), std::span<D>(out));

  DynamicsJacobian jac;
  jac.value.resize(x.size());
  jac.d_x.resize(x.size(), x.size());
  jac.d_y.resize(x.size(), y.size());
  for (std::size_t r = 0; r < nx; ++r) {
    jac.value[idx(r)] = out[r].value;
    for (std::size_t c = 0; c < nx; ++c) {
      jac.d_x(idx(r), idx(c)) = out[r].derivative(c);
    }
    for (std::size_t c = 0; c < ny; ++c) {
      jac.d_y(idx(r), idx(c)) = out[r].derivative(nx + c);
    }
  }
  return jac;
}

} // namespace daeo
