#include "daeo/box.hpp"

#include <algorithm>
#include <ostream>

#include "daeo/errors.hpp"

namespace daeo {

IntervalVector::IntervalVector(std::vector<Interval> components)
    : m_components(std::move(components)) {
  if (m_components.empty()) {
    throw ConstructionError("an interval vector needs at least one component");
  }
}

IntervalVector::IntervalVector(std::initializer_list<Interval> components)
    : IntervalVector(std::vector<Interval>(components)) {}

IntervalVector IntervalVector::from_point(const Vector &point) {
  std::vector<Interval> c;
  c.reserve(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    c.emplace_back(point[i]);
  }
  return IntervalVector(std::move(c));
}

IntervalVector IntervalVector::from_bounds(const Vector &lower,
                                           const Vector &upper) {
  if (lower.size() != upper.size()) {
    throw ConstructionError("box corners differ in dimension");
  }
  std::vector<Interval> c;
  c.reserve(lower.size());
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    c.emplace_back(lower[i], upper[i]);
  }
  return IntervalVector(std::move(c));
}

double IntervalVector::width() const noexcept {
  double w = 0.0;
  for (const auto &c : m_components) {
    w = std::max(w, c.width());
  }
  return w;
}

Vector IntervalVector::midpoint() const {
  Vector m(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    m[static_cast<Eigen::Index>(i)] = m_components[i].mid();
  }
  return m;
}

Vector IntervalVector::lower() const {
  Vector m(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    m[static_cast<Eigen::Index>(i)] = m_components[i].lo();
  }
  return m;
}

Vector IntervalVector::upper() const {
  Vector m(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    m[static_cast<Eigen::Index>(i)] = m_components[i].hi();
  }
  return m;
}

std::size_t IntervalVector::widest_dimension() const noexcept {
  std::size_t best = 0;
  for (std::size_t i = 1; i < size(); ++i) {
    if (m_components[i].width() > m_components[best].width()) {
      best = i;
    }
  }
  return best;
}

std::pair<IntervalVector, IntervalVector> IntervalVector::bisect() const {
  return split(0.5);
}

std::pair<IntervalVector, IntervalVector>
IntervalVector::split(double fraction) const {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConstructionError("split fraction must lie in (0, 1)");
  }
  std::size_t d = widest_dimension();
  const Interval &c = m_components[d];
  double cut = fraction == 0.5 ? c.mid() : c.lo() + fraction * (c.hi() - c.lo());
  cut = std::clamp(cut, c.lo(), c.hi());
  IntervalVector left = *this;
  IntervalVector right = *this;
  left.m_components[d] = Interval(c.lo(), cut);
  right.m_components[d] = Interval(cut, c.hi());
  return {std::move(left), std::move(right)};
}

bool IntervalVector::contains(const Vector &point) const {
  if (static_cast<std::size_t>(point.size()) != size()) {
    return false;
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!m_components[i].contains(point[static_cast<Eigen::Index>(i)])) {
      return false;
    }
  }
  return true;
}

bool IntervalVector::contains(const IntervalVector &other) const {
  if (other.size() != size()) {
    return false;
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!m_components[i].contains(other[i])) {
      return false;
    }
  }
  return true;
}

std::ostream &operator<<(std::ostream &os, const IntervalVector &v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i ? ", " : "") << v[i];
  }
  return os << ')';
}

bool contains_zero(const IntervalVector &v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Interval &c) { return c.contains(0.0); });
}

IntervalSymMatrix::IntervalSymMatrix(std::size_t n)
    : m_n(n), m_packed(n * (n + 1) / 2) {
  if (n == 0) {
    throw ConstructionError("empty interval matrix");
  }
}

IntervalSymMatrix::IntervalSymMatrix(std::size_t n,
                                     std::vector<Interval> packed_lower)
    : m_n(n), m_packed(std::move(packed_lower)) {
  if (n == 0 || m_packed.size() != n * (n + 1) / 2) {
    throw ConstructionError("packed triangle does not match dimension");
  }
}

Matrix IntervalSymMatrix::midpoint() const {
  auto n = static_cast<Eigen::Index>(m_n);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j))
                    .mid();
    }
  }
  return m;
}

bool is_positive_definite(const IntervalSymMatrix &m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    double radius = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != i) {
        radius = rounding::add_up(radius, m(i, j).mag());
      }
    }
    if (!(m(i, i).lo() > radius)) {
      return false;
    }
  }
  return true;
}

} // namespace daeo
