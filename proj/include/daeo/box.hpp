/**
 * @file box.hpp
 * @brief Interval vectors (boxes), symmetric interval matrices and the
 * predicates used to certify boxes.
 */
#ifndef DAEO_BOX_HPP
#define DAEO_BOX_HPP

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <utility>
#include <vector>

#include "daeo/interval.hpp"
#include "daeo/linalg.hpp"

namespace daeo {

/**
 * @brief A nonempty axis-aligned box, one interval per component.
 */
class IntervalVector {
public:
  /// Throws ConstructionError if @p components is empty.
  explicit IntervalVector(std::vector<Interval> components);
  IntervalVector(std::initializer_list<Interval> components);

  /// The degenerate box at @p point.
  static IntervalVector from_point(const Vector &point);
  /// Box with the given corners. Throws ConstructionError on size mismatch or
  /// reversed bounds.
  static IntervalVector from_bounds(const Vector &lower, const Vector &upper);

  std::size_t size() const noexcept { return m_components.size(); }
  const Interval &operator[](std::size_t i) const { return m_components[i]; }
  Interval &operator[](std::size_t i) { return m_components[i]; }
  auto begin() const noexcept { return m_components.begin(); }
  auto end() const noexcept { return m_components.end(); }
  const std::vector<Interval> &components() const noexcept {
    return m_components;
  }

  /// Largest component width.
  double width() const noexcept;
  Vector midpoint() const;
  Vector lower() const;
  Vector upper() const;
  std::size_t widest_dimension() const noexcept;

  /// Split the widest component at its midpoint.
  std::pair<IntervalVector, IntervalVector> bisect() const;
  /// Split the widest component at lo + fraction * width, fraction in (0, 1).
  std::pair<IntervalVector, IntervalVector> split(double fraction) const;

  bool contains(const Vector &point) const;
  /// true iff @p other is a subset of this box
  bool contains(const IntervalVector &other) const;

  friend bool operator==(const IntervalVector &,
                         const IntervalVector &) = default;

private:
  std::vector<Interval> m_components;
};

std::ostream &operator<<(std::ostream &os, const IntervalVector &v);

/// true iff every component has lo <= 0 <= hi.
bool contains_zero(const IntervalVector &v);

/**
 * @brief Symmetric n x n interval matrix.
 *
 * Only the lower triangle is stored; entry(i, j) and entry(j, i) refer to the
 * same interval.
 */
class IntervalSymMatrix {
public:
  /// n x n matrix of zeros. Throws ConstructionError if n == 0.
  explicit IntervalSymMatrix(std::size_t n);
  /// Build from a packed lower triangle (row-major: (0,0), (1,0), (1,1), ...).
  IntervalSymMatrix(std::size_t n, std::vector<Interval> packed_lower);

  std::size_t size() const noexcept { return m_n; }
  const Interval &operator()(std::size_t i, std::size_t j) const {
    return m_packed[index(i, j)];
  }
  Interval &operator()(std::size_t i, std::size_t j) {
    return m_packed[index(i, j)];
  }

  /// Real matrix of the entries' midpoints.
  Matrix midpoint() const;

  friend bool operator==(const IntervalSymMatrix &,
                         const IntervalSymMatrix &) = default;

  static std::size_t index(std::size_t i, std::size_t j) noexcept {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

private:
  std::size_t m_n;
  std::vector<Interval> m_packed;
};

/**
 * @brief Sufficient test that every real symmetric matrix in @p m is
 * positive definite.
 *
 * Interval Gershgorin: each row's diagonal lower bound must exceed the sum
 * of the off-diagonal magnitudes (sum rounded up). A false result means "not
 * verified", not "indefinite".
 */
bool is_positive_definite(const IntervalSymMatrix &m);

} // namespace daeo

#endif // DAEO_BOX_HPP
