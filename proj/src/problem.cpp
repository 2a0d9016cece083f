#include "daeo/problem.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "daeo/errors.hpp"

namespace daeo {

void DAEOProblem::validate() const {
  if (nx == 0 || ny == 0) {
    throw ConstructionError("problem dimensions must be positive");
  }
  if (static_cast<std::size_t>(x0.size()) != nx) {
    throw ConstructionError("initial state does not match n_x");
  }
  if (ydomain.size() != ny) {
    throw ConstructionError("search box does not match n_y");
  }
  if (!(t0 < t_end)) {
    throw ConstructionError("time horizon must satisfy t0 < t_end");
  }
}

namespace {
constexpr double half_pi = std::numbers::pi / 2.0;
} // namespace

DAEOProblem example1() {
  auto h = [](auto x, auto y) {
    return sqr(1.0 - sqr(y[0])) - (x[0] - 0.5) * sin(half_pi * y[0]);
  };
  auto f = [](auto x, auto y, auto out) { out[0] = -(2.0 + y[0]) * x[0]; };

  const double t_event = std::log(2.0) / 3.0;
  ReferenceSolution ref;
  ref.event_times = {t_event};
  ref.x_of_t = [t_event](double t) {
    Vector x(1);
    x[0] = t <= t_event ? std::exp(-3.0 * t)
                        : std::exp(-t + 2.0 / 3.0 * std::log(0.5));
    return x;
  };

  DAEOProblem p{"ex1",
                1,
                1,
                Dynamics(f),
                Objective(h),
                Vector::Ones(1),
                0.0,
                1.0,
                IntervalVector{Interval(-2.0, 2.0)},
                std::move(ref)};
  p.validate();
  return p;
}

DAEOProblem example2() {
  auto h = [](auto x, auto y) { return sqr(y[0] - x[0]) + sin(5.0 * y[0]); };
  auto f = [](auto, auto y, auto out) { out[0] = y[0]; };

  ReferenceSolution ref;
  ref.event_times = {0.589331, 1.160423, 1.523812, 1.790295};

  DAEOProblem p{"ex2",
                1,
                1,
                Dynamics(f),
                Objective(h),
                Vector::Ones(1),
                0.0,
                2.0,
                IntervalVector{Interval(-8.0, 8.0)},
                std::move(ref)};
  p.validate();
  return p;
}

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::function<DAEOProblem()>> factories{
      {"ex1", example1}, {"ex2", example2}};
};

Registry &registry() {
  static Registry r;
  return r;
}

} // namespace

DAEOProblem make_problem(const std::string &name) {
  std::function<DAEOProblem()> factory;
  {
    auto &r = registry();
    std::lock_guard lock(r.mutex);
    auto it = r.factories.find(name);
    if (it == r.factories.end()) {
      throw UnknownProblem("unknown problem '" + name + "'");
    }
    factory = it->second;
  }
  return factory();
}

std::vector<std::string> problem_names() {
  auto &r = registry();
  std::lock_guard lock(r.mutex);
  std::vector<std::string> names;
  for (const auto &[name, _] : r.factories) {
    names.push_back(name);
  }
  return names;
}

void register_problem(const std::string &name,
                      std::function<DAEOProblem()> factory) {
  auto &r = registry();
  std::lock_guard lock(r.mutex);
  if (!factory || !r.factories.emplace(name, std::move(factory)).second) {
    throw ConstructionError("problem '" + name + "' is already registered");
  }
}

} // namespace daeo
