#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "daeo/derivatives.hpp"
#include "daeo/errors.hpp"
#include "daeo/global_optimizer.hpp"
#include "daeo/problem.hpp"
#include "oracles.hpp"

using daeo::Interval;
using daeo::IntervalVector;
using daeo::OptimizerConfig;

namespace {

daeo::Vector vec1(double v) {
  daeo::Vector out(1);
  out[0] = v;
  return out;
}

daeo::CertifiedBox certify(const daeo::Objective &h, double x, Interval box) {
  const IntervalVector b{box};
  auto enc = daeo::interval_enclosure_y(h, vec1(x), b);
  return {b, enc.gradient, enc.hessian};
}

bool in_any(const std::vector<daeo::CertifiedBox> &boxes, double y) {
  for (const auto &b : boxes) {
    if (b.box[0].contains(y)) {
      return true;
    }
  }
  return false;
}

} // namespace

TEST_CASE("convex boxes of the first example") {
  const auto p = daeo::example1();
  const OptimizerConfig cfg;
  const auto boxes = daeo::find_convex_boxes(p.h, vec1(1.0), p.ydomain, cfg);
  REQUIRE(boxes.size() == 2);
  CHECK(boxes[0].box[0].contains(-1.0));
  CHECK(boxes[1].box[0].contains(1.0));
  for (const auto &b : boxes) {
    CHECK(daeo::contains_zero(b.gradient_enclosure));
    CHECK(daeo::is_positive_definite(b.hessian_enclosure));
  }
  CHECK(daeo::find_convex_boxes(p.h, vec1(1.0), IntervalVector{Interval(0.2, 0.4)},
                                cfg)
            .empty());
}

TEST_CASE("convex boxes of the second example contain the oracle minima") {
  const auto p = daeo::example2();
  const OptimizerConfig cfg;
  const auto boxes = daeo::find_convex_boxes(p.h, vec1(1.0), p.ydomain, cfg);
  const auto minima = oracle::grid_minima(oracle::ex2(), 1.0, -8, 8, 100000);
  REQUIRE_FALSE(minima.empty());
  for (const auto &m : minima) {
    CHECK(in_any(boxes, m.y));
  }
  std::vector<double> refined;
  for (const auto &b : boxes) {
    if (auto o = daeo::local_refine(p.h, vec1(1.0), b, cfg)) {
      refined.push_back(o->y[0]);
    }
  }
  for (const auto &m : minima) {
    CHECK(std::any_of(refined.begin(), refined.end(),
                      [&](double y) { return std::abs(y - m.y) <= 1e-6; }));
  }
}

TEST_CASE("local refinement") {
  const auto p = daeo::example1();
  const OptimizerConfig cfg;
  auto up = daeo::local_refine(p.h, vec1(1.0), certify(p.h, 1.0, Interval(0.9, 1.15)), cfg);
  REQUIRE(up);
  CHECK(std::abs(up->y[0] - 1.0) <= std::numeric_limits<double>::epsilon());
  CHECK(up->value == doctest::Approx(-0.5).epsilon(1e-15));
  auto down =
      daeo::local_refine(p.h, vec1(1.0), certify(p.h, 1.0, Interval(-1.1, -0.95)), cfg);
  REQUIRE(down);
  CHECK(std::abs(down->y[0] + 1.0) <= std::numeric_limits<double>::epsilon());

  // Convex box whose minimum over the box sits on its lower bound.
  auto edge = daeo::local_refine(p.h, vec1(1.0), certify(p.h, 1.0, Interval(1.2, 1.5)), cfg);
  CHECK_FALSE(edge);
}

TEST_CASE("refinement failure is reported with its box") {
  const auto p = daeo::example2();
  OptimizerConfig cfg;
  cfg.max_newton_iters = 1;
  const auto box = certify(p.h, 1.0, Interval(0.8, 1.1));
  try {
    (void)daeo::local_refine(p.h, vec1(1.0), box, cfg);
    FAIL("expected a refinement failure");
  } catch (const daeo::RefinementFailure &e) {
    CHECK(e.box_lower[0] == 0.8);
    CHECK(e.box_upper[0] == 1.1);
  }
}

TEST_CASE("local optima sets") {
  const auto p = daeo::example1();
  const OptimizerConfig cfg;
  const auto s = daeo::find_local_optima(p.h, vec1(1.0), p.ydomain, cfg);
  REQUIRE(s.optima.size() == 2);
  CHECK(s.optima[0].y[0] == doctest::Approx(1.0));
  CHECK(s.optima[0].value == doctest::Approx(-0.5));
  CHECK(s.optima[1].y[0] == doctest::Approx(-1.0));
  CHECK(s.optima[1].value == doctest::Approx(0.5));

  const auto tie = daeo::find_local_optima(p.h, vec1(0.5), p.ydomain, cfg);
  REQUIRE(tie.optima.size() == 2);
  CHECK(std::abs(tie.optima[0].value) < 1e-15);
  CHECK(std::abs(tie.optima[1].value) < 1e-15);
  CHECK(daeo::global_minimum(tie, 1e-9).tie);

  const auto p2 = daeo::example2();
  const auto s2 = daeo::find_local_optima(p2.h, vec1(1.0), p2.ydomain, cfg);
  const auto minima = oracle::grid_minima(oracle::ex2(), 1.0, -8, 8, 100000);
  REQUIRE(s2.optima.size() == minima.size());
  for (const auto &m : minima) {
    CHECK(std::any_of(s2.optima.begin(), s2.optima.end(),
                      [&](const auto &o) { return std::abs(o.y[0] - m.y) <= 1e-6; }));
  }
  for (std::size_t i = 1; i < s2.optima.size(); ++i) {
    CHECK(s2.optima[i - 1].value <= s2.optima[i].value);
  }
}

TEST_CASE("global minimum selection") {
  daeo::LocalOptimaSet s;
  s.optima = {{vec1(1.0), -0.5, 0}, {vec1(-1.0), 0.5, 0}};
  auto g = daeo::global_minimum(s, 1e-9);
  CHECK(g.optimum.y[0] == 1.0);
  CHECK_FALSE(g.tie);
  s.optima = {{vec1(1.0), 0.0, 0}, {vec1(-1.0), 0.0, 0}};
  CHECK(daeo::global_minimum(s, 1e-9).tie);
  s.optima = {{vec1(2.0), 3.0, 0}};
  g = daeo::global_minimum(s, 1e-9);
  CHECK(g.optimum.y[0] == 2.0);
  CHECK_FALSE(g.tie);
  s.optima.clear();
  CHECK_THROWS_AS(daeo::global_minimum(s, 1e-9), std::logic_error);
}

TEST_CASE("lower bounds") {
  const auto p = daeo::example1();
  CHECK(daeo::lower_bound(p.h, vec1(1.0), IntervalVector{Interval(0.9, 1.1)}) <= -0.5);
  const double at = daeo::lower_bound(p.h, vec1(1.0), IntervalVector{Interval(0.3)});
  const double real = p.h(daeo::as_span(vec1(1.0)), daeo::as_span(vec1(0.3)));
  CHECK(at <= real);
  CHECK(real - at < 1e-14);
  const auto p2 = daeo::example2();
  CHECK(daeo::lower_bound(p2.h, vec1(1.0), IntervalVector{Interval(6.0, 7.0)}) >
        -0.995 + 0.1);
}

TEST_CASE("pruning discards boxes far above the incumbent") {
  const auto p = daeo::example2();
  OptimizerConfig cfg;
  cfg.pruning = true;
  cfg.alpha = 0.1;
  const auto search = daeo::search_boxes(p.h, vec1(1.0), p.ydomain, cfg);
  CHECK(search.pruned > 0);
  CHECK(cfg.pruning_alpha() == 0.1);
  cfg.alpha.reset();
  CHECK(cfg.pruning_alpha() == doctest::Approx(10 * cfg.tie_tol));
}

TEST_CASE("completeness and soundness at random states") {
  std::mt19937_64 rng(2024);
  const OptimizerConfig cfg;
  for (const auto &[p, o, xlo, xhi] :
       {std::tuple{daeo::example1(), oracle::ex1(), 0.2, 1.0},
        std::tuple{daeo::example2(), oracle::ex2(), 1.0, 6.6}}) {
    std::uniform_real_distribution<double> ux(xlo, xhi);
    for (int k = 0; k < 20; ++k) {
      const double x = ux(rng);
      const auto search = daeo::search_boxes(p.h, vec1(x), p.ydomain, cfg);
      const auto minima = oracle::grid_minima(o, x, p.ydomain[0].lo(),
                                              p.ydomain[0].hi(), 10000);
      for (const auto &m : minima) {
        bool covered = in_any(search.certified, m.y);
        for (const auto &u : search.unresolved) {
          covered = covered || u.box[0].contains(m.y);
        }
        CHECK(covered);
      }
      for (const auto &opt : daeo::find_local_optima(p.h, vec1(x), p.ydomain, cfg).optima) {
        CHECK(daeo::is_strict_local_minimum(p.h, vec1(x), opt.y, 1e-10));
      }
    }
  }
}

TEST_CASE("results do not depend on the order boxes are processed") {
  const auto p = daeo::example2();
  std::vector<std::vector<double>> results;
  for (double fraction : {0.3, 0.5, 63.0 / 128.0, 0.7}) {
    OptimizerConfig cfg;
    cfg.split_fraction = fraction;
    std::vector<double> ys;
    for (const auto &o : daeo::find_local_optima(p.h, vec1(2.3), p.ydomain, cfg).optima) {
      ys.push_back(o.y[0]);
    }
    std::sort(ys.begin(), ys.end());
    results.push_back(ys);
  }
  for (const auto &r : results) {
    REQUIRE(r.size() == results[0].size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(std::abs(r[i] - results[0][i]) <= 1e-8);
    }
  }
}

TEST_CASE("pruning keeps every optimum within alpha of the global value") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ux(1.0, 6.6);
  const auto p = daeo::example2();
  for (int k = 0; k < 20; ++k) {
    const double x = ux(rng);
    OptimizerConfig full;
    OptimizerConfig pruned;
    pruned.pruning = true;
    pruned.alpha = 0.5;
    const auto all = daeo::find_local_optima(p.h, vec1(x), p.ydomain, full);
    const auto kept = daeo::find_local_optima(p.h, vec1(x), p.ydomain, pruned);
    const double best = all.optima.front().value;
    for (const auto &o : all.optima) {
      if (o.value <= best + 0.5) {
        CHECK(std::any_of(kept.optima.begin(), kept.optima.end(), [&](const auto &q) {
          return std::abs(q.y[0] - o.y[0]) <= 1e-8;
        }));
      }
    }
  }
}

TEST_CASE("work list limit and configuration checks") {
  const auto p = daeo::example2();
  OptimizerConfig cfg;
  cfg.max_boxes = 2;
  CHECK_THROWS_AS(daeo::search_boxes(p.h, vec1(1.0), p.ydomain, cfg),
                  daeo::ResourceError);
  OptimizerConfig bad;
  bad.merge_tol = -1.0;
  CHECK_THROWS_AS(bad.validate(), daeo::ConfigError);
  bad = OptimizerConfig{};
  bad.split_fraction = 1.0;
  CHECK_THROWS_AS(bad.validate(), daeo::ConfigError);
}
