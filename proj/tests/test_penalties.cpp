#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "rdl/penalties.hpp"
#include "rdl/rng.hpp"

using rdl::ConcavePenalty;

namespace {

std::vector<ConcavePenalty> all_penalties() {
  return {
      ConcavePenalty::identity(),    ConcavePenalty::lq(1.0),
      ConcavePenalty::lq(0.5),       ConcavePenalty::lq(0.25),
      ConcavePenalty::log(1.0),      ConcavePenalty::log(0.1),
      ConcavePenalty::capped_l1(1.0), ConcavePenalty::capped_l1(0.5),
      ConcavePenalty::scad(1.0, 3.7), ConcavePenalty::scad(0.5, 3.0),
      ConcavePenalty::mcp(1.0, 2.0),  ConcavePenalty::mcp(2.0, 1.5),
  };
}

// kink locations where g' may jump or the curvature breaks
std::vector<double> kinks(const ConcavePenalty& p) {
  switch (p.kind()) {
    case rdl::PenaltyKind::capped_l1:
      return {p.param1()};
    case rdl::PenaltyKind::scad:
      return {p.param1(), p.param1() * p.param2()};
    case rdl::PenaltyKind::mcp:
      return {p.param1() * p.param2()};
    default:
      return {};
  }
}

double log_uniform(rdl::Rng& rng, double lo, double hi) {
  return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

}  // namespace

TEST_CASE("penalty construction validates parameter ranges") {
  CHECK_THROWS_AS(ConcavePenalty::lq(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::lq(1.5), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::lq(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::log(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::log(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::capped_l1(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::scad(1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::scad(0.0, 3.7), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::mcp(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ConcavePenalty::mcp(-1.0, 2.0), std::invalid_argument);
  CHECK_NOTHROW(ConcavePenalty::lq(1.0));
  CHECK_NOTHROW(ConcavePenalty::scad(1.0, 2.0 + 1e-9));
}

TEST_CASE("penalty values at pinned points") {
  CHECK(ConcavePenalty::identity().value(3.0) == 3.0);
  CHECK(ConcavePenalty::capped_l1(1.0).value(2.5) == 1.0);
  // log(eps + u) at u = e - 1 with eps = 1
  CHECK(ConcavePenalty::log(1.0).value(std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ConcavePenalty::lq(0.5).value(4.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(ConcavePenalty::log(1.0).value(0.0) == doctest::Approx(0.0));
}

TEST_CASE("non-finite arguments are rejected") {
  const auto p = ConcavePenalty::log(1.0);
  CHECK_THROWS_AS(p.value(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(p.supergradient(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(p.loss(-1.0), std::domain_error);
  CHECK_THROWS_AS(p.weight(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(p.supergradient(0.0), std::domain_error);
}

TEST_CASE("scad and mcp values match quadrature of their slopes") {
  // g(0) = 0 and g' is the defining piecewise form, so g(u) must equal the
  // integral of the supergradient.
  for (const auto& p : {ConcavePenalty::scad(1.0, 3.7), ConcavePenalty::scad(0.7, 2.5),
                        ConcavePenalty::mcp(1.0, 2.0), ConcavePenalty::mcp(1.3, 4.0)}) {
    for (double u : {0.3, 0.9, 1.1, 2.0, 3.69, 4.2, 10.0}) {
      const double expected =
          oracle::integrate([&](double t) { return p.supergradient(t); }, 1e-12, u);
      CHECK(p.value(u) == doctest::Approx(expected).epsilon(1e-7));
    }
  }
}

TEST_CASE("supergradients at pinned points") {
  CHECK(ConcavePenalty::identity().supergradient(7.3) == 1.0);
  CHECK(ConcavePenalty::capped_l1(1.0).supergradient(0.5) == 1.0);
  CHECK(ConcavePenalty::capped_l1(1.0).supergradient(2.0) == 0.0);
  // right-sided slope at the kink
  CHECK(ConcavePenalty::capped_l1(1.0).supergradient(1.0) == 0.0);

  const auto lq = ConcavePenalty::lq(0.5);
  const double fd = oracle::finite_diff([&](double u) { return lq.value(u); }, 4.0, 1e-6);
  CHECK(lq.supergradient(4.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(lq.supergradient(4.0) == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("composed loss at pinned points") {
  CHECK(ConcavePenalty::identity().loss(9.0) == 3.0);
  CHECK(ConcavePenalty::capped_l1(2.0).loss(9.0) == 2.0);
  CHECK(ConcavePenalty::log(1.0).loss(4.0) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("weights at pinned points") {
  CHECK(ConcavePenalty::identity().weight(2.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(ConcavePenalty::capped_l1(1.0).weight(5.0) == 0.0);

  // log eps=1 at r=1: g'(1) = 1/2, weight = g'(1) / 2 = 1/4, cross-checked
  // against the derivative of the composed loss at v = r^2 = 1
  const auto lg = ConcavePenalty::log(1.0);
  CHECK(lg.weight(1.0) == doctest::Approx(0.25).epsilon(1e-12));
  const double fd = oracle::finite_diff([&](double v) { return lg.loss(v); }, 1.0, 1e-7);
  CHECK(lg.weight(1.0) == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("weight guards: residual floor and cap") {
  const auto lq = ConcavePenalty::lq(0.5);
  // at r = 0 the formula divides by the floored residual
  const double floored = lq.weight(0.0, 1e-8, 1e30);
  CHECK(floored == doctest::Approx(lq.supergradient(1e-8) / (2e-8)).epsilon(1e-12));
  // default cap binds for q < 1 near zero
  CHECK(lq.weight(0.0) == 1e8);
  CHECK(std::isfinite(ConcavePenalty::log(1.0).weight(0.0)));
  CHECK(ConcavePenalty::identity().weight(1e-9, 1e-8, 1e8) ==
        doctest::Approx(1.0 / (2e-8)).epsilon(1e-12));
}

TEST_CASE("g is non-decreasing and concave on sampled points") {
  rdl::Rng rng(11);
  for (const auto& p : all_penalties()) {
    for (int t = 0; t < 2000; ++t) {
      double u = log_uniform(rng, 1e-6, 1e3);
      double v = log_uniform(rng, 1e-6, 1e3);
      if (u > v) std::swap(u, v);
      CHECK(p.value(u) <= p.value(v) + 1e-12);

      const double w = rng.uniform();
      const double mid = w * u + (1.0 - w) * v;
      CHECK(p.value(mid) >= w * p.value(u) + (1.0 - w) * p.value(v) - 1e-11);
    }
  }
}

TEST_CASE("supergradient inequality g(u) <= g(u0) + g1 (u - u0)") {
  rdl::Rng rng(12);
  for (const auto& p : all_penalties()) {
    for (int t = 0; t < 2000; ++t) {
      const double u = log_uniform(rng, 1e-6, 1e3);
      const double u0 = log_uniform(rng, 1e-6, 1e3);
      const double g1 = p.supergradient(u0);
      CHECK(g1 >= 0.0);
      CHECK(p.value(u) <= p.value(u0) + g1 * (u - u0) + 1e-12);
    }
  }
}

TEST_CASE("composed majorization in the squared-residual domain") {
  rdl::Rng rng(13);
  for (const auto& p : all_penalties()) {
    for (int t = 0; t < 2000; ++t) {
      const double v = log_uniform(rng, 1e-8, 1e4);
      const double v0 = log_uniform(rng, 1e-8, 1e4);
      const double r0 = std::sqrt(v0);
      const double slope = p.supergradient(r0) / (2.0 * r0);
      CHECK(p.loss(v) <= p.loss(v0) + slope * (v - v0) + 1e-10);
    }
  }
}

TEST_CASE("supergradient matches finite differences away from kinks") {
  rdl::Rng rng(14);
  for (const auto& p : all_penalties()) {
    const auto ks = kinks(p);
    int checked = 0;
    while (checked < 400) {
      const double u = log_uniform(rng, 1e-3, 1e3);
      const double h = 1e-6 * std::max(1.0, u);
      bool near_kink = false;
      for (double kk : ks) near_kink |= std::abs(u - kk) < 1e3 * h;
      if (near_kink) continue;
      ++checked;
      const double fd = oracle::finite_diff([&](double t) { return p.value(t); }, u, h);
      const double sg = p.supergradient(u);
      CHECK(std::abs(sg - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("weights are non-increasing in the residual") {
  rdl::Rng rng(15);
  for (const auto& p : all_penalties()) {
    for (int t = 0; t < 1000; ++t) {
      double r1 = log_uniform(rng, 1e-8, 1e3);
      double r2 = log_uniform(rng, 1e-8, 1e3);
      if (r1 > r2) std::swap(r1, r2);
      CHECK(p.weight(r1) >= p.weight(r2) - 1e-12);
    }
  }
}

TEST_CASE("penalty parsing round-trips and rejects malformed specs") {
  const char* specs[] = {"identity",        "lq:q=0.5",       "log:eps=1",
                         "capped:eps=0.25", "scad:lambda=1,a=3.7",
                         "mcp:lambda=1.5,gamma=2"};
  for (const char* s : specs) {
    const auto p = rdl::parse_penalty(s);
    CHECK(rdl::parse_penalty(p.to_string()) == p);
  }
  CHECK(rdl::parse_penalty("log:eps=1").kind() == rdl::PenaltyKind::log);
  CHECK(rdl::parse_penalty("scad:a=3.7,lambda=1").param1() == 1.0);

  CHECK_THROWS_AS(rdl::parse_penalty("huber:delta=1"), std::invalid_argument);
  CHECK_THROWS_AS(rdl::parse_penalty("log"), std::invalid_argument);
  CHECK_THROWS_AS(rdl::parse_penalty("log:eps=zero"), std::invalid_argument);
  CHECK_THROWS_AS(rdl::parse_penalty("lq:q=2"), std::invalid_argument);
  CHECK_THROWS_AS(rdl::parse_penalty("identity:x=1"), std::invalid_argument);
  CHECK_THROWS_AS(rdl::parse_penalty("scad:lambda=1"), std::invalid_argument);
}
