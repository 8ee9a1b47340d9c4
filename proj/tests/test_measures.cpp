#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "ufd/grid.hpp"
#include "ufd/measures.hpp"

using namespace ufd;

namespace {

Weight cosine_weight(const Grid& g, const Exponents& e, double amplitude) {
  return weight_from_function(
      g, e, [&](double x) { return 1.0 + amplitude * std::cos(2.0 * M_PI * x / g.length()); });
}

}  // namespace

TEST_CASE("exponent bundle") {
  Exponents e = make_exponents(1.0, 3);
  CHECK(e.r == 1.0);
  CHECK(e.sigma == 2.0);
  CHECK(e.d == 3);
  CHECK(make_exponents(0.5).sigma == doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(make_exponents(0.0), Error);
  CHECK_THROWS_AS(make_exponents(-1.0), Error);
  CHECK_THROWS_AS(make_exponents(1.0, 0), Error);
}

TEST_CASE("uniform weight and steady state") {
  Grid g = make_grid(Torus{1.0}, 8);
  Exponents e = make_exponents(1.0);
  Weight w = weight_from_rho(g, e, std::vector<double>(g.n, 2.0));
  for (std::size_t i = 0; i < g.n; ++i) {
    CHECK(w.rho[i] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w.m[i] == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(w.lambda > 0.0);
  CHECK(w.lambda < 1.0);
  Density s = steady_state(g, w);
  CHECK(s.mass == doctest::Approx(1.0).epsilon(1e-14));
  for (double v : s.f) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  Density s3 = steady_state(g, w, 3.0);
  CHECK(s3.mass == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("weight invariants under a cosine profile") {
  Grid g = make_grid(Torus{1.0}, 256);
  Exponents e = make_exponents(1.5);
  Weight w = cosine_weight(g, e, 0.25);
  CHECK(std::abs(integrate(g, w.rho) - 1.0) <= 1e-10);
  double min_m = 1e300, max_m = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    CHECK(std::abs(w.m[i] - std::pow(w.rho[i], 1.0 / e.sigma)) <= 1e-12);
    min_m = std::min(min_m, w.m[i]);
    max_m = std::max(max_m, w.m[i]);
  }
  CHECK(w.lambda < min_m);
  CHECK(max_m * w.lambda < 1.0);
}

TEST_CASE("weight validation rejects inconsistent data") {
  Grid g = make_grid(Torus{1.0}, 4);
  Exponents e = make_exponents(1.0);
  std::vector<double> rho(4, 1.0), m(4, 1.0);
  CHECK_NOTHROW(make_weight(g, e, rho, m, 0.9, 0.0));
  // mobility not matching rho^(1/sigma)
  std::vector<double> bad_m = {1.0, 1.0, 1.0, 1.01};
  CHECK_THROWS_AS(make_weight(g, e, rho, bad_m, 0.9, 0.0), Error);
  // mass off
  std::vector<double> bad_rho(4, 1.1);
  std::vector<double> bad_rho_m(4, std::pow(1.1, 0.5));
  CHECK_THROWS_AS(make_weight(g, e, bad_rho, bad_rho_m, 0.9, 0.0), Error);
  // lambda not a strict lower bound
  CHECK_THROWS_AS(make_weight(g, e, rho, m, 1.0, 0.0), Error);
  CHECK_THROWS_AS(make_weight(g, e, rho, m, -0.5, 0.0), Error);
  // negative log-concavity modulus
  CHECK_THROWS_AS(make_weight(g, e, rho, m, 0.9, -1.0), Error);
  // nonpositive weight
  CHECK_THROWS_AS(weight_from_rho(g, e, {1.0, 1.0, 0.0, 1.0}), Error);
}

TEST_CASE("density construction") {
  Grid g = make_grid(Interval{0.0, 1.0}, 4);
  Density d = make_density(g, {0.5, 1.5, 0.5, 1.5});
  CHECK(d.mass == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_NOTHROW(make_density(g, {0.0, 1.0, 1.0, 2.0}));
  CHECK_THROWS_AS(make_density(g, {-0.1, 1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(make_density(g, {1.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(
      make_density(g, {std::numeric_limits<double>::quiet_NaN(), 1.0, 1.0, 1.0}), Error);
}

TEST_CASE("energy functional against hand values") {
  Grid g = make_grid(Torus{1.0}, 4);
  Exponents e = make_exponents(1.0);
  Weight w = weight_from_rho(g, e, std::vector<double>(4, 1.0));
  Density d = make_density(g, {0.5, 1.5, 0.5, 1.5});
  // 0.25 * (2 + 2/3 + 2 + 2/3) = 4/3
  CHECK(functional_F(g, e, w, d) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  Density z = make_density(g, {0.0, 1.5, 0.5, 1.5});
  CHECK(std::isinf(functional_F(g, e, w, z)));
}

TEST_CASE("relative moments against hand values and domain checks") {
  Grid g = make_grid(Torus{1.0}, 4);
  Exponents e = make_exponents(1.0);
  Weight w = weight_from_rho(g, e, std::vector<double>(4, 1.0));
  Density d = make_density(g, {0.5, 1.5, 0.5, 1.5});
  // q = 2: 0.25 * (0.25 + 2.25 + 0.25 + 2.25) = 1.25
  CHECK(functional_Gq(g, w, d, 2.0) == doctest::Approx(1.25).epsilon(1e-14));
  CHECK_THROWS_AS(functional_Gq(g, w, d, 0.0), Error);
  CHECK_THROWS_AS(functional_Gq(g, w, d, 0.5), Error);
  CHECK_THROWS_AS(functional_Gq(g, w, d, 1.0), Error);
  CHECK_NOTHROW(functional_Gq(g, w, d, 1.0 + 1e-9));
  CHECK_NOTHROW(functional_Gq(g, w, d, -0.5));
  // zero cells: finite for q > 1, infinite for q < 0
  Density z = make_density(g, {0.0, 1.5, 0.5, 1.5});
  CHECK(std::isfinite(functional_Gq(g, w, z, 2.0)));
  CHECK(std::isinf(functional_Gq(g, w, z, -1.0)));
}

TEST_CASE("negative relative moment reproduces the energy") {
  Grid g = make_grid(Torus{1.0}, 128);
  Exponents e = make_exponents(1.7);
  Weight w = cosine_weight(g, e, 0.3);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.2, 3.0);
  std::vector<double> f(g.n);
  for (double& v : f) v = unif(rng);
  Density d = make_density(g, f);
  const double lhs = functional_Gq(g, w, d, -e.r);
  const double rhs = functional_F(g, e, w, d);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
}

TEST_CASE("steady state minimizes the relative moments") {
  Grid g = make_grid(Torus{1.0}, 64);
  Exponents e = make_exponents(1.0);
  Weight w = cosine_weight(g, e, 0.4);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(0.05, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> f(g.n);
    for (double& v : f) v = unif(rng);
    Density d = make_density(g, f);
    Density s = steady_state(g, w, d.mass);
    for (double q : {-2.5, -1.0, 2.0, 3.7}) {
      CHECK(functional_Gq(g, w, d, q) >= functional_Gq(g, w, s, q) - 1e-12);
    }
  }
}

TEST_CASE("weighted Lq norms") {
  Grid g = make_grid(Interval{0.0, 1.0}, 4);
  Exponents e = make_exponents(1.0);
  Weight w = weight_from_rho(g, e, std::vector<double>(4, 1.0));
  std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  CHECK(weighted_Lq_norm(g, w, v, 2.0) == doctest::Approx(std::sqrt(7.5)).epsilon(1e-14));
  CHECK(weighted_Lq_norm(g, w, v, -1.0) == doctest::Approx(48.0 / 25.0).epsilon(1e-14));
  CHECK(weighted_Lq_moment(g, w, v, 2.0) == doctest::Approx(7.5).epsilon(1e-14));
  CHECK_THROWS_AS(weighted_Lq_norm(g, w, v, 0.0), Error);
  // a vanishing cell collapses negative norms to zero
  CHECK(weighted_Lq_norm(g, w, {0.0, 1.0, 1.0, 1.0}, -1.0) == 0.0);
  CHECK_THROWS_AS(weighted_Lq_moment(g, w, {-1.0, 1.0, 1.0, 1.0}, -1.0), Error);
}

TEST_CASE("weighted BV norm counts faces correctly") {
  Exponents e = make_exponents(1.0);
  std::vector<double> zigzag = {0.0, 1.0, 0.0, 1.0};
  Grid torus = make_grid(Torus{1.0}, 4);
  Weight wt = weight_from_rho(torus, e, std::vector<double>(4, 1.0));
  CHECK(weighted_BV_norm(torus, wt, zigzag) == doctest::Approx(4.0).epsilon(1e-14));
  Grid iv = make_grid(Interval{0.0, 1.0}, 4);
  Weight wi = weight_from_rho(iv, e, std::vector<double>(4, 1.0));
  CHECK(weighted_BV_norm(iv, wi, zigzag) == doctest::Approx(3.0).epsilon(1e-14));
  // nonuniform mobility: faces use arithmetic means of the neighbours
  Grid g2 = make_grid(Torus{1.0}, 4);
  Weight w2 = weight_from_rho(g2, e, {1.0, 2.0, 3.0, 2.0});
  double want = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const std::size_t j = (i + 1) % 4;
    want += 0.5 * (w2.m[i] + w2.m[j]) * std::abs(zigzag[j] - zigzag[i]);
  }
  CHECK(weighted_BV_norm(g2, w2, zigzag) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("relative density round trip") {
  Grid g = make_grid(Torus{1.0}, 32);
  Exponents e = make_exponents(2.0);
  Weight w = cosine_weight(g, e, 0.2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  std::vector<double> f(g.n);
  for (double& v : f) v = unif(rng);
  Density d = make_density(g, f);
  std::vector<double> u = to_u(w, d);
  Density back = to_f(g, w, u);
  for (std::size_t i = 0; i < g.n; ++i) {
    CHECK(back.f[i] == doctest::Approx(d.f[i]).epsilon(1e-14));
  }
}
