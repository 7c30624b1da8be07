#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <limits>
#include <random>

#include <minirat/dualcore.hpp>

#include "test_support.hpp"

using namespace minirat;

namespace {

SampleSet rational_11_instance() {
  // f = (1 + 2x) / (3 - x): exactly representable at type (1,1)
  Eigen::VectorXcd x(4), f(4);
  x << Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(4, 0);
  for (int j = 0; j < 4; ++j) f[j] = (1.0 + 2.0 * x[j]) / (3.0 - x[j]);
  return SampleSet(x, f);
}

}  // namespace

TEST_CASE("simplex weight construction and validation") {
  auto u = SimplexWeights::uniform(5);
  CHECK(u.w.sum() == Catch::Approx(1.0).margin(1e-14));
  CHECK(u.active.size() == 5);

  Eigen::VectorXd raw(3);
  raw << 2.0, 0.0, 6.0;
  auto s = SimplexWeights::from_vector(raw);
  CHECK(s.w[0] == Catch::Approx(0.25));
  CHECK(s.w[1] == 0.0);
  CHECK(s.w[2] == Catch::Approx(0.75));

  raw << 1.0, -0.5, 1.0;
  CHECK_THROWS_AS(SimplexWeights::from_vector(raw), std::invalid_argument);
  CHECK_THROWS_AS(SimplexWeights::from_vector(Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("denominator-free case reduces to a weighted polynomial least-squares fit") {
  std::mt19937_64 rng(8101);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = testsupport::random_instance(rng, 25);
    Eigen::VectorXd w = testsupport::interior_weights(rng, 25);
    for (Eigen::Index n1 : {0, 1, 3}) {
      double got = eval_d2_raw(s, w, n1, 0).d2;
      double ref = testsupport::weighted_ls_residual2(s, w, n1);
      CHECK(std::abs(got - ref) <= 1e-12 * std::max(1e-30, ref));
    }
  }
}

TEST_CASE("exactly rational data drives the dual value to zero") {
  auto s = rational_11_instance();
  auto ev = eval_d2(s, SimplexWeights::uniform(4), 1, 1);
  CHECK(ev.d2 <= 1e-20);
  CHECK(ev.residual.maxCoeff() <= 1e-12);
}

TEST_CASE("identically zero data gives exact zero residuals and an interpolation certificate") {
  // asymmetric nodes keep the (arbitrary) unit denominator from vanishing at a node
  Eigen::VectorXcd x(5), f(5);
  x << Complex(0.3, 0), Complex(1.1, 0), Complex(2.7, 0), Complex(-0.4, 0), Complex(5.0, 0);
  f.setZero();
  SampleSet s(x, f);
  auto w = SimplexWeights::uniform(5);
  auto ev = eval_d2(s, w, 1, 1);
  CHECK(ev.residual.maxCoeff() == 0.0);
  CHECK(ev.multiple_minimum);  // all singular values tie at zero
  auto cert = certify_ruttan(s, w, ev, 1e-5);
  CHECK(cert.interpolation_regime);
  CHECK(cert.max_err == 0.0);
  CHECK(cert.gap == 0.0);  // absolute gap in the interpolation regime
  CHECK(cert.satisfied);
}

TEST_CASE("a denominator root at a node triggers the pole sentinel") {
  // zero data on a symmetric grid: the degenerate minimizer is an orthogonal
  // polynomial with a root exactly at the grid center
  Eigen::VectorXcd x(5), f(5);
  x << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1);
  f.setZero();
  SampleSet s(x, f);
  auto w = SimplexWeights::uniform(5);
  auto ev = eval_d2(s, w, 1, 1);
  CHECK(std::abs(ev.q_vals[0]) == 0.0);
  CHECK(std::isinf(ev.residual[0]));
  CHECK(ev.residual.tail(4).maxCoeff() == 0.0);
  auto cert = certify_ruttan(s, w, ev, 1e-5);
  CHECK(std::isinf(cert.max_err));
  CHECK(std::isinf(cert.gap));
  CHECK(cert.lambda_min == -std::numeric_limits<double>::infinity());
  CHECK_FALSE(cert.satisfied);
  CHECK_FALSE(cert.interpolation_regime);
}

TEST_CASE("fast evaluation agrees with the dense monomial oracle") {
  std::mt19937_64 rng(8102);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::Index m = 8 + static_cast<Eigen::Index>(rng() % 43);
    auto s = testsupport::random_instance(rng, m);
    Eigen::Index n1 = static_cast<Eigen::Index>(rng() % 6);
    Eigen::Index n2 = static_cast<Eigen::Index>(rng() % 6);
    if (m < n1 + n2 + 2) continue;
    Eigen::VectorXd w = testsupport::interior_weights(rng, m);
    double fast = eval_d2_raw(s, w, n1, n2).d2;
    auto oracle = eval_d2_oracle(s, w, n1, n2);
    CHECK_FALSE(oracle.scale_warning);
    CHECK(std::abs(fast - oracle.d2) <= 1e-10 * std::max(1.0, fast));
  }
}

TEST_CASE("oracle warns outside its comfort zone") {
  std::mt19937_64 rng(8103);
  auto s = testsupport::random_instance(rng, 250);
  CHECK(eval_d2_oracle(s, Eigen::VectorXd::Constant(250, 1.0 / 250), 2, 2).scale_warning);
  auto s2 = testsupport::random_instance(rng, 40);
  CHECK(eval_d2_oracle(s2, Eigen::VectorXd::Constant(40, 1.0 / 40), 11, 2).scale_warning);
}

TEST_CASE("dual value is invariant under positive rescaling of the weights") {
  std::mt19937_64 rng(8104);
  auto s = testsupport::random_instance(rng, 30);
  Eigen::VectorXd w = testsupport::interior_weights(rng, 30);
  double base = eval_d2_raw(s, w, 3, 2).d2;
  for (double tau : {0.5, 2.0, 10.0}) {
    double scaled = eval_d2_raw(s, (tau * w).eval(), 3, 2).d2;
    CHECK(std::abs(scaled - base) <= 1e-12 * std::max(1.0, base));
  }
}

TEST_CASE("weak duality: sqrt(d2) never exceeds the worst pointwise error") {
  std::mt19937_64 rng(8105);
  for (int trial = 0; trial < 15; ++trial) {
    auto s = testsupport::random_instance(rng, 20);
    Eigen::VectorXd w = testsupport::interior_weights(rng, 20);
    auto ev = eval_d2_raw(s, w, 2, 2);
    double max_err = ev.residual.maxCoeff();
    CHECK(std::sqrt(std::max(ev.d2, 0.0)) <= max_err * (1.0 + 1e-10));
  }
}

TEST_CASE("recovered pair satisfies the weighted normalization and beats competitors") {
  std::mt19937_64 rng(8106);
  auto s = testsupport::random_instance(rng, 24);
  Eigen::VectorXd w = testsupport::interior_weights(rng, 24);
  auto ev = eval_d2_raw(s, w, 2, 3);

  // constraint sum_j w_j |q_j|^2 = 1 is the unit norm of hat_b in basis coordinates
  double constraint = (w.array() * ev.q_vals.cwiseAbs2().array()).sum();
  CHECK(constraint == Catch::Approx(1.0).margin(1e-12));

  // d2 is the minimum of the projected objective over unit denominators
  Eigen::VectorXcd fs(24);
  for (Eigen::Index k = 0; k < 24; ++k) fs[k] = s.f[ev.support[static_cast<std::size_t>(k)]];
  Eigen::MatrixXcd FQq = fs.asDiagonal() * ev.basis_q.Q;
  Eigen::MatrixXcd M = FQq - ev.basis_p.Q * (ev.basis_p.Q.adjoint() * FQq);
  CHECK((M * ev.hat_b).squaredNorm() == Catch::Approx(ev.d2).epsilon(1e-10).margin(1e-14));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXcd b(ev.basis_q.rank);
    for (Eigen::Index k = 0; k < b.size(); ++k) b[k] = {gauss(rng), gauss(rng)};
    b.normalize();
    CHECK(ev.d2 <= (M * b).squaredNorm() * (1.0 + 1e-12));
  }
}

TEST_CASE("gradient satisfies the Euler identity and matches finite differences") {
  std::mt19937_64 rng(8107);
  for (int trial = 0; trial < 5; ++trial) {
    auto s = testsupport::random_instance(rng, 20);
    Eigen::VectorXd w = testsupport::interior_weights(rng, 20);
    auto ev = eval_d2_raw(s, w, 2, 2);
    REQUIRE_FALSE(ev.multiple_minimum);
    Eigen::VectorXd g = gradient(ev);

    CHECK(std::abs(g.dot(w)) <= 1e-12 * std::max(1.0, ev.d2));
    Eigen::VectorXd fd = testsupport::fd_gradient(s, w, 2, 2);
    CHECK((g - fd).norm() <= 1e-5 * fd.norm());
  }
}

TEST_CASE("gradient stays finite at nodes carrying zero weight") {
  std::mt19937_64 rng(8108);
  auto s = testsupport::random_instance(rng, 15);
  Eigen::VectorXd w = testsupport::interior_weights(rng, 15);
  w[3] = 0.0;
  w[9] = 0.0;
  w /= w.sum();
  auto ev = eval_d2_raw(s, w, 2, 2);
  Eigen::VectorXd g = gradient(ev);
  for (Eigen::Index j = 0; j < 15; ++j) CHECK(std::isfinite(g[j]));
  CHECK(std::abs(g.dot(w)) <= 1e-12 * std::max(1.0, ev.d2));
}

TEST_CASE("hessian is symmetric, has the expected kernel, and matches directional differences") {
  std::mt19937_64 rng(8109);
  auto s = testsupport::random_instance(rng, 15);
  Eigen::VectorXd wv = testsupport::interior_weights(rng, 15);
  auto w = SimplexWeights::from_vector(wv);
  auto ev = eval_d2(s, w, 2, 1);
  REQUIRE_FALSE(ev.multiple_minimum);
  auto hr = hessian(s, w, ev);

  CHECK((hr.matrix - hr.matrix.transpose()).norm() == 0.0);
  CHECK(hr.asym_defect <= 1e-8 * hr.matrix.norm());
  CHECK(hr.kernel_dim == 1);

  // scale invariance differentiated once more: H w = -grad
  Eigen::VectorXd g = gradient(ev);
  CHECK((hr.matrix * w.w + g).norm() <= 1e-8 * std::max(1.0, g.norm()));

  // directional check against the analytic gradient at perturbed weights
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double h = 1e-5;
  for (int dir = 0; dir < 3; ++dir) {
    Eigen::VectorXd delta(15);
    for (Eigen::Index j = 0; j < 15; ++j) delta[j] = gauss(rng);
    delta.array() -= delta.mean();  // tangent to the simplex
    delta.normalize();
    Eigen::VectorXd gp = gradient(eval_d2_raw(s, (w.w + h * delta).eval(), 2, 1));
    Eigen::VectorXd gm = gradient(eval_d2_raw(s, (w.w - h * delta).eval(), 2, 1));
    Eigen::VectorXd fd = (gp - gm) / (2.0 * h);
    Eigen::VectorXd hv = hr.matrix * delta;
    CHECK((hv - fd).norm() <= 1e-4 * fd.norm());
  }
}

TEST_CASE("hessian requires strictly positive weights") {
  std::mt19937_64 rng(8110);
  auto s = testsupport::random_instance(rng, 10);
  Eigen::VectorXd wv = testsupport::interior_weights(rng, 10);
  wv[2] = 0.0;
  wv /= wv.sum();
  auto w = SimplexWeights::from_vector(wv);
  auto ev = eval_d2(s, w, 1, 1);
  CHECK_THROWS_AS(hessian(s, w, ev), std::invalid_argument);
}

TEST_CASE("dual block at shift d2 is positive semidefinite up to rounding") {
  std::mt19937_64 rng(8111);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = testsupport::random_instance(rng, 18);
    Eigen::VectorXd w = testsupport::interior_weights(rng, 18);
    auto ev = eval_d2_raw(s, w, 2, 2);
    CHECK(psd_self_test(ev) >= -1e-10);
  }
}

TEST_CASE("certificate reports gap, support, and the shifted smallest eigenvalue") {
  std::mt19937_64 rng(8112);
  auto s = testsupport::random_instance(rng, 16);
  Eigen::VectorXd wv = testsupport::interior_weights(rng, 16);
  wv[5] = 1e-45;  // nearly dead node
  wv /= wv.sum();
  auto w = SimplexWeights::from_vector(wv);
  auto ev = eval_d2(s, w, 2, 2);
  auto cert = certify_ruttan(s, w, ev, 1e-5, 1e-40);

  double max_err = ev.residual.maxCoeff();
  CHECK(cert.max_err == max_err);
  CHECK(cert.sqrt_d2 == Catch::Approx(std::sqrt(std::max(ev.d2, 0.0))));
  CHECK(cert.gap == Catch::Approx(std::abs(cert.sqrt_d2 - max_err) / max_err));
  CHECK(cert.support.size() == 15);  // the nearly dead node drops out of the support report
  // the shifted block can only lose definiteness by at most the gap-induced shift
  CHECK(cert.lambda_min >= -(max_err * max_err - ev.d2) - 1e-10);
  CHECK(cert.lambda_min <= psd_self_test(ev) + 1e-10);
}

TEST_CASE("evaluation preconditions are enforced") {
  std::mt19937_64 rng(8113);
  auto s = testsupport::random_instance(rng, 6);
  // too few positive weights for the denominator space
  Eigen::VectorXd w = Eigen::VectorXd::Zero(6);
  w[0] = 0.5;
  w[1] = 0.5;
  CHECK_THROWS_AS(eval_d2_raw(s, w, 1, 2), std::invalid_argument);
  // too few active nodes for the problem type
  CHECK_THROWS_AS(eval_d2(s, SimplexWeights::uniform(6), 3, 2), std::invalid_argument);
  // negative weight
  Eigen::VectorXd bad = Eigen::VectorXd::Constant(6, 1.0 / 6);
  bad[2] = -0.1;
  CHECK_THROWS_AS(eval_d2_raw(s, bad, 1, 1), std::invalid_argument);
}

TEST_CASE("generic instances report a simple smallest singular value") {
  std::mt19937_64 rng(8114);
  auto s = testsupport::random_instance(rng, 20);
  auto ev = eval_d2_raw(s, testsupport::interior_weights(rng, 20), 2, 2);
  CHECK_FALSE(ev.multiple_minimum);
  CHECK(ev.sigma_next > ev.sigma_min);
}
