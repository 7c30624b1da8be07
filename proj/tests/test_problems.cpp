#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include <minirat/problems.hpp>

using namespace minirat;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("equispaced nodes hit interval endpoints and midpoints exactly") {
  auto x = generate_nodes(NodeScheme::equispaced(-1.0, 1.0, 3));
  REQUIRE(x.size() == 3);
  CHECK(x[0] == Complex(-1.0, 0.0));
  CHECK(x[1] == Complex(0.0, 0.0));
  CHECK(x[2] == Complex(1.0, 0.0));

  auto y = generate_nodes(NodeScheme::equispaced(-1.0, 1.0, 2000));
  REQUIRE(y.size() == 2000);
  CHECK(y[0].real() == -1.0);
  CHECK(y[1999].real() == 1.0);
}

TEST_CASE("unit circle nodes start at -1 and walk counterclockwise") {
  auto z = generate_nodes(NodeScheme::unit_circle(4));
  REQUIRE(z.size() == 4);
  CHECK(std::abs(z[0] - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(z[1] - Complex(0, -1)) < 1e-15);
  CHECK(std::abs(z[2] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(z[3] - Complex(0, 1)) < 1e-15);
}

TEST_CASE("half circle scheme produces m + 1 nodes spanning the right half") {
  auto z = generate_nodes(NodeScheme::half_circle(2));
  REQUIRE(z.size() == 3);
  CHECK(std::abs(z[0] - Complex(0, -1)) < 1e-15);
  CHECK(std::abs(z[1] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(z[2] - Complex(0, 1)) < 1e-15);
}

TEST_CASE("tanh arc scheme produces m + 1 distinct nodes with exact midpoint") {
  auto z = generate_nodes(NodeScheme::tanh_arc(2000));
  REQUIRE(z.size() == 2001);
  CHECK(z[1000] == Complex(1.0, 0.0));  // tanh(0) = 0 exactly
  for (Eigen::Index j = 0; j < z.size(); ++j) CHECK(std::abs(z[j]) == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("explicit duplicate nodes are rejected with both indices") {
  Eigen::VectorXcd x(3);
  x << Complex(1, 0), Complex(2, 0), Complex(1, 0);
  try {
    generate_nodes(NodeScheme::explicit_nodes(x));
    FAIL("expected a duplicate-node rejection");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK_THAT(msg, ContainsSubstring("0"));
    CHECK_THAT(msg, ContainsSubstring("2"));
  }
}

TEST_CASE("scheme parameter validation") {
  CHECK_THROWS_AS(NodeScheme::equispaced(1.0, -1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(NodeScheme::equispaced(-1.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(NodeScheme::unit_circle(0), std::invalid_argument);
}

TEST_CASE("built-in functions take their pinned special values") {
  auto f3 = FunctionId::named("f3");
  CHECK(f3(Complex(0, 0)) == Complex(0, 0));
  CHECK(f3(Complex(0.1, 0)).real() == Catch::Approx(1.0 / std::log(10.0)).epsilon(1e-15));
  CHECK(f3(Complex(-0.1, 0)).real() == Catch::Approx(1.0 / std::log(10.0)).epsilon(1e-15));

  auto f4 = FunctionId::named("f4");
  CHECK(f4(Complex(0.6, 0)) == Complex(1.0, 0.0));
  CHECK(f4(Complex(-0.6, 0)) == Complex(1.0, 0.0));
  // t/sinh(t) <= 1 with the maximum only at the removable points
  for (double x : {-1.0, -0.7, -0.3, 0.0, 0.2, 0.5999, 0.8, 1.0}) {
    double v = f4(Complex(x, 0)).real();
    CHECK(v > 0.0);
    CHECK(v <= 1.0 + 1e-15);
  }

  auto f5 = FunctionId::named("f5");
  CHECK(std::abs(f5(Complex(1, 0)) - Complex(std::tan(1.0), 0)) < 1e-15);

  auto f6 = FunctionId::named("f6");
  CHECK(std::abs(f6(Complex(1, 0)) - Complex(std::log(1.5), 0)) < 1e-15);

  // principal branch: 1/sqrt(1+2i) in polar form
  auto f7 = FunctionId::named("f7");
  Complex expected = std::polar(std::pow(5.0, -0.25), -std::atan2(2.0, 1.0) / 2.0);
  CHECK(std::abs(f7(Complex(0, 1)) - expected) < 1e-15);

  auto f8 = FunctionId::named("f8");
  CHECK(std::abs(f8(Complex(0, 0)) - Complex(1, 0)) < 1e-15);

  CHECK_THROWS_AS(FunctionId::named("f9"), std::invalid_argument);
}

TEST_CASE("series branch of the sinh ratio is continuous across the cutoff") {
  // compare the two formulas just above the switch point
  for (double t : {2e-8, 1e-7, 1e-6}) {
    double direct = t / std::sinh(t);
    double series = 1.0 - t * t / 6.0;
    CHECK(std::abs(direct - series) < 1e-15);
  }
}

TEST_CASE("real-line functions produce real samples on real grids") {
  for (const char* name : {"f1", "f2", "f3", "f4"}) {
    NodeScheme scheme = (std::string(name) == "f2") ? NodeScheme::equispaced(1e-8, 1.0, 101)
                        : (std::string(name) == "f3") ? NodeScheme::equispaced(-0.1, 0.1, 101)
                                                      : NodeScheme::equispaced(-1.0, 1.0, 101);
    auto s = sample(FunctionId::named(name), scheme);
    for (Eigen::Index j = 0; j < s.size(); ++j) {
      CHECK(s.f[j].imag() == 0.0);
      CHECK(s.x[j].imag() == 0.0);
    }
  }
}

TEST_CASE("real-line functions reject complex nodes") {
  Eigen::VectorXcd z(2);
  z << Complex(0.5, 0.1), Complex(0.25, 0);
  CHECK_THROWS_WITH(sample(FunctionId::named("f1"), z), ContainsSubstring("imaginary"));
}

TEST_CASE("non-finite sample values are rejected with the node index") {
  Eigen::VectorXcd z(3);
  z << Complex(0.25, 0), Complex(-0.5, 0), Complex(1.0, 0);  // sqrt(-0.5) is NaN
  try {
    sample(FunctionId::named("f2"), z);
    FAIL("expected a non-finite rejection");
  } catch (const std::invalid_argument& e) {
    CHECK_THAT(e.what(), ContainsSubstring("index 1"));
  }
}

TEST_CASE("custom callback functions are sampled like built-ins") {
  auto fid = FunctionId::custom([](Complex z) { return z * z; }, "square");
  auto s = sample(fid, generate_nodes(NodeScheme::unit_circle(8)));
  for (Eigen::Index j = 0; j < s.size(); ++j) CHECK(std::abs(s.f[j] - s.x[j] * s.x[j]) == 0.0);
}

TEST_CASE("sample sets validate length and finiteness") {
  Eigen::VectorXcd x(2), f(3);
  x.setZero();
  f.setZero();
  CHECK_THROWS_AS(SampleSet(x, f), std::invalid_argument);
  Eigen::VectorXcd x2(2), f2(2);
  x2 << Complex(0, 0), Complex(1, 0);
  f2 << Complex(0, 0), Complex(std::numeric_limits<double>::quiet_NaN(), 0);
  CHECK_THROWS_WITH(SampleSet(x2, f2), ContainsSubstring("index 1"));
}
