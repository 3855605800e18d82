#include "cryptomine/stats.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "cryptomine/errors.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace cryptomine;

namespace {

ErrorCode error_of(const std::vector<double> &x, const std::vector<double> &y) {
  try {
    pearson(x, y);
  } catch (const Error &e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("perfect correlations") {
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) == 1.0);
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == -1.0);
}

TEST_CASE("hand-computed case") {
  // Sxy = 52 - 45.5 = 6.5, Sxx = 17.5, Syy = 31 - 169/6 = 17/6.
  std::vector<double> x = {1, 2, 3, 4, 5, 6};
  std::vector<double> y = {1, 2, 2, 2, 3, 3};
  double expected = 6.5 / std::sqrt(17.5 * 17.0 / 6.0);
  CHECK(pearson(x, y) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("four-point hand case") {
  // Sxy = 5.5, Sxx = 5, Syy = 8.75.
  double r = pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 5});
  CHECK(std::abs(r - 5.5 / std::sqrt(43.75)) <= 1e-12);
}

TEST_CASE("error conditions") {
  CHECK(error_of({1, 2, 3}, {1, 2}) == ErrorCode::kLengthMismatch);
  CHECK(error_of({1, 2}, {1, 2}) == ErrorCode::kTooFewPoints);
  CHECK(error_of({}, {}) == ErrorCode::kTooFewPoints);
  CHECK(error_of({1, 1, 1}, {1, 2, 3}) == ErrorCode::kConstantSeries);
  CHECK(error_of({1, 2, 3}, {5, 5, 5}) == ErrorCode::kConstantSeries);
}

TEST_CASE("symmetry, range and affine invariance") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd(0, 1);
  for (int iter = 0; iter < 200; ++iter) {
    size_t n = 3 + rng() % 50;
    std::vector<double> x(n), y(n), xa(n), ya(n);
    double a = 0.5 + double(rng() % 100), c = double(rng() % 1000) - 500;
    double b = -(0.5 + double(rng() % 100)), d = double(rng() % 1000);
    for (size_t i = 0; i < n; ++i) {
      x[i] = nd(rng);
      y[i] = 0.3 * x[i] + nd(rng);
      xa[i] = a * x[i] + c;
      ya[i] = b * y[i] + d;
    }
    double r = pearson(x, y);
    CHECK(r == pearson(y, x));
    CHECK(r >= -1.0);
    CHECK(r <= 1.0);
    CHECK(std::abs(pearson(xa, ya) - (-r)) <= 1e-12);
  }
}

TEST_CASE("property: random vectors agree with the oracle") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ud(-1e3, 1e3);
  for (int iter = 0; iter < 1000; ++iter) {
    size_t n = 3 + rng() % 98;
    std::vector<double> x(n), y(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = ud(rng);
      y[i] = (iter % 3 == 0 ? 2.0 * x[i] : 0.0) + ud(rng);
    }
    CHECK(std::abs(pearson(x, y) - oracle::naive_pearson(x, y)) <= 1e-10);
  }
}
