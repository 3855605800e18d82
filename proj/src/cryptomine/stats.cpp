// Copyright 2026 The Cryptomine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cryptomine/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cryptomine/errors.hpp"

namespace cryptomine {

namespace {

double mean_of(std::span<const double> v) {
  // Second pass corrects the rounding error of the naive mean.
  double sum = 0.0;
  for (double a : v) sum += a;
  double mean = sum / double(v.size());
  double residual = 0.0;
  for (double a : v) residual += a - mean;
  return mean + residual / double(v.size());
}

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::kTooFewPoints, std::to_string(x.size()) + " points");
  }
  if (is_constant(x) || is_constant(y)) {
    throw Error(ErrorCode::kConstantSeries, "zero variance");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::kConstantSeries, "zero variance");
  // A single sqrt keeps r exactly 1 when x == y. Products that overflow or
  // lose precision to underflow fall back to separate roots.
  const double prod = sxx * syy;
  const double denom = std::isnormal(prod) ? std::sqrt(prod) : std::sqrt(sxx) * std::sqrt(syy);
  const double r = sxy / denom;
  return std::clamp(r, -1.0, 1.0);
}

}  // namespace cryptomine
