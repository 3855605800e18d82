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


#ifndef CRYPTOMINE_STATS_HPP_
#define CRYPTOMINE_STATS_HPP_

#include <span>

namespace cryptomine {

// Pearson product-moment correlation, two-pass about the means and clamped
// to [-1, 1]. Symmetric in its arguments bit for bit.
//
// Throws Error(kLengthMismatch), Error(kTooFewPoints) for fewer than three
// pairs, or Error(kConstantSeries) when either input has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace cryptomine

#endif  // CRYPTOMINE_STATS_HPP_
