// SPDX-License-Identifier: Apache-2.0
//
// srbf: sensing-resistance beamforming for MIMO links
// Copyright (C) 2026 The srbf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "srbf/numerics.hpp"

#include <cmath>

// J0 is evaluated in three regimes:
//   |x| < 8        ascending power series
//   8 <= |x| < 25  Miller backward recurrence normalized by
//                  J0 + 2 (J2 + J4 + ...) = 1
//   |x| >= 25      Hankel asymptotic expansion, truncated at its
//                  smallest term (error below e^-2|x|)

namespace srbf {
namespace {

double j0_series(double x)
{
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) && std::abs(term) < 1e-18)
            break;
    }
    return sum;
}

double j0_miller(double x)
{
    int start = static_cast<int>(x) + 60;
    if (start % 2 != 0)
        ++start;

    double next = 0.0;   // J_{n+1}
    double curr = 1e-30; // J_n
    double even_sum = 0.0;
    for (int n = start; n > 0; --n) {
        const double prev = (2.0 * n / x) * curr - next;  // J_{n-1}
        next = curr;
        curr = prev;
        if (std::abs(curr) > 1e200) {
            curr *= 1e-200;
            next *= 1e-200;
            even_sum *= 1e-200;
        }
        if ((n - 1) % 2 == 0 && n - 1 > 0)
            even_sum += curr;
    }
    return curr / (curr + 2.0 * even_sum);
}

double j0_asymptotic(double x)
{
    // |a_k| = prod_{m=1..k} (2m - 1)^2 / (k! 8^k); P takes even k, Q odd k,
    // with Q starting at -1/(8x).
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    double last = 1.0;
    for (int k = 1; k < 400; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * k * x);
        if (term > last)
            break;
        last = term;
        switch (k % 4) {
        case 0: p += term; break;
        case 1: q -= term; break;
        case 2: p -= term; break;
        case 3: q += term; break;
        }
        if (term < 1e-18)
            break;
    }
    const double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x)
{
    const double ax = std::abs(x);
    if (ax < 8.0)
        return j0_series(ax);
    if (ax < 25.0)
        return j0_miller(ax);
    return j0_asymptotic(ax);
}

}  // namespace srbf
