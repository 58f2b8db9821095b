// Copyright 2026 The shadowsr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "shadowsr/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "shadowsr/errors.hpp"

namespace shadowsr {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

double wigner_small_d(int two_j, int two_m, int two_mp, double beta) {
  if (two_j < 0) throw DomainError("wigner_small_d: negative j");
  if (std::abs(two_m) > two_j || std::abs(two_mp) > two_j) return 0.0;
  if ((two_j - two_m) % 2 != 0 || (two_j - two_mp) % 2 != 0) {
    throw DomainError("wigner_small_d: j and m must differ by an integer");
  }
  // Integer-valued combinations of the (half-)integer labels.
  const int jpm = (two_j + two_m) / 2;
  const int jmm = (two_j - two_m) / 2;
  const int jpmp = (two_j + two_mp) / 2;
  const int jmmp = (two_j - two_mp) / 2;
  const int mmmp = (two_m - two_mp) / 2;

  const double c = std::cos(beta / 2);
  const double s = std::sin(beta / 2);
  const int kmin = std::max(0, -mmmp);
  const int kmax = std::min(jpmp, jmm);
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double denom = factorial(jpmp - k) * factorial(k) *
                         factorial(jmm - k) * factorial(mmmp + k);
    const int cos_power = jpmp + jmm - 2 * k;  // 2j - 2k + m' - m
    const int sin_power = 2 * k + mmmp;        // 2k - m' + m
    const double sign = ((k + mmmp) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * std::pow(c, cos_power) * std::pow(s, sin_power) / denom;
  }
  return std::sqrt(factorial(jpm) * factorial(jmm) * factorial(jpmp) *
                   factorial(jmmp)) *
         sum;
}

std::complex<double> wigner_D(int two_j, int two_m, int two_mp, double alpha,
                              double beta, double gamma) {
  const double m = 0.5 * two_m;
  const double mp = 0.5 * two_mp;
  return std::polar(1.0, -m * alpha) * wigner_small_d(two_j, two_m, two_mp, beta) *
         std::polar(1.0, -mp * gamma);
}

}  // namespace shadowsr
