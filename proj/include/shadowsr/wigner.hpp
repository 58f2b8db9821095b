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
#pragma once

#include <complex>

namespace shadowsr {

/// Angular momentum quantum numbers are passed doubled (two_j = 2j) so that
/// half-integer values stay exact.

/// Real small-d matrix element d^j_{m,m'}(beta) from the explicit factorial
/// sum. Returns 0 when |m| or |m'| exceeds j.
double wigner_small_d(int two_j, int two_m, int two_mp, double beta);

/// D^j_{m,m'}(alpha, beta, gamma) = e^{-i m alpha} d^j_{m,m'}(beta)
/// e^{-i m' gamma}.
std::complex<double> wigner_D(int two_j, int two_m, int two_mp, double alpha,
                              double beta, double gamma);

/// Diagonal element D^j_{m,m}.
inline std::complex<double> wigner_D(int two_j, int two_m, double alpha,
                                     double beta, double gamma) {
  return wigner_D(two_j, two_m, two_m, alpha, beta, gamma);
}

}  // namespace shadowsr
