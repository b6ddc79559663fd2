// Copyright 2026 The noonsim Authors
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
#include <cstdint>
#include <span>

#include "noonsim/exact.hpp"

namespace noonsim {

/// Wraps an angle into (-pi, pi].
double wrap_phase(double radians);

/// Complex number held as natural-log magnitude and phase. Zero has
/// log_magnitude == -inf and absorbs multiplication.
class LogComplex {
  public:
    LogComplex();
    LogComplex(double log_magnitude, double phase);

    static LogComplex zero() { return {}; }
    static LogComplex one() { return {0.0, 0.0}; }
    static LogComplex from_complex(std::complex<double> z);
    /// Signed real with its log-magnitude given separately, e.g. (-1)^k / k!.
    static LogComplex from_signed_log(int sign, double log_magnitude);

    double log_magnitude() const { return log_magnitude_; }
    double phase() const { return phase_; }
    bool is_zero() const;
    /// May overflow or underflow for extreme magnitudes.
    std::complex<double> to_complex() const;

    LogComplex conj() const;
    LogComplex pow(int exponent) const;
    friend LogComplex operator*(const LogComplex &a, const LogComplex &b);
    LogComplex &operator*=(const LogComplex &o) { return *this = *this * o; }

  private:
    double log_magnitude_;
    double phase_;
};

/// Neumaier compensated accumulator. Deterministic for a fixed input order.
class CompensatedSum {
  public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Unevaluated sum hi + lo (double-double), used where log-factorial
/// differences must survive heavy cancellation downstream.
struct ExtendedReal {
    double hi = 0.0;
    double lo = 0.0;

    double to_double() const { return hi + lo; }
    friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b);
    friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b);
    ExtendedReal operator-() const { return {-hi, -lo}; }
};

/// ln(n!) by compensated cumulative summation of ln(k).
double log_factorial(std::int64_t n);

/// ln(n!) to roughly 1e-30 absolute accuracy, summed in 192-bit MPFR and
/// rounded to double-double.
ExtendedReal log_factorial_extended(std::int64_t n);

/// Rescales by the largest log-magnitude and adds real and imaginary parts
/// with compensated summation. An all-zero (or empty) input returns zero.
LogComplex sum_logcomplex(std::span<const LogComplex> terms);

/// C(n, k); zero outside 0 <= k <= n.
BigInt choose_exact(std::int64_t n, std::int64_t k);
BigInt factorial_exact(std::int64_t n);

}  // namespace noonsim
