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

#include "noonsim/numerics.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace noonsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;
constexpr std::int64_t kTableSize = 4096;
constexpr mpfr_prec_t kExtendedBits = 192;

// Exact unit vectors for quarter-turn phases so that [z, -z] cancels exactly.
std::complex<double> unit_vector(double phase) {
    if (phase == 0.0) {
        return {1.0, 0.0};
    }
    if (phase == kPi) {
        return {-1.0, 0.0};
    }
    if (phase == kHalfPi) {
        return {0.0, 1.0};
    }
    if (phase == -kHalfPi) {
        return {0.0, -1.0};
    }
    return {std::cos(phase), std::sin(phase)};
}

std::pair<double, double> two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

ExtendedReal to_extended(const mpfr_t value) {
    mpfr_t rest;
    mpfr_init2(rest, kExtendedBits);
    double hi = mpfr_get_d(value, MPFR_RNDN);
    mpfr_sub_d(rest, value, hi, MPFR_RNDN);
    double lo = mpfr_get_d(rest, MPFR_RNDN);
    mpfr_clear(rest);
    return {hi, lo};
}

ExtendedReal mpfr_log_factorial(std::int64_t n) {
    mpfr_t acc, term;
    mpfr_init2(acc, kExtendedBits);
    mpfr_init2(term, kExtendedBits);
    mpfr_set_ui(acc, 0, MPFR_RNDN);
    for (std::int64_t k = 2; k <= n; ++k) {
        mpfr_set_si(term, static_cast<long>(k), MPFR_RNDN);
        mpfr_log(term, term, MPFR_RNDN);
        mpfr_add(acc, acc, term, MPFR_RNDN);
    }
    ExtendedReal out = to_extended(acc);
    mpfr_clear(acc);
    mpfr_clear(term);
    return out;
}

const std::vector<double> &log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kTableSize + 1, 0.0);
        CompensatedSum acc;
        for (std::int64_t k = 2; k <= kTableSize; ++k) {
            acc.add(std::log(static_cast<double>(k)));
            t[k] = acc.value();
        }
        return t;
    }();
    return table;
}

const std::vector<ExtendedReal> &extended_table() {
    static const std::vector<ExtendedReal> table = [] {
        std::vector<ExtendedReal> t(kTableSize + 1);
        mpfr_t acc, term;
        mpfr_init2(acc, kExtendedBits);
        mpfr_init2(term, kExtendedBits);
        mpfr_set_ui(acc, 0, MPFR_RNDN);
        for (std::int64_t k = 2; k <= kTableSize; ++k) {
            mpfr_set_si(term, static_cast<long>(k), MPFR_RNDN);
            mpfr_log(term, term, MPFR_RNDN);
            mpfr_add(acc, acc, term, MPFR_RNDN);
            t[k] = to_extended(acc);
        }
        mpfr_clear(acc);
        mpfr_clear(term);
        return t;
    }();
    return table;
}

}  // namespace

double wrap_phase(double radians) {
    if (!std::isfinite(radians)) {
        return 0.0;
    }
    double r = std::remainder(radians, 2 * kPi);
    if (r <= -kPi) {
        r += 2 * kPi;
    }
    // Snap rounding residue onto exact quarter turns.
    double quarters = std::round(r / kHalfPi);
    if (std::abs(r - quarters * kHalfPi) < 4 * std::numeric_limits<double>::epsilon()) {
        switch (static_cast<int>(quarters)) {
            case 0: return 0.0;
            case 1: return kHalfPi;
            case -1: return -kHalfPi;
            default: return kPi;
        }
    }
    return r;
}

LogComplex::LogComplex() : log_magnitude_(-std::numeric_limits<double>::infinity()), phase_(0.0) {}

LogComplex::LogComplex(double log_magnitude, double phase)
    : log_magnitude_(log_magnitude), phase_(wrap_phase(phase)) {
    if (is_zero()) {
        phase_ = 0.0;
    }
}

LogComplex LogComplex::from_complex(std::complex<double> z) {
    if (z == std::complex<double>(0.0, 0.0)) {
        return zero();
    }
    return {std::log(std::abs(z)), std::arg(z)};
}

LogComplex LogComplex::from_signed_log(int sign, double log_magnitude) {
    if (sign == 0) {
        return zero();
    }
    return {log_magnitude, sign > 0 ? 0.0 : kPi};
}

bool LogComplex::is_zero() const {
    return std::isinf(log_magnitude_) && log_magnitude_ < 0;
}

std::complex<double> LogComplex::to_complex() const {
    if (is_zero()) {
        return {0.0, 0.0};
    }
    return std::exp(log_magnitude_) * unit_vector(phase_);
}

LogComplex LogComplex::conj() const {
    if (is_zero()) {
        return zero();
    }
    return {log_magnitude_, phase_ == kPi ? kPi : -phase_};
}

LogComplex LogComplex::pow(int exponent) const {
    if (exponent == 0) {
        return one();
    }
    if (is_zero()) {
        return zero();
    }
    return {log_magnitude_ * exponent, phase_ * exponent};
}

LogComplex operator*(const LogComplex &a, const LogComplex &b) {
    if (a.is_zero() || b.is_zero()) {
        return LogComplex::zero();
    }
    return {a.log_magnitude_ + b.log_magnitude_, a.phase_ + b.phase_};
}

void CompensatedSum::add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    auto [s, e] = two_sum(a.hi, b.hi);
    e += a.lo + b.lo;
    auto [hi, lo] = two_sum(s, e);
    return {hi, lo};
}

ExtendedReal operator-(ExtendedReal a, ExtendedReal b) { return a + (-b); }

double log_factorial(std::int64_t n) {
    if (n < 0) {
        throw std::domain_error("log_factorial: negative argument");
    }
    if (n <= kTableSize) {
        return log_factorial_table()[n];
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

ExtendedReal log_factorial_extended(std::int64_t n) {
    if (n < 0) {
        throw std::domain_error("log_factorial_extended: negative argument");
    }
    if (n <= kTableSize) {
        return extended_table()[n];
    }
    return mpfr_log_factorial(n);
}

LogComplex sum_logcomplex(std::span<const LogComplex> terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto &t : terms) {
        if (!t.is_zero()) {
            top = std::max(top, t.log_magnitude());
        }
    }
    if (std::isinf(top)) {
        return LogComplex::zero();
    }
    CompensatedSum re, im, bound;
    for (const auto &t : terms) {
        if (t.is_zero()) {
            continue;
        }
        double scale = std::exp(t.log_magnitude() - top);
        std::complex<double> u = unit_vector(t.phase());
        re.add(scale * u.real());
        im.add(scale * u.imag());
        bound.add(scale);
    }
    std::complex<double> total(re.value(), im.value());
    // Each scaled term carries a few ulps of its own rounding; a total at or
    // below that floor is cancellation noise.
    double floor = 4.0 * std::numeric_limits<double>::epsilon() * bound.value();
    if (std::abs(total) <= floor) {
        return LogComplex::zero();
    }
    LogComplex scaled = LogComplex::from_complex(total);
    return {scaled.log_magnitude() + top, scaled.phase()};
}

BigInt choose_exact(std::int64_t n, std::int64_t k) {
    if (n < 0) {
        throw std::domain_error("choose_exact: negative n");
    }
    BigInt out;
    if (k < 0 || k > n) {
        return out;
    }
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

BigInt factorial_exact(std::int64_t n) {
    if (n < 0) {
        throw std::domain_error("factorial_exact: negative argument");
    }
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

}  // namespace noonsim
