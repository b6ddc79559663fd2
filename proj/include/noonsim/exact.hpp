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

#include <gmpxx.h>

#include <complex>
#include <string>
#include <utility>

namespace noonsim {

using BigInt = mpz_class;
using BigRational = mpq_class;

/// Natural log of |x| for an arbitrary-size rational; -inf for zero.
double log_abs(const BigRational &x);
double log_abs(const BigInt &x);

/// Gaussian integer re + i*im. Ring element used by the polynomial hot loop.
struct GaussianInt {
    BigInt re{0};
    BigInt im{0};

    GaussianInt() = default;
    GaussianInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianInt operator+(const GaussianInt &a, const GaussianInt &b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianInt operator-(const GaussianInt &a, const GaussianInt &b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianInt operator*(const GaussianInt &a, const GaussianInt &b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianInt operator-() const { return {-re, -im}; }
    GaussianInt &operator+=(const GaussianInt &o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend bool operator==(const GaussianInt &a, const GaussianInt &b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Exact complex rational (numerator_real + i*numerator_imag) / denominator,
/// always kept in lowest terms with a positive denominator.
class GaussianRational {
  public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT: implicit from small ints is convenient
    GaussianRational(BigInt re, BigInt im, BigInt den = 1);
    static GaussianRational from_rational(const BigRational &re, const BigRational &im = 0);
    static GaussianRational i() { return GaussianRational(0, 1); }

    const BigInt &numerator_real() const { return re_; }
    const BigInt &numerator_imag() const { return im_; }
    const BigInt &denominator() const { return den_; }

    BigRational real() const;
    BigRational imag() const;
    bool is_zero() const { return re_ == 0 && im_ == 0; }
    GaussianRational conj() const { return GaussianRational(re_, -im_, den_); }
    /// |z|^2
    BigRational norm() const;
    std::complex<double> to_complex() const;
    std::string to_string() const;

    GaussianRational operator-() const { return GaussianRational(-re_, -im_, den_); }
    friend GaussianRational operator+(const GaussianRational &a, const GaussianRational &b);
    friend GaussianRational operator-(const GaussianRational &a, const GaussianRational &b);
    friend GaussianRational operator*(const GaussianRational &a, const GaussianRational &b);
    GaussianRational &operator+=(const GaussianRational &o) { return *this = *this + o; }
    GaussianRational &operator*=(const GaussianRational &o) { return *this = *this * o; }
    friend bool operator==(const GaussianRational &a, const GaussianRational &b) {
        return a.re_ == b.re_ && a.im_ == b.im_ && a.den_ == b.den_;
    }

  private:
    void normalize();

    BigInt re_{0};
    BigInt im_{0};
    BigInt den_{1};
};

inline BigRational conjugate(const BigRational &x) { return x; }
inline GaussianInt conjugate(const GaussianInt &x) { return {x.re, -x.im}; }
inline GaussianRational conjugate(const GaussianRational &x) { return x.conj(); }

/// Element a + b*sqrt(2) of the quadratic extension over T.
///
/// With T = GaussianRational this field holds every detector coefficient of a
/// network whose phases are quarter turns and whose taps are 0, 1/2 or 1.
template <class T>
struct QuadraticSurd {
    T rational{};
    T sqrt2{};

    QuadraticSurd() = default;
    QuadraticSurd(T r, T s = T{}) : rational(std::move(r)), sqrt2(std::move(s)) {}

    friend QuadraticSurd operator+(const QuadraticSurd &x, const QuadraticSurd &y) {
        return {x.rational + y.rational, x.sqrt2 + y.sqrt2};
    }
    friend QuadraticSurd operator-(const QuadraticSurd &x, const QuadraticSurd &y) {
        return {x.rational - y.rational, x.sqrt2 - y.sqrt2};
    }
    friend QuadraticSurd operator*(const QuadraticSurd &x, const QuadraticSurd &y) {
        T two_bd = x.sqrt2 * y.sqrt2;
        two_bd = two_bd + two_bd;
        return {x.rational * y.rational + two_bd, x.rational * y.sqrt2 + x.sqrt2 * y.rational};
    }
    QuadraticSurd operator-() const { return {-rational, -sqrt2}; }
    QuadraticSurd &operator+=(const QuadraticSurd &o) { return *this = *this + o; }
    QuadraticSurd &operator*=(const QuadraticSurd &o) { return *this = *this * o; }
    friend bool operator==(const QuadraticSurd &x, const QuadraticSurd &y) {
        return x.rational == y.rational && x.sqrt2 == y.sqrt2;
    }
    QuadraticSurd conj() const { return {conjugate(rational), conjugate(sqrt2)}; }
};

using SurdReal = QuadraticSurd<BigRational>;
using SurdComplex = QuadraticSurd<GaussianRational>;
using SurdGaussianInt = QuadraticSurd<GaussianInt>;

bool is_zero(const SurdReal &x);
bool is_zero(const SurdComplex &x);
/// -1, 0 or +1.
int sign(const SurdReal &x);
SurdReal operator/(const SurdReal &x, const SurdReal &y);
bool operator<(const SurdReal &x, const SurdReal &y);
/// Converts without cancellation: a - b*sqrt(2) is evaluated as (a^2 - 2b^2) / (a + b*sqrt(2)).
double to_double(const SurdReal &x);
double log_abs(const SurdReal &x);
SurdReal real_part(const SurdComplex &z);
SurdReal imag_part(const SurdComplex &z);
/// |z|^2 as an exact real surd.
SurdReal norm(const SurdComplex &z);
std::complex<double> to_complex(const SurdComplex &z);
std::string to_string(const SurdReal &x);

/// Splits z = w / d with w having Gaussian-integer components and d > 0.
std::pair<SurdGaussianInt, BigInt> clear_denominators(const SurdComplex &z);
SurdComplex from_scaled(const SurdGaussianInt &w, const BigInt &denominator);

}  // namespace noonsim
