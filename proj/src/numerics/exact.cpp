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

#include "noonsim/exact.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace noonsim {

double log_abs(const BigInt &x) {
    if (x == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    long exponent = 0;
    double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
    return std::log(std::abs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_abs(const BigRational &x) {
    if (x == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    return log_abs(BigInt(x.get_num())) - log_abs(BigInt(x.get_den()));
}

GaussianRational::GaussianRational(BigInt re, BigInt im, BigInt den)
    : re_(std::move(re)), im_(std::move(im)), den_(std::move(den)) {
    if (den_ == 0) {
        throw std::domain_error("GaussianRational: zero denominator");
    }
    normalize();
}

GaussianRational GaussianRational::from_rational(const BigRational &re, const BigRational &im) {
    BigInt den = re.get_den() * im.get_den();
    BigInt nr = re.get_num() * im.get_den();
    BigInt ni = im.get_num() * re.get_den();
    return GaussianRational(std::move(nr), std::move(ni), std::move(den));
}

void GaussianRational::normalize() {
    if (den_ < 0) {
        den_ = -den_;
        re_ = -re_;
        im_ = -im_;
    }
    if (re_ == 0 && im_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = gcd(re_, im_);
    g = gcd(g, den_);
    if (g != 1) {
        re_ /= g;
        im_ /= g;
        den_ /= g;
    }
}

BigRational GaussianRational::real() const {
    BigRational r(re_, den_);
    r.canonicalize();
    return r;
}

BigRational GaussianRational::imag() const {
    BigRational r(im_, den_);
    r.canonicalize();
    return r;
}

BigRational GaussianRational::norm() const {
    BigRational r(re_ * re_ + im_ * im_, den_ * den_);
    r.canonicalize();
    return r;
}

std::complex<double> GaussianRational::to_complex() const {
    return {real().get_d(), imag().get_d()};
}

std::string GaussianRational::to_string() const {
    std::string s = "(" + re_.get_str() + (im_ < 0 ? " - " : " + ") + BigInt(abs(im_)).get_str() + "i)";
    if (den_ != 1) {
        s += "/" + den_.get_str();
    }
    return s;
}

GaussianRational operator+(const GaussianRational &a, const GaussianRational &b) {
    if (a.den_ == b.den_) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_, a.den_);
    }
    return GaussianRational(a.re_ * b.den_ + b.re_ * a.den_, a.im_ * b.den_ + b.im_ * a.den_, a.den_ * b.den_);
}

GaussianRational operator-(const GaussianRational &a, const GaussianRational &b) { return a + (-b); }

GaussianRational operator*(const GaussianRational &a, const GaussianRational &b) {
    return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_, a.den_ * b.den_);
}

bool is_zero(const SurdReal &x) { return x.rational == 0 && x.sqrt2 == 0; }

bool is_zero(const SurdComplex &x) { return x.rational.is_zero() && x.sqrt2.is_zero(); }

int sign(const SurdReal &x) {
    int sa = sgn(x.rational);
    int sb = sgn(x.sqrt2);
    if (sa == 0) {
        return sb;
    }
    if (sb == 0 || sa == sb) {
        return sa;
    }
    // Opposite signs: compare a^2 with 2 b^2.
    BigRational a2 = x.rational * x.rational;
    BigRational b2 = 2 * x.sqrt2 * x.sqrt2;
    int c = cmp(a2, b2);
    return c == 0 ? 0 : (c > 0 ? sa : sb);
}

SurdReal operator/(const SurdReal &x, const SurdReal &y) {
    BigRational denom = y.rational * y.rational - 2 * y.sqrt2 * y.sqrt2;
    if (denom == 0) {
        throw std::domain_error("SurdReal: division by zero");
    }
    SurdReal num = x * SurdReal(y.rational, -y.sqrt2);
    BigRational r = num.rational / denom;
    BigRational s = num.sqrt2 / denom;
    return {r, s};
}

bool operator<(const SurdReal &x, const SurdReal &y) { return sign(x - y) < 0; }

double to_double(const SurdReal &x) {
    const double root2 = std::numbers::sqrt2;
    int sa = sgn(x.rational);
    int sb = sgn(x.sqrt2);
    if (sa == 0 || sb == 0 || sa == sb) {
        return x.rational.get_d() + x.sqrt2.get_d() * root2;
    }
    BigRational product = x.rational * x.rational - 2 * x.sqrt2 * x.sqrt2;
    return product.get_d() / (x.rational.get_d() - x.sqrt2.get_d() * root2);
}

double log_abs(const SurdReal &x) {
    int sa = sgn(x.rational);
    int sb = sgn(x.sqrt2);
    if (sa == 0 && sb == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    double la = log_abs(x.rational);
    double lb = log_abs(x.sqrt2) + 0.5 * std::numbers::ln2;
    if (sa == 0) {
        return lb;
    }
    if (sb == 0) {
        return la;
    }
    if (sa == sb) {
        double hi = std::max(la, lb);
        return hi + std::log(std::exp(la - hi) + std::exp(lb - hi));
    }
    BigRational product = x.rational * x.rational - 2 * x.sqrt2 * x.sqrt2;
    double hi = std::max(la, lb);
    return log_abs(product) - hi - std::log(std::exp(la - hi) + std::exp(lb - hi));
}

SurdReal real_part(const SurdComplex &z) { return {z.rational.real(), z.sqrt2.real()}; }

SurdReal imag_part(const SurdComplex &z) { return {z.rational.imag(), z.sqrt2.imag()}; }

SurdReal norm(const SurdComplex &z) {
    // |A + B sqrt2|^2 = |A|^2 + 2|B|^2 + 2 sqrt2 Re(A conj(B))
    BigRational cross = (z.rational * z.sqrt2.conj()).real();
    BigRational r = z.rational.norm() + 2 * z.sqrt2.norm();
    BigRational s = 2 * cross;
    return {r, s};
}

std::complex<double> to_complex(const SurdComplex &z) {
    return {to_double(real_part(z)), to_double(imag_part(z))};
}

std::string to_string(const SurdReal &x) {
    if (x.sqrt2 == 0) {
        return x.rational.get_str();
    }
    return x.rational.get_str() + " + " + x.sqrt2.get_str() + "*sqrt(2)";
}

std::pair<SurdGaussianInt, BigInt> clear_denominators(const SurdComplex &z) {
    BigInt d = lcm(z.rational.denominator(), z.sqrt2.denominator());
    BigInt fr = d / z.rational.denominator();
    BigInt fs = d / z.sqrt2.denominator();
    SurdGaussianInt w{GaussianInt(z.rational.numerator_real() * fr, z.rational.numerator_imag() * fr),
                      GaussianInt(z.sqrt2.numerator_real() * fs, z.sqrt2.numerator_imag() * fs)};
    return {std::move(w), std::move(d)};
}

SurdComplex from_scaled(const SurdGaussianInt &w, const BigInt &denominator) {
    return {GaussianRational(w.rational.re, w.rational.im, denominator),
            GaussianRational(w.sqrt2.re, w.sqrt2.im, denominator)};
}

}  // namespace noonsim
