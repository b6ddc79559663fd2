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

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "noonsim/engine.hpp"

namespace noonsim {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

ClosedFormValue zero_value(bool exact) {
    ClosedFormValue out{kNegInf, std::nullopt};
    if (exact) {
        out.exact = BigRational(0);
    }
    return out;
}

ClosedFormValue from_exact(BigRational value) {
    ClosedFormValue out;
    out.log_value = log_abs(value);
    out.exact = std::move(value);
    return out;
}

std::vector<BigInt> binomial_row(int n) {
    std::vector<BigInt> row(n + 1);
    for (int k = 0; k <= n; ++k) {
        row[k] = choose_exact(n, k);
    }
    return row;
}

BigInt square_factorial(int n) {
    BigInt f = factorial_exact(n);
    return f * f;
}

// The float routes sum in binary128: the alternating sums cancel by factors
// beyond 1e12 at N = 80, more than binary64 can absorb. Binomials of rows up
// to n ~ 110 are exact in this format.
using Quad = __float128;

constexpr Quad quad_epsilon() {
    Quad e = 1;
    for (int k = 0; k < 112; ++k) {
        e /= 2;
    }
    return e;
}

// ln x for x > 0, brought into binary64 range by exact power-of-two steps.
double quad_log(Quad x) {
    constexpr double kStep = 900.0;
    const Quad up = static_cast<Quad>(std::ldexp(1.0, 900));
    double shift = 0.0;
    while (x < static_cast<Quad>(1e-290)) {
        x *= up;
        shift -= kStep;
    }
    while (x > static_cast<Quad>(1e290)) {
        x /= up;
        shift += kStep;
    }
    return std::log(static_cast<double>(x)) + shift * std::numbers::ln2;
}

// C(n, k) / C(n, n/2) for k = 0..n, with ln C(n, n/2) kept separately.
struct ScaledRow {
    std::vector<Quad> ratio;
    ExtendedReal log_scale;
};

ScaledRow scaled_row(int n) {
    const int h = n / 2;
    ScaledRow row{std::vector<Quad>(n + 1, 0), log_factorial_extended(n) - log_factorial_extended(h) -
                                                   log_factorial_extended(n - h)};
    row.ratio[h] = 1;
    for (int k = h; k < n; ++k) {
        row.ratio[k + 1] = row.ratio[k] * (n - k) / (k + 1);
    }
    for (int k = h; k > 0; --k) {
        row.ratio[k - 1] = row.ratio[k] * k / (n - k + 1);
    }
    return row;
}

// ln |z|^2 of a scaled sum, or nullopt when it sits below the rounding floor
// of its own terms.
std::optional<double> log_norm(Quad re, Quad im, Quad bound) {
    const Quad norm = re * re + im * im;
    const Quad floor = 8 * quad_epsilon() * bound;
    if (norm == 0 || norm <= floor * floor) {
        return std::nullopt;
    }
    return quad_log(norm);
}

Precision resolve(Precision requested, bool exact_possible, const char *what) {
    if (requested == Precision::kAuto) {
        return exact_possible ? Precision::kExact : Precision::kFloat;
    }
    if (requested == Precision::kExact && !exact_possible) {
        throw std::invalid_argument(std::string(what) + ": exact precision needs a quarter-turn phase");
    }
    return requested;
}

}  // namespace

double ClosedFormValue::value() const { return std::isinf(log_value) ? 0.0 : std::exp(log_value); }

ClosedFormValue prob_noon_closed(const SourceSpec &source, int m1, int m2, int m5, Phase xi, Precision precision) {
    source.validate();
    const Precision mode = resolve(precision, xi.is_quarter_turn(), "prob_noon_closed");
    const bool exact = mode == Precision::kExact;
    const int na = source.n_alpha;
    const int m6 = source.total() - m1 - m2 - m5;
    if (m1 < 0 || m2 < 0 || m5 < 0 || m6 < 0) {
        return zero_value(exact);
    }

    if (exact) {
        // Multiplying every term by m1! m2! m5! m6! turns the reciprocal
        // factorials into binomials; phases are powers of -i.
        const long step = std::llround(2.0 * xi.pi_units()) + 1;  // quarter turns per unit of p+q
        const auto b1 = binomial_row(m1);
        const auto b2 = binomial_row(m2);
        const auto b5 = binomial_row(m5);
        const auto b6 = binomial_row(m6);
        BigInt re = 0, im = 0;
        for (int p = 0; p <= m1; ++p) {
            for (int q = 0; q <= m2; ++q) {
                const BigInt c12 = b1[p] * b2[q];
                for (int r = 0; r <= m5; ++r) {
                    const int s = na - p - q - r;
                    if (s < 0 || s > m6) {
                        continue;
                    }
                    BigInt term = c12 * b5[r] * b6[s];
                    // e^{-i (p+q)(xi + pi/2)} = (-i)^{(p+q) step}; then (-1)^{p+r} = (-i)^{2(p+r)}.
                    long quarter = ((static_cast<long>(p + q) * step + 2L * (p + r)) % 4 + 4) % 4;
                    switch (quarter) {
                        case 0: re += term; break;
                        case 1: im -= term; break;
                        case 2: re -= term; break;
                        default: im += term; break;
                    }
                }
            }
        }
        BigRational value(re * re + im * im,
                          square_factorial(m1) * square_factorial(m2) * factorial_exact(m5) * factorial_exact(m6));
        value.canonicalize();
        return from_exact(std::move(value));
    }

    // Terms sharing j = p + q share the phase e^{-i j (xi + pi/2)}; the real
    // partial sums over each j are formed first.
    const ScaledRow r1 = scaled_row(m1), r2 = scaled_row(m2), r5 = scaled_row(m5), r6 = scaled_row(m6);
    std::vector<Quad> partial(m1 + m2 + 1, 0);
    Quad bound = 0;
    for (int p = 0; p <= m1; ++p) {
        for (int q = 0; q <= m2; ++q) {
            const Quad c12 = r1.ratio[p] * r2.ratio[q];
            for (int r = 0; r <= m5; ++r) {
                const int s = na - p - q - r;
                if (s < 0 || s > m6) {
                    continue;
                }
                const Quad t = c12 * r5.ratio[r] * r6.ratio[s];
                bound += t;
                partial[p + q] += (p + r) % 2 == 0 ? t : -t;
            }
        }
    }
    Quad re = 0, im = 0;
    for (int j = 0; j <= m1 + m2; ++j) {
        if (partial[j] == 0) {
            continue;
        }
        const std::complex<double> u = Phase::from_pi_units(-j * (xi.pi_units() + 0.5)).unit();
        re += partial[j] * static_cast<Quad>(u.real());
        im += partial[j] * static_cast<Quad>(u.imag());
    }
    const auto ln = log_norm(re, im, bound);
    if (!ln) {
        return zero_value(false);
    }
    const ExtendedReal scale = r1.log_scale + r2.log_scale + r5.log_scale + r6.log_scale;
    const ExtendedReal outer = scale + scale - log_factorial_extended(m1) - log_factorial_extended(m1) -
                               log_factorial_extended(m2) - log_factorial_extended(m2) - log_factorial_extended(m5) -
                               log_factorial_extended(m6);
    return {outer.to_double() + *ln, std::nullopt};
}

BigRational noon_closed_scale(const SourceSpec &source, int m1, int m2) {
    BigInt num = factorial_exact(source.n_alpha) * factorial_exact(source.n_beta) * factorial_exact(m1) *
                 factorial_exact(m2);
    BigInt den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2UL * static_cast<unsigned long>(source.total()));
    BigRational k(num, den);
    k.canonicalize();
    return k;
}

ClosedFormValue prob_fringe_closed(const SourceSpec &source, int m1, int m2, int m7, Precision precision) {
    source.validate();
    const bool exact = resolve(precision, true, "prob_fringe_closed") == Precision::kExact;
    const int na = source.n_alpha;
    const int m8 = source.total() - m1 - m2 - m7;
    if (m1 < 0 || m2 < 0 || m7 < 0 || m8 < 0) {
        return zero_value(exact);
    }

    if (exact) {
        BigInt sum = 0;
        for (int p = 0; p <= m1; ++p) {
            BigInt term = choose_exact(m1, p) * choose_exact(m2, na - m8 - p);
            if (p % 2 == 0) {
                sum += term;
            } else {
                sum -= term;
            }
        }
        BigRational value(sum * sum, square_factorial(m1) * square_factorial(m2) * factorial_exact(m7) *
                                         factorial_exact(m8));
        value.canonicalize();
        return from_exact(std::move(value));
    }

    const ScaledRow r1 = scaled_row(m1), r2 = scaled_row(m2);
    Quad sum = 0, bound = 0;
    for (int p = 0; p <= m1; ++p) {
        const int q = na - p - m8;
        if (q < 0 || q > m2) {
            continue;
        }
        const Quad t = r1.ratio[p] * r2.ratio[q];
        bound += t;
        sum += p % 2 == 0 ? t : -t;
    }
    const auto ln = log_norm(sum, 0, bound);
    if (!ln) {
        return zero_value(false);
    }
    const ExtendedReal scale = r1.log_scale + r2.log_scale;
    const ExtendedReal outer = scale + scale - log_factorial_extended(m1) - log_factorial_extended(m1) -
                               log_factorial_extended(m2) - log_factorial_extended(m2) - log_factorial_extended(m7) -
                               log_factorial_extended(m8);
    return {outer.to_double() + *ln, std::nullopt};
}

BigRational fringe_closed_scale(const SourceSpec &source, int m1, int m2) {
    BigInt num = factorial_exact(source.n_alpha) * factorial_exact(source.n_beta) * factorial_exact(m1) *
                 factorial_exact(m2);
    BigInt den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(source.total() + m1 + m2));
    BigRational k(num, den);
    k.canonicalize();
    return k;
}

double q12(double phi, int m1, int m2) {
    const double c = std::cos(0.5 * phi);
    const double s = std::sin(0.5 * phi);
    if ((m1 > 0 && c == 0.0) || (m2 > 0 && s == 0.0)) {
        return 0.0;
    }
    int sign = 1;
    if (c < 0.0 && m1 % 2 != 0) {
        sign = -sign;
    }
    if (s < 0.0 && m2 % 2 != 0) {
        sign = -sign;
    }
    double log_value = 0.0;
    if (m1 > 0) {
        log_value += m1 * std::log(std::abs(c));
    }
    if (m2 > 0) {
        log_value += m2 * std::log(std::abs(s));
    }
    return sign * std::exp(log_value);
}

double q12_peak(int m1, int m2) {
    if (m1 < 0 || m2 < 0 || (m1 == 0 && m2 == 0)) {
        throw std::invalid_argument("q12_peak: needs m1, m2 >= 0, not both zero");
    }
    if (m2 == 0) {
        return 0.0;
    }
    if (m1 == 0) {
        return std::numbers::pi;
    }
    // d/dphi ln Q12 = (m2 cot(phi/2) - m1 tan(phi/2)) / 2 decreases strictly on (0, pi).
    double lo = 0.0;
    double hi = std::numbers::pi;
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        const double t = std::tan(0.5 * mid);
        const double slope = m2 / t - m1 * t;
        if (slope > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::complex<double> PhaseWeight::evaluate(double phi) const {
    const std::complex<double> e(std::cos(phi), std::sin(phi));
    LogComplex w(0.0, -n_beta * phi);
    w *= LogComplex::from_complex(1.0 + e).pow(m1);
    w *= LogComplex::from_complex(1.0 - e).pow(m2);
    return w.to_complex();
}

}  // namespace noonsim
