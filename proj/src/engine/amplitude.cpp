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

struct Term {
    int count;
    const DetectorCoefficients *row;
};

// Pairs each counted detector with its coefficient row; rejects unknown
// detectors and negative counts.
std::vector<Term> resolve_terms(const InterferometerNetwork &network, const OutcomeCounts &outcome) {
    std::vector<Term> terms;
    for (const auto &[id, count] : outcome) {
        if (count < 0) {
            throw std::invalid_argument("negative count at detector " + std::string(detector_label(id)));
        }
        const DetectorCoefficients *row = network.find(id);
        if (row == nullptr) {
            throw std::invalid_argument("detector " + std::string(detector_label(id)) + " is not in the network");
        }
        if (count > 0) {
            terms.push_back({count, row});
        }
    }
    return terms;
}

double log_prefactor_squared(const SourceSpec &source, const std::vector<Term> &terms) {
    double out = log_factorial(source.n_alpha) + log_factorial(source.n_beta);
    for (const auto &t : terms) {
        out -= log_factorial(t.count);
    }
    return out;
}

// Reachability of each x-power: which coefficients of the product polynomial
// receive at least one non-zero monomial.
std::vector<char> reachable_powers(const std::vector<Term> &terms, int limit) {
    std::vector<char> acc(limit + 1, 0);
    acc[0] = 1;
    for (const auto &t : terms) {
        const bool has_alpha = t.row->v_alpha.value != 0.0;
        const bool has_beta = t.row->v_beta.value != 0.0;
        std::vector<char> next(limit + 1, 0);
        for (int j = 0; j <= limit; ++j) {
            if (!acc[j]) {
                continue;
            }
            for (int k = 0; k <= t.count && j + k <= limit; ++k) {
                const bool nonzero = (k == 0 || has_alpha) && (k == t.count || has_beta);
                if (nonzero) {
                    next[j + k] = 1;
                }
            }
        }
        acc.swap(next);
    }
    return acc;
}

Precision resolve_precision(const InterferometerNetwork &network, Precision requested) {
    if (requested == Precision::kAuto) {
        return network.exact_capable() ? Precision::kExact : Precision::kFloat;
    }
    if (requested == Precision::kExact && !network.exact_capable()) {
        throw std::invalid_argument("exact precision needs quarter-turn phases and taps in {0, 1/2, 1}");
    }
    return requested;
}

AmplitudeValue exact_oracle(const SourceSpec &source, const std::vector<Term> &terms, ZeroKind structural) {
    const int limit = source.n_alpha;
    // acc[j] holds the x^j coefficient scaled by the running denominator.
    std::vector<SurdGaussianInt> acc(limit + 1);
    acc[0] = SurdGaussianInt(GaussianInt(1, 0));
    BigInt denominator = 1;
    BigRational prefactor_squared = BigRational(factorial_exact(source.n_alpha) * factorial_exact(source.n_beta));

    for (const auto &t : terms) {
        auto [wa, da] = clear_denominators(*t.row->v_alpha.exact);
        auto [wb, db] = clear_denominators(*t.row->v_beta.exact);
        BigInt d = lcm(da, db);
        SurdGaussianInt fa(GaussianInt(d / da, 0));
        SurdGaussianInt fb(GaussianInt(d / db, 0));
        wa = wa * fa;
        wb = wb * fb;

        // poly[k] = C(m, k) wa^k wb^(m-k)
        const int m = t.count;
        std::vector<SurdGaussianInt> pow_a(m + 1), pow_b(m + 1);
        pow_a[0] = SurdGaussianInt(GaussianInt(1, 0));
        pow_b[0] = SurdGaussianInt(GaussianInt(1, 0));
        for (int k = 1; k <= m; ++k) {
            pow_a[k] = pow_a[k - 1] * wa;
            pow_b[k] = pow_b[k - 1] * wb;
        }
        std::vector<SurdGaussianInt> next(limit + 1);
        for (int k = 0; k <= m && k <= limit; ++k) {
            SurdGaussianInt c = pow_a[k] * pow_b[m - k] * SurdGaussianInt(GaussianInt(choose_exact(m, k), 0));
            if (c.rational.is_zero() && c.sqrt2.is_zero()) {
                continue;
            }
            for (int j = 0; j + k <= limit; ++j) {
                if (acc[j].rational.is_zero() && acc[j].sqrt2.is_zero()) {
                    continue;
                }
                next[j + k] += acc[j] * c;
            }
        }
        acc.swap(next);
        BigInt dm;
        mpz_pow_ui(dm.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(m));
        denominator *= dm;
        prefactor_squared /= BigRational(factorial_exact(m));
    }
    return AmplitudeValue::exact(prefactor_squared, from_scaled(acc[limit], denominator), structural);
}

AmplitudeValue float_oracle(const SourceSpec &source, const std::vector<Term> &terms, ZeroKind structural) {
    const int limit = source.n_alpha;
    std::vector<LogComplex> acc(limit + 1);
    acc[0] = LogComplex::one();
    for (const auto &t : terms) {
        const int m = t.count;
        const LogComplex va = LogComplex::from_complex(t.row->v_alpha.value);
        const LogComplex vb = LogComplex::from_complex(t.row->v_beta.value);
        const ExtendedReal lm = log_factorial_extended(m);
        std::vector<LogComplex> poly(m + 1);
        for (int k = 0; k <= m; ++k) {
            const double log_binom =
                (lm - log_factorial_extended(k) - log_factorial_extended(m - k)).to_double();
            poly[k] = LogComplex(log_binom, 0.0) * va.pow(k) * vb.pow(m - k);
        }
        std::vector<LogComplex> next(limit + 1);
        std::vector<LogComplex> bucket;
        for (int j = 0; j <= limit; ++j) {
            bucket.clear();
            for (int k = 0; k <= m && k <= j; ++k) {
                bucket.push_back(acc[j - k] * poly[k]);
            }
            next[j] = sum_logcomplex(bucket);
        }
        acc.swap(next);
    }
    LogComplex coefficient = acc[limit];
    ZeroKind kind = structural;
    if (kind == ZeroKind::kNonZero && coefficient.is_zero()) {
        kind = ZeroKind::kCancelled;
    }
    LogComplex amplitude = coefficient * LogComplex(0.5 * log_prefactor_squared(source, terms), 0.0);
    return AmplitudeValue::approximate(amplitude, kind);
}

}  // namespace

int total_count(const OutcomeCounts &counts) {
    int total = 0;
    for (const auto &[id, c] : counts) {
        total += c;
    }
    return total;
}

AmplitudeValue AmplitudeValue::exact(BigRational prefactor_squared, SurdComplex coefficient, ZeroKind zero_kind) {
    AmplitudeValue out;
    if (is_zero(coefficient) && zero_kind == ZeroKind::kNonZero) {
        zero_kind = ZeroKind::kCancelled;
    }
    out.zero_kind_ = zero_kind;
    out.exact_ = Exact{std::move(prefactor_squared), std::move(coefficient)};
    return out;
}

AmplitudeValue AmplitudeValue::approximate(LogComplex value, ZeroKind zero_kind) {
    AmplitudeValue out;
    out.approx_ = value;
    out.zero_kind_ = value.is_zero() && zero_kind == ZeroKind::kNonZero ? ZeroKind::kCancelled : zero_kind;
    return out;
}

LogComplex AmplitudeValue::value() const {
    if (!exact_) {
        return approx_;
    }
    const SurdComplex &c = exact_->coefficient;
    if (is_zero(c)) {
        return LogComplex::zero();
    }
    const SurdReal re = real_part(c);
    const SurdReal im = imag_part(c);
    const double lr = log_abs(re);
    const double li = log_abs(im);
    const double top = std::max(lr, li);
    const double x = sign(re) * std::exp(lr - top);
    const double y = sign(im) * std::exp(li - top);
    const double log_mag = 0.5 * (log_abs(exact_->prefactor_squared) + log_abs(norm(c)));
    return {log_mag, std::atan2(y, x)};
}

std::optional<SurdReal> AmplitudeValue::exact_probability() const {
    if (!exact_) {
        return std::nullopt;
    }
    SurdReal n = norm(exact_->coefficient);
    return SurdReal(exact_->prefactor_squared * n.rational, exact_->prefactor_squared * n.sqrt2);
}

double AmplitudeValue::log_probability() const {
    if (exact_) {
        return log_abs(*exact_probability());
    }
    return approx_.is_zero() ? kNegInf : 2.0 * approx_.log_magnitude();
}

double AmplitudeValue::probability() const {
    if (exact_) {
        return to_double(*exact_probability());
    }
    return approx_.is_zero() ? 0.0 : std::exp(2.0 * approx_.log_magnitude());
}

ZeroKind AmplitudeValue::zero_kind() const { return zero_kind_; }

AmplitudeValue amplitude_oracle(const SourceSpec &source, const InterferometerNetwork &network,
                                const OutcomeCounts &outcome, Precision precision) {
    source.validate();
    const std::vector<Term> terms = resolve_terms(network, outcome);
    const Precision resolved = resolve_precision(network, precision);

    ZeroKind structural = ZeroKind::kNonZero;
    if (total_count(outcome) != source.total()) {
        structural = ZeroKind::kStructural;
    } else if (!reachable_powers(terms, source.n_alpha)[source.n_alpha]) {
        structural = ZeroKind::kStructural;
    }
    if (structural == ZeroKind::kStructural) {
        if (resolved == Precision::kExact) {
            return AmplitudeValue::exact(BigRational(0), SurdComplex(), ZeroKind::kStructural);
        }
        return AmplitudeValue::approximate(LogComplex::zero(), ZeroKind::kStructural);
    }
    if (resolved == Precision::kExact) {
        return exact_oracle(source, terms, structural);
    }
    return float_oracle(source, terms, structural);
}

AmplitudeValue phase_quadrature_amplitude(const SourceSpec &source, const InterferometerNetwork &network,
                                          const OutcomeCounts &outcome, int nodes) {
    source.validate();
    const std::vector<Term> terms = resolve_terms(network, outcome);
    const int n = source.total();
    if (nodes <= 0) {
        nodes = 4 * (n + 1);
    }
    std::vector<std::string> notices;
    if (nodes < n + 1) {
        notices.push_back("quadrature: " + std::to_string(nodes) + " nodes < N+1 = " + std::to_string(n + 1) +
                          ", trapezoid rule aliases");
    }
    AmplitudeValue out;
    if (total_count(outcome) != n) {
        // Annihilating more or fewer than N particles leaves no vacuum overlap.
        out = AmplitudeValue::approximate(LogComplex::zero(), ZeroKind::kStructural);
    } else {
        // Phase-state expansion of the source: sqrt(2^N Na! Nb! / N!).
        double log_pref = 0.5 * (n * std::numbers::ln2 + log_factorial(source.n_alpha) +
                                 log_factorial(source.n_beta) - log_factorial(n));
        // One factor sqrt(k/2) per annihilator applied to |phi, k>.
        for (int k = n; k >= 1; --k) {
            log_pref += 0.5 * std::log(0.5 * k);
        }
        for (const auto &t : terms) {
            log_pref -= 0.5 * log_factorial(t.count);
        }

        std::vector<LogComplex> samples;
        samples.reserve(nodes);
        for (int j = 0; j < nodes; ++j) {
            const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * j / nodes;
            const std::complex<double> e(std::cos(phi), std::sin(phi));
            LogComplex integrand(0.0, -source.n_beta * phi);
            for (const auto &t : terms) {
                const std::complex<double> f = t.row->v_alpha.value + t.row->v_beta.value * e;
                integrand *= LogComplex::from_complex(f).pow(t.count);
            }
            samples.push_back(integrand);
        }
        LogComplex integral = sum_logcomplex(samples);
        LogComplex amplitude = integral * LogComplex(log_pref - std::log(static_cast<double>(nodes)), 0.0);
        out = AmplitudeValue::approximate(amplitude, ZeroKind::kNonZero);
    }
    for (auto &notice : notices) {
        out.add_notice(std::move(notice));
    }
    return out;
}

}  // namespace noonsim
