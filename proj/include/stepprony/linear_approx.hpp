// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

///
/// \file linear_approx.hpp
///
/// Linear and sparse baselines for step functions: Fourier partial sums,
/// Haar-frame binary expansions, Haar-basis n-term approximation, and
/// best n-term errors over the three dictionaries.
///
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "stepprony/errors.hpp"
#include "stepprony/signals.hpp"
#include "stepprony/spectral.hpp"

namespace stepprony {

enum class DictionaryKind
{
    fourier_basis,
    haar_frame,
    haar_basis,
};

inline constexpr std::string_view to_string(DictionaryKind kind)
{
    switch (kind)
    {
    case DictionaryKind::fourier_basis:
        return "FOURIER_BASIS";
    case DictionaryKind::haar_frame:
        return "HAAR_FRAME";
    case DictionaryKind::haar_basis:
        return "HAAR_BASIS";
    }
    return "?";
}

/// Fourier basis element e^{2 pi i k x}.
struct Frequency
{
    int k = 0;
    friend bool operator==(Frequency, Frequency) = default;
};

/// Haar frame element phi_{r,j} or Haar wavelet psi_{r,j}, supported on
/// [j 2^-r, (j+1) 2^-r].
struct ScaleOffset
{
    int scale = 0;
    std::int64_t offset = 0;
    friend bool operator==(ScaleOffset, ScaleOffset) = default;
};

/// The Haar scaling function phi = chi_[0,1].
struct ScalingFunction
{
    friend bool operator==(ScalingFunction, ScalingFunction) = default;
};

using DictionaryElement = std::variant<Frequency, ScaleOffset, ScalingFunction>;

struct ApproximationResult
{
    std::size_t term_count = 0;
    double l2_error = 0.0;
    std::vector<DictionaryElement> support;
    std::vector<Complex> coefficients;
};

/// Frequency cutoff of the Fourier n-term search.
inline constexpr int kFourierSearchCutoff = 10000;

///
/// Error of the Fourier partial sum over |k| <= j, by Parseval:
/// err^2 = ||f||^2 - sum_{|k|<=j} |c_k|^2.
///
inline ApproximationResult fourier_partial_sum_error(const PiecewiseConstantSignal& f, int j)
{
    if (j < 0)
    {
        throw DomainError("frequency cutoff must be non-negative");
    }
    const auto spectrum = fourier_coefficients(f, j);
    ApproximationResult out;
    out.term_count = static_cast<std::size_t>(2 * j + 1);
    double captured = 0.0;
    for (const auto& [k, c] : spectrum.entries())
    {
        captured += std::norm(c);
        out.support.emplace_back(Frequency{k});
        out.coefficients.push_back(c);
    }
    out.l2_error = std::sqrt(std::max(0.0, squared_norm(f) - captured));
    return out;
}

namespace detail {

inline void require_unit_open(double t0)
{
    if (!(t0 > 0.0 && t0 < 1.0))
    {
        throw DomainError("step position must lie in (0,1)");
    }
}

/// Builds the Haar-frame approximant of H_{t0} from the dyadic point
/// t1 = k / 2^scales (k odd or zero, t1 <= 1): one indicator per set bit.
inline ApproximationResult haar_frame_from_dyadic(double t0, std::uint64_t k, int scales,
                                                  std::size_t budget)
{
    ApproximationResult out;
    out.term_count = budget;
    double t1 = 0.0;
    if (k == (std::uint64_t{1} << scales))
    {
        // Rounded up to 1: H_1 is phi_{0,0} itself.
        out.support.emplace_back(ScaleOffset{0, 0});
        out.coefficients.emplace_back(1.0, 0.0);
        t1 = 1.0;
    }
    else
    {
        std::uint64_t prefix = 0;
        for (int r = 1; r <= scales; ++r)
        {
            const bool bit = ((k >> (scales - r)) & 1u) != 0;
            if (bit)
            {
                // phi_{r,j} = 2^{r/2} chi_[j 2^-r, (j+1) 2^-r], j = prefix * 2
                const auto offset = static_cast<std::int64_t>(prefix << 1);
                out.support.emplace_back(ScaleOffset{r, offset});
                out.coefficients.emplace_back(std::sqrt(std::ldexp(1.0, -r)), 0.0);
                t1 += std::ldexp(1.0, -r);
            }
            prefix = (prefix << 1) | (bit ? 1u : 0u);
        }
    }
    out.l2_error = std::sqrt(std::abs(t0 - t1));
    return out;
}

} // namespace detail

///
/// Haar-frame approximation of H_{t0} using scales 1..n.
///
/// t0 is rounded to the nearest multiple of 2^-n (ties toward t0's
/// truncation), and the approximant H_{t1} is the sum of one normalized
/// frame element for each set bit of t1. Hence |t0 - t1| <= 2^-(n+1) and the
/// L2 error sqrt|t0 - t1| is at most 2^-(n+1)/2. Dyadic t0 with at most n
/// binary digits is reproduced exactly.
///
inline ApproximationResult haar_frame_approx(double t0, int n)
{
    detail::require_unit_open(t0);
    if (n < 1 || n > 52)
    {
        throw DomainError("Haar frame scale count must lie in 1..52");
    }
    const double scaled = std::ldexp(t0, n);
    auto k = static_cast<std::uint64_t>(std::floor(scaled));
    if (scaled - static_cast<double>(k) > 0.5)
    {
        ++k;
    }
    return detail::haar_frame_from_dyadic(t0, k, n, static_cast<std::size_t>(n));
}

///
/// Haar-frame n-term approximation of H_{t0} that spends the budget on the
/// n leading nonzero binary digits of t0 instead of the first n digits.
///
/// Both the truncation after the n-th set bit and its round-up are tried
/// and the closer one kept, so the error is at most 2^-(p+1)/2 where p >= n
/// is the position of the n-th set bit.
///
inline ApproximationResult haar_frame_sparse_approx(double t0, int n)
{
    detail::require_unit_open(t0);
    if (n < 1)
    {
        throw DomainError("term count must be positive");
    }
    // Digits below scale 62 are dropped; they carry less than 2^-62 of t0.
    constexpr int kMaxScale = 62;
    const double scaled = std::ldexp(t0, kMaxScale);
    if (scaled >= std::ldexp(1.0, 64))
    {
        throw DomainError("step position out of range");
    }
    const auto digits = static_cast<std::uint64_t>(scaled);
    int set = 0;
    int last_scale = kMaxScale;
    for (int r = 1; r <= kMaxScale; ++r)
    {
        if ((digits >> (kMaxScale - r)) & 1u)
        {
            if (++set == n)
            {
                last_scale = r;
                break;
            }
        }
    }
    const std::uint64_t truncated = digits >> (kMaxScale - last_scale);
    auto down = detail::haar_frame_from_dyadic(t0, truncated, last_scale,
                                               static_cast<std::size_t>(n));
    if (set < n)
    {
        return down;
    }
    auto up = detail::haar_frame_from_dyadic(t0, truncated + 1, last_scale,
                                             static_cast<std::size_t>(n));
    return up.l2_error < down.l2_error ? up : down;
}

///
/// Haar-frame n-term approximation of H_{t0} with signed coefficients.
///
/// H_{t1} with t1 = sum_i s_i 2^-r_i, s_i = +-1 and r_1 < r_2 < ..., is a
/// sum of n signed frame elements: each step adds or removes one dyadic
/// interval of scale r_i next to the current prefix. A beam search over
/// the two nearest powers of two of the remaining residual picks t1; the
/// error is sqrt|t0 - t1|.
///
inline ApproximationResult haar_frame_signed_approx(double t0, int n)
{
    detail::require_unit_open(t0);
    if (n < 1)
    {
        throw DomainError("term count must be positive");
    }
    constexpr int kMaxScale = 62;
    constexpr std::size_t kBeamWidth = 64;
    struct Digit
    {
        int scale;
        int sign;
    };
    struct State
    {
        double prefix = 0.0;
        std::vector<Digit> digits;
    };
    const auto residual = [t0](const State& s) { return std::abs(t0 - s.prefix); };
    std::vector<State> beam{State{}};
    State best;
    for (int term = 0; term < n; ++term)
    {
        std::vector<State> next;
        for (const auto& s : beam)
        {
            const double rho = t0 - s.prefix;
            if (rho == 0.0)
            {
                continue;
            }
            const int sign = rho > 0.0 ? 1 : -1;
            const int finest_used = s.digits.empty() ? -1 : s.digits.back().scale;
            // 2^-floor_scale <= |rho| < 2^-(floor_scale - 1)
            const int floor_scale = -std::ilogb(std::abs(rho));
            for (int scale : {floor_scale, floor_scale - 1})
            {
                if (scale <= finest_used || scale < 0 || scale > kMaxScale)
                {
                    continue;
                }
                State child = s;
                child.prefix += sign * std::ldexp(1.0, -scale);
                child.digits.push_back({scale, sign});
                next.push_back(std::move(child));
            }
        }
        if (next.empty())
        {
            break;
        }
        std::stable_sort(next.begin(), next.end(), [&](const State& a, const State& b) {
            return residual(a) < residual(b);
        });
        if (next.size() > kBeamWidth)
        {
            next.resize(kBeamWidth);
        }
        if (best.digits.empty() || residual(next.front()) < residual(best))
        {
            best = next.front();
        }
        beam = std::move(next);
    }

    ApproximationResult out;
    out.term_count = static_cast<std::size_t>(n);
    double prefix = 0.0;
    for (const auto& d : best.digits)
    {
        const double width = std::ldexp(1.0, -d.scale);
        const double left = d.sign > 0 ? prefix : prefix - width;
        out.support.emplace_back(
            ScaleOffset{d.scale, static_cast<std::int64_t>(std::ldexp(left, d.scale))});
        out.coefficients.emplace_back(d.sign * std::sqrt(width), 0.0);
        prefix += d.sign * width;
    }
    out.l2_error = std::sqrt(residual(best));
    return out;
}

/// Haar coefficient of H_t against psi_{r,j} for the single j with
/// t in (j 2^-r, (j+1) 2^-r); zero when t sits on a dyadic point of scale r.
inline double haar_wavelet_coefficient(double t, int r)
{
    const double width = std::ldexp(1.0, -r);
    const double left = std::floor(t / width) * width;
    const double inside = t - left;
    if (inside <= 0.0)
    {
        return 0.0;
    }
    const double amplitude = std::sqrt(std::ldexp(1.0, r));
    return amplitude * (inside <= width / 2.0 ? inside : width - inside);
}

///
/// Best n-term approximation of H_{t0} in the orthonormal Haar basis.
///
/// Only phi and one wavelet per scale have nonzero coefficients; the n
/// largest are kept and the error is the root of the discarded energy.
/// Scales beyond 60 are ignored; their energy is below 2^-60.
///
inline ApproximationResult haar_basis_approx(double t0, int n)
{
    detail::require_unit_open(t0);
    if (n < 1)
    {
        throw DomainError("term count must be positive");
    }
    constexpr int kMaxScale = 60;
    struct Term
    {
        DictionaryElement element;
        double coefficient;
    };
    std::vector<Term> terms;
    terms.push_back({ScalingFunction{}, t0});
    for (int r = 0; r <= kMaxScale; ++r)
    {
        const double c = haar_wavelet_coefficient(t0, r);
        if (c != 0.0)
        {
            const double width = std::ldexp(1.0, -r);
            terms.push_back({ScaleOffset{r, static_cast<std::int64_t>(std::floor(t0 / width))}, c});
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return std::abs(a.coefficient) > std::abs(b.coefficient);
    });

    ApproximationResult out;
    out.term_count = static_cast<std::size_t>(n);
    double discarded = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i)
    {
        if (i < static_cast<std::size_t>(n))
        {
            out.support.push_back(terms[i].element);
            out.coefficients.emplace_back(terms[i].coefficient, 0.0);
        }
        else
        {
            discarded += terms[i].coefficient * terms[i].coefficient;
        }
    }
    out.l2_error = std::sqrt(discarded);
    return out;
}

namespace detail {

inline double step_position(const PiecewiseConstantSignal& f)
{
    if (f.jump_count() != 1 || f.values()[0] != 1.0 || f.values()[1] != 0.0)
    {
        throw UnsupportedInputError("Haar dictionaries need a step function H_t");
    }
    return f.jumps()[0];
}

/// Best n-term Fourier error over |k| <= cutoff: keep the n largest |c_k|.
inline double fourier_n_term_error(const PiecewiseConstantSignal& f, std::size_t n)
{
    const auto spectrum = fourier_coefficients(f, kFourierSearchCutoff);
    std::vector<double> energy;
    energy.reserve(spectrum.size());
    for (const auto& [k, c] : spectrum.entries())
    {
        energy.push_back(std::norm(c));
    }
    const std::size_t keep = std::min(n, energy.size());
    std::partial_sort(energy.begin(), energy.begin() + static_cast<std::ptrdiff_t>(keep),
                      energy.end(), std::greater<>());
    double captured = 0.0;
    for (std::size_t i = 0; i < keep; ++i)
    {
        captured += energy[i];
    }
    return std::sqrt(std::max(0.0, squared_norm(f) - captured));
}

} // namespace detail

///
/// Upper bound on the n-term approximation error sigma_n(f, dict).
///
/// FOURIER_BASIS accepts any signal and keeps the n largest coefficients
/// with |k| <= 10^4; the error is computed against ||f||^2 so the neglected
/// tail counts as error. The Haar dictionaries need f = H_t; HAAR_FRAME
/// returns the best of the scale-count, leading-digit and signed-digit
/// constructions.
///
inline double n_term_error(const PiecewiseConstantSignal& f, DictionaryKind dict, std::size_t n)
{
    if (n == 0)
    {
        return std::sqrt(squared_norm(f));
    }
    switch (dict)
    {
    case DictionaryKind::fourier_basis:
        return detail::fourier_n_term_error(f, n);
    case DictionaryKind::haar_frame: {
        const double t = detail::step_position(f);
        const int scales = static_cast<int>(std::min<std::size_t>(n, 52));
        return std::min({haar_frame_approx(t, scales).l2_error,
                         haar_frame_sparse_approx(t, static_cast<int>(n)).l2_error,
                         haar_frame_signed_approx(t, static_cast<int>(n)).l2_error});
    }
    case DictionaryKind::haar_basis:
        return haar_basis_approx(detail::step_position(f), static_cast<int>(n)).l2_error;
    }
    throw DomainError("unknown dictionary");
}

} // namespace stepprony
