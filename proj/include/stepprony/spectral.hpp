// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

///
/// \file spectral.hpp
///
/// Forward measurement model: closed-form Fourier coefficients of
/// piecewise-constant signals, power moments of spike trains, and seeded
/// Gaussian measurement noise.
///
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "stepprony/errors.hpp"
#include "stepprony/signals.hpp"

namespace stepprony {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

///
/// Fourier coefficients indexed by integer frequency.
///
/// Convention: c_k = int_0^1 f(t) exp(-2 pi i k t) dt, so c_0 is the mean of
/// f and c_{-k} = conj(c_k) for real f.
///
class FourierSpectrum
{
public:
    static constexpr std::string_view convention = "ck = int_0^1 f(t) e^{-2 pi i k t} dt";

    void set(int k, Complex value) { entries_[k] = value; }

    bool contains(int k) const { return entries_.count(k) != 0; }

    Complex at(int k) const
    {
        const auto it = entries_.find(k);
        if (it == entries_.end())
        {
            throw MissingIndexError("spectrum has no coefficient at k=" + std::to_string(k));
        }
        return it->second;
    }

    const std::map<int, Complex>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    /// Largest k such that every index in [-k, k] is present; -1 if c_0 is
    /// missing.
    int symmetric_extent() const
    {
        int k = -1;
        while (contains(k + 1) && (k + 1 == 0 || contains(-(k + 1))))
        {
            ++k;
        }
        return k;
    }

    friend bool operator==(const FourierSpectrum&, const FourierSpectrum&) = default;

private:
    std::map<int, Complex> entries_;
};

/// Working precision of moment data. Moment inversion loses roughly
/// cond(Hankel) digits, which for six spikes exceeds what double can spare.
using MomentReal = long double;

/// Power moments m_0..m_K of a spike train.
struct MomentSequence
{
    std::vector<MomentReal> moments;

    std::size_t size() const noexcept { return moments.size(); }
    MomentReal operator[](std::size_t k) const { return moments[k]; }

    friend bool operator==(const MomentSequence&, const MomentSequence&) = default;
};

namespace detail {

/// exp(2 pi i turns) with the argument reduced to [-1/8, 1/8] first, so
/// multiples of a quarter turn come out exact.
inline Complex unit_phase(double turns)
{
    const double r = turns - std::round(turns);
    const double quarter = std::round(4.0 * r);
    const double f = r - quarter / 4.0;
    const double c = std::cos(kTwoPi * f);
    const double s = std::sin(kTwoPi * f);
    switch ((static_cast<int>(quarter) + 4) % 4)
    {
    case 1:
        return {-s, c};
    case 2:
        return {-c, -s};
    case 3:
        return {s, -c};
    default:
        return {c, s};
    }
}

} // namespace detail

/// Exact c_k for |k| <= max_index, obtained by integrating each continuity
/// interval in closed form.
inline FourierSpectrum fourier_coefficients(const PiecewiseConstantSignal& f, int max_index)
{
    if (max_index < 0)
    {
        throw DomainError("max_index must be non-negative");
    }
    const auto& x = f.jumps();
    const auto& a = f.values();

    double mean = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
    {
        mean += a[j] * f.interval_length(j);
    }

    FourierSpectrum spectrum;
    spectrum.set(0, Complex(mean, 0.0));
    for (int k = 1; k <= max_index; ++k)
    {
        // 2 pi i k c_k = A_0 - A_N + sum_i (A_i - A_{i-1}) e^{-2 pi i k x_i}
        Complex bracket(a.front() - a.back(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            bracket += (a[i + 1] - a[i]) * detail::unit_phase(-k * x[i]);
        }
        const Complex ck = bracket / Complex(0.0, kTwoPi * k);
        spectrum.set(k, ck);
        spectrum.set(-k, std::conj(ck));
    }
    return spectrum;
}

///
/// The normalized coefficients chat_k = 2 pi i k c_k for k = first..last.
///
/// For a piecewise-constant f these satisfy chat_k = d_0 + sum_i d_i z_i^k
/// with z_i = exp(-2 pi i x_i), d_i = A_i - A_{i-1} and d_0 = A_0 - A_N.
/// Element j of the result corresponds to k = first + j.
///
inline std::vector<Complex> normalized_coefficients(const FourierSpectrum& s, int first, int last)
{
    if (first < 1 || last < first - 1)
    {
        throw DomainError("normalized coefficients need 1 <= first <= last + 1");
    }
    std::vector<Complex> chat;
    chat.reserve(static_cast<std::size_t>(last - first + 1));
    for (int k = first; k <= last; ++k)
    {
        chat.push_back(Complex(0.0, kTwoPi * k) * s.at(k));
    }
    return chat;
}

/// chat_1..chat_K where K is the largest positive index in the spectrum.
inline std::vector<Complex> normalized_coefficients(const FourierSpectrum& s)
{
    const int last = s.empty() ? 0 : std::max(0, s.entries().rbegin()->first);
    return normalized_coefficients(s, 1, last);
}

/// Evaluates d_0 + sum_i d_i z_i^k directly from the jumps and levels for
/// k = first..last.
inline std::vector<Complex> exponential_sum_form(const PiecewiseConstantSignal& f, int first,
                                                 int last)
{
    const auto& x = f.jumps();
    const auto& a = f.values();
    const double d0 = a.front() - a.back();
    std::vector<Complex> out;
    for (int k = first; k <= last; ++k)
    {
        Complex sum(d0, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            sum += (a[i + 1] - a[i]) * detail::unit_phase(-k * x[i]);
        }
        out.push_back(sum);
    }
    return out;
}

/// m_k = sum_i A_i x_i^k for k = 0..max_order.
inline MomentSequence moments(const DiracSpikeTrain& g, int max_order)
{
    if (max_order < 0)
    {
        throw DomainError("max_order must be non-negative");
    }
    MomentSequence out;
    out.moments.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        const MomentReal amplitude = g.amplitudes()[i];
        const MomentReal node = g.nodes()[i];
        MomentReal power = 1.0L;
        for (auto& m : out.moments)
        {
            m += amplitude * power;
            power *= node;
        }
    }
    return out;
}

///
/// |sum_{k<=K} m_k z^k - sum_i A_i / (1 - z x_i)|: the truncation error of
/// the moment generating function against its rational closed form.
///
inline double generating_function_residual(const DiracSpikeTrain& g, Complex z, int truncation)
{
    double max_node = 0.0;
    for (double x : g.nodes())
    {
        max_node = std::max(max_node, std::abs(x));
    }
    if (std::abs(z) * max_node >= 1.0)
    {
        throw DomainError("|z| * max node must be below 1");
    }
    const auto m = moments(g, truncation);
    Complex series(0.0, 0.0);
    Complex power(1.0, 0.0);
    for (MomentReal mk : m.moments)
    {
        series += static_cast<double>(mk) * power;
        power *= z;
    }
    Complex closed(0.0, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        closed += g.amplitudes()[i] / (1.0 - z * g.nodes()[i]);
    }
    return std::abs(series - closed);
}

/// Bound on generating_function_residual from the geometric tail.
inline double generating_function_tail_bound(const DiracSpikeTrain& g, double z_abs,
                                             int truncation)
{
    double bound = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        const double q = z_abs * std::abs(g.nodes()[i]);
        bound += std::abs(g.amplitudes()[i]) * std::pow(q, truncation + 1) / (1.0 - q);
    }
    return bound;
}

///
/// Adds i.i.d. N(0, sigma^2) noise to the real and imaginary part of every
/// c_k with k >= 0 (only the real part of c_0), then mirrors c_{-k} =
/// conj(c_k) so the result is still the spectrum of a real function.
///
/// Draws happen in ascending k, so the perturbation of a given c_k does not
/// depend on how many higher coefficients are present.
///
inline FourierSpectrum add_noise(const FourierSpectrum& s, double sigma, std::uint64_t seed)
{
    if (!(sigma >= 0.0))
    {
        throw DomainError("sigma must be non-negative");
    }
    if (sigma == 0.0)
    {
        return s;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    FourierSpectrum out = s;
    for (const auto& [k, c] : s.entries())
    {
        if (k < 0)
        {
            continue;
        }
        if (k == 0)
        {
            out.set(0, Complex(c.real() + noise(rng), c.imag()));
            continue;
        }
        const double re = noise(rng);
        const double im = noise(rng);
        const Complex perturbed = c + Complex(re, im);
        out.set(k, perturbed);
        if (s.contains(-k))
        {
            out.set(-k, std::conj(perturbed));
        }
    }
    // Negative indices without a positive partner are perturbed on their own.
    for (const auto& [k, c] : s.entries())
    {
        if (k < 0 && !s.contains(-k))
        {
            const double re = noise(rng);
            const double im = noise(rng);
            out.set(k, c + Complex(re, im));
        }
    }
    return out;
}

/// Adds i.i.d. N(0, sigma^2) noise to every moment.
inline MomentSequence add_noise(const MomentSequence& m, double sigma, std::uint64_t seed)
{
    if (!(sigma >= 0.0))
    {
        throw DomainError("sigma must be non-negative");
    }
    if (sigma == 0.0)
    {
        return m;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    MomentSequence out = m;
    for (auto& v : out.moments)
    {
        v += noise(rng);
    }
    return out;
}

} // namespace stepprony
