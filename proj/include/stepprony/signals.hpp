// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

///
/// \file signals.hpp
///
/// Piecewise-constant functions and Dirac spike trains on [0,1], with exact
/// L2 geometry computed on merged partitions.
///
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stepprony/errors.hpp"

namespace stepprony {

/// Adjacent levels closer than this are treated as the same level.
inline constexpr double kLevelTolerance = 1e-12;

///
/// A piecewise-constant function on [0,1].
///
/// `jumps()` holds x_1 < ... < x_N in (0,1) and `values()` holds A_0..A_N,
/// where A_j is the level on the j-th continuity interval. The function is
/// left-closed at jumps: f(x_i) = A_{i-1}.
///
/// Construction normalizes the input by dropping jumps whose two adjacent
/// levels agree to within kLevelTolerance, so every stored jump is a true
/// jump.
///
class PiecewiseConstantSignal
{
public:
    PiecewiseConstantSignal() : values_{0.0} {}

    PiecewiseConstantSignal(std::vector<double> jumps, std::vector<double> values)
    {
        if (values.size() != jumps.size() + 1)
        {
            throw DomainError("signal needs exactly one more value than jumps");
        }
        for (double v : values)
        {
            if (!std::isfinite(v))
            {
                throw DomainError("signal values must be finite");
            }
        }
        for (std::size_t i = 0; i < jumps.size(); ++i)
        {
            if (!(jumps[i] > 0.0 && jumps[i] < 1.0))
            {
                throw DomainError("jump positions must lie in (0,1)");
            }
            if (i > 0 && !(jumps[i - 1] < jumps[i]))
            {
                throw DomainError("jump positions must be strictly increasing");
            }
        }

        values_.reserve(values.size());
        jumps_.reserve(jumps.size());
        values_.push_back(values[0]);
        for (std::size_t i = 0; i < jumps.size(); ++i)
        {
            if (std::abs(values[i + 1] - values_.back()) <= kLevelTolerance)
            {
                continue;
            }
            jumps_.push_back(jumps[i]);
            values_.push_back(values[i + 1]);
        }
    }

    static PiecewiseConstantSignal constant(double level)
    {
        return PiecewiseConstantSignal({}, {level});
    }

    const std::vector<double>& jumps() const noexcept { return jumps_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t jump_count() const noexcept { return jumps_.size(); }

    /// Length of the j-th continuity interval, j = 0..N.
    double interval_length(std::size_t j) const
    {
        const double lo = j == 0 ? 0.0 : jumps_[j - 1];
        const double hi = j == jumps_.size() ? 1.0 : jumps_[j];
        return hi - lo;
    }

    friend bool operator==(const PiecewiseConstantSignal&,
                           const PiecewiseConstantSignal&) = default;

private:
    std::vector<double> jumps_;
    std::vector<double> values_;
};

///
/// A finite linear combination of Dirac masses, g = sum_i A_i delta(x - x_i).
///
/// Nodes are kept sorted ascending. They must be pairwise distinct and lie
/// in [0,1]; amplitudes must be nonzero.
///
class DiracSpikeTrain
{
public:
    DiracSpikeTrain() = default;

    DiracSpikeTrain(std::vector<double> nodes, std::vector<double> amplitudes)
    {
        if (nodes.size() != amplitudes.size())
        {
            throw DomainError("spike train needs one amplitude per node");
        }
        std::vector<std::size_t> order(nodes.size());
        for (std::size_t i = 0; i < order.size(); ++i)
        {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });
        for (std::size_t i : order)
        {
            if (!(nodes[i] >= 0.0 && nodes[i] <= 1.0))
            {
                throw DomainError("spike nodes must lie in [0,1]");
            }
            if (amplitudes[i] == 0.0 || !std::isfinite(amplitudes[i]))
            {
                throw DomainError("spike amplitudes must be finite and nonzero");
            }
            if (!nodes_.empty() && nodes_.back() == nodes[i])
            {
                throw DomainError("spike nodes must be pairwise distinct");
            }
            nodes_.push_back(nodes[i]);
            amplitudes_.push_back(amplitudes[i]);
        }
    }

    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& amplitudes() const noexcept { return amplitudes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }

    friend bool operator==(const DiracSpikeTrain&, const DiracSpikeTrain&) = default;

private:
    std::vector<double> nodes_;
    std::vector<double> amplitudes_;
};

/// The step function H_t: 1 on [0,t], 0 on (t,1].
inline PiecewiseConstantSignal heaviside(double t)
{
    if (!(t > 0.0 && t < 1.0))
    {
        throw DomainError("heaviside parameter must lie in (0,1)");
    }
    return PiecewiseConstantSignal({t}, {1.0, 0.0});
}

/// The chord H_t - H_s for 0 <= s < t <= 1, i.e. the indicator of (s,t].
inline PiecewiseConstantSignal chord(double s, double t)
{
    if (!(0.0 <= s && s < t && t <= 1.0))
    {
        throw DomainError("chord needs 0 <= s < t <= 1");
    }
    std::vector<double> jumps;
    std::vector<double> values{s > 0.0 ? 0.0 : 1.0};
    if (s > 0.0)
    {
        jumps.push_back(s);
        values.push_back(1.0);
    }
    if (t < 1.0)
    {
        jumps.push_back(t);
        values.push_back(0.0);
    }
    return PiecewiseConstantSignal(std::move(jumps), std::move(values));
}

inline double evaluate(const PiecewiseConstantSignal& f, double x)
{
    if (!(x >= 0.0 && x <= 1.0))
    {
        throw DomainError("evaluation point must lie in [0,1]");
    }
    const auto& jumps = f.jumps();
    // Number of jumps strictly left of x; a jump at x itself belongs to the
    // interval on its left.
    const auto j = std::lower_bound(jumps.begin(), jumps.end(), x) - jumps.begin();
    return f.values()[static_cast<std::size_t>(j)];
}

namespace detail {

/// Calls `visit(lo, hi, f_level, g_level)` for every cell of the common
/// refinement of the partitions of `f` and `g`.
template <typename Visitor>
void for_each_common_cell(const PiecewiseConstantSignal& f,
                          const PiecewiseConstantSignal& g, Visitor&& visit)
{
    const auto& fj = f.jumps();
    const auto& gj = g.jumps();
    std::size_t i = 0;
    std::size_t k = 0;
    double lo = 0.0;
    while (true)
    {
        const double next_f = i < fj.size() ? fj[i] : 1.0;
        const double next_g = k < gj.size() ? gj[k] : 1.0;
        const double hi = std::min(next_f, next_g);
        visit(lo, hi, f.values()[i], g.values()[k]);
        if (hi >= 1.0)
        {
            break;
        }
        if (next_f == hi)
        {
            ++i;
        }
        if (next_g == hi)
        {
            ++k;
        }
        lo = hi;
    }
}

} // namespace detail

/// Exact integral of f*g over [0,1].
inline double inner_product(const PiecewiseConstantSignal& f,
                            const PiecewiseConstantSignal& g)
{
    double sum = 0.0;
    detail::for_each_common_cell(f, g, [&](double lo, double hi, double a, double b) {
        sum += a * b * (hi - lo);
    });
    return sum;
}

inline double squared_norm(const PiecewiseConstantSignal& f)
{
    return inner_product(f, f);
}

inline double l2_distance(const PiecewiseConstantSignal& f,
                          const PiecewiseConstantSignal& g)
{
    double sum = 0.0;
    detail::for_each_common_cell(f, g, [&](double lo, double hi, double a, double b) {
        sum += (a - b) * (a - b) * (hi - lo);
    });
    return std::sqrt(sum);
}

/// Pointwise difference f - g on the merged partition.
inline PiecewiseConstantSignal difference(const PiecewiseConstantSignal& f,
                                          const PiecewiseConstantSignal& g)
{
    std::vector<double> jumps;
    std::vector<double> values;
    detail::for_each_common_cell(f, g, [&](double lo, double, double a, double b) {
        if (lo > 0.0)
        {
            jumps.push_back(lo);
        }
        values.push_back(a - b);
    });
    return PiecewiseConstantSignal(std::move(jumps), std::move(values));
}

namespace detail {

/// Splits the unit interval into `count` gaps, each at least `min_gap`.
inline std::vector<double> random_gaps(std::size_t count, double min_gap,
                                       std::mt19937_64& rng)
{
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> weights(count);
    double total = 0.0;
    for (auto& w : weights)
    {
        w = expo(rng);
        total += w;
    }
    const double spare = 1.0 - static_cast<double>(count) * min_gap;
    for (auto& w : weights)
    {
        w = min_gap + spare * w / total;
    }
    return weights;
}

/// Interior positions separated by at least `min_separation` from each other
/// and from both endpoints.
inline std::vector<double> random_positions(std::size_t n, double min_separation,
                                            std::mt19937_64& rng)
{
    if (!(min_separation >= 0.0) ||
        static_cast<double>(n + 1) * min_separation >= 1.0)
    {
        throw InfeasibleError("cannot place " + std::to_string(n) +
                              " points with the requested separation");
    }
    const auto gaps = random_gaps(n + 1, min_separation, rng);
    std::vector<double> positions;
    positions.reserve(n);
    double x = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        x += gaps[i];
        positions.push_back(x);
    }
    return positions;
}

} // namespace detail

///
/// Seeded random piecewise-constant signal with N jumps.
///
/// Jumps are at least `min_separation` apart and at least `min_separation`
/// from 0 and 1; consecutive levels differ by at least `min_jump`. Levels
/// start in [-1,1] and each jump has magnitude in [min_jump, min_jump + 1].
///
inline PiecewiseConstantSignal random_signal(std::size_t n, double min_separation,
                                             double min_jump, std::uint64_t seed)
{
    if (!(min_jump > 0.0))
    {
        throw InfeasibleError("min_jump must be positive");
    }
    std::mt19937_64 rng(seed);
    auto jumps = detail::random_positions(n, min_separation, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> values;
    values.reserve(n + 1);
    values.push_back(2.0 * unit(rng) - 1.0);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double magnitude = min_jump + unit(rng);
        // Lean back toward zero so levels stay O(1).
        const double p_up = values.back() > 0.0 ? 0.3 : 0.7;
        const double sign = unit(rng) < p_up ? 1.0 : -1.0;
        values.push_back(values.back() + sign * magnitude);
    }
    return PiecewiseConstantSignal(std::move(jumps), std::move(values));
}

///
/// Seeded random spike train with n spikes.
///
/// Nodes obey the same separation rule as random_signal; amplitudes have
/// magnitude in [min_amplitude, min_amplitude + 1] and random sign.
///
inline DiracSpikeTrain random_spike_train(std::size_t n, double min_separation,
                                          double min_amplitude, std::uint64_t seed)
{
    if (!(min_amplitude > 0.0))
    {
        throw InfeasibleError("min_amplitude must be positive");
    }
    std::mt19937_64 rng(seed);
    auto nodes = detail::random_positions(n, min_separation, rng);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> amplitudes;
    amplitudes.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        const double magnitude = min_amplitude + unit(rng);
        amplitudes.push_back(unit(rng) < 0.5 ? -magnitude : magnitude);
    }
    return DiracSpikeTrain(std::move(nodes), std::move(amplitudes));
}

/// Checks the type invariants plus the generator constraints; returns an
/// empty string when everything holds, otherwise a description of the
/// first violation.
inline std::string validate_signal(const PiecewiseConstantSignal& f,
                                   double min_separation, double min_jump)
{
    const auto& x = f.jumps();
    const auto& a = f.values();
    if (a.size() != x.size() + 1)
    {
        return "value count mismatch";
    }
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double prev = i == 0 ? 0.0 : x[i - 1];
        if (x[i] - prev < min_separation)
        {
            return "jump " + std::to_string(i) + " too close to its left neighbour";
        }
    }
    if (!x.empty() && 1.0 - x.back() < min_separation)
    {
        return "last jump too close to 1";
    }
    for (std::size_t j = 0; j + 1 < a.size(); ++j)
    {
        if (std::abs(a[j + 1] - a[j]) < min_jump)
        {
            return "jump " + std::to_string(j) + " smaller than min_jump";
        }
    }
    return {};
}

} // namespace stepprony
