// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

///
/// \file widths.hpp
///
/// Widths and entropy of the step-function curve t -> H_t in L2[0,1]:
/// Kolmogorov width bounds and Fourier-subspace estimates, greedy covers,
/// (N,m)-width constructions, chord Gram matrices and the orthogonal-set
/// lower bound.
///
/// Every distance is exact. The curve satisfies ||H_t - H_s|| = sqrt|t - s|,
/// and distances to indicator-spanned subspaces follow from projecting onto
/// an orthogonal indicator basis.
///
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "stepprony/errors.hpp"
#include "stepprony/signals.hpp"
#include "stepprony/spectral.hpp"

namespace stepprony {

struct WidthBounds
{
    double lower = 0.0;
    double upper = 0.0;
};

struct WidthEstimate
{
    std::size_t n = 0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double empirical = 0.0;
    std::string subspace_descriptor;
    std::size_t grid_resolution = 0;
};

struct CoverRecord
{
    double epsilon = 0.0;
    std::size_t ball_count = 0;
    /// Curve parameters of the ball centres, ascending.
    std::vector<double> centers;
};

/// 1/(4 sqrt n) <= W_n <= 2/(pi sqrt(n-1)) for n >= 2.
inline WidthBounds kolmogorov_bounds(std::size_t n)
{
    if (n < 2)
    {
        throw DomainError("Kolmogorov bounds need n >= 2");
    }
    const auto nd = static_cast<double>(n);
    return {1.0 / (4.0 * std::sqrt(nd)), 2.0 / (std::numbers::pi * std::sqrt(nd - 1.0))};
}

/// Uniform parameter grid t_i = i / (count - 1), i = 0..count-1.
inline double grid_point(std::size_t i, std::size_t count)
{
    return static_cast<double>(i) / static_cast<double>(count - 1);
}

/// L2 slack of a t-grid with `count` points: sqrt of the grid spacing.
inline double grid_slack(std::size_t count)
{
    return std::sqrt(1.0 / static_cast<double>(count));
}

/// Distance from H_t to span{e^{2 pi i k x} : |k| <= j}.
inline double fourier_subspace_distance(double t, int j)
{
    if (t <= 0.0 || t >= 1.0)
    {
        return 0.0;
    }
    const auto spectrum = fourier_coefficients(heaviside(t), j);
    double captured = 0.0;
    for (const auto& [k, c] : spectrum.entries())
    {
        captured += std::norm(c);
    }
    return std::sqrt(std::max(0.0, t - captured));
}

///
/// Worst distance from H_t, t on a uniform grid, to the Fourier subspace of
/// dimension n = 2j+1.
///
inline WidthEstimate empirical_fourier_width(int j, std::size_t grid)
{
    if (j < 1 || grid < 10)
    {
        throw DomainError("Fourier width needs j >= 1 and grid >= 10");
    }
    WidthEstimate out;
    out.n = static_cast<std::size_t>(2 * j + 1);
    const auto bounds = kolmogorov_bounds(out.n);
    out.lower_bound = bounds.lower;
    out.upper_bound = bounds.upper;
    out.subspace_descriptor = "fourier |k|<=" + std::to_string(j);
    out.grid_resolution = grid;
    for (std::size_t i = 0; i < grid; ++i)
    {
        out.empirical = std::max(out.empirical, fourier_subspace_distance(grid_point(i, grid), j));
    }
    return out;
}

///
/// Greedy cover of the curve by epsilon-balls, left to right. A ball around
/// H_c covers exactly {H_t : |t - c| <= epsilon^2}, so on the continuous
/// curve the first uncovered point after a ball at c is c + epsilon^2 and
/// the next centre goes to c + 2 epsilon^2. Placing centres by this rule
/// rather than by the first uncovered grid point keeps the count equal to
/// the cover of the whole curve, ceil(1/(2 epsilon^2)), instead of
/// shrinking it by one grid spacing per ball. The uniform t-grid decides
/// when [0,1] is exhausted and is what verify_cover checks.
///
inline CoverRecord covering_number(double epsilon, std::size_t resolution)
{
    if (!(epsilon > 0.0 && epsilon < 0.5))
    {
        throw DomainError("epsilon must lie in (0, 1/2)");
    }
    const double radius2 = epsilon * epsilon;
    if (static_cast<double>(resolution) < 10.0 / radius2)
    {
        throw DomainError("grid resolution must be at least 10/epsilon^2");
    }
    CoverRecord out;
    out.epsilon = epsilon;
    std::size_t i = 0;
    while (i < resolution)
    {
        const double p = grid_point(i, resolution);
        // Centres at odd multiples of epsilon^2, computed directly so no
        // rounding accumulates.
        const auto slot = static_cast<double>(2 * out.centers.size() + 1);
        double c = std::min(slot * radius2, 1.0);
        // Rounding may leave p just outside the ball; fall back to p.
        if (std::abs(p - c) > radius2)
        {
            c = std::min(p + radius2, 1.0);
            while (c - p > radius2)
            {
                c = std::nextafter(c, p);
            }
        }
        out.centers.push_back(c);
        while (i < resolution && std::abs(grid_point(i, resolution) - c) <= radius2)
        {
            ++i;
        }
    }
    out.ball_count = out.centers.size();
    return out;
}

/// Checks that every grid point lies within epsilon of some centre.
inline bool verify_cover(const CoverRecord& cover, std::size_t resolution)
{
    const auto& centers = cover.centers;
    if (centers.empty())
    {
        return false;
    }
    for (std::size_t i = 0; i < resolution; ++i)
    {
        const double t = grid_point(i, resolution);
        const auto it = std::lower_bound(centers.begin(), centers.end(), t);
        double best = 1.0;
        if (it != centers.end())
        {
            best = std::min(best, *it - t);
        }
        if (it != centers.begin())
        {
            best = std::min(best, t - *std::prev(it));
        }
        if (std::sqrt(best) > cover.epsilon)
        {
            return false;
        }
    }
    return true;
}

/// log2 of the greedy ball count.
inline double epsilon_entropy(double epsilon, std::size_t resolution)
{
    return std::log2(static_cast<double>(covering_number(epsilon, resolution).ball_count));
}

namespace detail {

/// Distance from the signed indicator of [lo, hi] to the span of the m
/// consecutive cells of width h starting at `start`.
inline double indicator_to_cells_distance(double lo, double hi, double start, double h,
                                          std::size_t m)
{
    double energy = hi - lo;
    for (std::size_t c = 0; c < m; ++c)
    {
        const double a = start + static_cast<double>(c) * h;
        const double b = a + h;
        const double overlap = std::max(0.0, std::min(hi, b) - std::max(lo, a));
        energy -= overlap * overlap / h;
    }
    return std::sqrt(std::max(0.0, energy));
}

} // namespace detail

///
/// Worst-case error of the N-subspace construction for the (N,m)-width.
///
/// Block k = [(k-1)/N, k/N] carries the m indicators of its equal
/// sub-intervals, anchored at H_{(k-1)/N}: H_t is approximated by
/// H_{(k-1)/N} plus the projection of the chord H_t - H_{(k-1)/N}. The
/// anchor is one fixed curve point per block and makes the approximating
/// sets affine m-dimensional, which is the form in which each block
/// achieves the 1/sqrt(2Nm) error.
///
inline WidthEstimate nm_width_construction(std::size_t subspaces, std::size_t dimension,
                                           std::size_t grid)
{
    if (subspaces < 1 || dimension < 1 || grid < 2)
    {
        throw DomainError("(N,m) construction needs N, m >= 1 and grid >= 2");
    }
    const auto nd = static_cast<double>(subspaces);
    const auto md = static_cast<double>(dimension);
    const double h = 1.0 / (nd * md);

    WidthEstimate out;
    out.n = subspaces * dimension;
    out.lower_bound = 1.0 / (4.0 * std::sqrt(nd * md));
    out.upper_bound = 1.0 / std::sqrt(2.0 * nd * md);
    out.subspace_descriptor = "N=" + std::to_string(subspaces) +
                              " blocks of m=" + std::to_string(dimension) + " indicators";
    out.grid_resolution = grid;

    for (std::size_t i = 0; i < grid; ++i)
    {
        const double t = grid_point(i, grid);
        double best = 1.0;
        for (std::size_t k = 0; k < subspaces; ++k)
        {
            const double anchor = static_cast<double>(k) / nd;
            const double lo = std::min(t, anchor);
            const double hi = std::max(t, anchor);
            best = std::min(best,
                            detail::indicator_to_cells_distance(lo, hi, anchor, h, dimension));
        }
        out.empirical = std::max(out.empirical, best);
    }
    return out;
}

///
/// Gram matrix of the chords H_{t_i} - H_{s_i} for pairwise disjoint
/// parameter intervals (s_i, t_i). Intervals may touch at endpoints.
///
inline Eigen::MatrixXd chord_gram(const std::vector<std::pair<double, double>>& intervals)
{
    for (const auto& [s, t] : intervals)
    {
        if (!(0.0 <= s && s < t && t <= 1.0))
        {
            throw DomainError("chord intervals need 0 <= s < t <= 1");
        }
    }
    auto sorted = intervals;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
    {
        if (sorted[i].first < sorted[i - 1].second)
        {
            throw DomainError("chord intervals overlap");
        }
    }

    std::vector<PiecewiseConstantSignal> chords;
    chords.reserve(intervals.size());
    for (const auto& [s, t] : intervals)
    {
        chords.push_back(chord(s, t));
    }
    const auto n = static_cast<Eigen::Index>(chords.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        for (Eigen::Index j = i; j < n; ++j)
        {
            gram(i, j) = inner_product(chords[static_cast<std::size_t>(i)],
                                       chords[static_cast<std::size_t>(j)]);
            gram(j, i) = gram(i, j);
        }
    }
    return gram;
}

struct WidthFloor
{
    double bound = 0.0;
    double witnessed_max_distance = 0.0;
};

///
/// Lower bound sqrt((k-n)/k) * lambda on the n-width of k orthogonal
/// vectors of length lambda, together with the largest distance actually
/// observed from the vectors lambda sqrt(k) chi_((i-1)/k, i/k) to the given
/// subspace.
///
/// `basis` holds n functions sampled on a uniform partition of [0,1] into
/// G cells (one row per cell, one column per function); G must be a
/// multiple of k so the orthogonal set is exactly representable.
///
inline WidthFloor orthogonal_set_width_floor(std::size_t k, std::size_t n, double lambda,
                                             const Eigen::MatrixXd& basis)
{
    if (n >= k)
    {
        throw DomainError("orthogonal-set floor needs n < k");
    }
    const auto cells = static_cast<std::size_t>(basis.rows());
    if (static_cast<std::size_t>(basis.cols()) != n || cells == 0 || cells % k != 0)
    {
        throw DomainError("subspace basis must be G x n with G a multiple of k");
    }

    // Map L2 onto R^G with the Euclidean product: f -> f / sqrt(G).
    const double scale = 1.0 / std::sqrt(static_cast<double>(cells));
    Eigen::MatrixXd q;
    if (n > 0)
    {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis * scale);
        if (static_cast<std::size_t>(qr.rank()) != n)
        {
            throw DomainError("subspace basis is rank-deficient");
        }
        q = qr.householderQ() * Eigen::MatrixXd::Identity(basis.rows(), static_cast<Eigen::Index>(n));
    }

    WidthFloor out;
    const auto kd = static_cast<double>(k);
    out.bound = std::sqrt((kd - static_cast<double>(n)) / kd) * lambda;
    const std::size_t per = cells / k;
    const double height = lambda * std::sqrt(kd) * scale;
    for (std::size_t i = 0; i < k; ++i)
    {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(basis.rows());
        e.segment(static_cast<Eigen::Index>(i * per), static_cast<Eigen::Index>(per)).setConstant(height);
        const Eigen::VectorXd residual = n > 0 ? Eigen::VectorXd(e - q * (q.transpose() * e)) : e;
        out.witnessed_max_distance = std::max(out.witnessed_max_distance, residual.norm());
    }
    return out;
}

} // namespace stepprony
