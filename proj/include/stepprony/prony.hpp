// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

///
/// \file prony.hpp
///
/// Prony-type inversion: recover spike trains from power moments and
/// piecewise-constant signals from normalized Fourier coefficients.
///
/// Both problems reduce to an exponential sum s_k = sum_i w_i z_i^k. The
/// pipeline is
///
///   1. solve the Hankel system for the coefficients C_j of the linear
///      recurrence s_{r+n} = sum_j C_j s_{r+j};
///   2. take the nodes z_i as the roots of x^n - sum_j C_j x^j, i.e. the
///      eigenvalues of its companion matrix;
///   3. solve the Vandermonde system s_k = sum_i w_i z_i^k for the weights.
///
/// Exact mode uses the minimal square systems; least-squares mode uses every
/// available shift and equation. All dense solves go through an SVD, which
/// also yields the condition estimates in the reports.
///
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stepprony/errors.hpp"
#include "stepprony/signals.hpp"
#include "stepprony/spectral.hpp"

namespace stepprony {

enum class SolveMode
{
    exact,
    least_squares,
};

inline constexpr std::string_view to_string(SolveMode mode)
{
    return mode == SolveMode::exact ? "exact" : "least_squares";
}

/// Tolerances of the inversion pipeline.
namespace prony_tolerance {
/// Relative singular-value floor below which the Hankel system is singular.
inline constexpr double rank = 1e-14;
/// Amplitude systems with a larger condition number are rejected.
inline constexpr double max_vandermonde_condition = 1e12;
/// Roots closer than this violate the distinct-node model.
inline constexpr double duplicate_root = 1e-7;
/// Largest tolerated | |z| - 1 | for Fourier nodes before projection.
inline constexpr double unit_circle = 0.1;
/// Spike nodes this far outside [0,1] are clamped; further out is an error.
inline constexpr double node_clamp = 1e-6;
/// Jump positions within this distance of 0 or 1, or of each other, are
/// degenerate.
inline constexpr double jump_merge = 1e-9;
/// Threshold for the d_0 = A_0 - A_N consistency warning.
inline constexpr double consistency = 1e-6;
} // namespace prony_tolerance

/// Coefficients C_0..C_{n-1} of s_{r+n} = sum_j C_j s_{r+j}.
template <typename Scalar>
struct RecurrenceCoefficients
{
    std::vector<Scalar> coeffs;
    /// sigma_max / sigma_min of the Hankel system that produced them.
    double condition = 1.0;

    std::size_t order() const noexcept { return coeffs.size(); }
};

template <typename Real>
struct AmplitudeSolution
{
    std::vector<std::complex<Real>> amplitudes;
    double condition = 1.0;
};

///
/// Output of a reconstruction together with its diagnostics.
///
struct ReconstructionReport
{
    std::variant<PiecewiseConstantSignal, DiracSpikeTrain> signal;
    /// RMS misfit between the re-synthesized and the input measurements.
    double residual_norm = 0.0;
    /// max_i | |z_i| - 1 | before projection; zero for spike trains.
    double node_unit_circle_deviation = 0.0;
    /// Condition number of the recurrence system.
    double condition_estimate = 1.0;
    /// Condition number of the amplitude system.
    double amplitude_condition = 1.0;
    std::size_t requested_order = 0;
    /// Number of jumps/spikes in the returned signal.
    std::size_t estimated_order = 0;
    SolveMode mode = SolveMode::exact;
    std::vector<std::string> warnings;

    const PiecewiseConstantSignal& piecewise() const
    {
        return std::get<PiecewiseConstantSignal>(signal);
    }
    const DiracSpikeTrain& spikes() const { return std::get<DiracSpikeTrain>(signal); }
};

namespace detail {

template <typename Scalar>
using DynMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DynVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

template <typename Scalar>
double condition_of(const Eigen::JacobiSVD<DynMatrix<Scalar>>& svd)
{
    const auto& sv = svd.singularValues();
    if (sv.size() == 0)
    {
        return 1.0;
    }
    const auto smax = static_cast<double>(sv(0));
    const auto smin = static_cast<double>(sv(sv.size() - 1));
    return smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
}

template <typename Scalar>
double rms_misfit(std::span<const Scalar> a, std::span<const Scalar> b)
{
    if (a.empty())
    {
        return 0.0;
    }
    RealOf<Scalar> sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        sum += std::norm(a[i] - b[i]);
    }
    return static_cast<double>(std::sqrt(sum / static_cast<RealOf<Scalar>>(a.size())));
}

template <typename Real>
std::complex<Real> ipow(std::complex<Real> z, int k)
{
    std::complex<Real> result(1, 0);
    std::complex<Real> base = k >= 0 ? z : Real(1) / z;
    for (unsigned e = static_cast<unsigned>(std::abs(k)); e != 0; e >>= 1)
    {
        if (e & 1u)
        {
            result *= base;
        }
        base *= base;
    }
    return result;
}

} // namespace detail

///
/// Solves the recurrence system for C.
///
/// Exact mode uses the n x n system of the first n shifts and needs at least
/// 2n values; least-squares mode uses all M - n shifts and needs more than
/// 2n values. Throws SingularSystemError when the system is numerically
/// rank-deficient, which usually means `order` exceeds the true number of
/// nodes.
///
template <typename Scalar>
RecurrenceCoefficients<Scalar> solve_recurrence(std::span<const Scalar> seq, std::size_t order,
                                                SolveMode mode)
{
    const std::size_t m = seq.size();
    if (order == 0)
    {
        return {};
    }
    if (mode == SolveMode::exact && m < 2 * order)
    {
        throw DomainError("exact recurrence of order " + std::to_string(order) + " needs " +
                          std::to_string(2 * order) + " values, got " + std::to_string(m));
    }
    if (mode == SolveMode::least_squares && m <= 2 * order)
    {
        throw DomainError("least-squares recurrence of order " + std::to_string(order) +
                          " needs more than " + std::to_string(2 * order) + " values");
    }

    const std::size_t rows = mode == SolveMode::exact ? order : m - order;
    detail::DynMatrix<Scalar> hankel(rows, order);
    detail::DynVector<Scalar> rhs(rows);
    for (std::size_t r = 0; r < rows; ++r)
    {
        for (std::size_t j = 0; j < order; ++j)
        {
            hankel(r, j) = seq[r + j];
        }
        rhs(r) = seq[r + order];
    }

    Eigen::JacobiSVD<detail::DynMatrix<Scalar>> svd(hankel,
                                                    Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(sv.size() - 1) <= prony_tolerance::rank * sv(0))
    {
        throw SingularSystemError("recurrence system of order " + std::to_string(order) +
                                  " is rank-deficient");
    }
    const detail::DynVector<Scalar> c = svd.solve(rhs);

    RecurrenceCoefficients<Scalar> out;
    out.coeffs.assign(c.data(), c.data() + c.size());
    out.condition = detail::condition_of<Scalar>(svd);
    return out;
}

///
/// Roots of x^n - sum_j C_j x^j as eigenvalues of the companion matrix.
///
/// Throws DuplicateRootError when two roots are closer than 1e-7.
///
template <typename Scalar>
std::vector<std::complex<detail::RealOf<Scalar>>> extract_nodes(
    const RecurrenceCoefficients<Scalar>& rec)
{
    using CScalar = std::complex<detail::RealOf<Scalar>>;
    using CMatrix = detail::DynMatrix<CScalar>;
    const auto n = static_cast<Eigen::Index>(rec.order());
    if (n == 0)
    {
        throw DomainError("node extraction needs order >= 1");
    }
    CMatrix companion = CMatrix::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i)
    {
        companion(i, i - 1) = CScalar(1);
    }
    for (Eigen::Index j = 0; j < n; ++j)
    {
        companion(j, n - 1) = CScalar(rec.coeffs[static_cast<std::size_t>(j)]);
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
    if (solver.info() != Eigen::Success)
    {
        throw SingularSystemError("companion eigenvalue iteration did not converge");
    }
    std::vector<CScalar> roots(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + solver.eigenvalues().size());
    for (std::size_t a = 0; a < roots.size(); ++a)
    {
        for (std::size_t b = a + 1; b < roots.size(); ++b)
        {
            if (std::abs(roots[a] - roots[b]) < prony_tolerance::duplicate_root)
            {
                throw DuplicateRootError(
                    "recovered nodes coincide near " +
                    std::to_string(static_cast<double>(roots[a].real())) + "+" +
                    std::to_string(static_cast<double>(roots[a].imag())) + "i");
            }
        }
    }
    return roots;
}

///
/// Weights w_i of s_k = sum_i w_i z_i^k, k = 0..M-1.
///
/// Exact mode uses the first n equations; least-squares mode all of them.
/// Throws IllConditionedError when the Vandermonde condition exceeds 1e12.
///
template <typename Scalar>
AmplitudeSolution<detail::RealOf<Scalar>> recover_amplitudes(
    std::span<const std::complex<detail::RealOf<Scalar>>> nodes, std::span<const Scalar> seq,
    SolveMode mode)
{
    using CScalar = std::complex<detail::RealOf<Scalar>>;
    using CMatrix = detail::DynMatrix<CScalar>;
    using CVector = detail::DynVector<CScalar>;
    const std::size_t n = nodes.size();
    if (n == 0)
    {
        return {};
    }
    if (seq.size() < n)
    {
        throw DomainError("amplitude recovery needs at least as many values as nodes");
    }
    const std::size_t rows = mode == SolveMode::exact ? n : seq.size();
    CMatrix vandermonde(rows, n);
    CVector rhs(rows);
    for (std::size_t i = 0; i < n; ++i)
    {
        CScalar power(1);
        for (std::size_t k = 0; k < rows; ++k)
        {
            vandermonde(k, i) = power;
            power *= nodes[i];
        }
    }
    for (std::size_t k = 0; k < rows; ++k)
    {
        rhs(k) = CScalar(seq[k]);
    }
    Eigen::JacobiSVD<CMatrix> svd(vandermonde, Eigen::ComputeThinU | Eigen::ComputeThinV);
    AmplitudeSolution<detail::RealOf<Scalar>> out;
    out.condition = detail::condition_of<CScalar>(svd);
    if (!(out.condition <= prony_tolerance::max_vandermonde_condition))
    {
        throw IllConditionedError("amplitude system condition " +
                                  std::to_string(out.condition) + " exceeds 1e12");
    }
    const CVector w = svd.solve(rhs);
    out.amplitudes.assign(w.data(), w.data() + w.size());
    return out;
}

///
/// Numerical rank of the largest square Hankel matrix built from `seq`,
/// counting singular values above tol * sigma_max.
///
template <typename Scalar>
std::size_t estimate_order(std::span<const Scalar> seq, double tol)
{
    if (seq.size() < 2)
    {
        throw DomainError("order estimation needs at least two values");
    }
    const auto p = static_cast<Eigen::Index>((seq.size() + 1) / 2);
    detail::DynMatrix<Scalar> hankel(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
    {
        for (Eigen::Index j = 0; j < p; ++j)
        {
            hankel(i, j) = seq[static_cast<std::size_t>(i + j)];
        }
    }
    Eigen::JacobiSVD<detail::DynMatrix<Scalar>> svd(hankel);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0)
    {
        return 0;
    }
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
    {
        if (sv(i) > tol * sv(0))
        {
            ++rank;
        }
    }
    return rank;
}

///
/// Recovers a spike train of `order` spikes from its moments m_0, m_1, ...
///
/// Exact mode consumes m_0..m_{2n-1}; least-squares mode needs more than 2n
/// moments and uses all of them. Recovered nodes must be real and lie in
/// [0,1] up to 1e-6 (then they are clamped); anything else throws
/// ModelMismatchError.
///
inline ReconstructionReport reconstruct_spikes(const MomentSequence& m, std::size_t order,
                                               SolveMode mode)
{
    const std::size_t needed = 2 * order;
    if (mode == SolveMode::exact && m.size() < needed)
    {
        throw DomainError("exact spike recovery of order " + std::to_string(order) +
                          " needs " + std::to_string(needed) + " moments");
    }
    if (mode == SolveMode::least_squares && m.size() <= needed)
    {
        throw DomainError("least-squares spike recovery needs more than " +
                          std::to_string(needed) + " moments");
    }
    const std::size_t used = mode == SolveMode::exact ? needed : m.size();
    const std::span<const MomentReal> seq(m.moments.data(), used);

    ReconstructionReport report;
    report.mode = mode;
    report.requested_order = order;
    if (order == 0)
    {
        report.signal = DiracSpikeTrain{};
        const std::vector<MomentReal> zeros(used, 0.0L);
        report.residual_norm = detail::rms_misfit<MomentReal>(seq, zeros);
        return report;
    }

    using CReal = std::complex<MomentReal>;
    const auto rec = solve_recurrence<MomentReal>(seq, order, mode);
    const auto roots = extract_nodes(rec);
    std::vector<CReal> nodes;
    nodes.reserve(roots.size());
    for (const auto& z : roots)
    {
        const auto re = static_cast<double>(z.real());
        const auto im = static_cast<double>(z.imag());
        if (std::abs(im) > prony_tolerance::node_clamp)
        {
            throw ModelMismatchError("recovered spike node " + std::to_string(re) + "+" +
                                     std::to_string(im) + "i is not real");
        }
        if (re < -prony_tolerance::node_clamp || re > 1.0 + prony_tolerance::node_clamp)
        {
            throw ModelMismatchError("recovered spike node " + std::to_string(re) +
                                     " lies outside [0,1]");
        }
        nodes.emplace_back(std::clamp<MomentReal>(z.real(), 0.0L, 1.0L), 0.0L);
    }

    const auto amps = recover_amplitudes<MomentReal>(nodes, seq, mode);
    std::vector<double> x;
    std::vector<double> a;
    for (std::size_t i = 0; i < nodes.size(); ++i)
    {
        x.push_back(static_cast<double>(nodes[i].real()));
        a.push_back(static_cast<double>(amps.amplitudes[i].real()));
    }
    DiracSpikeTrain train(std::move(x), std::move(a));

    const auto resynth = moments(train, static_cast<int>(used) - 1);
    report.residual_norm =
        detail::rms_misfit<MomentReal>(seq, std::span<const MomentReal>(resynth.moments));
    report.condition_estimate = rec.condition;
    report.amplitude_condition = amps.condition;
    report.estimated_order = train.size();
    report.signal = std::move(train);
    return report;
}

///
/// Recovers a piecewise-constant signal with `jumps` jumps from its mean c0
/// and normalized coefficients chat_k, k = first_index .. first_index+M-1.
///
/// The node z_0 = 1 carries d_0 = A_0 - A_N; differencing
/// b_k = chat_{k+1} - chat_k = sum_i d_i (z_i - 1) z_i^k removes it, an
/// order-N recurrence on b gives the remaining nodes, and the levels follow
/// from cumulative sums of the jump heights anchored by c0.
///
/// Exact mode needs M >= 2N+1 and uses the first 2N+1 coefficients;
/// least-squares mode needs M > 2N+1 and uses all of them.
///
inline ReconstructionReport reconstruct_piecewise(double c0, std::span<const Complex> chat,
                                                  std::size_t jumps, SolveMode mode,
                                                  int first_index = 1)
{
    const std::size_t needed = 2 * jumps + 1;
    if (mode == SolveMode::exact && chat.size() < needed)
    {
        throw DomainError("exact reconstruction with " + std::to_string(jumps) +
                          " jumps needs " + std::to_string(needed) + " coefficients, got " +
                          std::to_string(chat.size()));
    }
    if (mode == SolveMode::least_squares && chat.size() <= needed)
    {
        throw DomainError("least-squares reconstruction needs more than " +
                          std::to_string(needed) + " coefficients");
    }
    if (first_index < 1)
    {
        throw DomainError("coefficient window must start at k >= 1");
    }
    const std::size_t used = mode == SolveMode::exact ? needed : chat.size();
    const auto data = chat.first(used);

    ReconstructionReport report;
    report.mode = mode;
    report.requested_order = jumps;

    std::vector<double> x;
    std::vector<double> d;
    double d0 = 0.0;

    if (jumps > 0)
    {
        std::vector<Complex> diffs(used - 1);
        for (std::size_t k = 0; k + 1 < used; ++k)
        {
            diffs[k] = data[k + 1] - data[k];
        }
        const std::span<const Complex> b(diffs);
        const auto rec = solve_recurrence<Complex>(b, jumps, mode);
        auto nodes = extract_nodes(rec);
        report.condition_estimate = rec.condition;

        for (auto& z : nodes)
        {
            const double radius = std::abs(z);
            report.node_unit_circle_deviation =
                std::max(report.node_unit_circle_deviation, std::abs(radius - 1.0));
            z /= radius;
        }
        if (report.node_unit_circle_deviation > prony_tolerance::unit_circle)
        {
            throw ModelMismatchError("recovered node lies " +
                                     std::to_string(report.node_unit_circle_deviation) +
                                     " off the unit circle");
        }

        const auto amps = recover_amplitudes<Complex>(nodes, b, mode);
        report.amplitude_condition = amps.condition;

        std::vector<std::size_t> order(nodes.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<double> position(nodes.size());
        std::vector<Complex> height(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
        {
            double xi = -std::arg(nodes[i]) / kTwoPi;
            if (xi < 0.0)
            {
                xi += 1.0;
            }
            if (xi < prony_tolerance::jump_merge || xi > 1.0 - prony_tolerance::jump_merge)
            {
                throw ModelMismatchError("recovered jump position " + std::to_string(xi) +
                                         " is at the boundary of [0,1]");
            }
            position[i] = xi;
            // b_k = e_i z_i^{first + k}, e_i = d_i (z_i - 1)
            const Complex e = amps.amplitudes[i] / detail::ipow(nodes[i], first_index);
            height[i] = e / (nodes[i] - 1.0);
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t p, std::size_t q) { return position[p] < position[q]; });

        bool merged = false;
        for (std::size_t i : order)
        {
            if (!x.empty() && position[i] - x.back() < prony_tolerance::jump_merge)
            {
                d.back() += height[i].real();
                merged = true;
                continue;
            }
            x.push_back(position[i]);
            d.push_back(height[i].real());
        }
        if (merged)
        {
            report.warnings.push_back("coincident jumps merged; recovered " +
                                      std::to_string(x.size()) + " of " +
                                      std::to_string(jumps) + " requested");
        }

        // d_0 from the undifferenced data, averaged over every equation used
        // (exact mode: the first one only).
        const std::size_t d0_rows = mode == SolveMode::exact ? 1 : used;
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < d0_rows; ++k)
        {
            Complex model(0.0, 0.0);
            for (std::size_t i = 0; i < nodes.size(); ++i)
            {
                model += height[i] * detail::ipow(nodes[i], first_index + static_cast<int>(k));
            }
            acc += data[k] - model;
        }
        d0 = (acc / static_cast<double>(d0_rows)).real();
    }
    else
    {
        Complex acc(0.0, 0.0);
        for (const auto& v : data)
        {
            acc += v;
        }
        d0 = used > 0 ? (acc / static_cast<double>(used)).real() : 0.0;
    }

    // Levels A_j = A_0 + D_j with D_j = d_1 + ... + d_j, and A_0 chosen so
    // that the mean of the signal equals c0.
    std::vector<double> cumulative(x.size() + 1, 0.0);
    for (std::size_t i = 0; i < d.size(); ++i)
    {
        cumulative[i + 1] = cumulative[i] + d[i];
    }
    double weighted = 0.0;
    for (std::size_t j = 0; j < cumulative.size(); ++j)
    {
        const double lo = j == 0 ? 0.0 : x[j - 1];
        const double hi = j == x.size() ? 1.0 : x[j];
        weighted += cumulative[j] * (hi - lo);
    }
    const double a0 = c0 - weighted;
    std::vector<double> levels(cumulative.size());
    for (std::size_t j = 0; j < cumulative.size(); ++j)
    {
        levels[j] = a0 + cumulative[j];
    }

    const double implied_d0 = levels.front() - levels.back();
    if (std::abs(d0 - implied_d0) > prony_tolerance::consistency)
    {
        report.warnings.push_back("constant term d0=" + std::to_string(d0) +
                                  " disagrees with A_0 - A_N=" + std::to_string(implied_d0));
    }

    PiecewiseConstantSignal signal(std::move(x), std::move(levels));
    if (signal.jump_count() != jumps && report.warnings.empty())
    {
        report.warnings.push_back("recovered " + std::to_string(signal.jump_count()) +
                                  " jumps, requested " + std::to_string(jumps));
    }

    const auto resynth = exponential_sum_form(signal, first_index,
                                              first_index + static_cast<int>(used) - 1);
    report.residual_norm = detail::rms_misfit<Complex>(data, std::span<const Complex>(resynth));
    report.estimated_order = signal.jump_count();
    report.signal = std::move(signal);
    return report;
}

/// Convenience overload taking a spectrum holding c_0 and c_1..c_M.
inline ReconstructionReport reconstruct_piecewise(const FourierSpectrum& spectrum,
                                                  std::size_t jumps, SolveMode mode)
{
    const auto chat = normalized_coefficients(spectrum);
    return reconstruct_piecewise(spectrum.at(0).real(), chat, jumps, mode);
}

} // namespace stepprony
