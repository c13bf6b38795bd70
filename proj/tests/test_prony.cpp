// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "stepprony/prony.hpp"

using namespace stepprony;

namespace {

void expect_complex_near(Complex a, Complex b, double tol)
{
    EXPECT_NEAR(a.real(), b.real(), tol);
    EXPECT_NEAR(a.imag(), b.imag(), tol);
}

std::vector<Complex> to_double(const std::vector<std::complex<long double>>& v)
{
    std::vector<Complex> out;
    for (const auto& z : v)
    {
        out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return out;
}

std::vector<Complex> sorted_by_real(std::vector<Complex> v)
{
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    return v;
}

/// b_k = chat_{k+1} - chat_k for k = 1..M-1 of a signal.
std::vector<Complex> differences(const PiecewiseConstantSignal& f, int m)
{
    const auto chat = normalized_coefficients(fourier_coefficients(f, m));
    std::vector<Complex> b;
    for (std::size_t k = 0; k + 1 < chat.size(); ++k)
    {
        b.push_back(chat[k + 1] - chat[k]);
    }
    return b;
}

const std::vector<long double> kTwoSpikeMoments{3.0L, 5.0L / 3.0L, 1.0L, 17.0L / 27.0L};

} // namespace

TEST(SolveRecurrence, GeometricSequence)
{
    const std::vector<double> seq{1.0, 0.5, 0.25};
    const auto rec = solve_recurrence<double>(seq, 1, SolveMode::exact);
    ASSERT_EQ(rec.order(), 1u);
    EXPECT_NEAR(rec.coeffs[0], 0.5, 1e-15);
}

TEST(SolveRecurrence, TwoSpikeMoments)
{
    const auto rec = solve_recurrence<long double>(kTwoSpikeMoments, 2, SolveMode::exact);
    ASSERT_EQ(rec.order(), 2u);
    EXPECT_NEAR(static_cast<double>(rec.coeffs[0]), -2.0 / 9.0, 1e-15);
    EXPECT_NEAR(static_cast<double>(rec.coeffs[1]), 1.0, 1e-15);
    EXPECT_GE(rec.condition, 1.0);
}

TEST(SolveRecurrence, QuarterStepDifferences)
{
    const auto b = differences(heaviside(0.25), 3);
    const auto rec = solve_recurrence<Complex>(b, 1, SolveMode::exact);
    expect_complex_near(rec.coeffs[0], Complex(0.0, -1.0), 1e-15);
}

TEST(SolveRecurrence, OverestimatedOrderIsSingular)
{
    const std::vector<double> seq{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
    EXPECT_THROW(solve_recurrence<double>(seq, 2, SolveMode::exact), SingularSystemError);
}

TEST(SolveRecurrence, TooFewValues)
{
    const std::vector<double> seq{1.0, 0.5, 0.25};
    EXPECT_THROW(solve_recurrence<double>(seq, 2, SolveMode::exact), DomainError);
    const std::vector<double> four{1.0, 0.5, 0.25, 0.125};
    EXPECT_THROW(solve_recurrence<double>(four, 2, SolveMode::least_squares), DomainError);
}

TEST(SolveRecurrence, LeastSquaresMinimizesAllShifts)
{
    // Noisy geometric data: the LS coefficient must beat any perturbation
    // of itself on the full residual.
    std::vector<double> seq;
    double v = 1.0;
    for (int k = 0; k < 12; ++k)
    {
        seq.push_back(v + 1e-3 * std::sin(7.0 * k));
        v *= 0.7;
    }
    const auto rec = solve_recurrence<double>(seq, 1, SolveMode::least_squares);
    auto cost = [&](double c) {
        double s = 0.0;
        for (std::size_t r = 0; r + 1 < seq.size(); ++r)
        {
            s += std::pow(seq[r + 1] - c * seq[r], 2);
        }
        return s;
    };
    EXPECT_LE(cost(rec.coeffs[0]), cost(rec.coeffs[0] + 1e-6));
    EXPECT_LE(cost(rec.coeffs[0]), cost(rec.coeffs[0] - 1e-6));
}

TEST(ExtractNodes, Examples)
{
    RecurrenceCoefficients<double> one{{0.5}, 1.0};
    const auto r1 = extract_nodes(one);
    ASSERT_EQ(r1.size(), 1u);
    expect_complex_near(r1[0], Complex(0.5, 0.0), 1e-15);

    RecurrenceCoefficients<double> two{{-2.0 / 9.0, 1.0}, 1.0};
    const auto r2 = sorted_by_real(extract_nodes(two));
    expect_complex_near(r2[0], Complex(1.0 / 3.0, 0.0), 1e-14);
    expect_complex_near(r2[1], Complex(2.0 / 3.0, 0.0), 1e-14);

    RecurrenceCoefficients<Complex> rot{{Complex(0.0, -1.0)}, 1.0};
    expect_complex_near(extract_nodes(rot)[0], Complex(0.0, -1.0), 1e-15);
}

TEST(ExtractNodes, DuplicateRootsRejected)
{
    // (x - 0.5)^2 = x^2 - x + 0.25
    RecurrenceCoefficients<double> rec{{-0.25, 1.0}, 1.0};
    EXPECT_THROW(extract_nodes(rec), DuplicateRootError);
}

TEST(RecoverAmplitudes, Examples)
{
    const std::vector<Complex> half{Complex(0.5, 0.0)};
    const std::vector<double> seq{1.0, 0.5};
    const auto a = recover_amplitudes<double>(half, seq, SolveMode::exact);
    expect_complex_near(a.amplitudes[0], Complex(1.0, 0.0), 1e-15);

    const std::vector<Complex> thirds{Complex(1.0 / 3.0, 0.0), Complex(2.0 / 3.0, 0.0)};
    const std::vector<double> m{3.0, 5.0 / 3.0, 1.0};
    const auto b = recover_amplitudes<double>(thirds, m, SolveMode::least_squares);
    expect_complex_near(b.amplitudes[0], Complex(1.0, 0.0), 1e-13);
    expect_complex_near(b.amplitudes[1], Complex(2.0, 0.0), 1e-13);

    const Complex z(0.0, -1.0);
    const std::vector<Complex> rot{z};
    std::vector<Complex> bk;
    for (int k = 0; k < 3; ++k)
    {
        bk.push_back(std::pow(z, k) * (1.0 - z));
    }
    const auto c = recover_amplitudes<Complex>(rot, bk, SolveMode::exact);
    expect_complex_near(c.amplitudes[0], Complex(1.0, 1.0), 1e-15);
}

TEST(RecoverAmplitudes, IllConditionedRejected)
{
    const std::vector<Complex> close{Complex(0.5, 0.0), Complex(0.5 + 1e-13, 0.0)};
    const std::vector<double> seq{1.0, 0.5, 0.25, 0.125};
    EXPECT_THROW(recover_amplitudes<double>(close, seq, SolveMode::least_squares),
                 IllConditionedError);
}

TEST(ReconstructSpikes, SingleSpike)
{
    const auto r = reconstruct_spikes(moments(DiracSpikeTrain({0.5}, {1.0}), 1), 1,
                                      SolveMode::exact);
    ASSERT_EQ(r.spikes().size(), 1u);
    EXPECT_NEAR(r.spikes().nodes()[0], 0.5, 1e-15);
    EXPECT_NEAR(r.spikes().amplitudes()[0], 1.0, 1e-15);
    EXPECT_LT(r.residual_norm, 1e-12);
}

TEST(ReconstructSpikes, TwoSpikeWorkedExample)
{
    const auto r = reconstruct_spikes(MomentSequence{kTwoSpikeMoments}, 2, SolveMode::exact);
    const auto& g = r.spikes();
    ASSERT_EQ(g.size(), 2u);
    EXPECT_NEAR(g.nodes()[0], 1.0 / 3.0, 1e-10);
    EXPECT_NEAR(g.nodes()[1], 2.0 / 3.0, 1e-10);
    EXPECT_NEAR(g.amplitudes()[0], 1.0, 1e-10);
    EXPECT_NEAR(g.amplitudes()[1], 2.0, 1e-10);
    EXPECT_EQ(r.estimated_order, 2u);
}

TEST(ReconstructSpikes, RandomFourSpikeTrains)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const auto truth = random_spike_train(4, 0.05, 0.2, seed);
        const auto r = reconstruct_spikes(moments(truth, 7), 4, SolveMode::exact);
        const auto& g = r.spikes();
        ASSERT_EQ(g.size(), 4u);
        for (std::size_t i = 0; i < 4; ++i)
        {
            EXPECT_NEAR(g.nodes()[i], truth.nodes()[i], 1e-8) << "seed " << seed;
            EXPECT_NEAR(g.amplitudes()[i], truth.amplitudes()[i], 1e-8) << "seed " << seed;
        }
    }
}

TEST(ReconstructSpikes, LeastSquaresUsesExtraMoments)
{
    const auto truth = random_spike_train(3, 0.05, 0.2, 4);
    EXPECT_THROW(reconstruct_spikes(moments(truth, 5), 3, SolveMode::least_squares), DomainError);
    const auto r = reconstruct_spikes(moments(truth, 11), 3, SolveMode::least_squares);
    for (std::size_t i = 0; i < 3; ++i)
    {
        EXPECT_NEAR(r.spikes().nodes()[i], truth.nodes()[i], 1e-8);
    }
}

TEST(ReconstructSpikes, NodesOutsideUnitIntervalRejected)
{
    // Moments of a spike at 1.5 cannot come from a train on [0,1].
    MomentSequence m{{1.0L, 1.5L}};
    EXPECT_THROW(reconstruct_spikes(m, 1, SolveMode::exact), ModelMismatchError);
}

TEST(ReconstructSpikes, TooFewMoments)
{
    EXPECT_THROW(reconstruct_spikes(MomentSequence{{1.0L, 0.5L, 0.25L}}, 2, SolveMode::exact),
                 DomainError);
}

TEST(ReconstructPiecewise, QuarterStep)
{
    const auto s = fourier_coefficients(heaviside(0.25), 3);
    const auto r = reconstruct_piecewise(s, 1, SolveMode::exact);
    const auto& f = r.piecewise();
    ASSERT_EQ(f.jump_count(), 1u);
    EXPECT_NEAR(f.jumps()[0], 0.25, 1e-12);
    EXPECT_NEAR(f.values()[0], 1.0, 1e-12);
    EXPECT_NEAR(f.values()[1], 0.0, 1e-12);
    EXPECT_LT(r.residual_norm, 1e-10);
    EXPECT_TRUE(r.warnings.empty());
}

TEST(ReconstructPiecewise, ConstantSignal)
{
    const auto s = fourier_coefficients(PiecewiseConstantSignal({}, {0.7}), 1);
    const auto r = reconstruct_piecewise(s, 0, SolveMode::exact);
    EXPECT_EQ(r.piecewise().jump_count(), 0u);
    EXPECT_NEAR(r.piecewise().values()[0], 0.7, 1e-15);
}

TEST(ReconstructPiecewise, RandomFourJumpSignals)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const auto truth = random_signal(4, 0.05, 0.2, seed);
        const auto r = reconstruct_piecewise(fourier_coefficients(truth, 9), 4, SolveMode::exact);
        const auto& f = r.piecewise();
        ASSERT_EQ(f.jump_count(), 4u) << "seed " << seed;
        for (std::size_t i = 0; i < 4; ++i)
        {
            EXPECT_NEAR(f.jumps()[i], truth.jumps()[i], 1e-8);
        }
        for (std::size_t j = 0; j < 5; ++j)
        {
            EXPECT_NEAR(f.values()[j], truth.values()[j], 1e-8);
        }
        EXPECT_LE(r.residual_norm, 1e-8);
        EXPECT_LT(r.node_unit_circle_deviation, 1e-9);
    }
}

TEST(ReconstructPiecewise, ExactModeUsesLeadingWindow)
{
    const auto truth = random_signal(2, 0.05, 0.2, 3);
    auto s = fourier_coefficients(truth, 10);
    // Corrupting coefficients past 2N+1 = 5 must not affect exact mode.
    s.set(8, Complex(100.0, -3.0));
    const auto r = reconstruct_piecewise(s, 2, SolveMode::exact);
    EXPECT_NEAR(r.piecewise().jumps()[1], truth.jumps()[1], 1e-10);
}

TEST(ReconstructPiecewise, ShiftedWindow)
{
    const auto truth = random_signal(3, 0.05, 0.2, 12);
    const auto s = fourier_coefficients(truth, 20);
    const auto chat = normalized_coefficients(s, 5, 11);
    const auto r = reconstruct_piecewise(s.at(0).real(), chat, 3, SolveMode::exact, 5);
    for (std::size_t i = 0; i < 3; ++i)
    {
        EXPECT_NEAR(r.piecewise().jumps()[i], truth.jumps()[i], 1e-9);
    }
    for (std::size_t j = 0; j < 4; ++j)
    {
        EXPECT_NEAR(r.piecewise().values()[j], truth.values()[j], 1e-9);
    }
}

TEST(ReconstructPiecewise, RejectsDataOffTheUnitCircle)
{
    // A decaying exponential is not the spectrum of a step function.
    std::vector<Complex> chat;
    for (int k = 1; k <= 3; ++k)
    {
        chat.push_back(std::pow(0.5, k));
    }
    EXPECT_THROW(reconstruct_piecewise(0.0, chat, 1, SolveMode::exact), ModelMismatchError);
}

TEST(ReconstructPiecewise, CountPreconditions)
{
    const auto s = fourier_coefficients(random_signal(2, 0.05, 0.2, 1), 5);
    EXPECT_THROW(reconstruct_piecewise(s, 3, SolveMode::exact), DomainError);
    EXPECT_THROW(reconstruct_piecewise(s, 2, SolveMode::least_squares), DomainError);
}

TEST(ReconstructPiecewise, LeastSquaresBeatsExactUnderNoise)
{
    std::vector<double> exact_err;
    std::vector<double> ls_err;
    for (std::uint64_t seed = 0; seed < 60; ++seed)
    {
        const auto truth = random_signal(4, 0.05, 0.2, seed);
        const auto noisy = add_noise(fourier_coefficients(truth, 18), 1e-6, seed + 9000);
        auto error = [&](const ReconstructionReport& r) {
            double e = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
            {
                e = std::max(e, std::abs(r.piecewise().jumps()[i] - truth.jumps()[i]));
            }
            return e;
        };
        exact_err.push_back(error(reconstruct_piecewise(noisy, 4, SolveMode::exact)));
        ls_err.push_back(error(reconstruct_piecewise(noisy, 4, SolveMode::least_squares)));
    }
    std::sort(exact_err.begin(), exact_err.end());
    std::sort(ls_err.begin(), ls_err.end());
    EXPECT_LE(ls_err[30], exact_err[30]);
}

TEST(EstimateOrder, Examples)
{
    const std::vector<double> geo{1.0, 0.5, 0.25, 0.125, 0.0625};
    EXPECT_EQ(estimate_order<double>(geo, 1e-10), 1u);
    const auto m = moments(DiracSpikeTrain({1.0 / 3.0, 2.0 / 3.0}, {1.0, 2.0}), 5);
    EXPECT_EQ(estimate_order<long double>(m.moments, 1e-10), 2u);
    const std::vector<double> zeros(6, 0.0);
    EXPECT_EQ(estimate_order<double>(zeros, 1e-10), 0u);
}

TEST(EstimateOrder, RecoversTrueJumpCount)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed)
    {
        const std::size_t n = 1 + seed % 6;
        const auto f = random_signal(n, 0.05, 0.2, seed);
        const auto b = differences(f, static_cast<int>(2 * n + 6));
        EXPECT_EQ(estimate_order<Complex>(b, 1e-10), n) << "seed " << seed;
    }
}

TEST(EstimateOrder, RecoversTrueSpikeCount)
{
    for (std::uint64_t seed = 0; seed < 30; ++seed)
    {
        const std::size_t n = 1 + seed % 4;
        const auto m = moments(random_spike_train(n, 0.1, 0.5, seed), static_cast<int>(2 * n + 2));
        EXPECT_EQ(estimate_order<long double>(m.moments, 1e-10), n) << "seed " << seed;
    }
}

TEST(ExtractNodes, LongDoubleRootsMatchDouble)
{
    const auto rec = solve_recurrence<long double>(kTwoSpikeMoments, 2, SolveMode::exact);
    const auto roots = sorted_by_real(to_double(extract_nodes(rec)));
    EXPECT_NEAR(roots[0].real(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(roots[1].real(), 2.0 / 3.0, 1e-15);
}
