// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "stepprony/stepprony.hpp"

using namespace stepprony;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail)
{
    std::printf("AC%d %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok)
    {
        ++failures;
    }
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Largest jump-position error, infinite if the jump count is wrong.
double jump_error(const PiecewiseConstantSignal& truth, const PiecewiseConstantSignal& got)
{
    if (got.jump_count() != truth.jump_count())
    {
        return std::numeric_limits<double>::infinity();
    }
    double e = 0.0;
    for (std::size_t i = 0; i < got.jump_count(); ++i)
    {
        e = std::max(e, std::abs(got.jumps()[i] - truth.jumps()[i]));
    }
    return e;
}

double value_error(const PiecewiseConstantSignal& truth, const PiecewiseConstantSignal& got)
{
    if (got.values().size() != truth.values().size())
    {
        return std::numeric_limits<double>::infinity();
    }
    double e = 0.0;
    for (std::size_t i = 0; i < got.values().size(); ++i)
    {
        e = std::max(e, std::abs(got.values()[i] - truth.values()[i]));
    }
    return e;
}

void exact_inversion()
{
    const auto start = std::chrono::steady_clock::now();
    double worst_jump = 0.0;
    double worst_value = 0.0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        const std::size_t n = 1 + seed % 6;
        const auto truth = random_signal(n, 0.05, 0.2, seed);
        try
        {
            const auto spectrum = fourier_coefficients(truth, static_cast<int>(2 * n + 1));
            const auto got = reconstruct_piecewise(spectrum, n, SolveMode::exact).piecewise();
            worst_jump = std::max(worst_jump, jump_error(truth, got));
            worst_value = std::max(worst_value, value_error(truth, got));
        }
        catch (const Error&)
        {
            worst_jump = std::numeric_limits<double>::infinity();
        }
    }
    const double elapsed = seconds_since(start);
    report(1, worst_jump < 1e-8 && worst_value < 1e-8 && elapsed < 5.0,
           fmt("max jump err %.3g, max value err %.3g, %.2f s", worst_jump, worst_value,
               elapsed));
}

void spike_inversion()
{
    double worst = 0.0;
    std::size_t failed = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
    {
        const std::size_t n = 1 + seed % 6;
        const auto truth = random_spike_train(n, 0.05, 0.2, seed);
        double e = std::numeric_limits<double>::infinity();
        try
        {
            const auto got =
                reconstruct_spikes(moments(truth, static_cast<int>(2 * n - 1)), n, SolveMode::exact)
                    .spikes();
            if (got.nodes().size() == n)
            {
                e = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                {
                    e = std::max({e, std::abs(got.nodes()[i] - truth.nodes()[i]),
                                  std::abs(got.amplitudes()[i] - truth.amplitudes()[i])});
                }
            }
        }
        catch (const Error&)
        {
        }
        failed += e >= 1e-8 ? 1 : 0;
        worst = std::max(worst, e);
    }

    MomentSequence worked;
    worked.moments = {3.0L, 5.0L / 3.0L, 1.0L, 17.0L / 27.0L};
    const auto two = reconstruct_spikes(worked, 2, SolveMode::exact).spikes();
    double worked_error = std::numeric_limits<double>::infinity();
    if (two.nodes().size() == 2)
    {
        worked_error = std::max({std::abs(two.nodes()[0] - 1.0 / 3.0),
                                 std::abs(two.nodes()[1] - 2.0 / 3.0),
                                 std::abs(two.amplitudes()[0] - 1.0),
                                 std::abs(two.amplitudes()[1] - 2.0)});
    }
    report(2, failed == 0 && worked_error < 1e-12,
           fmt("max err %.3g over 200 trains (%g above 1e-8), worked example err %.3g", worst,
               static_cast<double>(failed), worked_error));
}

void width_sandwich()
{
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (int n : {5, 9, 17, 33, 65})
    {
        const int j = (n - 1) / 2;
        const auto w = empirical_fourier_width(j, 10000);
        const double lower = 1.0 / (4.0 * std::sqrt(n));
        const double upper = 2.0 / (std::numbers::pi * std::sqrt(n - 1.0));
        const double tail = std::sqrt(2.0) / (std::numbers::pi * std::sqrt(j));
        ok = ok && lower <= w.empirical && w.empirical <= upper && w.empirical <= tail + 1e-9;
        detail += fmt("n=%g:%.4f ", n, w.empirical);
    }
    const double elapsed = seconds_since(start);
    report(3, ok && elapsed < 10.0, detail + fmt("%.2f s", elapsed));
}

void covering_entropy()
{
    bool ok = true;
    std::string detail;
    for (double e : {0.1, 0.05, 0.02, 0.01})
    {
        const auto resolution = static_cast<std::size_t>(std::ceil(10.0 / (e * e))) + 1;
        const auto cover = covering_number(e, resolution);
        const double count = static_cast<double>(cover.ball_count);
        const double target = std::ceil(1.0 / (2.0 * e * e));
        ok = ok && std::abs(count - target) <= 1.0 && verify_cover(cover, resolution);
        ok = ok && 1.0 / (4.0 * e * e) <= count && count <= 1.0 / (e * e);
        const double ratio = std::log2(count) / (2.0 * std::log2(1.0 / e));
        if (e <= 0.05)
        {
            ok = ok && 0.8 <= ratio && ratio <= 1.2;
        }
        detail += fmt("eps=%g:%g (ratio %.3f) ", e, count, ratio);
    }
    report(4, ok, detail);
}

void haar_rate()
{
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        double t = unit(rng);
        while (t <= 0.0)
        {
            t = unit(rng);
        }
        for (int n = 1; n <= 12; ++n)
        {
            const double err = haar_frame_approx(t, n).l2_error;
            worst_ratio = std::max(worst_ratio, err / std::exp2(-(n + 1) / 2.0));
        }
    }
    const double two_thirds = haar_frame_approx(2.0 / 3.0, 3).l2_error;
    const double two_thirds_error = std::abs(two_thirds - std::sqrt(1.0 / 24.0));
    report(5, worst_ratio <= 1.0 + 1e-12 && two_thirds_error <= 1e-12,
           fmt("max err/bound %.4f, t0=2/3 n=3 err %.15f (off by %.2g)", worst_ratio, two_thirds,
               two_thirds_error));
}

void nm_width()
{
    bool ok = true;
    std::string detail;
    const std::size_t grid = 10000;
    std::vector<double> empirical;
    for (auto [big_n, m] : std::vector<std::pair<std::size_t, std::size_t>>{
             {4, 4}, {8, 2}, {16, 1}, {2, 8}})
    {
        const auto w = nm_width_construction(big_n, m, grid);
        const double nm = static_cast<double>(big_n * m);
        ok = ok && w.empirical <= 1.0 / std::sqrt(2.0 * nm) + 1e-9;
        ok = ok && w.empirical >= 1.0 / (4.0 * std::sqrt(nm)) - grid_slack(grid);
        empirical.push_back(w.empirical);
        detail += fmt("(%g,%g):%.4f ", static_cast<double>(big_n), static_cast<double>(m),
                      w.empirical);
    }
    const auto [lo, hi] = std::minmax_element(empirical.begin(), empirical.end());
    const double ratio = *hi / *lo;
    ok = ok && ratio <= 2.0;
    report(6, ok, detail + fmt("max/min %.3f", ratio));
}

void chord_orthogonality()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> cuts(20);
    for (auto& c : cuts)
    {
        c = unit(rng);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<double, double>> chords;
    for (std::size_t i = 0; i + 1 < cuts.size(); i += 2)
    {
        chords.emplace_back(cuts[i], cuts[i + 1]);
    }
    const auto gram = chord_gram(chords);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
    {
        for (Eigen::Index j = 0; j < gram.cols(); ++j)
        {
            if (i != j)
            {
                worst = std::max(worst, std::abs(gram(i, j)));
            }
        }
    }
    report(7, chords.size() == 10 && worst < 1e-12,
           fmt("10 chords, max off-diagonal %.3g", worst));
}

void budget_ledger()
{
    const double e = std::ldexp(1.0, -10);
    const auto rows = budget_table({e});
    double entropy = -1.0;
    double model = -1.0;
    double nm = -1.0;
    for (const auto& r : rows)
    {
        if (r.method == BudgetMethod::entropy)
        {
            entropy = r.bits;
        }
        else if (r.method == BudgetMethod::model_based)
        {
            model = r.bits;
        }
        else if (r.method == BudgetMethod::nm_width && r.param == 1)
        {
            nm = r.bits;
        }
    }
    bool ordered = true;
    for (int p = 4; p <= 30; ++p)
    {
        for (double scale : {1.0, 0.9, 0.75, 0.6})
        {
            const double eps = scale * std::ldexp(1.0, -p);
            ordered = ordered && entropy_bits(eps) <= nm_bits(eps, 1) &&
                      nm_bits(eps, 1) <= sparse_bits(eps) && sparse_bits(eps) <= linear_bits(eps);
        }
    }
    report(8, entropy == 20.0 && model == 20.0 && nm == 30.0 && ordered,
           fmt("ENTROPY=%g MODEL_BASED=%g NM(m=1)=%g", entropy, model, nm) +
               (ordered ? ", ordering holds" : ", ordering violated"));
}

double median_jump_error(std::size_t coefficients, SolveMode mode)
{
    const std::size_t n = 4;
    std::vector<double> errors;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        const auto truth = random_signal(n, 0.05, 0.2, seed);
        const auto noisy = add_noise(fourier_coefficients(truth, static_cast<int>(coefficients)),
                                     1e-6, seed ^ 0x9e3779b97f4a7c15ULL);
        try
        {
            errors.push_back(jump_error(truth, reconstruct_piecewise(noisy, n, mode).piecewise()));
        }
        catch (const Error&)
        {
            errors.push_back(std::numeric_limits<double>::infinity());
        }
    }
    return median(errors);
}

void noise_robustness()
{
    const double exact = median_jump_error(9, SolveMode::exact);
    const double ls = median_jump_error(18, SolveMode::least_squares);
    report(9, ls <= exact && exact < 1e-3 && ls < 1e-3,
           fmt("median jump err M=9 %.3g, M=18 %.3g", exact, ls));
}

} // namespace

int main()
{
    exact_inversion();
    spike_inversion();
    width_sandwich();
    covering_entropy();
    haar_rate();
    nm_width();
    chord_orthogonality();
    budget_ledger();
    noise_robustness();
    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
