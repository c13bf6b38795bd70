// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

///
/// \file budget.hpp
///
/// Bits needed to store a step function H_t to L2 accuracy epsilon under
/// five representations. All logarithms are base 2.
///
#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "stepprony/errors.hpp"

namespace stepprony {

enum class BudgetMethod
{
    entropy,
    model_based,
    linear,
    nm_width,
    sparse_haar,
};

inline constexpr std::string_view to_string(BudgetMethod method)
{
    switch (method)
    {
    case BudgetMethod::entropy:
        return "ENTROPY";
    case BudgetMethod::model_based:
        return "MODEL_BASED";
    case BudgetMethod::linear:
        return "LINEAR";
    case BudgetMethod::nm_width:
        return "NM_WIDTH";
    case BudgetMethod::sparse_haar:
        return "SPARSE_HAAR";
    }
    return "?";
}

struct BitBudget
{
    BudgetMethod method = BudgetMethod::entropy;
    double epsilon = 0.0;
    double bits = 0.0;
    /// Subspace dimension m for NM_WIDTH, term count m for SPARSE_HAAR.
    std::optional<int> param;
};

namespace detail {

inline double log2_inverse(double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
    {
        throw DomainError("epsilon must lie in (0,1)");
    }
    return -std::log2(epsilon);
}

} // namespace detail

/// epsilon-entropy of the step curve: 2 log(1/epsilon).
inline double entropy_bits(double epsilon)
{
    return 2.0 * detail::log2_inverse(epsilon);
}

/// Storing t itself to accuracy epsilon^2: 2 log(1/epsilon).
inline double model_based_bits(double epsilon)
{
    return 2.0 * detail::log2_inverse(epsilon);
}

/// ceil(1/epsilon^2) linear coefficients at log(1/epsilon) bits each.
inline double linear_bits(double epsilon)
{
    const double l = detail::log2_inverse(epsilon);
    return std::ceil(1.0 / (epsilon * epsilon)) * l;
}

/// (m + 2) log(1/epsilon) - log m for the (N,m) representation.
inline double nm_bits(double epsilon, int m)
{
    if (m < 1)
    {
        throw DomainError("subspace dimension must be at least 1");
    }
    return (m + 2) * detail::log2_inverse(epsilon) - std::log2(static_cast<double>(m));
}

/// Number of Haar-frame terms used by sparse_bits: round(2 log(1/epsilon)).
inline int sparse_term_count(double epsilon)
{
    const auto m = static_cast<int>(std::lround(2.0 * detail::log2_inverse(epsilon)));
    if (m < 1)
    {
        throw DomainError("epsilon too close to 1 for a sparse Haar budget");
    }
    return m;
}

/// log2 C(2^m, m): choosing the positions of m frame elements among 2^m.
/// The falling factorial is summed term by term and m! goes through lgamma,
/// so nothing overflows for m up to 1000.
inline double sparse_bits(double epsilon)
{
    const int m = sparse_term_count(epsilon);
    if (m > 1000)
    {
        throw DomainError("epsilon too small for a sparse Haar budget");
    }
    const double total = std::ldexp(1.0, m);
    double bits = 0.0;
    for (int i = 0; i < m; ++i)
    {
        bits += std::log2(total - i);
    }
    return bits - std::lgamma(m + 1.0) / std::numbers::ln2;
}

/// One row per (epsilon, method), epsilons in input order and methods in
/// enum order. NM_WIDTH uses m = 1.
inline std::vector<BitBudget> budget_table(const std::vector<double>& epsilons)
{
    for (double e : epsilons)
    {
        detail::log2_inverse(e);
    }
    std::vector<BitBudget> rows;
    rows.reserve(epsilons.size() * 5);
    for (double e : epsilons)
    {
        rows.push_back({BudgetMethod::entropy, e, entropy_bits(e), std::nullopt});
        rows.push_back({BudgetMethod::model_based, e, model_based_bits(e), std::nullopt});
        rows.push_back({BudgetMethod::linear, e, linear_bits(e), std::nullopt});
        rows.push_back({BudgetMethod::nm_width, e, nm_bits(e, 1), 1});
        rows.push_back({BudgetMethod::sparse_haar, e, sparse_bits(e), sparse_term_count(e)});
    }
    return rows;
}

} // namespace stepprony
