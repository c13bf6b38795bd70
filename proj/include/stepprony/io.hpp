// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

///
/// \file io.hpp
///
/// Text serialization: signals and reports as JSON, measurements and sweep
/// tables as CSV. Numbers use shortest round-trip formatting, so a value
/// written and read back is bit-identical.
///
/// CSV readers skip blank lines and lines starting with '#'; the first
/// remaining line is the column header.
///
#pragma once

#include <nlohmann/json.hpp>

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "stepprony/budget.hpp"
#include "stepprony/errors.hpp"
#include "stepprony/linear_approx.hpp"
#include "stepprony/prony.hpp"
#include "stepprony/signals.hpp"
#include "stepprony/spectral.hpp"
#include "stepprony/widths.hpp"

namespace stepprony {

/// Keys keep insertion order so run_config can lead every document.
using Json = nlohmann::ordered_json;

using AnySignal = std::variant<PiecewiseConstantSignal, DiracSpikeTrain>;
using Measurements = std::variant<FourierSpectrum, MomentSequence>;

template <typename Real>
std::string format_number(Real value)
{
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

template <typename Real>
Real parse_number(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+')
    {
        text.remove_prefix(1);
    }
    Real value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
    {
        throw ParseError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

inline int parse_index(std::string_view text)
{
    const double v = parse_number<double>(text);
    const auto k = static_cast<int>(v);
    if (static_cast<double>(k) != v)
    {
        throw ParseError("not an integer index: '" + std::string(text) + "'");
    }
    return k;
}

// ---------------------------------------------------------------- signals

inline Json to_json(const PiecewiseConstantSignal& f)
{
    return Json{{"jumps", f.jumps()}, {"values", f.values()}};
}

inline Json to_json(const DiracSpikeTrain& g)
{
    return Json{{"nodes", g.nodes()}, {"amplitudes", g.amplitudes()}};
}

inline Json to_json(const AnySignal& s)
{
    return std::visit([](const auto& v) { return to_json(v); }, s);
}

namespace detail {

inline std::vector<double> number_array(const Json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_array())
    {
        throw ParseError(std::string("missing array '") + key + "'");
    }
    std::vector<double> out;
    for (const auto& v : j.at(key))
    {
        if (!v.is_number())
        {
            throw ParseError(std::string("non-numeric entry in '") + key + "'");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace detail

/// Reads {"jumps","values"} or {"nodes","amplitudes"}; other keys are
/// ignored. Invariant violations surface as ParseError.
inline AnySignal signal_from_json(const Json& j)
{
    if (!j.is_object())
    {
        throw ParseError("signal document must be a JSON object");
    }
    try
    {
        if (j.contains("jumps") || j.contains("values"))
        {
            return PiecewiseConstantSignal(detail::number_array(j, "jumps"),
                                           detail::number_array(j, "values"));
        }
        if (j.contains("nodes") || j.contains("amplitudes"))
        {
            return DiracSpikeTrain(detail::number_array(j, "nodes"),
                                   detail::number_array(j, "amplitudes"));
        }
    }
    catch (const DomainError& e)
    {
        throw ParseError(std::string("invalid signal: ") + e.what());
    }
    throw ParseError("signal document needs jumps/values or nodes/amplitudes");
}

inline AnySignal read_signal(std::istream& in)
{
    Json j;
    try
    {
        j = Json::parse(in);
    }
    catch (const Json::exception& e)
    {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return signal_from_json(j);
}

// ----------------------------------------------------------- measurements

/// Rows "k,re,im" for k = 0..max positive index; negative indices are
/// implied by conjugate symmetry and not written.
inline void write_spectrum_csv(std::ostream& out, const FourierSpectrum& s)
{
    out << "k,re,im\n";
    for (const auto& [k, c] : s.entries())
    {
        if (k < 0)
        {
            continue;
        }
        out << k << ',' << format_number(c.real()) << ',' << format_number(c.imag()) << '\n';
    }
}

inline void write_moments_csv(std::ostream& out, const MomentSequence& m)
{
    out << "k,m_k\n";
    for (std::size_t k = 0; k < m.size(); ++k)
    {
        out << k << ',' << format_number(m[k]) << '\n';
    }
}

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;)
    {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos)
        {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

inline std::string strip(std::string line)
{
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
    {
        line.pop_back();
    }
    return line;
}

} // namespace detail

/// Reads a spectrum or moment CSV, chosen by its column header. Missing
/// negative spectrum indices are filled in by conjugate symmetry.
inline Measurements read_measurements(std::istream& in)
{
    std::string line;
    std::string header;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        line = detail::strip(line);
        if (line.empty() || line.front() == '#')
        {
            continue;
        }
        header = line;
        break;
    }
    if (header.empty())
    {
        throw ParseError("measurement file has no header line");
    }
    const bool spectrum = header == "k,re,im";
    if (!spectrum && header != "k,m_k")
    {
        throw ParseError("unknown measurement header '" + header + "'");
    }

    FourierSpectrum s;
    std::vector<std::pair<int, MomentReal>> rows;
    while (std::getline(in, line))
    {
        ++line_no;
        line = detail::strip(line);
        if (line.empty() || line.front() == '#')
        {
            continue;
        }
        const auto fields = detail::split_csv(line);
        const std::size_t expected = spectrum ? 3 : 2;
        if (fields.size() != expected)
        {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(expected) + " fields");
        }
        try
        {
            const int k = parse_index(fields[0]);
            if (spectrum)
            {
                s.set(k, Complex(parse_number<double>(fields[1]), parse_number<double>(fields[2])));
            }
            else
            {
                rows.emplace_back(k, parse_number<MomentReal>(fields[1]));
            }
        }
        catch (const ParseError& e)
        {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }

    if (spectrum)
    {
        FourierSpectrum full = s;
        for (const auto& [k, c] : s.entries())
        {
            if (k > 0 && !s.contains(-k))
            {
                full.set(-k, std::conj(c));
            }
        }
        return full;
    }
    MomentSequence m;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        if (rows[i].first != static_cast<int>(i))
        {
            throw ParseError("moment rows must be k = 0, 1, 2, ... in order");
        }
        m.moments.push_back(rows[i].second);
    }
    return m;
}

// ---------------------------------------------------------------- reports

inline Json to_json(const ReconstructionReport& r)
{
    Json j;
    j["kind"] = std::holds_alternative<PiecewiseConstantSignal>(r.signal) ? "piecewise" : "spikes";
    j["signal"] = to_json(r.signal);
    j["residual_norm"] = r.residual_norm;
    j["condition_estimate"] = r.condition_estimate;
    j["amplitude_condition"] = r.amplitude_condition;
    j["node_unit_circle_deviation"] = r.node_unit_circle_deviation;
    j["requested_order"] = r.requested_order;
    j["estimated_order"] = r.estimated_order;
    j["mode"] = to_string(r.mode);
    j["warnings"] = r.warnings;
    return j;
}

inline Json to_json(const DictionaryElement& e)
{
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Frequency>)
            {
                return Json{{"frequency", v.k}};
            }
            else if constexpr (std::is_same_v<T, ScaleOffset>)
            {
                return Json{{"scale", v.scale}, {"offset", v.offset}};
            }
            else
            {
                return Json{{"scaling_function", true}};
            }
        },
        e);
}

inline Json to_json(const ApproximationResult& a)
{
    Json support = Json::array();
    for (std::size_t i = 0; i < a.support.size(); ++i)
    {
        Json term = to_json(a.support[i]);
        term["re"] = a.coefficients[i].real();
        term["im"] = a.coefficients[i].imag();
        support.push_back(std::move(term));
    }
    return Json{{"term_count", a.term_count}, {"l2_error", a.l2_error}, {"support", support}};
}

// ------------------------------------------------------------ sweep tables

inline void write_width_csv(std::ostream& out, const std::vector<WidthEstimate>& rows)
{
    out << "n,lower,empirical,upper\n";
    for (const auto& r : rows)
    {
        out << r.n << ',' << format_number(r.lower_bound) << ',' << format_number(r.empirical)
            << ',' << format_number(r.upper_bound) << '\n';
    }
}

/// Rows "epsilon,count,entropy,theory" with entropy = log2(count) and
/// theory = 2 log2(1/epsilon).
inline void write_cover_csv(std::ostream& out, const std::vector<CoverRecord>& rows)
{
    out << "epsilon,count,entropy,theory\n";
    for (const auto& r : rows)
    {
        out << format_number(r.epsilon) << ',' << r.ball_count << ','
            << format_number(std::log2(static_cast<double>(r.ball_count))) << ','
            << format_number(entropy_bits(r.epsilon)) << '\n';
    }
}

struct NmRow
{
    std::size_t subspaces = 0;
    std::size_t dimension = 0;
    WidthEstimate estimate;
};

inline void write_nm_csv(std::ostream& out, const std::vector<NmRow>& rows)
{
    out << "N,m,lower,empirical,upper\n";
    for (const auto& r : rows)
    {
        out << r.subspaces << ',' << r.dimension << ',' << format_number(r.estimate.lower_bound)
            << ',' << format_number(r.estimate.empirical) << ','
            << format_number(r.estimate.upper_bound) << '\n';
    }
}

struct ApproxRow
{
    double t = 0.0;
    std::size_t n = 0;
    DictionaryKind dict = DictionaryKind::fourier_basis;
    double error = 0.0;
};

inline void write_approx_csv(std::ostream& out, const std::vector<ApproxRow>& rows)
{
    out << "t,n,dict,error\n";
    for (const auto& r : rows)
    {
        out << format_number(r.t) << ',' << r.n << ',' << to_string(r.dict) << ','
            << format_number(r.error) << '\n';
    }
}

inline void write_budget_csv(std::ostream& out, const std::vector<BitBudget>& rows)
{
    out << "method,epsilon,bits,params\n";
    for (const auto& r : rows)
    {
        out << to_string(r.method) << ',' << format_number(r.epsilon) << ','
            << format_number(r.bits) << ',';
        if (r.param)
        {
            out << "m=" << *r.param;
        }
        out << '\n';
    }
}

} // namespace stepprony
