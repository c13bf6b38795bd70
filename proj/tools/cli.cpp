// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The stepprony Authors

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "stepprony/stepprony.hpp"

namespace stepprony::cli {

namespace {

/// Thrown for bad input that should end the run with exit code 2.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Every parameter of a run, echoed into the output header.
class RunConfig
{
public:
    explicit RunConfig(std::string command) : command_(std::move(command)) {}

    template <typename T>
    void add(const std::string& key, const T& value)
    {
        if constexpr (std::is_floating_point_v<T>)
        {
            params_.emplace_back(key, format_number(value));
        }
        else if constexpr (std::is_constructible_v<std::string, T>)
        {
            params_.emplace_back(key, std::string(value));
        }
        else
        {
            params_.emplace_back(key, std::to_string(value));
        }
    }

    template <typename T>
    void add_list(const std::string& key, const std::vector<T>& values)
    {
        std::string joined;
        for (const auto& v : values)
        {
            if (!joined.empty())
            {
                joined += ';';
            }
            if constexpr (std::is_floating_point_v<T>)
            {
                joined += format_number(v);
            }
            else if constexpr (std::is_convertible_v<T, std::string>)
            {
                joined += v;
            }
            else
            {
                joined += std::to_string(v);
            }
        }
        params_.emplace_back(key, joined);
    }

    std::string csv_header() const
    {
        std::string line = "# stepprony " + command_;
        for (const auto& [k, v] : params_)
        {
            line += ' ' + k + '=' + v;
        }
        return line + '\n';
    }

    Json json() const
    {
        Json j;
        j["command"] = command_;
        for (const auto& [k, v] : params_)
        {
            j[k] = v;
        }
        return j;
    }

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> params_;
};

/// Runs body(i) for i in [0, count) on up to thread_count() workers.
/// Results must be written by index; nothing else is shared.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body)
{
    const auto workers = std::min<std::size_t>(thread_count(), count);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
        {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
    {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure)
                    {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool)
    {
        t.join();
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty())
    {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text) || !file.flush())
    {
        throw UsageError("cannot write " + path);
    }
}

std::string dump(const RunConfig& config, Json body)
{
    Json doc;
    doc["run_config"] = config.json();
    for (auto& [k, v] : body.items())
    {
        doc[k] = std::move(v);
    }
    return doc.dump(2) + '\n';
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw UsageError("cannot open " + path);
    }
    return in;
}

SolveMode parse_mode(const std::string& text)
{
    if (text == "exact")
    {
        return SolveMode::exact;
    }
    if (text == "least_squares" || text == "ls")
    {
        return SolveMode::least_squares;
    }
    throw UsageError("mode must be exact or least_squares");
}

// ------------------------------------------------------------------- gen

struct GenOptions
{
    std::size_t count = 3;
    double min_separation = 0.05;
    double min_jump = 0.2;
    std::uint64_t seed = 0;
    bool spikes = false;
    std::string out;
};

int cmd_gen(const GenOptions& o, std::ostream& out)
{
    RunConfig config("gen");
    config.add("N", o.count);
    config.add("min_separation", o.min_separation);
    config.add(o.spikes ? "min_amplitude" : "min_jump", o.min_jump);
    config.add("seed", o.seed);
    config.add("kind", o.spikes ? "spikes" : "piecewise");

    Json body;
    try
    {
        body = o.spikes ? to_json(random_spike_train(o.count, o.min_separation, o.min_jump, o.seed))
                        : to_json(random_signal(o.count, o.min_separation, o.min_jump, o.seed));
    }
    catch (const InfeasibleError& e)
    {
        throw UsageError(e.what());
    }
    emit(dump(config, std::move(body)), o.out, out);
    return kExitOk;
}

// --------------------------------------------------------------- measure

struct MeasureOptions
{
    std::string input;
    int k_max = 8;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_measure(const MeasureOptions& o, std::ostream& out)
{
    auto in = open_input(o.input);
    const AnySignal signal = read_signal(in);

    RunConfig config("measure");
    config.add("input", o.input);
    config.add("k_max", o.k_max);
    config.add("sigma", o.sigma);
    config.add("seed", o.seed);

    std::ostringstream text;
    text << config.csv_header();
    if (const auto* f = std::get_if<PiecewiseConstantSignal>(&signal))
    {
        write_spectrum_csv(text, add_noise(fourier_coefficients(*f, o.k_max), o.sigma, o.seed));
    }
    else
    {
        write_moments_csv(text,
                          add_noise(moments(std::get<DiracSpikeTrain>(signal), o.k_max), o.sigma,
                                    o.seed));
    }
    emit(text.str(), o.out, out);
    return kExitOk;
}

// ----------------------------------------------------------- reconstruct

/// Order-detection threshold for --order auto.
constexpr double kAutoOrderTolerance = 1e-8;

struct ReconstructOptions
{
    std::string input;
    std::string order = "auto";
    std::string mode = "exact";
    double tolerance = 1e-6;
    std::string out;
};

std::size_t parse_order(const std::string& text)
{
    try
    {
        std::size_t used = 0;
        const long value = std::stol(text, &used);
        if (used == text.size() && value >= 0)
        {
            return static_cast<std::size_t>(value);
        }
    }
    catch (const std::exception&)
    {
    }
    throw UsageError("order must be a non-negative integer or 'auto'");
}

std::size_t auto_order(const Measurements& data)
{
    if (const auto* s = std::get_if<FourierSpectrum>(&data))
    {
        const auto chat = normalized_coefficients(*s);
        if (chat.size() < 3)
        {
            throw UsageError("order estimation needs at least 3 positive coefficients");
        }
        std::vector<Complex> diffs(chat.size() - 1);
        for (std::size_t k = 0; k + 1 < chat.size(); ++k)
        {
            diffs[k] = chat[k + 1] - chat[k];
        }
        return estimate_order<Complex>(diffs, kAutoOrderTolerance);
    }
    const auto& m = std::get<MomentSequence>(data);
    return estimate_order<MomentReal>(m.moments, kAutoOrderTolerance);
}

int cmd_reconstruct(const ReconstructOptions& o, std::ostream& out, std::ostream& err)
{
    const SolveMode mode = parse_mode(o.mode);
    auto in = open_input(o.input);
    const Measurements data = read_measurements(in);
    const bool spectrum = std::holds_alternative<FourierSpectrum>(data);
    if (spectrum && !std::get<FourierSpectrum>(data).contains(0))
    {
        throw UsageError("spectrum file has no k=0 row");
    }
    const std::size_t order = o.order == "auto" ? auto_order(data) : parse_order(o.order);

    RunConfig config("reconstruct");
    config.add("input", o.input);
    config.add("order", o.order);
    config.add("mode", to_string(mode));
    config.add("tolerance", o.tolerance);

    Json body;
    int code = kExitOk;
    try
    {
        const auto report = spectrum
                                ? reconstruct_piecewise(std::get<FourierSpectrum>(data), order, mode)
                                : reconstruct_spikes(std::get<MomentSequence>(data), order, mode);
        body = to_json(report);
        const bool ok = report.residual_norm <= o.tolerance;
        body["status"] = ok ? "ok" : "residual_above_tolerance";
        if (!ok)
        {
            err << "residual " << format_number(report.residual_norm) << " exceeds tolerance "
                << format_number(o.tolerance) << '\n';
            code = kExitQuality;
        }
    }
    catch (const DomainError& e)
    {
        throw UsageError(e.what());
    }
    catch (const MissingIndexError& e)
    {
        throw UsageError(e.what());
    }
    catch (const Error& e)
    {
        // The pipeline ran but the data do not fit the model.
        body["kind"] = spectrum ? "piecewise" : "spikes";
        body["signal"] = nullptr;
        body["requested_order"] = order;
        body["mode"] = to_string(mode);
        body["status"] = "failed";
        body["error"] = e.what();
        err << "reconstruction failed: " << e.what() << '\n';
        code = kExitQuality;
    }
    emit(dump(config, std::move(body)), o.out, out);
    return code;
}

// ----------------------------------------------------------------- sweep

struct SweepOptions
{
    std::string kind;
    std::vector<std::size_t> n;
    std::size_t grid = 0;
    std::vector<double> epsilon;
    std::vector<std::string> pairs;
    std::vector<double> t;
    std::vector<std::string> dict;
    std::string out;
};

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text)
{
    const auto x = text.find('x');
    if (x == std::string::npos)
    {
        throw UsageError("pair '" + text + "' must look like NxM");
    }
    return {parse_order(text.substr(0, x)), parse_order(text.substr(x + 1))};
}

DictionaryKind parse_dict(const std::string& text)
{
    for (auto kind : {DictionaryKind::fourier_basis, DictionaryKind::haar_frame,
                      DictionaryKind::haar_basis})
    {
        if (text == to_string(kind))
        {
            return kind;
        }
    }
    throw UsageError("unknown dictionary '" + text + "'");
}

int cmd_sweep(SweepOptions o, std::ostream& out)
{
    RunConfig config("sweep");
    config.add("kind", o.kind);
    std::ostringstream text;

    if (o.kind == "widths")
    {
        if (o.n.empty())
        {
            o.n = {5, 9, 17, 33, 65};
        }
        if (o.grid == 0)
        {
            o.grid = 10000;
        }
        // Only odd dimensions 2j+1 are realized; even n report both neighbours.
        std::vector<int> js;
        for (auto n : o.n)
        {
            if (n < 3)
            {
                throw UsageError("width sweep needs n >= 3");
            }
            if (n % 2 == 1)
            {
                js.push_back(static_cast<int>(n / 2));
            }
            else
            {
                js.push_back(static_cast<int>(n / 2) - 1);
                js.push_back(static_cast<int>(n / 2));
            }
        }
        config.add_list("n", o.n);
        config.add("grid", o.grid);
        std::vector<WidthEstimate> rows(js.size());
        parallel_for(js.size(), [&](std::size_t i) {
            rows[i] = empirical_fourier_width(js[i], o.grid);
        });
        text << config.csv_header();
        write_width_csv(text, rows);
    }
    else if (o.kind == "entropy")
    {
        if (o.epsilon.empty())
        {
            o.epsilon = {0.1, 0.05, 0.02, 0.01};
        }
        config.add_list("epsilon", o.epsilon);
        config.add("grid", o.grid);
        std::vector<CoverRecord> rows(o.epsilon.size());
        parallel_for(rows.size(), [&](std::size_t i) {
            const double e = o.epsilon[i];
            // The grid is raised to the 10/epsilon^2 minimum when needed.
            const auto needed = static_cast<std::size_t>(std::ceil(10.0 / (e * e))) + 1;
            rows[i] = covering_number(e, std::max(o.grid, needed));
        });
        text << config.csv_header();
        write_cover_csv(text, rows);
    }
    else if (o.kind == "nm")
    {
        if (o.pairs.empty())
        {
            o.pairs = {"4x4", "8x2", "16x1", "2x8"};
        }
        if (o.grid == 0)
        {
            o.grid = 10000;
        }
        config.add_list("pairs", o.pairs);
        config.add("grid", o.grid);
        std::vector<NmRow> rows(o.pairs.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            std::tie(rows[i].subspaces, rows[i].dimension) = parse_pair(o.pairs[i]);
        }
        parallel_for(rows.size(), [&](std::size_t i) {
            rows[i].estimate = nm_width_construction(rows[i].subspaces, rows[i].dimension, o.grid);
        });
        text << config.csv_header();
        write_nm_csv(text, rows);
    }
    else if (o.kind == "approx")
    {
        if (o.n.empty())
        {
            for (std::size_t n = 1; n <= 12; ++n)
            {
                o.n.push_back(n);
            }
        }
        if (o.t.empty())
        {
            if (o.grid == 0)
            {
                o.grid = 16;
            }
            for (std::size_t i = 1; i <= o.grid; ++i)
            {
                o.t.push_back(static_cast<double>(i) / static_cast<double>(o.grid + 1));
            }
        }
        if (o.dict.empty())
        {
            o.dict = {"FOURIER_BASIS", "HAAR_FRAME", "HAAR_BASIS"};
        }
        std::vector<DictionaryKind> dicts;
        for (const auto& d : o.dict)
        {
            dicts.push_back(parse_dict(d));
        }
        config.add_list("t", o.t);
        config.add_list("n", o.n);
        config.add_list("dict", o.dict);
        std::vector<ApproxRow> rows;
        for (double t : o.t)
        {
            for (auto n : o.n)
            {
                for (auto d : dicts)
                {
                    rows.push_back({t, n, d, 0.0});
                }
            }
        }
        parallel_for(rows.size(), [&](std::size_t i) {
            rows[i].error = n_term_error(heaviside(rows[i].t), rows[i].dict, rows[i].n);
        });
        text << config.csv_header();
        write_approx_csv(text, rows);
    }
    else if (o.kind == "budget")
    {
        if (o.epsilon.empty())
        {
            o.epsilon = {0x1p-4, 0x1p-6, 0x1p-8, 0x1p-10};
        }
        config.add_list("epsilon", o.epsilon);
        const auto rows = budget_table(o.epsilon);
        text << config.csv_header();
        write_budget_csv(text, rows);
    }
    else
    {
        throw UsageError("unknown sweep kind '" + o.kind +
                         "' (expected widths, entropy, nm, approx or budget)");
    }
    emit(text.str(), o.out, out);
    return kExitOk;
}

// ------------------------------------------------------------- roundtrip

struct RoundtripOptions
{
    std::size_t count = 4;
    std::size_t trials = 50;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    std::size_t coefficients = 0;
    std::string mode = "exact";
    double min_separation = 0.05;
    double min_jump = 0.2;
    double tolerance = -1.0;
    std::string out;
};

struct TrialResult
{
    std::uint64_t seed = 0;
    bool ok = false;
    double jump_error = std::numeric_limits<double>::infinity();
    double value_error = std::numeric_limits<double>::infinity();
    double residual = std::numeric_limits<double>::infinity();
    std::string error;
};

/// Mixes the trial seed into an independent stream for the noise draws.
std::uint64_t noise_seed(std::uint64_t trial_seed)
{
    return trial_seed ^ 0x9e3779b97f4a7c15ULL;
}

TrialResult run_trial(const RoundtripOptions& o, SolveMode mode, std::uint64_t seed)
{
    TrialResult r;
    r.seed = seed;
    const auto truth = random_signal(o.count, o.min_separation, o.min_jump, seed);
    const auto spectrum =
        add_noise(fourier_coefficients(truth, static_cast<int>(o.coefficients)), o.sigma,
                  noise_seed(seed));
    try
    {
        const auto report = reconstruct_piecewise(spectrum, o.count, mode);
        const auto& got = report.piecewise();
        r.residual = report.residual_norm;
        if (got.jump_count() != truth.jump_count())
        {
            r.error = "recovered " + std::to_string(got.jump_count()) + " jumps";
            return r;
        }
        r.jump_error = 0.0;
        for (std::size_t i = 0; i < got.jump_count(); ++i)
        {
            r.jump_error = std::max(r.jump_error, std::abs(got.jumps()[i] - truth.jumps()[i]));
        }
        r.value_error = 0.0;
        for (std::size_t i = 0; i < got.values().size(); ++i)
        {
            r.value_error = std::max(r.value_error, std::abs(got.values()[i] - truth.values()[i]));
        }
        r.ok = true;
    }
    catch (const Error& e)
    {
        r.error = e.what();
    }
    return r;
}

double median(std::vector<double> v)
{
    if (v.empty())
    {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2 == 1)
    {
        return *mid;
    }
    const double upper = *mid;
    const double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

Json finite_or_null(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

int cmd_roundtrip(RoundtripOptions o, std::ostream& out, std::ostream& err)
{
    const SolveMode mode = parse_mode(o.mode);
    if (o.trials < 1)
    {
        throw UsageError("trials must be at least 1");
    }
    if (o.coefficients == 0)
    {
        o.coefficients = 2 * o.count + 1;
    }
    if (o.tolerance < 0.0)
    {
        o.tolerance = std::max(1e-8, 1e3 * o.sigma);
    }
    const std::size_t needed = 2 * o.count + 1;
    if (o.coefficients < needed || (mode == SolveMode::least_squares && o.coefficients == needed))
    {
        throw UsageError("coefficient count too small for the requested order and mode");
    }
    // Reject infeasible constraints up front rather than once per trial.
    try
    {
        random_signal(o.count, o.min_separation, o.min_jump, o.seed);
    }
    catch (const Error& e)
    {
        throw UsageError(e.what());
    }

    RunConfig config("roundtrip");
    config.add("N", o.count);
    config.add("trials", o.trials);
    config.add("sigma", o.sigma);
    config.add("seed", o.seed);
    config.add("M", o.coefficients);
    config.add("mode", to_string(mode));
    config.add("min_separation", o.min_separation);
    config.add("min_jump", o.min_jump);
    config.add("tolerance", o.tolerance);

    std::vector<TrialResult> results(o.trials);
    parallel_for(o.trials, [&](std::size_t i) { results[i] = run_trial(o, mode, o.seed + i); });

    std::vector<double> jump_errors;
    std::vector<double> value_errors;
    std::vector<double> residuals;
    std::size_t failed = 0;
    Json trials = Json::array();
    for (const auto& r : results)
    {
        jump_errors.push_back(r.jump_error);
        value_errors.push_back(r.value_error);
        residuals.push_back(r.residual);
        if (!r.ok)
        {
            ++failed;
        }
        Json t;
        t["seed"] = r.seed;
        t["jump_error"] = finite_or_null(r.jump_error);
        t["value_error"] = finite_or_null(r.value_error);
        t["residual_norm"] = finite_or_null(r.residual);
        if (!r.error.empty())
        {
            t["error"] = r.error;
        }
        trials.push_back(std::move(t));
    }
    const double max_jump = *std::max_element(jump_errors.begin(), jump_errors.end());
    const double max_value = *std::max_element(value_errors.begin(), value_errors.end());
    const bool ok = failed == 0 && max_jump <= o.tolerance && max_value <= o.tolerance;

    Json body;
    body["status"] = ok ? "ok" : "threshold_exceeded";
    body["failed_trials"] = failed;
    body["max_jump_error"] = finite_or_null(max_jump);
    body["median_jump_error"] = finite_or_null(median(jump_errors));
    body["max_value_error"] = finite_or_null(max_value);
    body["median_value_error"] = finite_or_null(median(value_errors));
    body["max_residual_norm"] =
        finite_or_null(*std::max_element(residuals.begin(), residuals.end()));
    body["median_residual_norm"] = finite_or_null(median(residuals));
    body["trials"] = std::move(trials);
    emit(dump(config, std::move(body)), o.out, out);
    if (!ok)
    {
        err << "roundtrip: " << failed << " failed trials, max jump error "
            << format_number(max_jump) << ", max value error " << format_number(max_value)
            << ", tolerance " << format_number(o.tolerance) << '\n';
        return kExitQuality;
    }
    return kExitOk;
}

} // namespace

unsigned thread_count()
{
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("STEPPRONY_THREADS"))
    {
        char* end = nullptr;
        const long v = std::strtol(cap, &end, 10);
        if (end != cap && *end == '\0' && v >= 1)
        {
            n = std::min<unsigned>(n, static_cast<unsigned>(v));
        }
    }
    return n;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Prony-type reconstruction of step functions and spike trains, with "
                 "width, entropy and bit-budget sweeps"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate a random signal as JSON");
    g->add_option("-N,--count", gen.count, "Number of jumps (or spikes)");
    g->add_option("--min-separation", gen.min_separation, "Minimum gap between jumps");
    g->add_option("--min-jump", gen.min_jump, "Minimum jump height (spike amplitude)");
    g->add_option("--seed", gen.seed, "Random seed");
    g->add_flag("--spikes", gen.spikes, "Generate a Dirac spike train instead");
    g->add_option("--out", gen.out, "Output file (default stdout)");

    MeasureOptions measure;
    auto* m = app.add_subcommand("measure", "Fourier coefficients or moments of a signal file");
    m->add_option("input", measure.input, "Signal JSON")->required();
    m->add_option("--k-max", measure.k_max, "Highest index K")->check(CLI::NonNegativeNumber);
    m->add_option("--sigma", measure.sigma, "Gaussian noise level")->check(CLI::NonNegativeNumber);
    m->add_option("--seed", measure.seed, "Noise seed");
    m->add_option("--out", measure.out, "Output file (default stdout)");

    ReconstructOptions rec;
    auto* r = app.add_subcommand("reconstruct", "Recover a signal from a measurement CSV");
    r->add_option("input", rec.input, "Spectrum or moment CSV")->required();
    r->add_option("--order", rec.order, "Number of jumps/spikes, or auto");
    r->add_option("--mode", rec.mode, "exact or least_squares");
    r->add_option("--tol", rec.tolerance, "Residual threshold for exit code 3");
    r->add_option("--out", rec.out, "Output file (default stdout)");

    SweepOptions sweep;
    auto* s = app.add_subcommand("sweep", "Width, entropy, (N,m), n-term or budget tables");
    s->add_option("kind", sweep.kind, "widths | entropy | nm | approx | budget")->required();
    s->add_option("--n", sweep.n, "Dimensions (widths) or term counts (approx)")->delimiter(',');
    s->add_option("--grid", sweep.grid, "t-grid size");
    s->add_option("--epsilon", sweep.epsilon, "Accuracies")->delimiter(',');
    s->add_option("--pairs", sweep.pairs, "(N,m) pairs as NxM")->delimiter(',');
    s->add_option("--t", sweep.t, "Step positions (approx)")->delimiter(',');
    s->add_option("--dict", sweep.dict, "Dictionaries (approx)")->delimiter(',');
    s->add_option("--out", sweep.out, "Output file (default stdout)");

    RoundtripOptions trip;
    auto* t = app.add_subcommand("roundtrip", "Seeded gen -> measure -> reconstruct trials");
    t->add_option("-N,--count", trip.count, "Number of jumps");
    t->add_option("--trials", trip.trials, "Number of trials");
    t->add_option("--sigma", trip.sigma, "Gaussian noise level")->check(CLI::NonNegativeNumber);
    t->add_option("--seed", trip.seed, "Base seed; trial i uses seed + i");
    t->add_option("--k-max,-M,--coefficients", trip.coefficients,
                  "Number M of coefficients c_1..c_M (default 2N+1)");
    t->add_option("--mode", trip.mode, "exact or least_squares");
    t->add_option("--min-separation", trip.min_separation, "Minimum gap between jumps");
    t->add_option("--min-jump", trip.min_jump, "Minimum jump height");
    t->add_option("--tol", trip.tolerance, "Error threshold (default max(1e-8, 1000 sigma))");
    t->add_option("--out", trip.out, "Output file (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty())
    {
        reversed.pop_back();
    }
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kExitOk;
    }
    catch (const CLI::CallForAllHelp&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    }
    catch (const CLI::ParseError& e)
    {
        err << e.what() << '\n' << "run with --help for usage\n";
        return kExitUsage;
    }

    try
    {
        if (g->parsed())
        {
            return cmd_gen(gen, out);
        }
        if (m->parsed())
        {
            return cmd_measure(measure, out);
        }
        if (r->parsed())
        {
            return cmd_reconstruct(rec, out, err);
        }
        if (s->parsed())
        {
            return cmd_sweep(sweep, out);
        }
        return cmd_roundtrip(trip, out, err);
    }
    catch (const UsageError& e)
    {
        err << "error: " << e.what() << '\n';
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
}

} // namespace stepprony::cli
