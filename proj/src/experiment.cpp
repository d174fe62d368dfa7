#include "mmbeam/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mmbeam/beamdesign.hpp"
#include "mmbeam/codebook.hpp"
#include "mmbeam/errors.hpp"
#include "mmbeam/metrics.hpp"
#include "mmbeam/random.hpp"

namespace mmbeam {

namespace {

constexpr const char* kRecordsHeader =
    "sweep_axis,sweep_value,trial,algorithm,spectral_efficiency_bps_hz,sum_rate_bps_hz,"
    "min_sinr_db,elapsed_s,skipped";
constexpr const char* kSummaryHeader =
    "sweep_axis,sweep_value,algorithm,trials,se_mean,se_std,rate_mean,rate_std";

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// One sweep point with everything the trial workers need, fixed up front.
struct SweepPoint {
    double value = 0.0;
    ChannelParams params;
    Codebook f_cb;
    Codebook w_cb;
    int n_streams = 0;
    double noise_var = 1.0;
};

double snr_db_to_noise(double snr_db) {
    return std::pow(10.0, -snr_db / 10.0);
}

void validate_config(const ExperimentConfig& c) {
    if (c.sweep_values.empty()) {
        throw std::invalid_argument("sweep_values must be nonempty");
    }
    for (std::size_t i = 1; i < c.sweep_values.size(); ++i) {
        if (!(c.sweep_values[i] > c.sweep_values[i - 1])) {
            throw std::invalid_argument("sweep_values must be strictly increasing");
        }
    }
    if (c.trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    if (c.algorithms.empty()) {
        throw std::invalid_argument("algorithms must be nonempty");
    }
}

std::vector<Algorithm> normalized_algorithms(const ExperimentConfig& c) {
    std::vector<Algorithm> algs = c.algorithms;
    std::sort(algs.begin(), algs.end());
    algs.erase(std::unique(algs.begin(), algs.end()), algs.end());
    return algs;
}

std::vector<SweepPoint> build_points(const ExperimentConfig& c) {
    std::vector<SweepPoint> points;
    points.reserve(c.sweep_values.size());
    for (double value : c.sweep_values) {
        SweepPoint pt;
        pt.value = value;
        pt.params = c.channel;
        pt.n_streams = c.n_streams;
        switch (c.sweep_axis) {
            case SweepAxis::SnrDb:
                pt.noise_var = snr_db_to_noise(value);
                break;
            case SweepAxis::NumAntennas: {
                const int n = static_cast<int>(value);
                if (n < 1 || static_cast<double>(n) != value) {
                    throw std::invalid_argument("antenna sweep values must be positive integers");
                }
                pt.params.tx.n_elements = n;
                pt.params.rx.n_elements = n;
                pt.noise_var = snr_db_to_noise(c.snr_db);
                break;
            }
            case SweepAxis::NumStreams: {
                const int ns = static_cast<int>(value);
                if (ns < 1 || static_cast<double>(ns) != value) {
                    throw std::invalid_argument("stream sweep values must be positive integers");
                }
                pt.n_streams = ns;
                pt.noise_var = snr_db_to_noise(c.snr_db);
                break;
            }
        }
        if (pt.n_streams > std::min(pt.params.tx.n_elements, pt.params.rx.n_elements)) {
            throw std::invalid_argument("n_streams exceeds min(N_t, N_r) at sweep value " +
                                        fmt_real(value));
        }
        pt.f_cb = build_beamsteering_codebook(c.bits_tx, pt.params.tx);
        pt.w_cb = build_beamsteering_codebook(c.bits_rx, pt.params.rx);
        if (c.dedupe_codebook) {
            pt.f_cb = dedupe_codebook(pt.f_cb);
            pt.w_cb = dedupe_codebook(pt.w_cb);
        }
        points.push_back(std::move(pt));
    }
    return points;
}

TrialRecord evaluate_algorithm(Algorithm alg, const SweepPoint& pt, const cxmat& h, int trial,
                               bool record_timing) {
    TrialRecord rec;
    rec.sweep_value = pt.value;
    rec.trial = trial;
    rec.algorithm = alg;

    const LinkBudget budget{1.0, pt.noise_var, pt.n_streams};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        cxmat f, w;
        switch (alg) {
            case Algorithm::Joint: {
                const HybridDesign d = joint_design(h, pt.f_cb, pt.w_cb, pt.n_streams);
                f = d.combined_precoder();
                w = d.combined_combiner();
                break;
            }
            case Algorithm::GreedyNoDeflation: {
                const HybridDesign d = greedy_no_deflation(h, pt.f_cb, pt.w_cb, pt.n_streams);
                f = d.combined_precoder();
                w = d.combined_combiner();
                break;
            }
            case Algorithm::FullDigital: {
                const FullDigitalDesign d = full_digital_svd(h, pt.n_streams);
                f = d.f;
                w = d.w;
                break;
            }
        }
        rec.spectral_efficiency = spectral_efficiency(h, f, w, budget);
        const realvec gammas = per_stream_sinr(h, f, w, budget);
        rec.sum_rate = sum_rate(gammas);
        rec.min_sinr_db = 10.0 * std::log10(std::max(gammas.minCoeff(), 1e-30));
    } catch (const DegenerateChannel&) {
        rec = TrialRecord{pt.value, trial, alg, 0.0, 0.0, 0.0, 0.0, true};
    } catch (const RankDeficient&) {
        // Same meaning at trial level: the channel cannot carry N_s streams.
        rec = TrialRecord{pt.value, trial, alg, 0.0, 0.0, 0.0, 0.0, true};
    }
    if (record_timing) {
        rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return rec;
}

}  // namespace

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Joint: return "joint";
        case Algorithm::GreedyNoDeflation: return "greedy_no_deflation";
        case Algorithm::FullDigital: return "full_digital";
    }
    return "unknown";
}

std::string sweep_axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::SnrDb: return "snr";
        case SweepAxis::NumAntennas: return "antennas";
        case SweepAxis::NumStreams: return "streams";
    }
    return "unknown";
}

SweepResult run_sweep(const ExperimentConfig& config) {
    validate_config(config);
    const auto algorithms = normalized_algorithms(config);
    const auto points = build_points(config);
    const std::size_t n_points = points.size();
    const std::size_t n_trials = static_cast<std::size_t>(config.trials);
    const std::size_t n_items = n_points * n_trials;

    // One slot per (sweep point, trial); workers fill disjoint slots, so the
    // flattened output is identical for any worker count.
    std::vector<std::vector<TrialRecord>> slots(n_items);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto work = [&]() {
        for (;;) {
            const std::size_t item = next.fetch_add(1);
            if (item >= n_items) return;
            if (failed.load(std::memory_order_relaxed)) return;
            try {
                const std::size_t point_idx = item / n_trials;
                const std::size_t trial = item % n_trials;
                const SweepPoint& pt = points[point_idx];
                RandomStream rng(derive_stream_seed(config.base_seed, point_idx, trial));
                const ChannelRealization ch = sample_channel(pt.params, rng);
                auto& slot = slots[item];
                slot.reserve(algorithms.size());
                for (Algorithm alg : algorithms) {
                    slot.push_back(evaluate_algorithm(alg, pt, ch.h, static_cast<int>(trial),
                                                      config.record_timing));
                }
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    unsigned n_workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                            : std::thread::hardware_concurrency();
    if (n_workers == 0) n_workers = 1;
    n_workers = std::min<std::size_t>(n_workers, n_items);

    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    SweepResult result;
    result.records.reserve(n_items * algorithms.size());
    for (auto& slot : slots) {
        for (auto& rec : slot) result.records.push_back(rec);
    }

    for (std::size_t p = 0; p < n_points; ++p) {
        for (Algorithm alg : algorithms) {
            SummaryRow row;
            row.sweep_value = points[p].value;
            row.algorithm = alg;
            double se_sum = 0.0, rate_sum = 0.0;
            std::vector<double> se, rate;
            for (std::size_t t = 0; t < n_trials; ++t) {
                for (const auto& rec : slots[p * n_trials + t]) {
                    if (rec.algorithm != alg || rec.skipped) continue;
                    se.push_back(rec.spectral_efficiency);
                    rate.push_back(rec.sum_rate);
                    se_sum += rec.spectral_efficiency;
                    rate_sum += rec.sum_rate;
                }
            }
            row.trials = static_cast<int>(se.size());
            if (!se.empty()) {
                row.se_mean = se_sum / static_cast<double>(se.size());
                row.rate_mean = rate_sum / static_cast<double>(rate.size());
                if (se.size() > 1) {
                    double se_var = 0.0, rate_var = 0.0;
                    for (std::size_t i = 0; i < se.size(); ++i) {
                        se_var += (se[i] - row.se_mean) * (se[i] - row.se_mean);
                        rate_var += (rate[i] - row.rate_mean) * (rate[i] - row.rate_mean);
                    }
                    row.se_std = std::sqrt(se_var / static_cast<double>(se.size() - 1));
                    row.rate_std = std::sqrt(rate_var / static_cast<double>(rate.size() - 1));
                }
            }
            result.summary.push_back(row);
        }
    }
    return result;
}

void write_records_csv(const std::vector<TrialRecord>& records, SweepAxis axis,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    const std::string axis_name = sweep_axis_name(axis);
    out << kRecordsHeader << '\n';
    for (const auto& r : records) {
        out << axis_name << ',' << fmt_real(r.sweep_value) << ',' << r.trial << ','
            << algorithm_name(r.algorithm) << ',' << fmt_real(r.spectral_efficiency) << ','
            << fmt_real(r.sum_rate) << ',' << fmt_real(r.min_sinr_db) << ','
            << fmt_real(r.elapsed_s) << ',' << (r.skipped ? 1 : 0) << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

void write_summary_csv(const std::vector<SummaryRow>& summary, SweepAxis axis,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    const std::string axis_name = sweep_axis_name(axis);
    out << kSummaryHeader << '\n';
    for (const auto& row : summary) {
        out << axis_name << ',' << fmt_real(row.sweep_value) << ','
            << algorithm_name(row.algorithm) << ',' << row.trials << ',' << fmt_real(row.se_mean)
            << ',' << fmt_real(row.se_std) << ',' << fmt_real(row.rate_mean) << ','
            << fmt_real(row.rate_std) << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

}  // namespace mmbeam
