#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mmbeam/channel.hpp"

namespace mmbeam {

enum class Algorithm { Joint, GreedyNoDeflation, FullDigital };
enum class SweepAxis { SnrDb, NumAntennas, NumStreams };

std::string algorithm_name(Algorithm a);
std::string sweep_axis_name(SweepAxis a);

struct ExperimentConfig {
    ChannelParams channel;
    int bits_tx = 6;
    int bits_rx = 6;
    bool dedupe_codebook = false;
    int n_streams = 4;
    std::vector<Algorithm> algorithms{Algorithm::Joint, Algorithm::GreedyNoDeflation,
                                      Algorithm::FullDigital};
    SweepAxis sweep_axis = SweepAxis::SnrDb;
    std::vector<double> sweep_values{-20, -15, -10, -5, 0, 5, 10, 15, 20};
    // Operating SNR in dB when the sweep axis is not SNR (transmit power is
    // fixed at 1 and the noise variance set from this).
    double snr_db = 0.0;
    int trials = 500;
    std::uint64_t base_seed = 1;
    int workers = 0;  // 0 = one per hardware thread
    bool record_timing = false;
};

struct TrialRecord {
    double sweep_value = 0.0;
    int trial = 0;
    Algorithm algorithm = Algorithm::Joint;
    double spectral_efficiency = 0.0;
    double sum_rate = 0.0;
    double min_sinr_db = 0.0;
    double elapsed_s = 0.0;
    bool skipped = false;
};

struct SummaryRow {
    double sweep_value = 0.0;
    Algorithm algorithm = Algorithm::Joint;
    int trials = 0;  // records contributing to the means (skips excluded)
    double se_mean = 0.0;
    double se_std = 0.0;
    double rate_mean = 0.0;
    double rate_std = 0.0;
};

struct SweepResult {
    std::vector<TrialRecord> records;
    std::vector<SummaryRow> summary;
};

// Deterministic paired Monte-Carlo sweep. Every (sweep value, trial) draws
// one channel from a stream seeded by derive_stream_seed(base_seed,
// sweep_index, trial_index) and evaluates all requested algorithms on it.
// Output is identical for any worker count.
SweepResult run_sweep(const ExperimentConfig& config);

void write_records_csv(const std::vector<TrialRecord>& records, SweepAxis axis,
                       const std::filesystem::path& path);
void write_summary_csv(const std::vector<SummaryRow>& summary, SweepAxis axis,
                       const std::filesystem::path& path);

}  // namespace mmbeam
