#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "mmbeam/beamdesign.hpp"
#include "mmbeam/channel.hpp"
#include "mmbeam/codebook.hpp"
#include "mmbeam/config.hpp"
#include "mmbeam/errors.hpp"
#include "mmbeam/experiment.hpp"
#include "mmbeam/metrics.hpp"
#include "mmbeam/random.hpp"

namespace {

using namespace mmbeam;

struct CliState {
    RawConfig overrides;
    std::string config_path;
    std::string out_dir = ".";
    bool print_angles = false;
    std::string sample_out = "-";
};

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void add_config_flags(CLI::App* sub, RawConfig& overrides) {
    for (const auto& k : config_keys()) {
        const std::string help = std::string(k.help) + " [default: " + k.default_text + "]";
        const std::string key = k.key;
        if (k.kind == KeyKind::Switch) {
            sub->add_flag_function(
                k.flag,
                [&overrides, key](std::int64_t count) {
                    if (count > 0) overrides.set(key, "true");
                },
                help);
        } else {
            sub->add_option_function<std::string>(
                k.flag, [&overrides, key](const std::string& value) { overrides.set(key, value); },
                help);
        }
    }
}

RawConfig load_raw(const CliState& st) {
    RawConfig raw;
    if (!st.config_path.empty()) {
        raw = parse_config_file(st.config_path);
    }
    raw.merge_overrides(st.overrides);
    return raw;
}

int run_sweep_cmd(const CliState& st) {
    const RawConfig raw = load_raw(st);
    const ExperimentConfig cfg = resolve_experiment_config(raw);
    const SweepResult result = run_sweep(cfg);

    const std::filesystem::path dir(st.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    const auto records_path = dir / "records.csv";
    const auto summary_path = dir / "summary.csv";
    write_records_csv(result.records, cfg.sweep_axis, records_path);
    write_summary_csv(result.summary, cfg.sweep_axis, summary_path);
    std::cout << "wrote " << records_path.string() << " and " << summary_path.string() << "\n";
    return 0;
}

int run_simulate_cmd(const CliState& st) {
    const RawConfig raw = load_raw(st);
    const ExperimentConfig cfg = resolve_experiment_config(raw);
    const double snr_db = resolve_single_snr_db(raw);
    const double noise_var = std::pow(10.0, -snr_db / 10.0);

    RandomStream rng(derive_stream_seed(cfg.base_seed, 0, 0));
    const ChannelRealization ch = sample_channel(cfg.channel, rng);
    Codebook f_cb = build_beamsteering_codebook(cfg.bits_tx, cfg.channel.tx);
    Codebook w_cb = build_beamsteering_codebook(cfg.bits_rx, cfg.channel.rx);
    if (cfg.dedupe_codebook) {
        f_cb = dedupe_codebook(f_cb);
        w_cb = dedupe_codebook(w_cb);
    }
    const LinkBudget budget{1.0, noise_var, cfg.n_streams};

    std::cout << "snr_db: " << snr_db << "\n"
              << "streams: " << cfg.n_streams << "\n"
              << "tx_antennas: " << cfg.channel.tx.n_elements << "\n"
              << "rx_antennas: " << cfg.channel.rx.n_elements << "\n";
    for (Algorithm alg : cfg.algorithms) {
        cxmat f, w;
        std::vector<int> tx_beams, rx_beams;
        switch (alg) {
            case Algorithm::Joint: {
                const HybridDesign d = joint_design(ch.h, f_cb, w_cb, cfg.n_streams);
                f = d.combined_precoder();
                w = d.combined_combiner();
                tx_beams = d.tx_indices;
                rx_beams = d.rx_indices;
                break;
            }
            case Algorithm::GreedyNoDeflation: {
                const HybridDesign d = greedy_no_deflation(ch.h, f_cb, w_cb, cfg.n_streams);
                f = d.combined_precoder();
                w = d.combined_combiner();
                tx_beams = d.tx_indices;
                rx_beams = d.rx_indices;
                break;
            }
            case Algorithm::FullDigital: {
                const FullDigitalDesign d = full_digital_svd(ch.h, cfg.n_streams);
                f = d.f;
                w = d.w;
                break;
            }
        }
        std::cout << "algorithm: " << algorithm_name(alg) << "\n";
        if (!tx_beams.empty()) {
            std::cout << "  tx_beams:";
            for (int idx : tx_beams) std::cout << ' ' << idx;
            std::cout << "\n  rx_beams:";
            for (int idx : rx_beams) std::cout << ' ' << idx;
            std::cout << "\n";
        }
        const realvec gammas = per_stream_sinr(ch.h, f, w, budget);
        std::cout << "  per_stream_sinr_db:";
        for (int k = 0; k < gammas.size(); ++k) {
            std::cout << ' ' << 10.0 * std::log10(std::max(gammas(k), 1e-30));
        }
        std::cout << "\n  sum_rate_bps_hz: " << sum_rate(gammas) << "\n"
                  << "  spectral_efficiency_bps_hz: " << spectral_efficiency(ch.h, f, w, budget)
                  << "\n";
    }
    return 0;
}

int run_codebook_inspect_cmd(const CliState& st) {
    const RawConfig raw = load_raw(st);
    const ExperimentConfig cfg = resolve_experiment_config(raw);
    const Codebook cb = build_beamsteering_codebook(cfg.bits_tx, cfg.channel.tx);
    std::cout << "bits: " << cb.bits << "\n"
              << "elements: " << cfg.channel.tx.n_elements << "\n"
              << "spacing: " << cfg.channel.tx.spacing_over_wavelength << "\n"
              << "vectors: " << cb.size() << "\n"
              << "distinct_beams: " << distinct_beam_count(cb) << "\n";
    if (cfg.dedupe_codebook) {
        std::cout << "deduped_vectors: " << dedupe_codebook(cb).size() << "\n";
    }
    if (st.print_angles) {
        const Codebook& listed = cb;
        std::cout << "index,angle_deg\n";
        for (int i = 0; i < listed.size(); ++i) {
            std::cout << i << ',' << fmt_real(listed.angles[i] * 180.0 / std::numbers::pi) << "\n";
        }
    }
    return 0;
}

int run_channel_sample_cmd(const CliState& st) {
    const RawConfig raw = load_raw(st);
    const ExperimentConfig cfg = resolve_experiment_config(raw);
    RandomStream rng(derive_stream_seed(cfg.base_seed, 0, 0));
    const ChannelRealization ch = sample_channel(cfg.channel, rng);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (st.sample_out != "-") {
        file.open(st.sample_out, std::ios::binary);
        if (!file) {
            throw IoError("cannot open " + st.sample_out + " for writing");
        }
        out = &file;
    }
    // Ray rows use the model's 1-based cluster/ray labels and radians;
    // matrix entries use 0-based row/col storage indices.
    *out << "i,l,re_alpha,im_alpha,aod,aoa\n";
    for (std::size_t idx = 0; idx < ch.rays.size(); ++idx) {
        const Ray& ray = ch.rays[idx];
        const int l = static_cast<int>(idx % static_cast<std::size_t>(cfg.channel.n_rays)) + 1;
        *out << ray.cluster << ',' << l << ',' << fmt_real(ray.gain.real()) << ','
             << fmt_real(ray.gain.imag()) << ',' << fmt_real(ray.aod) << ',' << fmt_real(ray.aoa)
             << "\n";
    }
    for (int r = 0; r < ch.h.rows(); ++r) {
        for (int c = 0; c < ch.h.cols(); ++c) {
            *out << r << ',' << c << ',' << fmt_real(ch.h(r, c).real()) << ','
                 << fmt_real(ch.h(r, c).imag()) << "\n";
        }
    }
    if (!*out) {
        throw IoError("write failed");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid analog/digital beamforming simulator for large uniform linear arrays"};
    app.require_subcommand(1);
    CliState st;

    CLI::App* sweep = app.add_subcommand("sweep", "run a Monte-Carlo sweep and write CSV outputs");
    sweep->add_option("--config", st.config_path, "config file of 'key = value' lines");
    sweep->add_option("--out-dir", st.out_dir,
                      "directory for records.csv and summary.csv [default: .]");
    add_config_flags(sweep, st.overrides);

    CLI::App* simulate =
        app.add_subcommand("simulate", "run one channel realization and print per-algorithm metrics");
    simulate->add_option("--config", st.config_path, "config file of 'key = value' lines");
    add_config_flags(simulate, st.overrides);

    CLI::App* codebook = app.add_subcommand("codebook", "codebook utilities");
    codebook->require_subcommand(1);
    CLI::App* inspect = codebook->add_subcommand("inspect", "print codebook statistics");
    inspect->add_option("--config", st.config_path, "config file of 'key = value' lines");
    inspect->add_flag("--angles", st.print_angles, "also list the quantized angles in degrees");
    add_config_flags(inspect, st.overrides);

    CLI::App* channel = app.add_subcommand("channel", "channel utilities");
    channel->require_subcommand(1);
    CLI::App* sample = channel->add_subcommand("sample", "dump one channel realization as CSV");
    sample->add_option("--config", st.config_path, "config file of 'key = value' lines");
    sample->add_option("--out", st.sample_out, "output file, '-' for stdout [default: -]");
    add_config_flags(sample, st.overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            return app.exit(e);
        }
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (sweep->parsed()) return run_sweep_cmd(st);
        if (simulate->parsed()) return run_simulate_cmd(st);
        if (codebook->parsed() && inspect->parsed()) return run_codebook_inspect_cmd(st);
        if (channel->parsed() && sample->parsed()) return run_channel_sample_cmd(st);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
