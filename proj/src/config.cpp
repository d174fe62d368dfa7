#include "mmbeam/config.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <fstream>
#include <numbers>

#include "mmbeam/errors.hpp"

namespace mmbeam {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto end = comma == std::string::npos ? text.size() : comma;
        items.push_back(trim(text.substr(pos, end - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (items.size() == 1 && items[0].empty()) items.clear();
    return items;
}

long long parse_int(const std::string& text, const std::string& key) {
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ConfigError("invalid integer for '" + key + "': '" + text + "'");
    }
    return value;
}

std::uint64_t parse_uint64(const std::string& text, const std::string& key) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ConfigError("invalid unsigned integer for '" + key + "': '" + text + "'");
    }
    return value;
}

double parse_real(const std::string& text, const std::string& key) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(value)) {
        throw ConfigError("invalid number for '" + key + "': '" + text + "'");
    }
    return value;
}

bool parse_bool(const std::string& text, const std::string& key) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError("invalid boolean for '" + key + "': '" + text + "' (use true/false)");
}

std::vector<double> parse_real_list(const std::string& text, const std::string& key) {
    std::vector<double> values;
    for (const auto& item : split_list(text)) {
        values.push_back(parse_real(item, key));
    }
    if (values.empty()) {
        throw ConfigError("empty list for '" + key + "'");
    }
    return values;
}

const std::string* raw_find(const RawConfig& raw, const char* key) { return raw.find(key); }

int get_int(const RawConfig& raw, const char* key, int fallback) {
    const std::string* text = raw_find(raw, key);
    if (!text) return fallback;
    const long long v = parse_int(*text, key);
    if (v < INT_MIN || v > INT_MAX) {
        throw ConfigError(std::string("value out of range for '") + key + "'");
    }
    return static_cast<int>(v);
}

double get_real(const RawConfig& raw, const char* key, double fallback) {
    const std::string* text = raw_find(raw, key);
    return text ? parse_real(*text, key) : fallback;
}

bool get_bool(const RawConfig& raw, const char* key, bool fallback) {
    const std::string* text = raw_find(raw, key);
    return text ? parse_bool(*text, key) : fallback;
}

void require_positive(int value, const char* key) {
    if (value < 1) {
        throw ConfigError(std::string("'") + key + "' must be >= 1");
    }
}

void check_strictly_increasing(const std::vector<double>& values, const char* key) {
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw ConfigError(std::string("'") + key + "' must be strictly increasing");
        }
    }
}

// "antennas" and "bits" are both-sides shorthands; mixing a shorthand with a
// per-side key is ambiguous, so it is rejected rather than resolved silently.
void reject_shorthand_mix(const RawConfig& raw, const char* shorthand, const char* side_a,
                          const char* side_b) {
    if (raw.find(shorthand) && (raw.find(side_a) || raw.find(side_b))) {
        throw ConfigError(std::string("set either '") + shorthand + "' or '" + side_a + "'/'" +
                          side_b + "', not both");
    }
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = {
        {"antennas", "--antennas", "128", KeyKind::Value,
         "elements in both the transmit and receive array"},
        {"tx_antennas", "--tx-antennas", "(antennas)", KeyKind::Value,
         "transmit array elements; excludes 'antennas'"},
        {"rx_antennas", "--rx-antennas", "(antennas)", KeyKind::Value,
         "receive array elements; excludes 'antennas'"},
        {"spacing", "--spacing", "0.5", KeyKind::Value,
         "element spacing over wavelength for both arrays"},
        {"clusters", "--clusters", "10", KeyKind::Value, "scattering clusters per channel"},
        {"rays", "--rays", "10", KeyKind::Value, "rays per cluster"},
        {"angle_spread_deg", "--angle-spread-deg", "2.5", KeyKind::Value,
         "angular standard deviation of rays about their cluster mean, degrees"},
        {"power_profile", "--power-profile", "exp07", KeyKind::Value,
         "cluster power profile: uniform or exp07"},
        {"aod_start_deg", "--aod-start-deg", "0", KeyKind::Value,
         "start of the departure mean-angle range, degrees"},
        {"aod_width_deg", "--aod-width-deg", "360", KeyKind::Value,
         "width of the departure mean-angle range, degrees"},
        {"aoa_start_deg", "--aoa-start-deg", "random", KeyKind::Value,
         "start of the arrival sector in degrees, or 'random' for a fresh draw per channel"},
        {"aoa_width_deg", "--aoa-width-deg", "60", KeyKind::Value,
         "width of the arrival sector, degrees"},
        {"bits", "--bits", "6", KeyKind::Value,
         "quantization bits for both codebooks (2^bits angles each)"},
        {"bits_tx", "--bits-tx", "(bits)", KeyKind::Value,
         "transmit codebook bits; excludes 'bits'"},
        {"bits_rx", "--bits-rx", "(bits)", KeyKind::Value,
         "receive codebook bits; excludes 'bits'"},
        {"dedupe_codebook", "--dedupe-codebook", "false", KeyKind::Switch,
         "collapse codebook entries that alias to the same beam"},
        {"streams", "--streams", "4", KeyKind::Value, "data streams (equals RF chains per side)"},
        {"rf_chains", "--rf-chains", "(streams)", KeyKind::Value,
         "RF chains per side; must equal 'streams' when both are set"},
        {"algorithms", "--algorithms", "joint,greedy_no_deflation,full_digital", KeyKind::Value,
         "comma list drawn from joint, greedy_no_deflation, full_digital"},
        {"sweep", "--sweep", "snr", KeyKind::Value, "sweep axis: snr, antennas, or streams"},
        {"sweep_values", "--sweep-values", "(by axis)", KeyKind::Value,
         "comma list of grid points for antennas (16,32,64,128,256) or streams (1,2,4,8) sweeps; "
         "unused when sweep=snr"},
        {"snr_db", "--snr-db", "-20,-15,-10,-5,0,5,10,15,20", KeyKind::Value,
         "SNR grid in dB when sweep=snr; otherwise a single operating SNR (default 0)"},
        {"trials", "--trials", "500", KeyKind::Value, "Monte-Carlo trials per sweep point"},
        {"seed", "--seed", "1", KeyKind::Value, "base seed for the per-trial random streams"},
        {"workers", "--workers", "0", KeyKind::Value,
         "worker threads; 0 means one per hardware thread"},
        {"timing", "--timing", "false", KeyKind::Switch,
         "record per-trial wall time in elapsed_s (off keeps outputs machine-independent)"},
    };
    return keys;
}

void RawConfig::set(const std::string& key, std::string value) {
    const auto& keys = config_keys();
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const ConfigKey& k) { return key == k.key; });
    if (!known) {
        throw ConfigError("unknown config key '" + key + "'");
    }
    values_[key] = std::move(value);
}

const std::string* RawConfig::find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

void RawConfig::merge_overrides(const RawConfig& other) {
    for (const auto& [key, value] : other.values_) {
        values_[key] = value;
    }
}

RawConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    RawConfig raw;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": empty key");
        }
        try {
            raw.set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return raw;
}

Algorithm parse_algorithm_token(const std::string& token) {
    if (token == "joint") return Algorithm::Joint;
    if (token == "greedy_no_deflation") return Algorithm::GreedyNoDeflation;
    if (token == "full_digital") return Algorithm::FullDigital;
    throw ConfigError("unknown algorithm '" + token +
                      "' (expected joint, greedy_no_deflation, or full_digital)");
}

SweepAxis parse_sweep_axis_token(const std::string& token) {
    if (token == "snr") return SweepAxis::SnrDb;
    if (token == "antennas") return SweepAxis::NumAntennas;
    if (token == "streams") return SweepAxis::NumStreams;
    throw ConfigError("unknown sweep axis '" + token + "' (expected snr, antennas, or streams)");
}

ExperimentConfig resolve_experiment_config(const RawConfig& raw) {
    ExperimentConfig cfg;

    reject_shorthand_mix(raw, "antennas", "tx_antennas", "rx_antennas");
    const int antennas = get_int(raw, "antennas", 128);
    const int tx = get_int(raw, "tx_antennas", antennas);
    const int rx = get_int(raw, "rx_antennas", antennas);
    require_positive(tx, "tx_antennas");
    require_positive(rx, "rx_antennas");

    const double spacing = get_real(raw, "spacing", 0.5);
    if (!(spacing > 0.0)) {
        throw ConfigError("'spacing' must be > 0");
    }
    cfg.channel.tx = ArrayConfig{tx, spacing};
    cfg.channel.rx = ArrayConfig{rx, spacing};

    cfg.channel.n_clusters = get_int(raw, "clusters", 10);
    cfg.channel.n_rays = get_int(raw, "rays", 10);
    require_positive(cfg.channel.n_clusters, "clusters");
    require_positive(cfg.channel.n_rays, "rays");

    const double spread_deg = get_real(raw, "angle_spread_deg", 2.5);
    if (spread_deg < 0.0) {
        throw ConfigError("'angle_spread_deg' must be >= 0");
    }
    cfg.channel.angle_spread_rad = spread_deg * kDegToRad;

    if (const std::string* profile = raw.find("power_profile")) {
        if (*profile == "uniform") {
            cfg.channel.power_profile = PowerProfile::Uniform;
        } else if (*profile == "exp07") {
            cfg.channel.power_profile = PowerProfile::Exponential07;
        } else {
            throw ConfigError("unknown power_profile '" + *profile +
                              "' (expected uniform or exp07)");
        }
    }

    const double aod_start = get_real(raw, "aod_start_deg", 0.0);
    const double aod_width = get_real(raw, "aod_width_deg", 360.0);
    if (!(aod_width > 0.0) || aod_width > 360.0) {
        throw ConfigError("'aod_width_deg' must be in (0, 360]");
    }
    cfg.channel.aod_mean_range = AngleInterval{aod_start * kDegToRad, aod_width * kDegToRad};

    const double aoa_width = get_real(raw, "aoa_width_deg", 60.0);
    if (!(aoa_width > 0.0) || aoa_width > 360.0) {
        throw ConfigError("'aoa_width_deg' must be in (0, 360]");
    }
    cfg.channel.aoa_sector_width = aoa_width * kDegToRad;
    cfg.channel.aoa_sector_start.reset();
    if (const std::string* start = raw.find("aoa_start_deg")) {
        if (*start != "random") {
            cfg.channel.aoa_sector_start = parse_real(*start, "aoa_start_deg") * kDegToRad;
        }
    }

    reject_shorthand_mix(raw, "bits", "bits_tx", "bits_rx");
    const int bits = get_int(raw, "bits", 6);
    cfg.bits_tx = get_int(raw, "bits_tx", bits);
    cfg.bits_rx = get_int(raw, "bits_rx", bits);
    for (const auto& [value, key] :
         {std::pair{cfg.bits_tx, "bits_tx"}, std::pair{cfg.bits_rx, "bits_rx"}}) {
        if (value < 1 || value > 16) {
            throw ConfigError(std::string("'") + key + "' must be in [1, 16]");
        }
    }
    cfg.dedupe_codebook = get_bool(raw, "dedupe_codebook", false);

    const std::string* streams_text = raw.find("streams");
    const std::string* chains_text = raw.find("rf_chains");
    int streams = streams_text ? get_int(raw, "streams", 4) : 4;
    if (chains_text) {
        const int chains = get_int(raw, "rf_chains", streams);
        if (streams_text && chains != streams) {
            throw ConfigError("'rf_chains' must equal 'streams' (one RF chain per stream)");
        }
        streams = chains;
    }
    require_positive(streams, "streams");
    cfg.n_streams = streams;

    if (const std::string* algs = raw.find("algorithms")) {
        cfg.algorithms.clear();
        for (const auto& token : split_list(*algs)) {
            const Algorithm a = parse_algorithm_token(token);
            if (std::find(cfg.algorithms.begin(), cfg.algorithms.end(), a) ==
                cfg.algorithms.end()) {
                cfg.algorithms.push_back(a);
            }
        }
        if (cfg.algorithms.empty()) {
            throw ConfigError("'algorithms' must name at least one algorithm");
        }
    }

    cfg.sweep_axis = SweepAxis::SnrDb;
    if (const std::string* axis = raw.find("sweep")) {
        cfg.sweep_axis = parse_sweep_axis_token(*axis);
    }

    const std::string* sweep_values_text = raw.find("sweep_values");
    const std::string* snr_text = raw.find("snr_db");
    if (cfg.sweep_axis == SweepAxis::SnrDb) {
        if (sweep_values_text) {
            throw ConfigError(
                "'sweep_values' applies to antennas/streams sweeps; the SNR grid is 'snr_db'");
        }
        cfg.sweep_values = snr_text ? parse_real_list(*snr_text, "snr_db")
                                    : std::vector<double>{-20, -15, -10, -5, 0, 5, 10, 15, 20};
        check_strictly_increasing(cfg.sweep_values, "snr_db");
        cfg.snr_db = 0.0;
    } else {
        std::vector<double> snr{0.0};
        if (snr_text) {
            snr = parse_real_list(*snr_text, "snr_db");
            if (snr.size() != 1) {
                throw ConfigError("'snr_db' must be a single value unless sweep=snr");
            }
        }
        cfg.snr_db = snr.front();
        if (sweep_values_text) {
            cfg.sweep_values = parse_real_list(*sweep_values_text, "sweep_values");
        } else if (cfg.sweep_axis == SweepAxis::NumAntennas) {
            cfg.sweep_values = {16, 32, 64, 128, 256};
        } else {
            cfg.sweep_values = {1, 2, 4, 8};
        }
        check_strictly_increasing(cfg.sweep_values, "sweep_values");
        for (double v : cfg.sweep_values) {
            if (v < 1.0 || v != std::floor(v)) {
                throw ConfigError("'sweep_values' must be positive integers for this axis");
            }
        }
        if (cfg.sweep_axis == SweepAxis::NumAntennas) {
            for (double v : cfg.sweep_values) {
                if (static_cast<int>(v) < cfg.n_streams) {
                    throw ConfigError("antenna sweep values must be >= streams");
                }
            }
        } else {
            const int cap = std::min(tx, rx);
            for (double v : cfg.sweep_values) {
                if (static_cast<int>(v) > cap) {
                    throw ConfigError("stream sweep values must be <= min(tx, rx) antennas");
                }
            }
        }
    }
    if (cfg.sweep_axis != SweepAxis::NumStreams && cfg.n_streams > std::min(tx, rx)) {
        throw ConfigError("'streams' must be <= min(tx, rx) antennas");
    }

    cfg.trials = get_int(raw, "trials", 500);
    if (cfg.trials < 1) {
        throw ConfigError("'trials' must be >= 1");
    }
    if (const std::string* seed = raw.find("seed")) {
        cfg.base_seed = parse_uint64(*seed, "seed");
    }
    cfg.workers = get_int(raw, "workers", 0);
    if (cfg.workers < 0) {
        throw ConfigError("'workers' must be >= 0");
    }
    cfg.record_timing = get_bool(raw, "timing", false);
    return cfg;
}

double resolve_single_snr_db(const RawConfig& raw) {
    const std::string* text = raw.find("snr_db");
    if (!text) return 0.0;
    const auto values = parse_real_list(*text, "snr_db");
    if (values.size() != 1) {
        throw ConfigError("'snr_db' must be a single value here");
    }
    return values.front();
}

}  // namespace mmbeam
