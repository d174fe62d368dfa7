#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mmbeam/experiment.hpp"

namespace mmbeam {

enum class KeyKind { Value, Switch };

// One settable knob. `key` is the config-file spelling, `flag` the CLI
// spelling; the table drives both parsers and the --help doc-sync test.
struct ConfigKey {
    const char* key;
    const char* flag;
    const char* default_text;
    KeyKind kind;
    const char* help;
};

const std::vector<ConfigKey>& config_keys();

// Raw key -> text pairs from a config file and/or CLI overrides. Only
// explicitly set keys are present; defaults are applied at resolve time.
class RawConfig {
  public:
    void set(const std::string& key, std::string value);
    const std::string* find(const std::string& key) const;
    void merge_overrides(const RawConfig& other);

  private:
    std::map<std::string, std::string> values_;
};

RawConfig parse_config_file(const std::filesystem::path& path);

Algorithm parse_algorithm_token(const std::string& token);
SweepAxis parse_sweep_axis_token(const std::string& token);

ExperimentConfig resolve_experiment_config(const RawConfig& raw);

// Single operating SNR for one-shot runs: `snr_db` must hold at most one
// value; unset means 0 dB.
double resolve_single_snr_db(const RawConfig& raw);

}  // namespace mmbeam
