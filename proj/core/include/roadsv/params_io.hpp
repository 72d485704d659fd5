#pragma once

#include "roadsv/heston.hpp"
#include "roadsv/sde.hpp"
#include "roadsv/seasonal.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace roadsv {

/// Everything a forecast run needs, addressable by dotted keys such as
/// `heston.theta`, `seasonal.amplitude`, `shock.enabled`, `forecast.n_sims`.
struct ModelConfig {
    HestonParams heston;
    SeasonalConfig seasonal;
    GompertzShockConfig shock;
    ForecastConfig forecast;

    void validate() const;
};

ModelConfig make_model_config(const EstimatedModel& estimate);

/// Sets one field. Values are decimal fractions; percent strings are rejected.
/// Throws ArgumentError naming the key when it is unknown or the value is invalid.
void apply_setting(ModelConfig& config, std::string_view key, std::string_view value);

/// Splits "key=value". Throws ArgumentError.
std::pair<std::string, std::string> split_assignment(std::string_view text);

/// Every settable key with its current value, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_entries(const ModelConfig& config);

/// Reads `key = value` lines; `#` starts a comment. Keys under `stats.`,
/// `seasonal_fit.` and `run.` are diagnostics or run metadata and are skipped,
/// so a run manifest can be read back as a parameter file. Throws ParseError for
/// malformed lines and ArgumentError (prefixed with the line) for bad keys or values.
ModelConfig read_params(std::istream& in, ModelConfig base = {});
ModelConfig read_params_file(const std::string& path, ModelConfig base = {});

/// Writes every key of `config`, followed by estimation diagnostics when given.
void write_params(std::ostream& out, const ModelConfig& config, const EstimatedModel* diagnostics = nullptr);

/// Shortest round-tripping decimal text, locale independent.
std::string format_number(double value);

} // namespace roadsv
