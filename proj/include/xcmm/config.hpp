// config.hpp — structured config documents (JSON) -> validated parameters

#pragma once

#include <iosfwd>
#include <string>

#include "xcmm/params.hpp"
#include "xcmm/sweep.hpp"

namespace xcmm {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what),
        key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct Config {
  SystemParams params;
  ProbeConfig probe;
  SweepSpec sweep;
};

/// Parses and validates a config document. Frequencies are ordinary Hz unless
/// the document sets "frequency_units": "angular"; either way the returned
/// bundle is angular (rad/s). Missing optional fields take the experiment
/// defaults. Unknown keys are a hard error naming the offending path.
Config load_config(const std::string& json_text);
Config load_config_file(const std::string& path);

/// The defaults document fully resolved (equivalent to loading "{}").
Config default_config();

/// Serializes a resolved bundle back to JSON with angular units; loading the
/// output reproduces the same rad/s values bit for bit.
std::string save_config(const Config& config);

}  // namespace xcmm
