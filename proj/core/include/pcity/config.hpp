#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "pcity/city.hpp"

namespace pcity {

/// Flat key-value city configuration.
///
///     # comment
///     n = 8
///     T = 30
///     g = 0.3333333333333333
///     Y = 24000
///     a = 0.8
///     alpha = 0.25
///     beta = 0.5
///     gamma = 0.25
///     K = 100
///     Lambda = 200      # optional
///     mu = 1            # optional, default 1
///
/// `g` also accepts a fraction such as `1/3`. Unknown keys, duplicate keys and
/// missing required keys are ValidationErrors naming the key.
CityParams parse_config(std::istream& in);
CityParams parse_config_text(const std::string& text);
CityParams load_config(const std::filesystem::path& path);

/// Inverse of parse_config (round-trips exactly via %.17g).
std::string format_config(const CityParams& params);

}  // namespace pcity
