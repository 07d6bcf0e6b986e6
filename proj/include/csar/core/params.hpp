#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "csar/core/error.hpp"

namespace csar {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s, exact
inline constexpr double kPi = 3.14159265358979323846;

// Stripmap system constants. All values in SI units.
struct RadarParams {
  double slant_range_center = 0.0;  // m
  double velocity = 0.0;            // m/s
  double squint = 0.0;              // rad
  double carrier_freq = 0.0;        // Hz
  double prf = 0.0;                 // Hz
  double range_fm_rate = 0.0;       // Hz/s
  double pulse_duration = 0.0;      // s
  double range_sample_rate = 0.0;   // Hz
  std::size_t n_azimuth = 0;
  std::size_t n_range = 0;

  // Pulses inside the synthetic aperture (rectangular azimuth weighting).
  // Zero until set; presets and parse_params fill it from azimuth_tbp_samples().
  std::size_t synthetic_aperture_samples = 0;
  // Half the number of taps of the truncated sinc used for RCMC.
  std::size_t rcmc_halfwidth = 4;

  // Samples covered by one transmitted pulse.
  std::size_t pulse_samples() const {
    return static_cast<std::size_t>(std::llround(pulse_duration * range_sample_rate));
  }
};

// Checks the invariants that do not depend on the focusing model.
// Squint is range-checked here only; derive_geometry() rejects non-zero squint.
inline void validate(const RadarParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidParams(std::string(name) + " must be finite and strictly positive");
    }
  };
  positive(p.slant_range_center, "slant_range_center");
  positive(p.velocity, "velocity");
  positive(p.carrier_freq, "carrier_freq");
  positive(p.prf, "prf");
  positive(p.range_fm_rate, "range_fm_rate");
  positive(p.pulse_duration, "pulse_duration");
  positive(p.range_sample_rate, "range_sample_rate");
  if (!std::isfinite(p.squint)) throw InvalidParams("squint must be finite");
  if (p.n_azimuth == 0 || p.n_range == 0) throw InvalidParams("grid counts must be positive");
  if (p.synthetic_aperture_samples == 0) {
    throw InvalidParams("synthetic_aperture_samples must be positive");
  }
  if (p.rcmc_halfwidth == 0) throw InvalidParams("rcmc_halfwidth must be positive");
  if (p.pulse_duration * p.range_sample_rate < 2.0) {
    throw InvalidParams("pulse must span at least two range samples");
  }
}

// Aperture length at which the azimuth time-bandwidth product equals the pulse count,
// u = F_a^2 / K_a(R_c), so that the Doppler band fills the PRF.
inline std::size_t azimuth_tbp_samples(const RadarParams& p) {
  const double wavelength = kSpeedOfLight / p.carrier_freq;
  const double ka = 2.0 * p.velocity * p.velocity / (wavelength * p.slant_range_center);
  const double u = p.prf * p.prf / ka;
  if (!(u >= 1.0) || !std::isfinite(u)) throw InvalidParams("azimuth time-bandwidth product below one pulse");
  return static_cast<std::size_t>(std::llround(u));
}

// Table values used for the point-target simulations.
inline RadarParams simulation_preset() {
  RadarParams p;
  p.slant_range_center = 20e3;
  p.velocity = 350.0;
  p.squint = 0.0;
  p.carrier_freq = 5000e6;
  p.prf = 175.0;
  p.range_fm_rate = 37.5e12;  // 37.5 MHz/us
  p.pulse_duration = 2e-6;
  p.range_sample_rate = 75e6;
  p.n_azimuth = 180;
  p.n_range = 180;
  p.synthetic_aperture_samples = azimuth_tbp_samples(p);
  return p;
}

// RADARSAT-1 column. Ships with squint 0.06 rad, which the focusing model rejects.
inline RadarParams radarsat1_preset() {
  RadarParams p;
  p.slant_range_center = 1016.7e3;
  p.velocity = 7062.0;
  p.squint = 0.06;
  p.carrier_freq = 5300e6;
  p.prf = 1256.98;
  p.range_fm_rate = 0.72135e12;
  p.pulse_duration = 41.75e-6;
  p.range_sample_rate = 32.317e6;
  p.n_azimuth = 1024;
  p.n_range = 1024;
  p.synthetic_aperture_samples = azimuth_tbp_samples(p);
  return p;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw FormatError("config key '" + key + "': not a number: '" + v + "'");
  }
  if (pos != v.size()) throw FormatError("config key '" + key + "': trailing text in '" + v + "'");
  return out;
}

inline std::size_t parse_count(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d < 0.0 || d != std::floor(d) || d > 1e12) {
    throw FormatError("config key '" + key + "': expected a non-negative integer, got '" + v + "'");
  }
  return static_cast<std::size_t>(d);
}

}  // namespace detail

// Parses a flat `key = value` file. '#' starts a comment. Every RadarParams field
// except synthetic_aperture_samples and rcmc_halfwidth is required; a missing
// synthetic_aperture_samples defaults to azimuth_tbp_samples().
inline RadarParams parse_params(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(lineno) + ": missing '='");
    }
    auto key = detail::trim(line.substr(0, eq));
    auto value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw FormatError("config line " + std::to_string(lineno) + ": empty key or value");
    }
    if (!kv.emplace(key, value).second) throw FormatError("config key '" + key + "' repeated");
  }

  RadarParams p;
  auto take = [&](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw FormatError(std::string("config key '") + key + "' missing");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  p.slant_range_center = detail::parse_double("slant_range_center", take("slant_range_center"));
  p.velocity = detail::parse_double("velocity", take("velocity"));
  p.squint = detail::parse_double("squint", take("squint"));
  p.carrier_freq = detail::parse_double("carrier_freq", take("carrier_freq"));
  p.prf = detail::parse_double("prf", take("prf"));
  p.range_fm_rate = detail::parse_double("range_fm_rate", take("range_fm_rate"));
  p.pulse_duration = detail::parse_double("pulse_duration", take("pulse_duration"));
  p.range_sample_rate = detail::parse_double("range_sample_rate", take("range_sample_rate"));
  p.n_azimuth = detail::parse_count("n_azimuth", take("n_azimuth"));
  p.n_range = detail::parse_count("n_range", take("n_range"));
  if (kv.count("synthetic_aperture_samples")) {
    p.synthetic_aperture_samples =
        detail::parse_count("synthetic_aperture_samples", take("synthetic_aperture_samples"));
  } else if (p.prf > 0.0 && p.velocity > 0.0 && p.carrier_freq > 0.0 && p.slant_range_center > 0.0) {
    p.synthetic_aperture_samples = azimuth_tbp_samples(p);
  }
  if (kv.count("rcmc_halfwidth")) {
    p.rcmc_halfwidth = detail::parse_count("rcmc_halfwidth", take("rcmc_halfwidth"));
  }
  if (!kv.empty()) throw FormatError("unknown config key '" + kv.begin()->first + "'");
  validate(p);
  return p;
}

inline RadarParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config '" + path + "'");
  return parse_params(in);
}

inline void write_params(std::ostream& out, const RadarParams& p) {
  std::ostringstream s;
  s.precision(17);
  s << "slant_range_center = " << p.slant_range_center << '\n'
    << "velocity = " << p.velocity << '\n'
    << "squint = " << p.squint << '\n'
    << "carrier_freq = " << p.carrier_freq << '\n'
    << "prf = " << p.prf << '\n'
    << "range_fm_rate = " << p.range_fm_rate << '\n'
    << "pulse_duration = " << p.pulse_duration << '\n'
    << "range_sample_rate = " << p.range_sample_rate << '\n'
    << "n_azimuth = " << p.n_azimuth << '\n'
    << "n_range = " << p.n_range << '\n'
    << "synthetic_aperture_samples = " << p.synthetic_aperture_samples << '\n'
    << "rcmc_halfwidth = " << p.rcmc_halfwidth << '\n';
  out << s.str();
}

}  // namespace csar
