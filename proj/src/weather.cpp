// Copyright 2026 the StormBench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stormbench/weather.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stormbench/parallel.hpp"
#include "stormbench/rng.hpp"

namespace stormbench {

namespace {

// Stream tags keep per-point and injection randomness independent.
constexpr std::uint64_t kPointStream = 0x706F696E74ULL;
constexpr std::uint64_t kInjectStream = 0x696E6A656374ULL;

// MOR is the range at which contrast drops to 5%: alpha = -ln(0.05) / MOR.
constexpr double kMorToExtinction = 2.995732273553991;

struct PointBuffer {
  std::vector<Vec3> xyz;
  std::vector<double> intensity;

  void push(const Vec3& p, double i) {
    xyz.push_back(p);
    intensity.push_back(std::clamp(i, 0.0, 1.0));
  }

  PointCloud to_cloud(const PointCloud& like) const {
    PointCloud out;
    out.frame_index = like.frame_index;
    out.sensor_origin = like.sensor_origin;
    const Eigen::Index n = static_cast<Eigen::Index>(xyz.size());
    out.xyz.resize(n, 3);
    out.intensity.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.xyz.row(i) = xyz[static_cast<std::size_t>(i)].transpose();
      out.intensity[i] = intensity[static_cast<std::size_t>(i)];
    }
    return out;
  }
};

void corrupt_fog(const PointCloud& cloud, const CorruptionConfig& cfg,
                 PointBuffer& out, CorruptionStats& stats) {
  const double alpha = kMorToExtinction / cfg.fog_mor;
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const Vec3 p = cloud.point(i);
    const Vec3 ray = p - cloud.sensor_origin;
    const double range = ray.norm();
    const double intensity = cloud.intensity[i];
    const double attenuated = intensity * std::exp(-2.0 * alpha * range);
    // "Lost" means the attenuation pushed the return across the detection
    // threshold; returns that were already below eps_det stay detectable.
    const bool lost = attenuated < cfg.eps_det && intensity >= cfg.eps_det;
    if (!lost) {
      out.push(p, attenuated);
      ++stats.retained;
      continue;
    }
    Rng rng(derive_seed(derive_seed(cfg.seed, kPointStream),
                        static_cast<std::uint64_t>(i)));
    if (rng.uniform() < cfg.p_scatter && range > cfg.r_min) {
      const double r = rng.uniform(cfg.r_min, std::min(range, cfg.r_halo));
      const Vec3 dir = ray / range;
      out.push(cloud.sensor_origin + r * dir,
               rng.uniform(0.0, cfg.halo_intensity_max));
      ++stats.scattered;
    } else {
      ++stats.dropped;
    }
  }
}

void corrupt_precipitation(const PointCloud& cloud, const CorruptionConfig& cfg,
                           PointBuffer& out, CorruptionStats& stats) {
  const double c_k =
      cfg.kind == WeatherKind::Rain ? cfg.c_rain : cfg.c_snow;
  const double alpha_p = c_k * std::pow(cfg.precip_rate, 0.6);
  const double jitter_std = cfg.jitter_per_rate * cfg.precip_rate;

  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    const Vec3 p = cloud.point(i);
    const Vec3 ray = p - cloud.sensor_origin;
    const double range = ray.norm();
    Rng rng(derive_seed(derive_seed(cfg.seed, kPointStream),
                        static_cast<std::uint64_t>(i)));
    // The loss coin is drawn before anything else so that, for a fixed
    // seed, the retained set shrinks pointwise as the rate grows.
    const double p_loss = 1.0 - std::exp(-2.0 * alpha_p * range);
    if (rng.uniform() < p_loss) {
      ++stats.dropped;
      continue;
    }
    Vec3 kept = p;
    if (range > 0.0) {
      kept += (ray / range) * (jitter_std * rng.normal());
    }
    out.push(kept, cloud.intensity[i]);
    ++stats.retained;
  }

  // Airborne scatter: expected count proportional to rate and cloud size,
  // each droplet placed on a randomly chosen existing ray near the sensor.
  Rng inject_rng(derive_seed(cfg.seed, kInjectStream));
  const double lambda =
      cfg.scatter_per_rate * cfg.precip_rate * static_cast<double>(cloud.size());
  const int n_inject = inject_rng.poisson(lambda);
  for (int j = 0; j < n_inject; ++j) {
    Rng rng(derive_seed(derive_seed(cfg.seed, kInjectStream + 1),
                        static_cast<std::uint64_t>(j)));
    const Eigen::Index host = static_cast<Eigen::Index>(
        rng.uniform_index(static_cast<std::uint64_t>(cloud.size())));
    const Vec3 ray = cloud.point(host) - cloud.sensor_origin;
    const double range = ray.norm();
    if (range <= 0.0) continue;
    const double lo = std::min(cfg.r_min, 0.5 * range);
    const double hi = std::min(range, cfg.r_halo);
    const double r = rng.uniform(lo, std::max(lo, hi));
    out.push(cloud.sensor_origin + (ray / range) * r,
             rng.uniform(0.0, cfg.halo_intensity_max));
    ++stats.injected;
  }
}

}  // namespace

WeatherKind weather_kind_from_string(const std::string& s) {
  if (s == "rain") return WeatherKind::Rain;
  if (s == "fog") return WeatherKind::Fog;
  if (s == "snow") return WeatherKind::Snow;
  throw Error("InvalidConfig", "unknown weather kind: " + s);
}

void CorruptionConfig::validate() const {
  if (level < kMinSeverity || level > kMaxSeverity)
    throw Error("InvalidConfig", "severity level must be in 1..5, got " +
                                     std::to_string(level));
  if (kind == WeatherKind::Fog) {
    if (!(fog_mor > 0.0))
      throw Error("InvalidConfig", "fog requires fog_mor > 0");
  } else {
    if (!(precip_rate >= 0.0) || !std::isfinite(precip_rate))
      throw Error("InvalidConfig", "rain/snow require precip_rate >= 0");
  }
  if (!(eps_det >= 0.0 && p_scatter >= 0.0 && p_scatter <= 1.0 &&
        r_min > 0.0 && r_halo >= r_min))
    throw Error("InvalidConfig", "bad fog model constants");
  if (!(c_rain >= 0.0 && c_snow >= 0.0 && jitter_per_rate >= 0.0 &&
        scatter_per_rate >= 0.0))
    throw Error("InvalidConfig", "bad precipitation model constants");
}

void SeverityTable::validate() const {
  for (int i = 1; i < 5; ++i) {
    if (!(fog_mor[i] < fog_mor[i - 1]))
      throw Error("InvalidConfig", "fog MOR table must strictly decrease");
    if (!(rain_rate[i] > rain_rate[i - 1]))
      throw Error("InvalidConfig", "rain rate table must strictly increase");
    if (!(snow_rate[i] > snow_rate[i - 1]))
      throw Error("InvalidConfig", "snow rate table must strictly increase");
  }
  if (!(fog_mor[4] > 0.0) || !(rain_rate[0] >= 0.0) || !(snow_rate[0] >= 0.0))
    throw Error("InvalidConfig", "severity parameters out of range");
}

SeverityTable SeverityTable::from_config(const ConfigFile& cfg) {
  SeverityTable table;
  for (int lv = 1; lv <= 5; ++lv) {
    const std::string suffix = "_" + std::to_string(lv);
    table.fog_mor[lv - 1] =
        cfg.get_double("severity.fog_mor" + suffix, table.fog_mor[lv - 1]);
    table.rain_rate[lv - 1] =
        cfg.get_double("severity.rain_rate" + suffix, table.rain_rate[lv - 1]);
    table.snow_rate[lv - 1] =
        cfg.get_double("severity.snow_rate" + suffix, table.snow_rate[lv - 1]);
  }
  CorruptionConfig& m = table.model;
  m.eps_det = cfg.get_double("model.eps_det", m.eps_det);
  m.p_scatter = cfg.get_double("model.p_scatter", m.p_scatter);
  m.r_min = cfg.get_double("model.r_min", m.r_min);
  m.r_halo = cfg.get_double("model.r_halo", m.r_halo);
  m.c_rain = cfg.get_double("model.c_rain", m.c_rain);
  m.c_snow = cfg.get_double("model.c_snow", m.c_snow);
  m.jitter_per_rate = cfg.get_double("model.jitter_per_rate", m.jitter_per_rate);
  m.scatter_per_rate =
      cfg.get_double("model.scatter_per_rate", m.scatter_per_rate);
  m.halo_intensity_max =
      cfg.get_double("model.halo_intensity_max", m.halo_intensity_max);
  table.validate();
  return table;
}

SeverityTable SeverityTable::load(const std::string& path) {
  return from_config(ConfigFile::load(path));
}

CorruptionConfig SeverityTable::config_for(WeatherKind kind, int level,
                                           std::uint64_t seed) const {
  if (level < kMinSeverity || level > kMaxSeverity)
    throw Error("InvalidConfig", "severity level must be in 1..5, got " +
                                     std::to_string(level));
  CorruptionConfig cfg = model;
  cfg.kind = kind;
  cfg.level = level;
  cfg.seed = seed;
  cfg.fog_mor = kind == WeatherKind::Fog ? fog_mor[level - 1] : 0.0;
  cfg.precip_rate = kind == WeatherKind::Rain   ? rain_rate[level - 1]
                    : kind == WeatherKind::Snow ? snow_rate[level - 1]
                                                : 0.0;
  cfg.validate();
  return cfg;
}

PointCloud corrupt_frame(const PointCloud& cloud, const CorruptionConfig& config,
                         CorruptionStats* stats) {
  if (cloud.empty())
    throw Error("EmptyCloud", "corrupt_frame requires a non-empty cloud");
  cloud.validate();
  config.validate();

  CorruptionStats local;
  local.input_points = cloud.size();
  PointBuffer out;
  out.xyz.reserve(static_cast<std::size_t>(cloud.size()));
  out.intensity.reserve(static_cast<std::size_t>(cloud.size()));

  if (config.kind == WeatherKind::Fog) {
    corrupt_fog(cloud, config, out, local);
  } else {
    corrupt_precipitation(cloud, config, out, local);
  }

  if (stats != nullptr) *stats = local;
  return out.to_cloud(cloud);
}

TrackingSequence corrupt_sequence(const TrackingSequence& seq, WeatherKind kind,
                                  int level, std::uint64_t global_seed,
                                  const SeverityTable& table) {
  seq.validate();
  table.validate();

  TrackingSequence out = seq;
  out.condition_tags.insert("weather:" + to_string(kind) + "-" +
                            std::to_string(level));
  const std::uint64_t seq_seed = derive_seed(global_seed, seq.sequence_id);
  parallel_for(seq.frames.size(), [&](std::size_t i) {
    const CorruptionConfig cfg = table.config_for(
        kind, level, derive_seed(seq_seed, static_cast<std::uint64_t>(i)));
    out.frames[i].cloud = corrupt_frame(seq.frames[i].cloud, cfg);
  });
  return out;
}

}  // namespace stormbench
