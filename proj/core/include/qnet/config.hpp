#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qnet/netgen.hpp"
#include "qnet/region.hpp"
#include "qnet/repeater.hpp"

namespace qnet {

// Which layer the statistics/fitting/rates pipeline analyzes. Both layers
// are always generated; the photonic overlay is the default subject, the
// fiber layer is where the large-sweep path-scaling tables live (the
// overlay is subcritical at those densities).
enum class AnalysisLayer { photonic, fiber };

const char* to_string(AnalysisLayer layer);
AnalysisLayer analysis_layer_from_string(const std::string& s);  // ConfigError

struct RegionSpec {
  RegionKind kind = RegionKind::disk;
  double radius_km = 0.0;     // disk with a fixed radius
  double rho_per_km2 = 0.0;   // disk sized per N so the density stays fixed
  std::string file;           // polygons, resolved against the config directory
};

// Resolves the spec for a given node count. Fixed-radius disks and polygon
// regions ignore n; density-pinned disks use R = sqrt(n / (pi rho)).
Region region_for(const RegionSpec& spec, int n);

// One run configuration, shared by every subcommand. JSON schema:
//
// {
//   "region": {"kind": "disk", "radius_km": 1646.4}
//           | {"kind": "disk", "rho_per_km2": 1.0e-5}
//           | {"kind": "polygons", "file": "data/brazil_coarse.geojson"},
//   "n_values": [300, 500, 800],
//   "samples": 50,
//   "base_seed": 1,
//   "modes": ["hops", "km"],
//   "analysis_layer": "photonic",
//   "net": {"beta": 1.0, "char_length_km": 226.0,
//           "gamma_db_per_km": 0.2, "photons_per_link": 1000},
//   "repeater": {"signal_speed_m_per_s": 2.0e8},
//   "rates": true,
//   "num_bins": 0,
//   "out_dir": "out"
// }
//
// Only "region" and "n_values" are required; everything else defaults as
// above. Unknown keys are rejected.
struct RunConfig {
  RegionSpec region;
  std::vector<int> n_values;
  int samples = 1;
  uint64_t base_seed = 1;
  bool mode_hops = true;
  bool mode_km = true;
  AnalysisLayer analysis_layer = AnalysisLayer::photonic;
  NetParams net;
  RepeaterParams repeater;
  bool rates = true;
  int num_bins = 0;  // 0 = default_bin_count rule
  std::string out_dir = "out";
  int workers = 1;

  void validate() const;  // throws ConfigError
};

RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir);
RunConfig load_run_config(const std::string& path);

// Resolved-config echo used inside manifests; deliberately excludes
// workers so reruns with different parallelism stay byte-identical.
std::string run_config_to_json(const RunConfig& config);

}  // namespace qnet
