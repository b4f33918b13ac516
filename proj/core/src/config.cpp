#include "qnet/config.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qnet/csvio.hpp"
#include "qnet/errors.hpp"

namespace qnet {

using nlohmann::json;

const char* to_string(AnalysisLayer layer) {
  return layer == AnalysisLayer::photonic ? "photonic" : "fiber";
}

AnalysisLayer analysis_layer_from_string(const std::string& s) {
  if (s == "photonic") return AnalysisLayer::photonic;
  if (s == "fiber") return AnalysisLayer::fiber;
  throw ConfigError("unknown analysis_layer '" + s + "' (expected 'photonic' or 'fiber')");
}

void RunConfig::validate() const {
  if (region.kind == RegionKind::disk) {
    const bool has_radius =
        region.radius_km > 0.0 && std::isfinite(region.radius_km);
    const bool has_rho =
        region.rho_per_km2 > 0.0 && std::isfinite(region.rho_per_km2);
    if (has_radius == has_rho) {
      throw ConfigError(
          "config: disk region needs exactly one of radius_km or rho_per_km2, "
          "positive");
    }
  } else if (region.file.empty()) {
    throw ConfigError("config: polygon region needs a file");
  } else if (!std::filesystem::exists(region.file)) {
    throw ConfigError("config: region file not found: " + region.file);
  }
  if (n_values.empty()) throw ConfigError("config: n_values must be non-empty");
  for (const int n : n_values) {
    if (n < 1) throw ConfigError("config: every n must be >= 1");
  }
  if (samples < 1) throw ConfigError("config: samples must be >= 1");
  if (!mode_hops && !mode_km) throw ConfigError("config: at least one mode required");
  if (num_bins < 0) throw ConfigError("config: num_bins must be >= 0");
  if (workers < 1) throw ConfigError("config: workers must be >= 1");
  if (!(repeater.signal_speed_m_per_s > 0.0)) {
    throw ConfigError("config: signal_speed_m_per_s must be positive");
  }
  if (repeater.gamma_db_per_km < 0.0) {
    throw ConfigError("config: repeater gamma_db_per_km must be non-negative");
  }
  net.validate();
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError("config: " + what); }

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (known.find(key) == known.end()) {
      bad("unknown key '" + key + "' in " + where);
    }
  }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    bad("missing numeric '" + key + "' in " + where);
  }
  return obj[key].get<double>();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    bad(std::string("JSON parse error: ") + e.what());
  }
  if (!root.is_object()) bad("top level must be an object");
  reject_unknown_keys(root,
                      {"region", "n_values", "samples", "base_seed", "modes",
                       "analysis_layer", "net", "repeater", "rates", "num_bins",
                       "out_dir", "workers"},
                      "config");

  RunConfig cfg;

  if (!root.contains("region") || !root["region"].is_object()) {
    bad("missing 'region' object");
  }
  const json& region = root["region"];
  reject_unknown_keys(region, {"kind", "radius_km", "rho_per_km2", "file"},
                      "region");
  const std::string kind = region.value("kind", "");
  if (kind == "disk") {
    cfg.region.kind = RegionKind::disk;
    if (region.contains("radius_km") == region.contains("rho_per_km2")) {
      bad("disk region needs exactly one of radius_km or rho_per_km2");
    }
    if (region.contains("radius_km")) {
      cfg.region.radius_km = require_number(region, "radius_km", "region");
    } else {
      cfg.region.rho_per_km2 = require_number(region, "rho_per_km2", "region");
    }
  } else if (kind == "polygons") {
    cfg.region.kind = RegionKind::polygons;
    if (!region.contains("file") || !region["file"].is_string()) {
      bad("polygon region needs a 'file' string");
    }
    std::filesystem::path p = region["file"].get<std::string>();
    if (p.is_relative() && !base_dir.empty()) {
      p = std::filesystem::path(base_dir) / p;
    }
    cfg.region.file = p.lexically_normal().string();
  } else {
    bad("region.kind must be 'disk' or 'polygons'");
  }

  if (!root.contains("n_values") || !root["n_values"].is_array() ||
      root["n_values"].empty()) {
    bad("missing non-empty 'n_values' array");
  }
  for (const json& v : root["n_values"]) {
    if (!v.is_number_integer()) bad("n_values must be integers");
    cfg.n_values.push_back(v.get<int>());
  }

  if (root.contains("samples")) {
    if (!root["samples"].is_number_integer()) bad("'samples' must be an integer");
    cfg.samples = root["samples"].get<int>();
  }
  if (root.contains("base_seed")) {
    if (!root["base_seed"].is_number_unsigned() && !root["base_seed"].is_number_integer()) {
      bad("'base_seed' must be an integer");
    }
    cfg.base_seed = root["base_seed"].get<uint64_t>();
  }
  if (root.contains("modes")) {
    if (!root["modes"].is_array() || root["modes"].empty()) {
      bad("'modes' must be a non-empty array");
    }
    cfg.mode_hops = cfg.mode_km = false;
    for (const json& m : root["modes"]) {
      if (!m.is_string()) bad("'modes' entries must be strings");
      const PathMode mode = path_mode_from_string(m.get<std::string>());
      (mode == PathMode::hops ? cfg.mode_hops : cfg.mode_km) = true;
    }
  }
  if (root.contains("analysis_layer")) {
    if (!root["analysis_layer"].is_string()) bad("'analysis_layer' must be a string");
    cfg.analysis_layer = analysis_layer_from_string(root["analysis_layer"].get<std::string>());
  }
  if (root.contains("net")) {
    const json& net = root["net"];
    if (!net.is_object()) bad("'net' must be an object");
    reject_unknown_keys(net, {"beta", "char_length_km", "gamma_db_per_km", "photons_per_link"},
                        "net");
    if (net.contains("beta")) cfg.net.beta = require_number(net, "beta", "net");
    if (net.contains("char_length_km")) {
      cfg.net.char_length_km = require_number(net, "char_length_km", "net");
    }
    if (net.contains("gamma_db_per_km")) {
      cfg.net.gamma_db_per_km = require_number(net, "gamma_db_per_km", "net");
      cfg.repeater.gamma_db_per_km = cfg.net.gamma_db_per_km;
    }
    if (net.contains("photons_per_link")) {
      if (!net["photons_per_link"].is_number_integer()) {
        bad("'photons_per_link' must be an integer");
      }
      cfg.net.photons_per_link = net["photons_per_link"].get<int>();
    }
  }
  if (root.contains("repeater")) {
    const json& rep = root["repeater"];
    if (!rep.is_object()) bad("'repeater' must be an object");
    reject_unknown_keys(rep, {"signal_speed_m_per_s", "gamma_db_per_km"}, "repeater");
    if (rep.contains("signal_speed_m_per_s")) {
      cfg.repeater.signal_speed_m_per_s =
          require_number(rep, "signal_speed_m_per_s", "repeater");
    }
    if (rep.contains("gamma_db_per_km")) {
      cfg.repeater.gamma_db_per_km = require_number(rep, "gamma_db_per_km", "repeater");
    }
  }
  if (root.contains("rates")) {
    if (!root["rates"].is_boolean()) bad("'rates' must be a boolean");
    cfg.rates = root["rates"].get<bool>();
  }
  if (root.contains("num_bins")) {
    if (!root["num_bins"].is_number_integer()) bad("'num_bins' must be an integer");
    cfg.num_bins = root["num_bins"].get<int>();
  }
  if (root.contains("out_dir")) {
    if (!root["out_dir"].is_string()) bad("'out_dir' must be a string");
    cfg.out_dir = root["out_dir"].get<std::string>();
  }
  if (root.contains("workers")) {
    if (!root["workers"].is_number_integer()) bad("'workers' must be an integer");
    cfg.workers = root["workers"].get<int>();
  }

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), std::filesystem::path(path).parent_path().string());
}

std::string run_config_to_json(const RunConfig& config) {
  json root;
  if (config.region.kind == RegionKind::disk) {
    if (config.region.rho_per_km2 > 0.0) {
      root["region"] = {{"kind", "disk"},
                        {"rho_per_km2", config.region.rho_per_km2}};
    } else {
      root["region"] = {{"kind", "disk"}, {"radius_km", config.region.radius_km}};
    }
  } else {
    root["region"] = {{"kind", "polygons"}, {"file", config.region.file}};
  }
  root["n_values"] = config.n_values;
  root["samples"] = config.samples;
  root["base_seed"] = config.base_seed;
  json modes = json::array();
  if (config.mode_hops) modes.push_back("hops");
  if (config.mode_km) modes.push_back("km");
  root["modes"] = modes;
  root["analysis_layer"] = to_string(config.analysis_layer);
  root["net"] = {{"beta", config.net.beta},
                 {"char_length_km", config.net.char_length_km},
                 {"gamma_db_per_km", config.net.gamma_db_per_km},
                 {"photons_per_link", config.net.photons_per_link}};
  root["repeater"] = {{"signal_speed_m_per_s", config.repeater.signal_speed_m_per_s},
                      {"gamma_db_per_km", config.repeater.gamma_db_per_km}};
  root["rates"] = config.rates;
  root["num_bins"] = config.num_bins;
  root["out_dir"] = config.out_dir;
  return root.dump(2);
}

Region region_for(const RegionSpec& spec, int n) {
  if (spec.kind == RegionKind::polygons) return load_region_file(spec.file);
  if (spec.rho_per_km2 > 0.0) {
    if (n < 1) throw ConfigError("config: density-pinned disk needs n >= 1");
    return make_disk_region(std::sqrt(n / (std::numbers::pi * spec.rho_per_km2)));
  }
  return make_disk_region(spec.radius_km);
}

}  // namespace qnet
