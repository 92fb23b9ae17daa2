#ifndef IWAVE_CONFIG_HPP
#define IWAVE_CONFIG_HPP

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "iwave/asymptotics.hpp"
#include "iwave/dynamics.hpp"
#include "iwave/impulse.hpp"
#include "iwave/manifold.hpp"

namespace iwave {

using Json = nlohmann::ordered_json;

// A fully resolved scenario: manifold, profile, net, data, and run
// parameters. Built from a JSON config file plus dotted-path overrides.
struct ScenarioConfig {
  std::string scenario = "scenario";
  std::shared_ptr<const ChartManifold> manifold;
  std::vector<std::string> coords;
  WaveProfile profile;
  std::string net_name = "bump";
  GeodesicData data;
  double T = 1.0;
  std::vector<double> eps_grid;   // one entry for single-eps commands
  IntegratorConfig integrator;
  std::vector<double> v_sample_points;
  struct Phi {
    std::string expr;
    double lo, hi;
  };
  std::vector<Phi> test_functions;
  int stability_q = 2;
  unsigned seed = 1;
  std::string out_dir = "out";

  Json resolved;       // the fully resolved config, embedded in reports
  std::string config_hash;

  DeltaNet net() const { return make_net(net_name); }
  std::vector<TestFunction> phis() const;
};

// Parses and validates; throws ConfigError naming the offending key.
ScenarioConfig load_config(const Json& j);
ScenarioConfig load_config_file(const std::string& path,
                                const std::vector<std::string>& overrides = {});

// "start:stop:count" geometric grid spec.
std::vector<double> parse_eps_grid_spec(const std::string& spec);

// FNV-1a hash of the canonical JSON dump.
std::string hash_json(const Json& j);

}  // namespace iwave

#endif
