#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ndirac/kernel.hpp"
#include "ndirac/radial_graft.hpp"
#include "ndirac/torus.hpp"
#include "ndirac/variational.hpp"

namespace ndirac {

inline constexpr int kSchemaVersion = 1;

struct SweepConfig {
  std::vector<double> eps_factors{0.3, 0.2, 0.14, 0.1, 0.07};  // multiples of the cutoff radius
  std::vector<double> eps_list;  // absolute values; overrides eps_factors when non-empty
  double cutoff_radius = 1.4;
  double xi_factor = 15.0;
  int spectral_modes = 0;

  std::vector<double> eps_values() const;
  GraftOptions graft_options() const;
};

struct OutputConfig {
  std::string directory = "ndirac_out";
  std::vector<std::string> formats{"csv", "json"};
  bool wants(const std::string& f) const;
};

struct RunConfig {
  TorusSpec geometry = default_spec(4, 9);
  KernelSpec kernel;
  SolverConfig solver;
  SweepConfig sweep;
  OutputConfig output;
  std::uint64_t seed = 1;

  // Cross-field checks; throws ConfigError naming the field.
  void validate() const;
};

// Missing blocks take defaults, except geometry.spin_shift which must be given.
// Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

// FNV-1a 64 of the canonical (sorted-key) JSON dump, as 16 hex digits.
std::string config_hash(const RunConfig& c);

}  // namespace ndirac
