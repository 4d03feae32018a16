#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "jex/allocation.hpp"
#include "jex/copula.hpp"
#include "jex/distortion.hpp"
#include "jex/existence.hpp"
#include "jex/marginal.hpp"
#include "jex/model.hpp"

namespace jex {

/// Parsed model configuration. Faces are keyed by comma-joined 1-based
/// index strings ("1,2") both here and in every JSON document.
struct ModelConfig {
  int n = 0;
  std::vector<Marginal> marginals;
  AllocationStrategy strategy;
  std::map<FaceSet, Copula> copulas;
  std::map<int, Distortion> distortions;  // 1-based coordinate keys
  std::uint64_t seed = 0;
};

Marginal parse_marginal(const nlohmann::json& j);
Copula parse_copula(const nlohmann::json& j);
/// q0 of the paired marginal resolves the identity-canonical band.
Distortion parse_distortion(const nlohmann::json& j, double q0);
AllocationStrategy parse_strategy(const nlohmann::json& j);

ModelConfig parse_config(const nlohmann::json& j);
ModelConfig load_config(const std::string& path);

Eigen::VectorXd config_q0(const ModelConfig& config);
/// Per-coordinate face capacity: the distortion modulus where a distortion
/// is configured, q0 otherwise.
Eigen::VectorXd config_caps(const ModelConfig& config);
FaceAllocation config_allocation(const ModelConfig& config);
JEModel config_model(const ModelConfig& config);

nlohmann::json report_to_json(const ExistenceReport& report);
nlohmann::json allocation_to_json(const FaceAllocation& allocation);
nlohmann::json model_summary_json(const JEModel& model);

}  // namespace jex
