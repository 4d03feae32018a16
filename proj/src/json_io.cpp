#include "jex/json_io.hpp"

#include <cmath>
#include <fstream>

#include "jex/errors.hpp"
#include "jex/existence.hpp"

namespace jex {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw UsageError(std::string("config: missing numeric field \"") + field +
                     "\"");
  }
  return j[field].get<double>();
}

std::string require_string(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string()) {
    throw UsageError(std::string("config: missing string field \"") + field +
                     "\"");
  }
  return j[field].get<std::string>();
}

}  // namespace

Marginal parse_marginal(const json& j) {
  const std::string family = require_string(j, "family");
  const double q0 = require_number(j, "q0");
  if (family == "scaled-uniform") {
    return Marginal::scaled_uniform(q0, require_number(j, "scale"));
  }
  if (family == "scaled-exponential") {
    return Marginal::scaled_exponential(q0, require_number(j, "rate"));
  }
  if (family == "piecewise-linear") {
    if (!j.contains("knots") || !j["knots"].is_array()) {
      throw UsageError("config: piecewise-linear marginal needs a knots array");
    }
    std::vector<Marginal::Knot> knots;
    for (const auto& item : j["knots"]) {
      if (!item.is_array() || item.size() != 2) {
        throw UsageError("config: knots must be [x, survival] pairs");
      }
      knots.push_back({item[0].get<double>(), item[1].get<double>()});
    }
    Marginal m = Marginal::piecewise_linear(std::move(knots));
    if (std::abs(m.q0() - q0) > 1e-12) {
      throw UsageError("config: q0 must equal the first knot's survival");
    }
    return m;
  }
  if (family == "point-mass-at-zero") {
    if (q0 != 0.0) {
      throw UsageError("config: point-mass-at-zero requires q0 = 0");
    }
    return Marginal::point_mass_at_zero();
  }
  throw UsageError("config: unknown marginal family \"" + family + "\"");
}

Copula parse_copula(const json& j) {
  const std::string family = require_string(j, "family");
  if (family == "countermonotone") {
    const int dim = static_cast<int>(require_number(j, "dimension"));
    if (dim != 2) {
      throw UsageError("config: countermonotone copula requires dimension 2");
    }
    return Copula::countermonotone();
  }
  if (family == "independence") {
    return Copula::independence(static_cast<int>(require_number(j, "dimension")));
  }
  if (family == "comonotone") {
    return Copula::comonotone(static_cast<int>(require_number(j, "dimension")));
  }
  if (family == "convex-mixture") {
    if (!j.contains("components") || !j["components"].is_array()) {
      throw UsageError("config: convex-mixture needs a components array");
    }
    std::vector<std::pair<double, Copula>> components;
    for (const auto& item : j["components"]) {
      components.emplace_back(require_number(item, "weight"),
                              parse_copula(item));
    }
    return Copula::mixture(std::move(components));
  }
  throw UsageError("config: unknown copula family \"" + family + "\"");
}

Distortion parse_distortion(const json& j, double q0) {
  const std::string family = require_string(j, "family");
  if (family == "identity-canonical") return Distortion::identity_canonical(q0);
  if (family == "linear-truncation") {
    return Distortion::linear_truncation(require_number(j, "a"),
                                         require_number(j, "b"));
  }
  if (family == "power") {
    return Distortion::power(require_number(j, "a"), require_number(j, "b"),
                             require_number(j, "gamma"));
  }
  throw UsageError("config: unknown distortion family \"" + family + "\"");
}

AllocationStrategy parse_strategy(const json& j) {
  const std::string name = require_string(j, "strategy");
  if (name == "max-face-mass") return AllocationStrategy::max_face_mass();
  if (name == "scaled") {
    return AllocationStrategy::scaled(require_number(j, "t"));
  }
  if (name == "trivariate-lambda") {
    return AllocationStrategy::trivariate_lambda(require_number(j, "lambda"));
  }
  throw UsageError("config: unknown allocation strategy \"" + name + "\"");
}

ModelConfig parse_config(const json& j) {
  ModelConfig config;
  config.n = static_cast<int>(require_number(j, "n"));
  if (config.n < 2) throw UsageError("config: n must be >= 2");
  if (!j.contains("marginals") || !j["marginals"].is_array() ||
      static_cast<int>(j["marginals"].size()) != config.n) {
    throw UsageError("config: marginals must be an array of length n");
  }
  for (const auto& item : j["marginals"]) {
    config.marginals.push_back(parse_marginal(item));
  }

  if (j.contains("allocation")) {
    config.strategy = parse_strategy(j["allocation"]);
  }

  if (j.contains("distortions")) {
    if (!j["distortions"].is_object()) {
      throw UsageError("config: distortions must map coordinate indices");
    }
    for (const auto& [key, value] : j["distortions"].items()) {
      int index = 0;
      try {
        index = std::stoi(key);
      } catch (const std::exception&) {
        throw UsageError("config: distortion key \"" + key +
                         "\" is not a coordinate index");
      }
      if (index < 1 || index > config.n) {
        throw UsageError("config: distortion index " + std::to_string(index) +
                         " out of range");
      }
      config.distortions.emplace(
          index, parse_distortion(value, config.marginals[index - 1].q0()));
    }
  }

  if (j.contains("copulas")) {
    if (!j["copulas"].is_object()) {
      throw UsageError("config: copulas must map face keys to specs");
    }
    for (const auto& [key, value] : j["copulas"].items()) {
      config.copulas.emplace(FaceSet::parse_key(key), parse_copula(value));
    }
  }

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) {
      throw UsageError("config: seed must be an integer");
    }
    config.seed = j["seed"].get<std::uint64_t>();
  }
  return config;
}

ModelConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config: malformed JSON in " + path + ": " + e.what());
  }
  return parse_config(j);
}

Eigen::VectorXd config_q0(const ModelConfig& config) {
  Eigen::VectorXd q0(config.n);
  for (int i = 0; i < config.n; ++i) q0[i] = config.marginals[i].q0();
  return q0;
}

Eigen::VectorXd config_caps(const ModelConfig& config) {
  Eigen::VectorXd caps = config_q0(config);
  for (const auto& [index, distortion] : config.distortions) {
    caps[index - 1] = g_star(distortion, config.marginals[index - 1]);
  }
  return caps;
}

FaceAllocation config_allocation(const ModelConfig& config) {
  return feasible_allocation(config_q0(config), config_caps(config),
                             config.strategy);
}

JEModel config_model(const ModelConfig& config) {
  return build_model(config.marginals, config_allocation(config),
                     config.copulas, config.distortions);
}

nlohmann::json report_to_json(const ExistenceReport& report) {
  return nlohmann::json{{"kind", report.kind_name()},
                        {"feasible", report.feasible},
                        {"lhs", report.lhs},
                        {"rhs", report.rhs},
                        {"slack", report.slack}};
}

nlohmann::json allocation_to_json(const FaceAllocation& allocation) {
  nlohmann::json p = nlohmann::json::object();
  for (std::size_t k = 0; k < allocation.faces.size(); ++k) {
    p[allocation.faces[k].key()] =
        allocation.p[static_cast<Eigen::Index>(k)];
  }
  nlohmann::json caps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < allocation.caps.size(); ++i) {
    caps.push_back(allocation.caps[i]);
  }
  return nlohmann::json{{"n", allocation.n},
                        {"caps", caps},
                        {"p", p},
                        {"weighted_mass", allocation.weighted_mass()},
                        {"total_face_mass", allocation.total_face_mass()}};
}

nlohmann::json model_summary_json(const JEModel& model) {
  nlohmann::json faces = nlohmann::json::object();
  const FaceAllocation& allocation = model.allocation();
  for (std::size_t k = 0; k < allocation.faces.size(); ++k) {
    faces[allocation.faces[k].key()] =
        allocation.p[static_cast<Eigen::Index>(k)];
  }
  nlohmann::json axis = nlohmann::json::array();
  for (Eigen::Index i = 0; i < model.axis_mass().size(); ++i) {
    axis.push_back(model.axis_mass()[i]);
  }
  nlohmann::json caps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < allocation.caps.size(); ++i) {
    caps.push_back(allocation.caps[i]);
  }
  double total = model.origin_mass() + model.axis_mass().sum() +
                 allocation.total_face_mass();
  return nlohmann::json{{"n", model.dimension()},
                        {"kind", model.generalized() ? "generalized" : "canonical"},
                        {"caps", caps},
                        {"faces", faces},
                        {"axis_mass", axis},
                        {"origin_mass", model.origin_mass()},
                        {"total_mass", total}};
}

}  // namespace jex
