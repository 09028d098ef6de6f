#include "fpnn/model_io.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpnn/errors.hpp"

namespace fpnn {

namespace {

using nlohmann::json;

json matrix_to_json(const std::vector<std::vector<double>>& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

std::vector<std::vector<double>> matrix_from_json(const json& j,
                                                  const char* what) {
  if (!j.is_array()) {
    throw ValidationError(std::string("model field '") + what +
                          "' must be an array of arrays");
  }
  std::vector<std::vector<double>> out;
  for (const auto& row : j) {
    if (!row.is_array()) {
      throw ValidationError(std::string("model field '") + what +
                            "' must be an array of arrays");
    }
    out.push_back(row.get<std::vector<double>>());
  }
  return out;
}

const json& field(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) {
    throw ValidationError(std::string("model file missing field '") + name +
                          "'");
  }
  return *it;
}

}  // namespace

void save_model(const std::filesystem::path& path, const Model& model) {
  const NetworkShape shape = model.params.shape();
  model.params.validate(/*sigma_min=*/0.0);

  json j;
  j["shape"] = {{"n", shape.components},
                {"m", shape.hidden},
                {"S", shape.length}};
  json centers = json::array();
  for (const auto& center : model.params.centers) {
    json node = json::array();
    for (const auto& component : center.components()) {
      node.push_back(component.values());
    }
    centers.push_back(std::move(node));
  }
  j["centers"] = std::move(centers);
  j["sigmas"] = model.params.sigmas;
  j["weights"] = model.params.weights;
  j["norm"] = {{"min", matrix_to_json(model.norm.min)},
               {"max", matrix_to_json(model.norm.max)}};
  j["threshold"] = model.threshold;
  j["seed"] = model.seed;
  j["mode"] = model.mode;

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("cannot write model file: " + path.string());
  }
  out << j.dump(2) << '\n';
  if (!out) {
    throw ValidationError("failed while writing " + path.string());
  }
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("cannot open model file: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("malformed model file " + path.string() + ": " +
                          e.what());
  }

  try {
    const json& shape_j = field(j, "shape");
    NetworkShape shape{shape_j.at("n").get<std::size_t>(),
                       shape_j.at("m").get<std::size_t>(),
                       shape_j.at("S").get<std::size_t>()};
    shape.validate();

    Model model;
    const json& centers_j = field(j, "centers");
    if (!centers_j.is_array() || centers_j.size() != shape.hidden) {
      throw ValidationError("model centers do not match shape");
    }
    for (const auto& node : centers_j) {
      if (!node.is_array() || node.size() != shape.components) {
        throw ValidationError("model center has wrong component count");
      }
      std::vector<Sequence> components;
      for (const auto& component : node) {
        auto values = component.get<std::vector<double>>();
        if (values.size() != shape.length) {
          throw ValidationError("model center has wrong length");
        }
        components.emplace_back(std::move(values));
      }
      model.params.centers.emplace_back(std::move(components));
    }
    model.params.sigmas = field(j, "sigmas").get<std::vector<double>>();
    model.params.weights = field(j, "weights").get<std::vector<double>>();

    const json& norm_j = field(j, "norm");
    model.norm.min = matrix_from_json(field(norm_j, "min"), "norm.min");
    model.norm.max = matrix_from_json(field(norm_j, "max"), "norm.max");

    model.threshold = field(j, "threshold").get<double>();
    model.seed = field(j, "seed").get<std::uint64_t>();
    if (j.contains("mode")) model.mode = j["mode"].get<std::string>();

    model.params.validate(/*sigma_min=*/0.0);
    for (double sigma : model.params.sigmas) {
      if (!(sigma > 0.0)) {
        throw ValidationError("model sigma must be positive");
      }
    }
    if (!std::isfinite(model.threshold)) {
      throw ValidationError("model threshold must be finite");
    }
    return model;
  } catch (const json::exception& e) {
    throw ValidationError("malformed model file " + path.string() + ": " +
                          e.what());
  }
}

}  // namespace fpnn
