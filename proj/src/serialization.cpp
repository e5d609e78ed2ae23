// Copyright 2026 The samplerdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "serialization.hpp"

#include <stdexcept>

namespace samplerdp {

namespace {

double require_number(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw std::invalid_argument(std::string("mechanism spec: missing numeric '") +
                                key + "'");
  }
  return obj.at(key).get<double>();
}

double optional_number(const nlohmann::json& obj, const char* key,
                       double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number()) {
    throw std::invalid_argument(std::string("mechanism spec: '") + key +
                                "' must be a number");
  }
  return obj.at(key).get<double>();
}

}  // namespace

RdpCurve curve_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string()) {
    throw std::invalid_argument("mechanism spec: expected object with 'kind'");
  }
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "gaussian") return gaussian_rdp(require_number(spec, "sigma"));
  if (kind == "laplace") return laplace_rdp(require_number(spec, "b"));
  if (kind == "randresp") return randresp_rdp(require_number(spec, "p"));
  if (kind == "puredp") return pure_dp_rdp(require_number(spec, "eps"));
  if (kind == "expfamily") {
    const double d = require_number(spec, "delta");
    const double lip = optional_number(spec, "lipschitz", kInf);
    const double smooth = optional_number(spec, "smoothness", kInf);
    const double kappa_max = optional_number(spec, "kappa_max", kInf);
    const bool improved = spec.value("improved_lipschitz", true);
    return expfamily_rdp(d, lip, smooth, kappa_max, improved);
  }
  if (kind == "subsample") {
    if (!spec.contains("base")) {
      throw std::invalid_argument("subsample spec: missing 'base'");
    }
    const RdpCurve base = curve_from_json(spec.at("base"));
    const double gamma = require_number(spec, "gamma");
    const std::string kind_name = spec.value("bound_kind", "general");
    const auto bound = bound_kind_from_string(kind_name);
    if (!bound) {
      throw std::invalid_argument("subsample spec: unknown bound_kind '" +
                                  kind_name + "'");
    }
    SubsampleOptions options;
    options.alpha_thresh =
        static_cast<int>(optional_number(spec, "alpha_thresh", 256));
    options.n = static_cast<std::int64_t>(optional_number(spec, "n", 0));
    return subsample(base, gamma, *bound, options);
  }
  throw std::invalid_argument("mechanism spec: unknown kind '" + kind + "'");
}

nlohmann::json ledger_to_json(const CgfLedger& ledger) {
  nlohmann::json out = nlohmann::json::array();
  for (const CgfLedger::Entry& e : ledger.entries()) {
    if (!e.curve.serializable()) {
      throw std::invalid_argument("ledger_to_json: entry '" +
                                  e.curve.identity() + "' is not serializable");
    }
    out.push_back({{"mechanism", e.curve.spec()}, {"count", e.count}});
  }
  return out;
}

CgfLedger ledger_from_json(const nlohmann::json& doc) {
  if (!doc.is_array()) {
    throw std::invalid_argument("ledger_from_json: expected a JSON array");
  }
  CgfLedger ledger;
  for (const nlohmann::json& item : doc) {
    if (!item.is_object() || !item.contains("mechanism")) {
      throw std::invalid_argument("ledger_from_json: entry needs 'mechanism'");
    }
    const std::int64_t count = item.value("count", std::int64_t{1});
    ledger.compose(curve_from_json(item.at("mechanism")), count);
  }
  return ledger;
}

}  // namespace samplerdp
