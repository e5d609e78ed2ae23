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

#pragma once

#include "accountant.hpp"
#include "amplification.hpp"

namespace samplerdp {

// Builds a curve from a mechanism spec object:
//   {"kind": "gaussian", "sigma": s}
//   {"kind": "laplace", "b": b}
//   {"kind": "randresp", "p": p}
//   {"kind": "puredp", "eps": e}
//   {"kind": "expfamily", "delta": d, "lipschitz"?: B, "smoothness"?: L,
//    "kappa_max"?: k, "improved_lipschitz"?: bool}   (absent => unbounded)
//   {"kind": "subsample", "base": {...}, "gamma": g, "bound_kind": name,
//    "alpha_thresh"?: t, "n"?: n}
// Throws std::invalid_argument on malformed specs.
RdpCurve curve_from_json(const nlohmann::json& spec);

// Ledger <-> JSON array of {"mechanism": spec, "count": n}. Round-trips
// exactly; entries keep insertion order. Throws if any entry holds a
// non-serializable curve.
nlohmann::json ledger_to_json(const CgfLedger& ledger);
CgfLedger ledger_from_json(const nlohmann::json& doc);

}  // namespace samplerdp
