// Copyright 2026 The Drill Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRILL_LLM_MODEL_PARAMS_H_
#define DRILL_LLM_MODEL_PARAMS_H_

#include <cstdint>
#include <string>

namespace drill::llm {

struct Pricing {
  double usd_per_mtok_in = 3.0;
  double usd_per_mtok_out = 15.0;

  friend bool operator==(const Pricing &, const Pricing &) = default;
};

struct ModelParams {
  std::string model_id = "default";
  double temperature = 0.1;  // [0, 2]
  int64_t max_output_tokens = 4096;
  Pricing pricing;

  friend bool operator==(const ModelParams &, const ModelParams &) = default;
};

struct TokenUsage {
  int64_t input_tokens = 0;
  int64_t output_tokens = 0;

  friend bool operator==(const TokenUsage &, const TokenUsage &) = default;
};

}  // namespace drill::llm

#endif  // DRILL_LLM_MODEL_PARAMS_H_
