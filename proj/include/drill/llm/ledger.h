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


#ifndef DRILL_LLM_LEDGER_H_
#define DRILL_LLM_LEDGER_H_

#include <cstdint>
#include <map>

#include "drill/llm/model_params.h"
#include "drill/task/task_spec.h"

namespace drill::llm {

struct PhaseUsage {
  int64_t input_tokens = 0;
  int64_t output_tokens = 0;
  double cost_usd = 0;
  int calls = 0;

  friend bool operator==(const PhaseUsage &, const PhaseUsage &) = default;
};

// Token and dollar totals for one task, overall and per phase.
struct UsageLedger {
  int64_t input_tokens = 0;
  int64_t output_tokens = 0;
  double cost_usd = 0;
  std::map<Phase, PhaseUsage> per_phase;

  friend bool operator==(const UsageLedger &, const UsageLedger &) = default;
};

// input / 1e6 * price_in + output / 1e6 * price_out.
double CallCost(const TokenUsage &usage, const Pricing &pricing);

// Adds one call's usage. A zero-usage call leaves the ledger unchanged.
// Throws Error(kPrecondition) for negative token counts.
UsageLedger Accrue(UsageLedger ledger, Phase phase, const TokenUsage &usage,
                   const ModelParams &params);

}  // namespace drill::llm

#endif  // DRILL_LLM_LEDGER_H_
