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


#include "drill/llm/ledger.h"

#include "drill/common/error.h"

namespace drill::llm {

double CallCost(const TokenUsage &usage, const Pricing &pricing) {
  return static_cast<double>(usage.input_tokens) / 1e6 * pricing.usd_per_mtok_in +
         static_cast<double>(usage.output_tokens) / 1e6 * pricing.usd_per_mtok_out;
}

UsageLedger Accrue(UsageLedger ledger, Phase phase, const TokenUsage &usage,
                   const ModelParams &params) {
  if (usage.input_tokens < 0 || usage.output_tokens < 0) {
    throw Error(ErrorCode::kPrecondition, "negative token usage");
  }
  if (usage.input_tokens == 0 && usage.output_tokens == 0) return ledger;
  const double cost = CallCost(usage, params.pricing);
  ledger.input_tokens += usage.input_tokens;
  ledger.output_tokens += usage.output_tokens;
  ledger.cost_usd += cost;
  PhaseUsage &bucket = ledger.per_phase[phase];
  bucket.input_tokens += usage.input_tokens;
  bucket.output_tokens += usage.output_tokens;
  bucket.cost_usd += cost;
  ++bucket.calls;
  return ledger;
}

}  // namespace drill::llm
