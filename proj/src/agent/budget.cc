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


#include "drill/agent/budget.h"

namespace drill::agent {

std::string_view BudgetDecisionName(BudgetDecision decision) {
  switch (decision) {
    case BudgetDecision::kProceed: return "Proceed";
    case BudgetDecision::kFinishAfterCurrentCycle: return "FinishAfterCurrentCycle";
    case BudgetDecision::kHardStop: return "HardStop";
  }
  return "Proceed";
}

BudgetDecision CheckBudget(const llm::UsageLedger &ledger, double budget_usd,
                           bool cycle_complete) {
  if (ledger.cost_usd < budget_usd) return BudgetDecision::kProceed;
  return cycle_complete ? BudgetDecision::kHardStop : BudgetDecision::kFinishAfterCurrentCycle;
}

}  // namespace drill::agent
