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


#ifndef DRILL_AGENT_BUDGET_H_
#define DRILL_AGENT_BUDGET_H_

#include <string_view>

#include "drill/llm/ledger.h"

namespace drill::agent {

enum class BudgetDecision { kProceed, kFinishAfterCurrentCycle, kHardStop };

std::string_view BudgetDecisionName(BudgetDecision decision);

// Under budget: proceed. Over budget: finish the running generate-and-
// validate cycle first, and stop hard only once a cycle has completed in
// the current phase.
BudgetDecision CheckBudget(const llm::UsageLedger &ledger, double budget_usd,
                           bool cycle_complete);

}  // namespace drill::agent

#endif  // DRILL_AGENT_BUDGET_H_
