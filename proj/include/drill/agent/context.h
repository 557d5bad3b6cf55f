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


#ifndef DRILL_AGENT_CONTEXT_H_
#define DRILL_AGENT_CONTEXT_H_

#include <string>
#include <vector>

#include "drill/llm/chat.h"
#include "drill/llm/ledger.h"

namespace drill::agent {

struct PinnedBlock {
  std::string label;
  std::string text;

  friend bool operator==(const PinnedBlock &, const PinnedBlock &) = default;
};

// What a sub-agent sees besides its own conversation: labeled blocks that
// are rendered into every prompt, in insertion order.
struct AgentContext {
  std::vector<PinnedBlock> pinned;
  std::vector<llm::ChatTurn> transcript;  // Current agent run only.
  llm::UsageLedger *ledger = nullptr;

  const PinnedBlock *Find(const std::string &label) const;
  // "## <label>\n<text>" blocks separated by blank lines.
  std::string Render() const;
};

// Replaces blocks whose label already exists (keeping their position) and
// appends the rest, in order.
AgentContext UpdateContext(AgentContext context, const std::vector<PinnedBlock> &items);
void RemoveBlock(AgentContext &context, const std::string &label);

}  // namespace drill::agent

#endif  // DRILL_AGENT_CONTEXT_H_
