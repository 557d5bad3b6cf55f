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


#include "drill/agent/context.h"

#include <algorithm>

namespace drill::agent {

const PinnedBlock *AgentContext::Find(const std::string &label) const {
  for (const PinnedBlock &block : pinned) {
    if (block.label == label) return &block;
  }
  return nullptr;
}

std::string AgentContext::Render() const {
  std::string out;
  for (const PinnedBlock &block : pinned) {
    if (!out.empty()) out += "\n\n";
    out += "## " + block.label + "\n" + block.text;
  }
  return out;
}

AgentContext UpdateContext(AgentContext context, const std::vector<PinnedBlock> &items) {
  for (const PinnedBlock &item : items) {
    auto it = std::find_if(context.pinned.begin(), context.pinned.end(),
                           [&](const PinnedBlock &b) { return b.label == item.label; });
    if (it != context.pinned.end()) {
      it->text = item.text;
    } else {
      context.pinned.push_back(item);
    }
  }
  return context;
}

void RemoveBlock(AgentContext &context, const std::string &label) {
  std::erase_if(context.pinned, [&](const PinnedBlock &b) { return b.label == label; });
}

}  // namespace drill::agent
