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


#ifndef DRILL_PIPELINE_GUIDANCE_H_
#define DRILL_PIPELINE_GUIDANCE_H_

#include <optional>
#include <string>
#include <string_view>

#include "drill/task/task_spec.h"
#include "drill/task/types.h"

namespace drill::pipeline {

struct Guidance {
  CrashKind vuln_type;
  std::string hint_text;

  friend bool operator==(const Guidance &, const Guidance &) = default;
};

// Table entry for `kind`; kinds without an entry get the generic text.
std::string_view GuidanceTextFor(const CrashKind &kind);
std::string_view GenericGuidanceText();

// Keyword triage over free text: canonical tokens first, then common
// phrasings. Nullopt when nothing matches.
std::optional<CrashKind> TriageVulnType(std::string_view text);

// vuln_type is the spec's expected effect when it names a known kind,
// otherwise the triaged root cause; the hint comes from the table.
// Throws Error(kPrecondition) for an empty root cause.
Guidance SampleVulnTypeHints(std::string_view root_cause, const VulnSpec &spec);

}  // namespace drill::pipeline

#endif  // DRILL_PIPELINE_GUIDANCE_H_
