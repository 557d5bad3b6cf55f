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


#ifndef DRILL_REPORT_SIMILARITY_H_
#define DRILL_REPORT_SIMILARITY_H_

#include <cstddef>
#include <string_view>

namespace drill::report {

inline constexpr size_t kGramSize = 4;
inline constexpr size_t kChunkSize = 16;
inline constexpr double kGramWeight = 0.7;
inline constexpr double kChunkWeight = 0.3;

struct SimilarityScore {
  double gram_sim = 0;
  double chunk_sim = 0;
  double score = 0;
  friend bool operator==(const SimilarityScore &, const SimilarityScore &) = default;
};

// Jaccard similarity of the sets of byte 4-grams.
double GramSimilarity(std::string_view a, std::string_view b);
// Shared 16-byte aligned chunks (multiset intersection; a short final chunk
// counts) over the larger chunk count.
double ChunkSimilarity(std::string_view a, std::string_view b);
double CombineScore(double gram_sim, double chunk_sim);

// Throws Error(kEmptyInput) when either input is empty.
SimilarityScore PovSimilarity(std::string_view generated, std::string_view ground_truth);

}  // namespace drill::report

#endif  // DRILL_REPORT_SIMILARITY_H_
