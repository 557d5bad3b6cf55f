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


#include "drill/report/similarity.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "drill/common/error.h"

namespace drill::report {

namespace {

std::set<std::string_view> Grams(std::string_view data) {
  std::set<std::string_view> grams;
  for (size_t i = 0; i + kGramSize <= data.size(); ++i) grams.insert(data.substr(i, kGramSize));
  return grams;
}

std::map<std::string_view, int> Chunks(std::string_view data) {
  std::map<std::string_view, int> chunks;
  for (size_t i = 0; i < data.size(); i += kChunkSize) ++chunks[data.substr(i, kChunkSize)];
  return chunks;
}

size_t ChunkCount(std::string_view data) { return (data.size() + kChunkSize - 1) / kChunkSize; }

}  // namespace

double GramSimilarity(std::string_view a, std::string_view b) {
  const auto ga = Grams(a);
  const auto gb = Grams(b);
  // Inputs shorter than one gram compare as whole strings.
  if (ga.empty() && gb.empty()) return a == b ? 1.0 : 0.0;
  size_t shared = 0;
  for (const auto &g : ga) shared += gb.count(g);
  return static_cast<double>(shared) / static_cast<double>(ga.size() + gb.size() - shared);
}

double ChunkSimilarity(std::string_view a, std::string_view b) {
  const size_t denominator = std::max(ChunkCount(a), ChunkCount(b));
  if (denominator == 0) return 1.0;
  const auto ca = Chunks(a);
  const auto cb = Chunks(b);
  size_t shared = 0;
  for (const auto &[chunk, count] : ca) {
    if (const auto it = cb.find(chunk); it != cb.end()) shared += std::min(count, it->second);
  }
  return static_cast<double>(shared) / static_cast<double>(denominator);
}

double CombineScore(double gram_sim, double chunk_sim) {
  return kGramWeight * gram_sim + kChunkWeight * chunk_sim;
}

SimilarityScore PovSimilarity(std::string_view generated, std::string_view ground_truth) {
  if (generated.empty() || ground_truth.empty()) {
    throw Error(ErrorCode::kEmptyInput, "similarity needs two non-empty inputs");
  }
  SimilarityScore s;
  s.gram_sim = GramSimilarity(generated, ground_truth);
  s.chunk_sim = ChunkSimilarity(generated, ground_truth);
  s.score = CombineScore(s.gram_sim, s.chunk_sim);
  return s;
}

}  // namespace drill::report
