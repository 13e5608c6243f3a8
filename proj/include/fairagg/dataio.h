// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRAGG_DATAIO_H_
#define FAIRAGG_DATAIO_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairagg/core.h"

namespace fairagg {

// A loaded ranking corpus with its identifier mappings. Candidate ids in the
// files may be arbitrary integers; they are remapped to dense 0-based ids in
// ascending id order. Group labels are arbitrary strings, remapped to dense
// group ids in ascending (byte-lexicographic) label order.
struct Dataset {
  std::vector<Ranking> rankings;
  GroupAssignment groups;
  std::vector<std::int64_t> candidate_ids;  // dense id -> original id
  std::vector<std::string> group_names;     // dense gid -> original label

  int d() const { return groups.d; }
  int n() const { return static_cast<int>(rankings.size()); }
};

// Rankings csv: no header; row r, column p holds the candidate id at rank
// p+1 in ranking r. Groups csv: header "candidate,group", then one row per
// candidate. Throws ParseError naming the offending row on malformed input.
Dataset LoadDataset(const std::string& rankings_path,
                    const std::string& groups_path);

// A single-row rankings csv over the same id universe as the dataset.
Ranking LoadExternalRanking(const std::string& path, const Dataset& dataset);

void WriteRankingsCsv(const std::string& path,
                      std::span<const Ranking> rankings,
                      const std::vector<std::int64_t>& candidate_ids);
void WriteGroupsCsv(const std::string& path, const GroupAssignment& groups,
                    const std::vector<std::int64_t>& candidate_ids,
                    const std::vector<std::string>& group_names);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& content);

}  // namespace fairagg

#endif  // FAIRAGG_DATAIO_H_
