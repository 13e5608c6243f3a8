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

#include "fairagg/dataio.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace fairagg {

namespace {

std::string Trim(const std::string& text) {
  size_t begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  size_t end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(Trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::vector<std::vector<std::string>> ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    rows.push_back(SplitCsvLine(line));
  }
  return rows;
}

std::int64_t ParseId(const std::string& cell, const std::string& where) {
  const std::string t = Trim(cell);
  if (t.empty() || t.find_first_not_of("-0123456789") != std::string::npos ||
      (t.size() > 1 && t.find('-', 1) != std::string::npos) || t == "-") {
    throw ParseError(where + ": entry '" + cell + "' is not an integer");
  }
  return std::stoll(t);
}

}  // namespace

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

namespace {

// Parses one rankings row into dense ranks given the id universe.
Ranking RowToRanking(const std::vector<std::string>& row, int row_index,
                     const std::map<std::int64_t, int>& dense_of) {
  const int d = static_cast<int>(dense_of.size());
  std::ostringstream where;
  where << "rankings row " << row_index;
  if (static_cast<int>(row.size()) != d) {
    std::ostringstream msg;
    msg << where.str() << " has " << row.size() << " entries, expected " << d;
    throw ParseError(msg.str());
  }
  std::vector<int> rank_of(d, 0);
  std::vector<char> seen(d, 0);
  for (int p = 0; p < d; ++p) {
    const std::int64_t id = ParseId(row[p], where.str());
    const auto it = dense_of.find(id);
    if (it == dense_of.end()) {
      std::ostringstream msg;
      msg << where.str() << ": candidate id " << id
          << " does not appear in row 0";
      throw ParseError(msg.str());
    }
    if (seen[it->second]) {
      std::ostringstream msg;
      msg << where.str() << ": candidate id " << id << " duplicated";
      throw ParseError(msg.str());
    }
    seen[it->second] = 1;
    rank_of[it->second] = p + 1;
  }
  return Ranking(std::move(rank_of));
}

}  // namespace

Dataset LoadDataset(const std::string& rankings_path,
                    const std::string& groups_path) {
  const auto ranking_rows = ReadCsv(rankings_path);
  if (ranking_rows.empty()) {
    throw ParseError("rankings file is empty: " + rankings_path);
  }

  // Row 0 defines the candidate universe.
  std::vector<std::int64_t> ids;
  for (size_t p = 0; p < ranking_rows[0].size(); ++p) {
    ids.push_back(ParseId(ranking_rows[0][p], "rankings row 0"));
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw ParseError("rankings row 0: candidate id duplicated");
  }
  std::map<std::int64_t, int> dense_of;
  for (size_t i = 0; i < ids.size(); ++i) {
    dense_of[ids[i]] = static_cast<int>(i);
  }

  Dataset dataset;
  dataset.candidate_ids = ids;
  for (size_t r = 0; r < ranking_rows.size(); ++r) {
    dataset.rankings.push_back(
        RowToRanking(ranking_rows[r], static_cast<int>(r), dense_of));
  }

  const auto group_rows = ReadCsv(groups_path);
  if (group_rows.empty() || group_rows[0].size() != 2 ||
      group_rows[0][0] != "candidate" || group_rows[0][1] != "group") {
    throw ParseError("groups file must start with header 'candidate,group': " +
                     groups_path);
  }
  std::map<std::int64_t, std::string> label_of;
  for (size_t r = 1; r < group_rows.size(); ++r) {
    std::ostringstream where;
    where << "groups row " << r;
    if (group_rows[r].size() != 2) {
      throw ParseError(where.str() + ": expected 2 cells");
    }
    const std::int64_t id = ParseId(group_rows[r][0], where.str());
    if (dense_of.find(id) == dense_of.end()) {
      std::ostringstream msg;
      msg << where.str() << ": candidate id " << id
          << " does not appear in the rankings";
      throw ParseError(msg.str());
    }
    if (!label_of.emplace(id, group_rows[r][1]).second) {
      std::ostringstream msg;
      msg << where.str() << ": candidate id " << id << " listed twice";
      throw ParseError(msg.str());
    }
  }
  for (std::int64_t id : ids) {
    if (label_of.find(id) == label_of.end()) {
      std::ostringstream msg;
      msg << "groups file is missing candidate id " << id;
      throw ParseError(msg.str());
    }
  }

  std::vector<std::string> names;
  for (const auto& [id, label] : label_of) names.push_back(label);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  std::map<std::string, int> gid_of;
  for (size_t i = 0; i < names.size(); ++i) {
    gid_of[names[i]] = static_cast<int>(i);
  }

  dataset.group_names = names;
  dataset.groups.d = static_cast<int>(ids.size());
  dataset.groups.g = static_cast<int>(names.size());
  dataset.groups.group_of.resize(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) {
    dataset.groups.group_of[i] = gid_of[label_of[ids[i]]];
  }
  return dataset;
}

Ranking LoadExternalRanking(const std::string& path, const Dataset& dataset) {
  const auto rows = ReadCsv(path);
  if (rows.size() != 1) {
    throw ParseError("external ranking file must hold exactly one row: " +
                     path);
  }
  std::map<std::int64_t, int> dense_of;
  for (size_t i = 0; i < dataset.candidate_ids.size(); ++i) {
    dense_of[dataset.candidate_ids[i]] = static_cast<int>(i);
  }
  return RowToRanking(rows[0], 0, dense_of);
}

void WriteRankingsCsv(const std::string& path,
                      std::span<const Ranking> rankings,
                      const std::vector<std::int64_t>& candidate_ids) {
  std::ostringstream out;
  for (const Ranking& pi : rankings) {
    const std::vector<int> order = pi.Order();
    for (size_t p = 0; p < order.size(); ++p) {
      if (p > 0) out << ",";
      out << candidate_ids[order[p]];
    }
    out << "\n";
  }
  WriteTextFile(path, out.str());
}

void WriteGroupsCsv(const std::string& path, const GroupAssignment& groups,
                    const std::vector<std::int64_t>& candidate_ids,
                    const std::vector<std::string>& group_names) {
  std::ostringstream out;
  out << "candidate,group\n";
  for (int c = 0; c < groups.d; ++c) {
    out << candidate_ids[c] << "," << group_names[groups.group_of[c]] << "\n";
  }
  WriteTextFile(path, out.str());
}

}  // namespace fairagg
