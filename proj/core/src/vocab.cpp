// Copyright 2026 The sentcnn Authors.
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
#include "sentcnn/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include "sentcnn/error.hpp"

namespace sentcnn {

Vocabulary::Vocabulary(std::vector<std::string> tokens,
                       std::vector<std::uint64_t> counts)
    : tokens_(std::move(tokens)), counts_(std::move(counts)) {
  index_.reserve(tokens_.size());
  for (TokenId id = 0; id < tokens_.size(); ++id) {
    if (!index_.emplace(tokens_[id], id).second) {
      throw InputError("duplicate vocabulary token: " + tokens_[id]);
    }
  }
}

Vocabulary Vocabulary::build(const CorpusVisitor& corpus,
                             std::uint64_t min_count) {
  if (min_count < 1) throw InputError("min_count must be >= 1");
  std::unordered_map<std::string, std::uint64_t> freq;
  std::size_t sequences = 0;
  corpus([&](const TokenSequence& seq) {
    ++sequences;
    for (const auto& t : seq) {
      if (t == kPadToken || t == kUnkToken) continue;
      ++freq[t];
    }
  });
  if (sequences == 0) throw InputError("empty corpus");

  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [tok, n] : freq) {
    if (n >= min_count) kept.emplace_back(tok, n);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  std::vector<std::string> tokens = {std::string(kPadToken),
                                     std::string(kUnkToken)};
  std::vector<std::uint64_t> counts = {0, 0};
  for (auto& [tok, n] : kept) {
    tokens.push_back(std::move(tok));
    counts.push_back(n);
  }
  return Vocabulary(std::move(tokens), std::move(counts));
}

Vocabulary Vocabulary::build(const std::vector<TokenSequence>& corpus,
                             std::uint64_t min_count) {
  return build(
      [&corpus](const std::function<void(const TokenSequence&)>& visit) {
        for (const auto& seq : corpus) visit(seq);
      },
      min_count);
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::id_or_unk(std::string_view token) const {
  return find(token).value_or(kUnkId);
}

std::vector<TokenId> Vocabulary::encode(const TokenSequence& tokens,
                                        std::size_t n_max) const {
  if (n_max < 1) throw InputError("n_max must be >= 1");
  std::vector<TokenId> ids(n_max, kPadId);
  const std::size_t n = std::min(n_max, tokens.size());
  for (std::size_t i = 0; i < n; ++i) ids[i] = id_or_unk(tokens[i]);
  return ids;
}

TokenSequence Vocabulary::decode(const std::vector<TokenId>& ids) const {
  TokenSequence out;
  for (TokenId id : ids) {
    if (id == kPadId) continue;
    out.push_back(token(id));
  }
  return out;
}

void Vocabulary::write_tsv(std::ostream& out) const {
  for (TokenId id = 0; id < tokens_.size(); ++id) {
    out << tokens_[id] << '\t' << id << '\t' << counts_[id] << '\n';
  }
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  write_tsv(out);
  if (!out) throw Error("write failed: " + path.string());
}

Vocabulary Vocabulary::read_tsv(std::istream& in) {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw InputError("vocab.tsv line " + std::to_string(line_no) +
                       ": expected token<TAB>id<TAB>count");
    }
    try {
      const auto id = std::stoull(line.substr(t1 + 1, t2 - t1 - 1));
      if (id != tokens.size()) {
        throw InputError("vocab.tsv line " + std::to_string(line_no) +
                         ": ids must be dense and sorted");
      }
      counts.push_back(std::stoull(line.substr(t2 + 1)));
    } catch (const std::logic_error&) {
      throw InputError("vocab.tsv line " + std::to_string(line_no) +
                       ": malformed number");
    }
    tokens.push_back(line.substr(0, t1));
  }
  if (tokens.size() < 2 || tokens[kPadId] != kPadToken ||
      tokens[kUnkId] != kUnkToken) {
    throw InputError("vocab.tsv must start with <pad> and <unk>");
  }
  return Vocabulary(std::move(tokens), std::move(counts));
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open vocabulary: " + path.string());
  return read_tsv(in);
}

}  // namespace sentcnn
