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
#ifndef SENTCNN_VOCAB_HPP_
#define SENTCNN_VOCAB_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sentcnn/textprep.hpp"

namespace sentcnn {

using TokenId = std::uint32_t;

inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kUnkId = 1;
inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kUnkToken = "<unk>";

// Token <-> dense id map with corpus counts. Ids 0 and 1 are reserved for
// <pad> and <unk>; the remaining ids are ordered by descending count with
// lexicographic tiebreak. Immutable once built.
class Vocabulary {
 public:
  // Visits each token sequence of a corpus. Called once per build.
  using CorpusVisitor =
      std::function<void(const std::function<void(const TokenSequence&)>&)>;

  static Vocabulary build(const CorpusVisitor& corpus, std::uint64_t min_count);
  static Vocabulary build(const std::vector<TokenSequence>& corpus,
                          std::uint64_t min_count);

  // vocab.tsv: token<TAB>id<TAB>count per line, sorted by id.
  static Vocabulary read_tsv(std::istream& in);
  static Vocabulary load(const std::filesystem::path& path);
  void write_tsv(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  std::uint64_t count(TokenId id) const { return counts_.at(id); }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::optional<TokenId> find(std::string_view token) const;
  TokenId id_or_unk(std::string_view token) const;

  // Fixed-length id sequence: OOV -> <unk>, truncated or right-padded with
  // <pad> to n_max.
  std::vector<TokenId> encode(const TokenSequence& tokens,
                              std::size_t n_max) const;
  // Inverse of encode over the non-pad positions.
  TokenSequence decode(const std::vector<TokenId>& ids) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_ && a.counts_ == b.counts_;
  }

 private:
  Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts);

  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, TokenId> index_;
};

}  // namespace sentcnn

#endif  // SENTCNN_VOCAB_HPP_
