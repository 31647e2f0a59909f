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
#ifndef SENTCNN_TEXTPREP_HPP_
#define SENTCNN_TEXTPREP_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sentcnn {

inline constexpr std::string_view kUrlToken = "<url>";
inline constexpr std::string_view kUserToken = "<user>";

// One line of a raw tweet corpus.
struct RawTweet {
  std::string text;
  std::string language;  // lowercase ASCII code or empty
  std::string id;
};

using TokenSequence = std::vector<std::string>;

enum class WeakLabel { kNegative, kPositive };

// Fixed emoticon lexicon. Entries are stored in their matching form: ASCII
// lowercase, since lexicon lookup runs on normalized text. Entries that
// contain a space (": )") match in running text and are emitted as their
// space-free canonical token (":)").
class EmoticonLexicon {
 public:
  // Lexicon compiled into the library; identical to resources/emoticons.txt.
  static const EmoticonLexicon& builtin();

  // Parses the `[positive]` / `[negative]` sectioned text format.
  static EmoticonLexicon parse(std::string_view text);
  static EmoticonLexicon load(const std::filesystem::path& path);

  EmoticonLexicon(std::vector<std::string> positive,
                  std::vector<std::string> negative);

  const std::vector<std::string>& positive() const { return positive_; }
  const std::vector<std::string>& negative() const { return negative_; }

  bool is_positive(std::string_view token) const;
  bool is_negative(std::string_view token) const;
  bool contains(std::string_view token) const {
    return is_positive(token) || is_negative(token);
  }

  // Longest lexicon entry that is a prefix of `text`, honoring the
  // word-boundary rule. Returns {match length in bytes, canonical token}.
  std::optional<std::pair<std::size_t, std::string>> match_at(
      std::string_view text, std::size_t pos) const;

 private:
  std::vector<std::string> positive_;
  std::vector<std::string> negative_;
  // (matching form, canonical token), sorted by descending length.
  std::vector<std::pair<std::string, std::string>> patterns_;
};

// Replaces URLs with <url> and @-mentions with <user>, then lowercases ASCII
// and Latin-1 letters. Idempotent.
std::string normalize(std::string_view text);

// Deterministic tokenizer for normalized text.
//  - whitespace separates tokens;
//  - <url> and <user> are kept intact;
//  - lexicon emoticons are single tokens;
//  - runs of the same punctuation character form one token;
//  - other punctuation is split from adjoining word characters.
TokenSequence tokenize(std::string_view text,
                       const EmoticonLexicon& lexicon = EmoticonLexicon::builtin());

// Emoticon-based weak label. Returns nullopt when the sequence has no
// emoticon or emoticons of both polarities. The returned sequence has every
// lexicon emoticon removed and may be empty.
std::optional<std::pair<WeakLabel, TokenSequence>> weak_label(
    const TokenSequence& tokens,
    const EmoticonLexicon& lexicon = EmoticonLexicon::builtin());

// normalize + tokenize.
TokenSequence preprocess(std::string_view text,
                         const EmoticonLexicon& lexicon = EmoticonLexicon::builtin());

std::string join_tokens(const TokenSequence& tokens);

// Whitespace split only, for already-tokenized text.
TokenSequence split_whitespace(std::string_view text);

}  // namespace sentcnn

#endif  // SENTCNN_TEXTPREP_HPP_
