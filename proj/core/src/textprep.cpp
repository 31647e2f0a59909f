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
#include "sentcnn/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sentcnn/error.hpp"

namespace sentcnn {
namespace {

// Keep in sync with core/resources/emoticons.txt.
constexpr std::string_view kBuiltinLexicon = R"(# Emoticon lexicon used for weak labeling, version 1.
# One emoticon per line. Lines starting with '#' are comments.
[positive]
:)
:-)
: )
:D
=)
;)
;-)
:P
:p
xD
XD
<3
:]
[negative]
:(
:-(
: (
:'(
;(
D:
:[
</3
)";

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

bool is_ascii_word(char c) { return is_ascii_alnum(c) || c == '_'; }

// Tokenizer word characters: ASCII word characters plus every byte of a
// multi-byte UTF-8 sequence.
bool is_word_byte(char c) {
  return is_ascii_word(c) || static_cast<unsigned char>(c) >= 0x80;
}

char ascii_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](char c) { return ascii_lower(c); });
  return out;
}

bool starts_with_nocase(std::string_view text, std::size_t pos,
                        std::string_view prefix) {
  if (text.size() - pos < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (ascii_lower(text[pos + i]) != prefix[i]) return false;
  }
  return true;
}

std::string strip(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  // Only trailing CR/LF and tabs are insignificant; ": )" contains a space
  // that must survive.
  while (b < e && (s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n' ||
                   s[e - 1] == ' ')) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

std::string canonical_form(std::string_view entry) {
  std::string out;
  for (char c : entry) {
    if (!is_space(c)) out.push_back(ascii_lower(c));
  }
  return out;
}

bool contains_token(const std::vector<std::string>& set, std::string_view t) {
  return std::find(set.begin(), set.end(), t) != set.end();
}

}  // namespace

EmoticonLexicon::EmoticonLexicon(std::vector<std::string> positive,
                                 std::vector<std::string> negative) {
  auto add = [this](const std::string& entry, std::vector<std::string>& dst) {
    if (entry.empty()) return;
    std::string canon = canonical_form(entry);
    if (canon.empty()) return;
    if (!contains_token(dst, canon)) dst.push_back(canon);
    const std::string matching = ascii_lower(entry);
    const auto it = std::find_if(
        patterns_.begin(), patterns_.end(),
        [&](const auto& p) { return p.first == matching; });
    if (it == patterns_.end()) patterns_.emplace_back(matching, canon);
  };
  for (const auto& e : positive) add(e, positive_);
  for (const auto& e : negative) add(e, negative_);
  for (const auto& p : positive_) {
    if (contains_token(negative_, p)) {
      throw InputError("emoticon listed with both polarities: " + p);
    }
  }
  std::stable_sort(patterns_.begin(), patterns_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
}

const EmoticonLexicon& EmoticonLexicon::builtin() {
  static const EmoticonLexicon lexicon = parse(kBuiltinLexicon);
  return lexicon;
}

EmoticonLexicon EmoticonLexicon::parse(std::string_view text) {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  std::vector<std::string>* section = nullptr;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line == "[positive]") {
      section = &positive;
    } else if (line == "[negative]") {
      section = &negative;
    } else if (section == nullptr) {
      throw InputError("emoticon lexicon line " + std::to_string(line_no) +
                       ": entry outside of a section");
    } else {
      section->push_back(line);
    }
  }
  return EmoticonLexicon(std::move(positive), std::move(negative));
}

EmoticonLexicon EmoticonLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open emoticon lexicon: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool EmoticonLexicon::is_positive(std::string_view token) const {
  return contains_token(positive_, token);
}

bool EmoticonLexicon::is_negative(std::string_view token) const {
  return contains_token(negative_, token);
}

std::optional<std::pair<std::size_t, std::string>> EmoticonLexicon::match_at(
    std::string_view text, std::size_t pos) const {
  for (const auto& [pattern, canon] : patterns_) {
    if (!starts_with_nocase(text, pos, pattern)) continue;
    // An emoticon that begins (ends) with a letter or digit must not be glued
    // to a preceding (following) word character, so "xd" inside "maxdose"
    // or ":d" in ":dog" do not match.
    if (is_ascii_alnum(pattern.front()) && pos > 0 &&
        is_word_byte(text[pos - 1])) {
      continue;
    }
    const std::size_t end = pos + pattern.size();
    if (is_ascii_alnum(pattern.back()) && end < text.size() &&
        is_word_byte(text[end])) {
      continue;
    }
    return std::make_pair(pattern.size(), canon);
  }
  return std::nullopt;
}

std::string normalize(std::string_view text) {
  std::string replaced;
  replaced.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (starts_with_nocase(text, i, "http://") ||
        starts_with_nocase(text, i, "https://") ||
        starts_with_nocase(text, i, "www.")) {
      while (i < text.size() && !is_space(text[i])) ++i;
      replaced += kUrlToken;
      continue;
    }
    if (text[i] == '@' && i + 1 < text.size() && is_ascii_word(text[i + 1])) {
      ++i;
      while (i < text.size() && is_ascii_word(text[i])) ++i;
      replaced += kUserToken;
      continue;
    }
    replaced.push_back(text[i]);
    ++i;
  }

  // Lowercase ASCII and the Latin-1 supplement capitals U+00C0..U+00DE
  // (except U+00D7), which covers French, German and Italian text.
  for (std::size_t k = 0; k < replaced.size(); ++k) {
    const auto c = static_cast<unsigned char>(replaced[k]);
    if (c >= 'A' && c <= 'Z') {
      replaced[k] = static_cast<char>(c - 'A' + 'a');
    } else if (c == 0xC3 && k + 1 < replaced.size()) {
      const auto n = static_cast<unsigned char>(replaced[k + 1]);
      if (n >= 0x80 && n <= 0x9E && n != 0x97) {
        replaced[k + 1] = static_cast<char>(n + 0x20);
      }
      ++k;
    }
  }
  return replaced;
}

TokenSequence tokenize(std::string_view text, const EmoticonLexicon& lexicon) {
  TokenSequence tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (text.substr(i, kUrlToken.size()) == kUrlToken) {
      tokens.emplace_back(kUrlToken);
      i += kUrlToken.size();
      continue;
    }
    if (text.substr(i, kUserToken.size()) == kUserToken) {
      tokens.emplace_back(kUserToken);
      i += kUserToken.size();
      continue;
    }
    if (auto emo = lexicon.match_at(text, i)) {
      tokens.push_back(std::move(emo->second));
      i += emo->first;
      continue;
    }
    const std::size_t start = i;
    if (is_word_byte(c)) {
      // Word run; an apostrophe between word characters stays inside.
      while (i < text.size()) {
        if (is_word_byte(text[i])) {
          ++i;
        } else if (text[i] == '\'' && i + 1 < text.size() &&
                   is_word_byte(text[i + 1])) {
          i += 2;
        } else {
          break;
        }
      }
    } else {
      while (i < text.size() && text[i] == c) ++i;
    }
    tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::optional<std::pair<WeakLabel, TokenSequence>> weak_label(
    const TokenSequence& tokens, const EmoticonLexicon& lexicon) {
  bool has_pos = false;
  bool has_neg = false;
  TokenSequence rest;
  rest.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (lexicon.is_positive(t)) {
      has_pos = true;
    } else if (lexicon.is_negative(t)) {
      has_neg = true;
    } else {
      rest.push_back(t);
    }
  }
  if (has_pos == has_neg) return std::nullopt;
  return std::make_pair(has_pos ? WeakLabel::kPositive : WeakLabel::kNegative,
                        std::move(rest));
}

TokenSequence preprocess(std::string_view text,
                         const EmoticonLexicon& lexicon) {
  return tokenize(normalize(text), lexicon);
}

std::string join_tokens(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

TokenSequence split_whitespace(std::string_view text) {
  TokenSequence out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

}  // namespace sentcnn
