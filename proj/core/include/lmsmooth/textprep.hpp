// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lmsmooth/errors.hpp"

namespace lmsmooth {

/// One sentence as a token list. The first token is always "<s>" and the
/// last is always "</s>"; tokens never contain whitespace.
using Sentence = std::vector<std::string>;

/// Checks the Sentence invariants (used by tests and debug assertions).
bool is_valid_sentence(const Sentence& s);

struct TokenizerRules {
  std::string number_token = "#";
  // Whole tokens exempt from punctuation splitting.
  std::set<std::string> abbreviation_whitelist = {
      "Mr.", "Mrs.", "Dr.", "Ms.",  "No.",  "hon.",
      "Hon.", "incl.", "a.m.", "p.m.", "etc.", "vs."};
  // Characters detached from word boundaries as standalone tokens.
  // "--" is additionally treated as a unit wherever it appears.
  std::set<char> split_punctuation = {'.', ',', '!', '?', ':', ';', '"', '\''};
  bool apostrophe_suffix_split = true;
};

/// Tokenizes one line of raw text into a marker-wrapped Sentence:
/// whitespace split, numbers masked with rules.number_token, punctuation
/// detached (whitelisted abbreviations kept whole), apostrophe suffixes
/// ("'s", "'ll", ...) split off. Lines already carrying "<s>"/"</s>" are
/// not double-wrapped, so the function is idempotent on its own output.
/// Throws EmptySentence if nothing remains between the markers.
Sentence tokenize_sentence(std::string_view raw_line, const TokenizerRules& rules = {});

/// True when the token is masked by the number rule: optional sign, digits,
/// optional groups of ",ddd" or ".ddd".
bool is_number_token(std::string_view token);

/// Deals sentence t to block (t mod b), order preserved within each block.
/// Throws InvalidBlockCount for b = 0.
std::vector<std::vector<Sentence>> split_blocks(const std::vector<Sentence>& sentences,
                                                std::size_t b);

/// Sample 1: keeps exactly the sentences whose tokens all belong to `vocab`.
std::vector<Sentence> filter_oov(const std::vector<Sentence>& test,
                                 const std::set<std::string>& vocab);

/// Sample 2: removes sentences whose token sequence occurs in `training`,
/// and removes within-sample duplicates. With keep_first=false (default)
/// every copy of a duplicated sentence is dropped; with keep_first=true the
/// first copy survives.
std::vector<Sentence> dedup(const std::vector<Sentence>& sample1,
                            const std::vector<Sentence>& training,
                            bool keep_first = false);

/// Sample 3: sorts byte-lexicographically by the space-joined token string
/// and returns the first floor(n/2) sentences.
std::vector<Sentence> half_sample(const std::vector<Sentence>& sample2);

std::string join_tokens(const Sentence& s);

}  // namespace lmsmooth
