// Apache License, Version 2.0, refer to LICENSE.txt
#include "lmsmooth/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lmsmooth/vocab.hpp"

namespace lmsmooth {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Suffixes that begin with an apostrophe and get detached as tokens.
bool is_apostrophe_suffix(std::string_view s) {
  static const std::set<std::string, std::less<>> suffixes = {
      "'", "'s", "'S", "'t", "'T", "'ll", "'LL", "'re", "'RE",
      "'ve", "'VE", "'d", "'D", "'m", "'M", "'em"};
  return suffixes.count(s) > 0;
}

void process_token(std::string_view w, const TokenizerRules& rules,
                   std::vector<std::string>& out) {
  if (w.empty()) return;
  if (rules.abbreviation_whitelist.count(std::string(w))) {
    out.emplace_back(w);
    return;
  }
  if (rules.apostrophe_suffix_split && is_apostrophe_suffix(w)) {
    out.emplace_back(w);  // an already-detached suffix passes through
    return;
  }
  if (is_number_token(w)) {
    out.push_back(rules.number_token);
    return;
  }
  if (w != "--") {
    if (auto pos = w.find("--"); pos != std::string_view::npos) {
      process_token(w.substr(0, pos), rules, out);
      out.emplace_back("--");
      process_token(w.substr(pos + 2), rules, out);
      return;
    }
  }
  if (w.size() > 1 && rules.split_punctuation.count(w.front())) {
    out.emplace_back(1, w.front());
    process_token(w.substr(1), rules, out);
    return;
  }
  if (w.size() > 1 && rules.split_punctuation.count(w.back())) {
    process_token(w.substr(0, w.size() - 1), rules, out);
    out.emplace_back(1, w.back());
    return;
  }
  if (rules.apostrophe_suffix_split) {
    if (auto pos = w.rfind('\''); pos != std::string_view::npos && pos > 0 &&
                                  is_apostrophe_suffix(w.substr(pos))) {
      process_token(w.substr(0, pos), rules, out);
      out.emplace_back(w.substr(pos));
      return;
    }
  }
  out.emplace_back(w);
}

}  // namespace

bool is_number_token(std::string_view token) {
  std::size_t i = 0;
  if (i < token.size() && (token[i] == '+' || token[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < token.size() && is_digit(token[i])) ++i, ++digits;
  if (digits == 0) return false;
  while (i < token.size()) {
    if (token[i] != '.' && token[i] != ',') return false;
    ++i;
    std::size_t group = 0;
    while (i < token.size() && is_digit(token[i])) ++i, ++group;
    if (group == 0) return false;
  }
  return true;
}

bool is_valid_sentence(const Sentence& s) {
  if (s.size() < 2) return false;
  if (s.front() != kBosToken || s.back() != kEosToken) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::string& t = s[i];
    if (t.empty()) return false;
    if (t == kBosToken && i != 0) return false;
    if (t == kEosToken && i + 1 != s.size()) return false;
    if (t.find_first_of(" \t\r\n") != std::string::npos) return false;
  }
  return true;
}

Sentence tokenize_sentence(std::string_view raw_line, const TokenizerRules& rules) {
  std::vector<std::string> body;
  std::size_t i = 0;
  while (i < raw_line.size()) {
    while (i < raw_line.size() && std::isspace(static_cast<unsigned char>(raw_line[i]))) ++i;
    std::size_t start = i;
    while (i < raw_line.size() && !std::isspace(static_cast<unsigned char>(raw_line[i]))) ++i;
    if (i > start) {
      std::string_view w = raw_line.substr(start, i - start);
      if (w == kBosToken || w == kEosToken) continue;  // no double wrapping
      process_token(w, rules, body);
    }
  }
  if (body.empty()) throw EmptySentence("line tokenized to nothing");
  Sentence s;
  s.reserve(body.size() + 2);
  s.emplace_back(kBosToken);
  for (auto& t : body) s.push_back(std::move(t));
  s.emplace_back(kEosToken);
  return s;
}

std::vector<std::vector<Sentence>> split_blocks(const std::vector<Sentence>& sentences,
                                                std::size_t b) {
  if (b == 0) throw InvalidBlockCount("block count must be >= 1");
  std::vector<std::vector<Sentence>> blocks(b);
  for (std::size_t t = 0; t < sentences.size(); ++t) blocks[t % b].push_back(sentences[t]);
  return blocks;
}

std::vector<Sentence> filter_oov(const std::vector<Sentence>& test,
                                 const std::set<std::string>& vocab) {
  std::vector<Sentence> kept;
  for (const auto& s : test) {
    bool in_vocab = std::all_of(s.begin(), s.end(),
                                [&](const std::string& t) { return vocab.count(t) > 0; });
    if (in_vocab) kept.push_back(s);
  }
  return kept;
}

std::vector<Sentence> dedup(const std::vector<Sentence>& sample1,
                            const std::vector<Sentence>& training,
                            bool keep_first) {
  std::unordered_set<std::string> train_keys;
  for (const auto& s : training) train_keys.insert(join_tokens(s));

  std::unordered_map<std::string, std::size_t> multiplicity;
  for (const auto& s : sample1) ++multiplicity[join_tokens(s)];

  std::vector<Sentence> kept;
  std::unordered_set<std::string> emitted;
  for (const auto& s : sample1) {
    std::string key = join_tokens(s);
    if (train_keys.count(key)) continue;
    if (multiplicity[key] > 1) {
      if (!keep_first || !emitted.insert(key).second) continue;
    }
    kept.push_back(s);
  }
  return kept;
}

std::vector<Sentence> half_sample(const std::vector<Sentence>& sample2) {
  std::vector<Sentence> sorted = sample2;
  std::sort(sorted.begin(), sorted.end(), [](const Sentence& a, const Sentence& b) {
    return join_tokens(a) < join_tokens(b);
  });
  sorted.resize(sorted.size() / 2);
  return sorted;
}

std::string join_tokens(const Sentence& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out.push_back(' ');
    out += s[i];
  }
  return out;
}

}  // namespace lmsmooth
