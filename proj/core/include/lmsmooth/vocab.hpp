// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lmsmooth/errors.hpp"

namespace lmsmooth {

using WordId = std::uint32_t;
using Count = std::uint64_t;

/// Bidirectional token <-> dense id mapping. Ids 0 and 1 are reserved for
/// the sentence markers and every id stays stable for the life of the
/// vocabulary (interning only appends).
class Vocabulary {
 public:
  static constexpr WordId kBos = 0;  // "<s>"
  static constexpr WordId kEos = 1;  // "</s>"

  Vocabulary();

  /// Returns the id of `token`, adding it if unseen.
  WordId intern(std::string_view token);

  std::optional<WordId> find(std::string_view token) const;

  /// Like find() but throws OovError when the token is unknown.
  WordId require(std::string_view token) const;

  const std::string& word(WordId id) const { return words_.at(id); }

  std::size_t size() const { return words_.size(); }

  /// Word ids ordered by byte-lexicographic token comparison.
  std::vector<WordId> ids_sorted_by_token() const;

  bool operator==(const Vocabulary& other) const { return words_ == other.words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> index_;
};

inline constexpr const char* kBosToken = "<s>";
inline constexpr const char* kEosToken = "</s>";

}  // namespace lmsmooth
