// Apache License, Version 2.0, refer to LICENSE.txt
#include "lmsmooth/vocab.hpp"

#include <algorithm>

namespace lmsmooth {

Vocabulary::Vocabulary() {
  intern(kBosToken);
  intern(kEosToken);
}

WordId Vocabulary::intern(std::string_view token) {
  auto it = index_.find(std::string(token));
  if (it != index_.end()) return it->second;
  WordId id = static_cast<WordId>(words_.size());
  words_.emplace_back(token);
  index_.emplace(words_.back(), id);
  return id;
}

std::optional<WordId> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WordId Vocabulary::require(std::string_view token) const {
  auto id = find(token);
  if (!id) throw OovError("unknown token: " + std::string(token));
  return *id;
}

std::vector<WordId> Vocabulary::ids_sorted_by_token() const {
  std::vector<WordId> ids(words_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<WordId>(i);
  std::sort(ids.begin(), ids.end(),
            [this](WordId a, WordId b) { return words_[a] < words_[b]; });
  return ids;
}

}  // namespace lmsmooth
