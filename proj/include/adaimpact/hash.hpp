#pragma once

#include <string>
#include <string_view>

namespace adaimpact {

/// Name written into snapshot headers; snapshots with another name are
/// rejected on load.
inline constexpr std::string_view kHashAlgorithm = "sha256";

/// Lowercase hex SHA-256 of `data`.
std::string content_hash(std::string_view data);

/// Incremental variant used when hashing token streams.
class ContentHasher {
public:
  ContentHasher();
  ~ContentHasher();
  ContentHasher(const ContentHasher &) = delete;
  ContentHasher &operator=(const ContentHasher &) = delete;

  void update(std::string_view data);
  std::string finish();

private:
  struct State;
  State *state_;
};

} // namespace adaimpact
