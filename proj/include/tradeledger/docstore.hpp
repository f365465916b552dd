#pragma once

#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tradeledger/types.hpp"

namespace tradeledger {

// SHA-256 of raw bytes.
ContentHash sha256(std::string_view bytes);

// Merkle root over `leaves` in order. Each leaf becomes a node
// 0x00 || leaf; interior nodes are 0x01 || left || right; an odd node at the
// end of a level is promoted unchanged. Every node id is the SHA-256 of its
// encoding, so a single leaf still yields a root distinct from the leaf.
// Throws Error{EmptyBundle} for an empty list.
ContentHash merkle_root(std::span<const ContentHash> leaves);

// Immutable content-addressed store. Object ids are the SHA-256 of their
// bytes; storing identical bytes twice is a no-op. With a directory, each
// object is also written to `<dir>/<hex digest>` and reloaded on construction.
//
// Thread-safe: concurrent put/get are allowed.
class DocStore {
 public:
  DocStore() = default;
  explicit DocStore(std::filesystem::path directory);

  DocStore(const DocStore&) = delete;
  DocStore& operator=(const DocStore&) = delete;

  ContentHash put(std::string_view bytes);

  // Throws Error{NotFound}.
  std::string get(const ContentHash& hash) const;
  bool contains(const ContentHash& hash) const;

  // Stores every node of the Merkle DAG over `hashes` (which must already be
  // present) and returns its root. Throws Error{EmptyBundle | NotFound}.
  ContentHash bundle(std::span<const ContentHash> hashes);

  std::size_t size() const;
  const std::optional<std::filesystem::path>& directory() const { return directory_; }

 private:
  ContentHash put_locked(std::string bytes, const ContentHash& hash);

  mutable std::shared_mutex mutex_;
  std::unordered_map<ContentHash, std::string> objects_;
  std::optional<std::filesystem::path> directory_;
};

}  // namespace tradeledger
