#include "tradeledger/docstore.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include "tradeledger/error.hpp"

namespace tradeledger {

namespace {

constexpr std::uint8_t kLeafTag = 0x00;
constexpr std::uint8_t kNodeTag = 0x01;

std::string leaf_node(const ContentHash& leaf) {
  std::string node(1, static_cast<char>(kLeafTag));
  node.append(reinterpret_cast<const char*>(leaf.bytes().data()), ContentHash::kSize);
  return node;
}

std::string interior_node(const ContentHash& left, const ContentHash& right) {
  std::string node(1, static_cast<char>(kNodeTag));
  node.append(reinterpret_cast<const char*>(left.bytes().data()), ContentHash::kSize);
  node.append(reinterpret_cast<const char*>(right.bytes().data()), ContentHash::kSize);
  return node;
}

// Builds the tree bottom-up, handing each encoded node to `emit`.
template <typename Emit>
ContentHash build_merkle(std::span<const ContentHash> leaves, Emit&& emit) {
  if (leaves.empty()) throw Error(ErrorCode::EmptyBundle);
  std::vector<ContentHash> level;
  level.reserve(leaves.size());
  for (const auto& leaf : leaves) {
    auto node = leaf_node(leaf);
    level.push_back(sha256(node));
    emit(std::move(node), level.back());
  }
  while (level.size() > 1) {
    std::vector<ContentHash> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      auto node = interior_node(level[i], level[i + 1]);
      next.push_back(sha256(node));
      emit(std::move(node), next.back());
    }
    if (level.size() % 2 == 1) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::StorageFailure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

ContentHash sha256(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  ContentHash::Bytes digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1 || len != digest.size()) {
    throw Error(ErrorCode::StorageFailure, "sha256 failed");
  }
  return ContentHash(digest);
}

ContentHash merkle_root(std::span<const ContentHash> leaves) {
  return build_merkle(leaves, [](std::string&&, const ContentHash&) {});
}

DocStore::DocStore(std::filesystem::path directory) : directory_(std::move(directory)) {
  std::filesystem::create_directories(*directory_);
  for (const auto& entry : std::filesystem::directory_iterator(*directory_)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (!ContentHash::is_valid_hex(name)) continue;
    auto bytes = read_all(entry.path());
    const auto hash = sha256(bytes);
    if (hash.to_hex() != name) {
      throw Error(ErrorCode::StorageFailure, "content of " + entry.path().string() + " does not match its name");
    }
    objects_.emplace(hash, std::move(bytes));
  }
}

ContentHash DocStore::put_locked(std::string bytes, const ContentHash& hash) {
  if (objects_.contains(hash)) return hash;
  if (directory_) {
    const auto target = *directory_ / hash.to_hex();
    const auto tmp = *directory_ / (hash.to_hex() + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      if (!out) throw Error(ErrorCode::StorageFailure, "cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }
  objects_.emplace(hash, std::move(bytes));
  return hash;
}

ContentHash DocStore::put(std::string_view bytes) {
  const auto hash = sha256(bytes);
  std::unique_lock lock(mutex_);
  return put_locked(std::string(bytes), hash);
}

std::string DocStore::get(const ContentHash& hash) const {
  std::shared_lock lock(mutex_);
  const auto it = objects_.find(hash);
  if (it == objects_.end()) throw Error(ErrorCode::NotFound, hash.to_hex());
  return it->second;
}

bool DocStore::contains(const ContentHash& hash) const {
  std::shared_lock lock(mutex_);
  return objects_.contains(hash);
}

ContentHash DocStore::bundle(std::span<const ContentHash> hashes) {
  if (hashes.empty()) throw Error(ErrorCode::EmptyBundle);
  std::unique_lock lock(mutex_);
  for (const auto& h : hashes) {
    if (!objects_.contains(h)) throw Error(ErrorCode::NotFound, h.to_hex());
  }
  return build_merkle(hashes, [&](std::string&& node, const ContentHash& id) { put_locked(std::move(node), id); });
}

std::size_t DocStore::size() const {
  std::shared_lock lock(mutex_);
  return objects_.size();
}

}  // namespace tradeledger
