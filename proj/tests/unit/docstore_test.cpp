#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <thread>

#include "sha256_oracle.hpp"
#include "tradeledger/docstore.hpp"
#include "tradeledger/error.hpp"

using namespace tradeledger;

namespace {

std::string random_bytes(std::mt19937_64& rng, std::size_t n) {
  std::string out(n, '\0');
  for (auto& c : out) c = static_cast<char>(rng() & 0xff);
  return out;
}

ContentHash::Bytes to_bytes(const std::array<std::uint8_t, 32>& a) { return a; }

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("tradeledger-docstore-" + std::to_string(std::random_device{}()));
    std::filesystem::remove_all(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Sha256, KnownVectorsAgreeWithOracle) {
  EXPECT_EQ(sha256("").to_hex(), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(oracle::sha256_hex(""), sha256("").to_hex());
  EXPECT_EQ(oracle::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256("abc").to_hex(), oracle::sha256_hex("abc"));
  std::mt19937_64 rng(1);
  for (std::size_t n : {1u, 55u, 56u, 63u, 64u, 65u, 119u, 1000u}) {
    const auto data = random_bytes(rng, n);
    EXPECT_EQ(sha256(data).to_hex(), oracle::sha256_hex(data)) << n;
  }
}

TEST(DocStore, PutIsIdempotent) {
  DocStore store;
  const auto a = store.put("bill of lading");
  const auto b = store.put("bill of lading");
  EXPECT_EQ(a, b);
  EXPECT_EQ(store.size(), 1u);
  EXPECT_NE(store.put("bill of lading."), a);
  EXPECT_EQ(store.size(), 2u);
}

TEST(DocStore, EmptyContent) {
  DocStore store;
  const auto h = store.put("");
  EXPECT_EQ(h.to_hex(), oracle::sha256_hex(""));
  EXPECT_EQ(store.get(h), "");
}

TEST(DocStore, GetUnknownIsNotFound) {
  DocStore store;
  try {
    store.get(sha256("never stored"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
  EXPECT_FALSE(store.contains(sha256("never stored")));
}

TEST(DocStore, OneMebibyteRoundTrip) {
  std::mt19937_64 rng(42);
  const auto data = random_bytes(rng, 1 << 20);
  DocStore store;
  const auto h = store.put(data);
  EXPECT_EQ(store.get(h), data);
  EXPECT_EQ(h.to_hex(), oracle::sha256_hex(data));
}

TEST(DocStore, DistinctContentDistinctHash) {
  std::mt19937_64 rng(3);
  std::set<std::string> seen_content;
  std::set<ContentHash> seen_hash;
  for (int i = 0; i < 2000; ++i) {
    const auto data = random_bytes(rng, 1 + rng() % 64);
    if (!seen_content.insert(data).second) continue;
    EXPECT_TRUE(seen_hash.insert(sha256(data)).second);
  }
}

TEST(DocStore, SingleBitTamperChangesHash) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    auto data = random_bytes(rng, 1 + rng() % 256);
    const auto before = sha256(data);
    const auto bit = rng() % (data.size() * 8);
    data[bit / 8] = static_cast<char>(data[bit / 8] ^ (1 << (bit % 8)));
    EXPECT_NE(sha256(data), before);
  }
}

TEST(Bundle, MatchesIndependentMerkle) {
  DocStore store;
  std::vector<ContentHash> hashes;
  std::vector<std::array<std::uint8_t, 32>> raw;
  for (int n = 1; n <= 7; ++n) {
    const auto h = store.put("doc " + std::to_string(n));
    hashes.push_back(h);
    raw.push_back(h.bytes());
    EXPECT_EQ(store.bundle(hashes), ContentHash(to_bytes(oracle::merkle_root(raw)))) << n;
    EXPECT_EQ(merkle_root(hashes), store.bundle(hashes));
  }
}

TEST(Bundle, SingleLeafIsNotTheLeaf) {
  DocStore store;
  const auto h = store.put("invoice");
  const std::vector<ContentHash> one{h};
  EXPECT_NE(store.bundle(one), h);
}

TEST(Bundle, OrderSensitive) {
  DocStore store;
  const auto a = store.put("a");
  const auto b = store.put("b");
  const std::vector<ContentHash> ab{a, b};
  const std::vector<ContentHash> ba{b, a};
  EXPECT_NE(store.bundle(ab), store.bundle(ba));
}

TEST(Bundle, StoresEveryNode) {
  DocStore store;
  std::vector<ContentHash> hashes;
  for (int i = 0; i < 5; ++i) hashes.push_back(store.put(std::string(1, static_cast<char>('a' + i))));
  const auto before = store.size();
  const auto root = store.bundle(hashes);
  EXPECT_TRUE(store.contains(root));
  // 5 leaf nodes, then interior levels of 2, 1 and the root.
  EXPECT_EQ(store.size(), before + 5 + 2 + 1 + 1);
  const auto node = store.get(root);
  EXPECT_EQ(sha256(node), root);
  EXPECT_EQ(node[0], '\x01');
}

TEST(Bundle, Errors) {
  DocStore store;
  const std::vector<ContentHash> none;
  const std::vector<ContentHash> missing{sha256("absent")};
  try {
    store.bundle(none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyBundle);
  }
  try {
    store.bundle(missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotFound);
  }
}

TEST(Bundle, RootIgnoresInsertionHistory) {
  DocStore first, second;
  const auto a1 = first.put("a");
  const auto b1 = first.put("b");
  second.put("unrelated");
  const auto b2 = second.put("b");
  const auto a2 = second.put("a");
  const std::vector<ContentHash> x{a1, b1};
  const std::vector<ContentHash> y{a2, b2};
  EXPECT_EQ(first.bundle(x), second.bundle(y));
}

TEST(Persistence, ReloadsFromDirectory) {
  TempDir dir;
  ContentHash h;
  {
    DocStore store(dir.path());
    h = store.put("letter of credit");
  }
  EXPECT_TRUE(std::filesystem::exists(dir.path() / h.to_hex()));
  DocStore reopened(dir.path());
  EXPECT_EQ(reopened.get(h), "letter of credit");
  EXPECT_EQ(reopened.size(), 1u);
}

TEST(Persistence, DetectsTamperedFile) {
  TempDir dir;
  ContentHash h;
  {
    DocStore store(dir.path());
    h = store.put("original");
  }
  {
    std::ofstream out(dir.path() / h.to_hex(), std::ios::binary | std::ios::trunc);
    out << "forged";
  }
  try {
    DocStore reopened(dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StorageFailure);
  }
}

TEST(Concurrency, ParallelPutsOfSameAndDistinctContent) {
  DocStore store;
  std::vector<std::thread> threads;
  std::vector<std::vector<ContentHash>> results(8);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 200; ++i) {
        results[t].push_back(store.put("shared " + std::to_string(i)));
        store.put("thread " + std::to_string(t) + " item " + std::to_string(i));
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(store.size(), 200u + 8u * 200u);
  for (int t = 1; t < 8; ++t) EXPECT_EQ(results[t], results[0]);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(store.get(results[0][i]), "shared " + std::to_string(i));
}
