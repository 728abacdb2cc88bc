#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "disinfo/hashing.hpp"

using namespace disinfo;

TEST_CASE("fnv1a64 reference vectors") {
  // published FNV-1a 64-bit test values
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("fnv1a64 is a stream: concatenation chains") {
  CHECK(fnv1a64("bar", fnv1a64("foo")) == fnv1a64("foobar"));
}

TEST_CASE("fnv1a64_u64 equals byte-wise little-endian feed") {
  const std::uint64_t v = 0x0123456789abcdefull;
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  CHECK(fnv1a64_u64(v) == fnv1a64(std::string_view(bytes, 8)));
}

TEST_CASE("splitmix64 reference stream for seed 0") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafull);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ull);
  CHECK(rng.next() == 0x06c45d188009454full);
}

TEST_CASE("splitmix64 streams from distinct seeds diverge") {
  SplitMix64 a(1), b(2);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    seen.insert(a.next());
    seen.insert(b.next());
  }
  CHECK(seen.size() == 200);
}

TEST_CASE("mix64 avalanche sanity: single-bit flips change many outputs") {
  const std::uint64_t base = mix64(12345);
  int changed = 0;
  for (int bit = 0; bit < 64; ++bit)
    if (mix64(12345ull ^ (1ull << bit)) != base) ++changed;
  CHECK(changed == 64);
}

TEST_CASE("to_hex") {
  CHECK(to_hex(0) == "0000000000000000");
  CHECK(to_hex(0xdeadbeefull) == "00000000deadbeef");
  CHECK(to_hex(0xffffffffffffffffull) == "ffffffffffffffff");
}
