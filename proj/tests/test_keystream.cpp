#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "qlink/errors.hpp"
#include "qlink/keystream.hpp"

using namespace qlink::enigma;

namespace {

// Re-derivation of the documented construction, bit by bit, written directly from
// the Keystream doc comment.
std::uint64_t doc_mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

std::vector<std::uint32_t> documented_keystream(const std::vector<bool>& key, unsigned width,
                                                std::size_t count) {
  const std::uint64_t n = key.size();
  std::uint64_t h = 0x6A09E667F3BCC908ULL ^ n;
  const std::size_t words = (key.size() + 63) / 64;
  for (std::size_t j = 0; j < words; ++j) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < 64; ++i) {
      const std::size_t bit = 64 * j + i;
      if (bit < key.size() && key[bit]) w |= std::uint64_t{1} << i;
    }
    h = doc_mix(h ^ w);
  }
  h = doc_mix(h ^ n);
  auto stream_bit = [h](std::uint64_t t) {
    return (doc_mix(h + (t / 64 + 1) * 0x9E3779B97F4A7C15ULL) >> (t % 64)) & 1U;
  };
  std::vector<std::uint32_t> out;
  for (std::size_t s = 0; s < count; ++s) {
    std::uint32_t v = 0;
    for (unsigned b = 0; b < width; ++b) v |= static_cast<std::uint32_t>(stream_bit(s * width + b)) << b;
    out.push_back(v);
  }
  return out;
}

std::vector<bool> pattern_key(std::size_t bits) {
  std::vector<bool> key(bits);
  for (std::size_t i = 0; i < bits; ++i) key[i] = (i * 7 + 3) % 5 < 2;
  return key;
}

}  // namespace

TEST_CASE("seed key length is enforced") {
  CHECK_THROWS_AS(SeedKey(std::vector<bool>(15)), qlink::ConfigError);
  CHECK_NOTHROW(SeedKey(std::vector<bool>(16)));
  CHECK_THROWS_AS(SeedKey::derive(1, 8), qlink::ConfigError);
  CHECK(SeedKey::derive(42, 256).size() == 256);
  CHECK(SeedKey::derive(42, 256).bits() == SeedKey::derive(42, 256).bits());
  CHECK(SeedKey::derive(42, 256).bits() != SeedKey::derive(43, 256).bits());
}

TEST_CASE("keystream is deterministic") {
  const SeedKey key = SeedKey::derive(42, 256);
  CHECK(expand_keystream(key, 2048, 1) == expand_keystream(key, 2048, 1));
  CHECK(expand_keystream(key, 2048, 5000) == expand_keystream(key, 2048, 5000));
  CHECK_THROWS_AS(expand_keystream(key, 2048, 0), qlink::UsageError);
  CHECK_THROWS_AS(Keystream(key, 1), qlink::ConfigError);
}

TEST_CASE("keystream matches the documented construction bit for bit") {
  for (std::size_t bits : {16U, 64U, 65U, 256U, 300U}) {
    const auto raw = pattern_key(bits);
    const SeedKey key(raw);
    for (std::uint32_t m : {2U, 16U, 1024U, 2048U, 1U << 20}) {
      Keystream ks(key, m);
      const auto expected = documented_keystream(raw, ks.bits_per_symbol(), 400);
      CHECK(expand_keystream(key, m, 400) == expected);
    }
  }
}

TEST_CASE("each symbol consumes log2 M bits for power-of-two M") {
  const SeedKey key = SeedKey::derive(1, 128);
  CHECK(Keystream(key, 2).bits_per_symbol() == 1);
  CHECK(Keystream(key, 1024).bits_per_symbol() == 10);
  CHECK(Keystream(key, 2048).bits_per_symbol() == 11);
  CHECK(Keystream(key, 3).bits_per_symbol() == 2);
  // Two 1024-ary symbols are exactly one 2^20-ary symbol.
  const auto fine = expand_keystream(key, 1024, 200);
  const auto coarse = expand_keystream(key, 1U << 20, 100);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    CHECK(coarse[i] == (fine[2 * i] | (fine[2 * i + 1] << 10)));
  }
}

TEST_CASE("non-power-of-two M stays in range") {
  for (auto b : expand_keystream(SeedKey::derive(5, 64), 3, 3000)) CHECK(b < 3U);
  for (auto b : expand_keystream(SeedKey::derive(5, 64), 1000, 3000)) CHECK(b < 1000U);
}

TEST_CASE("seek reproduces the sequential stream") {
  const SeedKey key = SeedKey::derive(9, 256);
  const auto seq = expand_keystream(key, 2048, 1000);
  Keystream ks(key, 2048);
  for (std::uint64_t s : {0ULL, 1ULL, 5ULL, 63ULL, 64ULL, 577ULL, 999ULL}) {
    ks.seek(s);
    CHECK(ks.next() == seq[s]);
    CHECK(ks.position() == s + 1);
  }
}

TEST_CASE("uniformity: chi-square within the 99% band for M=1024") {
  // Band from the chi-square(1023) quantiles at 0.005 and 0.995.
  constexpr double kLower = 910.2463086064963;
  constexpr double kUpper = 1143.2653170252513;
  constexpr std::size_t kSymbols = 10'000;
  for (std::uint64_t seed : {42ULL, 7ULL, 2024ULL}) {
    const auto seq = expand_keystream(SeedKey::derive(seed, 256), 1024, kSymbols);
    std::vector<double> hist(1024, 0.0);
    for (auto b : seq) hist[b] += 1.0;
    const double expected = static_cast<double>(kSymbols) / 1024.0;
    double chi2 = 0.0;
    for (double h : hist) chi2 += (h - expected) * (h - expected) / expected;
    CHECK(chi2 > kLower);
    CHECK(chi2 < kUpper);
  }
}

TEST_CASE("avalanche: one flipped key bit changes most symbols") {
  const SeedKey key = SeedKey::derive(42, 256);
  const auto base = expand_keystream(key, 1024, 10'000);
  for (std::size_t bit : {0U, 1U, 63U, 64U, 200U, 255U}) {
    const auto other = expand_keystream(key.with_bit_flipped(bit), 1024, 10'000);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < base.size(); ++i) differ += base[i] != other[i];
    CHECK(differ >= 4000);
  }
}
