#include "qlink/keystream.hpp"

#include <bit>

#include "qlink/errors.hpp"
#include "qlink/random.hpp"

namespace qlink::enigma {

namespace {
constexpr std::uint64_t kAbsorbInit = 0x6A09E667F3BCC908ULL;
constexpr std::uint64_t kKeyDerivationTag = 0x4B45595F44455256ULL;  // "KEY_DERV"
}  // namespace

SeedKey::SeedKey(std::vector<bool> bits) : bits_(std::move(bits)) {
  if (bits_.size() < kMinSeedKeyBits) {
    throw ConfigError("seed key must have at least " + std::to_string(kMinSeedKeyBits) + " bits");
  }
}

SeedKey SeedKey::derive(std::uint64_t seed, std::size_t num_bits) {
  rng::SplitMix64 gen(seed ^ kKeyDerivationTag);
  std::vector<bool> bits(num_bits);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < num_bits; ++i) {
    if (i % 64 == 0) word = gen.next();
    bits[i] = ((word >> (i % 64)) & 1U) != 0;
  }
  return SeedKey(std::move(bits));
}

SeedKey SeedKey::with_bit_flipped(std::size_t index) const {
  auto bits = bits_;
  bits.at(index) = !bits.at(index);
  return SeedKey(std::move(bits));
}

Keystream::Keystream(const SeedKey& key, std::uint32_t num_bases) : num_bases_(num_bases) {
  if (num_bases < 2) throw ConfigError("number of bases must be >= 2");
  width_ = static_cast<unsigned>(std::bit_width(num_bases - 1));

  const auto& bits = key.bits();
  const std::uint64_t n = bits.size();
  std::uint64_t h = kAbsorbInit ^ n;
  for (std::size_t base = 0; base < bits.size(); base += 64) {
    std::uint64_t w = 0;
    for (std::size_t i = 0; i < 64 && base + i < bits.size(); ++i) {
      if (bits[base + i]) w |= std::uint64_t{1} << i;
    }
    h = rng::mix64(h ^ w);
  }
  absorbed_ = rng::mix64(h ^ n);
}

std::uint64_t Keystream::word(std::uint64_t index) const {
  return rng::mix64(absorbed_ + (index + 1) * rng::kGoldenGamma);
}

std::uint32_t Keystream::next() {
  const std::uint64_t offset = position_ * width_;
  const std::uint64_t index = offset / 64;
  const unsigned shift = static_cast<unsigned>(offset % 64);
  std::uint64_t raw = word(index) >> shift;
  if (shift + width_ > 64) raw |= word(index + 1) << (64 - shift);
  raw &= (std::uint64_t{1} << width_) - 1;
  ++position_;
  if (std::has_single_bit(num_bases_)) return static_cast<std::uint32_t>(raw);
  return static_cast<std::uint32_t>((raw * num_bases_) >> width_);
}

std::vector<std::uint32_t> expand_keystream(const SeedKey& key, std::uint32_t num_bases,
                                            std::size_t num_symbols) {
  if (num_symbols == 0) throw UsageError("keystream length must be >= 1");
  Keystream ks(key, num_bases);
  std::vector<std::uint32_t> out(num_symbols);
  for (auto& b : out) b = ks.next();
  return out;
}

}  // namespace qlink::enigma
