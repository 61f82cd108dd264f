#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qlink::enigma {

inline constexpr std::size_t kMinSeedKeyBits = 16;

/// Shared secret seed key K_s as an explicit bit string.
class SeedKey {
 public:
  /// Throws ConfigError if fewer than 16 bits are given.
  explicit SeedKey(std::vector<bool> bits);

  /// Deterministic key of `num_bits` bits drawn from `seed` (simulation convenience).
  static SeedKey derive(std::uint64_t seed, std::size_t num_bits);

  std::size_t size() const { return bits_.size(); }
  const std::vector<bool>& bits() const { return bits_; }
  SeedKey with_bit_flipped(std::size_t index) const;

 private:
  std::vector<bool> bits_;
};

/// Counter-mode expansion of a seed key into basis indices in [0, M).
///
/// Absorb: h = 0x6A09E667F3BCC908 ^ n; for each 64-bit word w of the key (bit i of
/// word j is key bit 64j+i, zero padded) h = mix64(h ^ w); finally h = mix64(h ^ n).
/// Keystream word i is mix64(h + (i+1)*0x9E3779B97F4A7C15). Keystream bit t is bit
/// (t mod 64) of word t/64. Symbol s reads w = bit_width(M-1) bits starting at s*w,
/// LSB first, and maps them to (bits*M) >> w, which is the identity for power-of-two M.
class Keystream {
 public:
  Keystream(const SeedKey& key, std::uint32_t num_bases);

  std::uint32_t next();
  void seek(std::uint64_t symbol) { position_ = symbol; }
  std::uint64_t position() const { return position_; }
  std::uint32_t num_bases() const { return num_bases_; }
  unsigned bits_per_symbol() const { return width_; }

 private:
  std::uint64_t word(std::uint64_t index) const;

  std::uint64_t absorbed_;
  std::uint32_t num_bases_;
  unsigned width_;
  std::uint64_t position_ = 0;
};

/// Throws UsageError if num_symbols == 0.
std::vector<std::uint32_t> expand_keystream(const SeedKey& key, std::uint32_t num_bases,
                                            std::size_t num_symbols);

}  // namespace qlink::enigma
