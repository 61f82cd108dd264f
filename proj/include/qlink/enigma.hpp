#pragma once

// Quantum enigma cipher link model: a Y-00 style phase cipher with 2M coherent states
// on a circle. The shared keystream picks one of M antipodal bases per symbol; a data
// bit selects one end of that basis. Bob knows the basis and makes a binary homodyne
// decision. Eve, without the key, must resolve the full 2M-point constellation and
// is masked by quantum phase noise when neighbouring states are closer than it.
//
// Noise convention: vacuum quadrature variance 1/4 for homodyne, 1/2 per quadrature
// for heterodyne (3 dB penalty). Amplitudes are in units where |alpha|^2 is the mean
// photon number.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qlink/keystream.hpp"
#include "qlink/random.hpp"

namespace qlink::enigma {

enum class Detector { Homodyne, Heterodyne };

inline constexpr double kHomodyneVariance = 0.25;
inline constexpr double kHeterodyneVariance = 0.5;

struct CipherConfig {
  std::uint32_t num_bases = 2048;  // M
  std::uint32_t seed_key_bits = 256;
  double mean_photon_number = 1e4;
  double bob_transmissivity = 1.0;
  double eve_transmissivity = 1.0;
  Detector detector = Detector::Homodyne;  // Bob's receiver
  std::uint64_t rng_seed = 42;

  // Throws ConfigError on violated invariants.
  void validate() const;
  SeedKey seed_key() const { return SeedKey::derive(rng_seed, seed_key_bits); }
};

struct ConstellationPoint {
  std::uint32_t index = 0;  // [0, 2M)
  double phase = 0.0;       // pi * index / M
  double amplitude = 0.0;
};

std::vector<ConstellationPoint> constellation(std::uint32_t num_bases, double amplitude);

/// Point carrying `bit` on `basis`: basis + M * (bit ^ (basis & 1)). Adjacent bases
/// have opposite polarity so neighbouring points carry opposite bits.
std::uint32_t point_index(std::uint32_t basis, bool bit, std::uint32_t num_bases);

/// Data bit carried by constellation point `index` under its own basis (index mod M).
bool point_bit(std::uint32_t index, std::uint32_t num_bases);

/// Nearest of the 2M points to phase `angle` (radians, any range). Ties go to the lower index.
std::uint32_t nearest_point(double angle, std::uint32_t num_bases);

struct BerEstimate {
  double p_error = 0.0;
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;
  double ci_halfwidth_95 = 0.0;
  std::optional<double> analytic_p;
  // Expected error count < 5: p_error is only an upper bound, analytic_p is primary.
  bool below_resolution = false;
  double upper_bound_95 = 0.0;
};

BerEstimate make_estimate(std::uint64_t errors, std::uint64_t trials,
                          std::optional<double> analytic_p = std::nullopt);

struct MaskingReport {
  double neighbor_spacing_rad = 0.0;
  double phase_noise_std_rad = 0.0;
  double masking_number = 0.0;
  bool masked() const { return masking_number >= 1.0; }
};

/// Standard normal upper tail Q(x).
double gaussian_tail_q(double x);

/// Homodyne Bob: Q(mu / sigma) = Q(2 sqrt(kappa_B |alpha|^2)).
/// Throws DomainError for a heterodyne receiver.
BerEstimate bob_ber_analytic(const CipherConfig& cfg);

inline constexpr std::uint64_t kMinTrials = 10'000;
inline constexpr std::uint64_t kBlockTrials = 65'536;

struct RunOptions {
  unsigned workers = 1;
};

BerEstimate bob_ber_monte_carlo(const CipherConfig& cfg, std::uint64_t trials, RunOptions opts = {});
BerEstimate eve_ber_monte_carlo(const CipherConfig& cfg, std::uint64_t trials, RunOptions opts = {});

MaskingReport masking_report(const CipherConfig& cfg);

inline constexpr double kSeparationFloor = 1e-15;

struct SeparationReport {
  BerEstimate bob;
  BerEstimate eve;
  double separation_ratio = 0.0;
  MaskingReport masking;
  // false when the configuration is masked yet Eve did no worse than Bob
  bool separation_holds = true;
};

SeparationReport error_separation(const CipherConfig& cfg, std::uint64_t trials, RunOptions opts = {});

// ---- streaming pipeline --------------------------------------------------------

/// Mathematical box (keystream) plus modulator.
class Transmitter {
 public:
  Transmitter(const SeedKey& key, std::uint32_t num_bases, double mean_photon_number);

  /// Encrypts one data bit into one coherent state (complex amplitude).
  std::complex<double> send(bool bit);
  void seek(std::uint64_t symbol) { keystream_.seek(symbol); }
  std::uint32_t last_index() const { return last_index_; }

 private:
  Keystream keystream_;
  double amplitude_;
  std::uint32_t last_index_ = 0;
};

/// Pure-loss channel: scales the field amplitude by sqrt(kappa).
std::complex<double> attenuate(std::complex<double> field, double kappa);

/// Keyed receiver: measures along its keystream basis and decides one bit.
class Receiver {
 public:
  Receiver(const SeedKey& key, std::uint32_t num_bases, Detector detector);

  bool receive(std::complex<double> field, rng::SplitMix64& noise);
  void seek(std::uint64_t symbol) { keystream_.seek(symbol); }

 private:
  Keystream keystream_;
  Detector detector_;
};

/// Keyless heterodyne receiver decoding by nearest constellation point.
class Eavesdropper {
 public:
  explicit Eavesdropper(std::uint32_t num_bases) : num_bases_(num_bases) {}
  bool receive(std::complex<double> field, rng::SplitMix64& noise) const;

 private:
  std::uint32_t num_bases_;
};

struct PipelineStats {
  std::uint64_t symbols_in = 0;
  std::uint64_t bits_out = 0;
  std::uint64_t stalls = 0;  // symbols that produced no output bit
  std::uint64_t bit_errors = 0;
};

/// Runs `num_symbols` random data bits through transmitter, Bob's tap and keyed
/// receiver one symbol at a time. The receiver may use a different key.
PipelineStats run_pipeline(const CipherConfig& cfg, std::uint64_t num_symbols,
                           const SeedKey& receiver_key);

}  // namespace qlink::enigma
