#include "qlink/enigma.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "qlink/errors.hpp"

namespace qlink::enigma {

namespace {

constexpr std::uint64_t kDataTag = 0x44415441ULL;       // "DATA"
constexpr std::uint64_t kBobNoiseTag = 0x424F424EULL;   // "BOBN"
constexpr std::uint64_t kEveNoiseTag = 0x4556454EULL;   // "EVEN"

double noise_stddev(Detector d) {
  return std::sqrt(d == Detector::Homodyne ? kHomodyneVariance : kHeterodyneVariance);
}

void require_trials(std::uint64_t trials) {
  if (trials < kMinTrials) {
    throw UsageError("Monte Carlo needs at least " + std::to_string(kMinTrials) + " trials");
  }
}

// Splits [0, trials) into fixed blocks, runs `count_block(block, begin, end)` over
// them on `workers` threads and sums the per-block error counts in block order.
template <typename Fn>
std::uint64_t run_blocks(std::uint64_t trials, unsigned workers, Fn count_block) {
  const std::uint64_t num_blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<std::uint64_t> per_block(num_blocks, 0);
  auto work = [&](std::atomic<std::uint64_t>& cursor) {
    for (std::uint64_t b = cursor++; b < num_blocks; b = cursor++) {
      const std::uint64_t begin = b * kBlockTrials;
      const std::uint64_t end = std::min(trials, begin + kBlockTrials);
      per_block[b] = count_block(b, begin, end);
    }
  };
  std::atomic<std::uint64_t> cursor{0};
  const unsigned n = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(num_blocks)));
  if (n == 1) {
    work(cursor);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back([&] { work(cursor); });
  }
  std::uint64_t total = 0;
  for (auto c : per_block) total += c;
  return total;
}

}  // namespace

void CipherConfig::validate() const {
  if (num_bases < 2) throw ConfigError("number of bases M must be >= 2");
  if (seed_key_bits < kMinSeedKeyBits) throw ConfigError("seed key must have at least 16 bits");
  if (!(mean_photon_number >= 0.0) || !std::isfinite(mean_photon_number)) {
    throw ConfigError("mean photon number must be finite and >= 0");
  }
  for (double t : {bob_transmissivity, eve_transmissivity}) {
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("tap transmissivities must lie in (0, 1]");
  }
}

std::vector<ConstellationPoint> constellation(std::uint32_t num_bases, double amplitude) {
  const std::uint32_t total = 2 * num_bases;
  std::vector<ConstellationPoint> points(total);
  for (std::uint32_t i = 0; i < total; ++i) {
    points[i] = {i, std::numbers::pi * i / num_bases, amplitude};
  }
  return points;
}

std::uint32_t point_index(std::uint32_t basis, bool bit, std::uint32_t num_bases) {
  const bool polarity = (basis & 1U) != 0;
  return basis + ((bit != polarity) ? num_bases : 0U);
}

bool point_bit(std::uint32_t index, std::uint32_t num_bases) {
  const bool upper = index >= num_bases;
  const bool polarity = ((index % num_bases) & 1U) != 0;
  return upper != polarity;
}

std::uint32_t nearest_point(double angle, std::uint32_t num_bases) {
  const double total = 2.0 * num_bases;
  double x = std::fmod(angle / (std::numbers::pi / num_bases), total);
  if (x < 0.0) x += total;
  if (x == total - 0.5) return 0;  // tie between the last point and point 0
  auto j = static_cast<std::uint64_t>(std::ceil(x - 0.5));
  return j >= 2ULL * num_bases ? 0U : static_cast<std::uint32_t>(j);
}

BerEstimate make_estimate(std::uint64_t errors, std::uint64_t trials, std::optional<double> analytic_p) {
  BerEstimate e;
  e.errors = errors;
  e.trials = trials;
  e.analytic_p = analytic_p;
  if (trials == 0) return e;
  const double n = static_cast<double>(trials);
  e.p_error = static_cast<double>(errors) / n;
  e.ci_halfwidth_95 = 1.96 * std::sqrt(e.p_error * (1.0 - e.p_error) / n);
  const double expected = analytic_p ? *analytic_p * n : static_cast<double>(errors);
  e.below_resolution = expected < 5.0;
  e.upper_bound_95 = errors == 0 ? 3.0 / n : std::min(1.0, e.p_error + e.ci_halfwidth_95);
  return e;
}

double gaussian_tail_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

BerEstimate bob_ber_analytic(const CipherConfig& cfg) {
  cfg.validate();
  if (cfg.detector != Detector::Homodyne) {
    throw DomainError("analytic Bob BER is defined for homodyne detection; use the Monte Carlo path");
  }
  const double mu = std::sqrt(cfg.bob_transmissivity * cfg.mean_photon_number);
  BerEstimate e;
  e.p_error = gaussian_tail_q(mu / noise_stddev(Detector::Homodyne));
  e.analytic_p = e.p_error;
  return e;
}

Transmitter::Transmitter(const SeedKey& key, std::uint32_t num_bases, double mean_photon_number)
    : keystream_(key, num_bases), amplitude_(std::sqrt(mean_photon_number)) {}

std::complex<double> Transmitter::send(bool bit) {
  const std::uint32_t m = keystream_.num_bases();
  last_index_ = point_index(keystream_.next(), bit, m);
  return std::polar(amplitude_, std::numbers::pi * last_index_ / m);
}

std::complex<double> attenuate(std::complex<double> field, double kappa) {
  return field * std::sqrt(kappa);
}

Receiver::Receiver(const SeedKey& key, std::uint32_t num_bases, Detector detector)
    : keystream_(key, num_bases), detector_(detector) {}

bool Receiver::receive(std::complex<double> field, rng::SplitMix64& noise) {
  const std::uint32_t basis = keystream_.next();
  const double lo_phase = std::numbers::pi * basis / keystream_.num_bases();
  const double quadrature = (field * std::polar(1.0, -lo_phase)).real();
  const double measured = quadrature + noise_stddev(detector_) * noise.normal_pair().first;
  const bool polarity = (basis & 1U) != 0;
  return (measured < 0.0) != polarity;
}

bool Eavesdropper::receive(std::complex<double> field, rng::SplitMix64& noise) const {
  const auto [nx, ny] = noise.normal_pair();
  const double sigma = noise_stddev(Detector::Heterodyne);
  const double angle = std::atan2(field.imag() + sigma * ny, field.real() + sigma * nx);
  return point_bit(nearest_point(angle, num_bases_), num_bases_);
}

BerEstimate bob_ber_monte_carlo(const CipherConfig& cfg, std::uint64_t trials, RunOptions opts) {
  cfg.validate();
  require_trials(trials);
  const SeedKey key = cfg.seed_key();
  const std::uint64_t errors = run_blocks(trials, opts.workers, [&](std::uint64_t block, std::uint64_t begin,
                                                                  std::uint64_t end) {
    Transmitter tx(key, cfg.num_bases, cfg.mean_photon_number);
    Receiver rx(key, cfg.num_bases, cfg.detector);
    tx.seek(begin);
    rx.seek(begin);
    rng::SplitMix64 data(rng::substream_seed(cfg.rng_seed, kDataTag, block));
    rng::SplitMix64 noise(rng::substream_seed(cfg.rng_seed, kBobNoiseTag, block));
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const bool bit = data.bit();
      const auto field = attenuate(tx.send(bit), cfg.bob_transmissivity);
      count += rx.receive(field, noise) != bit;
    }
    return count;
  });
  std::optional<double> analytic;
  if (cfg.detector == Detector::Homodyne) analytic = bob_ber_analytic(cfg).p_error;
  return make_estimate(errors, trials, analytic);
}

BerEstimate eve_ber_monte_carlo(const CipherConfig& cfg, std::uint64_t trials, RunOptions opts) {
  cfg.validate();
  require_trials(trials);
  const SeedKey key = cfg.seed_key();
  const Eavesdropper eve(cfg.num_bases);
  const std::uint64_t errors = run_blocks(trials, opts.workers, [&](std::uint64_t block, std::uint64_t begin,
                                                                  std::uint64_t end) {
    Transmitter tx(key, cfg.num_bases, cfg.mean_photon_number);
    tx.seek(begin);
    rng::SplitMix64 data(rng::substream_seed(cfg.rng_seed, kDataTag, block));
    rng::SplitMix64 noise(rng::substream_seed(cfg.rng_seed, kEveNoiseTag, block));
    std::uint64_t count = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const bool bit = data.bit();
      const auto field = attenuate(tx.send(bit), cfg.eve_transmissivity);
      count += eve.receive(field, noise) != bit;
    }
    return count;
  });
  return make_estimate(errors, trials);
}

MaskingReport masking_report(const CipherConfig& cfg) {
  cfg.validate();
  MaskingReport r;
  r.neighbor_spacing_rad = std::numbers::pi / cfg.num_bases;
  const double received = cfg.eve_transmissivity * cfg.mean_photon_number;
  r.phase_noise_std_rad = received > 0.0 ? noise_stddev(Detector::Heterodyne) / std::sqrt(received)
                                         : std::numeric_limits<double>::infinity();
  r.masking_number = std::max(0.0, 2.0 * r.phase_noise_std_rad / r.neighbor_spacing_rad);
  return r;
}

SeparationReport error_separation(const CipherConfig& cfg, std::uint64_t trials, RunOptions opts) {
  SeparationReport r;
  r.bob = bob_ber_monte_carlo(cfg, trials, opts);
  r.eve = eve_ber_monte_carlo(cfg, trials, opts);
  r.masking = masking_report(cfg);
  const double bob_p = r.bob.analytic_p.value_or(r.bob.p_error);
  r.separation_ratio = r.eve.p_error / std::max(bob_p, kSeparationFloor);
  r.separation_holds = !r.masking.masked() || r.separation_ratio > 1.0;
  return r;
}

PipelineStats run_pipeline(const CipherConfig& cfg, std::uint64_t num_symbols, const SeedKey& receiver_key) {
  cfg.validate();
  Transmitter tx(cfg.seed_key(), cfg.num_bases, cfg.mean_photon_number);
  Receiver rx(receiver_key, cfg.num_bases, cfg.detector);
  rng::SplitMix64 data(rng::substream_seed(cfg.rng_seed, kDataTag, 0));
  rng::SplitMix64 noise(rng::substream_seed(cfg.rng_seed, kBobNoiseTag, 0));
  PipelineStats stats;
  for (std::uint64_t i = 0; i < num_symbols; ++i) {
    const bool bit = data.bit();
    const auto field = attenuate(tx.send(bit), cfg.bob_transmissivity);
    ++stats.symbols_in;
    const bool decoded = rx.receive(field, noise);
    ++stats.bits_out;
    stats.bit_errors += decoded != bit;
  }
  stats.stalls = stats.symbols_in - stats.bits_out;
  return stats;
}

}  // namespace qlink::enigma
