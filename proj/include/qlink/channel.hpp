#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace qlink::channel {

inline constexpr double kDefaultLossDbPerKm = 0.2;

/// Fraction of optical power surviving `length_km` of fiber: 10^(-loss*L/10).
/// Throws DomainError on negative arguments.
double transmissivity(double length_km, double loss_db_per_km = kDefaultLossDbPerKm);

/// A fiber span. Transmissivity is always derived from length and loss.
class ChannelParams {
 public:
  ChannelParams(double length_km, double loss_db_per_km = kDefaultLossDbPerKm);

  double length_km() const { return length_km_; }
  double loss_db_per_km() const { return loss_db_per_km_; }
  double transmissivity() const { return channel::transmissivity(length_km_, loss_db_per_km_); }
  double loss_db() const { return length_km_ * loss_db_per_km_; }

 private:
  double length_km_;
  double loss_db_per_km_;
};

struct SinglePhoton {};

struct Coherent {
  double mean_photon_number;  // |alpha|^2
};

struct Ppm {
  double mean_photon_number;  // total energy per symbol, |alpha|^2
  std::uint32_t slots;        // N >= 2
};

using SignalScheme = std::variant<SinglePhoton, Coherent, Ppm>;

// Throws DomainError if the scheme violates its invariants.
void validate(const SignalScheme& scheme);

struct ArrivalReport {
  double arrival_probability = 0.0;
  double bits_per_symbol = 0.0;
  double energy_per_pulse = 0.0;     // photons
  double bandwidth_expansion = 1.0;  // vs on-off keying at the same symbol rate
};

/// Binomial photon-loss law: n photons in, k out with C(n,k) kappa^k (1-kappa)^(n-k).
/// Evaluated in log space for n > 30.
std::vector<std::pair<std::uint32_t, double>> photon_loss_pmf(std::uint32_t n, double kappa);

/// Probability that a coherent pulse of mean photon number `mean_photon_number`
/// leaves at least one photon after a channel of transmissivity `kappa`:
/// 1 - |<0|alpha>_out|^2 = 1 - exp(-kappa |alpha|^2). Shared by coherent and PPM.
double coherent_arrival_probability(double kappa, double mean_photon_number);

ArrivalReport arrival(const SignalScheme& scheme, const ChannelParams& channel);
ArrivalReport arrival(const SignalScheme& scheme, double kappa);

}  // namespace qlink::channel
