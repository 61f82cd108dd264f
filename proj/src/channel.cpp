#include "qlink/channel.hpp"

#include <cmath>
#include <string>

#include "qlink/errors.hpp"

namespace qlink::channel {

namespace {

constexpr std::uint32_t kDirectBinomialMax = 30;

void require_finite_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be a finite value >= 0");
  }
}

void require_unit_interval(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw DomainError("transmissivity must lie in [0, 1]");
  }
}

}  // namespace

double transmissivity(double length_km, double loss_db_per_km) {
  require_finite_nonnegative(length_km, "length_km");
  require_finite_nonnegative(loss_db_per_km, "loss_db_per_km");
  if (length_km == 0.0 || loss_db_per_km == 0.0) return 1.0;
  return std::pow(10.0, -(loss_db_per_km * length_km) / 10.0);
}

ChannelParams::ChannelParams(double length_km, double loss_db_per_km)
    : length_km_(length_km), loss_db_per_km_(loss_db_per_km) {
  require_finite_nonnegative(length_km, "length_km");
  require_finite_nonnegative(loss_db_per_km, "loss_db_per_km");
}

void validate(const SignalScheme& scheme) {
  if (const auto* c = std::get_if<Coherent>(&scheme)) {
    if (!(c->mean_photon_number > 0.0) || !std::isfinite(c->mean_photon_number)) {
      throw DomainError("coherent mean photon number must be > 0");
    }
  } else if (const auto* p = std::get_if<Ppm>(&scheme)) {
    if (!(p->mean_photon_number > 0.0) || !std::isfinite(p->mean_photon_number)) {
      throw DomainError("PPM mean photon number must be > 0");
    }
    if (p->slots < 2) throw DomainError("PPM needs at least 2 slots");
  }
}

std::vector<std::pair<std::uint32_t, double>> photon_loss_pmf(std::uint32_t n, double kappa) {
  require_unit_interval(kappa);
  std::vector<std::pair<std::uint32_t, double>> pmf;
  pmf.reserve(n + 1);

  // Degenerate channels put all mass on one outcome; log(0) is avoided.
  if (kappa == 0.0 || kappa == 1.0) {
    const std::uint32_t sure = kappa == 0.0 ? 0 : n;
    for (std::uint32_t k = 0; k <= n; ++k) pmf.emplace_back(k, k == sure ? 1.0 : 0.0);
    return pmf;
  }

  if (n <= kDirectBinomialMax) {
    double binom = 1.0;  // C(n, k), exact in double for n <= 30
    for (std::uint32_t k = 0; k <= n; ++k) {
      if (k > 0) binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
      pmf.emplace_back(k, binom * std::pow(kappa, k) * std::pow(1.0 - kappa, n - k));
    }
    return pmf;
  }

  const double log_kappa = std::log(kappa);
  const double log_loss = std::log1p(-kappa);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::uint32_t k = 0; k <= n; ++k) {
    const double log_binom = log_n_fact - std::lgamma(static_cast<double>(k) + 1.0) -
                             std::lgamma(static_cast<double>(n - k) + 1.0);
    const double log_p = log_binom + k * log_kappa + (n - k) * log_loss;
    pmf.emplace_back(k, std::exp(log_p));
  }
  return pmf;
}

double coherent_arrival_probability(double kappa, double mean_photon_number) {
  require_unit_interval(kappa);
  require_finite_nonnegative(mean_photon_number, "mean_photon_number");
  return -std::expm1(-kappa * mean_photon_number);
}

ArrivalReport arrival(const SignalScheme& scheme, double kappa) {
  require_unit_interval(kappa);
  validate(scheme);
  ArrivalReport report;
  if (std::holds_alternative<SinglePhoton>(scheme)) {
    report.arrival_probability = kappa;
    report.bits_per_symbol = 1.0;
    report.energy_per_pulse = 1.0;
  } else if (const auto* c = std::get_if<Coherent>(&scheme)) {
    report.arrival_probability = coherent_arrival_probability(kappa, c->mean_photon_number);
    report.bits_per_symbol = 1.0;
    report.energy_per_pulse = c->mean_photon_number;
  } else {
    const auto& p = std::get<Ppm>(scheme);
    report.arrival_probability = coherent_arrival_probability(kappa, p.mean_photon_number);
    report.bits_per_symbol = std::log2(static_cast<double>(p.slots));
    report.energy_per_pulse = p.mean_photon_number / static_cast<double>(p.slots);
    report.bandwidth_expansion = static_cast<double>(p.slots);
  }
  return report;
}

ArrivalReport arrival(const SignalScheme& scheme, const ChannelParams& channel) {
  return arrival(scheme, channel.transmissivity());
}

}  // namespace qlink::channel
