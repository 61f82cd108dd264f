#include "qlink/qkd_rates.hpp"

#include <cmath>
#include <numbers>

#include "qlink/errors.hpp"

namespace qlink::qkd {

double qkd_rate_bound(double kappa) {
  if (!(kappa > 0.0)) throw DomainError("rate bound needs kappa > 0");
  if (!(kappa < 1.0)) throw DomainError("rate bound diverges at kappa = 1 (lossless channel)");
  return -std::log1p(-kappa) / std::numbers::ln2;
}

RateReport qkd_effective_rate(const channel::ChannelParams& channel, double input_rate_bps) {
  if (!(input_rate_bps > 0.0) || !std::isfinite(input_rate_bps)) {
    throw DomainError("input rate must be > 0");
  }
  RateReport r;
  r.kappa = channel.transmissivity();
  r.rate_per_pulse = qkd_rate_bound(r.kappa);
  r.arrival_rate = r.kappa;
  r.effective_rate_per_pulse = r.arrival_rate * r.rate_per_pulse;
  r.input_rate_bps = input_rate_bps;
  r.output_rate_bps = r.effective_rate_per_pulse * input_rate_bps;
  return r;
}

std::vector<RateTableRow> qkd_rate_table(std::span<const double> lengths_km,
                                         double loss_db_per_km, double input_rate_bps) {
  if (lengths_km.empty()) throw UsageError("rate table needs at least one length");
  for (std::size_t i = 1; i < lengths_km.size(); ++i) {
    if (!(lengths_km[i] > lengths_km[i - 1])) {
      throw UsageError("rate table lengths must be strictly increasing");
    }
  }
  std::vector<RateTableRow> rows;
  rows.reserve(lengths_km.size());
  for (double length : lengths_km) {
    RateTableRow row;
    row.length_km = length;
    try {
      row.report = qkd_effective_rate(channel::ChannelParams(length, loss_db_per_km), input_rate_bps);
    } catch (const DomainError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qlink::qkd
