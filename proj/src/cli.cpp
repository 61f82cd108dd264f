#include "qlink/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "qlink/channel.hpp"
#include "qlink/enigma.hpp"
#include "qlink/errors.hpp"
#include "qlink/output.hpp"
#include "qlink/qkd_rates.hpp"
#include "qlink/scenarios.hpp"

namespace qlink::cli {

namespace {

using output::Field;
using output::OutputRecord;
using output::Row;

constexpr std::size_t kMaxSweepPoints = 1'000'000;
constexpr double kDefaultInputRateBps = 1e9;

using Flag = std::optional<std::string>;

double parse_real(const std::string& name, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw UsageError("--" + name + ": expected a number, got '" + text + "'");
  }
  return v;
}

// Integers may be written in scientific notation (--trials 1e5).
std::uint64_t parse_count(const std::string& name, const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc() && ptr == text.data() + text.size()) return v;
  const double d = parse_real(name, text);
  if (d < 0.0 || d != std::floor(d) || d > 9007199254740992.0) {
    throw UsageError("--" + name + ": expected a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(d);
}

output::Format parse_format(const std::string& text) {
  if (text == "table") return output::Format::Table;
  if (text == "json") return output::Format::Json;
  if (text == "csv") return output::Format::Csv;
  throw UsageError("--format must be one of table, json, csv");
}

void forbid(const Flag& flag, const std::string& name, const std::string& context) {
  if (flag) throw UsageError("--" + name + " is not valid " + context);
}

Field num(std::string name, double v, std::string unit) { return {std::move(name), v, std::move(unit)}; }

Field count(std::string name, std::uint64_t v, std::string unit) {
  return {std::move(name), v, std::move(unit)};
}

Field text(std::string name, std::string v) { return {std::move(name), std::move(v), ""}; }

Field flag(std::string name, bool v) { return {std::move(name), v, ""}; }

void append_requirements(Row& row, const scenarios::RequirementCheck& c) {
  row.push_back(flag("req_data_speed_ok", c.data_speed_ok));
  row.push_back(flag("req_distance_ok", c.distance_ok));
  row.push_back(flag("req_symmetric_key_ok", c.symmetric_key_ok));
  row.push_back(flag("req_all_ok", c.all_ok()));
  row.push_back(text("req_brute_force_note", c.brute_force_note));
}

// ---- rate ----------------------------------------------------------------------

struct RateArgs {
  Flag scheme, distance, loss, input_rate, alpha2, slots, sweep;
};

// Out-of-domain rows are flagged in a sweep; a single point rethrows.
Row qkd_row(double length_km, double loss, double input_rate, bool flag_domain_errors) {
  Row row{num("length_km", length_km, "km")};
  const double nan = std::nan("");
  std::optional<qkd::RateReport> r;
  std::string status = "ok";
  try {
    r = qkd::qkd_effective_rate(channel::ChannelParams(length_km, loss), input_rate);
  } catch (const DomainError& e) {
    if (!flag_domain_errors) throw;
    status = std::string("out-of-domain: ") + e.what();
  }
  row.push_back(num("kappa", r ? r->kappa : channel::transmissivity(length_km, loss), "1"));
  row.push_back(num("rate_per_pulse", r ? r->rate_per_pulse : nan, "bit/pulse"));
  row.push_back(num("arrival_rate", r ? r->arrival_rate : nan, "1"));
  row.push_back(num("effective_rate_per_pulse", r ? r->effective_rate_per_pulse : nan, "bit/pulse"));
  row.push_back(num("input_rate_bps", input_rate, "bit/s"));
  row.push_back(num("output_rate_bps", r ? r->output_rate_bps : nan, "bit/s"));
  row.push_back(text("status", status));
  return row;
}

Row arrival_row(const channel::SignalScheme& scheme, double length_km, double loss, double input_rate) {
  const channel::ChannelParams ch(length_km, loss);
  const auto a = channel::arrival(scheme, ch);
  return {num("length_km", length_km, "km"),
          num("kappa", ch.transmissivity(), "1"),
          num("arrival_probability", a.arrival_probability, "1"),
          num("bits_per_symbol", a.bits_per_symbol, "bit/symbol"),
          num("energy_per_pulse", a.energy_per_pulse, "photon"),
          num("bandwidth_expansion", a.bandwidth_expansion, "1"),
          num("input_rate_bps", input_rate, "bit/s"),
          num("output_rate_bps", input_rate * a.arrival_probability, "bit/s"),
          text("status", "ok")};
}

OutputRecord cmd_rate(const RateArgs& a) {
  OutputRecord rec;
  rec.command = "rate";
  if (!a.scheme) throw UsageError("rate: --scheme is required");
  const std::string& scheme_name = *a.scheme;
  if (scheme_name != "qkd" && scheme_name != "single-photon" && scheme_name != "coherent" &&
      scheme_name != "ppm") {
    throw UsageError("--scheme must be one of qkd, single-photon, coherent, ppm");
  }
  if (a.distance && a.sweep) throw UsageError("rate: --distance-km and --sweep are mutually exclusive");
  if (!a.distance && !a.sweep) throw UsageError("rate: one of --distance-km or --sweep is required");

  const double loss = a.loss ? parse_real("loss-db-per-km", *a.loss) : channel::kDefaultLossDbPerKm;
  const double input_rate =
      a.input_rate ? parse_real("input-rate-bps", *a.input_rate) : kDefaultInputRateBps;
  if (!(input_rate > 0.0)) throw DomainError("--input-rate-bps must be > 0");

  rec.parameters.push_back(text("scheme", scheme_name));
  std::vector<double> lengths;
  if (a.sweep) {
    lengths = parse_sweep(*a.sweep);
    rec.parameters.push_back(text("sweep", *a.sweep));
  } else {
    lengths.push_back(parse_real("distance-km", *a.distance));
    rec.parameters.push_back(num("distance_km", lengths.front(), "km"));
  }
  rec.parameters.push_back(num("loss_db_per_km", loss, "dB/km"));
  rec.parameters.push_back(num("input_rate_bps", input_rate, "bit/s"));

  std::optional<channel::SignalScheme> scheme;
  if (scheme_name == "qkd" || scheme_name == "single-photon") {
    forbid(a.alpha2, "alpha2", "with --scheme " + scheme_name);
    forbid(a.slots, "slots", "with --scheme " + scheme_name);
    if (scheme_name == "single-photon") scheme = channel::SinglePhoton{};
  } else {
    if (!a.alpha2) throw UsageError("--scheme " + scheme_name + " requires --alpha2");
    const double alpha2 = parse_real("alpha2", *a.alpha2);
    rec.parameters.push_back(num("alpha2", alpha2, "photon"));
    if (scheme_name == "coherent") {
      forbid(a.slots, "slots", "with --scheme coherent");
      scheme = channel::Coherent{alpha2};
    } else {
      if (!a.slots) throw UsageError("--scheme ppm requires --slots");
      const auto slots = parse_count("slots", *a.slots);
      if (slots > 0xFFFFFFFFULL) throw DomainError("--slots is too large");
      rec.parameters.push_back(count("slots", slots, "slot"));
      scheme = channel::Ppm{alpha2, static_cast<std::uint32_t>(slots)};
    }
    channel::validate(*scheme);
  }

  if (scheme_name == "qkd") {
    for (double length : lengths) {
      rec.results.push_back(qkd_row(length, loss, input_rate, a.sweep.has_value()));
    }
    rec.notes.push_back("rate_per_pulse = log2(1/(1-kappa)); effective = kappa * rate_per_pulse");
  } else {
    for (double length : lengths) rec.results.push_back(arrival_row(*scheme, length, loss, input_rate));
  }
  return rec;
}

// ---- scenario ------------------------------------------------------------------

struct ScenarioArgs {
  Flag type, key_bits, key_rate, data_rate, data_bits, link_rate, distance, loss, input_rate, alpha2;
};

// Key rate either given directly or produced by a QKD link of the given length.
double resolve_key_rate(const ScenarioArgs& a, OutputRecord& rec, double loss) {
  if (a.key_rate) {
    forbid(a.input_rate, "input-rate-bps", "together with --key-rate-bps");
    const double v = parse_real("key-rate-bps", *a.key_rate);
    rec.parameters.push_back(num("key_rate_bps", v, "bit/s"));
    return v;
  }
  if (!a.distance) throw UsageError("scenario: --key-rate-bps or --distance-km is required");
  const double pulse_rate =
      a.input_rate ? parse_real("input-rate-bps", *a.input_rate) : kDefaultInputRateBps;
  rec.parameters.push_back(num("input_rate_bps", pulse_rate, "bit/s"));
  const double distance = parse_real("distance-km", *a.distance);
  const auto r = qkd::qkd_effective_rate(channel::ChannelParams(distance, loss), pulse_rate);
  rec.notes.push_back("key rate derived from a QKD link: " + output::format_number(r.output_rate_bps) +
                      " bit/s");
  return r.output_rate_bps;
}

void scenario_common_fields(Row& row, const scenarios::ScenarioReport& r) {
  row.push_back(text("type", std::string(scenarios::to_string(r.kind))));
}

OutputRecord cmd_scenario(const ScenarioArgs& a) {
  OutputRecord rec;
  rec.command = "scenario";
  if (!a.type) throw UsageError("scenario: --type is required");
  const std::string& type = *a.type;
  rec.parameters.push_back(text("type", type));
  const double loss = a.loss ? parse_real("loss-db-per-km", *a.loss) : channel::kDefaultLossDbPerKm;

  std::optional<double> distance;
  if (a.distance) distance = parse_real("distance-km", *a.distance);

  Row row;
  if (type == "aes-qkd") {
    forbid(a.data_bits, "data-bits", "with --type aes-qkd");
    forbid(a.link_rate, "link-rate-bps", "with --type aes-qkd");
    forbid(a.alpha2, "alpha2", "with --type aes-qkd");
    if (!a.data_rate) throw UsageError("--type aes-qkd requires --data-rate-bps");
    scenarios::AesQkdScenario s;
    if (a.key_bits) {
      const auto bits = parse_count("key-bits", *a.key_bits);
      if (bits == 0 || bits > 0xFFFFFFFFULL) throw DomainError("--key-bits must be in [1, 2^32)");
      s.key_bits = static_cast<std::uint32_t>(bits);
    }
    rec.parameters.push_back(count("key_bits", s.key_bits, "bit"));
    s.data_rate_bps = parse_real("data-rate-bps", *a.data_rate);
    rec.parameters.push_back(num("data_rate_bps", s.data_rate_bps, "bit/s"));
    s.key_rate_bps = resolve_key_rate(a, rec, loss);
    const auto r = scenarios::aes_qkd_report(s);
    scenario_common_fields(row, r);
    row.push_back(num("rekey_interval_s", r.key_wait_s, "s"));
    row.push_back(num("exposed_ciphertext_bits", r.exposed_ciphertext_bits, "bit"));
    row.push_back(num("duty_cycle", r.duty_cycle, "1"));
    row.push_back(num("throughput_bps", r.throughput_bps, "bit/s"));
    rec.notes = r.notes;
    append_requirements(row, scenarios::check_requirements(r.throughput_bps, distance.value_or(0.0), type));
  } else if (type == "otp") {
    forbid(a.key_bits, "key-bits", "with --type otp");
    forbid(a.data_rate, "data-rate-bps", "with --type otp");
    forbid(a.alpha2, "alpha2", "with --type otp");
    if (!a.data_bits) throw UsageError("--type otp requires --data-bits");
    if (!a.link_rate) throw UsageError("--type otp requires --link-rate-bps");
    scenarios::OtpScenario s;
    s.data_volume_bits = parse_real("data-bits", *a.data_bits);
    s.link_rate_bps = parse_real("link-rate-bps", *a.link_rate);
    rec.parameters.push_back(num("data_bits", s.data_volume_bits, "bit"));
    rec.parameters.push_back(num("link_rate_bps", s.link_rate_bps, "bit/s"));
    s.key_rate_bps = resolve_key_rate(a, rec, loss);
    const auto r = scenarios::otp_report(s);
    scenario_common_fields(row, r);
    row.push_back(num("key_accumulation_s", r.key_wait_s, "s"));
    row.push_back(text("key_accumulation_human", scenarios::human_duration(r.key_wait_s)));
    row.push_back(num("transmit_time_s", r.transmit_time_s, "s"));
    row.push_back(num("duty_cycle", r.duty_cycle, "1"));
    row.push_back(num("throughput_bps", r.throughput_bps, "bit/s"));
    rec.notes = r.notes;
    append_requirements(row, scenarios::check_requirements(r.throughput_bps, distance.value_or(0.0), type));
  } else if (type == "qec") {
    forbid(a.key_bits, "key-bits", "with --type qec");
    forbid(a.key_rate, "key-rate-bps", "with --type qec");
    forbid(a.data_rate, "data-rate-bps", "with --type qec");
    forbid(a.data_bits, "data-bits", "with --type qec");
    forbid(a.link_rate, "link-rate-bps", "with --type qec");
    if (!distance) throw UsageError("--type qec requires --distance-km");
    const double input_rate =
        a.input_rate ? parse_real("input-rate-bps", *a.input_rate) : kDefaultInputRateBps;
    std::optional<double> alpha2;
    if (a.alpha2) alpha2 = parse_real("alpha2", *a.alpha2);
    const channel::ChannelParams ch(*distance, loss);
    const auto r = scenarios::qec_report(ch, input_rate, alpha2);
    rec.parameters.push_back(num("input_rate_bps", input_rate, "bit/s"));
    if (alpha2) rec.parameters.push_back(num("alpha2", *alpha2, "photon"));
    scenario_common_fields(row, r);
    row.push_back(num("kappa", ch.transmissivity(), "1"));
    row.push_back(num("received_photons", r.received_photons, "photon"));
    row.push_back(num("arrival_probability", r.arrival_probability, "1"));
    row.push_back(num("rekey_interval_s", r.key_wait_s, "s"));
    row.push_back(num("duty_cycle", r.duty_cycle, "1"));
    row.push_back(num("output_rate_bps", r.throughput_bps, "bit/s"));
    rec.notes = r.notes;
    append_requirements(row, scenarios::check_requirements(r.throughput_bps, *distance, type));
  } else {
    throw UsageError("--type must be one of aes-qkd, otp, qec");
  }
  if (distance) rec.parameters.push_back(num("distance_km", *distance, "km"));
  if (a.loss || distance) rec.parameters.push_back(num("loss_db_per_km", loss, "dB/km"));
  rec.results.push_back(std::move(row));
  return rec;
}

// ---- enigma --------------------------------------------------------------------

struct EnigmaArgs {
  Flag m, alpha2, bob_tap, eve_tap, trials, seed, key_bits, detector, workers;
};

void append_ber(Row& row, const std::string& prefix, const enigma::BerEstimate& e) {
  row.push_back(num(prefix + "_p_error", e.p_error, "1"));
  row.push_back(count(prefix + "_errors", e.errors, "bit"));
  row.push_back(count(prefix + "_trials", e.trials, "trial"));
  row.push_back(num(prefix + "_ci_halfwidth_95", e.ci_halfwidth_95, "1"));
  row.push_back(num(prefix + "_upper_bound_95", e.upper_bound_95, "1"));
  row.push_back(num(prefix + "_analytic_p", e.analytic_p.value_or(std::nan("")), "1"));
  row.push_back(flag(prefix + "_below_resolution", e.below_resolution));
}

OutputRecord cmd_enigma(const EnigmaArgs& a) {
  OutputRecord rec;
  rec.command = "enigma";
  enigma::CipherConfig cfg;
  if (a.m) {
    const auto m = parse_count("m", *a.m);
    if (m > 0x7FFFFFFFULL) throw ConfigError("--m is too large");
    cfg.num_bases = static_cast<std::uint32_t>(m);
  }
  if (a.alpha2) cfg.mean_photon_number = parse_real("alpha2", *a.alpha2);
  if (a.bob_tap) cfg.bob_transmissivity = parse_real("bob-tap", *a.bob_tap);
  if (a.eve_tap) cfg.eve_transmissivity = parse_real("eve-tap", *a.eve_tap);
  if (a.key_bits) {
    const auto bits = parse_count("key-bits", *a.key_bits);
    if (bits > 1'000'000) throw ConfigError("--key-bits is too large");
    cfg.seed_key_bits = static_cast<std::uint32_t>(bits);
  }
  if (a.detector) {
    if (*a.detector == "homodyne") {
      cfg.detector = enigma::Detector::Homodyne;
    } else if (*a.detector == "heterodyne") {
      cfg.detector = enigma::Detector::Heterodyne;
    } else {
      throw UsageError("--bob-detector must be homodyne or heterodyne");
    }
  }
  if (a.seed) {
    cfg.rng_seed = parse_count("seed", *a.seed);
  } else if (const char* env = std::getenv("QLINK_SEED"); env != nullptr && *env != '\0') {
    cfg.rng_seed = parse_count("seed (from QLINK_SEED)", env);
  }
  const std::uint64_t trials = a.trials ? parse_count("trials", *a.trials) : 100'000;
  enigma::RunOptions opts;
  if (a.workers) {
    const auto w = parse_count("workers", *a.workers);
    if (w == 0 || w > 256) throw UsageError("--workers must be in [1, 256]");
    opts.workers = static_cast<unsigned>(w);
  }
  cfg.validate();
  if (trials < enigma::kMinTrials) throw UsageError("--trials must be >= 10000");

  rec.parameters = {count("m", cfg.num_bases, "basis"),
                    num("alpha2", cfg.mean_photon_number, "photon"),
                    num("bob_tap", cfg.bob_transmissivity, "1"),
                    num("eve_tap", cfg.eve_transmissivity, "1"),
                    count("trials", trials, "trial"),
                    count("seed", cfg.rng_seed, "1"),
                    count("key_bits", cfg.seed_key_bits, "bit"),
                    text("bob_detector", cfg.detector == enigma::Detector::Homodyne ? "homodyne" : "heterodyne")};

  const auto sep = enigma::error_separation(cfg, trials, opts);
  Row row;
  append_ber(row, "bob", sep.bob);
  append_ber(row, "eve", sep.eve);
  row.push_back(num("separation_ratio", sep.separation_ratio, "1"));
  row.push_back(num("neighbor_spacing_rad", sep.masking.neighbor_spacing_rad, "rad"));
  row.push_back(num("phase_noise_std_rad", sep.masking.phase_noise_std_rad, "rad"));
  row.push_back(num("masking_number", sep.masking.masking_number, "1"));
  row.push_back(flag("masked", sep.masking.masked()));
  rec.results.push_back(std::move(row));

  if (!sep.masking.masked()) {
    rec.notes.push_back("unmasked: quantum noise does not cover neighbouring states (masking_number < 1); "
                        "the eavesdropper resolves the constellation");
  }
  if (sep.bob.below_resolution) {
    rec.notes.push_back("bob: below Monte Carlo resolution; analytic_p is the primary estimate");
  }
  if (sep.eve.below_resolution) {
    rec.notes.push_back("eve: fewer than 5 errors observed; quote eve_upper_bound_95 rather than p_error");
  }
  if (!sep.separation_holds) rec.notes.push_back("warning: masked configuration without error separation");
  return rec;
}

}  // namespace

std::vector<double> parse_sweep(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string::npos ? first : spec.find(':', first + 1);
  if (second == std::string::npos || spec.find(':', second + 1) != std::string::npos) {
    throw UsageError("--sweep expects start:stop:step");
  }
  const double start = parse_real("sweep", spec.substr(0, first));
  const double stop = parse_real("sweep", spec.substr(first + 1, second - first - 1));
  const double step = parse_real("sweep", spec.substr(second + 1));
  if (!(step > 0.0)) throw UsageError("--sweep step must be > 0");
  if (stop < start) throw UsageError("--sweep stop must be >= start");
  if ((stop - start) / step > static_cast<double>(kMaxSweepPoints)) {
    throw UsageError("--sweep has too many points");
  }
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double x = start + static_cast<double>(i) * step;
    if (!(x < stop + 0.5 * step)) break;
    grid.push_back(x);
  }
  return grid;
}

std::vector<std::string> expand_presets(const std::vector<std::string>& args) {
  std::vector<std::string> preset_flags;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--preset") {
      if (i + 1 >= args.size()) throw UsageError("--preset needs a file path");
      path = args[++i];
    } else if (args[i].starts_with("--preset=")) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open preset file '" + path + "'");
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
      const auto begin = line.find_first_not_of(" \t\r");
      if (begin == std::string::npos || line[begin] == '#') continue;
      const auto end = line.find_last_not_of(" \t\r");
      line = line.substr(begin, end - begin + 1);
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw UsageError(path + ":" + std::to_string(line_no) + ": expected key=value");
      }
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      std::string key = trim(line.substr(0, eq));
      if (key.starts_with("--")) key = key.substr(2);
      if (key.empty() || key == "preset") throw UsageError(path + ":" + std::to_string(line_no) + ": bad key");
      preset_flags.push_back("--" + key);
      preset_flags.push_back(trim(line.substr(eq + 1)));
    }
  }
  if (preset_flags.empty() || rest.empty()) {
    rest.insert(rest.end(), preset_flags.begin(), preset_flags.end());
    return rest;
  }
  std::vector<std::string> out{rest.front()};
  out.insert(out.end(), preset_flags.begin(), preset_flags.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Communication-performance calculators for quantum-secured optical links", "qlink"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(output::kToolVersion));

  std::string format = "table";
  auto prepare = [&format](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--format", format, "Output format: table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
  };

  RateArgs rate_args;
  auto* rate = app.add_subcommand("rate", "Arrival probability and QKD key rate versus distance");
  prepare(rate);
  rate->add_option("--scheme", rate_args.scheme, "qkd, single-photon, coherent or ppm");
  rate->add_option("--distance-km", rate_args.distance, "Fiber length in km");
  rate->add_option("--loss-db-per-km", rate_args.loss, "Fiber loss (default 0.2)");
  rate->add_option("--input-rate-bps", rate_args.input_rate, "Pulse/bit rate at the transmitter (default 1e9)");
  rate->add_option("--alpha2", rate_args.alpha2, "Mean photon number |alpha|^2 (coherent, ppm)");
  rate->add_option("--slots", rate_args.slots, "PPM slot count N (ppm)");
  rate->add_option("--sweep", rate_args.sweep, "Distance sweep start:stop:step in km");

  ScenarioArgs sc_args;
  auto* scenario = app.add_subcommand("scenario", "Cryptosystem latency and exposure arithmetic");
  prepare(scenario);
  scenario->add_option("--type", sc_args.type, "aes-qkd, otp or qec");
  scenario->add_option("--key-bits", sc_args.key_bits, "AES key length (default 256)");
  scenario->add_option("--key-rate-bps", sc_args.key_rate, "QKD key delivery rate");
  scenario->add_option("--data-rate-bps", sc_args.data_rate, "AES data rate");
  scenario->add_option("--data-bits", sc_args.data_bits, "One-time-pad data volume");
  scenario->add_option("--link-rate-bps", sc_args.link_rate, "One-time-pad link rate");
  scenario->add_option("--distance-km", sc_args.distance, "Link length in km");
  scenario->add_option("--loss-db-per-km", sc_args.loss, "Fiber loss (default 0.2)");
  scenario->add_option("--input-rate-bps", sc_args.input_rate, "QEC data rate or QKD pulse rate (default 1e9)");
  scenario->add_option("--alpha2", sc_args.alpha2, "QEC transmitter mean photon number");

  EnigmaArgs en_args;
  auto* en = app.add_subcommand("enigma", "Monte Carlo of the quantum enigma cipher error separation");
  prepare(en);
  en->add_option("--m", en_args.m, "Number of bases M (default 2048)");
  en->add_option("--alpha2", en_args.alpha2, "Transmitter mean photon number (default 1e4)");
  en->add_option("--bob-tap", en_args.bob_tap, "Bob's channel transmissivity (default 1)");
  en->add_option("--eve-tap", en_args.eve_tap, "Eve's tap transmissivity (default 1)");
  en->add_option("--trials", en_args.trials, "Monte Carlo trials (default 1e5, minimum 1e4)");
  en->add_option("--seed", en_args.seed, "RNG seed (default $QLINK_SEED or 42)");
  en->add_option("--key-bits", en_args.key_bits, "Seed key length |K_s| (default 256)");
  en->add_option("--bob-detector", en_args.detector, "homodyne (default) or heterodyne");
  en->add_option("--workers", en_args.workers, "Worker threads; results do not depend on it");

  try {
    std::vector<std::string> args = expand_presets(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);

    OutputRecord rec;
    if (rate->parsed()) {
      rec = cmd_rate(rate_args);
    } else if (scenario->parsed()) {
      rec = cmd_scenario(sc_args);
    } else {
      rec = cmd_enigma(en_args);
    }
    output::write(out, rec, parse_format(format));
    return kExitOk;
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  } catch (const UsageError& e) {
    err << "qlink: usage error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const DomainError& e) {
    err << "qlink: domain error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "qlink: error: " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace qlink::cli
