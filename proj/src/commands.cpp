#include "eraser/commands.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <numbers>

#include "eraser/analysis.hpp"
#include "eraser/error.hpp"

namespace eraser {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;
constexpr std::array<std::string_view, 6> kCommands{"pattern",   "scan",     "erase-demo",
                                                    "whichpath", "ordering", "chsh"};

double degrees(double rad) { return rad * 180.0 / kPi; }

std::string num(double v) { return fmt::format("{:.17g}", v); }

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : width_(header.size()) { row(header); }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      text_ += cells[i];
      text_ += i + 1 < cells.size() ? ',' : '\n';
    }
  }

  const std::string& text() const { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << content;
  if (!out) throw std::runtime_error(fmt::format("error writing {}", path.string()));
}

json fit_json(const VisibilityFit& f) {
  return {{"offset", f.offset},
          {"amplitude", f.amplitude},
          {"phase_rad", f.phase},
          {"visibility", f.visibility},
          {"rms_residual", f.rms_residual}};
}

// Fit the envelope-weighted sinusoid to a noiseless or noisy curve; a flat or
// zero curve yields null plus the reason.
json try_fit(const std::vector<double>& xs, const std::vector<double>& values, const BenchGeometry& g) {
  std::vector<double> deltas(xs.size()), weights(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    deltas[i] = delta(xs[i], g);
    weights[i] = envelope(xs[i], g);
  }
  try {
    return fit_json(fit_sinusoid(deltas, values, weights));
  } catch (const Error& e) {
    return {{"error", e.what()}};
  }
}

json base_json(std::string_view command, const BenchConfig& c) {
  return {{"command", command},
          {"config", serialize_config(c)},
          {"seed", c.scan.seed},
          {"points", c.scan.points},
          {"delayed", c.scan.delayed}};
}

struct Output {
  Csv csv;
  json summary;
  std::string text;
};

Output cmd_pattern(const BenchConfig& c) {
  const ScanConfig cfg = c.to_scan_config();
  const auto xs = cfg.positions();
  const auto expected = expected_curve(cfg);
  Csv csv({"position_m", "expected"});
  for (std::size_t i = 0; i < xs.size(); ++i) csv.row({num(xs[i]), num(expected[i])});
  json j = base_json("pattern", c);
  j["fit"] = try_fit(xs, expected, c.geometry);
  std::string text = fmt::format("pattern: {} points", xs.size());
  if (j["fit"].contains("visibility")) {
    text += fmt::format(", visibility {:.6f}", j["fit"]["visibility"].get<double>());
  }
  return {std::move(csv), std::move(j), text};
}

Output cmd_scan(const BenchConfig& c) {
  const ScanConfig cfg = c.to_scan_config();
  const ScanRecord rec = simulate_scan(cfg);
  Csv csv({"position_m", "expected", "counts"});
  for (std::size_t i = 0; i < rec.positions.size(); ++i) {
    csv.row({num(rec.positions[i]), num(rec.expected[i]), std::to_string(rec.coincidences[i])});
  }
  json j = base_json("scan", c);
  std::string text = fmt::format("scan: {} points, seed {}", rec.positions.size(), rec.seed);
  try {
    const VisibilityFit f = fit_fringes(rec, c.geometry);
    j["fit"] = fit_json(f);
    text += fmt::format(", fitted visibility {:.4f}, phase {:.2f} deg", f.visibility, degrees(f.phase));
  } catch (const Error& e) {
    j["fit"] = {{"error", e.what()}};
    text += fmt::format(", no fit ({})", e.what());
  }
  return {std::move(csv), std::move(j), text};
}

Output cmd_erase_demo(const BenchConfig& c) {
  if (!c.elements.qwp1) {
    throw Error(ErrorCode::invalid_argument, "erase-demo needs qwp1 (the polarizer follows its axis)");
  }
  ScanConfig base = c.to_scan_config();
  const double theta = *c.elements.qwp1 + c.scan.misalignment;
  // Polarized runs use twice the dwell of the unpolarized one, as on the bench.
  const auto curve = [&](std::optional<double> alpha, double dwell) {
    ScanConfig cfg = base;
    cfg.alpha = alpha;
    cfg.dwell_scale = dwell;
    return expected_curve(cfg);
  };
  const auto xs = base.positions();
  const auto fringe = curve(theta, 2.0);
  const auto anti = curve(theta + kPi / 2.0, 2.0);
  const auto open = curve(std::nullopt, 1.0);

  Csv csv({"position_m", "fringe", "antifringe", "sum_avg", "no_polarizer"});
  double worst = 0.0;
  std::vector<double> avg(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    avg[i] = 0.5 * (fringe[i] + anti[i]);
    worst = std::max(worst, std::abs(avg[i] - open[i]));
    csv.row({num(xs[i]), num(fringe[i]), num(anti[i]), num(avg[i]), num(open[i])});
  }

  json j = base_json("erase-demo", c);
  j["theta_rad"] = theta;
  j["fringe"] = try_fit(xs, fringe, c.geometry);
  j["antifringe"] = try_fit(xs, anti, c.geometry);
  j["no_polarizer"] = try_fit(xs, open, c.geometry);
  j["max_abs_sum_avg_minus_no_polarizer"] = worst;
  std::string text = fmt::format("erase-demo: theta {:.2f} deg", degrees(theta));
  if (j["fringe"].contains("phase_rad") && j["antifringe"].contains("phase_rad")) {
    const double diff = std::abs(std::remainder(
        j["fringe"]["phase_rad"].get<double>() - j["antifringe"]["phase_rad"].get<double>(), 2.0 * kPi));
    j["phase_difference_rad"] = diff;
    text += fmt::format(", fringe V {:.6f}, antifringe V {:.6f}, phase difference {:.4f} deg",
                        j["fringe"]["visibility"].get<double>(),
                        j["antifringe"]["visibility"].get<double>(), degrees(diff));
  }
  text += fmt::format(", max |avg - open| {:.3g}", worst);
  return {std::move(csv), std::move(j), text};
}

Output cmd_whichpath(const BenchConfig& c) {
  const EraserState state = c.to_scan_config().prepared_state();
  Csv csv({"p_outcome", "s_outcome", "probability", "slit1_probability", "slit2_probability"});
  json rows = json::array();
  std::string text = "whichpath:";

  struct POutcome {
    std::string name;
    std::optional<MeasurementOutcome> outcome;
  };
  const std::array<POutcome, 3> p_outcomes{{{"none", std::nullopt},
                                            {"x", MeasurementOutcome{Arm::p, Basis::linear, 0}},
                                            {"y", MeasurementOutcome{Arm::p, Basis::linear, 1}}}};
  const std::array<std::pair<std::string, int>, 2> s_outcomes{{{"R", 0}, {"L", 1}}};

  for (const auto& p : p_outcomes) {
    for (const auto& [s_name, s_index] : s_outcomes) {
      const MeasurementOutcome s_outcome{Arm::s, Basis::circular, s_index};
      double probability = 1.0;
      std::optional<std::array<double, 2>> slits;
      try {
        EraserState conditioned = state;
        if (p.outcome) {
          probability *= outcome_probability(conditioned, *p.outcome);
          conditioned = condition(conditioned, *p.outcome);
        }
        probability *= outcome_probability(conditioned, s_outcome);
        slits = condition(conditioned, s_outcome).slit_probabilities();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::zero_probability_branch) throw;
        probability = 0.0;
      }
      json row = {{"p_outcome", p.name}, {"s_outcome", s_name}, {"probability", probability}};
      row["slit1_probability"] = slits ? json((*slits)[0]) : json(nullptr);
      row["slit2_probability"] = slits ? json((*slits)[1]) : json(nullptr);
      rows.push_back(row);
      csv.row({p.name, s_name, num(probability), slits ? num((*slits)[0]) : "nan",
                slits ? num((*slits)[1]) : "nan"});
      if (slits) {
        text += fmt::format("\n  p={:<4} s={}  P={:.4f}  slit1 {:.3f}  slit2 {:.3f}", p.name, s_name,
                            probability, (*slits)[0], (*slits)[1]);
      } else {
        text += fmt::format("\n  p={:<4} s={}  P=0 (impossible outcome)", p.name, s_name);
      }
    }
  }
  json j = base_json("whichpath", c);
  j["rows"] = rows;
  j["distinguishability"] = distinguishability(state);
  return {std::move(csv), std::move(j), text};
}

Output cmd_ordering(const BenchConfig& c) {
  const ScanConfig cfg = c.to_scan_config();
  const EraserState state = cfg.prepared_state();
  const auto xs = cfg.positions();
  const auto p_first = pattern_by_ordering(state, cfg.alpha, c.geometry, xs, Ordering::p_first);
  const auto s_first = pattern_by_ordering(state, cfg.alpha, c.geometry, xs, Ordering::s_first);
  Csv csv({"position_m", "p_first", "s_first", "abs_diff"});
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = std::abs(p_first[i] - s_first[i]);
    worst = std::max(worst, d);
    csv.row({num(xs[i]), num(p_first[i]), num(s_first[i]), num(d)});
  }
  json j = base_json("ordering", c);
  j["max_deviation"] = worst;
  return {std::move(csv), std::move(j), fmt::format("ordering: max |p-first - s-first| = {:.3g}", worst)};
}

Output cmd_chsh(const BenchConfig& c) {
  const ChshResult r = optimize_chsh(spdc_state(c.source));
  const auto& t = r.angles;
  Csv csv({"a_rad", "a_prime_rad", "b_rad", "b_prime_rad", "S"});
  csv.row({num(t.a), num(t.a_prime), num(t.b), num(t.b_prime), num(r.value)});
  json j = base_json("chsh", c);
  j["S"] = r.value;
  j["angles_rad"] = {t.a, t.a_prime, t.b, t.b_prime};
  j["angles_deg"] = {degrees(t.a), degrees(t.a_prime), degrees(t.b), degrees(t.b_prime)};
  j["classical_bound"] = 2.0;
  j["violates_classical_bound"] = r.value > 2.0;
  const std::string text =
      fmt::format("chsh: S = {:.9f} at a={:.2f}, a'={:.2f}, b={:.2f}, b'={:.2f} deg", r.value,
                  degrees(t.a), degrees(t.a_prime), degrees(t.b), degrees(t.b_prime));
  return {std::move(csv), std::move(j), text};
}

}  // namespace

std::span<const std::string_view> command_names() { return kCommands; }

BenchConfig with_overrides(BenchConfig config, const RunOptions& options) {
  if (options.seed) config.scan.seed = *options.seed;
  if (options.points) {
    if (*options.points < 2) throw std::invalid_argument("--points must be >= 2");
    config.scan.points = *options.points;
  }
  return config;
}

RunResult run(std::string_view command, const BenchConfig& config, const RunOptions& options) {
  const BenchConfig c = with_overrides(config, options);
  const std::map<std::string_view, std::function<Output(const BenchConfig&)>> table{
      {"pattern", cmd_pattern},     {"scan", cmd_scan},         {"erase-demo", cmd_erase_demo},
      {"whichpath", cmd_whichpath}, {"ordering", cmd_ordering}, {"chsh", cmd_chsh}};
  const auto it = table.find(command);
  if (it == table.end()) {
    throw std::invalid_argument(fmt::format("unknown command `{}`", command));
  }
  Output out = it->second(c);

  fs::create_directories(options.out_dir);
  const std::string stem(command);
  const fs::path csv_path = options.out_dir / (stem + ".csv");
  const fs::path json_path = options.out_dir / (stem + ".json");
  write_file(csv_path, out.csv.text());
  write_file(json_path, out.summary.dump(2) + "\n");
  return {{csv_path, json_path}, out.text};
}

}  // namespace eraser
