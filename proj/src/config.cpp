#include "eraser/config.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace eraser {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct UnitScale {
  std::string_view name;
  double factor;
};

constexpr std::array<UnitScale, 2> kAngleUnits{{{"deg", std::numbers::pi / 180.0}, {"rad", 1.0}}};
constexpr std::array<UnitScale, 5> kLengthUnits{
    {{"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}}};

const std::map<std::string, std::set<std::string>, std::less<>> kSchema{
    {"source", {"phi", "o_axis"}},
    {"geometry", {"wavelength", "slit_width", "slit_separation", "distance"}},
    {"elements", {"qwp1", "qwp2", "pol1"}},
    {"scan",
     {"x_min", "x_max", "points", "peak_rate", "dwell_scale", "rate_scale", "misalignment", "seed",
      "delayed"}},
};

Token trim(std::string_view s, std::size_t column) {
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  std::size_t e = s.size();
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return {s.substr(b, e - b), column + b};
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  BenchConfig run() {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      const std::size_t nl = text_.find('\n', pos);
      const std::string_view raw =
          text_.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++line_no;
      parse_line(raw, line_no);
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    check_semantics();
    return config_;
  }

 private:
  [[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& key,
                         const std::string& message) const {
    throw ConfigError(message, line, column, key);
  }

  void parse_line(std::string_view raw, std::size_t line) {
    const std::size_t hash = raw.find('#');
    const Token content = trim(raw.substr(0, hash), 1);
    if (content.text.empty()) return;

    if (content.text.front() == '[') {
      if (content.text.back() != ']') fail(line, content.column, "", "unterminated section header");
      const Token name = trim(content.text.substr(1, content.text.size() - 2), content.column + 1);
      if (!kSchema.contains(name.text)) {
        fail(line, name.column, std::string(name.text),
             fmt::format("unknown section [{}]", name.text));
      }
      section_ = std::string(name.text);
      if (!sections_seen_.insert(section_).second) {
        fail(line, name.column, section_, fmt::format("duplicate section [{}]", section_));
      }
      return;
    }

    const std::size_t eq = content.text.find('=');
    if (eq == std::string_view::npos) {
      fail(line, content.column, "", "expected `key = value` or `[section]`");
    }
    const Token key = trim(content.text.substr(0, eq), content.column);
    const Token value = trim(content.text.substr(eq + 1), content.column + eq + 1);
    if (key.text.empty()) fail(line, content.column, "", "missing key before `=`");
    if (section_.empty()) {
      fail(line, key.column, std::string(key.text), "key appears before any [section]");
    }
    const auto& allowed = kSchema.find(section_)->second;
    const std::string k(key.text);
    if (!allowed.contains(k)) {
      fail(line, key.column, k, fmt::format("unknown key `{}` in [{}]", k, section_));
    }
    const std::string qualified = section_ + "." + k;
    if (!keys_seen_.insert(qualified).second) {
      fail(line, key.column, k, fmt::format("duplicate key `{}` in [{}]", k, section_));
    }
    if (value.text.empty()) fail(line, value.column, k, fmt::format("missing value for `{}`", k));
    assign(k, value, line);
  }

  double number(const Token& t, std::size_t line, const std::string& key) const {
    double v = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    if (!t.text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
      fail(line, t.column, key, fmt::format("`{}` is not a finite number", t.text));
    }
    return v;
  }

  template <std::size_t N>
  double with_unit(const Token& value, std::size_t line, const std::string& key,
                   const std::array<UnitScale, N>& units, std::string_view kind) const {
    const std::size_t split = value.text.find_first_of(" \t");
    if (split == std::string_view::npos) {
      std::string names;
      for (const auto& u : units) names += (names.empty() ? "" : ", ") + std::string(u.name);
      fail(line, value.column, key,
           fmt::format("{} `{}` needs a unit suffix ({})", kind, value.text, names));
    }
    const Token num{value.text.substr(0, split), value.column};
    const Token unit = trim(value.text.substr(split), value.column + split);
    for (const auto& u : units) {
      if (unit.text == u.name) return number(num, line, key) * u.factor;
    }
    fail(line, unit.column, key, fmt::format("unknown {} unit `{}`", kind, unit.text));
  }

  double angle(const Token& v, std::size_t line, const std::string& key) const {
    return with_unit(v, line, key, kAngleUnits, "angle");
  }

  double length(const Token& v, std::size_t line, const std::string& key) const {
    return with_unit(v, line, key, kLengthUnits, "length");
  }

  std::optional<double> optional_angle(const Token& v, std::size_t line, const std::string& key) const {
    if (v.text == "absent") return std::nullopt;
    return angle(v, line, key);
  }

  std::uint64_t unsigned_integer(const Token& t, std::size_t line, const std::string& key) const {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
      fail(line, t.column, key, fmt::format("`{}` is not an unsigned integer", t.text));
    }
    return v;
  }

  double positive(const Token& t, std::size_t line, const std::string& key) const {
    const double v = number(t, line, key);
    if (v <= 0.0) fail(line, t.column, key, fmt::format("`{}` must be > 0", key));
    return v;
  }

  void assign(const std::string& key, const Token& v, std::size_t line) {
    lines_[key] = {line, v.column};
    auto& c = config_;
    if (section_ == "source") {
      if (key == "phi") {
        c.source.phi = angle(v, line, key);
      } else if (v.text == "x" || v.text == "y") {
        c.source.ordinary = v.text == "x" ? OrdinaryAxis::x : OrdinaryAxis::y;
      } else {
        fail(line, v.column, key, "o_axis must be `x` or `y`");
      }
    } else if (section_ == "geometry") {
      const double len = length(v, line, key);
      if (key == "wavelength") c.geometry.wavelength = len;
      if (key == "slit_width") c.geometry.slit_width = len;
      if (key == "slit_separation") c.geometry.slit_separation = len;
      if (key == "distance") c.geometry.distance = len;
    } else if (section_ == "elements") {
      if (key == "qwp1") c.elements.qwp1 = optional_angle(v, line, key);
      if (key == "qwp2") c.elements.qwp2 = optional_angle(v, line, key);
      if (key == "pol1") c.elements.pol1 = optional_angle(v, line, key);
    } else {
      if (key == "x_min") c.scan.x_min = length(v, line, key);
      if (key == "x_max") c.scan.x_max = length(v, line, key);
      if (key == "points") c.scan.points = unsigned_integer(v, line, key);
      if (key == "peak_rate") c.scan.peak_rate = positive(v, line, key);
      if (key == "dwell_scale") c.scan.dwell_scale = positive(v, line, key);
      if (key == "rate_scale") c.scan.rate_scale = positive(v, line, key);
      if (key == "misalignment") c.scan.misalignment = angle(v, line, key);
      if (key == "seed") c.scan.seed = unsigned_integer(v, line, key);
      if (key == "delayed") {
        if (v.text != "true" && v.text != "false") {
          fail(line, v.column, key, "delayed must be `true` or `false`");
        }
        c.scan.delayed = v.text == "true";
      }
    }
  }

  void semantic(const std::string& key, const std::string& message) const {
    const auto it = lines_.find(key);
    const auto [line, column] = it == lines_.end() ? std::pair<std::size_t, std::size_t>{0, 0} : it->second;
    throw ConfigError(message, line, column, key);
  }

  void check_semantics() const {
    if (!sections_seen_.contains("geometry")) {
      throw ConfigError("missing required section [geometry]", 0, 0, "geometry");
    }
    for (const auto& key : kSchema.find("geometry")->second) {
      if (!keys_seen_.contains("geometry." + key)) {
        throw ConfigError(fmt::format("missing required key `{}` in [geometry]", key), 0, 0, key);
      }
    }
    const auto& g = config_.geometry;
    for (const auto& [key, v] : {std::pair<std::string, double>{"wavelength", g.wavelength},
                                 {"slit_width", g.slit_width},
                                 {"slit_separation", g.slit_separation},
                                 {"distance", g.distance}}) {
      if (!(v > 0.0)) semantic(key, fmt::format("`{}` must be > 0", key));
    }
    if (g.slit_separation < g.slit_width) {
      semantic("slit_separation",
               "`slit_separation` (center to center) must be >= `slit_width`; slits would overlap");
    }
    if (config_.scan.points < 2) semantic("points", "`points` must be >= 2");
    if (!(config_.scan.x_min < config_.scan.x_max)) semantic("x_max", "`x_min` must be < `x_max`");
  }

  std::string_view text_;
  BenchConfig config_;
  std::string section_;
  std::set<std::string> sections_seen_;
  std::set<std::string> keys_seen_;
  std::map<std::string, std::pair<std::size_t, std::size_t>> lines_;
};

std::string angle_text(std::optional<double> a) {
  return a ? fmt::format("{:.17g} rad", *a) : std::string("absent");
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::size_t line, std::size_t column,
                         std::string key)
    : std::runtime_error(line > 0 ? fmt::format("line {}, column {}: {}", line, column, message)
                                  : message),
      line_(line),
      column_(column),
      key_(std::move(key)) {}

ScanConfig BenchConfig::to_scan_config() const {
  ScanConfig cfg;
  cfg.geometry = geometry;
  cfg.source = source;
  cfg.theta1 = elements.qwp1;
  cfg.theta2 = elements.qwp2;
  cfg.alpha = elements.pol1;
  cfg.peak_rate = scan.peak_rate;
  cfg.dwell_scale = scan.dwell_scale;
  cfg.rate_scale = scan.rate_scale;
  cfg.qwp_misalignment = scan.misalignment;
  cfg.seed = scan.seed;
  cfg.x_min = scan.x_min;
  cfg.x_max = scan.x_max;
  cfg.points = scan.points;
  cfg.delayed = scan.delayed;
  return cfg;
}

BenchConfig parse_config(std::string_view text) { return Parser(text).run(); }

BenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file {}", path.string()), 0, 0, "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const BenchConfig& c) {
  std::string out;
  out += "[source]\n";
  out += fmt::format("phi = {:.17g} rad\n", c.source.phi);
  out += fmt::format("o_axis = {}\n", c.source.ordinary == OrdinaryAxis::x ? "x" : "y");
  out += "\n[geometry]\n";
  out += fmt::format("wavelength = {:.17g} m\n", c.geometry.wavelength);
  out += fmt::format("slit_width = {:.17g} m\n", c.geometry.slit_width);
  out += fmt::format("slit_separation = {:.17g} m\n", c.geometry.slit_separation);
  out += fmt::format("distance = {:.17g} m\n", c.geometry.distance);
  out += "\n[elements]\n";
  out += fmt::format("qwp1 = {}\n", angle_text(c.elements.qwp1));
  out += fmt::format("qwp2 = {}\n", angle_text(c.elements.qwp2));
  out += fmt::format("pol1 = {}\n", angle_text(c.elements.pol1));
  out += "\n[scan]\n";
  out += fmt::format("x_min = {:.17g} m\n", c.scan.x_min);
  out += fmt::format("x_max = {:.17g} m\n", c.scan.x_max);
  out += fmt::format("points = {}\n", c.scan.points);
  out += fmt::format("peak_rate = {:.17g}\n", c.scan.peak_rate);
  out += fmt::format("dwell_scale = {:.17g}\n", c.scan.dwell_scale);
  out += fmt::format("rate_scale = {:.17g}\n", c.scan.rate_scale);
  out += fmt::format("misalignment = {:.17g} rad\n", c.scan.misalignment);
  out += fmt::format("seed = {}\n", c.scan.seed);
  out += fmt::format("delayed = {}\n", c.scan.delayed ? "true" : "false");
  return out;
}

}  // namespace eraser
