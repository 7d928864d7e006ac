#include "tikhonov/experiment/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "tikhonov/errors.hpp"
#include "tikhonov/experiment/hat.hpp"

namespace tikhonov::experiment {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& token, const std::string& field) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw ConfigError(field + ": '" + token + "' is not a finite number");
  return value;
}

template <class Int>
Int to_integer(const std::string& token, const std::string& field) {
  Int value{};
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc{} || ptr != end)
    throw ConfigError(field + ": '" + token + "' is not a valid integer");
  return value;
}

class Section {
 public:
  Section(std::string name, const pt::ptree& tree) : name_(std::move(name)), tree_(tree) {}

  std::string text(const std::string& key) {
    used_.insert(key);
    const auto child = tree_.get_child_optional(key);
    if (!child) throw ConfigError(field(key) + ": required key is missing");
    return trim(child->data());
  }
  double number(const std::string& key) { return to_double(text(key), field(key)); }
  int integer(const std::string& key) { return to_integer<int>(text(key), field(key)); }
  std::uint64_t seed(const std::string& key) { return to_integer<std::uint64_t>(text(key), field(key)); }
  std::vector<double> numbers(const std::string& key) { return parse_double_list(text(key), field(key)); }
  std::vector<int> integers(const std::string& key) {
    std::vector<int> out;
    for (const std::string& token : split(text(key), ',')) out.push_back(to_integer<int>(token, field(key)));
    return out;
  }
  std::vector<std::uint64_t> seeds(const std::string& key) { return parse_seed_list(text(key), field(key)); }

  void finish() const {
    for (const auto& [key, value] : tree_)
      if (!used_.contains(key)) throw ConfigError(field(key) + ": unknown key");
  }

  std::string field(const std::string& key) const { return name_ + "." + key; }

 private:
  std::string name_;
  const pt::ptree& tree_;
  std::set<std::string> used_;
};

ExperimentKind parse_kind(const std::string& text) {
  if (text == "deblur") return ExperimentKind::deblur;
  if (text == "rates") return ExperimentKind::rates;
  if (text == "noise_probe") return ExperimentKind::noise_probe;
  if (text == "gamma") return ExperimentKind::gamma;
  throw ConfigError("experiment.kind: expected deblur, rates, noise_probe or gamma, got '" + text + "'");
}

std::set<std::string> sections_for(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::deblur:
      return {"experiment", "operator", "truth", "schedule", "sweep", "signal", "divergence", "output"};
    case ExperimentKind::rates:
      return {"experiment", "operator", "truth", "schedule", "sweep", "output"};
    case ExperimentKind::noise_probe:
      return {"experiment", "probe", "output"};
    case ExperimentKind::gamma:
      return {"experiment", "operator", "truth", "schedule", "gamma", "output"};
  }
  return {};
}

void require_decreasing(const std::vector<double>& grid, const std::string& field) {
  if (grid.empty()) throw ConfigError(field + ": grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw ConfigError(field + ": values must be positive");
    if (i > 0 && !(grid[i] < grid[i - 1])) throw ConfigError(field + ": values must be strictly decreasing");
  }
}

void require_increasing(const std::vector<int>& grid, const std::string& field) {
  if (grid.empty()) throw ConfigError(field + ": list is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw ConfigError(field + ": bandlimits must be at least 1");
    if (i > 0 && grid[i] <= grid[i - 1]) throw ConfigError(field + ": bandlimits must be strictly increasing");
  }
}

std::uint64_t offset_seed(std::uint64_t seed, std::int64_t offset) {
  if (offset >= 0) {
    const auto add = static_cast<std::uint64_t>(offset);
    if (seed > std::numeric_limits<std::uint64_t>::max() - add)
      throw ConfigError("seed-offset: seed " + std::to_string(seed) + " overflows");
    return seed + add;
  }
  const auto sub = static_cast<std::uint64_t>(-(offset + 1)) + 1;
  if (seed < sub) throw ConfigError("seed-offset: seed " + std::to_string(seed) + " becomes negative");
  return seed - sub;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::deblur:
      return "deblur";
    case ExperimentKind::rates:
      return "rates";
    case ExperimentKind::noise_probe:
      return "noise_probe";
    case ExperimentKind::gamma:
      return "gamma";
  }
  return "unknown";
}

MultiplierOperator OperatorSpec::build() const {
  return kind == Kind::deblur_1d ? MultiplierOperator::deblur_1d() : MultiplierOperator::power_law(exponent);
}

SpectralField TruthSpec::build(const FrequencyLattice& lattice) const {
  if (kind == Kind::hat) return hat_coefficients(lattice);
  if (lattice.dimension() != 1) throw DimensionError("coefficient-file truth is one-dimensional");
  std::ifstream in(path);
  if (!in) throw IoError("truth.path: cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || trim(line) != "ell,re,im")
    throw ConfigError("truth.path: expected header 'ell,re,im' in '" + path.string() + "'");
  std::vector<Complex> c(lattice.size());
  std::set<int> seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = "truth.path line " + std::to_string(line_no);
    const auto cells = split(trim(line), ',');
    if (cells.size() != 3) throw ConfigError(where + ": expected 3 columns");
    const int ell = to_integer<int>(cells[0], where);
    const Complex value{to_double(cells[1], where), to_double(cells[2], where)};
    if (ell < 0) throw ConfigError(where + ": list nonnegative modes only, negatives follow by conjugation");
    if (ell > lattice.bandlimit()) throw ConfigError(where + ": mode exceeds the reference bandlimit");
    if (ell == 0 && value.imag() != 0.0) throw ConfigError(where + ": the zero mode of a real signal is real");
    if (!seen.insert(ell).second) throw ConfigError(where + ": duplicate mode");
    c[lattice.center() + ell] = value;
    c[lattice.center() - ell] = std::conj(value);
  }
  return SpectralField(lattice, std::move(c), true);
}

std::vector<double> parse_double_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const std::string& token : split(text, ',')) out.push_back(to_double(token, field));
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text, const std::string& field) {
  std::vector<std::uint64_t> out;
  if (trim(text).empty()) return out;
  for (const std::string& token : split(text, ',')) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_integer<std::uint64_t>(token, field));
      continue;
    }
    const auto lo = to_integer<std::uint64_t>(trim(token.substr(0, dots)), field);
    const auto hi = to_integer<std::uint64_t>(trim(token.substr(dots + 2)), field);
    if (hi < lo) throw ConfigError(field + ": empty range '" + token + "'");
    if (hi - lo >= 1000000) throw ConfigError(field + ": range '" + token + "' is too long");
    for (std::uint64_t s = lo;; ++s) {
      out.push_back(s);
      if (s == hi) break;
    }
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.message() + " at line " + std::to_string(e.line()));
  }

  std::map<std::string, const pt::ptree*> sections;
  for (const auto& [name, child] : tree) {
    if (!child.data().empty()) throw ConfigError(name + ": keys must live inside a [section]");
    sections[name] = &child;
  }
  if (!sections.contains("experiment")) throw ConfigError("experiment.kind: required section [experiment] is missing");

  ExperimentConfig config;
  {
    Section s("experiment", *sections["experiment"]);
    config.experiment = parse_kind(s.text("kind"));
    s.finish();
  }
  const auto allowed = sections_for(config.experiment);
  for (const auto& [name, child] : sections)
    if (!allowed.contains(name))
      throw ConfigError(name + ": section is not used by experiment " + to_string(config.experiment));
  for (const std::string& name : allowed)
    if (name != "output" && !sections.contains(name))
      throw ConfigError(name + ": required section is missing for experiment " +
                        std::string(to_string(config.experiment)));

  if (sections.contains("operator")) {
    Section s("operator", *sections["operator"]);
    OperatorSpec op;
    const std::string kind = s.text("kind");
    if (kind == "deblur_1d") {
      op.kind = OperatorSpec::Kind::deblur_1d;
      op.exponent = 2.0;
    } else if (kind == "power_law") {
      op.kind = OperatorSpec::Kind::power_law;
      op.exponent = s.number("exponent");
    } else {
      throw ConfigError("operator.kind: expected deblur_1d or power_law, got '" + kind + "'");
    }
    s.finish();
    config.op = op;
  }
  if (sections.contains("truth")) {
    Section s("truth", *sections["truth"]);
    TruthSpec truth;
    const std::string kind = s.text("kind");
    if (kind == "hat") {
      truth.kind = TruthSpec::Kind::hat;
    } else if (kind == "file") {
      truth.kind = TruthSpec::Kind::file;
      truth.path = base_dir / s.text("path");
    } else {
      throw ConfigError("truth.kind: expected hat or file, got '" + kind + "'");
    }
    s.finish();
    config.truth = truth;
  }
  if (sections.contains("schedule")) {
    Section s("schedule", *sections["schedule"]);
    const double alpha0 = s.number("alpha0");
    const double kappa = s.number("kappa");
    const double r = s.number("r");
    s.finish();
    try {
      config.schedule.emplace(alpha0, kappa, r);
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("schedule: ") + e.what());
    }
  }
  if (sections.contains("sweep")) {
    Section s("sweep", *sections["sweep"]);
    SweepSpec sweep;
    sweep.deltas = s.numbers("deltas");
    if (config.experiment == ExperimentKind::deblur) sweep.seeds = s.seeds("seeds");
    sweep.bandlimit = s.integer("bandlimit");
    sweep.reference_bandlimit = s.integer("reference_bandlimit");
    sweep.s1_list = s.numbers("s1");
    sweep.noise_regularity = s.number("noise_regularity");
    s.finish();
    config.sweep = sweep;
  }
  if (sections.contains("signal")) {
    Section s("signal", *sections["signal"]);
    config.signal = SignalSpec{s.number("delta"), s.seed("seed"), s.integer("points")};
    s.finish();
  }
  if (sections.contains("divergence")) {
    Section s("divergence", *sections["divergence"]);
    config.divergence_alpha0 = s.number("alpha0");
    s.finish();
  }
  if (sections.contains("probe")) {
    Section s("probe", *sections["probe"]);
    ProbeSpec probe;
    probe.dimension = s.integer("dimension");
    probe.s_values = s.numbers("s_values");
    probe.bandlimits = s.integers("bandlimits");
    probe.seeds = s.seeds("seeds");
    probe.threshold = s.number("threshold");
    try {
      probe.rule = parse_classification_rule(s.text("rule"));
    } catch (const Error& e) {
      throw ConfigError(std::string("probe.rule: ") + e.what());
    }
    s.finish();
    config.probe = probe;
  }
  if (sections.contains("gamma")) {
    Section s("gamma", *sections["gamma"]);
    GammaSpec gamma;
    gamma.bandlimits = s.integers("bandlimits");
    gamma.reference_bandlimit = s.integer("reference_bandlimit");
    gamma.delta = s.number("delta");
    gamma.seed = s.seed("seed");
    gamma.test_functions = s.integer("test_functions");
    gamma.test_width = s.number("test_width");
    s.finish();
    config.gamma = gamma;
  }
  if (sections.contains("output")) {
    Section s("output", *sections["output"]);
    config.output_dir = base_dir / s.text("dir");
    s.finish();
  }
  validate(config);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

void validate(const ExperimentConfig& config) {
  if (config.op && config.op->kind == OperatorSpec::Kind::power_law && !(config.op->exponent > 0.0))
    throw ConfigError("operator.exponent: smoothing order t must be positive");
  if (config.sweep) {
    const SweepSpec& s = *config.sweep;
    require_decreasing(s.deltas, "sweep.deltas");
    if (config.experiment == ExperimentKind::deblur && s.seeds.empty()) throw ConfigError("sweep.seeds: list is empty");
    if (s.s1_list.empty()) throw ConfigError("sweep.s1: list is empty");
    if (s.bandlimit < 1) throw ConfigError("sweep.bandlimit: must be at least 1");
    if (s.reference_bandlimit < 4 * s.bandlimit)
      throw ConfigError("sweep.reference_bandlimit: must be at least 4 x sweep.bandlimit");
  }
  if (config.signal) {
    if (!(config.signal->delta > 0.0)) throw ConfigError("signal.delta: must be positive");
    if (config.signal->points < 2) throw ConfigError("signal.points: need at least 2 grid points");
  }
  if (config.divergence_alpha0 && !(*config.divergence_alpha0 > 0.0))
    throw ConfigError("divergence.alpha0: must be positive");
  if (config.probe) {
    const ProbeSpec& p = *config.probe;
    if (p.dimension != 1 && p.dimension != 2) throw ConfigError("probe.dimension: must be 1 or 2");
    if (p.s_values.empty()) throw ConfigError("probe.s_values: list is empty");
    require_increasing(p.bandlimits, "probe.bandlimits");
    if (!(p.threshold > 0.0)) throw ConfigError("probe.threshold: must be positive");
    if (p.rule == ClassificationRule::increment_decay && p.bandlimits.size() < 3)
      throw ConfigError("probe.bandlimits: increment_decay needs at least 3 bandlimits");
  }
  if (config.gamma) {
    const GammaSpec& g = *config.gamma;
    require_increasing(g.bandlimits, "gamma.bandlimits");
    if (g.reference_bandlimit < 4 * g.bandlimits.back())
      throw ConfigError("gamma.reference_bandlimit: must be at least 4 x the largest gamma.bandlimits entry");
    if (!(g.delta > 0.0)) throw ConfigError("gamma.delta: must be positive");
    if (g.test_functions < 1) throw ConfigError("gamma.test_functions: need at least one test function");
    if (!(g.test_width > 0.0)) throw ConfigError("gamma.test_width: must be positive");
  }
}

void apply_seed_offset(ExperimentConfig& config, std::int64_t offset) {
  if (config.sweep)
    for (auto& s : config.sweep->seeds) s = offset_seed(s, offset);
  if (config.signal) config.signal->seed = offset_seed(config.signal->seed, offset);
  if (config.probe)
    for (auto& s : config.probe->seeds) s = offset_seed(s, offset);
  if (config.gamma) config.gamma->seed = offset_seed(config.gamma->seed, offset);
}

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["experiment"] = to_string(config.experiment);
  if (config.op) {
    j["operator"] = {{"kind", config.op->kind == OperatorSpec::Kind::deblur_1d ? "deblur_1d" : "power_law"},
                     {"smoothing_order", config.op->exponent}};
  }
  if (config.truth) {
    j["truth"] = {{"kind", config.truth->kind == TruthSpec::Kind::hat ? "hat" : "file"}};
    if (config.truth->kind == TruthSpec::Kind::file) j["truth"]["path"] = config.truth->path.generic_string();
  }
  if (config.schedule)
    j["schedule"] = {{"alpha0", config.schedule->alpha0()},
                     {"kappa", config.schedule->kappa()},
                     {"r", config.schedule->r()}};
  if (config.sweep) {
    const SweepSpec& s = *config.sweep;
    j["sweep"] = {{"deltas", s.deltas},
                  {"bandlimit", s.bandlimit},
                  {"reference_bandlimit", s.reference_bandlimit},
                  {"s1", s.s1_list},
                  {"noise_regularity", s.noise_regularity}};
    if (config.experiment == ExperimentKind::deblur) j["sweep"]["seeds"] = s.seeds;
  }
  if (config.signal)
    j["signal"] = {{"delta", config.signal->delta}, {"seed", config.signal->seed}, {"points", config.signal->points}};
  if (config.divergence_alpha0)
    j["divergence"] = {{"alpha0", *config.divergence_alpha0}, {"kappa", 2.0}, {"r", 1.0}};
  if (config.probe) {
    const ProbeSpec& p = *config.probe;
    j["probe"] = {{"dimension", p.dimension}, {"s_values", p.s_values}, {"bandlimits", p.bandlimits},
                  {"seeds", p.seeds},         {"threshold", p.threshold}, {"rule", to_string(p.rule)}};
  }
  if (config.gamma) {
    const GammaSpec& g = *config.gamma;
    j["gamma"] = {{"bandlimits", g.bandlimits}, {"reference_bandlimit", g.reference_bandlimit},
                  {"delta", g.delta},           {"seed", g.seed},
                  {"test_functions", g.test_functions}, {"test_width", g.test_width}};
  }
  j["output_dir"] = config.output_dir.generic_string();
  return j;
}

}  // namespace tikhonov::experiment
