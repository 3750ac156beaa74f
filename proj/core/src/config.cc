#include "snnlab/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "snnlab/architecture.h"
#include "snnlab/csv.h"
#include "snnlab/error.h"
#include "snnlab/idx.h"

namespace snnlab {

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> Words(const std::string& value) {
  std::vector<std::string> out;
  std::string word;
  for (char c : value) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      if (!word.empty()) out.push_back(std::move(word));
      word.clear();
    } else {
      word += c;
    }
  }
  if (!word.empty()) out.push_back(std::move(word));
  return out;
}

std::string Where(const std::string& section, const std::string& key) {
  return "[" + section + "] " + key;
}

double ParseReal(const std::string& text, const std::string& where) {
  const std::string low = Lower(text);
  if (low == "inf" || low == "infinity" || low == "infinite") return kInfiniteTau;
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || std::isnan(value)) {
    throw ConfigError(where + ": '" + text + "' is not a number");
  }
  return value;
}

long long ParseInteger(const std::string& text, const std::string& where) {
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(where + ": '" + text + "' is not an integer");
  }
  return value;
}

std::uint64_t ParseUnsigned(const std::string& text, const std::string& where) {
  std::uint64_t value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(where + ": '" + text + "' is not a non-negative integer");
  }
  return value;
}

bool ParseBool(const std::string& text, const std::string& where) {
  const std::string low = Lower(text);
  if (low == "true" || low == "yes" || low == "on" || low == "1") return true;
  if (low == "false" || low == "no" || low == "off" || low == "0") return false;
  throw ConfigError(where + ": '" + text + "' is not a boolean");
}

// Reads one section, rejecting keys nobody asked for.
class SectionReader {
 public:
  SectionReader(const ConfigFile& file, std::string name) : name_(std::move(name)) {
    auto it = file.sections.find(name_);
    if (it != file.sections.end()) values_ = &it->second;
  }

  const std::string* Find(const std::string& key) {
    seen_.push_back(key);
    if (values_ == nullptr) return nullptr;
    auto it = values_->find(key);
    return it == values_->end() ? nullptr : &it->second;
  }

  void Real(const std::string& key, double& out) {
    if (auto* v = Find(key)) out = ParseReal(*v, Where(name_, key));
  }
  void Int(const std::string& key, int& out) {
    if (auto* v = Find(key)) out = static_cast<int>(ParseInteger(*v, Where(name_, key)));
  }
  void Unsigned(const std::string& key, std::uint64_t& out) {
    if (auto* v = Find(key)) out = ParseUnsigned(*v, Where(name_, key));
  }
  void Bool(const std::string& key, bool& out) {
    if (auto* v = Find(key)) out = ParseBool(*v, Where(name_, key));
  }
  void Text(const std::string& key, std::string& out) {
    if (auto* v = Find(key)) out = *v;
  }
  void Reals(const std::string& key, std::vector<double>& out) {
    if (auto* v = Find(key)) {
      out.clear();
      for (const auto& w : Words(*v)) out.push_back(ParseReal(w, Where(name_, key)));
    }
  }
  void Unsigneds(const std::string& key, std::vector<std::uint64_t>& out) {
    if (auto* v = Find(key)) {
      out.clear();
      for (const auto& w : Words(*v)) out.push_back(ParseUnsigned(w, Where(name_, key)));
    }
  }
  // Integers with optional inclusive ranges such as "0-8".
  void IntRanges(const std::string& key, std::vector<int>& out) {
    if (auto* v = Find(key)) {
      out.clear();
      for (const auto& w : Words(*v)) {
        const auto dash = w.find('-', 1);
        if (dash == std::string::npos) {
          out.push_back(static_cast<int>(ParseInteger(w, Where(name_, key))));
        } else {
          const auto lo = ParseInteger(w.substr(0, dash), Where(name_, key));
          const auto hi = ParseInteger(w.substr(dash + 1), Where(name_, key));
          if (hi < lo) throw ConfigError(Where(name_, key) + ": empty range " + w);
          for (auto i = lo; i <= hi; ++i) out.push_back(static_cast<int>(i));
        }
      }
    }
  }

  void RejectUnknown() const {
    if (values_ == nullptr) return;
    for (const auto& [key, value] : *values_) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        throw ConfigError("unknown key " + Where(name_, key));
      }
    }
  }

 private:
  std::string name_;
  const std::map<std::string, std::string>* values_ = nullptr;
  std::vector<std::string> seen_;
};

template <class T, class Fn>
std::string Join(const std::vector<T>& items, Fn&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ' ';
    out += fmt(items[i]);
  }
  return out;
}

std::string Real(double v) { return std::isinf(v) && v > 0 ? "inf" : FormatDouble(v); }
std::string Bool(bool v) { return v ? "true" : "false"; }

template <class T, class ParseFn>
void ParseEnumList(SectionReader& r, const std::string& key, std::vector<T>& out,
                   ParseFn&& parse) {
  if (auto* v = r.Find(key)) {
    out.clear();
    for (const auto& w : Words(*v)) out.push_back(parse(w));
  }
}

constexpr const char* kKnownSections[] = {"run", "model", "neuron", "train",
                                          "data", "eval", "coherence"};

}  // namespace

ConfigFile ConfigFile::Parse(std::string_view text) {
  ConfigFile cfg;
  std::string section;
  cfg.sections[section];
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      }
      section = Lower(Trim(std::string_view(line).substr(1, line.size() - 2)));
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = Lower(Trim(std::string_view(line).substr(0, eq)));
    const std::string value = Trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!cfg.sections[section].emplace(key, value).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " +
                        Where(section, key));
    }
  }
  return cfg;
}

bool ConfigFile::Has(const std::string& section, const std::string& key) const {
  auto it = sections.find(section);
  return it != sections.end() && it->second.count(key) > 0;
}

std::vector<CoherenceParams> CoherenceConfig::Cases() const {
  if (mu.size() != D.size()) {
    throw ConfigError("[coherence] mu and D must list the same number of values");
  }
  std::vector<CoherenceParams> cases;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    CoherenceParams p = CoherenceParams::Make(mu[i], D[i]);
    p.tau_r = tau_r;
    p.v_th = v_th;
    p.u_rest = u_rest;
    cases.push_back(p);
  }
  return cases;
}

std::string ModelTag(double tau_m) {
  if (std::isinf(tau_m)) return "if";
  return "lif" + FormatDouble(tau_m);
}

NeuronConfig ExperimentConfig::NeuronFor(double tau) const {
  NeuronConfig n = neuron;
  n.tau_m = tau;
  return n;
}

TrainConfig ExperimentConfig::TrainFor(std::uint64_t seed) const {
  TrainConfig t = train;
  t.seed = seed;
  t.threads = threads;
  return t;
}

void ExperimentConfig::Validate() const {
  if (seeds.empty()) throw ConfigError("[run] seeds must not be empty");
  if (tau_m.empty()) throw ConfigError("[neuron] tau_m must list at least one value");
  if (threads < 0) throw ConfigError("[run] threads must be >= 0");
  ParseArchitecture(architecture);
  try {
    for (double tau : tau_m) NeuronFor(tau).Validate();
    TrainFor(seeds.front()).Validate();
    for (const auto& p : coherence.Cases()) p.Validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (data.source != "synthetic" && data.source != "idx") {
    throw ConfigError("[data] source must be synthetic or idx");
  }
  if (data.source == "synthetic" && (data.train_size < 2 || data.test_size < 2)) {
    throw ConfigError("[data] synthetic sets need at least two samples");
  }
  if (data.source == "idx" && (data.train_images.empty() || data.train_labels.empty() ||
                               data.test_images.empty() || data.test_labels.empty())) {
    throw ConfigError("[data] idx source needs train/test image and label paths");
  }
  if (eval.encode_seeds.empty()) throw ConfigError("[eval] encode_seeds must not be empty");
  for (int s : eval.severities) {
    if (s < 0 || s > kMaxSeverity) throw ConfigError("[eval] severity out of range 0..8");
  }
  if (eval.spectrum_severity < 1 || eval.spectrum_severity > kMaxSeverity) {
    throw ConfigError("[eval] spectrum_severity must be in 1..8");
  }
  if (eval.histogram_bins < 1) throw ConfigError("[eval] histogram_bins must be positive");
  if (!(eval.critical_fraction > 0.0 && eval.critical_fraction <= 1.0)) {
    throw ConfigError("[eval] critical_fraction must be in (0, 1]");
  }
  const auto& c = coherence;
  if (!(c.omega_min > 0.0 && c.omega_max > c.omega_min)) {
    throw ConfigError("[coherence] need 0 < omega_min < omega_max");
  }
  if (c.analytic_points < 2) throw ConfigError("[coherence] analytic_points must be >= 2");
  if (!(c.mc_dt > 0.0 && c.mc_dt <= 1e-3)) throw ConfigError("[coherence] mc_dt must be in (0, 1e-3]");
  if (!(c.mc_bin >= c.mc_dt && c.mc_segment > c.mc_bin && c.mc_duration >= 20 * c.mc_segment)) {
    throw ConfigError("[coherence] need mc_dt <= mc_bin < mc_segment and 20 segments");
  }
}

ExperimentConfig ExperimentConfig::Parse(std::string_view text, const std::string& base_dir) {
  const ConfigFile file = ConfigFile::Parse(text);
  for (const auto& [name, values] : file.sections) {
    if (name.empty()) {
      if (!values.empty()) throw ConfigError("keys outside a section: " + values.begin()->first);
      continue;
    }
    if (std::find(std::begin(kKnownSections), std::end(kKnownSections), name) ==
        std::end(kKnownSections)) {
      throw ConfigError("unknown section [" + name + "]");
    }
  }

  ExperimentConfig c;
  c.base_dir = base_dir;
  try {
    SectionReader run(file, "run");
    run.Unsigneds("seeds", c.seeds);
    run.Text("output_dir", c.output_dir);
    run.Int("threads", c.threads);
    run.RejectUnknown();

    SectionReader model(file, "model");
    model.Text("architecture", c.architecture);
    model.RejectUnknown();

    SectionReader neuron(file, "neuron");
    neuron.Reals("tau_m", c.tau_m);
    neuron.Real("v_th", c.neuron.v_th);
    neuron.Real("u_rest", c.neuron.u_rest);
    neuron.Real("epsilon", c.neuron.epsilon);
    neuron.RejectUnknown();

    SectionReader train(file, "train");
    train.Int("epochs", c.train.epochs);
    train.Int("batch_size", c.train.batch_size);
    train.Real("learning_rate", c.train.learning_rate);
    train.IntRanges("lr_decay_epochs", c.train.lr_decay_epochs);
    train.Real("lr_decay_factor", c.train.lr_decay_factor);
    train.Int("steps", c.train.steps);
    train.RejectUnknown();

    SectionReader data(file, "data");
    data.Text("source", c.data.source);
    if (auto* v = data.Find("synth_kind")) c.data.synth_kind = ParseSynthKind(*v);
    data.Int("train_size", c.data.train_size);
    data.Int("test_size", c.data.test_size);
    data.Int("height", c.data.synth.height);
    data.Int("width", c.data.synth.width);
    data.Real("pixel_noise", c.data.synth.pixel_noise);
    data.Real("center_jitter", c.data.synth.center_jitter);
    data.Unsigned("data_seed", c.data.data_seed);
    data.Text("train_images", c.data.train_images);
    data.Text("train_labels", c.data.train_labels);
    data.Text("test_images", c.data.test_images);
    data.Text("test_labels", c.data.test_labels);
    data.Int("train_limit", c.data.train_limit);
    data.Int("test_limit", c.data.test_limit);
    data.RejectUnknown();

    SectionReader eval(file, "eval");
    eval.Unsigneds("encode_seeds", c.eval.encode_seeds);
    ParseEnumList(eval, "kinds", c.eval.kinds, ParseNoiseKind);
    eval.IntRanges("severities", c.eval.severities);
    ParseEnumList(eval, "scenarios", c.eval.scenarios, ParseNoiseScenario);
    eval.Real("gaussian_sigma_per_level", c.eval.scales.gaussian_sigma_per_level);
    eval.Real("impulse_prob_per_level", c.eval.scales.impulse_prob_per_level);
    eval.Real("impulse_amplitude", c.eval.scales.impulse_amplitude);
    eval.Real("critical_fraction", c.eval.critical_fraction);
    eval.Bool("detrend_target_signal", c.eval.detrend_target_signal);
    if (auto* v = eval.Find("spectrum_kind")) c.eval.spectrum_kind = ParseNoiseKind(*v);
    eval.Int("spectrum_severity", c.eval.spectrum_severity);
    if (auto* v = eval.Find("spectrum_scenario")) {
      c.eval.spectrum_scenario = ParseNoiseScenario(*v);
    }
    eval.Int("histogram_bins", c.eval.histogram_bins);
    eval.RejectUnknown();

    SectionReader coh(file, "coherence");
    coh.Reals("mu", c.coherence.mu);
    coh.Reals("d", c.coherence.D);
    coh.Real("tau_r", c.coherence.tau_r);
    coh.Real("v_th", c.coherence.v_th);
    coh.Real("u_rest", c.coherence.u_rest);
    coh.Real("omega_min", c.coherence.omega_min);
    coh.Real("omega_max", c.coherence.omega_max);
    coh.Int("analytic_points", c.coherence.analytic_points);
    coh.Real("mc_duration", c.coherence.mc_duration);
    coh.Real("mc_dt", c.coherence.mc_dt);
    coh.Real("mc_bin", c.coherence.mc_bin);
    coh.Real("mc_segment", c.coherence.mc_segment);
    coh.Bool("mc_bridge", c.coherence.mc_bridge);
    coh.Bool("include_if", c.coherence.include_if);
    coh.RejectUnknown();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  c.Validate();
  return c;
}

ExperimentConfig ExperimentConfig::Load(const std::string& path) {
  const auto bytes = ReadFileBytes(path);
  const std::string text(bytes.begin(), bytes.end());
  std::string base = std::filesystem::path(path).parent_path().string();
  if (base.empty()) base = ".";
  return Parse(text, base);
}

std::string ExperimentConfig::Serialize() const {
  std::ostringstream out;
  const auto seeds_text = Join(seeds, [](std::uint64_t s) { return std::to_string(s); });
  out << "[run]\n"
      << "seeds = " << seeds_text << "\n";
  if (!output_dir.empty()) out << "output_dir = " << output_dir << "\n";
  out << "threads = " << threads << "\n\n";

  out << "[model]\n"
      << "architecture = " << architecture << "\n\n";

  out << "[neuron]\n"
      << "tau_m = " << Join(tau_m, Real) << "\n"
      << "v_th = " << Real(neuron.v_th) << "\n"
      << "u_rest = " << Real(neuron.u_rest) << "\n"
      << "epsilon = " << Real(neuron.epsilon) << "\n\n";

  out << "[train]\n"
      << "epochs = " << train.epochs << "\n"
      << "batch_size = " << train.batch_size << "\n"
      << "learning_rate = " << Real(train.learning_rate) << "\n"
      << "lr_decay_epochs = "
      << Join(train.lr_decay_epochs, [](int e) { return std::to_string(e); }) << "\n"
      << "lr_decay_factor = " << Real(train.lr_decay_factor) << "\n"
      << "steps = " << train.steps << "\n\n";

  out << "[data]\n"
      << "source = " << data.source << "\n"
      << "synth_kind = " << ToString(data.synth_kind) << "\n"
      << "train_size = " << data.train_size << "\n"
      << "test_size = " << data.test_size << "\n"
      << "height = " << data.synth.height << "\n"
      << "width = " << data.synth.width << "\n"
      << "pixel_noise = " << Real(data.synth.pixel_noise) << "\n"
      << "center_jitter = " << Real(data.synth.center_jitter) << "\n"
      << "data_seed = " << data.data_seed << "\n";
  if (!data.train_images.empty()) out << "train_images = " << data.train_images << "\n";
  if (!data.train_labels.empty()) out << "train_labels = " << data.train_labels << "\n";
  if (!data.test_images.empty()) out << "test_images = " << data.test_images << "\n";
  if (!data.test_labels.empty()) out << "test_labels = " << data.test_labels << "\n";
  out << "train_limit = " << data.train_limit << "\n"
      << "test_limit = " << data.test_limit << "\n\n";

  out << "[eval]\n"
      << "encode_seeds = "
      << Join(eval.encode_seeds, [](std::uint64_t s) { return std::to_string(s); }) << "\n"
      << "kinds = " << Join(eval.kinds, [](NoiseKind k) { return ToString(k); }) << "\n"
      << "severities = " << Join(eval.severities, [](int s) { return std::to_string(s); })
      << "\n"
      << "scenarios = "
      << Join(eval.scenarios, [](NoiseScenario s) { return ToString(s); }) << "\n"
      << "gaussian_sigma_per_level = " << Real(eval.scales.gaussian_sigma_per_level) << "\n"
      << "impulse_prob_per_level = " << Real(eval.scales.impulse_prob_per_level) << "\n"
      << "impulse_amplitude = " << Real(eval.scales.impulse_amplitude) << "\n"
      << "critical_fraction = " << Real(eval.critical_fraction) << "\n"
      << "detrend_target_signal = " << Bool(eval.detrend_target_signal) << "\n"
      << "spectrum_kind = " << ToString(eval.spectrum_kind) << "\n"
      << "spectrum_severity = " << eval.spectrum_severity << "\n"
      << "spectrum_scenario = " << ToString(eval.spectrum_scenario) << "\n"
      << "histogram_bins = " << eval.histogram_bins << "\n\n";

  out << "[coherence]\n"
      << "mu = " << Join(coherence.mu, Real) << "\n"
      << "d = " << Join(coherence.D, Real) << "\n"
      << "tau_r = " << Real(coherence.tau_r) << "\n"
      << "v_th = " << Real(coherence.v_th) << "\n"
      << "u_rest = " << Real(coherence.u_rest) << "\n"
      << "omega_min = " << Real(coherence.omega_min) << "\n"
      << "omega_max = " << Real(coherence.omega_max) << "\n"
      << "analytic_points = " << coherence.analytic_points << "\n"
      << "mc_duration = " << Real(coherence.mc_duration) << "\n"
      << "mc_dt = " << Real(coherence.mc_dt) << "\n"
      << "mc_bin = " << Real(coherence.mc_bin) << "\n"
      << "mc_segment = " << Real(coherence.mc_segment) << "\n"
      << "mc_bridge = " << Bool(coherence.mc_bridge) << "\n"
      << "include_if = " << Bool(coherence.include_if) << "\n";
  return out.str();
}

std::uint64_t ExperimentConfig::ModelFingerprint() const {
  // FNV-1a over the sections that shape a trained network.
  std::ostringstream key;
  key << architecture << '|' << Real(neuron.v_th) << '|' << Real(neuron.u_rest) << '|'
      << Real(neuron.epsilon) << '|' << train.epochs << '|' << train.batch_size << '|'
      << Real(train.learning_rate) << '|'
      << Join(train.lr_decay_epochs, [](int e) { return std::to_string(e); }) << '|'
      << Real(train.lr_decay_factor) << '|' << train.steps << '|' << data.source << '|'
      << ToString(data.synth_kind) << '|' << data.train_size << '|' << data.test_size << '|'
      << data.synth.height << '|' << data.synth.width << '|' << Real(data.synth.pixel_noise)
      << '|' << Real(data.synth.center_jitter) << '|' << data.data_seed << '|'
      << data.train_images << '|' << data.train_labels << '|' << data.train_limit;
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : key.str()) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

bool ExperimentConfig::operator==(const ExperimentConfig& o) const {
  return seeds == o.seeds && output_dir == o.output_dir && threads == o.threads &&
         architecture == o.architecture && tau_m == o.tau_m && neuron == o.neuron &&
         train == o.train && data == o.data && eval == o.eval && coherence == o.coherence;
}

}  // namespace snnlab
