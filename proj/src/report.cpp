#include "lrr/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "lrr/error.hpp"
#include "lrr/rng.hpp"

namespace lrr {
namespace {

Json number(double v) {
  // JSON has no NaN; such cells become null.
  if (!std::isfinite(v)) return nullptr;
  return v;
}

template <class T>
Json tags(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(std::string(to_string(x)));
  return a;
}

template <class T, class F>
std::vector<T> parse_tags(const Json& j, F parse) {
  std::vector<T> out;
  for (const auto& x : j) out.push_back(parse(x.template get<std::string>()));
  return out;
}

template <class F>
void each_field(const Json& j, std::string_view what, F assign) {
  if (!j.is_object()) throw InvalidArgument(std::string(what) + " config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (!assign(key, value)) throw InvalidArgument("unknown " + std::string(what) + " config key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("bad value for '" + key + "': " + e.what());
    }
  }
}

std::string cell(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const EntropyEstimate& e) {
  Json j;
  j["value"] = number(e.value);
  j["alpha"] = e.alpha;
  j["k"] = e.k;
  j["backend"] = std::string(to_string(e.backend));
  j["s"] = e.s;
  j["seed"] = e.seed;
  j["elapsed"] = e.elapsed;
  return j;
}

Json to_json(const MutualInformation& mi) {
  Json j;
  j["mi"] = number(mi.value);
  j["negative"] = mi.negative;
  j["features"] = to_json(mi.variables);
  j["label"] = to_json(mi.target);
  j["joint"] = to_json(mi.joint);
  return j;
}

Json to_json(const ConditionalEstimate& ce) {
  Json j;
  j["value"] = number(ce.value);
  j["negative"] = ce.negative;
  j["joint"] = to_json(ce.joint);
  j["condition"] = to_json(ce.condition);
  return j;
}

Json to_json(const SelectionConfig& c) {
  Json j;
  j["criterion"] = std::string(to_string(c.criterion));
  j["alpha"] = c.alpha;
  j["k"] = c.k;
  j["backend"] = std::string(to_string(c.backend));
  j["s"] = c.sketch_width();
  j["p"] = c.p;
  j["m"] = c.m;
  j["beta"] = c.beta;
  j["bins"] = c.bins;
  j["sigma"] = c.sigma;
  j["seed"] = c.seed;
  j["delta_label_kernel"] = c.delta_label_kernel;
  return j;
}

Json to_json(const SelectionTrace& t) {
  Json j;
  j["features"] = t.features;
  Json scores = Json::array();
  for (double v : t.scores) scores.push_back(number(v));
  j["scores"] = scores;
  j["seconds"] = t.seconds;
  j["findings"] = t.findings;
  return j;
}

Json to_json(const RobustnessConfig& c) {
  Json j;
  j["n"] = c.n;
  j["d"] = c.d;
  j["epsilon"] = c.epsilon;
  j["trials"] = c.trials;
  j["noises"] = tags(c.noises);
  j["alphas"] = c.alphas;
  j["ks"] = c.ks;
  j["seed"] = c.seed;
  j["base_sd"] = c.base_sd;
  return j;
}

Json to_json(const SweepConfig& c) {
  Json j;
  j["n"] = c.n;
  j["c"] = c.c;
  j["k"] = c.k;
  j["alpha"] = c.alpha;
  j["methods"] = tags(c.methods);
  j["s_grid"] = c.s_grid;
  j["lanczos_s_grid"] = c.lanczos_s_grid;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["p"] = c.p;
  j["sgs_rescale"] = c.sgs_rescale;
  j["alphas"] = c.alphas;
  j["cs"] = c.cs;
  j["record_timing"] = c.record_timing;
  return j;
}

void from_json(const Json& j, RobustnessConfig& c) {
  each_field(j, "robust", [&](const std::string& key, const Json& v) {
    if (key == "n") c.n = v.get<Index>();
    else if (key == "d") c.d = v.get<Index>();
    else if (key == "epsilon") c.epsilon = v.get<double>();
    else if (key == "trials") c.trials = v.get<Index>();
    else if (key == "noises") c.noises = parse_tags<Noise>(v, parse_noise);
    else if (key == "alphas") c.alphas = v.get<std::vector<double>>();
    else if (key == "ks") c.ks = v.get<std::vector<Index>>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "base_sd") c.base_sd = v.get<double>();
    else return false;
    return true;
  });
}

void from_json(const Json& j, SweepConfig& c) {
  each_field(j, "sweep", [&](const std::string& key, const Json& v) {
    if (key == "n") c.n = v.get<Index>();
    else if (key == "c") c.c = v.get<double>();
    else if (key == "k") c.k = v.get<Index>();
    else if (key == "alpha") c.alpha = v.get<double>();
    else if (key == "methods") c.methods = parse_tags<Backend>(v, parse_backend);
    else if (key == "s_grid") c.s_grid = v.get<std::vector<Index>>();
    else if (key == "lanczos_s_grid") c.lanczos_s_grid = v.get<std::vector<Index>>();
    else if (key == "trials") c.trials = v.get<Index>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "p") c.p = v.get<Index>();
    else if (key == "sgs_rescale") c.sgs_rescale = v.get<bool>();
    else if (key == "alphas") c.alphas = v.get<std::vector<double>>();
    else if (key == "cs") c.cs = v.get<std::vector<double>>();
    else if (key == "record_timing") c.record_timing = v.get<bool>();
    else return false;
    return true;
  });
}

std::string config_hash(const Json& config) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : config.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_trace_csv(std::ostream& os, const SelectionTrace& t, std::string_view hash, std::uint64_t seed) {
  os << "step,feature,score,seconds,config_hash,seed\n";
  for (std::size_t i = 0; i < t.features.size(); ++i)
    os << i + 1 << ',' << t.features[i] << ',' << cell(t.scores[i]) << ',' << cell(t.seconds[i]) << ',' << hash
       << ',' << seed << '\n';
}

void write_robustness_csv(std::ostream& os, std::span<const RobustnessRow> rows, std::string_view hash,
                          std::uint64_t seed) {
  os << "noise,alpha,k,entropy_sd,ip_sd,config_hash,seed\n";
  for (const auto& r : rows)
    os << to_string(r.noise) << ',' << cell(r.alpha) << ',' << r.k << ',' << cell(r.entropy_sd) << ','
       << cell(r.ip_sd) << ',' << hash << ',' << seed << '\n';
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows, std::string_view hash, std::uint64_t seed) {
  os << "method,s,alpha,c,mre,sd,seconds,config_hash,seed\n";
  for (const auto& r : rows)
    os << to_string(r.method) << ',' << r.s << ',' << cell(r.alpha) << ',' << cell(r.c) << ',' << cell(r.mre) << ','
       << cell(r.sd) << ',' << cell(r.seconds) << ',' << hash << ',' << seed << '\n';
}

Json sidecar(std::string_view kind, const Json& config, std::uint64_t seed) {
  Json j;
  j["kind"] = std::string(kind);
  j["library_version"] = std::string(kLibraryVersion);
  j["format_version"] = kFormatVersion;
  j["rng"] = std::string(Rng::kName);
  j["rng_version"] = Rng::kVersion;
  j["config_hash"] = config_hash(config);
  j["seed"] = seed;
  j["config"] = config;
  return j;
}

}  // namespace lrr
