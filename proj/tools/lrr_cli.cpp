// lrr: command-line front end for the low-rank Renyi entropy library.
//
// Exit codes: 0 success, 2 argument errors, 3 data errors, 4 numerical
// errors, 1 anything else. LRR_NUM_THREADS sets the worker count; it changes
// speed only, never values.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lrr/bench.hpp"
#include "lrr/csv.hpp"
#include "lrr/error.hpp"
#include "lrr/estimator.hpp"
#include "lrr/featsel.hpp"
#include "lrr/kernels.hpp"
#include "lrr/report.hpp"
#include "lrr/rng.hpp"

namespace {

using namespace lrr;

struct DataFlags {
  std::string input;
  bool header = false;
  std::optional<std::string> label;
};

struct KernelFlags {
  std::string kernel = "gaussian";
  std::string label_kernel = "gaussian";
  double sigma = 1.0;
};

struct EstimatorFlags {
  double alpha = 1.01;
  std::optional<Index> k;
  std::optional<Index> s;
  Index p = 2;
  std::string backend = "exact";
  std::uint64_t seed = 0;
  bool sgs_rescale = false;
  bool timing = false;
};

void add_data_flags(CLI::App* app, DataFlags& f) {
  app->add_option("input", f.input, "CSV file, one sample per row")->required()->check(CLI::ExistingFile);
  app->add_flag("--header", f.header, "First row holds column names");
}

void add_kernel_flags(CLI::App* app, KernelFlags& f) {
  app->add_option("--kernel", f.kernel, "Feature kernel")
      ->check(CLI::IsMember({"gaussian", "linear", "delta"}))
      ->capture_default_str();
  app->add_option("--sigma", f.sigma, "Gaussian kernel width")->check(CLI::PositiveNumber)->capture_default_str();
}

void add_estimator_flags(CLI::App* app, EstimatorFlags& f) {
  app->add_option("--alpha", f.alpha, "Entropy order")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--k", f.k, "Rank of the low-rank approximation (omit for the full entropy with --backend exact)");
  app->add_option("--s", f.s, "Sketch width or Lanczos steps (default min(n, k + 10))");
  app->add_option("--p", f.p, "Nonzeros per column for sgs")->capture_default_str();
  app->add_option("--backend", f.backend, "exact, grp, srht, ist, sgs or lanczos")
      ->check(CLI::IsMember({"exact", "exact-lowrank", "grp", "srht", "ist", "sgs", "lanczos"}))
      ->capture_default_str();
  app->add_option("--seed", f.seed, "Seed for randomized backends")->capture_default_str();
  app->add_flag("--sgs-rescale", f.sgs_rescale, "Scale sgs projections by sqrt(n/s)");
  app->add_flag("--timing", f.timing, "Report wall-clock seconds (otherwise 0)");
}

DataMatrix features_of(const CsvData& csv) { return DataMatrix(csv.data.values()); }

Matrix gram_of(const DataMatrix& x, const KernelFlags& f) {
  if (f.kernel == "linear") return linear_gram(x);
  if (f.kernel == "delta") return delta_gram(x);
  return gaussian_gram(x, f.sigma);
}

EstimatorConfig estimator_of(const EstimatorFlags& f, Index n) {
  EstimatorConfig c;
  c.alpha = f.alpha;
  c.p = f.p;
  c.seed = f.seed;
  c.sgs_rescale = f.sgs_rescale;
  c.backend = parse_backend(f.backend);
  if (c.backend == Backend::exact && f.k) c.backend = Backend::exact_lowrank;
  if (c.backend == Backend::exact) {
    c.k = n;
    return c;
  }
  c.k = f.k.value_or(1);
  if (c.backend != Backend::exact_lowrank) c.s = f.s.value_or(std::min(n, c.k + 10));
  return c;
}

void finish(EntropyEstimate& e, bool timing) {
  if (!timing) e.elapsed = 0.0;
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

int clamp_k(Index k, Index n) { return static_cast<int>(std::min(k, n - 1)); }

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot write '" + path + "'");
  return os;
}

void write_sidecar(const std::string& path, std::string_view kind, const Json& config, std::uint64_t seed,
                   const Json* extra = nullptr) {
  Json doc = sidecar(kind, config, seed);
  if (extra) doc["result"] = *extra;
  std::ofstream os = open_out(path + ".json");
  os << doc.dump(2) << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Low-rank matrix-based Renyi entropy estimation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("lrr ") + std::string(kLibraryVersion) +
                                        " (format " + std::to_string(kFormatVersion) + ", rng " +
                                        std::string(Rng::kName) + " v" + std::to_string(Rng::kVersion) + ")");

  // entropy
  DataFlags ed;
  KernelFlags ek;
  EstimatorFlags ee;
  CLI::App* entropy = app.add_subcommand("entropy", "Entropy of the normalized kernel matrix of the features");
  add_data_flags(entropy, ed);
  entropy->add_option("--label", ed.label, "Label column to exclude (name or 0-based index)");
  add_kernel_flags(entropy, ek);
  add_estimator_flags(entropy, ee);

  // mi
  DataFlags md;
  KernelFlags mk;
  EstimatorFlags me;
  CLI::App* mi = app.add_subcommand("mi", "Mutual information between the features and the label");
  add_data_flags(mi, md);
  mi->add_option("--label", md.label, "Label column (name or 0-based index)")->required();
  add_kernel_flags(mi, mk);
  mi->add_option("--label-kernel", mk.label_kernel, "Label kernel")
      ->check(CLI::IsMember({"gaussian", "delta"}))
      ->capture_default_str();
  add_estimator_flags(mi, me);

  // select
  DataFlags sd;
  SelectionConfig sc;
  std::string criterion = "lrmi", sbackend = "lanczos", slabel_kernel = "gaussian";
  std::optional<Index> sk;
  std::optional<std::string> sout;
  bool stiming = false;
  CLI::App* select = app.add_subcommand("select", "Greedy forward feature selection");
  add_data_flags(select, sd);
  select->add_option("--label", sd.label, "Label column (name or 0-based index)")->required();
  select->add_option("--criterion", criterion, "lrmi, mrmi, mifs, fou, mrmr, jmi, cmim or disr")
      ->check(CLI::IsMember({"lrmi", "mrmi", "mifs", "fou", "mrmr", "jmi", "cmim", "disr"}))
      ->capture_default_str();
  select->add_option("--m", sc.m, "Number of features to select")->capture_default_str();
  select->add_option("--alpha", sc.alpha, "Entropy order")->check(CLI::PositiveNumber)->capture_default_str();
  select->add_option("--k", sk, "Rank (default min(100, n - 1))");
  select->add_option("--s", sc.s, "Sketch width or Lanczos steps (0: k + 50)")->capture_default_str();
  select->add_option("--p", sc.p, "Nonzeros per column for sgs")->capture_default_str();
  select->add_option("--backend", sbackend, "Backend for lrmi")
      ->check(CLI::IsMember({"exact-lowrank", "grp", "srht", "ist", "sgs", "lanczos"}))
      ->capture_default_str();
  select->add_option("--bins", sc.bins, "Equal-width bins for the Shannon criteria")->capture_default_str();
  select->add_option("--beta", sc.beta, "MIFS redundancy weight")->capture_default_str();
  select->add_option("--sigma", sc.sigma, "Gaussian kernel width")->check(CLI::PositiveNumber)->capture_default_str();
  select->add_option("--label-kernel", slabel_kernel, "Label kernel")
      ->check(CLI::IsMember({"gaussian", "delta"}))
      ->capture_default_str();
  select->add_option("--seed", sc.seed, "Seed for randomized backends")->capture_default_str();
  select->add_option("--out", sout, "Write the trace CSV here and the JSON sidecar to <out>.json");
  select->add_flag("--timing", stiming, "Record per-step seconds (otherwise 0)");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "Seeded simulation studies; writes CSV and a JSON sidecar");
  bench->require_subcommand(1);
  std::string bout;
  std::optional<std::string> bconfig;
  std::optional<Index> bn, btrials, bk, bd;
  std::optional<double> balpha, bc, beps;
  std::optional<std::uint64_t> bseed;
  bool btiming = false;
  auto add_bench_common = [&](CLI::App* sub) {
    sub->add_option("--out", bout, "Output CSV path (sidecar at <out>.json)")->required();
    sub->add_option("--config", bconfig, "JSON config file; flags override its fields");
    sub->add_option("--n", bn, "Matrix size / sample count");
    sub->add_option("--trials", btrials, "Number of trials");
    sub->add_option("--seed", bseed, "Seed");
  };
  CLI::App* robust = bench->add_subcommand("robust", "Standard deviation of the entropy under perturbations");
  add_bench_common(robust);
  robust->add_option("--d", bd, "Dimension");
  robust->add_option("--epsilon", beps, "Perturbation scale");
  std::vector<CLI::App*> sweeps;
  for (const char* name : {"mre", "alpha", "edr"}) {
    CLI::App* sub = bench->add_subcommand(name, std::string("Approximation error sweep (") + name + ")");
    add_bench_common(sub);
    sub->add_option("--k", bk, "Rank");
    sub->add_option("--alpha", balpha, "Entropy order");
    sub->add_option("--c", bc, "Power-law decay exponent");
    sub->add_flag("--timing", btiming, "Record mean seconds (otherwise 0)");
    sweeps.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (entropy->parsed()) {
    const CsvData csv = read_csv(ed.input, CsvOptions{ed.header, ed.label});
    const DataMatrix x = features_of(csv);
    const KernelMatrix a = normalize(gram_of(x, ek));
    EntropyEstimate e = estimate_entropy(a, estimator_of(ee, x.samples()));
    finish(e, ee.timing);
    print(to_json(e));
    return 0;
  }

  if (mi->parsed()) {
    const CsvData csv = read_csv(md.input, CsvOptions{md.header, md.label});
    const DataMatrix x = features_of(csv);
    const KernelMatrix a = normalize(gram_of(x, mk));
    const KernelMatrix b = normalize(label_gram(*csv.data.labels(), mk.sigma, mk.label_kernel == "delta"));
    const std::array<KernelMatrix, 1> vars{a};
    MutualInformation r = mutual_information(vars, b, estimator_of(me, x.samples()));
    finish(r.variables, me.timing);
    finish(r.target, me.timing);
    finish(r.joint, me.timing);
    print(to_json(r));
    return 0;
  }

  if (select->parsed()) {
    const CsvData csv = read_csv(sd.input, CsvOptions{sd.header, sd.label});
    sc.criterion = parse_criterion(criterion);
    sc.backend = parse_backend(sbackend);
    sc.delta_label_kernel = slabel_kernel == "delta";
    const Index n = csv.data.samples();
    sc.k = sk.value_or(clamp_k(100, n));
    if (sc.m > csv.data.features())
      throw InvalidArgument("--m " + std::to_string(sc.m) + " exceeds the " + std::to_string(csv.data.features()) +
                            " available features");
    SelectionTrace t = greedy_select(csv.data, sc);
    if (!stiming) std::fill(t.seconds.begin(), t.seconds.end(), 0.0);
    const Json config = to_json(sc);
    Json result = to_json(t);
    Json names = Json::array();
    for (Index f : t.features) names.push_back(csv.feature_names[static_cast<std::size_t>(f)]);
    result["names"] = names;
    if (sout) {
      std::ofstream os = open_out(*sout);
      write_trace_csv(os, t, config_hash(config), sc.seed);
      write_sidecar(*sout, "select", config, sc.seed, &result);
    } else {
      Json doc = sidecar("select", config, sc.seed);
      doc["result"] = result;
      print(doc);
    }
    return 0;
  }

  // bench
  Json file_config = Json::object();
  if (bconfig) {
    std::ifstream in(*bconfig);
    if (!in) throw InvalidArgument("cannot open config file '" + *bconfig + "'");
    try {
      file_config = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("config file '" + *bconfig + "' is not valid JSON: " + e.what());
    }
  }
  if (robust->parsed()) {
    RobustnessConfig c;
    from_json(file_config, c);
    if (bn) c.n = *bn;
    if (bd) c.d = *bd;
    if (beps) c.epsilon = *beps;
    if (btrials) c.trials = *btrials;
    if (bseed) c.seed = *bseed;
    const auto rows = robustness_sim(c);
    const Json config = to_json(c);
    std::ofstream os = open_out(bout);
    write_robustness_csv(os, rows, config_hash(config), c.seed);
    write_sidecar(bout, "robust", config, c.seed);
    return 0;
  }
  for (std::size_t i = 0; i < sweeps.size(); ++i) {
    if (!sweeps[i]->parsed()) continue;
    SweepConfig c;
    c.record_timing = false;
    from_json(file_config, c);
    if (bn) c.n = *bn;
    if (btrials) c.trials = *btrials;
    if (bseed) c.seed = *bseed;
    if (bk) c.k = *bk;
    if (balpha) c.alpha = *balpha;
    if (bc) c.c = *bc;
    if (btiming) c.record_timing = true;
    if (!file_config.contains("k") && !bk) c.k = std::min<Index>(c.k, c.n / 2);
    // Default grids assume n = 1024; keep only widths that fit.
    auto fit = [&](std::vector<Index>& grid) {
      std::erase_if(grid, [&](Index s) { return s > c.n || s < c.k; });
    };
    if (!file_config.contains("s_grid")) fit(c.s_grid);
    if (!file_config.contains("lanczos_s_grid")) fit(c.lanczos_s_grid);
    const std::string name = sweeps[i]->get_name();
    std::vector<SweepRow> rows = name == "mre"     ? mre_sweep(c)
                                 : name == "alpha" ? alpha_sweep(c)
                                                   : edr_sweep(c);
    const Json config = to_json(c);
    std::ofstream os = open_out(bout);
    write_sweep_csv(os, rows, config_hash(config), c.seed);
    write_sidecar(bout, name, config, c.seed);
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lrr::InvalidArgument& e) {
    std::cerr << "lrr: " << e.what() << '\n';
    return 2;
  } catch (const lrr::DataError& e) {
    std::cerr << "lrr: data error: " << e.what() << '\n';
    return 3;
  } catch (const lrr::NumericalError& e) {
    std::cerr << "lrr: numerical error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "lrr: " << e.what() << '\n';
    return 1;
  }
}
