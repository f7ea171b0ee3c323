#include <doctest.h>

#include <chrono>
#include <cmath>
#include <set>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "lrr/csv.hpp"
#include "lrr/estimator.hpp"
#include "lrr/kernels.hpp"
#include "lrr/rng.hpp"

namespace fs = std::filesystem;
using namespace lrr;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" LRR_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(LRR_TEST_TMP) / "cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path.string();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// n rows: label in {0,1,2}, a noisy copy of label, and noise columns.
std::string mixed_csv(int n, std::uint64_t seed, bool header = true) {
  Rng rng(seed);
  std::ostringstream os;
  os.precision(17);
  if (header) os << "signal,noise1,noise2,y\n";
  for (int i = 0; i < n; ++i) {
    const int y = static_cast<int>(rng.below(3));
    os << 3.0 * y + 0.3 * rng.normal() << ',' << rng.normal() << ',' << rng.normal() << ',' << y << '\n';
  }
  return os.str();
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("entropy subcommand") {
  const fs::path dir = scratch("entropy");
  std::string same;
  for (int i = 0; i < 8; ++i) same += "1.5,-2,0.25\n";
  const std::string flat = write_file(dir / "same.csv", same);
  Run r = run("entropy " + flat + " --k 1");
  REQUIRE(r.code == 0);
  CHECK(parse(r)["value"].get<double>() == 0.0);
  CHECK(parse(r)["backend"] == "exact-lowrank");

  const std::string data = write_file(dir / "mixed.csv", mixed_csv(60, 1));
  r = run("entropy " + data + " --header --label y --alpha 1.01 --k 10 --backend lanczos --s 20 --seed 7");
  REQUIRE(r.code == 0);
  const auto j = parse(r);
  CHECK(j["backend"] == "lanczos");
  CHECK(j["s"] == 20);
  CHECK(j["k"] == 10);
  CHECK(j["seed"] == 7);
  CHECK(j["alpha"] == 1.01);
  CHECK(j["elapsed"] == 0.0);
  CHECK(j.size() == 7);
  // Oracle on the same file.
  const CsvData csv = read_csv(data, CsvOptions{true, "y"});
  const KernelMatrix a = normalize(gaussian_gram(DataMatrix(csv.data.values()), 1.0));
  EstimatorConfig cfg;
  cfg.backend = Backend::exact_lowrank;
  cfg.k = 10;
  const double oracle = estimate_entropy(a, cfg).value;
  CHECK(std::abs(j["value"].get<double>() - oracle) < 1e-3 * oracle);

  const Run again = run("entropy " + data + " --header --label y --alpha 1.01 --k 10 --backend lanczos --s 20 --seed 7");
  CHECK(again.out == r.out);
  const Run threaded = run("entropy " + data + " --header --label y --alpha 1.01 --k 10 --backend lanczos --s 20 --seed 7",
                           "LRR_NUM_THREADS=4");
  CHECK(threaded.out == r.out);

  r = run("entropy " + data + " --header --label y");
  REQUIRE(r.code == 0);
  CHECK(parse(r)["backend"] == "exact");
  CHECK(parse(r)["k"] == 60);
  for (const char* b : {"grp", "srht", "ist", "sgs"}) {
    r = run("entropy " + data + " --header --label y --k 5 --s 30 --backend " + b);
    CHECK(r.code == 0);
    CHECK(parse(r)["backend"] == b);
  }
  CHECK(run("entropy " + data + " --header --label y --kernel linear").code == 0);
  CHECK(run("entropy " + data + " --header --label y --timing").code == 0);
}

TEST_CASE("entropy exit codes") {
  const fs::path dir = scratch("codes");
  const std::string data = write_file(dir / "mixed.csv", mixed_csv(20, 2));
  CHECK(run("entropy " + data + " --header --label y --backend svd").code == 2);
  CHECK(run("entropy " + data + " --header --label y --alpha -1").code == 2);
  CHECK(run("entropy " + data + " --header --label y --k 25").code == 2);
  CHECK(run("entropy " + (dir / "missing.csv").string()).code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  const std::string bad = write_file(dir / "bad.csv", "1,2\n3,x\n");
  CHECK(run("entropy " + bad).code == 3);
  const std::string zero = write_file(dir / "zero.csv", "0,0\n1,2\n3,1\n");
  CHECK(run("entropy " + zero + " --kernel linear").code == 3);
  // Rank one with a narrow Gaussian sketch oversums for some seeds.
  std::string same;
  for (int i = 0; i < 64; ++i) same += "1,1\n";
  const std::string flat = write_file(dir / "flat.csv", same);
  int numerical = 0;
  for (int seed = 0; seed < 10; ++seed) {
    const int code = run("entropy " + flat + " --k 1 --s 16 --backend grp --seed " + std::to_string(seed)).code;
    CHECK((code == 0 || code == 4));
    numerical += code == 4;
  }
  CHECK(numerical > 0);
  const Run v = run("--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("format 1") != std::string::npos);
  CHECK(v.out.find("philox4x32-10") != std::string::npos);
}

TEST_CASE("mi subcommand") {
  const fs::path dir = scratch("mi");
  std::ostringstream constant, copy;
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    constant << rng.normal() << ',' << rng.normal() << ",1\n";
    const int y = static_cast<int>(rng.below(3));
    copy << 10 * y << ',' << y << '\n';
  }
  const std::string c = write_file(dir / "constant.csv", constant.str());
  Run r = run("mi " + c + " --label 2 --backend exact");
  REQUIRE(r.code == 0);
  CHECK(std::abs(parse(r)["mi"].get<double>()) < 1e-9);
  CHECK(std::abs(parse(r)["label"]["value"].get<double>()) < 1e-9);

  const std::string same = write_file(dir / "copy.csv", copy.str());
  // Label values enter the Gaussian label kernel unscaled; spacing 10 makes
  // the feature kernel and label kernel nearly block-diagonal.
  const std::string spaced = write_file(dir / "spaced.csv", [&] {
    std::istringstream in(copy.str());
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
      const std::string f = line.substr(0, line.find(','));
      out << f << ',' << f << '\n';
    }
    return out.str();
  }());
  r = run("mi " + spaced + " --label 1 --backend exact");
  REQUIRE(r.code == 0);
  CHECK(std::abs(parse(r)["mi"].get<double>() - parse(r)["label"]["value"].get<double>()) < 1e-6);
  r = run("mi " + same + " --label 1 --backend exact --kernel delta --label-kernel delta");
  REQUIRE(r.code == 0);
  CHECK(std::abs(parse(r)["mi"].get<double>() - parse(r)["label"]["value"].get<double>()) < 1e-6);
  CHECK(parse(r)["negative"] == false);
  r = run("mi " + same + " --label 1 --k 5 --s 25 --backend lanczos --seed 3");
  REQUIRE(r.code == 0);
  CHECK(parse(r)["joint"]["seed"] == 3);

  CHECK(run("mi " + same).code == 2);
}

TEST_CASE("select subcommand") {
  const fs::path dir = scratch("select");
  const std::string data = write_file(dir / "mixed.csv", mixed_csv(80, 5));
  Run r = run("select " + data + " --header --label y --m 2 --k 20");
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["result"]["features"][0] == 0);
  CHECK(j["result"]["names"][0] == "signal");
  CHECK(j["config"]["criterion"] == "lrmi");
  CHECK(j["seed"] == 0);

  const fs::path out = dir / "trace.csv";
  r = run("select " + data + " --header --label y --criterion mrmr --bins 5 --m 3 --out " + out.string());
  REQUIRE(r.code == 0);
  const std::string csv = read_file(out);
  CHECK(csv.rfind("step,feature,score,seconds,config_hash,seed\n", 0) == 0);
  CHECK(csv.find("\n1,0,") != std::string::npos);
  const auto side = nlohmann::json::parse(read_file(out.string() + ".json"));
  CHECK(side["config"]["criterion"] == "mrmr");
  CHECK(side["result"]["features"].size() == 3);
  const Run again = run("select " + data + " --header --label y --criterion mrmr --bins 5 --m 3 --out " +
                        (dir / "trace2.csv").string());
  CHECK(again.code == 0);
  CHECK(read_file(dir / "trace2.csv") == csv);

  CHECK(run("select " + data + " --header --label y --m 4").code == 2);
  CHECK(run("select " + data + " --header --m 1").code == 2);
  CHECK(run("select " + data + " --header --label y --criterion relief").code == 2);
}

TEST_CASE("bench subcommand") {
  const fs::path dir = scratch("bench");
  const fs::path robust = dir / "robust.csv";
  Run r = run("bench robust --trials 5 --out " + robust.string());
  REQUIRE(r.code == 0);
  std::istringstream in(read_file(robust));
  std::string line;
  std::getline(in, line);
  CHECK(line == "noise,alpha,k,entropy_sd,ip_sd,config_hash,seed");
  int rows = 0;
  std::set<std::string> noises;
  while (std::getline(in, line)) {
    ++rows;
    noises.insert(line.substr(0, line.find(',')));
  }
  CHECK(rows == 4 * 2 * 4);
  CHECK(noises.size() == 4);
  CHECK(nlohmann::json::parse(read_file(robust.string() + ".json"))["config"]["trials"] == 5);

  const fs::path mre = dir / "mre.csv";
  const auto start = std::chrono::steady_clock::now();
  r = run("bench mre --n 128 --trials 3 --out " + mre.string());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE(r.code == 0);
  CHECK(secs < 10.0);
  const std::string first = read_file(mre);
  CHECK(first.rfind("method,s,alpha,c,mre,sd,seconds,config_hash,seed\n", 0) == 0);
  r = run("bench mre --n 128 --trials 3 --out " + (dir / "mre4.csv").string(), "LRR_NUM_THREADS=4");
  CHECK(read_file(dir / "mre4.csv") == first);

  const std::string cfg = write_file(dir / "sweep.json", R"({"n": 96, "k": 8, "trials": 2, "methods": ["grp", "lanczos"],
    "s_grid": [16, 32], "lanczos_s_grid": [12], "alphas": [0.5, 2.0], "cs": [0.0, 1.0]})");
  for (const char* sub : {"mre", "alpha", "edr"}) {
    const fs::path out = dir / (std::string(sub) + ".csv");
    CHECK(run(std::string("bench ") + sub + " --config " + cfg + " --out " + out.string()).code == 0);
    CHECK(fs::exists(out));
    CHECK(fs::exists(out.string() + ".json"));
  }

  CHECK(run("bench mre --config " + (dir / "nope.json").string() + " --out " + (dir / "x.csv").string()).code == 2);
  CHECK(run("bench mre --n 64").code == 2);
  CHECK(run("bench").code == 2);
  const std::string badcfg = write_file(dir / "bad.json", R"({"size": 3})");
  CHECK(run("bench mre --config " + badcfg + " --out " + (dir / "y.csv").string()).code == 2);
  CHECK_FALSE(fs::exists(dir / "x.csv"));
  CHECK_FALSE(fs::exists(dir / "y.csv"));

  // Only the requested output and its sidecar are written.
  const fs::path clean = scratch("bench-clean");
  const fs::path target = clean / "only.csv";
  CHECK(run("bench mre --n 64 --k 8 --trials 1 --out " + target.string()).code == 0);
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(clean)) ++entries;
  CHECK(entries == 2);
}
