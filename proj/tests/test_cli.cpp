#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace std::string_literals;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("mjpslice_cli_" + std::to_string(std::rand()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

int run_cli(const std::string& args) {
  const std::string cmd = MJPSLICE_CLI_PATH " "s + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& file) {
  std::ifstream in(file);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_config(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

const char* kToyConfig = R"({
  "model": "toy3",
  "horizon": 30.0,
  "K": 2,
  "iterations": 40,
  "burn_in": 10,
  "p": 0.2,
  "q_z": 0.5,
  "omega_scale": 2.0,
  "seed": 5,
  "rates": {"alpha": 2.0, "delta": 0.5}
})";

}  // namespace

TEST_CASE("simulate then infer round trip with byte-identical reruns") {
  TempDir tmp;
  write_config(tmp.file("config.json"), kToyConfig);

  const std::string sim_dir = tmp.file("sim");
  REQUIRE(run_cli("simulate --config " + tmp.file("config.json") + " --out " + sim_dir) == 0);
  CHECK(fs::exists(sim_dir + "/paths.jsonl"));
  CHECK(fs::exists(sim_dir + "/observations.jsonl"));

  // identical seed, identical bytes
  const std::string sim_dir2 = tmp.file("sim2");
  REQUIRE(run_cli("simulate --config " + tmp.file("config.json") + " --out " + sim_dir2) == 0);
  CHECK(slurp(sim_dir + "/paths.jsonl") == slurp(sim_dir2 + "/paths.jsonl"));
  CHECK(slurp(sim_dir + "/observations.jsonl") == slurp(sim_dir2 + "/observations.jsonl"));

  // a different seed changes them
  const std::string sim_dir3 = tmp.file("sim3");
  REQUIRE(run_cli("simulate --config " + tmp.file("config.json") + " --seed 6 --out " + sim_dir3) ==
          0);
  CHECK(slurp(sim_dir + "/paths.jsonl") != slurp(sim_dir3 + "/paths.jsonl"));

  const std::string infer_dir = tmp.file("infer");
  const std::string data_override =
      " --override data.observations=" + sim_dir + "/observations.jsonl";
  REQUIRE(run_cli("infer --config " + tmp.file("config.json") + data_override + " --out " +
                  infer_dir) == 0);
  CHECK(fs::exists(infer_dir + "/trace.csv"));
  CHECK(fs::exists(infer_dir + "/memberships.csv"));
  CHECK(fs::exists(infer_dir + "/timing.csv"));
  CHECK(fs::exists(infer_dir + "/diagnostics.json"));
  CHECK(fs::exists(infer_dir + "/manifest.json"));

  const std::string infer_dir2 = tmp.file("infer2");
  REQUIRE(run_cli("infer --config " + tmp.file("config.json") + data_override + " --out " +
                  infer_dir2) == 0);
  CHECK(slurp(infer_dir + "/trace.csv") == slurp(infer_dir2 + "/trace.csv"));
  CHECK(slurp(infer_dir + "/memberships.csv") == slurp(infer_dir2 + "/memberships.csv"));
}

TEST_CASE("zero iterations trace holds only the initialized state") {
  TempDir tmp;
  write_config(tmp.file("config.json"), kToyConfig);
  const std::string sim_dir = tmp.file("sim");
  REQUIRE(run_cli("simulate --config " + tmp.file("config.json") + " --out " + sim_dir) == 0);

  const std::string infer_dir = tmp.file("infer0");
  REQUIRE(run_cli("infer --config " + tmp.file("config.json") + " --override iterations=0" +
                  " --override burn_in=0 --override data.observations=" + sim_dir +
                  "/observations.jsonl --out " + infer_dir) == 0);
  std::ifstream in(infer_dir + "/trace.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "iter,chain,name,value");
  std::size_t rows = 0;
  std::size_t iter0 = 0;
  while (std::getline(in, line)) {
    ++rows;
    iter0 += line.rfind("0,0,", 0) == 0;
  }
  CHECK(rows == 2);  // alpha and delta at iteration 0 only
  CHECK(iter0 == 2);
}

TEST_CASE("config errors exit with code 2") {
  TempDir tmp;
  write_config(tmp.file("bad.json"), R"({"model": "toy3", "p": 0.7, "q_z": 0.5})");
  CHECK(run_cli("infer --config " + tmp.file("bad.json") + " --out " + tmp.file("x")) == 2);

  write_config(tmp.file("unknown.json"), R"({"model": "toy3", "wat": 1})");
  CHECK(run_cli("simulate --config " + tmp.file("unknown.json") + " --out " + tmp.file("y")) == 2);

  CHECK(run_cli("infer --config " + tmp.file("missing.json") + " --out " + tmp.file("z")) == 2);
}

TEST_CASE("missing data files are config errors; inference failures are runtime errors") {
  TempDir tmp;
  write_config(tmp.file("config.json"), kToyConfig);
  CHECK(run_cli("infer --config " + tmp.file("config.json") +
                " --override data.observations=/nonexistent.jsonl --out " + tmp.file("x")) == 2);

  // contradictory order constraints parse fine but make every draw impossible
  const std::string sim_dir = tmp.file("sim");
  REQUIRE(run_cli("simulate --config " + tmp.file("config.json") + " --out " + sim_dir) == 0);
  write_config(tmp.file("contradictory.json"), R"({
    "model": "toy3", "horizon": 30.0, "K": 2, "iterations": 5, "q_z": 0.5, "seed": 5,
    "constraints": [{"lhs": "alpha", "rhs": "delta"}, {"lhs": "delta", "rhs": "alpha"}],
    "data": {"observations": ")" + sim_dir + R"(/observations.jsonl"}
  })");
  CHECK(run_cli("infer --config " + tmp.file("contradictory.json") + " --out " + tmp.file("y")) ==
        1);
}

TEST_CASE("horizon zero produces a single-state path and empty observations") {
  TempDir tmp;
  write_config(tmp.file("config.json"), kToyConfig);
  const std::string sim_dir = tmp.file("sim0");
  REQUIRE(run_cli("simulate --config " + tmp.file("config.json") +
                  " --override horizon=0.0 --override K=1 --out " + sim_dir) == 0);
  const std::string paths = slurp(sim_dir + "/paths.jsonl");
  CHECK(paths.find("\"times\":[0.0]") != std::string::npos);
  CHECK(slurp(sim_dir + "/observations.jsonl").empty());
}

TEST_CASE("tandem observation files carry only entry and departure labels") {
  TempDir tmp;
  write_config(tmp.file("tandem.json"), R"({
    "model": "tandem",
    "model_params": {"lambda": 1.0, "mu2": 2.0},
    "horizon": 25.0,
    "K": 3,
    "q_z": 0.5,
    "seed": 8,
    "rates": {"mu1": 1.5}
  })");
  const std::string sim_dir = tmp.file("sim");
  REQUIRE(run_cli("simulate --config " + tmp.file("tandem.json") + " --out " + sim_dir) == 0);
  std::ifstream in(sim_dir + "/observations.jsonl");
  std::string line;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    CHECK((line.find("\"tag\":\"entry\"") != std::string::npos ||
           line.find("\"tag\":\"departure\"") != std::string::npos));
    ++seen;
  }
  CHECK(seen > 0);
}

TEST_CASE("cluster with one class assigns everything to it") {
  TempDir tmp;
  write_config(tmp.file("config.json"), kToyConfig);
  const std::string sim_dir = tmp.file("sim");
  REQUIRE(run_cli("simulate --config " + tmp.file("config.json") + " --out " + sim_dir) == 0);
  write_config(tmp.file("one.json"), R"({
    "model": "toy3", "horizon": 30.0, "K": 2, "L": 1, "iterations": 8, "burn_in": 2,
    "q_z": 0.5, "seed": 5,
    "data": {"paths": ")" + sim_dir + R"(/paths.jsonl"}
  })");
  REQUIRE(run_cli("cluster --config " + tmp.file("one.json") + " --out " + tmp.file("out")) == 0);
  std::ifstream in(tmp.file("out") + "/summary.csv");
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(row.rfind("gibbs,0,2,", 0) == 0);  // class 0 holds both processes at every sweep
  CHECK(!std::getline(in, row));           // and there is no other class
}

TEST_CASE("compare accepts an omega grid and zeroes the p=0 decrease column") {
  TempDir tmp;
  write_config(tmp.file("config.json"), R"({
    "model": "toy3", "horizon": 20.0, "iterations": 60, "burn_in": 10,
    "q_z": 0.5, "seed": 12, "rates": {"alpha": 2.0, "delta": 0.5},
    "compare": {"p_grid": [0.0], "omega_grid": [1.5, 2.0, 3.0]},
    "data": {"observations": ")" + tmp.file("sim") + R"(/observations.jsonl"}
  })");
  REQUIRE(run_cli("simulate --config " + tmp.file("config.json") + " --out " + tmp.file("sim")) ==
          0);
  REQUIRE(run_cli("compare --config " + tmp.file("config.json") + " --out " + tmp.file("cmp")) ==
          0);
  std::ifstream in(tmp.file("cmp") + "/compare.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "p,omega_scale,name,ess,ess_per_sec,mean_augment_seconds,pct_time_decrease");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(line.substr(line.rfind(',') + 1) == "0");  // p = 0 everywhere: no decrease
  }
  CHECK(rows == 6);  // 3 omega scales x 2 free rates
}

TEST_CASE("cluster on fully observed planted paths reaches high accuracy") {
  TempDir tmp;
  // three planted toy clusters, written as three simulate calls
  const double alphas[3] = {0.4, 2.0, 8.0};
  const double deltas[3] = {0.4, 2.0, 8.0};
  std::string merged;
  std::vector<int> truth;
  for (int c = 0; c < 3; ++c) {
    std::ostringstream cfg;
    cfg << R"({"model": "toy3", "horizon": 40.0, "K": 10, "seed": )" << (100 + c)
        << R"(, "rates": {"alpha": )" << alphas[c] << R"(, "delta": )" << deltas[c] << "}}";
    write_config(tmp.file("c" + std::to_string(c) + ".json"), cfg.str());
    const std::string dir = tmp.file("plant" + std::to_string(c));
    REQUIRE(run_cli("simulate --config " + tmp.file("c" + std::to_string(c) + ".json") +
                    " --out " + dir) == 0);
    // merge with re-keyed process indices
    std::ifstream in(dir + "/paths.jsonl");
    std::string line;
    while (std::getline(in, line)) {
      const auto pos = line.find("\"k\":");
      merged += line.substr(0, pos + 4) + std::to_string(truth.size()) +
                line.substr(line.find_first_of(",}", pos + 4)) + "\n";
      truth.push_back(c);
    }
  }
  {
    std::ofstream out(tmp.file("merged.jsonl"));
    out << merged;
  }
  {
    std::ofstream out(tmp.file("truth.json"));
    out << "[";
    for (std::size_t i = 0; i < truth.size(); ++i) out << (i ? "," : "") << truth[i];
    out << "]";
  }
  write_config(tmp.file("cluster.json"), R"({
    "model": "toy3", "horizon": 40.0, "K": 30, "L": 3, "iterations": 20, "burn_in": 5,
    "seed": 21,
    "cluster": {"method": "kmeans", "truth": ")" + tmp.file("truth.json") + R"("},
    "data": {"paths": ")" + tmp.file("merged.jsonl") + R"("}
  })");
  const std::string out_dir = tmp.file("clout");
  REQUIRE(run_cli("cluster --config " + tmp.file("cluster.json") + " --out " + out_dir) == 0);
  CHECK(fs::exists(out_dir + "/summary.csv"));
  const std::string summary = slurp(out_dir + "/summary.csv");
  CHECK(summary.find("kmeans") != std::string::npos);
}
