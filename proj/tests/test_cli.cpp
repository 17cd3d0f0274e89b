#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

fs::path scratch_dir() {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() /
                       ("zenoclone_cli_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter++));
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path log = scratch_dir() / "log.txt";
  const std::string cmd =
      std::string(ZENOCLONE_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::ostringstream os;
  os << in.rdbuf();
  r.output = os.str();
  return r;
}

fs::path write_config(const std::string& body) {
  const fs::path path = scratch_dir() / "config.json";
  std::ofstream(path) << body;
  return path;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Strips lines whose content legitimately differs between reruns.
std::string without_timestamps(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("# timestamp", 0) != 0) out << line << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("cli usage errors") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("simulate").exit_code == 1);           // --config is required
  CHECK(run_cli("transmogrify").exit_code == 1);
}

TEST_CASE("cli simulate writes a csv with the config embedded") {
  const fs::path cfg = write_config(R"({"time_samples": 5})");
  const fs::path out = scratch_dir();
  const RunResult r =
      run_cli("simulate --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("wrote") != std::string::npos);

  const std::string csv = read_file(out / "simulate.csv");
  CHECK(csv.rfind("# config {", 0) == 0);
  CHECK(csv.find("t,g_t,fidelity_w,pop_ground,pop_fiber\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 1 + 5);

  // The embedded config reruns to the identical table.
  const fs::path out2 = scratch_dir();
  const RunResult rerun = run_cli("simulate --config " + (out / "simulate.csv").string() +
                                  " --out " + out2.string());
  CHECK(rerun.exit_code == 0);
  CHECK(without_timestamps(read_file(out2 / "simulate.csv")) == without_timestamps(csv));
}

TEST_CASE("cli simulate json and plot script") {
  const fs::path cfg = write_config(R"({"time_samples": 3, "mode": "full-closed"})");
  const fs::path out = scratch_dir();
  CHECK(run_cli("simulate --config " + cfg.string() + " --out " + out.string() +
                " --format json")
            .exit_code == 0);
  CHECK(read_file(out / "simulate.json").find("\"columns\"") != std::string::npos);

  CHECK(run_cli("simulate --config " + cfg.string() + " --out " + out.string() +
                " --plot-script")
            .exit_code == 0);
  CHECK(read_file(out / "simulate.gnuplot").find("plot") != std::string::npos);
}

TEST_CASE("cli config failures exit with code 1 and leave nothing behind") {
  const fs::path out = scratch_dir();

  const fs::path broken = write_config("{nope");
  RunResult r = run_cli("simulate --config " + broken.string() + " --out " + out.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("config error") != std::string::npos);

  const fs::path unknown = write_config(R"({"omega_fact": 0.1})");
  r = run_cli("simulate --config " + unknown.string() + " --out " + out.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("omega_fact") != std::string::npos);

  CHECK_FALSE(fs::exists(out / "simulate.csv"));
}

TEST_CASE("cli io failures exit with code 3") {
  const fs::path blocker = scratch_dir() / "file";
  std::ofstream(blocker) << "plain file\n";
  const fs::path cfg = write_config(R"({"time_samples": 3})");
  const RunResult r = run_cli("simulate --config " + cfg.string() + " --out " +
                              (blocker / "nested").string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("io error") != std::string::npos);

  CHECK(run_cli("simulate --config " + (blocker / "missing.json").string()).exit_code == 3);
}

TEST_CASE("cli sweep") {
  const fs::path cfg = write_config(R"({
    "sweep_path": "omega_factor", "sweep_from": 0.01, "sweep_to": 0.05,
    "sweep_count": 3, "mode": "full-closed"
  })");
  const fs::path out = scratch_dir();
  const RunResult r = run_cli("sweep --config " + cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  const std::string csv = read_file(out / "sweep.csv");
  CHECK(csv.find("scenario,mode,observable,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 1 + 3);

  const fs::path plain = write_config(R"({"time_samples": 3})");
  CHECK(run_cli("sweep --config " + plain.string() + " --out " + out.string()).exit_code ==
        1);
}

TEST_CASE("cli reproduce rejects unknown ids") {
  const RunResult r = run_cli("reproduce fig9");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("fig2a") != std::string::npos);
}

TEST_CASE("cli reproduce emits deterministic tables") {
  const fs::path out1 = scratch_dir();
  const fs::path out2 = scratch_dir();
  const RunResult first = run_cli("reproduce fig4 --grid 3 --out " + out1.string());
  CHECK(first.exit_code == 0);
  CHECK(run_cli("reproduce fig4 --grid 3 --out " + out2.string()).exit_code == 0);
  CHECK(without_timestamps(read_file(out1 / "fig4.csv")) ==
        without_timestamps(read_file(out2 / "fig4.csv")));
  CHECK(first.output.find("fig4") != std::string::npos);
}

TEST_CASE("cli validate") {
  const RunResult all = run_cli("validate");
  CHECK(all.exit_code == 0);
  CHECK(all.output.find("dark-state-annihilation") != std::string::npos);

  const RunResult one = run_cli("validate --only dynamics");
  CHECK(one.exit_code == 0);
  CHECK(one.output.find("dynamics/") != std::string::npos);
  CHECK(one.output.find("model/") == std::string::npos);

  CHECK(run_cli("validate --only nosuch").exit_code == 1);

  const RunResult injected = run_cli("validate --inject-dark-state-sign");
  CHECK(injected.exit_code == 2);
  CHECK(injected.output.find("dark-state-annihilation") != std::string::npos);
}
