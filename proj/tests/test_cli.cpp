#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "xcmm/cli.hpp"

namespace fs = std::filesystem;

namespace {

int run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"xcmm"};
  argv.insert(argv.end(), args);
  return xcmm::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Data lines only: comments reference the manifest, which carries a timestamp.
std::string data_lines(const std::string& csv) {
  std::istringstream is(csv);
  std::ostringstream os;
  std::string line;
  while (std::getline(is, line))
    if (line.rfind("#", 0) != 0) os << line << "\n";
  return os.str();
}

struct TempDir {
  fs::path path;
  TempDir(const char* tag) : path(fs::temp_directory_path() / tag) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}) == 1);
  CHECK(run({"no-such-command"}) == 1);
  CHECK(run({"spectrum", "--format", "pdf"}) == 1);
  CHECK(run({"fig"}) == 1);
}

TEST_CASE("bad inputs exit with 2") {
  TempDir tmp("xcmm_cli_bad");
  CHECK(run({"steady", "--config", "does_not_exist.json"}) == 2);

  const std::string cfg = tmp.str("bad.json");
  std::ofstream(cfg) << R"({"damping": {"kappa_x": -2.0}})";
  CHECK(run({"steady", "--config", cfg.c_str()}) == 2);
  CHECK(run({"fig", "99", "--out", tmp.str("o").c_str()}) == 2);
}

TEST_CASE("steady writes parseable JSON") {
  TempDir tmp("xcmm_cli_steady");
  const std::string out = tmp.str("steady.json");
  CHECK(run({"steady", "--out", out.c_str()}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"m_s\"") != std::string::npos);
  CHECK(text.find("\"g_eff\"") != std::string::npos);
  CHECK(text.find("\"abs_omega_b_units\"") != std::string::npos);
}

TEST_CASE("spectrum emits the documented columns") {
  TempDir tmp("xcmm_cli_spec");
  CHECK(run({"spectrum", "--out", tmp.path.c_str(), "--points", "11",
             "--gmb-override", "0.32"}) == 0);
  const std::string csv = slurp(tmp.path / "spectrum.csv");
  CHECK(csv.find("sigma_over_omega_b,sigma_rad_s,re_eps_t,im_eps_t,re_t_p,im_t_p,"
                 "intensity\n") != std::string::npos);
  CHECK(fs::exists(tmp.path / "spectrum.manifest.json"));
  // 11 data rows + header.
  CHECK(std::count(csv.begin(), csv.end(), '\n') >= 12);
}

TEST_CASE("delay emits the documented columns") {
  TempDir tmp("xcmm_cli_delay");
  CHECK(run({"delay", "--out", tmp.path.c_str(), "--points", "5",
             "--gmb-override", "0.32", "--xi", "1", "--phi", "0"}) == 0);
  const std::string csv = slurp(tmp.path / "delay.csv");
  CHECK(csv.find("sigma_over_omega_b,") != std::string::npos);
  CHECK(csv.find(",tau_g_seconds,singular_flag\n") != std::string::npos);

  // Finite-difference delay is also available.
  CHECK(run({"delay", "--out", tmp.path.c_str(), "--points", "5",
             "--gmb-override", "0.32", "--method", "fd"}) == 0);
  CHECK(slurp(tmp.path / "delay.csv").find("method: fd") != std::string::npos);
}

TEST_CASE("xi = 0 spectra are phase invariant byte for byte") {
  TempDir a("xcmm_cli_phi_a"), b("xcmm_cli_phi_b");
  CHECK(run({"spectrum", "--out", a.path.c_str(), "--points", "101",
             "--xi", "0", "--phi", "0"}) == 0);
  CHECK(run({"spectrum", "--out", b.path.c_str(), "--points", "101",
             "--xi", "0", "--phi", "2.71"}) == 0);
  CHECK(data_lines(slurp(a.path / "spectrum.csv")) ==
        data_lines(slurp(b.path / "spectrum.csv")));
}

TEST_CASE("json output format") {
  TempDir tmp("xcmm_cli_json");
  CHECK(run({"spectrum", "--out", tmp.path.c_str(), "--points", "7",
             "--format", "json"}) == 0);
  const std::string text = slurp(tmp.path / "spectrum.json");
  CHECK(text.find("\"sigma_over_omega_b\"") != std::string::npos);
  CHECK(text.find("\"manifest\"") != std::string::npos);
}

TEST_CASE("sweep2d long and matrix layouts") {
  TempDir tmp("xcmm_cli_sweep");
  CHECK(run({"sweep2d", "--out", tmp.path.c_str(), "--axis1", "phi:0:6.28:9",
             "--axis2", "xi:0:2:5", "--observable", "absorption"}) == 0);
  const std::string lng = slurp(tmp.path / "sweep2d.csv");
  CHECK(lng.find("phi,xi,absorption,ok\n") != std::string::npos);

  CHECK(run({"sweep2d", "--out", tmp.path.c_str(), "--axis1", "sigma:-1:1:11",
             "--axis2", "xi:0:2:3", "--layout", "matrix", "--svg"}) == 0);
  const std::string mat = slurp(tmp.path / "sweep2d.csv");
  CHECK(mat.find("sigma_rad_s,xi=0,xi=1,xi=2\n") != std::string::npos);
  CHECK(fs::exists(tmp.path / "sweep2d.svg"));

  CHECK(run({"sweep2d", "--out", tmp.path.c_str(), "--axis1", "bogus:0:1:5",
             "--axis2", "xi:0:2:3"}) == 2);
}

TEST_CASE("verify exits 0 on pass") {
  CHECK(run({"verify", "--draws", "25", "--seed", "3",
             "--time-domain-draws", "2"}) == 0);
}

TEST_CASE("figure recipes produce data and plots") {
  TempDir tmp("xcmm_cli_fig");
  for (const char* id : {"2b", "3b", "8a", "9"}) {
    CHECK(run({"fig", id, "--out", tmp.path.c_str(), "--svg"}) == 0);
    CHECK(fs::exists(tmp.path / (std::string("fig") + id + ".csv")));
    CHECK(fs::exists(tmp.path / (std::string("fig") + id + ".svg")));
    CHECK(fs::exists(tmp.path / (std::string("fig") + id + ".manifest.json")));
  }
  // Contour figures emit long-format tables.
  CHECK(run({"fig", "6a", "--out", tmp.path.c_str()}) == 0);
  CHECK(slurp(tmp.path / "fig6a.csv").find("phi,xi,absorption\n") != std::string::npos);
}

TEST_CASE("figure data is reproducible byte for byte") {
  TempDir a("xcmm_cli_rep_a"), b("xcmm_cli_rep_b");
  CHECK(run({"fig", "2b", "--out", a.path.c_str()}) == 0);
  CHECK(run({"fig", "2b", "--out", b.path.c_str()}) == 0);
  CHECK(slurp(a.path / "fig2b.csv") == slurp(b.path / "fig2b.csv"));
}
