#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string g_bin = "./ecdg";

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CmdResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string out = "cli_stdout.tmp", err = "cli_stderr.tmp";
  const std::string cmd = env + " \"" + g_bin + "\" " + args + " >" + out + " 2>" + err;
  const int rc = std::system(cmd.c_str());
  CmdResult r;
  if (rc >= 0 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(out);
  r.err = slurp(err);
  std::remove(out.c_str());
  std::remove(err.c_str());
  return r;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("exit codes: help 0, flag misuse 2, runtime failure 1") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("converge --help").code == 0);
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("converge --definitely-not-a-flag").code == 2);
  CHECK(run_cli("frobnicate").code == 2);

  const CmdResult bad = run_cli("converge --example 9.9 --N 8,16");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("unknown scenario") != std::string::npos);

  CHECK(run_cli("run --example 4.1 --N 10,20").code == 1);
  CHECK(run_cli("converge --example 4.1 --flux nonsense --N 8,16").code == 1);
}

TEST_CASE("list prints the catalogs") {
  const CmdResult r = run_cli("list");
  CHECK(r.code == 0);
  CHECK(r.out.find("benchmarks:") != std::string::npos);
  CHECK(r.out.find("4.1") != std::string::npos);
  CHECK(r.out.find("4.12") != std::string::npos);
  CHECK(r.out.find("fluxes: ec double upwind lf central alt") != std::string::npos);
  CHECK(r.out.find("elastodynamics") != std::string::npos);
}

TEST_CASE("converge emits a deterministic CSV table") {
  const std::string args =
      "converge --example 4.1 --flux ec --k 1 --N 8,16 --perturb 0.1 --mesh-seed 7";
  const CmdResult a = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out.rfind("N,error_u,order_u,error_phi,order_phi,error_combined,order_combined\n", 0) ==
        0);
  CHECK(count_lines(a.out) == 3);
  CHECK(a.out.find("\n8,") != std::string::npos);
  CHECK(a.out.find("\n16,") != std::string::npos);

  const CmdResult b = run_cli(args);
  CHECK(a.out == b.out);

  // worker cap must not change the numbers
  const CmdResult single = run_cli(args, "ECDG_THREADS=1");
  CHECK(single.code == 0);
  CHECK(single.out == a.out);

  // --out redirects the table into a file
  const CmdResult f = run_cli(args + " --out cli_table.tmp");
  CHECK(f.code == 0);
  CHECK(f.out.empty());
  CHECK(slurp("cli_table.tmp") == a.out);
  std::remove("cli_table.tmp");
}

TEST_CASE("run reports errors and energy for one solve") {
  const CmdResult r =
      run_cli("run --example 4.3 --flux alt --k 2 --N 16 --ti lw4 --cfl 0.1");
  CHECK(r.code == 0);
  CHECK(r.out.find("benchmark 4.3") != std::string::npos);
  CHECK(r.out.find("  p  ") != std::string::npos);
  CHECK(r.out.find("  u  ") != std::string::npos);
  CHECK(r.out.find("combined") != std::string::npos);
  CHECK(r.out.find("relative energy change") != std::string::npos);
}

TEST_CASE("energy emits the t,E_h series and a drift summary") {
  const CmdResult r =
      run_cli("energy --example 4.3 --flux ec --ti lw4 --cfl 0.1 --tfinal 0.5 --N 16");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,E_h\n", 0) == 0);
  CHECK(r.err.find("energy_drift") != std::string::npos);
  CHECK(r.err.find("bilinear_drift") != std::string::npos);

  // the conserving flux under the conserving integrator holds E_h flat
  std::istringstream lines(r.out);
  std::string line, last;
  std::getline(lines, line);  // header
  double e_first = 0.0, e_last = 0.0;
  bool first = true;
  while (std::getline(lines, line)) {
    const double e = std::stod(line.substr(line.find(',') + 1));
    if (first) {
      e_first = e;
      first = false;
    }
    e_last = e;
  }
  CHECK_FALSE(first);
  CHECK(std::abs(e_last - e_first) <= 1e-9 * e_first);
}

TEST_CASE("longtime prints metrics and writes optional series") {
  const CmdResult r = run_cli(
      "longtime --example 4.4 --flux ec --ti lw4 --k 2 --N 10 --cfl 0.1 --tfinal 0.5 "
      "--energy-out cli_e.tmp --cut-out cli_c.tmp");
  CHECK(r.code == 0);
  for (const char* key :
       {"amplitude_ratio", "phase_shift", "energy_drift", "bilinear_drift", "aborted 0"})
    CHECK(r.out.find(key) != std::string::npos);
  CHECK(slurp("cli_e.tmp").rfind("t,E_h\n", 0) == 0);
  CHECK(slurp("cli_c.tmp").rfind("x,u_h,u_exact\n", 0) == 0);
  std::remove("cli_e.tmp");
  std::remove("cli_c.tmp");
}

TEST_CASE("config file mirrors flags, flags override") {
  {
    std::ofstream cfg("cli_test.cfg");
    cfg << "# comment line\n"
        << "example=4.1\n"
        << "flux=central\n"
        << "k=1\n"
        << "N=8,16\n"
        << "perturb=0.1\n"
        << "mesh-seed=3\n";
  }
  const CmdResult via_cfg = run_cli("converge --config cli_test.cfg");
  const CmdResult via_flags =
      run_cli("converge --example 4.1 --flux central --k 1 --N 8,16 --perturb 0.1 --mesh-seed 3");
  CHECK(via_cfg.code == 0);
  CHECK(via_cfg.out == via_flags.out);

  // explicit flags beat file values
  const CmdResult override_flux = run_cli("converge --config cli_test.cfg --flux upwind");
  CHECK(override_flux.code == 0);
  CHECK(override_flux.out != via_cfg.out);
  CHECK(override_flux.out ==
        run_cli("converge --example 4.1 --flux upwind --k 1 --N 8,16 --perturb 0.1 --mesh-seed 3")
            .out);
  std::remove("cli_test.cfg");

  // unknown keys and missing files are diagnosed
  {
    std::ofstream cfg("cli_bad.cfg");
    cfg << "dt=0.5\n";  // run-only flag, not valid for converge
  }
  const CmdResult bad = run_cli("converge --config cli_bad.cfg");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("not a flag") != std::string::npos);
  std::remove("cli_bad.cfg");
  CHECK(run_cli("converge --config does_not_exist.cfg").code == 1);
}

int main(int argc, char** argv) {
  int shift = 0;
  if (argc > 1 && argv[1][0] != '-') {
    g_bin = argv[1];
    shift = 1;
  }
  doctest::Context ctx;
  ctx.applyCommandLine(argc - shift, argv + shift);
  return ctx.run();
}
