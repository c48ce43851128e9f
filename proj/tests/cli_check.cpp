// End-to-end checks of the command line tool: spawns the binary given as
// argv[1] against small configs in a temp directory and inspects exit codes
// and artifacts. Grid output is cross-checked against the library.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "specmat/arrangement.hpp"
#include "specmat/theorems.hpp"

namespace fs = std::filesystem;
using namespace specmat;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::printf("%s %s\n", ok ? "ok  " : "FAIL", what.c_str());
  if (!ok) ++failures;
}

std::string g_bin;
fs::path g_dir;

int run(const std::string& args) {
  std::string cmd = "'" + g_bin + "' " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <specmat-binary>\n", argv[0]);
    return 2;
  }
  g_bin = argv[1];
  char tmpl[] = "/tmp/specmat-cli-XXXXXX";
  char* tmp = mkdtemp(tmpl);
  if (!tmp) {
    std::perror("mkdtemp");
    return 2;
  }
  g_dir = tmp;

  fs::path cfg = g_dir / "pair.cfg";
  write(cfg, "# shift against its adjoint\nD1 = shift\nD2 = dual(shift)\n");
  std::string base = "--config '" + cfg.string() + "'";

  // intersect: success, artifact, and byte-for-byte determinism
  fs::path o1 = g_dir / "o1", o2 = g_dir / "o2";
  check(run(base + " --command intersect --kind left-essential --out '" +
            o1.string() + "'") == 0,
        "intersect exits 0");
  check(run(base + " --command intersect --kind left-essential --out '" +
            o2.string() + "'") == 0,
        "intersect exits 0 again");
  std::string rep1 = slurp(o1 / "report.json");
  check(!rep1.empty() && rep1.back() == '\n', "report.json written");
  check(rep1 == slurp(o2 / "report.json"), "report.json deterministic");
  check(rep1.find("\"kind\": \"left-essential\"") != std::string::npos,
        "report names the kind");

  // spectrum applies to the first entry only
  fs::path o3 = g_dir / "o3";
  check(run(base + " --command spectrum --kind spectrum --out '" + o3.string() +
            "'") == 0,
        "spectrum exits 0");
  check(slurp(o3 / "report.json").find("\"model\": \"shift\"") !=
            std::string::npos,
        "spectrum reports the model");

  // check-equality and hypothesis
  fs::path o4 = g_dir / "o4";
  check(run(base + " --command check-equality --kind left-essential --out '" +
            o4.string() + "'") == 0,
        "check-equality exits 0");
  check(slurp(o4 / "report.json").find("\"holds\": true") != std::string::npos,
        "equality holds for the pair");
  fs::path o5 = g_dir / "o5";
  check(run(base + " --command hypothesis --kind left-essential --out '" +
            o5.string() + "'") == 0,
        "hypothesis exits 0");
  check(slurp(o5 / "report.json").find("\"region\"") != std::string::npos,
        "hypothesis reports a region");

  // complete and verify at the origin
  fs::path o6 = g_dir / "o6";
  check(run(base + " --command complete --kind left-essential --lambda 0 --out '" +
            o6.string() + "'") == 0,
        "complete exits 0");
  check(slurp(o6 / "report.json").find("\"case\"") != std::string::npos,
        "plan carries its case tag");
  fs::path o7 = g_dir / "o7";
  check(run(base + " --command verify --kind left-essential --lambda 0 --out '" +
            o7.string() + "'") == 0,
        "verify exits 0");
  check(slurp(o7 / "report.json").find("\"verification\"") != std::string::npos,
        "verify reports evidence");

  // plot: grid must match the library sample for sample
  fs::path o8 = g_dir / "o8";
  check(run(base + " --command plot --kind left-essential "
                   "--window -2,2,-2,2 --resolution 5 --out '" +
            o8.string() + "'") == 0,
        "plot exits 0");
  {
    DiagonalTuple t({Model::shift(), Model::backshift()});
    RegionExpr result =
        simplify(intersection_spectrum(t, SpectrumKind::LE).result);
    std::string expect;
    for (int r = 0; r < 5; ++r) {
      Rational im = Rational(2) - Rational(r);  // top to bottom
      for (int c = 0; c < 5; ++c) {
        if (c) expect += ',';
        CQ z{Rational(-2) + Rational(c), im};
        expect += contains(result, z) ? '1' : '0';
      }
      expect += '\n';
    }
    check(slurp(o8 / "grid.csv") == expect, "grid.csv matches the library");
    std::string svg = slurp(o8 / "plot.svg");
    check(svg.rfind("<svg", 0) == 0 && svg.find("#1f3b8c") != std::string::npos,
          "plot.svg has member rects");
  }

  // nested --out directories are created
  fs::path o9 = g_dir / "a" / "b";
  check(run(base + " --command intersect --kind left-essential --out '" +
            o9.string() + "'") == 0,
        "nested out dir created");

  // flag and config errors exit 2
  check(run(base + " --command intersect --kind bogus") == 2, "unknown kind is 2");
  check(run(base + " --command intersect") == 2, "missing kind is 2");
  check(run(base + " --command frobnicate --kind essential") == 2,
        "unknown command is 2");
  check(run(base + " --command complete --kind left-essential") == 2,
        "complete without lambda is 2");
  check(run(base + " --command plot --kind left-essential --window 1,2,3") == 2,
        "short window is 2");
  check(run(base + " --command plot --kind left-essential --resolution 1") == 2,
        "resolution 1 is 2");
  fs::path bad = g_dir / "bad.cfg";
  write(bad, "D1 = shift\nD2 = wat\n");
  check(run("--config '" + bad.string() +
            "' --command intersect --kind left-essential") == 2,
        "bad model text is 2");

  // engine refusals exit 3
  check(run(base + " --command intersect --kind spectrum") == 3,
        "no formula for the full spectrum is 3");
  check(run(base + " --command intersect --kind left-essential "
                   "--variant finiteness-match") == 3,
        "refused variant is 3");
  fs::path blocked = g_dir / "blocked.cfg";
  write(blocked, "D1 = dsum(shift, zero(inf))\nD2 = identity(inf)\n");
  check(run("--config '" + blocked.string() +
            "' --command complete --kind left-essential --lambda 0") == 3,
        "point inside the result is 3");

  // I/O failures exit 4
  check(run("--config '" + (g_dir / "nope.cfg").string() +
            "' --command intersect --kind left-essential") == 4,
        "missing config is 4");

  std::error_code ec;
  fs::remove_all(g_dir, ec);
  if (failures) {
    std::printf("%d cli check(s) failed\n", failures);
    return 1;
  }
  std::puts("cli checks ok");
  return 0;
}
