// Regenerates the bundled fixture inputs under fixtures/ (or a directory
// given as the first argument). Fixtures let every CLI subcommand run
// offline; they are committed, so rerunning this tool must reproduce them
// byte for byte.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "pwmotion/grid.hpp"
#include "pwmotion/io.hpp"
#include "pwmotion/motion_group.hpp"
#include "pwmotion/profiles.hpp"

using namespace pwmotion;

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);

  // Bi-invariant bump: smooth radial profile, no angle dependence. The
  // operator Fourier matrix of such a function is diagonalized to a single
  // entry, which makes it the reference input for mn-transform and mn-decay.
  {
    GridSpec g{2, 32, 3.0};
    MotionGroupFunction f(g, 8, 2.0);
    f.sample([](double x, double y, double) {
      return cplx(profiles::cos8_bump(x * x + y * y, 4.0), 0.0);
    });
    save_motion_function(f, dir + "/mn_biinv");
  }

  // Two angular modes (0 and +/-1) on a wide box: the extra room absorbs
  // dispersive spreading, so schrodinger-mn can evolve it at moderate t0.
  {
    GridSpec g{2, 64, 12.0};
    MotionGroupFunction f(g, 4, 2.0);
    f.sample([](double x, double y, double beta) {
      const double bump = profiles::cos8_bump(x * x + y * y, 4.0);
      return cplx(bump * (1.0 + std::cos(beta)), 0.0);
    });
    save_motion_function(f, dir + "/mn_two_mode");
  }

  // Tabulated envelope: sqrt sampled on a log grid covering the default
  // classifier range, for the table: spec branch.
  {
    std::ofstream out(dir + "/theta_table.csv", std::ios::binary);
    out << "# t, theta(t): tabulated square-root envelope\n";
    out << "0,0\n";
    const int rows = 64;
    for (int i = 0; i < rows; ++i) {
      // log-spaced from 1 to 2^21
      const double t = std::exp2(21.0 * i / (rows - 1));
      out << format_double(t) << ',' << format_double(std::sqrt(t)) << '\n';
    }
  }

  // Example config file for the --config flag.
  {
    std::ofstream out(dir + "/classify_config.json", std::ios::binary);
    out << "{\n"
           "  \"command\": \"classify\",\n"
           "  \"theta\": \"sqrt\",\n"
           "  \"dim\": 1\n"
           "}\n";
  }

  std::printf("fixtures written to %s\n", dir.c_str());
  return 0;
}
