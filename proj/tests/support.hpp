#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <Eigen/Core>

#include "fracprop/rng.hpp"
#include "fracprop/spectral_core.hpp"

namespace testing {

inline constexpr double kPi = 3.14159265358979323846;

/// Random samples with independent uniform real and imaginary parts in [-1, 1].
inline fracprop::SampledSignal random_signal(const fracprop::SpatialGrid& grid, std::uint64_t seed) {
  fracprop::CounterRng rng(seed, 99);
  fracprop::SampledSignal f(grid);
  for (Eigen::Index j = 0; j < f.values.size(); ++j) {
    const double re = rng.uniform(-1.0, 1.0);
    f.values[j] = {re, rng.uniform(-1.0, 1.0)};
  }
  return f;
}

/// Plain O(n^2) evaluation of sum_j f_j exp(-i xi x_j) dx / sqrt(2 pi).
inline std::complex<double> direct_transform(const fracprop::SampledSignal& f, double xi) {
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < f.grid.size(); ++j) {
    acc += f.values[static_cast<Eigen::Index>(j)] * std::polar(1.0, -xi * f.grid.x(j));
  }
  return acc * f.grid.dx() / std::sqrt(2.0 * kPi);
}

inline double sup_diff(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Fresh scratch directory for one test binary.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const std::filesystem::path dir = std::filesystem::path(FRACPROP_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct RunResult {
  int code = -1;
  std::string out;
};

/// Runs the command-line tool; stdout is captured, stderr goes to `stderr_path`.
inline RunResult run_tool(const std::string& args, const std::filesystem::path& stderr_path) {
  const std::string cmd = std::string("\"") + FRACPROP_CLI_PATH + "\" " + args + " 2>\"" + stderr_path.string() + "\"";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace testing
