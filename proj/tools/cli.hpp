#pragma once
// Command-line front end. Exit codes: 0 pass, 1 verification failure,
// 2 usage or parameter error, 3 numerical failure.
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace homshift::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kNumerical = 3 };

struct RunConfig {
  std::string command;
  std::string suite;
  std::string series = "principal";
  double lambda = 0.3;
  double mu = 0.0;     // real mu (complementary)
  double mu_im = 0.5;  // Im mu (principal); Re mu is (1 - lambda)/2
  int N = 64;
  int padding = 16;
  std::string path = "L:0.1";
  std::string op;  // empty: the series' own shift
  double scale = 1.0;
  double r = 1.0;
  double r_im = 0.0;
  double tolerance = 0.0;  // 0: the suite's calibrated default
  std::string format = "csv";
  std::uint64_t seed = 0;
  int samples = 100;
  int n0 = 0;
  int n1 = 8;
  std::string branch = "T2";
  std::string weights_file;
  std::string lambdas;
  std::string mus;
  std::string suites = "unitarity,homogeneity,infinitesimal";
  int threads = 0;  // 0: hardware concurrency
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homshift::cli
