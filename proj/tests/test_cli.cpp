#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using homshift::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string write_temp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("homshift_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("weights examples") {
  auto r = run({"weights", "--series", "holo", "--lambda", "1", "--n0", "0", "--n1", "4"});
  CHECK(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "n,re,im,abs");
  for (int i = 1; i <= 5; ++i) CHECK(rows[i] == std::to_string(i - 1) + ",1,0,1");

  r = run({"weights", "--series", "holo", "--lambda", "2", "--n0", "0", "--n1", "0"});
  CHECK(lines(r.out)[1] == "0,0.7071067811865476,0,0.7071067811865476");

  r = run({"weights", "--series", "reducible", "--lambda", "1", "--r", "0.5", "--n0", "-2", "--n1", "0"});
  CHECK(lines(r.out) == std::vector<std::string>{"n,re,im,abs", "-2,1,0,1", "-1,0.5,0,0.5", "0,1,0,1"});

  r = run({"weights", "--series", "principal", "--lambda", "0.3", "--mu-im", "0.5", "--branch", "T3", "--n0", "-3",
           "--n1", "3", "--format", "json"});
  CHECK(r.code == 0);
  for (const auto& l : lines(r.out)) CHECK(std::abs(nlohmann::json::parse(l)["abs"].get<double>() - 1.0) <= 1e-12);

  CHECK(run({"weights", "--series", "holo", "--lambda", "-1"}).code == 2);
  CHECK(run({"weights", "--series", "holo", "--lambda", "2", "--n0", "-1"}).code == 2);
  CHECK(run({"weights", "--series", "complementary", "--lambda", "0.4", "--mu", "0.7"}).code == 2);
  CHECK(run({"weights", "--series", "bogus"}).code == 2);
  CHECK(run({"weights", "--series", "reducible", "--lambda", "1.5"}).code == 2);
}

TEST_CASE("verify lemmas") {
  auto r = run({"verify", "lemmas", "--samples", "100", "--seed", "42"});
  CHECK(r.code == 0);
  auto rows = lines(r.out);
  CHECK(rows.size() == 200);
  for (const auto& l : rows) {
    auto j = nlohmann::json::parse(l);
    CHECK(j["value"].get<double>() <= 1e-10);
    CHECK(j["context"]["seed"] == 42);
  }
}

TEST_CASE("verify reducible-lambda") {
  auto r = run({"verify", "reducible-lambda", "--lambda", "1.5", "--r", "1"});
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(lines(r.out).at(0));
  CHECK(std::abs(j["value"].get<double>() - 0.5) <= 1e-12);
  CHECK(j["pass"] == false);
  CHECK(run({"verify", "reducible-lambda", "--lambda", "1", "--r", "0.5"}).code == 0);
}

TEST_CASE("verify suites report their configuration") {
  auto r = run({"verify", "homogeneity", "--series", "principal", "--lambda", "0.3", "--mu-im", "0.5", "--op", "T2",
                "--path", "L:0.1", "--N", "64", "--pad", "24"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(lines(r.out).at(0));
  CHECK(j["name"] == "homogeneity");
  CHECK(j["context"]["N"] == 64);
  CHECK(j["context"]["padding"] == 24);
  CHECK(j["context"]["path"] == "L:0.1");
  CHECK(j["context"]["op"] == "T2");

  r = run({"verify", "unitarity", "--series", "holo", "--lambda", "2"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(lines(r.out).at(0));
  CHECK(j["context"]["N"] == 64);
  CHECK(j["context"]["padding"] == 16);

  r = run({"verify", "infinitesimal", "--series", "antiholo", "--lambda", "2", "--N", "32", "--pad", "8"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 8);
  CHECK(nlohmann::json::parse(lines(r.out)[0])["context"]["op"] == "T1star");

  r = run({"verify", "normalizer", "--series", "holo", "--lambda", "2", "--N", "64", "--pad", "24"});
  CHECK(r.code == 0);

  r = run({"verify", "homogeneity", "--series", "principal", "--lambda", "0.3", "--scale", "2", "--N", "32", "--pad",
           "8"});
  CHECK(r.code == 1);

  r = run({"verify", "homogeneity", "--series", "reducible", "--lambda", "1", "--r", "2", "--N", "32", "--pad", "8",
           "--path", "h:0.3"});
  CHECK(r.code == 0);
}

TEST_CASE("verify exit codes") {
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify", "homogeneity", "--path", "Q:0.1"}).code == 2);
  CHECK(run({"verify", "homogeneity", "--path", "L:0.9"}).code == 2);
  CHECK(run({"verify", "homogeneity", "--series", "holo", "--lambda", "2", "--op", "T2"}).code == 2);
  CHECK(run({"verify", "unitarity", "--N", "8", "--pad", "8"}).code == 2);
  // I - conj(beta) T is numerically singular for a large multiple of a shift.
  CHECK(run({"verify", "homogeneity", "--series", "principal", "--lambda", "0.3", "--scale", "40"}).code == 3);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("classify") {
  std::string ones = "n,a_re,a_im\n", t3, quad, broken = "0,1,0\n1,x,0\n";
  const double lambda = 0.3, mu_re = 0.35, mu_im = 0.5;
  for (int n = -8; n <= 8; ++n) {
    ones += std::to_string(n) + ",1,0\n";
    std::complex<double> mu(mu_re, mu_im);
    auto a = (lambda + mu + double(n)) / (double(n) + 1.0 - mu);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", n, a.real(), a.imag());
    t3 += buf;
    quad += std::to_string(n) + "," + std::to_string(n * n) + "\n";
  }
  const std::vector<std::string> base = {"classify", "--series", "principal", "--lambda", "0.3", "--mu-im", "0.5"};
  auto with_file = [&](const std::string& f) {
    auto args = base;
    args.push_back("--weights-file");
    args.push_back(f);
    return run(args);
  };
  auto r = with_file(write_temp("ones.csv", ones));
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["branch"] == "T2branch");
  r = with_file(write_temp("t3.csv", t3));
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["branch"] == "T3branch");
  r = with_file(write_temp("quad.csv", quad));
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["branch"] == "neither");
  CHECK(with_file(write_temp("broken.csv", broken)).code == 2);
  CHECK(with_file("/nonexistent/weights.csv").code == 2);
}

TEST_CASE("sweep") {
  auto r = run({"sweep", "--series", "principal", "--lambdas", ""});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1);

  r = run({"sweep", "--series", "complementary", "--lambdas=-0.5,0,0.5", "--mus", "mid", "--N", "48", "--pad", "18"});
  CHECK(r.code == 0);
  auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].rfind("complementary,-0.5,0.75,0,48,18,", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",true,") != std::string::npos);

  r = run({"sweep", "--series", "principal", "--lambdas=1.5", "--mus", "0.5", "--N", "16", "--pad", "4"});
  CHECK(r.code == 1);
  CHECK(lines(r.out).at(1).find(",false,") != std::string::npos);

  CHECK(run({"sweep", "--series", "principal", "--lambdas", "0:1:0"}).code == 2);
  CHECK(run({"sweep", "--series", "holo"}).code == 2);
}

TEST_CASE("identical configurations give identical bytes") {
  const std::vector<std::string> sweep = {"sweep",  "--series", "principal", "--lambdas=-0.5:0.5:0.5",
                                          "--mus",  "0.5,2",    "--N",       "24",
                                          "--pad",  "6"};
  auto a1 = sweep, a4 = sweep;
  a1.insert(a1.end(), {"--threads", "1"});
  a4.insert(a4.end(), {"--threads", "4"});
  auto s1 = run(a1), s4 = run(a4), s1b = run(a1);
  CHECK(s1.out == s4.out);
  CHECK(s1.out == s1b.out);

  const std::vector<std::string> lemmas = {"verify", "lemmas", "--samples", "50", "--seed", "7"};
  CHECK(run(lemmas).out == run(lemmas).out);
  CHECK(run(lemmas).out != run({"verify", "lemmas", "--samples", "50", "--seed", "8"}).out);
}
