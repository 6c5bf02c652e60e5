#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "homshift/errors.hpp"
#include "homshift/homogeneity.hpp"
#include "homshift/inductive.hpp"
#include "homshift/shifts.hpp"
#include "json.hpp"

namespace homshift::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr double kUnitarityTolerance = 1e-7;
constexpr double kInfinitesimalTolerance = 1e-6;
constexpr double kRouteTolerance = 1e-7;
constexpr double kLemmaTolerance = 1e-10;

// Shortest round-trip decimal form; identical bytes on every run.
std::string fmt(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

// The representation a config refers to, validated before any computation.
struct Setup {
  std::string series;
  RepnParams params;
  Representation rep;
  SeriesTag tag;
  Complex r;
};

Setup make_setup(const RunConfig& c) {
  const Complex r(c.r, c.r_im);
  if (c.series == "holo" || c.series == "antiholo") {
    RepnParams p = RepnParams::holomorphic(c.lambda);
    classify_series(p);
    if (c.series == "holo") return {c.series, p, Representation::plain(p), SeriesTag::HoloDiscrete, r};
    return {c.series, p, Representation::sharp(p), SeriesTag::AntiHoloDiscrete, r};
  }
  if (c.series == "principal" || c.series == "complementary") {
    RepnParams p = c.series == "principal" ? RepnParams::principal(c.lambda, c.mu_im)
                                           : RepnParams::complementary(c.lambda, c.mu);
    SeriesTag tag = classify_series(p);
    if (c.series == "principal" && tag != SeriesTag::Principal)
      throw ParameterError("principal series requires lambda in (-1, 1]");
    return {c.series, p, Representation::plain(p), tag, r};
  }
  if (c.series == "reducible") {
    ReducibleShiftSpec spec(c.lambda, r);
    RepnParams p{IndexSet::bilateral, c.lambda, 0.0};
    return {c.series, p, Representation::reducible(c.lambda), SeriesTag::ReducibleSum, r};
  }
  throw ParameterError("unknown series '" + c.series + "'");
}

TruncationWindow make_window(const RunConfig& c, IndexSet kind) {
  if (c.N < 1) throw ParameterError("--N must be positive");
  if (c.padding < 0 || c.padding >= c.N) throw ParameterError("--pad must lie in [0, N)");
  TruncationWindow w = TruncationWindow::make(kind, c.N, c.padding);
  w.require_interior();
  return w;
}

std::string default_op(const Setup& s) {
  switch (s.tag) {
    case SeriesTag::HoloDiscrete:
      return "T1";
    case SeriesTag::AntiHoloDiscrete:
      return "T1star";
    case SeriesTag::ReducibleSum:
      return "reducible";
    default:
      return "T2";
  }
}

OperatorMatrix make_operator(const std::string& op, const Setup& s, double scale, const TruncationWindow& w) {
  OperatorMatrix t = OperatorMatrix::zero(w);
  if (op == "reducible") {
    if (s.tag != SeriesTag::ReducibleSum) throw ParameterError("--op reducible needs --series reducible");
    t = reducible_shift(ReducibleShiftSpec(s.params.lambda, s.r), w);
  } else if (op == "T1" || op == "T1star" || op == "T2" || op == "T3") {
    if (s.tag == SeriesTag::ReducibleSum) throw ParameterError("--series reducible takes --op reducible");
    const ShiftKind kind = op == "T1" ? ShiftKind::T1 : op == "T1star" ? ShiftKind::T1star
                         : op == "T2" ? ShiftKind::T2 : ShiftKind::T3;
    t = canonical_shift(kind, s.params, w);
  } else {
    throw ParameterError("unknown operator '" + op + "'");
  }
  if (scale != 1.0) t *= Complex(scale);
  return t;
}

json base_context(const RunConfig& c, const std::string& suite) {
  json ctx;
  ctx["command"] = c.command;
  ctx["suite"] = suite;
  return ctx;
}

json series_context(const RunConfig& c, const Setup& s, const std::string& suite) {
  json ctx = base_context(c, suite);
  ctx["series"] = s.series;
  ctx["lambda"] = s.params.lambda;
  ctx["mu_re"] = s.params.mu.real();
  ctx["mu_im"] = s.params.mu.imag();
  if (s.tag == SeriesTag::ReducibleSum) {
    ctx["r_re"] = s.r.real();
    ctx["r_im"] = s.r.imag();
  }
  return ctx;
}

void add_window(json& ctx, const RunConfig& c) {
  ctx["path"] = c.path;
  ctx["N"] = c.N;
  ctx["padding"] = c.padding;
}

double pick(double override_tol, double fallback) { return override_tol > 0.0 ? override_tol : fallback; }

std::vector<DefectReport> run_suite(const RunConfig& c, const std::string& suite, const std::string& op_override = {}) {
  std::vector<DefectReport> out;
  if (suite == "lemmas") {
    if (c.samples < 0) throw ParameterError("--samples must be non-negative");
    Rng rng(c.seed);
    for (int i = 0; i < c.samples; ++i) {
      const double lambda = rng.uniform(-1.0, 3.0);
      const Complex mu(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
      const int m = rng.integer(1, 6) * (rng.integer(0, 1) == 0 ? -1 : 1);
      const int n = rng.integer(-64, 64);
      for (auto which : {LemmaVariant::mu_leading, LemmaVariant::lambda_leading}) {
        const Complex v = lemma_identity(lambda, mu, m, n, which);
        json ctx = base_context(c, suite);
        ctx["seed"] = c.seed;
        ctx["sample"] = i;
        ctx["variant"] = which == LemmaVariant::mu_leading ? "mu_leading" : "lambda_leading";
        ctx["lambda"] = lambda;
        ctx["mu_re"] = mu.real();
        ctx["mu_im"] = mu.imag();
        ctx["m"] = m;
        ctx["n"] = n;
        out.push_back(DefectReport::make("lemma", std::abs(v - 2.0 * m * m), pick(c.tolerance, kLemmaTolerance),
                                         std::move(ctx)));
      }
    }
    return out;
  }
  if (suite == "reducible-lambda") {
    const TruncationWindow w = make_window(c, IndexSet::bilateral);
    DefectReport rep = reducible_lambda_check(c.lambda, Complex(c.r, c.r_im), w,
                                              pick(c.tolerance, kReducibleLambdaTolerance));
    json ctx = base_context(c, suite);
    for (auto& [k, v] : rep.context.items()) ctx[k] = v;
    ctx["padding"] = c.padding;
    rep.context = std::move(ctx);
    out.push_back(std::move(rep));
    return out;
  }

  const Setup s = make_setup(c);
  const TruncationWindow w = make_window(c, s.params.index_set);
  const GroupPath path = GroupPath::parse(c.path);
  json ctx = series_context(c, s, suite);

  if (suite == "unitarity") {
    add_window(ctx, c);
    const OperatorMatrix r = s.rep.rep(path, w);
    const OperatorMatrix g = s.rep.gram(w);
    out.push_back(DefectReport::make("unitarity", interior_norm(r.adjoint() * g * r - g, w),
                                     pick(c.tolerance, kUnitarityTolerance), std::move(ctx)));
    return out;
  }

  const std::string op = !op_override.empty() ? op_override : !c.op.empty() ? c.op : default_op(s);
  const OperatorMatrix t = make_operator(op, s, c.scale, w);
  ctx["op"] = op;
  ctx["scale"] = c.scale;

  if (suite == "homogeneity") {
    add_window(ctx, c);
    out.push_back(homogeneity_defect(t, s.rep.rep(path, w), path_to_mobius(path), w,
                                     pick(c.tolerance, kHomogeneityTolerance), std::move(ctx)));
  } else if (suite == "normalizer") {
    add_window(ctx, c);
    out.push_back(normalizer_defect(t, s.rep.rep(path, w), w, pick(c.tolerance, kNormalizerTolerance), std::move(ctx)));
  } else if (suite == "infinitesimal") {
    ctx["step"] = kDefaultKappaStep;
    ctx["N"] = c.N;
    ctx["padding"] = c.padding;
    for (auto x : {AlgebraElement::L, AlgebraElement::M, AlgebraElement::e, AlgebraElement::f}) {
      const KappaDerivative k = kappa_flow_derivative(t, x, s.rep, w);
      const std::string name(algebra_name(x));
      json cx = ctx;
      cx["generator"] = name;
      out.push_back(DefectReport::make("infinitesimal-" + name,
                                       interior_norm(k.finite_difference - kappa_target(t, x), w),
                                       pick(c.tolerance, kInfinitesimalTolerance), cx));
      out.push_back(DefectReport::make("route-" + name, k.route_gap, pick(c.tolerance, kRouteTolerance), std::move(cx)));
    }
  } else {
    throw ParameterError("unknown suite '" + suite + "'");
  }
  return out;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  bool pass = true;
  for (const auto& r : run_suite(c, c.suite)) {
    out << r.to_json().dump() << '\n';
    pass = pass && r.pass;
  }
  return pass ? kPass : kFail;
}

int cmd_weights(const RunConfig& c, std::ostream& out) {
  const Setup s = make_setup(c);
  if (s.tag == SeriesTag::ReducibleSum && std::abs(c.lambda - 1.0) > 1e-12)
    throw ParameterError("the homogeneous reducible shift exists only for lambda = 1");
  WeightBranch branch;
  if (c.branch == "T2") {
    branch = WeightBranch::T2;
  } else if (c.branch == "T3") {
    branch = WeightBranch::T3;
  } else {
    throw ParameterError("--branch must be T2 or T3");
  }
  std::vector<std::pair<int, Complex>> rows;
  for (int n = c.n0; n <= c.n1; ++n) rows.push_back({n, weight_sequence(s.tag, s.params, n, branch, s.r)});

  if (c.format == "json") {
    for (const auto& [n, w] : rows) {
      json row;
      row["n"] = n;
      row["re"] = w.real();
      row["im"] = w.imag();
      row["abs"] = std::abs(w);
      out << row.dump() << '\n';
    }
  } else {
    out << "n,re,im,abs\n";
    for (const auto& [n, w] : rows)
      out << n << ',' << fmt(w.real()) << ',' << fmt(w.imag()) << ',' << fmt(std::abs(w)) << '\n';
  }
  return kPass;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::pair<int, Complex>> read_weights(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open weights file '" + file + "'");
  std::vector<std::pair<int, Complex>> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) {
      const auto b = f.find_first_not_of(" \t");
      const auto e = f.find_last_not_of(" \t");
      fields.push_back(b == std::string::npos ? std::string() : f.substr(b, e - b + 1));
    }
    if (samples.empty() && lineno == 1 && !fields.empty() && fields[0] == "n") continue;
    auto bad = [&] { return UsageError(file + ":" + std::to_string(lineno) + ": expected n,a_re[,a_im]"); };
    if (fields.size() < 2 || fields.size() > 3) throw bad();
    int n = 0;
    double re = 0.0, im = 0.0;
    auto parse = [&](const std::string& f, auto& v) {
      auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size()) throw bad();
    };
    parse(fields[0], n);
    parse(fields[1], re);
    if (fields.size() == 3) parse(fields[2], im);
    if (!std::isfinite(re) || !std::isfinite(im)) throw bad();
    samples.push_back({n, Complex(re, im)});
  }
  return samples;
}

int cmd_classify(const RunConfig& c, std::ostream& out) {
  const auto samples = read_weights(c.weights_file);
  const Setup s = make_setup(c);
  const AminusOneFit fit = classify_a_minus1(samples, s.params, pick(c.tolerance, kFitTolerance));
  json j;
  j["name"] = "classify";
  j["branch"] = fit_branch_name(fit.branch);
  j["residual"] = fit.residual;
  j["tie"] = fit.tie;
  j["a_re"] = fit.a.real();
  j["a_im"] = fit.a.imag();
  j["b_re"] = fit.b.real();
  j["b_im"] = fit.b.imag();
  json ctx = series_context(c, s, "classify");
  ctx["weights_file"] = c.weights_file;
  ctx["samples"] = samples.size();
  ctx["tolerance"] = pick(c.tolerance, kFitTolerance);
  j["context"] = std::move(ctx);
  out << j.dump() << '\n';
  return fit.branch == FitBranch::neither ? kFail : kPass;
}

// "a,b,c" or "lo:hi:step"; values are rounded to 12 decimals so that a
// range lands exactly on its end points.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.empty()) return out;
  auto number = [&](const std::string& f) {
    double v = 0.0;
    auto res = std::from_chars(f.data(), f.data() + f.size(), v);
    if (res.ec != std::errc() || res.ptr != f.data() + f.size() || !std::isfinite(v))
      throw UsageError("bad grid value '" + f + "'");
    return v;
  };
  auto round12 = [](double v) { return std::round(v * 1e12) / 1e12; };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string f; std::getline(ss, f, ':');) parts.push_back(f);
    if (parts.size() != 3) throw UsageError("grid range must be lo:hi:step");
    const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || hi < lo) throw UsageError("grid range needs step > 0 and hi >= lo");
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count > 100000) throw UsageError("grid range too large");
    for (long i = 0; i < count; ++i) out.push_back(round12(lo + static_cast<double>(i) * step));
    return out;
  }
  std::stringstream ss(text);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(number(f));
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string f; std::getline(ss, f, ',');)
    if (!f.empty()) out.push_back(f);
  return out;
}

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  if (c.series != "principal" && c.series != "complementary")
    throw UsageError("sweep covers the principal and complementary series");
  const std::vector<double> lambdas = parse_grid(c.lambdas);
  const bool midpoints = c.mus == "mid";
  if (midpoints && c.series != "complementary") throw UsageError("--mus mid applies to the complementary series");
  const std::vector<double> mus = midpoints ? std::vector<double>{0.0} : parse_grid(c.mus);
  const std::vector<std::string> suites = split(c.suites);
  for (const auto& s : suites) {
    if (s != "unitarity" && s != "homogeneity" && s != "infinitesimal" && s != "normalizer")
      throw UsageError("sweep suites are unitarity, homogeneity, infinitesimal, normalizer");
  }
  GroupPath::parse(c.path);

  struct Cell {
    RunConfig cfg;
  };
  std::vector<Cell> cells;
  for (double lambda : lambdas) {
    for (double mu : mus) {
      RunConfig cell = c;
      cell.command = "sweep";
      cell.lambda = lambda;
      if (c.series == "principal") {
        cell.mu_im = mu;
      } else {
        // Midpoint of (0,1) and (-lambda, 1-lambda).
        cell.mu = midpoints ? (std::max(0.0, -lambda) + std::min(1.0, 1.0 - lambda)) / 2.0 : mu;
      }
      cells.push_back({cell});
    }
  }

  std::vector<std::string> rows(cells.size());
  std::vector<char> passed(cells.size(), 0);
  auto compute = [&](std::size_t i) {
    const RunConfig& cfg = cells[i].cfg;
    double worst = 0.0;
    std::string worst_name;
    bool pass = true;
    std::string error;
    try {
      std::vector<std::string> ops;
      if (!cfg.op.empty()) {
        ops.push_back(cfg.op);
      } else {
        ops = {"T2", "T3"};
      }
      for (const auto& suite : suites) {
        const std::vector<std::string> run_ops = suite == "unitarity" ? std::vector<std::string>{""} : ops;
        for (const auto& op : run_ops) {
          for (const auto& r : run_suite(cfg, suite, op)) {
            pass = pass && r.pass;
            if (worst_name.empty() || r.value > worst) {
              worst = r.value;
              worst_name = r.name + (op.empty() ? "" : "/" + op);
            }
          }
        }
      }
    } catch (const std::exception& e) {
      pass = false;
      error = csv_safe(e.what());
    }
    const double mu_re = cfg.series == "principal" ? (1.0 - cfg.lambda) / 2.0 : cfg.mu;
    const double mu_im = cfg.series == "principal" ? cfg.mu_im : 0.0;
    std::ostringstream row;
    row << cfg.series << ',' << fmt(cfg.lambda) << ',' << fmt(mu_re) << ',' << fmt(mu_im) << ',' << cfg.N << ','
        << cfg.padding << ',' << cfg.path << ',' << csv_safe(cfg.suites) << ',' << (error.empty() ? fmt(worst) : "")
        << ',' << worst_name << ',' << (pass ? "true" : "false") << ',' << error << '\n';
    rows[i] = row.str();
    passed[i] = pass ? 1 : 0;
  };

  unsigned workers = c.threads > 0 ? static_cast<unsigned>(c.threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < workers; ++k) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) compute(i);
    });
  }
  for (auto& th : pool) th.join();

  out << "series,lambda,mu_re,mu_im,N,padding,path,suites,max_defect,worst,pass,error\n";
  for (const auto& r : rows) out << r;
  return std::all_of(passed.begin(), passed.end(), [](char p) { return p != 0; }) ? kPass : kFail;
}

void add_series_options(CLI::App* app, RunConfig& c) {
  app->add_option("--series", c.series, "holo, antiholo, principal, complementary or reducible")
      ->check(CLI::IsMember({"holo", "antiholo", "principal", "complementary", "reducible"}));
  app->add_option("--lambda", c.lambda, "lambda");
  app->add_option("--mu", c.mu, "real mu (complementary series)");
  app->add_option("--mu-im", c.mu_im, "Im mu (principal series; Re mu = (1 - lambda)/2)");
  app->add_option("--r", c.r, "coupling r of the reducible shift (real part)");
  app->add_option("--r-im", c.r_im, "imaginary part of r");
}

void add_window_options(CLI::App* app, RunConfig& c) {
  app->add_option("--N", c.N, "window extent: 0..N or -N..N");
  app->add_option("--pad", c.padding, "untrusted boundary width");
  app->add_option("--path", c.path, "group path, e.g. L:0.1,M:-0.05,h:0.3");
  app->add_option("--op", c.op, "T1, T1star, T2, T3 or reducible")
      ->check(CLI::IsMember({"T1", "T1star", "T2", "T3", "reducible"}));
  app->add_option("--tol", c.tolerance, "tolerance override");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app("Homogeneous weighted shifts: representation matrices and defect reports", "homshift");
  app.require_subcommand(1);

  auto* weights = app.add_subcommand("weights", "weight sequence table");
  add_series_options(weights, c);
  weights->add_option("--n0", c.n0, "first index");
  weights->add_option("--n1", c.n1, "last index");
  weights->add_option("--branch", c.branch, "T2 or T3 (bilateral series)");
  weights->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* verify = app.add_subcommand("verify", "run a verification suite and print JSON reports");
  verify->add_option("suite", c.suite, "homogeneity, unitarity, infinitesimal, reducible-lambda, normalizer, lemmas")
      ->required()
      ->check(CLI::IsMember({"homogeneity", "unitarity", "infinitesimal", "reducible-lambda", "normalizer", "lemmas"}));
  add_series_options(verify, c);
  add_window_options(verify, c);
  verify->add_option("--scale", c.scale, "multiplier applied to the operator");
  verify->add_option("--samples", c.samples, "lemma samples");
  verify->add_option("--seed", c.seed, "random seed");

  auto* classify = app.add_subcommand("classify", "fit an A_{-1} coefficient file to the T2/T3 families");
  add_series_options(classify, c);
  classify->add_option("--weights-file", c.weights_file, "CSV of n,a_re,a_im")->required();
  classify->add_option("--tol", c.tolerance, "fit tolerance");

  auto* sweep = app.add_subcommand("sweep", "run suites over a parameter grid, one CSV row per cell");
  sweep->add_option("--series", c.series, "principal or complementary");
  sweep->add_option("--lambdas", c.lambdas, "lambda grid: a,b,c or lo:hi:step");
  sweep->add_option("--mus", c.mus, "Im mu grid (principal), mu grid or 'mid' (complementary)");
  sweep->add_option("--suites", c.suites, "comma-separated suites");
  add_window_options(sweep, c);
  sweep->add_option("--threads", c.threads, "worker threads (0: all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (weights->parsed()) {
      c.command = "weights";
      return cmd_weights(c, out);
    }
    if (verify->parsed()) {
      c.command = "verify";
      return cmd_verify(c, out);
    }
    if (classify->parsed()) {
      c.command = "classify";
      return cmd_classify(c, out);
    }
    c.command = "sweep";
    return cmd_sweep(c, out);
  } catch (const UsageError& e) {
    err << "homshift: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << "homshift: " << e.what() << '\n';
    return kUsage;
  } catch (const ShapeError& e) {
    err << "homshift: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "homshift: numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace homshift::cli
