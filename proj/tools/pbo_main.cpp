#include "pbo/benchmarks.hpp"
#include "pbo/driver.hpp"
#include "pbo/evaluation.hpp"
#include "pbo/report.hpp"
#include "pbo/session_service.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

pbo::Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const pbo::Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string format_point(const pbo::Vector& x) {
  std::ostringstream os;
  os << std::setprecision(6) << '[';
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ']';
  return os.str();
}

struct BenchArgs {
  std::string problem = "all";
  std::string variant = "glispr";
  int trials = 10;
  int budget = 200;
  int n_init = 0;
  std::uint64_t seed = 0;
  std::string delta_cycle = "0.95,0.7,0.35,0";
  int k_aug = 5;
  std::string out = "bench-out";
  unsigned workers = 0;
  double threshold = pbo::kDefaultAccuracyThreshold;
};

int run_bench(const BenchArgs& a) {
  std::vector<const pbo::BenchmarkProblem*> problems;
  if (a.problem == "all") {
    for (const auto& p : pbo::benchmark_catalog()) problems.push_back(&p);
  } else {
    for (const auto& name : split(a.problem)) problems.push_back(&pbo::benchmark_by_name(name));
  }
  const auto variants = split(a.variant);
  std::filesystem::create_directories(a.out);
  std::ofstream csv(std::filesystem::path(a.out) / "traces.csv");
  std::vector<pbo::ProblemSummary> summaries;
  bool header_done = false;

  std::cout << std::left << std::setw(14) << "problem" << std::setw(10) << "variant" << std::setw(12) << "median N"
            << std::setw(10) << "solved" << "mean time [s]\n";
  for (const auto* p : problems) {
    std::map<std::string, std::vector<pbo::RunRecord>> runs;
    std::map<std::string, pbo::DataProfile> profiles;
    for (const auto& v : variants) {
      pbo::SolverConfig cfg = pbo::SolverConfig::defaults_for(p->dim());
      cfg.variant = pbo::acquisition_variant_from_string(v);
      cfg.n_max = a.budget;
      if (a.n_init > 0) cfg.n_init = a.n_init;
      cfg.delta_cycle = pbo::DeltaCycle(parse_list(a.delta_cycle));
      cfg.k_aug = a.k_aug;
      const auto records = pbo::run_trials(*p, cfg, v, a.trials, a.seed, a.workers);

      std::ostringstream block;
      pbo::write_trace_csv(block, records, p->f_star);
      std::string text = block.str();
      if (header_done) text.erase(0, text.find('\n') + 1);
      header_done = true;
      csv << text;

      const auto s = pbo::summarize(records, p->f_star, a.threshold);
      summaries.push_back(s);
      std::cout << std::setw(14) << p->name << std::setw(10) << v << std::setw(12) << pbo::format_n_acc(s.median_n_acc)
                << std::setw(10) << (std::to_string(static_cast<int>(s.solved_fraction * 100.0 + 0.5)) + "%")
                << std::fixed << std::setprecision(2) << s.mean_wall_seconds << std::defaultfloat << '\n';
      profiles[v] = pbo::data_profile(records, p->f_star, a.threshold);
      runs[v] = records;
    }
    std::ofstream(std::filesystem::path(a.out) / (p->name + "_convergence.svg"))
        << pbo::convergence_svg(p->name + " convergence", runs, p->f_star);
    std::ofstream(std::filesystem::path(a.out) / (p->name + "_profile.svg"))
        << pbo::data_profile_svg(p->name + " data profile", profiles);
  }
  std::ofstream(std::filesystem::path(a.out) / "summary.json") << pbo::summaries_json(summaries, a.threshold) << '\n';
  return 0;
}

class StdinOracle : public pbo::PreferenceOracle {
 public:
  int query(const pbo::Vector& xi, const pbo::Vector& xj) override {
    ++count_;
    while (true) {
      std::cout << "\nquery " << count_ << "\n  A = " << format_point(xi) << "\n  B = " << format_point(xj)
                << "\nanswer -1 (A better), 0 (same), 1 (B better): " << std::flush;
      std::string line;
      if (!std::getline(std::cin, line)) throw pbo::ProtocolError("input closed before the session finished");
      try {
        const int b = std::stoi(line);
        if (b >= -1 && b <= 1) return b;
      } catch (const std::exception&) {
      }
      std::cout << "please type -1, 0 or 1\n";
    }
  }

 private:
  int count_ = 0;
};

struct SolveArgs {
  std::string lower;
  std::string upper;
  int budget = 20;
  int n_init = 0;
  std::uint64_t seed = 0;
  std::string variant = "glispr";
};

int run_solve(const SolveArgs& a) {
  const pbo::ConstraintSet box(to_vector(parse_list(a.lower)), to_vector(parse_list(a.upper)));
  pbo::SolverConfig cfg = pbo::SolverConfig::defaults_for(box.dim());
  cfg.n_max = a.budget;
  if (a.n_init > 0) cfg.n_init = a.n_init;
  cfg.seed = a.seed;
  cfg.variant = pbo::acquisition_variant_from_string(a.variant);
  StdinOracle oracle;
  const auto res = pbo::solve(box, oracle, cfg);
  std::cout << "\nbest: " << format_point(res.x_best) << '\n';
  return 0;
}

struct ServeArgs {
  std::string listen = "127.0.0.1:8080";
  std::string data_dir = "pbo-data";
  int default_budget = 50;
};

int run_serve(const ServeArgs& a) {
  const auto colon = a.listen.rfind(':');
  if (colon == std::string::npos) throw pbo::InputError("listen address must be host:port");
  const std::string host = a.listen.substr(0, colon);
  const int port = std::stoi(a.listen.substr(colon + 1));

  pbo::SessionManager manager({a.data_dir, a.default_budget, true});
  manager.load_existing();
  httplib::Server server;
  pbo::register_routes(server, manager);
  std::cout << "listening on " << host << ':' << port << " (data in " << a.data_dir << ")\n" << std::flush;
  if (!server.listen(host, port)) {
    std::cerr << "failed to bind " << a.listen << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preference-based global optimization"};
  app.require_subcommand(1);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run benchmark trials against synthetic decision-makers");
  b->add_option("--problem", bench.problem, "Problem name, comma list or 'all'");
  b->add_option("--variant", bench.variant, "glispr, glisp or cglisp (comma list allowed)");
  b->add_option("--trials", bench.trials)->check(CLI::PositiveNumber);
  b->add_option("--budget", bench.budget, "N_max")->check(CLI::PositiveNumber);
  b->add_option("--n-init", bench.n_init, "Initial design size (default 4n)");
  b->add_option("--seed", bench.seed);
  b->add_option("--delta-cycle", bench.delta_cycle, "Comma separated weights");
  b->add_option("--k-aug", bench.k_aug)->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "Output directory");
  b->add_option("--workers", bench.workers, "Worker threads (0 = all cores)");
  b->add_option("--threshold", bench.threshold, "Accuracy threshold t");

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Interactive session answering queries on stdin");
  s->add_option("--lower", solve.lower, "Comma separated lower bounds")->required();
  s->add_option("--upper", solve.upper, "Comma separated upper bounds")->required();
  s->add_option("--budget", solve.budget);
  s->add_option("--n-init", solve.n_init);
  s->add_option("--seed", solve.seed);
  s->add_option("--variant", solve.variant);

  ServeArgs serve;
  auto* v = app.add_subcommand("serve", "HTTP session service");
  v->add_option("--listen", serve.listen, "host:port")->envname("PBO_LISTEN");
  v->add_option("--data-dir", serve.data_dir)->envname("PBO_DATA_DIR");
  v->add_option("--default-budget", serve.default_budget)->envname("PBO_DEFAULT_BUDGET");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*b) return run_bench(bench);
    if (*s) return run_solve(solve);
    if (*v) return run_serve(serve);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
