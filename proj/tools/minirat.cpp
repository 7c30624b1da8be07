// Command-line driver: solve one approximation problem, reproduce a published
// benchmark table, or evaluate a stored approximant at new nodes.
//
// Exit codes: 0 success, 1 configuration or input error, 2 solver abort
// (partial trace still written), 3 evaluation mismatch between stored
// recurrences and coefficients.

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <minirat/dualcore.hpp>
#include <minirat/io.hpp>
#include <minirat/problems.hpp>
#include <minirat/solvers.hpp>

#include "published_reference.hpp"

namespace {

using namespace minirat;

struct ParsedScheme {
  bool from_file = false;
  std::string path;      // file schemes: CSV with x_re,x_im,f_re,f_im
  NodeScheme scheme;     // generated schemes
};

ParsedScheme parse_scheme(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  const std::string& kind = parts[0];

  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw std::invalid_argument("scheme '" + text + "': missing parameter");
    return std::stod(parts[i]);
  };
  auto count = [&](std::size_t i) { return static_cast<Eigen::Index>(num(i)); };

  ParsedScheme out;
  if (kind == "equispaced") {
    if (parts.size() != 4) throw std::invalid_argument("scheme: expected equispaced:a:b:m");
    out.scheme = NodeScheme::equispaced(num(1), num(2), count(3));
  } else if (kind == "unit_circle") {
    if (parts.size() != 2) throw std::invalid_argument("scheme: expected unit_circle:m");
    out.scheme = NodeScheme::unit_circle(count(1));
  } else if (kind == "half_circle") {
    if (parts.size() != 2) throw std::invalid_argument("scheme: expected half_circle:m");
    out.scheme = NodeScheme::half_circle(count(1));
  } else if (kind == "tanh_arc") {
    if (parts.size() != 2) throw std::invalid_argument("scheme: expected tanh_arc:m");
    out.scheme = NodeScheme::tanh_arc(count(1));
  } else if (kind == "file") {
    if (parts.size() < 2) throw std::invalid_argument("scheme: expected file:PATH");
    out.from_file = true;
    out.path = text.substr(5);  // keep any ':' inside the path
  } else {
    throw std::invalid_argument("scheme: unknown kind '" + kind + "'");
  }
  return out;
}

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MINIRAT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) cap = std::min<long>(cap, v);
  }
  return cap;
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

int cmd_solve(const std::string& func, const std::string& scheme_str,
              const std::vector<long long>& deg, const std::string& method,
              const SolverConfig& cfg, const std::string& out_dir, const std::string& eval_file,
              const std::string& seed_weights_file) {
  cfg.validate();
  ParsedScheme ps = parse_scheme(scheme_str);
  SampleSet samples;
  if (ps.from_file) {
    if (!func.empty())
      throw std::invalid_argument("file schemes carry their own values; drop --func");
    samples = io::read_samples_csv(ps.path);
  } else {
    if (func.empty()) throw std::invalid_argument("--func is required for generated schemes");
    samples = sample(FunctionId::named(func), ps.scheme);
  }

  const Eigen::Index n1 = deg[0], n2 = deg[1];
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("degrees must be nonnegative");
  if (samples.size() < n1 + n2 + 2)
    throw std::invalid_argument("need at least n1 + n2 + 2 = " + std::to_string(n1 + n2 + 2) +
                                " nodes, scheme provides " + std::to_string(samples.size()));

  std::optional<Eigen::VectorXd> seed_weights;
  if (!seed_weights_file.empty()) {
    Eigen::VectorXd w = io::read_weights_csv(seed_weights_file);
    if (w.size() != samples.size())
      throw std::invalid_argument("seed weights: expected " + std::to_string(samples.size()) +
                                  " entries, got " + std::to_string(w.size()));
    seed_weights = std::move(w);
  }

  auto dir = prepare_out_dir(out_dir);
  Approximant xi;
  SolveTrace trace;
  try {
    if (method == "dlawson") {
      SolveResult res = d_lawson(samples, n1, n2, cfg, seed_weights);
      xi = std::move(res.xi);
      trace = std::move(res.trace);
      io::write_file((dir / "certificate.json").string(), io::to_json(res.cert).dump(2) + "\n");
      std::cout << "dlawson (" << n1 << "," << n2 << "): max_err=" << io::fmt(res.cert.max_err)
                << " sqrt_d2=" << io::fmt(res.cert.sqrt_d2) << " gap=" << io::fmt(res.cert.gap)
                << " certified=" << (res.cert.satisfied ? "yes" : "no") << "\n";
    } else {
      if (seed_weights) throw std::invalid_argument("--seed-weights applies to dlawson only");
      IterationResult res =
          method == "sk" ? sk_iteration(samples, n1, n2, cfg) : ssk_iteration(samples, n1, n2, cfg);
      xi = std::move(res.xi);
      trace = std::move(res.trace);
      std::cout << method << " (" << n1 << "," << n2
                << "): max_err=" << io::fmt(trace.rows[static_cast<std::size_t>(trace.best_k)].max_err)
                << " (no optimality certificate)\n";
    }
  } catch (const SolveAbort& e) {
    io::write_file((dir / "trace.csv").string(), io::trace_csv(e.partial));
    std::cerr << "solver abort: " << e.what() << " (partial trace written)\n";
    return 2;
  }

  io::write_file((dir / "trace.csv").string(), io::trace_csv(trace));
  io::write_file((dir / "approximant.json").string(), io::to_json(xi).dump(2) + "\n");
  io::write_file((dir / "curve.csv").string(), io::curve_csv(samples, xi.evaluate(samples.x)));
  if (!eval_file.empty()) {
    Eigen::VectorXcd y = io::read_nodes_csv(eval_file);
    io::write_file((dir / "eval.csv").string(), io::eval_csv(y, xi.evaluate(y)));
  }
  return 0;
}

int cmd_table(const std::string& id, const std::string& out_dir) {
  const tools::BenchmarkTable* table = nullptr;
  for (const auto& t : tools::published_tables())
    if (t.id == id) table = &t;
  if (!table) throw std::invalid_argument("unknown table id: " + id);

  SampleSet samples = sample(FunctionId::named(table->func), parse_scheme(table->scheme).scheme);
  SolverConfig cfg;
  cfg.eps_w = 0.0;  // published tables keep every node in play

  struct RowOut {
    int n = 0;
    double gap = 0, sqrt_d2 = 0, dlawson = 0, sk = 0, ssk = 0;
  };
  std::vector<RowOut> out(table->rows.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= table->rows.size()) return;
      const int n = table->rows[i].n;
      SolveResult dl = d_lawson(samples, n, n, cfg);
      IterationResult sk = sk_iteration(samples, n, n, cfg);
      IterationResult ssk = ssk_iteration(samples, n, n, cfg);
      out[i] = {n, dl.cert.gap, dl.cert.sqrt_d2, dl.cert.max_err,
                sk.trace.rows[static_cast<std::size_t>(sk.trace.best_k)].max_err,
                ssk.trace.rows[static_cast<std::size_t>(ssk.trace.best_k)].max_err};
    }
  };
  unsigned nthreads = std::min<std::size_t>(thread_cap(), table->rows.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string csv =
      "type,gap,sqrt_d2,max_err_dlawson,max_err_sk,max_err_ssk,"
      "aaa_published_reference,rkfit_published_reference\n";
  for (std::size_t i = 0; i < out.size(); ++i) {
    csv += "\"(" + std::to_string(out[i].n) + "," + std::to_string(out[i].n) + ")\"," +
           io::fmt(out[i].gap) + ',' + io::fmt(out[i].sqrt_d2) + ',' + io::fmt(out[i].dlawson) +
           ',' + io::fmt(out[i].sk) + ',' + io::fmt(out[i].ssk) + ',' +
           io::fmt(table->rows[i].aaa) + ',' + io::fmt(table->rows[i].rkfit) + '\n';
  }
  auto dir = prepare_out_dir(out_dir);
  std::string path = (dir / ("table_" + id + ".csv")).string();
  io::write_file(path, csv);
  std::cout << "wrote " << path << " (" << out.size() << " rows)\n";
  return 0;
}

int cmd_eval(const std::string& approx_path, const std::string& nodes_path,
             const std::string& out_file) {
  std::ifstream in(approx_path);
  if (!in) throw std::runtime_error("cannot open: " + approx_path);
  nlohmann::json j;
  in >> j;
  Approximant xi = io::approximant_from_json(j);
  if (xi.hat_a.size() != xi.recurrence_p.rank || xi.hat_b.size() != xi.recurrence_q.rank) {
    std::cerr << "evaluation mismatch: coefficient lengths (" << xi.hat_a.size() << ", "
              << xi.hat_b.size() << ") do not match recurrence ranks (" << xi.recurrence_p.rank
              << ", " << xi.recurrence_q.rank << ")\n";
    return 3;
  }
  Eigen::VectorXcd y = io::read_nodes_csv(nodes_path);
  io::write_file(out_file, io::eval_csv(y, xi.evaluate(y)));
  std::cout << "wrote " << out_file << " (" << y.size() << " nodes)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete rational minimax approximation on the complex plane"};
  app.require_subcommand(1);

  std::string func, scheme_str, method = "dlawson", out_dir = ".", eval_file, seed_weights_file;
  std::vector<long long> deg;
  minirat::SolverConfig cfg;
  auto* solve = app.add_subcommand("solve", "compute a rational approximant for sampled data");
  solve->add_option("--func", func, "built-in function f1..f8");
  solve->add_option("--scheme", scheme_str,
                    "equispaced:a:b:m | unit_circle:m | half_circle:m | tanh_arc:m | file:PATH")
      ->required();
  solve->add_option("--deg", deg, "numerator and denominator degrees")->expected(2)->required();
  solve->add_option("--method", method, "dlawson (default), sk, or ssk")
      ->check(CLI::IsMember({"dlawson", "sk", "ssk"}));
  solve->add_option("--beta", cfg.beta, "Lawson exponent in (0, 1]");
  solve->add_option("--eps-r", cfg.eps_r, "relative duality gap target");
  solve->add_option("--eps-w", cfg.eps_w, "node filtering threshold");
  solve->add_option("--maxit", cfg.k_max, "weight update budget");
  solve->add_option("--out-dir", out_dir, "output directory (default .)");
  solve->add_option("--eval", eval_file, "also evaluate at nodes from this CSV (y_re,y_im)");
  solve->add_option("--seed-weights", seed_weights_file,
                    "initial simplex weights, one per line (dlawson only)");

  std::string table_id, table_out = ".";
  auto* table = app.add_subcommand("table", "reproduce a published benchmark table");
  table->add_option("id", table_id, "t1..t8")->required();
  table->add_option("--out-dir", table_out, "output directory (default .)");

  std::string approx_path, nodes_path, eval_out = "eval.csv";
  auto* eval = app.add_subcommand("eval", "evaluate a stored approximant at new nodes");
  eval->add_option("approximant", approx_path, "approximant.json from solve")->required();
  eval->add_option("nodes", nodes_path, "CSV of evaluation nodes (y_re,y_im)")->required();
  eval->add_option("--out", eval_out, "output CSV path (default eval.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(func, scheme_str, deg, method, cfg, out_dir, eval_file,
                                          seed_weights_file);
    if (table->parsed()) return cmd_table(table_id, table_out);
    if (eval->parsed()) return cmd_eval(approx_path, nodes_path, eval_out);
  } catch (const minirat::SolveAbort& e) {
    std::cerr << "solver abort: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
