// kz: lattice reduction toolkit command line.
//   gen     deterministic test lattices
//   reduce  LLL / BKZ reduction
//   svp     shortest or short vector search
//   bench   enumeration speedup table across worker counts

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kz/basis.hpp"
#include "kz/bkz.hpp"
#include "kz/enumeration.hpp"
#include "kz/gso.hpp"
#include "kz/lll.hpp"
#include "kz/parallel.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("KZ_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct BoundSpec {
  kz::BoundStrategy strategy = kz::BoundStrategy::FirstVector;
  double explicit_value = 0.0;
  std::string name = "first";
};

BoundSpec parse_bound(const std::string& text) {
  BoundSpec spec;
  spec.name = text;
  if (text == "hermite") {
    spec.strategy = kz::BoundStrategy::Hermite;
  } else if (text == "mdet") {
    spec.strategy = kz::BoundStrategy::MDet;
  } else if (text == "gauss105") {
    spec.strategy = kz::BoundStrategy::Gauss105;
  } else if (text == "first") {
    spec.strategy = kz::BoundStrategy::FirstVector;
  } else if (text.rfind("explicit=", 0) == 0) {
    spec.strategy = kz::BoundStrategy::Explicit;
    spec.explicit_value = std::stod(text.substr(9));
    if (!(spec.explicit_value > 0.0))
      throw CLI::ValidationError("--bound", "explicit bound must be > 0");
  } else {
    throw CLI::ValidationError(
        "--bound", "expected hermite|mdet|gauss105|first|explicit=V");
  }
  return spec;
}

struct ModeSpec {
  kz::EnumMode mode = kz::EnumMode::shortest();
  std::string name = "shortest";
};

ModeSpec parse_mode(const std::string& text) {
  ModeSpec spec;
  spec.name = text;
  if (text == "shortest") {
    spec.mode = kz::EnumMode::shortest();
  } else if (text.rfind("below=", 0) == 0) {
    const double t = std::stod(text.substr(6));
    if (!(t > 0.0))
      throw CLI::ValidationError("--mode", "threshold must be > 0");
    spec.mode = kz::EnumMode::first_below(t);
  } else {
    throw CLI::ValidationError("--mode", "expected shortest|below=V");
  }
  return spec;
}

// One machine-readable line; the field set is identical for every command.
struct RunReport {
  std::string cmd;
  int dim = 0;
  std::string bound_strategy = "-";
  double a_sq = 0.0;
  std::string norm_sq = "-";
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::uint64_t updates = 0;
  int workers = 1;
  double wall_s = 0.0;

  void print_porcelain(std::ostream& os) const {
    os << "cmd=" << cmd << " dim=" << dim
       << " bound_strategy=" << bound_strategy
       << " a_sq=" << format_double(a_sq) << " norm_sq=" << norm_sq
       << " nodes=" << nodes << " leaves=" << leaves << " updates=" << updates
       << " workers=" << workers << " wall_s=" << format_double(wall_s)
       << "\n";
  }
};

std::string vector_text(const std::vector<long long>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  os << ']';
  return os.str();
}

std::string vector_text(const kz::IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << v[i];
  }
  os << ']';
  return os.str();
}

struct CommonArgs {
  std::string file;
  int threads = 0;
  bool porcelain = false;
};

int run_gen(int dim, int bits, unsigned long seed, bool porcelain) {
  const auto start = Clock::now();
  const kz::Basis b = kz::generate_lattice(dim, bits, seed);
  std::cout << kz::serialize_basis(b) << "\n";
  if (porcelain) {
    RunReport r;
    r.cmd = "gen";
    r.dim = dim;
    r.wall_s = seconds_since(start);
    r.print_porcelain(std::cout);
  }
  return 0;
}

int run_svp(const CommonArgs& common, const BoundSpec& bound_spec,
            const ModeSpec& mode_spec, const std::string& pre) {
  const auto t0 = Clock::now();
  const std::string text = read_input(common.file);
  kz::Basis b = kz::parse_basis(text);
  const double parse_s = seconds_since(t0);

  const auto t1 = Clock::now();
  if (pre == "lll") b = kz::lll_reduce(b, 0.99);
  const double pre_s = seconds_since(t1);

  const int workers = resolve_threads(common.threads);
  const auto t2 = Clock::now();
  const kz::GsoData gso = kz::compute_gso(b);
  const kz::EnumBound bound = kz::compute_bound(
      gso, b, bound_spec.strategy, bound_spec.explicit_value);
  const auto result = kz::enumerate_parallel(gso, b, bound, mode_spec.mode,
                                             kz::ParallelConfig{workers});
  const double enum_s = seconds_since(t2);

  RunReport r;
  r.cmd = "svp";
  r.dim = b.dim();
  r.bound_strategy = bound_spec.name;
  r.a_sq = bound.a_sq;
  r.workers = workers;
  r.wall_s = seconds_since(t0);

  std::cout << "input: " << common.file << " (digest " << hex64(fnv1a(text))
            << ")\n";
  std::cout << "dim: " << b.dim() << "\n";
  std::cout << "bound: " << bound_spec.name << "  a_sq=" << bound.a_sq
            << "\n";
  std::cout << "mode: " << mode_spec.name << "\n";

  if (!result) {
    std::cout << "result: empty (no nonzero vector within the bound)\n";
    if (common.porcelain) r.print_porcelain(std::cout);
    return 2;
  }

  kz::IntVector ambient(b.ambient_dim(), kz::Int(0));
  for (int i = 0; i < b.dim(); ++i)
    for (int k = 0; k < b.ambient_dim(); ++k)
      ambient[k] += kz::Int(static_cast<long>(result->coeffs[i])) *
                    b.rows[i][k];

  r.norm_sq = result->norm_sq.get_str();
  r.nodes = result->stats.nodes_visited;
  r.leaves = result->stats.leaves_reached;
  r.updates = result->stats.bound_updates;

  std::cout << "vector (basis coords): " << vector_text(result->coeffs)
            << "\n";
  std::cout << "vector (ambient): " << vector_text(ambient) << "\n";
  std::cout << "norm_sq: " << result->norm_sq.get_str() << "\n";
  std::cout << "stats: nodes=" << r.nodes << " leaves=" << r.leaves
            << " updates=" << r.updates
            << " root_branches=" << result->stats.root_branches << "\n";
  std::cout << "threads: " << workers << "\n";
  std::cout << "wall_s: parse=" << format_double(parse_s)
            << " pre=" << format_double(pre_s)
            << " enum=" << format_double(enum_s)
            << " total=" << format_double(r.wall_s) << "\n";
  if (common.porcelain) r.print_porcelain(std::cout);
  return 0;
}

int run_reduce(const CommonArgs& common, const std::string& algo, int beta,
               double delta, long max_tours) {
  const auto t0 = Clock::now();
  const std::string text = read_input(common.file);
  const kz::Basis b = kz::parse_basis(text);
  const double parse_s = seconds_since(t0);

  const int workers = resolve_threads(common.threads);
  const auto t1 = Clock::now();
  kz::Basis out;
  if (algo == "lll") {
    out = kz::lll_reduce(b, delta);
  } else {
    kz::BkzParams params;
    params.beta = beta;
    params.delta = delta;
    params.workers = workers;
    params.max_tours = max_tours;
    out = kz::bkz_reduce(b, params);
  }
  const double reduce_s = seconds_since(t1);

  std::cout << kz::serialize_basis(out) << "\n";
  std::cerr << "reduce: algo=" << algo << " dim=" << b.dim()
            << " wall_s: parse=" << format_double(parse_s)
            << " reduce=" << format_double(reduce_s) << "\n";

  if (common.porcelain) {
    RunReport r;
    r.cmd = "reduce";
    r.dim = b.dim();
    r.norm_sq = kz::norm_sq(out.rows.front()).get_str();
    r.workers = workers;
    r.wall_s = seconds_since(t0);
    r.print_porcelain(std::cout);
  }
  return 0;
}

int run_bench(const CommonArgs& common, const BoundSpec& bound_spec,
              const std::string& threads_list, int repeats,
              const std::string& pre) {
  const std::string text = read_input(common.file);
  kz::Basis b = kz::parse_basis(text);
  if (pre == "lll") b = kz::lll_reduce(b, 0.99);

  std::vector<int> counts;
  {
    std::stringstream ss(threads_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const int v = std::stoi(item);
      if (v < 1)
        throw CLI::ValidationError("--threads-list",
                                   "worker counts must be >= 1");
      counts.push_back(v);
    }
    if (counts.empty())
      throw CLI::ValidationError("--threads-list", "no worker counts given");
  }
  if (repeats < 1) throw CLI::ValidationError("--repeats", "must be >= 1");

  const kz::GsoData gso = kz::compute_gso(b);
  const kz::EnumBound bound = kz::compute_bound(
      gso, b, bound_spec.strategy, bound_spec.explicit_value);

  struct Row {
    int workers;
    double median_s;
    kz::EnumResult sample;
  };
  std::vector<Row> rows;
  std::optional<kz::Int> common_norm;

  for (int w : counts) {
    std::vector<double> times;
    std::optional<kz::EnumResult> keep;
    for (int rep = 0; rep < repeats; ++rep) {
      const auto ts = Clock::now();
      auto res = kz::enumerate_parallel(gso, b, bound,
                                        kz::EnumMode::shortest(),
                                        kz::ParallelConfig{w});
      times.push_back(seconds_since(ts));
      if (!res) {
        std::cerr << "bench: empty result at workers=" << w << "\n";
        return 2;
      }
      if (!common_norm) common_norm = res->norm_sq;
      if (res->norm_sq != *common_norm) {
        std::cerr << "bench: norm mismatch across runs (" << res->norm_sq
                  << " vs " << *common_norm << ")\n";
        return 1;
      }
      keep = std::move(res);
    }
    std::sort(times.begin(), times.end());
    rows.push_back(Row{w, times[times.size() / 2], std::move(*keep)});
  }

  double base = rows.front().median_s;
  for (const Row& row : rows)
    if (row.workers == 1) base = row.median_s;

  std::cout << "workers  median_s        speedup   norm_sq\n";
  for (const Row& row : rows) {
    std::ostringstream line;
    line << std::left << std::setw(9) << row.workers << std::setw(16)
         << format_double(row.median_s) << std::setw(10)
         << format_double(base / row.median_s) << common_norm->get_str();
    std::cout << line.str() << "\n";
  }
  std::cout << "reference: prior implementation reported 3.0x at 4 threads\n";

  if (common.porcelain) {
    for (const Row& row : rows) {
      RunReport r;
      r.cmd = "bench";
      r.dim = b.dim();
      r.bound_strategy = bound_spec.name;
      r.a_sq = bound.a_sq;
      r.norm_sq = common_norm->get_str();
      r.nodes = row.sample.stats.nodes_visited;
      r.leaves = row.sample.stats.leaves_reached;
      r.updates = row.sample.stats.bound_updates;
      r.workers = row.workers;
      r.wall_s = row.median_s;
      r.print_porcelain(std::cout);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice reduction toolkit: LLL, BKZ and parallel"
               " shortest-vector enumeration"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a test lattice basis");
  int gen_dim = 0, gen_bits = 0;
  unsigned long gen_seed = 0;
  bool gen_porcelain = false;
  gen->add_option("--dim", gen_dim, "lattice dimension (>= 2)")->required();
  gen->add_option("--bits", gen_bits, "bit size of the modulus (>= 2)")
      ->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_flag("--porcelain", gen_porcelain, "machine-readable report line");

  auto* svp = app.add_subcommand("svp", "search for a shortest/short vector");
  CommonArgs svp_args;
  std::string svp_bound = "first", svp_mode = "shortest", svp_pre = "none";
  svp->add_option("file", svp_args.file, "basis file ('-' for stdin)")
      ->required();
  svp->add_option("--bound", svp_bound,
                  "hermite|mdet|gauss105|first|explicit=V");
  svp->add_option("--mode", svp_mode, "shortest|below=V");
  svp->add_option("--pre", svp_pre, "none|lll pre-reduction")
      ->check(CLI::IsMember({"none", "lll"}));
  svp->add_option("--threads,-t", svp_args.threads,
                  "worker count (default: processors, env KZ_THREADS)");
  svp->add_flag("--porcelain", svp_args.porcelain,
                "machine-readable report line");

  auto* red = app.add_subcommand("reduce", "reduce a basis with LLL or BKZ");
  CommonArgs red_args;
  std::string red_algo = "lll";
  int red_beta = 20;
  double red_delta = 0.99;
  long red_tours = 0;
  red->add_option("file", red_args.file, "basis file ('-' for stdin)")
      ->required();
  red->add_option("--algo", red_algo, "lll|bkz")
      ->check(CLI::IsMember({"lll", "bkz"}));
  red->add_option("--beta", red_beta, "BKZ block size (>= 2)");
  red->add_option("--delta", red_delta, "LLL parameter in (1/4, 1)");
  red->add_option("--max-tours", red_tours, "BKZ tour limit (0 = unbounded)");
  red->add_option("--threads,-t", red_args.threads,
                  "worker count (default: processors, env KZ_THREADS)");
  red->add_flag("--porcelain", red_args.porcelain,
                "machine-readable report line");

  auto* bench = app.add_subcommand(
      "bench", "measure enumeration speedup across worker counts");
  CommonArgs bench_args;
  std::string bench_bound = "first", bench_threads = "1,2,4,8",
              bench_pre = "none";
  int bench_repeats = 5;
  bench->add_option("file", bench_args.file, "basis file ('-' for stdin)")
      ->required();
  bench->add_option("--bound", bench_bound,
                    "hermite|mdet|gauss105|first|explicit=V");
  bench->add_option("--threads-list", bench_threads,
                    "comma-separated worker counts");
  bench->add_option("--repeats", bench_repeats, "repetitions per count");
  bench->add_option("--pre", bench_pre, "none|lll pre-reduction")
      ->check(CLI::IsMember({"none", "lll"}));
  bench->add_flag("--porcelain", bench_args.porcelain,
                  "machine-readable report lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_dim, gen_bits, gen_seed, gen_porcelain);
    if (svp->parsed())
      return run_svp(svp_args, parse_bound(svp_bound), parse_mode(svp_mode),
                     svp_pre);
    if (red->parsed()) {
      if (red_algo == "bkz" && red_beta < 2) {
        std::cerr << "reduce: --beta must be >= 2\n";
        return 64;
      }
      return run_reduce(red_args, red_algo, red_beta, red_delta, red_tours);
    }
    if (bench->parsed())
      return run_bench(bench_args, parse_bound(bench_bound), bench_threads,
                       bench_repeats, bench_pre);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  } catch (const kz::param_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 64;
  } catch (const kz::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const kz::rank_error& e) {
    std::cerr << "rank error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
