// Command-line front end: generate halvings and partitions, verify
// collections, emit Steiner triple systems, and report kernel bases.
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 search cap exhausted.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tradeforge/tradeforge.hpp"

namespace tf = tradeforge;

namespace {

std::int64_t cap_with_env(std::int64_t fallback) {
  if (const char* s = std::getenv("TRADEFORGE_MAX_ITERS")) {
    try {
      std::size_t used = 0;
      const std::int64_t val = std::stoll(s, &used);
      if (used != std::string(s).size() || val < 1) throw std::invalid_argument("");
      return val;
    } catch (const std::exception&) {
      throw std::invalid_argument("TRADEFORGE_MAX_ITERS must be a positive integer");
    }
  }
  return fallback;
}

void emit(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + path + "'");
  f << bytes;
}

struct GenOptions {
  std::string method;
  int v = 0;
  std::uint64_t seed = 1;
  bool decompose = false;
  std::string out;
  bool one_based = false;
  std::string format = "text";
  std::string sts_file;
  bool random_circuit = false;
  std::int64_t max_iters = 0;  // 0: default for the method
  int restarts = 60;
  int jobs = 1;
};

int run_gen(const GenOptions& o) {
  tf::TradeDecomposition decomposition;
  std::vector<std::string> meta;
  std::ostringstream meta_line;
  meta_line << "method=" << o.method << " v=" << o.v;

  if (o.method == "ak") {
    const auto cap = o.max_iters > 0 ? o.max_iters : cap_with_env(1'000'000);
    tf::AkRun run = tf::ak_halving_run(o.v, cap);
    std::cerr << "ak: v=" << o.v << " iterations=" << run.iterations << "\n";
    meta_line << " iterations=" << run.iterations;
    decomposition = std::move(run.decomposition);
  } else if (o.method == "v10") {
    decomposition = tf::v10_constituents(o.v, tf::default_labelling(o.v), o.one_based ? 1 : 0);
  } else if (o.method == "partition") {
    const auto lab = tf::default_labelling(o.v);
    if (o.random_circuit) {
      std::mt19937_64 rng(o.seed);
      decomposition = tf::partition_halving(o.v, lab, &rng).second;
      meta_line << " seed=" << o.seed;
    } else {
      decomposition = tf::partition_halving(o.v, lab).second;
    }
  } else if (o.method == "structured") {
    if (o.sts_file.empty()) {
      decomposition = tf::structured_partition(o.v).second;
    } else {
      std::ifstream in(o.sts_file);
      if (!in) throw std::invalid_argument("cannot open STS file '" + o.sts_file + "'");
      const tf::TripleSystem sts = tf::read_sts(in, o.one_based);
      const int h = o.v / 2;
      const bool direct = (h % 6 == 1 || h % 6 == 3);
      decomposition = tf::structured_partition(o.v, tf::default_labelling(o.v), sts,
                                               direct ? tf::PairPartition{}
                                                      : tf::default_pair_partition(h - 3))
                          .second;
    }
  } else if (o.method == "hillclimb") {
    if (o.v != 10) throw std::invalid_argument("hillclimb: only v=10 is supported");
    tf::SearchConfig cfg;
    cfg.seed = o.seed;
    cfg.max_iterations = o.max_iters > 0 ? o.max_iters : cap_with_env(1000);
    cfg.restart_limit = o.restarts;
    tf::HillClimbResult res = tf::hill_climb_partition(cfg, o.jobs);
    std::cerr << "hillclimb: seed=" << o.seed << " restarts=" << res.restarts_used
              << " iterations=" << res.iterations << (res.success ? "" : " FAILED") << "\n";
    if (!res.success) {
      throw tf::search_limit_error("hillclimb: no partition within " + std::to_string(o.restarts) +
                                   " restarts of " + std::to_string(cfg.max_iterations) +
                                   " iterations");
    }
    meta_line << " seed=" << o.seed << " restarts=" << res.restarts_used
              << " iterations=" << res.iterations;
    decomposition = std::move(res.partition);
  } else {
    throw std::invalid_argument("unknown method '" + o.method + "'");
  }

  tf::SignedCollection sum = tf::sum_decomposition(decomposition);
  if (!tf::is_halving(sum)) throw std::logic_error("generated collection failed halving verification");
  meta.push_back(meta_line.str());

  std::ostringstream body;
  if (o.format == "json") {
    const auto j = o.decompose ? tf::decomposition_to_json(decomposition, o.one_based)
                               : tf::collection_to_json(sum, o.one_based);
    body << j.dump(2) << '\n';
  } else {
    if (o.decompose) {
      tf::write_decomposition(body, decomposition, 2, o.one_based, meta);
    } else {
      tf::write_collection(body, sum, 2, o.one_based, meta);
    }
  }
  emit(o.out, body.str());
  return 0;
}

struct VerifyOptions {
  std::string file;
  int t = 2;
  bool t_given = false;
  std::int64_t lambda = 0;
  bool halving = false;
  bool one_based = false;
  int jobs = 1;
};

int run_verify(const VerifyOptions& o) {
  tf::ParsedCollection parsed{tf::SignedCollection(3, 3), 2};
  if (o.file.empty() || o.file == "-") {
    parsed = tf::read_collection(std::cin, o.one_based);
  } else {
    std::ifstream in(o.file);
    if (!in) throw std::invalid_argument("cannot open input file '" + o.file + "'");
    parsed = tf::read_collection(in, o.one_based);
  }
  const tf::SignedCollection& f = parsed.collection;
  const int t = o.t_given ? o.t : parsed.t;

  const auto vol = tf::volume(f);
  const bool simple = tf::is_simple(f);
  const auto counts = tf::apply_w(t, f, o.jobs);
  bool trade_ok = true;
  for (auto c : counts.counts) trade_ok = trade_ok && c == 0;
  const bool halving_ok = tf::is_halving(f);

  std::cout << "v=" << f.v() << " k=" << f.k() << " t=" << t << "\n";
  std::cout << "support=" << f.support_size() << " volume=" << vol.value
            << " balanced=" << (vol.balanced ? "yes" : "no") << " simple=" << (simple ? "yes" : "no")
            << " foundation=" << tf::foundation(f).size() << "\n";
  std::cout << "is_trade=" << (trade_ok ? "yes" : "no") << "\n";

  bool design_ok = false;
  if (o.lambda > 0) {
    design_ok = tf::is_design(t, o.lambda, f);
    std::cout << "is_design(lambda=" << o.lambda << ")=" << (design_ok ? "yes" : "no") << "\n";
  }
  std::cout << "is_halving=" << (halving_ok ? "yes" : "no") << "\n";

  bool pass = false;
  std::string property;
  if (o.halving) {
    property = "halving";
    pass = halving_ok;
    if (!pass) {
      const std::int64_t total = tf::binomial(f.v(), f.k());
      if (static_cast<std::int64_t>(f.support_size()) != total) {
        for (std::int64_t r = 0; r < total; ++r) {
          const tf::Block b = tf::unrank_lex(r, f.v(), f.k());
          if (f.coeff(b) == 0) {
            std::cout << "first_missing_block=";
            for (int x : b) std::cout << ' ' << x + (o.one_based ? 1 : 0);
            std::cout << "\n";
            break;
          }
        }
      } else if (!simple) {
        for (const auto& [b, c] : f.entries()) {
          if (c != 1 && c != -1) {
            std::cout << "non_unit_coefficient=" << c << " at";
            for (int x : b) std::cout << ' ' << x + (o.one_based ? 1 : 0);
            std::cout << "\n";
            break;
          }
        }
      } else if (auto viol = tf::first_violation(2, 0, f)) {
        std::cout << "violated_t_subset=";
        for (int x : viol->first) std::cout << ' ' << x + (o.one_based ? 1 : 0);
        std::cout << " count=" << viol->second << "\n";
      }
    }
  } else if (o.lambda > 0) {
    property = "design";
    pass = design_ok;
  } else {
    property = "trade";
    pass = trade_ok;
  }
  if ((property == "trade" || property == "design") && !pass) {
    if (auto viol = tf::first_violation(t, property == "design" ? o.lambda : 0, f)) {
      std::cout << "violated_t_subset=";
      for (int x : viol->first) std::cout << ' ' << x + (o.one_based ? 1 : 0);
      std::cout << " count=" << viol->second << "\n";
    }
  }
  std::cout << "result=" << (pass ? "PASS" : "FAIL") << " property=" << property << "\n";
  return pass ? 0 : 1;
}

int run_sts(int order, const std::string& out, bool one_based) {
  const tf::TripleSystem ts = tf::sts_generate(order);
  std::ostringstream body;
  tf::write_sts(body, ts, one_based);
  emit(out, body.str());
  return 0;
}

int run_basis(int t, int k, int v, bool check_conjectures, std::int64_t dense_cap, const std::string& out) {
  const tf::StandardBasis basis = tf::standard_basis(t, k, v, dense_cap);
  nlohmann::ordered_json j;
  j["t"] = t;
  j["k"] = k;
  j["v"] = v;
  j["num_rows"] = tf::binomial(v, t);
  j["num_block_columns"] = tf::binomial(v, k);
  j["num_basis_columns"] = basis.matrix.cols();
  j["column_permutation"] = basis.column_permutation;
  if (check_conjectures) {
    const tf::ConjectureReport rep = tf::probe_conjectures(basis);
    j["sign_constant_rows"] = rep.sign_constant_rows;
    j["violations"] = rep.violations;
    if (rep.nowhere_zero_row.has_value()) {
      j["nowhere_zero_row"] = *rep.nowhere_zero_row;
    } else {
      j["nowhere_zero_row"] = nullptr;
    }
  }
  emit(out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"halving and trade-partition toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a halving or partition of C(X, 3)");
  gen_cmd->add_option("--method,-m", gen.method, "ak | v10 | partition | structured | hillclimb")
      ->required();
  gen_cmd->add_option("--v", gen.v, "ground set size (congruent to 2 mod 4)")->required();
  gen_cmd->add_option("--seed", gen.seed, "random seed (hillclimb, randomized circuit)");
  gen_cmd->add_flag("--decompose", gen.decompose, "emit constituent trades instead of the sum");
  gen_cmd->add_option("--out,-o", gen.out, "output file (default stdout)");
  gen_cmd->add_flag("--one-based", gen.one_based, "emit 1-based point labels");
  gen_cmd->add_option("--format", gen.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  gen_cmd->add_option("--sts", gen.sts_file, "triple system file (structured method)");
  gen_cmd->add_flag("--random-circuit", gen.random_circuit, "randomize the Eulerian circuit (partition method)");
  gen_cmd->add_option("--max-iters", gen.max_iters, "iteration cap (ak, hillclimb per restart)");
  gen_cmd->add_option("--restarts", gen.restarts, "restart limit (hillclimb)");
  gen_cmd->add_option("--jobs", gen.jobs, "worker threads (hillclimb)");

  VerifyOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "check trade / design / halving properties of a file");
  ver_cmd->add_option("file", ver.file, "collection file, '-' for stdin");
  auto* t_opt = ver_cmd->add_option("--t", ver.t, "subset size to count (default: header t)");
  ver_cmd->add_option("--lambda", ver.lambda, "check for a design with this index");
  ver_cmd->add_flag("--halving", ver.halving, "check the halving property");
  ver_cmd->add_flag("--one-based", ver.one_based, "input uses 1-based point labels");
  ver_cmd->add_option("--jobs", ver.jobs, "worker threads for counting");

  int sts_order = 0;
  std::string sts_out;
  bool sts_one_based = false;
  auto* sts_cmd = app.add_subcommand("sts", "emit a Steiner triple system");
  sts_cmd->add_option("--order", sts_order, "number of points (1 or 3 mod 6)")->required();
  sts_cmd->add_option("--out,-o", sts_out, "output file (default stdout)");
  sts_cmd->add_flag("--one-based", sts_one_based, "emit 1-based point labels");

  int b_t = 2, b_k = 3, b_v = 0;
  bool b_conj = false;
  std::int64_t b_cap = 10000;
  std::string b_out;
  auto* basis_cmd = app.add_subcommand("basis", "kernel basis of the inclusion operator");
  basis_cmd->add_option("--t", b_t, "subset size (rows)");
  basis_cmd->add_option("--k", b_k, "block size (columns)");
  basis_cmd->add_option("--v", b_v, "ground set size")->required();
  basis_cmd->add_flag("--check-conjectures", b_conj, "report sign structure of the basis");
  basis_cmd->add_option("--dense-cap", b_cap, "max dense columns (default 10000)");
  basis_cmd->add_option("--out,-o", b_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (ver_cmd->parsed()) {
      ver.t_given = t_opt->count() > 0;
      return run_verify(ver);
    }
    if (sts_cmd->parsed()) return run_sts(sts_order, sts_out, sts_one_based);
    if (basis_cmd->parsed()) return run_basis(b_t, b_k, b_v, b_conj, b_cap, b_out);
  } catch (const tf::search_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
