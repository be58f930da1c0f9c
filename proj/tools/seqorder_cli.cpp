// seqorder: construct and verify sequence-space order structures from the
// command line. Exit codes: 0 success, 1 verification failure, 2 bad input.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sm/encoder.hpp"
#include "sm/errors.hpp"
#include "sm/lattice.hpp"
#include "sm/lorentz.hpp"
#include "sm/norms.hpp"
#include "sm/orlicz.hpp"
#include "sm/pwl.hpp"
#include "sm/submult.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalConfig {
  std::string output_dir;
  int threads = 1;
  unsigned seed = 0;
};

fs::path out_path(const GlobalConfig& cfg, const std::string& name) {
  fs::path dir = cfg.output_dir.empty() ? fs::path(".") : fs::path(cfg.output_dir);
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw sm::ParameterError("cannot write " + path.string());
  out << content;
}

sm::PwlFunction load_pwl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw sm::ParameterError("cannot open " + path);
  return sm::pwl_from_csv(in);
}

int cmd_extend(const GlobalConfig& cfg, const std::string& input,
               const std::string& slow_to, const std::string& eps,
               const std::string& fast_to, int grid) {
  sm::PwlFunction f =
      input.empty() ? sm::PwlFunction::identity_seed() : load_pwl(input);
  if (!slow_to.empty())
    f = sm::extend_slow_to(f, sm::parse_rat(slow_to),
                           eps.empty() ? sm::Rat(1) : sm::parse_rat(eps));
  if (!fast_to.empty()) f = sm::extend_fast_to(f, sm::parse_rat(fast_to));
  write_file(out_path(cfg, "extended.csv"), sm::pwl_to_csv(f));

  sm::SubmultReport report =
      sm::check_submultiplicative(f, grid, 32, cfg.threads);
  nlohmann::json doc{{"ok", report.ok},
                     {"pairs_checked", report.pairs_checked},
                     {"domain_end", sm::rat_str(f.domain_end())},
                     {"final_value", sm::rat_str(f.values().back())}};
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"x", sm::rat_str(v.x)},
                          {"y", sm::rat_str(v.y)},
                          {"defect", sm::rat_str(v.defect)}});
  doc["violations"] = std::move(violations);
  write_file(out_path(cfg, "extend_report.json"), doc.dump(2) + "\n");
  std::cout << (report.ok ? "submultiplicative: ok" : "violations found")
            << " (" << report.pairs_checked << " pairs)\n";
  return report.ok ? 0 : 1;
}

int cmd_incomparable(const GlobalConfig& cfg, int count, long requests) {
  sm::FamilyState family =
      sm::build_incomparable_family(count, static_cast<int>(requests));
  sm::export_family(family, (cfg.output_dir.empty() ? "." : cfg.output_dir));
  bool ok = true;
  for (const auto& req : family.request_log)
    if (!(req.ratio > req.target)) ok = false;
  std::cout << "served " << family.request_log.size() << " requests, "
            << (ok ? "all witnessed" : "witness check failed") << "\n";
  return ok ? 0 : 1;
}

int cmd_powerset(const GlobalConfig& cfg, int n, const std::string& p,
                 long threshold) {
  sm::Rat pr = sm::parse_rat(p);
  sm::FamilyState family =
      sm::build_incomparable_family(std::max(n, 2), static_cast<int>(threshold));
  sm::DominationMatrix matrix = sm::powerset_diagram(family, n, pr, threshold);
  write_file(out_path(cfg, "powerset_matrix.json"), matrix.to_json() + "\n");

  // Expected order: subset inclusion on the nonempty subsets, with an
  // appended top node when p > 1.
  const bool with_top = pr > 1;
  std::vector<std::string> names = sm::powerset_labels(n, with_top);
  std::vector<std::pair<int, int>> covers;
  auto subsets = names;  // node i corresponds to names[i]
  const std::size_t node_count = names.size();
  std::vector<unsigned> masks;
  {
    // Rebuild subset masks in the label order (size then lex).
    std::vector<std::vector<int>> list;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(i + 1);
      list.push_back(std::move(s));
    }
    std::sort(list.begin(), list.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
              });
    for (const auto& s : list) {
      unsigned mask = 0;
      for (int i : s) mask |= 1u << (i - 1);
      masks.push_back(mask);
    }
  }
  bool ok = true;
  int bad_i = -1, bad_j = -1;
  for (std::size_t i = 0; i < node_count && ok; ++i)
    for (std::size_t j = 0; j < node_count && ok; ++j) {
      bool expected;
      if (with_top && (i + 1 == node_count || j + 1 == node_count))
        expected = (j + 1 == node_count);
      else
        expected = (masks[i] & ~masks[j]) == 0;
      if (matrix.dominates(i, j) != expected) {
        ok = false;
        bad_i = static_cast<int>(i);
        bad_j = static_cast<int>(j);
      }
    }
  nlohmann::json verdict{{"order_isomorphic", ok}};
  if (!ok) verdict["violating_pair"] = {names[bad_i], names[bad_j]};
  write_file(out_path(cfg, "powerset_verdict.json"), verdict.dump(2) + "\n");
  std::cout << (ok ? "order-isomorphic to the expected diagram"
                   : "order mismatch at (" + names[bad_i] + ", " +
                         names[bad_j] + ")")
            << "\n";
  return ok ? 0 : 1;
}

int cmd_encode(const GlobalConfig& cfg, const std::string& lattice_path,
               int depth, const std::string& tau, const std::string& r,
               const std::string& p) {
  sm::FiniteLattice lattice = sm::parse_lattice_file(lattice_path);
  sm::OrliczParams params{sm::parse_rat(tau), sm::parse_rat(r),
                          sm::parse_rat(p)};
  sm::EncoderState state = sm::run_encoder(lattice, params, depth);
  write_file(out_path(cfg, "encoder_state.json"),
             sm::encoder_state_to_json(state) + "\n");

  sm::PropertiesReport report = sm::verify_properties(state);
  sm::DominationMatrix matrix = sm::encoder_domination_matrix(state);
  std::vector<int> identity(lattice.size());
  for (std::size_t i = 0; i < identity.size(); ++i)
    identity[i] = static_cast<int>(i);
  sm::IsoReport iso = sm::is_order_isomorphic(lattice, matrix, identity);

  nlohmann::json doc{{"property_i", report.prop_i},
                     {"property_ii", report.prop_ii},
                     {"property_iii", report.prop_iii},
                     {"property_iv", report.prop_iv},
                     {"balanced", report.balanced},
                     {"order_isomorphic", iso.ok},
                     {"failures", report.failures},
                     {"horizon_bits",
                      mpz_sizeinbase(state.horizon.get_mpz_t(), 2)}};
  write_file(out_path(cfg, "encoder_report.json"), doc.dump(2) + "\n");
  const bool ok = report.ok && iso.ok;
  std::cout << (ok ? "all properties verified; order-isomorphic to the lattice"
                   : "verification failed (see encoder_report.json)")
            << "\n";
  return ok ? 0 : 1;
}

int cmd_norm(const GlobalConfig& cfg, const std::string& kind,
             const std::string& vectors_path, const std::string& tau,
             const std::string& r, const std::string& p, long horizon) {
  (void)cfg;
  sm::NormPtr norm;
  if (kind == "lp") {
    norm = sm::lp_norm(sm::to_double(sm::parse_rat(p)));
  } else if (kind == "orlicz") {
    sm::OrliczParams params{sm::parse_rat(tau), sm::parse_rat(r),
                            sm::parse_rat(p)};
    norm = sm::orlicz_sym_norm(
        sm::OrliczFunction(params, sm::Pattern::all_ones(sm::Int(horizon))));
  } else if (kind == "lorentz") {
    sm::PwlFunction f = sm::extend_slow_to(
        sm::PwlFunction::identity_seed(),
        sm::Rat(static_cast<unsigned long>(std::max(horizon, 4L))), sm::Rat(1));
    norm = sm::lorentz_sym_norm(sm::weights_from_fundamental(
        f, static_cast<std::size_t>(horizon), sm::parse_rat(p)));
  } else {
    throw sm::ParameterError("unknown norm kind: " + kind);
  }
  std::ifstream in(vectors_path);
  if (!in) throw sm::ParameterError("cannot open " + vectors_path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> a;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) a.push_back(std::stod(cell));
    std::cout << norm->label() << "(" << line << ") = " << norm->eval(a)
              << "\n";
  }
  return 0;
}

int cmd_chain(const GlobalConfig& cfg, const std::string& p_list_arg) {
  std::vector<double> p_list;
  std::stringstream ss(p_list_arg);
  std::string cell;
  while (std::getline(ss, cell, ',')) p_list.push_back(std::stod(cell));
  if (p_list.size() < 2 || p_list.front() < 2.0 || p_list.back() > 3.0)
    throw sm::ParameterError("chain expects an increasing p-list inside [2,3]");

  const std::size_t n = p_list.size();
  nlohmann::json doc;
  doc["p_list"] = p_list;
  nlohmann::json supports = nlohmann::json::array();
  bool ok = true;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<double> c(n, 0.0);
    int members = __builtin_popcount(mask);
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i))
        c[i] = std::pow(1.0 / members, 1.0 / p_list.front());
    sm::LpSumClassification cls = sm::classify_lp_sum(c, p_list);
    int expected = __builtin_ctz(mask);
    if (cls.index != expected) ok = false;
    supports.push_back({{"mask", mask},
                        {"index", cls.index},
                        {"lower", cls.lower},
                        {"upper", cls.upper}});
  }
  doc["supports"] = std::move(supports);

  // The induced order on the ell_{p_beta} nodes is the reversed chain:
  // larger exponents are dominated by smaller ones with constant 1.
  nlohmann::json order = nlohmann::json::array();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sm::DominationEstimate forward = sm::estimate_domination(
        *sm::lp_norm(p_list[i + 1]), *sm::lp_norm(p_list[i]),
        {.seed = cfg.seed});
    sm::DominationEstimate backward = sm::estimate_domination(
        *sm::lp_norm(p_list[i]), *sm::lp_norm(p_list[i + 1]),
        {.seed = cfg.seed, .max_block = 4096});
    order.push_back({{"upper", p_list[i + 1]},
                     {"lower", p_list[i]},
                     {"constant", forward.constant},
                     {"reverse_growth", backward.constant}});
    if (forward.constant > 1.0 + 1e-9 || backward.constant < 1.1) ok = false;
  }
  doc["reversed_chain"] = std::move(order);
  doc["ok"] = ok;
  write_file(out_path(cfg, "chain_report.json"), doc.dump(2) + "\n");
  std::cout << (ok ? "reversed chain verified" : "chain verification failed")
            << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seqorder: exact construction and verification of sequence-space order structures"};
  app.require_subcommand(1);

  GlobalConfig cfg;
  if (const char* env = std::getenv("SEQORDER_OUTPUT_DIR")) cfg.output_dir = env;
  app.add_option("--output-dir", cfg.output_dir, "output directory");
  app.add_option("--threads", cfg.threads, "worker threads for verifiers");
  app.add_option("--seed", cfg.seed, "sampler seed");

  std::string input, slow_to, eps, fast_to;
  int grid = 256;
  CLI::App* extend = app.add_subcommand("extend", "extend a PWL function");
  extend->add_option("--input", input, "input CSV (default: identity on [1,2])");
  extend->add_option("--slow-to", slow_to, "slow-extend to this abscissa");
  extend->add_option("--eps", eps, "ordinate budget for --slow-to (rational)");
  extend->add_option("--fast-to", fast_to, "fast-extend past this value");
  extend->add_option("--grid", grid, "grid resolution for the checker");

  int count = 2;
  long requests = 1;
  CLI::App* incomparable =
      app.add_subcommand("incomparable", "build an incomparable family");
  incomparable->add_option("--count", count, "family size m")->required();
  incomparable->add_option("--requests", requests, "request bound")->required();

  int pn = 2;
  std::string pp = "1";
  long threshold = 1;
  CLI::App* powerset =
      app.add_subcommand("powerset", "power-set domination diagram");
  powerset->add_option("--n", pn, "ground-set size")->required();
  powerset->add_option("--p", pp, "Lorentz exponent (rational)");
  powerset->add_option("--threshold", threshold, "incomparability ratio");

  std::string lattice_path, tau = "1/2", r = "2", p = "5/2";
  int depth = 6;
  CLI::App* encode = app.add_subcommand("encode", "encode a finite lattice");
  encode->add_option("--lattice", lattice_path, "lattice JSON file")->required();
  encode->add_option("--depth", depth, "request-schedule depth");
  encode->add_option("--tau", tau, "tau (rational)");
  encode->add_option("--r", r, "r (rational)");
  encode->add_option("--p", p, "p (rational)");

  std::string kind = "lp", vectors_path;
  long horizon = 64;
  CLI::App* norm = app.add_subcommand("norm", "evaluate norms on vectors");
  norm->add_option("--kind", kind, "lp | lorentz | orlicz");
  norm->add_option("--vectors", vectors_path, "CSV file, one vector per line")
      ->required();
  norm->add_option("--tau", tau, "tau (rational)");
  norm->add_option("--r", r, "r (rational)");
  norm->add_option("--p", p, "exponent (rational)");
  norm->add_option("--horizon", horizon, "norm horizon");

  std::string p_list = "2,2.25,2.5,2.75,3";
  CLI::App* chain = app.add_subcommand("chain", "classify an lp-sum chain");
  chain->add_option("--p-list", p_list, "increasing exponents in [2,3]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extend->parsed())
      return cmd_extend(cfg, input, slow_to, eps, fast_to, grid);
    if (incomparable->parsed()) return cmd_incomparable(cfg, count, requests);
    if (powerset->parsed()) return cmd_powerset(cfg, pn, pp, threshold);
    if (encode->parsed())
      return cmd_encode(cfg, lattice_path, depth, tau, r, p);
    if (norm->parsed())
      return cmd_norm(cfg, kind, vectors_path, tau, r, p, horizon);
    if (chain->parsed()) return cmd_chain(cfg, p_list);
  } catch (const sm::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const sm::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const sm::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
