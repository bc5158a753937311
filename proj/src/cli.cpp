#include "mixmin/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mixmin/bounds.hpp"
#include "mixmin/entropy.hpp"
#include "mixmin/fastmix.hpp"
#include "mixmin/optimize.hpp"
#include "mixmin/pmf.hpp"
#include "mixmin/relaxation.hpp"
#include "mixmin/schemes.hpp"
#include "parallel.hpp"

namespace fs = std::filesystem;

namespace mixmin::cli {

namespace {

ModelParams make_params(double p, int k) {
  if (!(p >= 0.0 && p <= 0.5))
    throw std::invalid_argument("--p must lie in [0, 0.5]");
  ModelParams params{p, k};
  params.validate();
  return params;
}

std::string join_alpha(const std::vector<std::int64_t>& alpha) {
  std::string s;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(alpha[i]);
  }
  return s;
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

// Grid with exact endpoints; interior points are the usual linear fill.
double grid_point(double lo, double hi, int steps, int i) {
  if (i == 0) return lo;
  if (i == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
}

double eval_curve(const std::string& curve, const ModelParams& params) {
  if (curve == "uniform") return uniform_mi_closed_form(params);
  if (curve == "binary") return binary_mi_closed_form(params);
  if (curve == "linear")
    return mutual_information(linear_scheme(params.K), params);
  if (curve == "blu") return blu_search(params).mi;
  if (curve == "greedy") return greedy_search(params).mi;
  if (curve == "optimal") return brute_force_optimal(params).mi;
  if (curve == "bound_geometric") return geometric_bound_closed_form(params);
  if (curve == "bound_trivial") return trivial_lower_bound(params);
  throw std::invalid_argument("unknown curve '" + curve + "'");
}

const std::vector<std::string> kCurveNames = {
    "uniform", "binary",  "linear",          "blu",
    "greedy",  "optimal", "bound_geometric", "bound_trivial"};

}  // namespace

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  int e = static_cast<int>(std::floor(std::log10(std::abs(v))));
  char buf[64];
  if (e >= -4 && e <= 11)
    std::snprintf(buf, sizeof buf, "%.*f", 11 - e, v);
  else
    std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"exact mutual information for integer-mixed Bernoulli noise"};
  app.name("mixmin");
  app.require_subcommand(1);

  // mi: evaluate one mixing vector.
  struct {
    std::vector<std::int64_t> alpha;
    double p = 0.0;
    int k = 0;
  } mi_opt;
  auto* mi_cmd = app.add_subcommand("mi", "I(X; Y) for an explicit vector");
  mi_cmd->add_option("--alpha", mi_opt.alpha,
                     "mixing coefficients, alpha_0 first")
      ->delimiter(',')
      ->required();
  mi_cmd->add_option("--p", mi_opt.p, "Bernoulli parameter")->required();
  auto* mi_k = mi_cmd->add_option("--K", mi_opt.k, "number of noise draws");
  mi_cmd->callback([&] {
    MixingScheme scheme{mi_opt.alpha};
    scheme.validate();
    if (mi_k->count() && mi_opt.k != scheme.K())
      throw std::invalid_argument(
          "--alpha implies K=" + std::to_string(scheme.K()) +
          " but --K says " + std::to_string(mi_opt.k));
    ModelParams params = make_params(mi_opt.p, scheme.K());
    out << format_value(mutual_information(scheme, params)) << "\n";
  });

  // scheme: evaluate a named family.
  struct {
    std::string name;
    std::string method = "direct";
    double p = 0.0;
    int k = 0;
  } scheme_opt;
  auto* scheme_cmd = app.add_subcommand("scheme", "I(X; Y) for a named scheme");
  scheme_cmd->add_option("--name", scheme_opt.name, "uniform|binary|linear|blu")
      ->required();
  scheme_cmd->add_option("--K", scheme_opt.k, "number of noise draws")
      ->required();
  scheme_cmd->add_option("--p", scheme_opt.p, "Bernoulli parameter")
      ->required();
  scheme_cmd->add_option("--method", scheme_opt.method,
                         "closed|direct|recursion");
  scheme_cmd->callback([&] {
    ModelParams params = make_params(scheme_opt.p, scheme_opt.k);
    out << format_value(scheme_mi(parse_scheme_name(scheme_opt.name), params,
                                  parse_mi_method(scheme_opt.method)))
        << "\n";
  });

  // greedy / optimal: searches over mixing vectors.
  struct {
    double p = 0.0;
    int k = 0;
  } greedy_opt, optimal_opt, blu_opt;
  auto add_search_flags = [](CLI::App* cmd, auto& opt) {
    cmd->add_option("--K", opt.k, "number of noise draws")->required();
    cmd->add_option("--p", opt.p, "Bernoulli parameter")->required();
  };

  auto* greedy_cmd =
      app.add_subcommand("greedy", "greedy coefficient construction");
  add_search_flags(greedy_cmd, greedy_opt);
  greedy_cmd->callback([&] {
    SearchResult r = greedy_search(make_params(greedy_opt.p, greedy_opt.k));
    out << "alpha " << join_alpha(r.scheme.alpha) << "\n"
        << "mi " << format_value(r.mi) << "\n"
        << "nodes " << r.nodes_explored << "\n";
  });

  auto* optimal_cmd =
      app.add_subcommand("optimal", "exhaustive canonical search");
  add_search_flags(optimal_cmd, optimal_opt);
  optimal_cmd->callback([&] {
    SearchResult r =
        brute_force_optimal(make_params(optimal_opt.p, optimal_opt.k));
    out << "alpha " << join_alpha(r.scheme.alpha) << "\n"
        << "mi " << format_value(r.mi) << "\n"
        << "nodes " << r.nodes_explored << "\n";
  });

  auto* blu_cmd = app.add_subcommand("blu", "best block-linear-unary split");
  add_search_flags(blu_cmd, blu_opt);
  blu_cmd->callback([&] {
    BluSearchResult r = blu_search(make_params(blu_opt.p, blu_opt.k));
    out << "U " << r.u_star << "\n"
        << "L " << r.l_star << "\n"
        << "mi " << format_value(r.mi) << "\n";
  });

  // bound: closed-form lower bounds.
  struct {
    std::string kind;
    double p = 0.0;
    int k = 0;
  } bound_opt;
  auto* bound_cmd = app.add_subcommand("bound", "scheme-independent bounds");
  bound_cmd->add_option("--kind", bound_opt.kind, "geometric|trivial")
      ->required();
  bound_cmd->add_option("--K", bound_opt.k, "number of noise draws")
      ->required();
  bound_cmd->add_option("--p", bound_opt.p, "Bernoulli parameter")->required();
  bound_cmd->callback([&] {
    ModelParams params = make_params(bound_opt.p, bound_opt.k);
    double v;
    if (bound_opt.kind == "geometric")
      v = geometric_bound_closed_form(params);
    else if (bound_opt.kind == "trivial")
      v = trivial_lower_bound(params);
    else
      throw std::invalid_argument("unknown bound kind '" + bound_opt.kind +
                                  "'");
    out << format_value(v) << "\n";
  });

  // pmf: noise distribution table.
  struct {
    std::vector<std::int64_t> alpha;
    std::string name;
    std::string kind;
    double p = 0.0;
    int k = 0;
  } pmf_opt;
  auto* pmf_cmd = app.add_subcommand("pmf", "noise pmf as a support/mass table");
  auto* pmf_alpha = pmf_cmd->add_option("--alpha", pmf_opt.alpha,
                                        "mixing coefficients, alpha_0 first")
                        ->delimiter(',');
  auto* pmf_name = pmf_cmd->add_option(
      "--name", pmf_opt.name, "uniform|binary|linear|blu|greedy");
  auto* pmf_kind =
      pmf_cmd->add_option("--kind", pmf_opt.kind, "geometric (relaxed pmf)");
  auto* pmf_k = pmf_cmd->add_option("--K", pmf_opt.k, "number of noise draws");
  pmf_cmd->add_option("--p", pmf_opt.p, "Bernoulli parameter")->required();
  pmf_cmd->callback([&] {
    int sources = (pmf_alpha->count() ? 1 : 0) + (pmf_name->count() ? 1 : 0) +
                  (pmf_kind->count() ? 1 : 0);
    if (sources != 1)
      throw std::invalid_argument(
          "pmf needs exactly one of --alpha, --name, --kind");

    IntegerPmf pmf = IntegerPmf::point_mass(0);
    if (pmf_kind->count()) {
      if (pmf_opt.kind != "geometric")
        throw std::invalid_argument("unknown pmf kind '" + pmf_opt.kind + "'");
      if (!pmf_k->count())
        throw std::invalid_argument("--kind geometric requires --K");
      pmf = geometric_noise_pmf(make_params(pmf_opt.p, pmf_opt.k));
    } else {
      MixingScheme scheme;
      if (pmf_alpha->count()) {
        scheme = MixingScheme{pmf_opt.alpha};
        scheme.validate();
        if (pmf_k->count() && pmf_opt.k != scheme.K())
          throw std::invalid_argument(
              "--alpha implies K=" + std::to_string(scheme.K()) +
              " but --K says " + std::to_string(pmf_opt.k));
      } else {
        if (!pmf_k->count())
          throw std::invalid_argument("--name requires --K");
        ModelParams params = make_params(pmf_opt.p, pmf_opt.k);
        if (pmf_opt.name == "greedy") {
          scheme = greedy_search(params).scheme;
        } else if (pmf_opt.name == "blu") {
          BluSearchResult r = blu_search(params);
          scheme = blu_scheme(BluParams{params.K, r.u_star, r.l_star});
        } else {
          SchemeName name = parse_scheme_name(pmf_opt.name);
          scheme = name == SchemeName::uniform  ? uniform_scheme(params.K)
                   : name == SchemeName::binary ? binary_scheme(params.K)
                                                : linear_scheme(params.K);
        }
      }
      ModelParams params = make_params(pmf_opt.p, scheme.K());
      pmf = noise_pmf(scheme, params);
    }
    for (const auto& atom : pmf.atoms())
      out << atom.support << " " << format_value(atom.prob) << "\n";
  });

  // sweep: emit plot tables over a p grid.
  struct {
    int k = 0;
    double p_start = 0.0;
    double p_end = 0.5;
    int steps = 2;
    std::vector<std::string> curves;
    std::string format = "dat";
    std::string out_dir = ".";
  } sweep_opt;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate curves over p");
  sweep_cmd->add_option("--K", sweep_opt.k, "number of noise draws")
      ->required();
  sweep_cmd->add_option("--p-start", sweep_opt.p_start, "grid start")
      ->required();
  sweep_cmd->add_option("--p-end", sweep_opt.p_end, "grid end")->required();
  sweep_cmd->add_option("--steps", sweep_opt.steps, "grid size")->required();
  sweep_cmd->add_option("--curves", sweep_opt.curves, "comma list of curves")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--format", sweep_opt.format, "dat|csv");
  sweep_cmd->add_option("--out-dir", sweep_opt.out_dir, "output directory");
  sweep_cmd->callback([&] {
    if (!(sweep_opt.p_start >= 0.0 && sweep_opt.p_start < sweep_opt.p_end &&
          sweep_opt.p_end <= 0.5))
      throw std::invalid_argument("need 0 <= p-start < p-end <= 0.5");
    if (sweep_opt.steps < 2) throw std::invalid_argument("--steps must be >= 2");
    if (sweep_opt.format != "dat" && sweep_opt.format != "csv")
      throw std::invalid_argument("--format must be dat or csv");
    for (const auto& c : sweep_opt.curves) {
      if (std::find(kCurveNames.begin(), kCurveNames.end(), c) ==
          kCurveNames.end())
        throw std::invalid_argument("unknown curve '" + c + "'");
      if (std::count(sweep_opt.curves.begin(), sweep_opt.curves.end(), c) > 1)
        throw std::invalid_argument("duplicate curve '" + c + "'");
      if (c == "optimal" && sweep_opt.k > 8)
        throw std::invalid_argument(
            "the optimal curve is limited to K <= 8 (exhaustive search)");
    }
    ModelParams probe = make_params(sweep_opt.p_end, sweep_opt.k);
    (void)probe;

    fs::path dir(sweep_opt.out_dir);
    fs::create_directories(dir);

    std::vector<double> grid(static_cast<std::size_t>(sweep_opt.steps));
    for (int i = 0; i < sweep_opt.steps; ++i)
      grid[static_cast<std::size_t>(i)] =
          grid_point(sweep_opt.p_start, sweep_opt.p_end, sweep_opt.steps, i);

    for (const auto& curve : sweep_opt.curves) {
      std::vector<double> values(grid.size());
      detail::parallel_for(grid.size(), [&](std::size_t i) {
        values[i] = eval_curve(curve, ModelParams{grid[i], sweep_opt.k});
      });

      std::string body;
      const bool csv = sweep_opt.format == "csv";
      const char* eol = csv ? "\r\n" : "\n";
      if (csv) body += std::string("p,value") + eol;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        body += format_value(grid[i]);
        body += csv ? "," : " ";
        body += format_value(values[i]);
        body += eol;
      }

      fs::path file =
          dir / (curve + "_K" + std::to_string(sweep_opt.k) + "." +
                 sweep_opt.format);
      write_atomic(file, body);
      out << file.string() << "\n";
    }
  });

  // verify-kkt: print the certificate/bound/solver chain for one instance.
  struct {
    double p = 0.0;
    int k = 0;
    int n = 0;
    double tol = 1e-7;
  } kkt_opt;
  auto* kkt_cmd = app.add_subcommand(
      "verify-kkt", "certificate and solver check for the relaxation");
  kkt_cmd->add_option("--K", kkt_opt.k, "number of noise draws")->required();
  kkt_cmd->add_option("--p", kkt_opt.p, "Bernoulli parameter")->required();
  kkt_cmd->add_option("--n", kkt_opt.n, "truncation length")->required();
  kkt_cmd->add_option("--tol", kkt_opt.tol, "solver residual tolerance");
  kkt_cmd->callback([&] {
    ModelParams params = make_params(kkt_opt.p, kkt_opt.k);
    KktCertificate cert = kkt_certificate(params, kkt_opt.n);
    Bits pb = perturbation_bound(params, kkt_opt.n);

    // The solver starts from the hard-truncated candidate, renormalized.
    RelaxationInstance inst = kkt_candidate(params, kkt_opt.n);
    std::vector<double> qc = inst.q;
    qc.back() = 0.0;
    double inner = std::accumulate(qc.begin() + 1, qc.end() - 1, 0.0);
    for (std::size_t j = 1; j + 1 < qc.size(); ++j)
      qc[j] *= (1.0 - qc.front()) / inner;
    Bits candidate = relaxed_objective(qc, params);

    SolveResult solved =
        numeric_relaxation_solve(params, kkt_opt.n, kkt_opt.tol);
    bool sandwich =
        pb - 1e-9 <= solved.objective && solved.objective <= candidate + 1e-9;

    out << "v1 " << format_value(cert.v1) << "\n"
        << "v2 " << format_value(cert.v2) << "\n"
        << "v3 " << format_value(cert.v3) << "\n"
        << "max_kkt_residual " << format_value(cert.max_residual) << "\n"
        << "perturbation_bound " << format_value(pb) << "\n"
        << "bound_limit " << format_value(binary_entropy(params.p) + pb)
        << "\n"
        << "geometric_bound "
        << format_value(geometric_bound_closed_form(params)) << "\n"
        << "candidate_objective " << format_value(candidate) << "\n"
        << "solver_objective " << format_value(solved.objective) << "\n"
        << "solver_iterations " << solved.iterations << "\n"
        << "solver_residual " << format_value(solved.residual) << "\n"
        << "sandwich_ok " << (sandwich ? "true" : "false") << "\n";
  });

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("mixmin");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace mixmin::cli
