#include "CLI11.hpp"

#include "gammaops/errors.hpp"
#include "gammaops/exact_moments.hpp"
#include "gammaops/operator_eval.hpp"
#include "gammaops/params.hpp"
#include "gammaops/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace gammaops;

// Malformed declarative input (ranges, ladders) -> exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const Rational& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// "a:b" -> doubling ladder a, 2a, ..., b.
std::vector<int> parse_ladder(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw ConfigError("ladder must look like START:END, got '" + spec + "'");
  int a = 0, b = 0;
  try {
    a = std::stoi(spec.substr(0, colon));
    b = std::stoi(spec.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("ladder endpoints must be integers, got '" + spec + "'");
  }
  if (a < 1 || b < a)
    throw ConfigError("ladder needs 1 <= START <= END, got '" + spec + "'");
  std::vector<int> ladder;
  for (int n = a; n <= b; n *= 2)
    ladder.push_back(n);
  if (ladder.back() != b)
    throw ConfigError("ladder end " + std::to_string(b) + " is not START times a power of two");
  return ladder;
}

// "a..b" or "a" -> inclusive list of moment orders.
std::vector<int> parse_orders(const std::string& spec) {
  const auto dots = spec.find("..");
  try {
    if (dots == std::string::npos)
      return {std::stoi(spec)};
    const int a = std::stoi(spec.substr(0, dots));
    const int b = std::stoi(spec.substr(dots + 2));
    if (a < 0 || b < a)
      throw ConfigError("moment range needs 0 <= A <= B, got '" + spec + "'");
    std::vector<int> ms;
    for (int m = a; m <= b; ++m)
      ms.push_back(m);
    return ms;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("moment range must look like A..B or M, got '" + spec + "'");
  }
}

struct Output {
  std::string out;
  std::string format = "human";
};

std::string resolve_out(const std::string& out) {
  if (out.empty() || out.front() == '/')
    return out;
  if (const char* dir = std::getenv("GAMMAOPS_OUT_DIR"); dir && *dir)
    return std::string(dir) + "/" + out;
  return out;
}

// Payload goes to stdout or to the file; run metadata (timestamp, argv) goes
// to a sidecar so the data file stays byte-identical across runs.
void emit(const Output& o, const std::string& payload, const std::string& command_line) {
  const std::string path = resolve_out(o.out);
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  {
    std::ofstream f(path, std::ios::binary);
    if (!f)
      throw Error("cannot open output file '" + path + "'");
    f << payload;
  }
  std::ofstream meta(path + ".meta");
  if (meta) {
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    meta << "command: " << command_line << "\n"
         << "generated: " << stamp << "\n";
  }
}

struct QuadFlags {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  int node_budget = 200000;
  std::string split = "mode";

  QuadratureConfig config() const {
    QuadratureConfig q;
    q.rel_tolerance = rel_tol;
    q.abs_tolerance = abs_tol;
    q.node_budget = node_budget;
    q.split_policy = split == "uniform" ? QuadratureConfig::SplitPolicy::uniform_panels
                                        : QuadratureConfig::SplitPolicy::mode_centered_panels;
    return q;
  }
};

void add_common(CLI::App* cmd, Output& out, QuadFlags& quad) {
  cmd->add_option("--out", out.out, "output file (default: stdout; relative paths are placed "
                                    "under $GAMMAOPS_OUT_DIR when set)");
  cmd->add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"csv", "human"}))
      ->capture_default_str();
  cmd->add_option("--rel-tol", quad.rel_tol, "quadrature relative tolerance")
      ->capture_default_str();
  cmd->add_option("--abs-tol", quad.abs_tol, "quadrature absolute tolerance")
      ->capture_default_str();
  cmd->add_option("--node-budget", quad.node_budget, "quadrature node budget")
      ->capture_default_str();
  cmd->add_option("--split", quad.split, "panel layout")
      ->check(CLI::IsMember({"mode", "uniform"}))
      ->capture_default_str();
}

// ---------------------------------------------------------------- moments

const std::vector<std::string> kMomentKinds = {"raw", "central", "mstar_raw", "mstar_central",
                                               "closed_form"};

Rational moment_by_kind(const std::string& kind, const OperatorParams& p, int m) {
  if (kind == "raw")
    return exact::raw_moment(p, m);
  if (kind == "central")
    return exact::central_moment(p, m);
  if (kind == "mstar_raw")
    return exact::mstar_raw_moment(p, m);
  if (kind == "mstar_central")
    return exact::mstar_central_moment(p, m);
  if (kind == "closed_form")
    return exact::closed_form_mstar_central(p, m);
  throw ConfigError("unknown moment kind '" + kind + "'");
}

int run_moments(const OperatorParams& p, const std::string& m_spec,
                std::vector<std::string> kinds, const Output& out, const std::string& cmdline) {
  validate(p);
  if (kinds.empty() || (kinds.size() == 1 && kinds[0] == "all"))
    kinds = kMomentKinds;
  std::sort(kinds.begin(), kinds.end(), [](const std::string& a, const std::string& b) {
    auto rank = [](const std::string& s) {
      return std::find(kMomentKinds.begin(), kMomentKinds.end(), s) - kMomentKinds.begin();
    };
    return rank(a) < rank(b);
  });
  const std::vector<int> ms = parse_orders(m_spec);

  // compute everything before emitting anything
  struct Row {
    int m;
    std::string kind;
    Rational value;
  };
  std::vector<Row> rows;
  for (const int m : ms)
    for (const std::string& kind : kinds)
      rows.push_back({m, kind, moment_by_kind(kind, p, m)});

  std::ostringstream os;
  if (out.format == "csv") {
    os << "n,k,r,m,kind,coefficient\n";
    for (const Row& row : rows)
      os << p.n << ',' << p.k << ',' << p.r << ',' << row.m << ',' << row.kind << ','
         << fmt(row.value) << '\n';
  } else {
    os << "moments of (n=" << p.n << ", k=" << p.k << ", r=" << p.r << ")\n";
    for (const Row& row : rows)
      os << "  m=" << row.m << "  " << row.kind << " = " << fmt(row.value) << "\n";
  }
  emit(out, os.str(), cmdline);
  return 0;
}

// ------------------------------------------------------------------- eval

int run_eval(const std::string& op, const std::string& fid, const OperatorParams& p,
             std::vector<double> xs, const QuadratureConfig& q, const Output& out,
             const std::string& cmdline) {
  const TestFunction& f = builtin(fid);
  std::sort(xs.begin(), xs.end());
  struct Row {
    double x;
    double value;
  };
  std::vector<Row> rows;
  for (const double x : xs) {
    double v = 0.0;
    if (op == "m")
      v = eval::apply(p, f, x, q);
    else if (op == "mstar")
      v = eval::apply_mstar(p, f, x, q);
    else if (op == "derivative")
      v = eval::apply_derivative(p, f, x, q);
    else if (op == "gn")
      v = eval::apply_gn(p.n, f, x, q);
    else
      throw ConfigError("unknown operator '" + op + "'");
    rows.push_back({x, v});
  }

  std::ostringstream os;
  if (out.format == "csv") {
    os << "operator,n,k,r,x,f,value\n";
    for (const Row& row : rows)
      os << op << ',' << p.n << ',' << p.k << ',' << p.r << ',' << fmt(row.x) << ',' << fid << ','
         << fmt(row.value) << '\n';
  } else {
    for (const Row& row : rows)
      os << op << "(n=" << p.n << ", k=" << p.k << ", r=" << p.r << ", f=" << fid
         << "; x=" << fmt(row.x) << ") = " << fmt(row.value) << "\n";
  }
  emit(out, os.str(), cmdline);
  return 0;
}

// ---------------------------------------------------------- voronovskaja

int run_voronovskaja(const std::string& fid, std::vector<double> xs, int k, int r,
                     const std::vector<int>& ladder, bool extrapolate, double conv_tol,
                     const QuadratureConfig& q, const Output& out, const std::string& cmdline) {
  const TestFunction& f = builtin(fid);
  std::sort(xs.begin(), xs.end());
  std::vector<verify::VoronovskajaReport> reports;
  for (const double x : xs)
    reports.push_back(
        verify::voronovskaja_sequence(f, x, k, r, ladder, q, {extrapolate, conv_tol}));

  std::ostringstream os;
  if (out.format == "csv") {
    os << "n,k,r,x,f,E_n,target,extrapolated\n";
    for (const auto& rep : reports)
      for (size_t i = 0; i < rep.n_values.size(); ++i)
        os << rep.n_values[i] << ',' << rep.k << ',' << rep.r << ',' << fmt(rep.x) << ','
           << rep.function_id << ',' << fmt(rep.e_values[i]) << ',' << fmt(rep.target) << ','
           << (rep.extrapolated ? fmt(*rep.extrapolated) : std::string()) << '\n';
  } else {
    for (const auto& rep : reports) {
      os << "Voronovskaja sequence: f=" << rep.function_id << ", k=" << rep.k << ", r=" << rep.r
         << ", x=" << fmt(rep.x) << "\n";
      for (size_t i = 0; i < rep.n_values.size(); ++i)
        os << "  n=" << rep.n_values[i] << "  E_n=" << fmt(rep.e_values[i]) << "\n";
      os << "  target=" << fmt(rep.target);
      if (rep.extrapolated)
        os << "  extrapolated=" << fmt(*rep.extrapolated)
           << "  converged=" << (rep.converged ? "true" : "false");
      os << "\n";
    }
  }
  emit(out, os.str(), cmdline);
  return 0;
}

// ----------------------------------------------------------------- bounds

int run_bounds(const std::string& theorem, std::vector<std::string> fids, std::vector<int> ns,
               std::vector<int> ks, std::vector<int> rs, std::vector<double> xs,
               const QuadratureConfig& q, const Output& out, const std::string& cmdline) {
  std::sort(fids.begin(), fids.end());
  std::sort(ns.begin(), ns.end());
  std::sort(ks.begin(), ks.end());
  std::sort(rs.begin(), rs.end());
  std::sort(xs.begin(), xs.end());

  std::vector<verify::BoundReport> reports;
  for (const std::string& fid : fids) {
    const TestFunction& f = builtin(fid);
    for (const int n : ns)
      for (const int k : ks)
        for (const int r : rs)
          for (const double x : xs) {
            if (theorem == "42" || theorem == "both")
              reports.push_back(verify::check_theorem_42(f, x, n, k, r, q));
            if (theorem == "43" || theorem == "both")
              reports.push_back(verify::check_theorem_43(f, x, n, k, r, q));
          }
  }

  bool violation = false;
  for (const auto& rep : reports)
    if (rep.theorem == "4.2" && !rep.holds)
      violation = true;

  std::ostringstream os;
  if (out.format == "csv") {
    os << "theorem,n,k,r,x,f,lhs,rhs,slack,holds,empirical_C\n";
    for (const auto& rep : reports)
      os << rep.theorem << ',' << rep.n << ',' << rep.k << ',' << rep.r << ',' << fmt(rep.x) << ','
         << rep.function_id << ',' << fmt(rep.lhs) << ',' << fmt(rep.rhs) << ',' << fmt(rep.slack)
         << ',' << (rep.holds ? "true" : "false") << ','
         << (rep.empirical_c ? fmt(*rep.empirical_c) : std::string()) << '\n';
  } else {
    for (const auto& rep : reports) {
      os << "thm " << rep.theorem << "  f=" << rep.function_id << " n=" << rep.n << " k=" << rep.k
         << " r=" << rep.r << " x=" << fmt(rep.x) << "  lhs=" << fmt(rep.lhs)
         << " rhs=" << fmt(rep.rhs) << " slack=" << fmt(rep.slack)
         << (rep.theorem == "4.2" ? (rep.holds ? "  holds" : "  VIOLATED") : "");
      if (rep.empirical_c)
        os << "  empirical_C=" << fmt(*rep.empirical_c);
      os << "\n";
    }
    os << (violation ? "asserted bound VIOLATED\n" : "all asserted bounds hold\n");
  }
  emit(out, os.str(), cmdline);
  return violation ? 5 : 0;
}

// ------------------------------------------------------------------ order

int run_order(const std::vector<int>& ms, int k, int r, const std::vector<int>& ladder,
              const Output& out, const std::string& cmdline) {
  std::vector<verify::OrderReport> reports;
  for (const int m : ms)
    reports.push_back(verify::check_order_lemma(m, k, r, ladder));

  std::ostringstream os;
  if (out.format == "csv") {
    os << "m,k,r,n,coefficient,scaled,ratio\n";
    for (const auto& rep : reports)
      for (const auto& row : rep.rows)
        os << rep.m << ',' << rep.k << ',' << rep.r << ',' << row.n << ',' << fmt(row.coefficient)
           << ',' << fmt(row.scaled) << ',' << (row.ratio ? fmt(*row.ratio) : std::string())
           << '\n';
  } else {
    for (const auto& rep : reports) {
      os << "order check m=" << rep.m << ", k=" << rep.k << ", r=" << rep.r
         << (rep.degenerate ? " (identically zero)" : "") << "\n";
      for (const auto& row : rep.rows)
        os << "  n=" << row.n << "  coefficient=" << fmt(row.coefficient)
           << "  scaled=" << fmt(row.scaled)
           << (row.ratio ? "  ratio=" + fmt(*row.ratio) : std::string()) << "\n";
      os << "  verdict: " << (rep.pass ? "pass" : "FAIL") << "\n";
    }
  }
  emit(out, os.str(), cmdline);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  std::string cmdline;
  for (int i = 0; i < argc; ++i)
    cmdline += std::string(i ? " " : "") + argv[i];

  CLI::App app{"Gamma-type positive linear operators: exact moments, quadrature evaluation, "
               "asymptotic limits and error-bound checks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "declarative experiment file (TOML; flags override)");

  Output out;
  QuadFlags quad;
  OperatorParams params;
  std::string fid = "exp-neg";
  std::vector<double> xs = {1.0};

  auto* moments = app.add_subcommand("moments", "exact rational moment coefficients");
  std::string m_spec = "0..4";
  std::vector<std::string> kinds = {"all"};
  moments->add_option("--n", params.n, "operator parameter n")->required();
  moments->add_option("--k", params.k, "operator parameter k")->required();
  moments->add_option("--r", params.r, "derivative order r")->capture_default_str();
  moments->add_option("--m", m_spec, "moment order or range A..B")->capture_default_str();
  moments->add_option("--kind", kinds, "moment kinds (raw, central, mstar_raw, mstar_central, closed_form, all)")
      ->delimiter(',');
  add_common(moments, out, quad);

  auto* evalc = app.add_subcommand("eval", "numeric operator evaluation");
  std::string op = "m";
  evalc->add_option("--operator", op, "m, mstar, derivative, or gn")
      ->check(CLI::IsMember({"m", "mstar", "derivative", "gn"}))
      ->capture_default_str();
  evalc->add_option("--f", fid, "builtin test function id")->required();
  evalc->add_option("--n", params.n, "operator parameter n")->required();
  evalc->add_option("--k", params.k, "operator parameter k")->capture_default_str();
  evalc->add_option("--r", params.r, "derivative order r")->capture_default_str();
  evalc->add_option("--x", xs, "evaluation points")->required()->delimiter(',');
  add_common(evalc, out, quad);

  auto* voro = app.add_subcommand("voronovskaja", "scaled-deviation sequence and extrapolation");
  std::string ladder_spec;
  int single_n = 0;
  int vk = 1, vr = 0;
  double conv_tol = 1e-2;
  voro->add_option("--f", fid, "builtin test function id")->required();
  voro->add_option("--x", xs, "evaluation points")->delimiter(',')->capture_default_str();
  voro->add_option("--k", vk, "operator parameter k")->capture_default_str();
  voro->add_option("--r", vr, "derivative order r")->capture_default_str();
  auto* lad_opt = voro->add_option("--ladder", ladder_spec, "doubling ladder START:END");
  auto* n_opt = voro->add_option("--n", single_n, "single n (no extrapolation)");
  lad_opt->excludes(n_opt);
  voro->add_option("--conv-tol", conv_tol, "|extrapolated - target| convergence threshold")
      ->capture_default_str();
  add_common(voro, out, quad);

  auto* bounds = app.add_subcommand("bounds", "error-bound checks for the direct theorems");
  std::string theorem = "both";
  std::vector<std::string> fids = {"exp-neg", "t-over-1pt"};
  std::vector<int> ns = {10, 20, 50, 100, 200};
  std::vector<int> ks = {1, 2};
  std::vector<int> rs = {0, 1};
  std::vector<double> bxs = {0.5, 1.0, 2.0};
  bounds->add_option("--theorem", theorem, "42, 43, or both")
      ->check(CLI::IsMember({"42", "43", "both"}))
      ->capture_default_str();
  bounds->add_option("--f", fids, "builtin test function ids")->delimiter(',');
  bounds->add_option("--n", ns, "n grid")->delimiter(',');
  bounds->add_option("--k", ks, "k grid")->delimiter(',');
  bounds->add_option("--r", rs, "r grid")->delimiter(',');
  bounds->add_option("--x", bxs, "x grid")->delimiter(',');
  add_common(bounds, out, quad);

  auto* order = app.add_subcommand("order", "central-moment decay-order check");
  std::vector<int> oms = {2, 3, 4};
  int ok = 1, orr = 0;
  std::string order_ladder = "20:320";
  order->add_option("--m", oms, "moment orders")->delimiter(',');
  order->add_option("--k", ok, "operator parameter k")->capture_default_str();
  order->add_option("--r", orr, "derivative order r")->capture_default_str();
  order->add_option("--ladder", order_ladder, "ladder START:END")->capture_default_str();
  add_common(order, out, quad);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (moments->parsed())
      return run_moments(params, m_spec, kinds, out, cmdline);
    if (evalc->parsed())
      return run_eval(op, fid, params, xs, quad.config(), out, cmdline);
    if (voro->parsed()) {
      std::vector<int> ladder;
      bool extrapolate = true;
      if (!ladder_spec.empty()) {
        ladder = parse_ladder(ladder_spec);
      } else if (single_n > 0) {
        ladder = {single_n};
        extrapolate = false;
      } else {
        throw ConfigError("voronovskaja needs either --ladder or --n");
      }
      return run_voronovskaja(fid, xs, vk, vr, ladder, extrapolate, conv_tol, quad.config(), out,
                              cmdline);
    }
    if (bounds->parsed())
      return run_bounds(theorem, fids, ns, ks, rs, bxs, quad.config(), out, cmdline);
    if (order->parsed())
      return run_order(oms, ok, orr, parse_ladder(order_ladder), out, cmdline);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 4;
  } catch (const ConstraintError& e) {
    std::cerr << "constraint error: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "constraint error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
