#include "cli.hpp"

#include "zeta2/asymptotics.hpp"
#include "zeta2/audit.hpp"
#include "zeta2/census.hpp"
#include "zeta2/error.hpp"
#include "zeta2/funceq.hpp"
#include "zeta2/parallel.hpp"
#include "zeta2/special.hpp"
#include "zeta2/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace zeta2::cli {

namespace {

constexpr int kDigits = 25;

// A cell is a decimal token (high-precision real), an integer, a flag or free text.
struct Number {
  std::string token;
};
using Cell = std::variant<Number, long, bool, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

Cell num(const Real& x) { return Number{mp::to_string(x, kDigits)}; }

std::string csv_field(const Cell& c) {
  if (const auto* n = std::get_if<Number>(&c)) return n->token;
  if (const auto* i = std::get_if<long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
}

// Reals travel as strings so that JSON carries the same 25 digits as CSV.
void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json doc;
  doc["command"] = t.command;
  doc["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Number>) obj[t.columns[i]] = v.token;
            else obj[t.columns[i]] = v;
          },
          row[i]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << "\n";
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Real> parse_reals(const std::string& text, mpfr_prec_t bits, const char* what) {
  std::vector<Real> out;
  for (const auto& item : split(text)) {
    try {
      out.emplace_back(item, bits);
    } catch (const Error&) {
      throw UsageError(std::string("malformed number '") + item + "' in " + what);
    }
  }
  if (out.empty()) throw UsageError(std::string("empty list for ") + what);
  return out;
}

Rect parse_rect(const std::string& text, mpfr_prec_t bits) {
  auto v = parse_reals(text, bits, "--rect");
  if (v.size() != 4) throw UsageError("--rect needs smin,smax,tmin,tmax");
  return Rect(std::move(v[0]), std::move(v[1]), std::move(v[2]), std::move(v[3]));
}

Real parse_real(const std::string& text, mpfr_prec_t bits, const char* what) {
  auto v = parse_reals(text, bits, what);
  if (v.size() != 1) throw UsageError(std::string(what) + " takes a single number");
  return std::move(v[0]);
}

struct Config {
  long precision_bits = PrecisionContext::kDefaultBits;
  int threads = 0;
  std::string format = "csv";
  std::string out_path;
  // command-specific
  std::string fn = "zeta";
  std::string s = "2";
  std::string target = "zeta2";
  std::string rect;
  std::string T;
  std::string U;
  std::string grid;
  std::string sigma = "0.5,0.75";
  std::string condition;
  double step = 0.5;
  int k = 2;
};

using EvalFn = std::function<Complex(const PrecisionContext&, const Complex&)>;

const std::map<std::string, EvalFn>& eval_table() {
  static const std::map<std::string, EvalFn> table = {
      {"zeta", [](const auto& c, const auto& s) { return zeta_deriv(c, DerivOrder(0), s); }},
      {"zeta1", [](const auto& c, const auto& s) { return zeta_deriv(c, DerivOrder(1), s); }},
      {"zeta2", [](const auto& c, const auto& s) { return zeta_deriv(c, DerivOrder(2), s); }},
      {"zp_over_z", [](const auto& c, const auto& s) { return log_deriv_ratio(c, RatioKind::zp_over_z, s); }},
      {"zpp_over_zp", [](const auto& c, const auto& s) { return log_deriv_ratio(c, RatioKind::zpp_over_zp, s); }},
      {"zpp_over_z", [](const auto& c, const auto& s) { return log_deriv_ratio(c, RatioKind::zpp_over_z, s); }},
      {"F", [](const auto& c, const auto& s) { return F(c, s); }},
      {"F_logderiv", [](const auto& c, const auto& s) { return F_logderiv(c, s); }},
      {"F2_over_F", [](const auto& c, const auto& s) { return F2_over_F(c, s); }},
      {"F2_over_F1", [](const auto& c, const auto& s) { return F2_over_F1(c, s); }},
      {"G2", [](const auto& c, const auto& s) { return G2(c, s); }},
      {"remainder", [](const auto& c, const auto& s) { return remainder_value(c, s); }},
      {"gamma", [](const auto& c, const auto& s) { return gamma(c, s); }},
      {"digamma", [](const auto& c, const auto& s) { return digamma(c, s); }},
      {"trigamma", [](const auto& c, const auto& s) { return trigamma(c, s); }},
      {"log", [](const auto& c, const auto& s) { return log_principal(c, s); }},
  };
  return table;
}

Table cmd_eval(const PrecisionContext& ctx, const Config& cfg) {
  const auto& table = eval_table();
  const auto it = table.find(cfg.fn);
  if (it == table.end()) throw UsageError("unknown --fn '" + cfg.fn + "'");
  Complex s(ctx.bits());
  try {
    s = mp::parse_complex(cfg.s, ctx.bits());
  } catch (const Error&) {
    throw UsageError("malformed --s '" + cfg.s + "'");
  }
  const Complex v = it->second(ctx, s);
  return Table{"eval", {"fn", "s_re", "s_im", "re", "im"}, {{cfg.fn, num(s.re), num(s.im), num(v.re), num(v.im)}}};
}

Target parse_target(const std::string& name) {
  if (name == "zeta") return Target::zeta;
  if (name == "zeta2") return Target::zeta2;
  throw UsageError("--target must be zeta or zeta2");
}

Table cmd_zeros(const PrecisionContext& ctx, const Config& cfg, const CensusOptions& opt) {
  if (cfg.rect.empty()) throw UsageError("zeros needs --rect");
  const auto zs = locate_zeros(ctx, parse_target(cfg.target), parse_rect(cfg.rect, ctx.bits()), opt);
  Table t{"zeros", {"target", "re", "im", "multiplicity", "residual"}, {}};
  for (const auto& z : zs) {
    t.rows.push_back({std::string(to_string(z.target)), num(z.position.re), num(z.position.im),
                      static_cast<long>(z.multiplicity), num(z.residual)});
  }
  return t;
}

Table cmd_count(const PrecisionContext& ctx, const Config& cfg, const CensusOptions& opt) {
  if (cfg.T.empty()) throw UsageError("count needs --T");
  const Real T = parse_real(cfg.T, ctx.bits(), "--T");
  if (!cfg.U.empty()) {
    // Window sum over (T, T+U] against its main terms.
    if (cfg.k != 2) throw UsageError("--U is only meaningful with --k 2");
    const Real U = parse_real(cfg.U, ctx.bits(), "--U");
    const Real top = T + U;
    const auto grid = build_census(ctx, {T, top}, opt);
    const Real sum = grid[1].s2_sum - grid[0].s2_sum;
    const Real rhs = window_rhs(grid[0].T_used, grid[1].T_used - grid[0].T_used);
    return Table{"count", {"T", "U", "window_sum", "window_rhs", "residual"},
                 {{num(T), num(U), num(sum), num(rhs), num(sum - rhs)}}};
  }
  const CountResult c = count_Nk(ctx, cfg.k, T, opt);
  Real main(ctx.bits());
  if (cfg.k == 2) {
    main = main_term_Nk(c.T_used);
  } else {
    // Riemann-von Mangoldt smooth part (T/2pi) log(T/2pi e) + 7/8.
    const Real tp = c.T_used / (mp::pi(ctx.bits()) * 2L);
    main = tp * (mp::log(tp) - 1.0) + 0.875;
  }
  return Table{"count", {"k", "T", "T_used", "count", "main", "residual", "perturbations"},
               {{static_cast<long>(cfg.k), num(T), num(c.T_used), c.count, num(main),
                 num(Real(c.count, ctx.bits()) - main), static_cast<long>(c.perturbations)}}};
}

Table cmd_census(const PrecisionContext& ctx, const Config& cfg, const CensusOptions& opt) {
  if (cfg.grid.empty()) throw UsageError("census needs --grid");
  const auto rows = build_census(ctx, parse_reals(cfg.grid, ctx.bits(), "--grid"), opt);
  Table t{"census",
          {"T", "N2", "N2_main", "N2_resid", "S2", "S2_rhs", "S2_resid", "arg_zeta_half", "arg_G2_half", "flags"},
          {}};
  for (const auto& r : rows) {
    t.rows.push_back({num(r.T), r.n2_count, num(r.n2_main), num(r.n2_residual), num(r.s2_sum), num(r.s2_rhs),
                      num(r.s2_residual), num(r.arg_zeta_half), num(r.arg_g2_half), r.flags});
  }
  return t;
}

Table cmd_audit(const PrecisionContext& ctx, const Config& cfg, int threads) {
  if (cfg.condition.empty() || cfg.rect.empty()) throw UsageError("audit needs --condition and --rect");
  Condition c;
  try {
    c = parse_condition(cfg.condition);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  AuditOptions opt;
  opt.threads = threads;
  const AuditReport r = audit(ctx, c, parse_rect(cfg.rect, ctx.bits()), cfg.step, opt);
  return Table{"audit",
               {"condition", "sigma_min", "sigma_max", "t_min", "t_max", "step", "worst_re", "worst_im",
                "worst_margin", "pass", "nodes", "note"},
               {{std::string(to_string(r.condition)), num(r.region.sigma_min), num(r.region.sigma_max),
                 num(r.region.t_min), num(r.region.t_max), num(r.grid_step), num(r.worst_point.re),
                 num(r.worst_point.im), num(r.worst_margin), r.pass, r.nodes, r.note}}};
}

Table cmd_args(const PrecisionContext& ctx, const Config& cfg, int threads) {
  if (cfg.T.empty()) throw UsageError("args needs --T");
  const Real T = parse_real(cfg.T, ctx.bits(), "--T");
  AuditOptions opt;
  opt.threads = threads;
  const auto rows = measure_arg_profile(ctx, T, parse_reals(cfg.sigma, ctx.bits(), "--sigma"), opt);
  Table t{"args", {"T", "sigma", "arg_G2", "arg_zeta", "bound_G2", "bound_zeta"}, {}};
  for (const auto& r : rows) {
    t.rows.push_back({num(T), num(r.sigma), num(r.arg_g2), num(r.arg_zeta), num(r.bound_g2), num(r.bound_zeta)});
  }
  return t;
}

int code_for(const Error& e) { return e.is_domain() ? kDomain : kNumerical; }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Zeta-derivative census and audit tool", "zeta2"};
  app.require_subcommand(1, 1);
  app.add_option("--precision-bits", cfg.precision_bits, "Working mantissa bits (>= 129 with 16 guard bits)")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", cfg.out_path, "Write results to this file instead of stdout");

  auto* eval = app.add_subcommand("eval", "Evaluate one function at one point");
  eval->add_option("--fn", cfg.fn, "zeta, zeta1, zeta2, zp_over_z, zpp_over_zp, zpp_over_z, F, F_logderiv, "
                                   "F2_over_F, F2_over_F1, G2, remainder, gamma, digamma, trigamma, log")
      ->capture_default_str();
  eval->add_option("--s", cfg.s, "Point, e.g. \"2+3i\"")->capture_default_str();

  auto* zeros = app.add_subcommand("zeros", "Locate zeros inside a rectangle");
  zeros->add_option("--target", cfg.target, "zeta or zeta2")->capture_default_str();
  zeros->add_option("--rect", cfg.rect, "smin,smax,tmin,tmax")->required();

  auto* count = app.add_subcommand("count", "N(T) or N_2(T) by the argument principle");
  count->add_option("--k", cfg.k, "0 or 2")->capture_default_str();
  count->add_option("--T", cfg.T, "Height")->required();
  count->add_option("--U", cfg.U, "Window length: report the S_2 window sum over (T, T+U]");

  auto* census = app.add_subcommand("census", "Census rows over a grid of heights");
  census->add_option("--grid", cfg.grid, "T1,T2,... ascending, each >= 4pi")->required();

  auto* aud = app.add_subcommand("audit", "Grid audit of one condition");
  aud->add_option("--condition", cfg.condition, "C1..C5, L23, L25, L26")->required();
  aud->add_option("--rect", cfg.rect, "smin,smax,tmin,tmax")->required();
  aud->add_option("--step", cfg.step, "Grid spacing")->capture_default_str();

  auto* args = app.add_subcommand("args", "Argument profile along sigma + iT");
  args->add_option("--T", cfg.T, "Height (>= 30)")->required();
  args->add_option("--sigma", cfg.sigma, "sigma1,sigma2,...")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (cfg.precision_bits < 129) {
      throw UsageError("--precision-bits must be at least 129 (mantissa > 8 x 16 guard bits)");
    }
    if (cfg.threads < 0) throw UsageError("--threads must be >= 0");
    const PrecisionContext ctx(cfg.precision_bits);
    const int threads = resolve_threads(cfg.threads);
    CensusOptions opt;
    opt.threads = threads;

    Table table;
    if (*eval) table = cmd_eval(ctx, cfg);
    else if (*zeros) table = cmd_zeros(ctx, cfg, opt);
    else if (*count) table = cmd_count(ctx, cfg, opt);
    else if (*census) table = cmd_census(ctx, cfg, opt);
    else if (*aud) table = cmd_audit(ctx, cfg, threads);
    else table = cmd_args(ctx, cfg, threads);

    std::ofstream file;
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot open --out '" + cfg.out_path + "'");
    }
    std::ostream& sink = cfg.out_path.empty() ? out : file;
    if (cfg.format == "json") write_json(sink, table);
    else write_csv(sink, table);
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace zeta2::cli
