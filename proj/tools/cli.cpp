#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "twistzero/hlharness.hpp"
#include "twistzero/lfun.hpp"
#include "twistzero/parallel.hpp"
#include "twistzero/qseries.hpp"
#include "twistzero/zeros.hpp"

namespace twistzero::cli {
namespace {

using nlohmann::json;

constexpr const char* kFormHelp =
    "Form spec: eta:m1^e1*m2^e2... (eta quotient, integral weight), "
    "theta*eta:m1^e1*... (theta(z) times an eta quotient, half-integral weight), "
    "or file:<path> (coefficient file written by `coeffs`).";

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorCode::Parse, "bad number '" + item + "'");
    out.push_back(v);
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

ReducedRational parse_twist(const std::string& text) {
  const auto slash = text.find('/');
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "--twist p/q is required");
  try {
    std::size_t used = 0;
    const long long p = std::stoll(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) throw std::invalid_argument("p");
    long long q = 1;
    if (slash != std::string::npos) {
      const std::string qs = text.substr(slash + 1);
      q = std::stoll(qs, &used);
      if (used != qs.size()) throw std::invalid_argument("q");
    }
    return reduce(p, q);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::Parse, "twist must look like p/q, got '" + text + "'");
  }
}

// Values from --config override the command-line flags.
void apply_config(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::Parse, path + ": config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "form") cfg.form = v.get<std::string>();
      else if (key == "twist") cfg.twist = v.get<std::string>();
      else if (key == "level") cfg.level = v.get<std::int64_t>();
      else if (key == "t0") cfg.t0 = v.get<double>();
      else if (key == "t1") cfg.t1 = v.get<double>();
      else if (key == "step") cfg.step = v.get<double>();
      else if (key == "T") cfg.T = v.is_array() ? v.get<std::vector<double>>() : parse_list(v.is_string() ? v.get<std::string>() : v.dump());
      else if (key == "tol") cfg.tol = v.get<double>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "count") cfg.count = v.get<std::size_t>();
      else if (key == "re0") cfg.re0 = v.get<double>();
      else if (key == "re1") cfg.re1 = v.get<double>();
      else if (key == "grid") cfg.grid = v.get<int>();
      else if (key == "s") cfg.s = v.get<std::string>();
      else if (key == "points") cfg.points = v.get<std::vector<std::string>>();
      else if (key == "random") cfg.random_points = v.get<int>();
      else if (key == "no_z") cfg.no_z = v.get<bool>();
      else if (key == "probes") cfg.probes = v.get<std::vector<std::string>>();
      else throw Error(ErrorCode::Parse, path + ": unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, path + ": " + e.what());
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.form.empty()) throw Error(ErrorCode::InvalidArgument, "--form is required");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
  if (cfg.count && *cfg.count == 0) throw Error(ErrorCode::InvalidArgument, "--count must be positive");
  if (cfg.command == "eval" || cfg.command == "zeros") {
    if (!(cfg.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "--step must be positive");
    if (cfg.t1 < cfg.t0) throw Error(ErrorCode::InvalidArgument, "--t1 must not be below --t0");
  }
  if (cfg.command == "fecheck") {
    if (cfg.grid < 1) throw Error(ErrorCode::InvalidArgument, "--grid must be at least 1");
    if (cfg.random_points < 0) throw Error(ErrorCode::InvalidArgument, "--random must be non-negative");
  }
  if (cfg.command == "hl") {
    if (cfg.T.empty()) throw Error(ErrorCode::InvalidArgument, "--T is required");
    for (const auto& p : cfg.probes) {
      if (p != "hl" && p != "lutlem" && p != "decay") {
        throw Error(ErrorCode::InvalidArgument, "unknown probe '" + p + "' (hl, lutlem, decay)");
      }
    }
  }
}

std::shared_ptr<const CoeffTable> make_coeffs(const FormSpec& spec, std::size_t M) {
  return std::make_shared<const CoeffTable>(build_table(spec, M));
}

// Builds the table (sized for |Im s| <= t_max unless --count is given) and
// retries with a doubled table if the evaluator still runs out.
template <class Body>
auto with_form(const RunConfig& cfg, double t_max, double tol, Body&& body) {
  const FormSpec spec = parse_form(cfg.form, cfg.level);
  const ReducedRational tw = parse_twist(cfg.twist);
  std::size_t M = cfg.count ? *cfg.count : TwistedL::coefficients_needed(spec.nu(), tw.q, t_max, tol);
  for (int attempt = 0;; ++attempt) {
    auto table = make_coeffs(spec, M);
    try {
      return body(spec, table, tw);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Convergence || cfg.count || spec.kind == SourceKind::CoefficientFile ||
          attempt >= 4) {
        throw;
      }
      M *= 2;
    }
  }
}

json twist_json(const ReducedRational& r) { return std::to_string(r.p) + "/" + std::to_string(r.q); }

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + cfg.out + " for writing");
  f << text;
  f.close();
  if (!f) throw Error(ErrorCode::Io, "error writing " + cfg.out);
}

std::size_t grid_count(double t0, double t1, double step) {
  return static_cast<std::size_t>(std::floor((t1 - t0) / step + 1e-9)) + 1;
}

json base_report(const FormSpec& spec, const CoeffTable& table, const ReducedRational& tw) {
  return json{{"form", table.label},
              {"weight2", spec.weight2},
              {"level", table.level},
              {"twist", twist_json(tw)},
              {"coefficients", table.count()}};
}

void cmd_coeffs(const RunConfig& cfg, std::ostream& out) {
  const FormSpec spec = parse_form(cfg.form, cfg.level);
  const CoeffTable table = build_table(spec, cfg.count.value_or(100));
  std::ostringstream ss;
  write_coeffs(table, ss);
  emit(cfg, ss.str(), out);
}

void cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const double tol = cfg.tol.value_or(1e-12);
  const double t_max = std::max(std::abs(cfg.t0), std::abs(cfg.t1));
  const std::string text = with_form(cfg, t_max, tol, [&](const FormSpec&, auto table, ReducedRational tw) {
    const TwistedL L(table, tw);
    const std::size_t n = grid_count(cfg.t0, cfg.t1, cfg.step);
    std::vector<CriticalValue> rows(n);
    parallel_for(n, [&](std::size_t i) {
      const double t = cfg.t0 + static_cast<double>(i) * cfg.step;
      if (cfg.no_z) {
        const Estimate e = L.smoothed_L(cplx(0.5, t), tol);
        rows[i] = CriticalValue{t, e.value, cplx(std::nan(""), 0.0), e.err};
      } else {
        rows[i] = L.z(t, tol);
      }
    });
    std::string csv = "t,L_re,L_im,Z,err\n";
    for (const auto& r : rows) {
      csv += fmt17(r.t) + "," + fmt17(r.L.real()) + "," + fmt17(r.L.imag()) + "," + fmt17(r.Z.real()) + "," +
             fmt17(r.err_est) + "\n";
    }
    return csv;
  });
  emit(cfg, text, out);
}

void cmd_zeros(const RunConfig& cfg, std::ostream& out) {
  const double tol = cfg.tol.value_or(1e-8);
  const double eval_tol = std::min(1e-12, tol);
  const double t_max = std::max(std::abs(cfg.t0), std::abs(cfg.t1));
  const json report = with_form(cfg, t_max, eval_tol, [&](const FormSpec& spec, auto table, ReducedRational tw) {
    const TwistedL L(table, tw);
    const ZeroReport zr = find_zeros(critical_z(L, eval_tol), cfg.t0, cfg.t1, cfg.step, tol);
    json j = base_report(spec, *table, tw);
    j["t0"] = zr.t0;
    j["t1"] = zr.t1;
    j["step"] = zr.step;
    j["tol"] = tol;
    j["brackets"] = json::array();
    for (const auto& b : zr.brackets) {
      j["brackets"].push_back({{"t_lo", b.t_lo}, {"t_hi", b.t_hi}, {"z_lo", b.z_lo}, {"z_hi", b.z_hi}});
    }
    j["zeros"] = json::array();
    for (const auto& z : zr.zeros) {
      j["zeros"].push_back({{"t", z.t}, {"abs_L", z.abs_L}, {"width", z.width}, {"iterations", z.iterations}});
    }
    j["count"] = zr.zeros.size();
    j["skipped"] = zr.skipped;
    j["warnings"] = zr.warnings;
    return j;
  });
  emit(cfg, report.dump(2) + "\n", out);
}

void cmd_fecheck(const RunConfig& cfg, std::ostream& out) {
  const double tol = cfg.tol.value_or(1e-12);
  std::vector<cplx> pts;
  for (const auto& p : cfg.points) pts.push_back(parse_complex(p));
  if (pts.empty()) {
    const auto at = [](double a, double b, int n, int i) {
      return n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    for (int i = 0; i < cfg.grid; ++i) {
      for (int j = 0; j < cfg.grid; ++j) pts.emplace_back(at(cfg.re0, cfg.re1, cfg.grid, i), at(cfg.t0, cfg.t1, cfg.grid, j));
    }
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ur(cfg.re0, cfg.re1);
  std::uniform_real_distribution<double> ui(std::min(cfg.t0, cfg.t1), std::max(cfg.t0, cfg.t1));
  for (int i = 0; i < cfg.random_points; ++i) {
    const double re = ur(rng);
    pts.emplace_back(re, ui(rng));
  }
  double t_max = 0.0;
  for (const cplx& p : pts) t_max = std::max(t_max, std::abs(p.imag()));
  const json report = with_form(cfg, t_max, tol, [&](const FormSpec& spec, auto table, ReducedRational tw) {
    const TwistedL L(table, tw);
    std::vector<double> res(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) { res[i] = L.fe_residual(pts[i], tol); });
    json j = base_report(spec, *table, tw);
    j["seed"] = cfg.seed;
    j["fe_root"] = complex_json(L.fe_root());
    if (L.half_integral()) j["sqrt_beta"] = complex_json(L.sqrt_beta());
    j["residuals"] = json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      j["residuals"].push_back({{"re", pts[i].real()}, {"im", pts[i].imag()}, {"residual", res[i]}});
      worst = std::max(worst, res[i]);
    }
    j["max_residual"] = worst;
    j["warnings"] = L.warnings();
    return j;
  });
  emit(cfg, report.dump(2) + "\n", out);
}

void cmd_hl(const RunConfig& cfg, std::ostream& out) {
  for (double T : cfg.T) require_window_T(T);
  const double rel = cfg.tol.value_or(1e-6);
  const BumpFamily family;
  WindowOptions opts;
  opts.rel_tol = rel;
  opts.tail_tol = 10.0 * rel;
  const double W = family.support_halfwidth(opts.tail_tol);
  double t_max = 0.0;
  for (double T : cfg.T) t_max = std::max(t_max, 2.0 * T * std::sqrt(T) + W * T);
  const bool decay = std::find(cfg.probes.begin(), cfg.probes.end(), "decay") != cfg.probes.end();
  // the decay probe widens its window until the growing integrand is small at the ends
  if (decay) {
    for (double T : cfg.T) t_max = std::max(t_max, 2.0 * T * std::sqrt(T) + 100.0 * T);
  }
  const cplx s = parse_complex(cfg.s);
  const json report = with_form(cfg, t_max, 1e-12, [&](const FormSpec& spec, auto table, ReducedRational tw) {
    const TwistedL L(table, tw);
    json j = base_report(spec, *table, tw);
    j["lambda_at_1"] = family.lambda_at_1();
    j["mass"] = family.mass();
    j["rel_tol"] = rel;
    for (const auto& probe : cfg.probes) {
      if (probe == "hl") {
        json rows = json::array();
        for (double T : cfg.T) {
          const HLResult r = hl_experiment(L, family, T, opts);
          rows.push_back({{"T", r.T},
                          {"I_signed", r.I_signed},
                          {"I_abs", r.I_abs},
                          {"err", r.err},
                          {"ratio", r.ratio},
                          {"I_abs_over_T", r.I_abs / r.T},
                          {"halfwidth", r.halfwidth},
                          {"evaluations", r.evaluations},
                          {"verdict", to_string(r.verdict)}});
        }
        j["hl"] = rows;
      } else if (probe == "lutlem") {
        json rows = json::array();
        for (double T : cfg.T) {
          const LutlemResult r = verify_lutlem(L, family, T, s, opts);
          rows.push_back({{"T", T},
                          {"s", complex_json(s)},
                          {"lhs", complex_json(r.lhs)},
                          {"rhs", complex_json(r.rhs)},
                          {"rel_err", r.rel_err},
                          {"quad_err", r.quad_err},
                          {"halfwidth", r.halfwidth}});
        }
        j["lutlem"] = rows;
      } else {
        const ProbeTable d = decay_probe(L, family, cfg.T, opts);
        json rows = json::array();
        for (const auto& r : d.rows) {
          rows.push_back({{"T", r.T}, {"value", r.value}, {"err", r.err}, {"halfwidth", r.halfwidth},
                          {"edge_ratio", r.edge_ratio}});
        }
        j["decay"] = {{"rows", rows}, {"slope", d.slope}};
      }
    }
    return j;
  });
  emit(cfg, report.dump(2) + "\n", out);
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::HypothesisViolation:
      return kHypothesis;
    case ErrorCode::InvalidForm:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parse:
    case ErrorCode::WeightMismatch:
    case ErrorCode::NonIntegralPrefactor:
    case ErrorCode::ZeroDenominator:
    case ErrorCode::NotCoprime:
    case ErrorCode::Io:
      return kConfig;
    default:
      return kNumerical;
  }
}

std::complex<double> parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  const auto bad = [&]() { return Error(ErrorCode::Parse, "cannot read complex number '" + text + "'"); };
  if (s.empty()) throw bad();
  try {
    if (s.back() != 'i') {
      std::size_t used = 0;
      const double re = std::stod(s, &used);
      if (used != s.size()) throw bad();
      return {re, 0.0};
    }
    s.pop_back();
    // split at the last sign that is not an exponent sign or leading
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    const auto imag_of = [&](const std::string& part) {
      if (part.empty() || part == "+") return 1.0;
      if (part == "-") return -1.0;
      std::size_t used = 0;
      const double v = std::stod(part, &used);
      if (used != part.size()) throw bad();
      return v;
    };
    if (split == std::string::npos) return {0.0, imag_of(s)};
    std::size_t used = 0;
    const std::string re_part = s.substr(0, split);
    const double re = std::stod(re_part, &used);
    if (used != re_part.size()) throw bad();
    return {re, imag_of(s.substr(split))};
  } catch (const std::logic_error&) {
    throw bad();
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string config_path;
  std::string T_text;
  std::string probes_text;
  std::string points_text;

  CLI::App app{"Additively twisted L-functions of cusp forms: evaluation, zeros and window integrals.\n" +
               std::string(kFormHelp)};
  app.require_subcommand(1);
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--form", cfg.form, kFormHelp);
    sub->add_option("--level", cfg.level, "Override the level N");
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--tol", cfg.tol, "Tolerance");
    sub->add_option("--count", cfg.count, "Number of coefficients (default: sized for the request)");
    sub->add_option("--seed", cfg.seed, "Seed for randomized points");
    sub->add_option("--config", config_path, "JSON file whose keys override the flags");
  };
  const auto windowed = [&](CLI::App* sub) {
    sub->add_option("--twist", cfg.twist, "Twist p/q");
    sub->add_option("--t0", cfg.t0, "Start of the t range");
    sub->add_option("--t1", cfg.t1, "End of the t range");
  };

  CLI::App* coeffs = app.add_subcommand("coeffs", "Write a coefficient file");
  common(coeffs);

  CLI::App* eval = app.add_subcommand("eval", "CSV t,L_re,L_im,Z,err on the critical line");
  common(eval);
  windowed(eval);
  eval->add_option("--step", cfg.step, "Grid step");
  eval->add_flag("--no-z", cfg.no_z, "Only L; allows twists with p^2 != 1 mod q");

  CLI::App* zeros = app.add_subcommand("zeros", "JSON report of sign changes of Z and refined zeros");
  common(zeros);
  windowed(zeros);
  zeros->add_option("--step", cfg.step, "Scan step");

  CLI::App* fecheck = app.add_subcommand("fecheck", "JSON functional-equation residuals");
  common(fecheck);
  windowed(fecheck);
  fecheck->add_option("--re0", cfg.re0, "Smallest Re s of the grid");
  fecheck->add_option("--re1", cfg.re1, "Largest Re s of the grid");
  fecheck->add_option("--grid", cfg.grid, "Grid points per axis (Im s runs over [t0, t1])");
  fecheck->add_option("--s", points_text, "Comma separated points such as 6,6+2i instead of the grid");
  fecheck->add_option("--random", cfg.random_points, "Extra random points in the grid rectangle");

  CLI::App* hl = app.add_subcommand("hl", "JSON window integrals: hl, lutlem, decay");
  common(hl);
  hl->add_option("--twist", cfg.twist, "Twist p/q");
  hl->add_option("--T", T_text, "Comma separated window parameters T > 2/log 2");
  hl->add_option("--probes", probes_text, "Comma separated subset of hl,lutlem,decay (default hl)");
  hl->add_option("--s", cfg.s, "Point s for lutlem (default 0.5)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }

  try {
    for (CLI::App* sub : {coeffs, eval, zeros, fecheck, hl}) {
      if (sub->parsed()) cfg.command = sub->get_name();
    }
    if (!T_text.empty()) cfg.T = parse_list(T_text);
    if (!probes_text.empty()) cfg.probes = split(probes_text);
    if (!points_text.empty()) cfg.points = split(points_text);
    if (!config_path.empty()) apply_config(cfg, config_path);
    validate(cfg);
    if (cfg.command == "coeffs") cmd_coeffs(cfg, out);
    else if (cfg.command == "eval") cmd_eval(cfg, out);
    else if (cfg.command == "zeros") cmd_zeros(cfg, out);
    else if (cfg.command == "fecheck") cmd_fecheck(cfg, out);
    else cmd_hl(cfg, out);
  } catch (const Error& e) {
    err << "twistzero " << cfg.command << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "twistzero " << cfg.command << ": internal error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}

}  // namespace twistzero::cli
