#include "lacunary/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "lacunary/asymptotics.hpp"
#include "lacunary/quadrature.hpp"
#include "lacunary/solvers.hpp"

namespace lacunary::cli {

namespace {

// --help / --version; carries the text to print and exits 0.
struct HelpRequested {
  std::string text;
};

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"eval", Command::kEval},       {"solve", Command::kSolve},         {"approx", Command::kApprox},
      {"compare", Command::kCompare}, {"quadcheck", Command::kQuadcheck}, {"monotone", Command::kMonotone},
  };
  return names;
}

std::string command_name(Command c) {
  for (const auto& [name, value] : command_names()) {
    if (value == c) return name;
  }
  return "?";
}

std::string format_name(Format f) {
  switch (f) {
    case Format::kCsv: return "csv";
    case Format::kJson: return "json";
    default: return "table";
  }
}

std::string mode_name(EvalMode m) {
  switch (m) {
    case EvalMode::kExact: return "exact";
    case EvalMode::kFloat: return "float";
    default: return "log";
  }
}

std::string rational_text(const ExactRational& q) { return q.get_str(); }

// Domain errors keep their code but gain the offending row.
class RowError : public std::runtime_error {
 public:
  RowError(unsigned long n, const Error& e)
      : std::runtime_error("n = " + std::to_string(n) + ": " + e.what()), kind_(e.kind()) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

template <class Fn>
auto for_row(unsigned long n, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw RowError(n, e);
  }
}

}  // namespace

unsigned long parse_count(std::string_view text) {
  ExactRational q;
  try {
    q = parse_rational(text);
  } catch (const Error&) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  if (q.get_den() != 1 || sgn(q) < 0 || !q.get_num().fits_ulong_p()) {
    throw UsageError("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return q.get_num().get_ui();
}

std::vector<unsigned long> geometric_grid(unsigned long from, unsigned long to, unsigned long factor) {
  if (from == 0 || factor < 2) {
    throw UsageError("geometric grid needs --n-from >= 1 and --n-factor >= 2");
  }
  std::vector<unsigned long> out;
  for (unsigned long n = from; n <= to; n *= factor) {
    out.push_back(n);
    if (n > to / factor) break;
  }
  return out;
}

std::vector<unsigned long> linear_grid(unsigned long from, unsigned long to, unsigned long step) {
  if (step == 0) throw UsageError("--n-step must be positive");
  std::vector<unsigned long> out;
  for (unsigned long n = from; n <= to; n += step) {
    out.push_back(n);
    if (to - n < step) break;
  }
  return out;
}

std::string format_real(const Real& x, Bits bits) {
  if (x.is_zero()) return "0";
  if (!x.is_finite()) return mpfr_nan_p(x.get()) ? "nan" : (x.sign() < 0 ? "-inf" : "inf");

  const auto digits_wanted = static_cast<std::size_t>(std::floor(static_cast<double>(bits) * std::log10(2.0))) - 2;
  DecimalDigits d = to_decimal_digits(x, digits_wanted);
  std::string sign;
  std::string digits = d.digits;
  if (!digits.empty() && digits.front() == '-') {
    sign = "-";
    digits.erase(0, 1);
  }
  // value = 0.DIGITS * 10^e, so the magnitude lies in [10^(e-1), 10^e)
  const long e = d.exponent;
  if (e >= -3 && e <= 6) {
    if (e <= 0) return sign + "0." + std::string(static_cast<std::size_t>(-e), '0') + digits;
    return sign + digits.substr(0, static_cast<std::size_t>(e)) + "." + digits.substr(static_cast<std::size_t>(e));
  }
  const long sci = e - 1;
  std::ostringstream out;
  out << sign << digits.front() << '.' << digits.substr(1) << 'e' << (sci < 0 ? '-' : '+');
  if (std::labs(sci) < 10) out << '0';
  out << std::labs(sci);
  return out.str();
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"High-precision diagnostics for f_n(1/y) = sum_k C(n,k) y^{-C(k,2)}", "lacunary-asym"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string y_text;
  std::vector<std::string> n_list;
  std::string n_from, n_to, n_factor, n_step;
  long bits = kDefaultBits;
  std::string format = "csv";
  std::string out_path;
  std::string mode = "log";
  std::string max_n, max_r;
  std::string tol = "1e-20";

  for (const auto& [name, command] : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--y", y_text, "y as a rational or decimal, e.g. 2, 7/2, 1.5")->required();
    sub->add_option("--bits", bits, "working precision in bits")->envname("LACUNARY_BITS");
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "table"}));
    sub->add_option("--out", out_path, "write to this file instead of stdout");
    if (command == Command::kMonotone) {
      sub->add_option("--max-n", max_n)->required();
      sub->add_option("--max-r", max_r)->required();
      continue;
    }
    CLI::Option* list = sub->add_option("--n", n_list, "comma-separated n values, e.g. 10,100,1e6")->delimiter(',');
    CLI::Option* from = sub->add_option("--n-from", n_from);
    CLI::Option* to = sub->add_option("--n-to", n_to);
    CLI::Option* factor = sub->add_option("--n-factor", n_factor, "geometric step (default 10)");
    CLI::Option* step = sub->add_option("--n-step", n_step, "linear step");
    list->excludes(from)->excludes(to)->excludes(factor)->excludes(step);
    factor->excludes(step);
    if (command == Command::kEval) {
      sub->add_option("--mode", mode)->check(CLI::IsMember({"exact", "float", "log"}));
    }
    if (command == Command::kQuadcheck) {
      sub->add_option("--tol", tol, "relative deviation allowed against the exact value");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    throw HelpRequested{target->help()};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{std::string(kToolVersion) + "\n"};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig config;
  config.command = command_names().at(app.get_subcommands().front()->get_name());
  if (bits < PrecisionContext::kMinBits) {
    throw UsageError("--bits must be at least " + std::to_string(PrecisionContext::kMinBits));
  }
  config.bits = bits;
  config.format = format == "json" ? Format::kJson : format == "table" ? Format::kTable : Format::kCsv;
  if (!out_path.empty()) config.out_path = out_path;
  config.mode = mode == "exact" ? EvalMode::kExact : mode == "float" ? EvalMode::kFloat : EvalMode::kLog;
  config.tol_text = tol;

  try {
    config.y = parse_rational(y_text);
  } catch (const Error&) {
    throw UsageError("cannot read --y '" + y_text + "'");
  }
  const bool exact_path =
      config.command == Command::kMonotone || (config.command == Command::kEval && config.mode == EvalMode::kExact);
  if (exact_path ? sgn(config.y) <= 0 : config.y <= 1) {
    throw UsageError(exact_path ? "y must be positive" : "y must exceed 1");
  }

  if (config.command == Command::kMonotone) {
    config.max_n = parse_count(max_n);
    config.max_r = parse_count(max_r);
    return config;
  }

  if (!n_list.empty()) {
    for (const auto& item : n_list) config.n_values.push_back(parse_count(item));
  } else if (!n_from.empty() || !n_to.empty()) {
    if (n_from.empty() || n_to.empty()) throw UsageError("--n-from and --n-to go together");
    const unsigned long a = parse_count(n_from);
    const unsigned long b = parse_count(n_to);
    if (a > b) throw UsageError("--n-from exceeds --n-to");
    config.n_values = n_step.empty() ? geometric_grid(a, b, n_factor.empty() ? 10 : parse_count(n_factor))
                                     : linear_grid(a, b, parse_count(n_step));
  } else {
    throw UsageError("give --n or --n-from/--n-to");
  }
  std::sort(config.n_values.begin(), config.n_values.end());
  config.n_values.erase(std::unique(config.n_values.begin(), config.n_values.end()), config.n_values.end());

  const bool zero_ok = config.command == Command::kEval || config.command == Command::kQuadcheck;
  if (!zero_ok && config.n_values.front() == 0) throw UsageError("n values must be positive");
  if (config.command == Command::kQuadcheck && config.n_values.back() > kQuadratureCap) {
    throw UsageError(std::string(error_code(ErrorKind::kQuadCap)) + ": n = " + std::to_string(config.n_values.back()) +
                     " exceeds the quadrature cap " + std::to_string(kQuadratureCap));
  }
  if (config.command == Command::kQuadcheck) {
    try {
      Real probe(config.tol_text, 64);
      if (!(probe > 0)) throw UsageError("--tol must be positive");
    } catch (const std::invalid_argument&) {
      throw UsageError("cannot read --tol '" + config.tol_text + "'");
    }
  }
  return config;
}

std::vector<ComparisonRow> cmd_compare(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  const Real y = ctx.real(config.y);
  std::vector<ComparisonRow> rows;
  for (unsigned long n : config.n_values) {
    ApproxRecord rec = for_row(n, [&] { return approx_theorem(n, y, ctx); });
    Real diff = rec.w - rec.r;
    rows.push_back({n, config.y, rec.log_exact.log_magnitude, rec.w, rec.r, std::move(diff), rec.log_bdm,
                    rec.log_thm_prefactor, rec.theta_factor, rec.rho, rec.ratio_bdm, rec.ratio_thm});
  }
  return rows;
}

namespace {

Table eval_table(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  auto fmt = [&](const Real& v) { return format_real(v, config.bits); };
  Table t{{"n", "y", "mode", "value", "log_f", "terms_used", "first_omitted", "tail_bound"}, {}, std::nullopt};
  const std::string y_text = rational_text(config.y);
  for (unsigned long n : config.n_values) {
    std::vector<std::string> row{std::to_string(n), y_text, mode_name(config.mode)};
    for_row(n, [&] {
      if (config.mode == EvalMode::kExact) {
        ExactRational value = eval_exact(n, config.y);
        row.insert(row.end(), {rational_text(value), fmt(log(ctx.real(value))), std::to_string(n + 1), "", "0"});
        return;
      }
      const Real y = ctx.real(config.y);
      Real value, log_value;
      TruncationReport tr;
      if (config.mode == EvalMode::kFloat) {
        FloatEval e = eval_float(n, y, ctx);
        value = e.value;
        log_value = log(e.value);
        tr = std::move(e.truncation);
      } else {
        LogEval e = eval_log(n, y, ctx);
        log_value = e.value.log_magnitude;
        value = exp(log_value);
        tr = std::move(e.truncation);
      }
      row.insert(row.end(), {fmt(value), fmt(log_value), std::to_string(tr.terms_used),
                             tr.first_omitted_index ? std::to_string(*tr.first_omitted_index) : "",
                             fmt(tr.omitted_tail_bound)});
    });
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table solve_table(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  auto fmt = [&](const Real& v) { return format_real(v, config.bits); };
  Table t{{"n", "y", "w", "r", "w_minus_r", "w2_minus_r2", "w_over_r", "residual_w", "residual_r", "iterations_r"},
          {},
          std::nullopt};
  const Real y = ctx.real(config.y);
  for (unsigned long n : config.n_values) {
    for_row(n, [&] {
      const Real nr = ctx.real(static_cast<long>(n));
      RootResult w = solve_w(nr, y, ctx);
      RootResult r = solve_r(nr, y, ctx);
      RemarkRelations rel = residual_relations(nr, y, ctx);
      t.rows.push_back({std::to_string(n), rational_text(config.y), fmt(w.t), fmt(r.t), fmt(rel.w_minus_r),
                        fmt(rel.w2_minus_r2), fmt(rel.w_over_r), fmt(w.residual), fmt(r.residual),
                        std::to_string(r.iterations)});
    });
  }
  return t;
}

Table approx_table(const RunConfig& config) {
  const PrecisionContext ctx(config.bits);
  auto fmt = [&](const Real& v) { return format_real(v, config.bits); };
  Table t{{"n", "y", "log_f", "log_bdm", "log_thm_prefactor", "theta_factor", "a", "psi0", "identity_err",
           "psi0_residual", "s_form_ratio", "log_growth_ratio"},
          {},
          std::nullopt};
  const Real y = ctx.real(config.y);
  const Real log_y = log(y);
  for (unsigned long n : config.n_values) {
    for_row(n, [&] {
      SaddleData s = saddle_data(n, y, 3, ctx);
      ProofResiduals res = proof_residuals(s, ctx);
      ApproxRecord rec = approx_theorem(n, y, ctx);
      const Real& log_f = rec.log_exact.log_magnitude;
      Real s_form_ratio = exp(log_f - res.s_form_log);
      // log f_n / (log^2 n / (2 log y))
      Real growth = log_f * log_y * 2 / square(log(ctx.real(static_cast<long>(n))));
      t.rows.push_back({std::to_string(n), rational_text(config.y), fmt(log_f), fmt(rec.log_bdm),
                        fmt(rec.log_thm_prefactor), fmt(rec.theta_factor), fmt(s.a), fmt(s.psi0),
                        fmt(res.prefactor_identity_err), fmt(res.psi0_residual), fmt(s_form_ratio), fmt(growth)});
    });
  }
  return t;
}

Table compare_table(const RunConfig& config) {
  auto fmt = [&](const Real& v) { return format_real(v, config.bits); };
  Table t{comparison_header(), {}, std::nullopt};
  for (const ComparisonRow& row : cmd_compare(config)) {
    t.rows.push_back({std::to_string(row.n), rational_text(row.y), fmt(row.log_f), fmt(row.w), fmt(row.r),
                      fmt(row.w_minus_r), fmt(row.log_bdm), fmt(row.log_thm_prefactor), fmt(row.theta_factor),
                      fmt(row.rho), fmt(row.ratio_bdm), fmt(row.ratio_thm)});
  }
  return t;
}

Table quadcheck_table(const RunConfig& config, bool& all_pass) {
  const PrecisionContext ctx(config.bits);
  auto fmt = [&](const Real& v) { return format_real(v, config.bits); };
  Table t{{"n", "y", "exact", "original", "shifted", "dev_original", "dev_shifted", "panels_original",
           "panels_shifted", "working_bits", "pass"},
          {},
          std::nullopt};
  const Real y = ctx.real(config.y);
  const Real tol = ctx.real(config.tol_text);
  const Real target = ctx.eps();
  all_pass = true;
  for (unsigned long n : config.n_values) {
    for_row(n, [&] {
      const Real exact = ctx.real(eval_exact(n, config.y));
      QuadratureResult original = integrate_original(n, y, ctx, target);
      QuadratureResult shifted = integrate_shifted(n, y, ctx, target);
      Real dev_original = abs(original.value.with_precision(ctx.bits()) - exact) / exact;
      Real dev_shifted = abs(shifted.value.with_precision(ctx.bits()) - exact) / exact;
      const bool pass = dev_original <= tol && dev_shifted <= tol;
      all_pass = all_pass && pass;
      t.rows.push_back({std::to_string(n), rational_text(config.y), fmt(exact), fmt(original.value),
                        fmt(shifted.value), fmt(dev_original), fmt(dev_shifted), std::to_string(original.panels),
                        std::to_string(shifted.panels), std::to_string(std::max(original.working_bits, shifted.working_bits)),
                        pass ? "true" : "false"});
    });
  }
  t.verified = all_pass;
  return t;
}

Table monotone_table(const RunConfig& config) {
  MonotonicityCertificate cert = certify_absolute_monotonicity(config.max_n, config.max_r, config.y);
  Table t{{"n", "r", "value", "positive"}, {}, true};
  for (const MonotonicityEntry& e : cert.entries) {
    t.rows.push_back({std::to_string(e.n), std::to_string(e.r), rational_text(e.value), sgn(e.value) > 0 ? "true" : "false"});
  }
  return t;
}

nlohmann::ordered_json config_json(const RunConfig& config) {
  nlohmann::ordered_json c;
  c["command"] = command_name(config.command);
  c["y"] = rational_text(config.y);
  if (config.command == Command::kMonotone) {
    c["max_n"] = config.max_n;
    c["max_r"] = config.max_r;
  } else {
    c["n"] = config.n_values;
  }
  c["bits"] = config.bits;
  c["format"] = format_name(config.format);
  if (config.command == Command::kEval) c["mode"] = mode_name(config.mode);
  if (config.command == Command::kQuadcheck) c["tol"] = config.tol_text;
  return c;
}

}  // namespace

CommandOutput run_command(const RunConfig& config) {
  switch (config.command) {
    case Command::kEval: return {eval_table(config), kExitOk};
    case Command::kSolve: return {solve_table(config), kExitOk};
    case Command::kApprox: return {approx_table(config), kExitOk};
    case Command::kCompare: return {compare_table(config), kExitOk};
    case Command::kMonotone: return {monotone_table(config), kExitOk};
    case Command::kQuadcheck: {
      bool all_pass = true;
      Table t = quadcheck_table(config, all_pass);
      return {std::move(t), all_pass ? kExitOk : kExitTolerance};
    }
  }
  return {};
}

void write_table(const Table& table, const RunConfig& config, std::ostream& out) {
  switch (config.format) {
    case Format::kCsv: {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
      };
      line(table.columns);
      for (const auto& row : table.rows) line(row);
      break;
    }
    case Format::kJson: {
      nlohmann::ordered_json doc;
      doc["config"] = config_json(config);
      doc["rows"] = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = row[i];
        doc["rows"].push_back(std::move(obj));
      }
      if (table.verified) doc["verified"] = *table.verified;
      doc["tool_version"] = std::string(kToolVersion);
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::kTable: {
      std::vector<std::size_t> width(table.columns.size());
      for (std::size_t i = 0; i < width.size(); ++i) width[i] = table.columns[i].size();
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        std::string text;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (i) text += "  ";
          text += std::string(width[i] - cells[i].size(), ' ') + cells[i];
        }
        out << text << '\n';
      };
      line(table.columns);
      for (const auto& row : table.rows) line(row);
      break;
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& help) {
    out << help.text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  CommandOutput result;
  try {
    result = run_command(config);
  } catch (const RowError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  if (config.out_path) {
    std::ofstream file(*config.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "usage error: cannot write " << *config.out_path << "\n";
      return kExitUsage;
    }
    write_table(result.table, config, file);
  } else {
    write_table(result.table, config, out);
  }
  if (result.exit_code == kExitTolerance) {
    err << "tolerance failure: at least one deviation exceeds " << config.tol_text << "\n";
  }
  return result.exit_code;
}

}  // namespace lacunary::cli
