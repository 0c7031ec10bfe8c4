#include "barnes_zeta/cli_io.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "barnes_zeta/complex_math.hpp"
#include "barnes_zeta/errors.hpp"
#include "barnes_zeta/parallel.hpp"

namespace barnes::cli {
namespace {

class ValueParser {
 public:
  explicit ValueParser(std::string_view text) {
    for (char c : text)
      if (c != ' ' && c != '\t') src_.push_back(c);
  }

  ParsedValue parse() {
    if (src_.empty()) fail("empty value");
    cplx v = expr();
    if (pos_ != src_.size()) fail("unexpected '" + src_.substr(pos_) + "'");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail("value is not finite");
    return {v, irrational_};
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw DomainError("cannot parse value '" + src_ + "': " + why);
  }

  bool eat(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view w) {
    if (src_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  cplx expr() {
    cplx acc(0.0, 0.0);
    bool first = true;
    while (true) {
      double sign = 1.0;
      if (eat('-')) {
        sign = -1.0;
      } else if (!eat('+') && !first) {
        break;
      }
      acc += sign * term();
      first = false;
      if (pos_ >= src_.size() || (src_[pos_] != '+' && src_[pos_] != '-')) break;
    }
    return acc;
  }

  cplx term() {
    cplx v = factor();
    while (eat('*')) v *= factor();
    return v;
  }

  cplx factor() {
    if (eat('(')) {
      cplx v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (eat_word("sqrt2")) return mark(std::sqrt(2.0));
    if (eat_word("sqrt3")) return mark(std::sqrt(3.0));
    if (eat_word("sqrt5")) return mark(std::sqrt(5.0));
    if (eat_word("golden")) return mark(0.5 * (1.0 + std::sqrt(5.0)));
    if (eat_word("pi")) return mark(kPi);
    if (eat('i')) return {0.0, 1.0};
    double x = 0.0;
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    const auto res = std::from_chars(begin, end, x);
    if (res.ec != std::errc() || res.ptr == begin) fail("expected a number");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    if (eat('i')) return {0.0, x};
    return {x, 0.0};
  }

  cplx mark(double x) {
    irrational_ = true;
    return {x, 0.0};
  }

  std::string src_;
  std::size_t pos_ = 0;
  bool irrational_ = false;
};

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Setup {
  BarnesParams params;
  DispatchPolicy policy;
};

Setup make_setup(const JobConfig& cfg) {
  const ParsedValue alpha = parse_value(cfg.alpha);
  const ParsedValue v = parse_value(cfg.v);
  const ParsedValue w = parse_value(cfg.w);
  Setup st;
  st.params = make_params(alpha.value, v.value, w.value, cfg.theta);
  st.policy.target_rel_err = cfg.target_rel_err;
  st.policy.ratio_class = parse_ratio(cfg.ratio);
  if (!st.policy.ratio_class && v.irrational != w.irrational) {
    // One side symbolic irrational: the typed digits would classify as rational.
    const RatioClass rc = classify_ratio(v.value, w.value);
    if (!std::holds_alternative<ImaginaryRatio>(rc)) st.policy.ratio_class = RealIrrational{};
  }
  return st;
}

EvalResult eval_one(cplx s, const JobConfig& cfg, const Setup& st) {
  if (cfg.method) return evaluate_with(*cfg.method, s, st.params, st.policy);
  return evaluate(s, st.params, st.policy);
}

std::vector<cplx> vw11_grid() {
  std::vector<cplx> grid;
  for (int a = 0; a < 7; ++a)
    for (int b = 0; b < 7; ++b)
      grid.emplace_back(-3.0 + (a + 0.5) * 6.0 / 7.0, -20.0 + (b + 0.5) * 40.0 / 7.0);
  return grid;
}

struct Outcome {
  std::string content;
  int exit_code = 0;
  std::string detail;
};

Outcome run_eval(const JobConfig& cfg, Format fmt) {
  const Setup st = make_setup(cfg);
  const cplx s = parse_value(cfg.s).value;
  const EvalResult r = eval_one(s, cfg, st);
  Outcome o;
  o.content = fmt == Format::Json ? eval_json(s, r) + "\n" : eval_csv({{s, r}});
  o.detail = "method=" + std::string(to_string(r.method));
  return o;
}

Outcome run_table(const JobConfig& cfg, Format fmt) {
  const Setup st = make_setup(cfg);
  std::vector<std::pair<cplx, EvalResult>> rows;
  const std::vector<std::string> list = cfg.s_list.empty() ? std::vector<std::string>{cfg.s} : cfg.s_list;
  for (const auto& text : list) {
    const cplx s = parse_value(text).value;
    rows.emplace_back(s, eval_one(s, cfg, st));
  }
  Outcome o;
  if (fmt == Format::Csv) {
    o.content = eval_csv(rows);
  } else {
    o.content = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) o.content += (i ? ",\n " : "") + eval_json(rows[i].first, rows[i].second);
    o.content += "]\n";
  }
  o.detail = "rows=" + std::to_string(rows.size());
  return o;
}

Outcome run_verify(const JobConfig& cfg, Format fmt) {
  struct Row {
    std::string label;
    cplx s;
    double deviation;
    double tolerance;
    bool ok;
    std::string note;
  };
  std::vector<Row> rows;
  if (cfg.suite == "vw11") {
    DispatchPolicy policy;
    policy.target_rel_err = cfg.target_rel_err;
    for (double a : {0.8, 1.0, 2.0}) {
      const IdentityReport rep = verify_identity_vw11(a, vw11_grid(), cfg.tol, policy);
      for (const auto& p : rep.points)
        rows.push_back({"alpha=" + format_double(a), p.s, p.rel_dev, cfg.tol, p.ok,
                        p.error.empty() ? std::string(to_string(p.method)) : p.error});
    }
  } else if (cfg.suite == "cross") {
    const Setup st = make_setup(cfg);
    const cplx s = parse_value(cfg.s).value;
    const std::vector<MethodTag> all{MethodTag::DirectSeries, MethodTag::ApproxFE, MethodTag::FuncEqIndep,
                                     MethodTag::FuncEqRationalHurwitz, MethodTag::FuncEqRationalLerch,
                                     MethodTag::IteratedHurwitz};
    const CrossCheckReport rep = cross_check(s, st.params, all, cfg.tol, st.policy);
    for (const auto& p : rep.pairs)
      rows.push_back({std::string(to_string(p.a)) + "~" + std::string(to_string(p.b)), s, p.deviation,
                      p.tolerance, p.ok, ""});
  } else if (cfg.suite == "props") {
    // Column recurrence and conjugation symmetry at seeded random points.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> sig(-2.5, 4.0), tt(-10.0, 10.0), par(0.3, 2.0);
    for (int i = 0; i < 10; ++i) {
      cplx s(sig(rng), tt(rng));
      if (std::abs(s - 1.0) < 0.1 || std::abs(s - 2.0) < 0.1) s += 0.25;
      const double alpha = par(rng), v = par(rng), w = par(rng);
      const BarnesParams p0 = make_params(alpha, v, w);
      const BarnesParams p1 = make_params(alpha + v, v, w);
      const EvalResult a = iterated_hurwitz(s, p0);
      const EvalResult b = iterated_hurwitz(s, p1);
      const EvalResult h = hurwitz_zeta(s, alpha / w);
      const cplx rhs = std::pow(w, -s) * h.value;
      const double dev = std::abs(a.value - b.value - rhs);
      const double tol = 10.0 * (a.abs_err_est + b.abs_err_est + std::abs(std::pow(w, -s)) * h.abs_err_est) +
                         1e-13 * std::abs(a.value);
      rows.push_back({"column_recurrence", s, dev, tol, dev <= tol, ""});
      const EvalResult c = iterated_hurwitz(std::conj(s), p0);
      const double cdev = std::abs(c.value - std::conj(a.value));
      const double ctol = 10.0 * (a.abs_err_est + c.abs_err_est) + 1e-13 * std::abs(a.value);
      rows.push_back({"conjugation", s, cdev, ctol, cdev <= ctol, ""});
    }
  } else {
    throw DomainError("unknown suite '" + cfg.suite + "' (expected vw11, cross or props)");
  }

  std::size_t failed = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    failed += r.ok ? 0 : 1;
    worst = std::max(worst, r.deviation);
  }
  Outcome o;
  if (fmt == Format::Csv) {
    o.content = "label,s_re,s_im,deviation,tolerance,ok,note\n";
    for (const auto& r : rows)
      o.content += csv_field(r.label) + "," + format_double(r.s.real()) + "," + format_double(r.s.imag()) + "," +
                   format_double(r.deviation) + "," + format_double(r.tolerance) + "," + (r.ok ? "true" : "false") +
                   "," + csv_field(r.note) + "\n";
  } else {
    std::string pts;
    for (const auto& r : rows) {
      if (!pts.empty()) pts += ",\n  ";
      pts += "{\"label\":" + json_string(r.label) + ",\"s_re\":" + format_double(r.s.real()) +
             ",\"s_im\":" + format_double(r.s.imag()) + ",\"deviation\":" + format_double(r.deviation) +
             ",\"tolerance\":" + format_double(r.tolerance) + ",\"ok\":" + (r.ok ? "true" : "false") +
             ",\"note\":" + json_string(r.note) + "}";
    }
    o.content = "{\"suite\":" + json_string(cfg.suite) + ",\"checks\":" + std::to_string(rows.size()) +
                ",\"failed\":" + std::to_string(failed) + ",\"max_deviation\":" + format_double(worst) +
                ",\"passed\":" + (failed == 0 ? "true" : "false") + ",\n \"points\":[" + pts + "]}\n";
  }
  o.exit_code = failed == 0 ? 0 : 1;
  o.detail = "suite=" + cfg.suite + " checks=" + std::to_string(rows.size()) + " failed=" + std::to_string(failed);
  return o;
}

Outcome run_scan(const JobConfig& cfg, Format fmt) {
  const Setup st = make_setup(cfg);
  const auto records = growth_scan(cfg.sigma, cfg.t_min, cfg.t_max, cfg.samples_per_decade, st.params, st.policy);
  std::optional<ExponentFit> fit;
  try {
    fit = fit_exponent(records, cfg.windows);
  } catch (const InsufficientSpan&) {
  }
  std::size_t failed = 0;
  for (const auto& r : records) failed += r.ok ? 0 : 1;
  Outcome o;
  if (fmt == Format::Csv) {
    o.content = scan_csv(records);
  } else {
    std::string recs;
    for (const auto& r : records) {
      if (!r.ok) continue;
      if (!recs.empty()) recs += ",\n  ";
      recs += "{\"t\":" + format_double(r.t) + ",\"abs\":" + format_double(r.magnitude) + ",\"method\":" +
              json_string(to_string(r.method)) + ",\"err\":" + format_double(r.err) + "}";
    }
    std::string fit_json = "null";
    if (fit)
      fit_json = "{\"slope\":" + format_double(fit->slope) + ",\"intercept\":" + format_double(fit->intercept) +
                 ",\"r2\":" + format_double(fit->r2) + ",\"windows\":" + std::to_string(fit->windows) + "}";
    o.content = "{\"sigma\":" + format_double(cfg.sigma) + ",\"failed\":" + std::to_string(failed) +
                ",\"fit\":" + fit_json + ",\n \"records\":[" + recs + "]}\n";
  }
  o.detail = "samples=" + std::to_string(records.size()) + " failed=" + std::to_string(failed);
  if (fit) o.detail += " slope=" + format_double(fit->slope);
  return o;
}

Outcome run_moments(const JobConfig& cfg, Format fmt) {
  const Setup st = make_setup(cfg);
  const MomentCurve c = moment_integral(cfg.sigma, cfg.k, cfg.T_values, st.params, cfg.density, st.policy);
  std::optional<ExponentFit> fit;
  try {
    fit = fit_moment_growth(c);
  } catch (const InsufficientSpan&) {
  }
  Outcome o;
  if (fmt == Format::Csv) {
    o.content = "T,value\n";
    for (const auto& p : c.points) o.content += format_double(p.T) + "," + format_double(p.value) + "\n";
  } else {
    std::string pts;
    for (const auto& p : c.points) {
      if (!pts.empty()) pts += ",";
      pts += "{\"T\":" + format_double(p.T) + ",\"value\":" + format_double(p.value) + "}";
    }
    o.content = "{\"k\":" + std::to_string(c.k) + ",\"sigma\":" + format_double(c.sigma) +
                ",\"growth_exponent\":" + (fit ? format_double(fit->slope) : std::string("null")) +
                ",\"points\":[" + pts + "]}\n";
  }
  o.detail = "points=" + std::to_string(c.points.size());
  return o;
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Eval: return "eval";
    case Command::Verify: return "verify";
    case Command::Scan: return "scan";
    case Command::Moments: return "moments";
    case Command::Table: return "table";
  }
  return "?";
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '"') c = c == '"' ? '\'' : ' ';
  return s;
}

}  // namespace

ParsedValue parse_value(std::string_view text) { return ValueParser(text).parse(); }

std::optional<RatioClass> parse_ratio(std::string_view text) {
  if (text == "auto" || text.empty()) return std::nullopt;
  if (text == "irrational") return RealIrrational{};
  if (text == "imaginary") return ImaginaryRatio{1.0};
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t p = 0, q = 0;
    const auto r1 = std::from_chars(text.data(), text.data() + slash, p);
    const auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), q);
    if (r1.ec == std::errc() && r1.ptr == text.data() + slash && r2.ec == std::errc() &&
        r2.ptr == text.data() + text.size() && p > 0 && q > 0 && std::gcd(p, q) == 1)
      return Rational{p, q};
  }
  throw DomainError("ratio must be auto, irrational, imaginary or p/q in lowest terms");
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string eval_json(cplx s, const EvalResult& r) {
  return "{\"s_re\":" + format_double(s.real()) + ",\"s_im\":" + format_double(s.imag()) +
         ",\"value_re\":" + format_double(r.value.real()) + ",\"value_im\":" + format_double(r.value.imag()) +
         ",\"err\":" + format_double(r.abs_err_est) + ",\"method\":" + json_string(to_string(r.method)) +
         ",\"terms_used\":" + std::to_string(r.terms_used) + ",\"guard_skips\":" + std::to_string(r.guard_skips) +
         ",\"conditioning_warning\":" + (r.conditioning_warning ? "true" : "false") + "}";
}

std::string eval_csv(const std::vector<std::pair<cplx, EvalResult>>& rows) {
  std::string out = "s_re,s_im,value_re,value_im,err,method\n";
  for (const auto& [s, r] : rows)
    out += format_double(s.real()) + "," + format_double(s.imag()) + "," + format_double(r.value.real()) + "," +
           format_double(r.value.imag()) + "," + format_double(r.abs_err_est) + "," +
           std::string(to_string(r.method)) + "\n";
  return out;
}

std::string scan_csv(const std::vector<ScanRecord>& records) {
  std::string out = "t,abs,method,err\n";
  for (const auto& r : records) {
    if (!r.ok) continue;
    out += format_double(r.t) + "," + format_double(r.magnitude) + "," + std::string(to_string(r.method)) + "," +
           format_double(r.err) + "\n";
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    std::fflush(stdout);
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw DomainError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw DomainError("cannot move output into place at " + path);
  }
}

int run(const JobConfig& config, std::ostream& err) {
  set_deterministic(config.deterministic);
  const std::string_view name = command_name(config.command);
  try {
    const Format fmt = config.format.value_or(
        config.command == Command::Scan || config.command == Command::Moments ? Format::Csv : Format::Json);
    Outcome o;
    switch (config.command) {
      case Command::Eval: o = run_eval(config, fmt); break;
      case Command::Verify: o = run_verify(config, fmt); break;
      case Command::Scan: o = run_scan(config, fmt); break;
      case Command::Moments: o = run_moments(config, fmt); break;
      case Command::Table: o = run_table(config, fmt); break;
    }
    write_output(config.output, o.content);
    err << "barnes-zeta: status=" << (o.exit_code == 0 ? "ok" : "fail") << " command=" << name
        << " exit=" << o.exit_code << " " << o.detail << "\n";
    return o.exit_code;
  } catch (const Error& e) {
    err << "barnes-zeta: status=error command=" << name << " exit=2 kind=" << to_string(e.kind())
        << " message=\"" << one_line(e.what()) << "\"\n";
    return 2;
  } catch (const std::exception& e) {
    err << "barnes-zeta: status=error command=" << name << " exit=2 kind=Internal message=\""
        << one_line(e.what()) << "\"\n";
    return 2;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"Barnes double zeta evaluator and verification harness", "barnes-zeta"};
  app.require_subcommand(1);
  app.fallthrough();
  JobConfig cfg;
  std::string format = "auto";
  std::string method = "auto";

  app.add_option("-o,--output", cfg.output, "Output path, - for stdout");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"auto", "json", "csv"}));
  app.add_flag("--deterministic", cfg.deterministic, "Single-threaded, bit-reproducible run");
  app.add_option("--seed", cfg.seed, "Seed for randomized suites");

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "Shift alpha (complex literal or token)");
    sub->add_option("--v", cfg.v, "Period v");
    sub->add_option("--w", cfg.w, "Period w");
    sub->add_option("--theta", cfg.theta, "Half-plane direction in radians");
    sub->add_option("--ratio", cfg.ratio, "auto, irrational, imaginary or p/q");
    sub->add_option("--target", cfg.target_rel_err, "Dispatcher relative accuracy target");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate zeta_2(s, alpha; v, w)");
  eval->add_option("--s", cfg.s, "Complex argument s");
  eval->add_option("--method", method, "Force a route (DirectSeries, ApproxFE, ...)");
  add_params(eval);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", cfg.suite, "vw11, cross or props");
  verify->add_option("--tol", cfg.tol, "Tolerance (relative for vw11, multiplier for cross)");
  verify->add_option("--s", cfg.s, "Point for the cross suite");
  add_params(verify);

  auto* scan = app.add_subcommand("scan", "Growth scan of |zeta_2(sigma + it)|");
  scan->add_option("--sigma", cfg.sigma, "Real part");
  scan->add_option("--tmin", cfg.t_min, "Smallest t (>= 2)");
  scan->add_option("--tmax", cfg.t_max, "Largest t");
  scan->add_option("--samples-per-decade", cfg.samples_per_decade, "Log-spaced samples per decade");
  scan->add_option("--windows", cfg.windows, "Windows for the exponent fit");
  add_params(scan);

  auto* moments = app.add_subcommand("moments", "Moment integrals of |zeta_2|^{2k}");
  moments->add_option("--sigma", cfg.sigma, "Real part");
  moments->add_option("--k", cfg.k, "Moment order");
  moments->add_option("--T", cfg.T_values, "Upper limits")->delimiter(',');
  moments->add_option("--density", cfg.density, "Quadrature nodes per unit of t");
  add_params(moments);

  auto* table = app.add_subcommand("table", "Evaluate a list of s values");
  table->add_option("--s", cfg.s_list, "Comma-separated s values")->delimiter(',');
  table->add_option("--method", method, "Force a route");
  add_params(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    std::cerr << "barnes-zeta: status=error command=none exit=2 kind=Usage message=\"" << one_line(e.what())
              << "\"\n";
    return 2;
  }

  if (format != "auto") cfg.format = format == "json" ? Format::Json : Format::Csv;
  if (method != "auto") {
    cfg.method = parse_method_tag(method);
    if (!cfg.method) {
      std::cerr << "barnes-zeta: status=error command=none exit=2 kind=Usage message=\"unknown method " << method
                << "\"\n";
      return 2;
    }
  }
  if (*eval) cfg.command = Command::Eval;
  if (*verify) cfg.command = Command::Verify;
  if (*scan) cfg.command = Command::Scan;
  if (*moments) cfg.command = Command::Moments;
  if (*table) cfg.command = Command::Table;
  return run(cfg, std::cerr);
}

}  // namespace barnes::cli
