#include "bpslab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <random>

#include <CLI11.hpp>

#include "bpslab/analytics.hpp"
#include "bpslab/convolution.hpp"
#include "bpslab/errors.hpp"
#include "bpslab/report.hpp"
#include "bpslab/spec_io.hpp"

namespace bpslab {
namespace {

struct RunConfig {
  std::string spec, spec1, spec2, preset;
  double tol = kDefaultZeroTolerance;
  unsigned threads = 1;
  double mem_gib = 0.0;  // 0: BPSLAB_MEM_GIB or the default
  std::string csv, svg;

  // command-specific
  double n = 0, N = 0, x = 0, X = 0, xmax = 0, nmax = 1e6;
  double samples = 100, seed = 1;
  double residual_tol = 1e-6;
  double a = 1, b = 1, m = 1, c = 0.6931471805599453;
  std::vector<double> moduli, xs, ns;
  bool partial = false;

  MemoryBudget budget() const {
    return mem_gib > 0.0 ? MemoryBudget::from_gib(mem_gib) : MemoryBudget::from_env();
  }
  IntegrationOptions integration() const { return {std::max(1u, threads)}; }
};

bool looks_like_preset(const std::string& s) {
  return s == "one" || s == "parity" || s == "example1" || s == "example2" ||
         s.rfind("qperiodic:", 0) == 0;
}

MultiplicativeSpec resolve(const std::string& source) {
  if (source.empty()) throw InputError("missing spec: pass --spec <path|preset> or --preset <name>");
  return looks_like_preset(source) ? preset(source) : load_spec_file(source);
}

MultiplicativeSpec primary_spec(const RunConfig& cfg) {
  if (!cfg.preset.empty() && !cfg.spec.empty())
    throw InputError("--spec and --preset are mutually exclusive");
  return cfg.preset.empty() ? resolve(cfg.spec) : preset(cfg.preset);
}

std::uint64_t to_count(double v, const char* name) {
  if (!(v >= 1.0) || v != std::floor(v) || !(v < 18446744073709551616.0))
    throw InputError(std::string("--") + name + " must be a positive integer");
  return static_cast<std::uint64_t>(v);
}

std::string complex_text(Complex z) {
  return format_double(z.real()) + (z.imag() < 0 ? " - " : " + ") +
         format_double(std::fabs(z.imag())) + "i";
}

// CSV goes to --csv when given, otherwise to stdout.
class CsvSink {
 public:
  CsvSink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw IoError("cannot write '" + path + "'");
      out_ = file_.get();
    }
  }
  std::ostream& stream() { return *out_; }
  bool to_file() const { return file_ != nullptr; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw IoError("write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const auto spec = primary_spec(cfg);
  const auto report = check_conditions(spec, cfg.tol);
  out << "period: " << report.period << '\n';
  out << "tolerance: " << format_double(report.tolerance) << '\n';
  for (const auto& e : report.entries)
    out << "euler_factor q=" << e.q << ": " << complex_text(e.factor)
        << (e.is_zero ? "  (vanishes)" : "") << '\n';
  out << "condition_i: " << (report.condition_i_holds ? "holds" : "fails");
  if (auto q = report.vanishing_prime()) out << " at q=" << *q;
  out << '\n';
  out << "condition_ii: holds (structural)\n";
  out << "condition_iii: holds (structural)\n";
  out << "period_sum_formula: " << complex_text(period_sum_formula(spec)) << '\n';
  if (report.period <= 100'000'000) {
    const auto direct = period_sum_direct(spec);
    out << "period_sum_direct: " << complex_text(direct.sum) << '\n';
    out << "partial_sum_bound: " << format_double(direct.abs_sum) << '\n';
  }
  out << "verdict: " << (report.condition_i_holds ? "bounded partial sums" : "unbounded partial sums")
      << '\n';
  return report.condition_i_holds ? kExitOk : kExitVerdictFailed;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const auto spec = primary_spec(cfg);
  const auto n = to_count(cfg.n, "n");
  const Complex v = evaluate(spec, n);
  write_csv_row(out, {"n", "re", "im"});
  write_csv_row(out, {std::to_string(n), format_double(v.real()), format_double(v.imag())});
  return kExitOk;
}

int cmd_sum(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const auto spec = primary_spec(cfg);
  const auto n = to_count(cfg.N, "N");
  const ValueTable sums = prefix_sums(sieve_values(spec, n, cfg.budget()));
  CsvSink sink(cfg.csv, out);
  write_partial_sums_csv(sink.stream(), sums);
  sink.close();
  if (sink.to_file()) {
    double worst = 0.0;
    std::uint64_t at = 1;
    for (std::uint64_t x = 1; x <= sums.size(); ++x) {
      if (std::abs(sums[x]) > worst) {
        worst = std::abs(sums[x]);
        at = x;
      }
    }
    out << "max |S(x)|: " << format_double(worst) << " at x=" << at << '\n';
  }
  return kExitOk;
}

int cmd_convolve(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const auto f1 = resolve(cfg.spec1), f2 = resolve(cfg.spec2);
  const auto n = to_count(cfg.N, "N");
  const auto budget = cfg.budget();
  CsvSink sink(cfg.csv, out);
  if (cfg.partial)
    write_partial_sums_csv(sink.stream(), convolution_partial_sums(f1, f2, n, budget));
  else
    write_table_csv(sink.stream(),
                    dirichlet_convolve(sieve_values(f1, n, budget), sieve_values(f2, n, budget)));
  sink.close();
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f1 = resolve(cfg.spec1), f2 = resolve(cfg.spec2);
  const auto coeffs = convolution_coeffs(f1, f2);
  std::vector<double> xs = cfg.xs;
  if (xs.empty()) {
    const double lo = static_cast<double>(coeffs.modulus);
    if (!(cfg.xmax > lo)) throw InputError("--xmax must exceed m1*m2 = " + std::to_string(coeffs.modulus));
    std::mt19937_64 rng(static_cast<std::uint64_t>(cfg.seed));
    std::uniform_real_distribution<double> dist(lo, cfg.xmax);
    const auto count = to_count(cfg.samples, "samples");
    while (xs.size() < count) {
      const double x = dist(rng);
      if (x > lo) xs.push_back(x);
    }
  }
  const auto result = verify_theorem4(f1, f2, xs, cfg.budget());
  CsvSink sink(cfg.csv, out);
  write_csv_row(sink.stream(), {"x", "left_re", "left_im", "right_re", "right_im", "residual"});
  for (const auto& r : result.rows)
    write_csv_row(sink.stream(), {format_double(r.x), format_double(r.left.real()),
                                  format_double(r.left.imag()), format_double(r.right.real()),
                                  format_double(r.right.imag()), format_double(r.residual)});
  sink.close();
  const bool ok = result.max_scaled_residual <= cfg.residual_tol;
  std::ostream& summary = sink.to_file() ? out : err;
  summary << "samples: " << result.rows.size() << '\n'
          << "max_residual: " << format_double(result.max_residual) << '\n'
          << "max_scaled_residual: " << format_double(result.max_scaled_residual) << '\n'
          << "identity: " << (ok ? "verified" : "FAILED") << '\n';
  return ok ? kExitOk : kExitVerdictFailed;
}

int cmd_delta(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  write_csv_row(out, {"x", "D", "delta"});
  std::vector<double> xs = cfg.xs;
  if (xs.empty()) xs.push_back(cfg.x);
  for (double x : xs)
    write_csv_row(out, {format_double(x), std::to_string(tau_summatory(x)), format_double(delta(x))});
  return kExitOk;
}

int cmd_tong(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const auto est = tong_constant(to_count(cfg.nmax, "nmax"), cfg.budget());
  out << "n_max: " << est.n_max << '\n'
      << "zeta(3/2): " << format_double(est.zeta_3_2) << '\n'
      << "zeta(3): " << format_double(est.zeta_3) << '\n'
      << "A_zeta: " << format_double(est.a_zeta) << '\n'
      << "A_series: " << format_double(est.a_series) << '\n'
      << "tail_bracket: [0, " << format_double(est.tail_bracket) << "]\n"
      << "relative_disagreement: " << format_double(est.relative_disagreement()) << '\n'
      << "bracket_contains_A_zeta: " << (est.bracket_contains_reference() ? "yes" : "no") << '\n';
  return kExitOk;
}

int cmd_l2(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  std::vector<double> ns = cfg.ns;
  if (ns.empty()) ns.push_back(1);
  const double a = tong_constant_reference();
  CsvSink sink(cfg.csv, out);
  write_csv_row(sink.stream(), {"n", "X", "norm", "ratio_to_tong"});
  for (double nd : ns) {
    const auto n = to_count(nd, "n");
    const double norm = l2_norm_delta(n, cfg.X, cfg.integration(), cfg.budget());
    write_csv_row(sink.stream(), {std::to_string(n), format_double(cfg.X), format_double(norm),
                                  format_double(l2_tong_ratio(norm, n, cfg.X, a))});
  }
  sink.close();
  return kExitOk;
}

int cmd_gram(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<ConvolutionCoeffs> coeffs;
  if (!cfg.spec1.empty() || !cfg.spec2.empty())
    coeffs = convolution_coeffs(resolve(cfg.spec1), resolve(cfg.spec2));
  std::vector<std::uint64_t> moduli;
  for (double v : cfg.moduli) moduli.push_back(to_count(v, "moduli"));
  if (moduli.empty() && coeffs) moduli = coeffs->moduli();
  if (moduli.empty()) throw InputError("gram: pass --moduli or a spec pair");

  const auto gram = gram_matrix(moduli, cfg.X, cfg.integration(), cfg.budget());
  CsvSink sink(cfg.csv, out);
  write_csv_row(sink.stream(), {"i", "j", "value"});
  for (std::size_t i = 0; i < gram.dim(); ++i)
    for (std::size_t j = 0; j < gram.dim(); ++j)
      write_csv_row(sink.stream(), {std::to_string(gram.moduli[i]), std::to_string(gram.moduli[j]),
                                    format_double(gram.entry(i, j))});
  sink.close();
  std::ostream& info = sink.to_file() ? out : err;
  info << "X: " << format_double(gram.X) << '\n' << "eigenvalues:";
  bool all_positive = true;
  for (double ev : gram.eigen.eigenvalues) {
    info << ' ' << format_double(ev);
    all_positive = all_positive && ev > 0.0;
  }
  info << '\n'
       << "jacobi_sweeps: " << gram.eigen.sweeps << '\n'
       << "all_eigenvalues_positive: " << (all_positive ? "yes" : "no") << '\n';
  if (coeffs) info << "quadratic_form: " << format_double(quadratic_form(*coeffs, gram)) << '\n';
  return kExitOk;
}

int cmd_taucorr(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const auto a = to_count(cfg.a, "a"), b = to_count(cfg.b, "b"), x = to_count(cfg.x, "x");
  write_csv_row(out, {"a", "b", "x", "sum"});
  write_csv_row(out, {std::to_string(a), std::to_string(b), std::to_string(x),
                      std::to_string(tau_correlation(a, b, x, cfg.budget()))});
  return kExitOk;
}

int cmd_witness(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  const auto w = omega_witness(to_count(cfg.m, "m"), to_count(cfg.x, "x"), cfg.c);
  write_csv_row(out, {"x", "m", "n", "tau", "omega", "c", "ratio"});
  write_csv_row(out, {std::to_string(w.x), std::to_string(w.m), std::to_string(w.n),
                      std::to_string(w.tau_n), std::to_string(w.omega_n), format_double(w.c),
                      format_double(w.ratio)});
  return kExitOk;
}

int cmd_figure1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto data = figure1(to_count(cfg.xmax, "xmax"), cfg.budget());
  CsvSink sink(cfg.csv, out);
  write_figure1_csv(sink.stream(), data);
  sink.close();
  if (!cfg.svg.empty()) {
    std::ofstream svg(cfg.svg);
    if (!svg) throw IoError("cannot write '" + cfg.svg + "'");
    SvgSeries s{"partial sums of f*f", "black", false, {}};
    SvgSeries up{"4 x^(1/4)", "gray", true, {}};
    SvgSeries lo{"-4 x^(1/4)", "gray", true, {}};
    for (const auto& r : data.rows) {
      s.points.emplace_back(static_cast<double>(r.x), r.partial_sum);
      up.points.emplace_back(static_cast<double>(r.x), r.upper);
      lo.points.emplace_back(static_cast<double>(r.x), r.lower);
    }
    write_svg(svg, {s, up, lo}, "f(n) = (-1)^(n+1): partial sums of f*f");
    if (!svg) throw IoError("write failed for '" + cfg.svg + "'");
  }
  std::ostream& info = sink.to_file() ? out : err;
  if (data.first_violation)
    info << "envelope_violation: first at x=" << *data.first_violation << '\n';
  else
    info << "envelope_violation: none up to x=" << data.rows.size() << '\n';
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input:
    case ErrorKind::range:
    case ErrorKind::domain: return kExitValidation;
    case ErrorKind::resource: return kExitResource;
    case ErrorKind::numeric: return kExitNumeric;
    case ErrorKind::io: return kExitIo;
  }
  return kExitValidation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bounded partial sums lab: periodic multiplicative functions and the divisor problem"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "zero tolerance for Euler factors")->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--mem", cfg.mem_gib, "memory budget in GiB (default: $BPSLAB_MEM_GIB or 2)");
    sub->add_option("--csv", cfg.csv, "CSV output path (default: stdout)");
  };
  auto one_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec, "spec JSON file or preset name");
    sub->add_option("--preset", cfg.preset, "one | parity | example1 | example2 | qperiodic:<q>");
  };
  auto two_specs = [&](CLI::App* sub, bool required) {
    auto* o1 = sub->add_option("--spec1", cfg.spec1, "first spec (file or preset)");
    auto* o2 = sub->add_option("--spec2", cfg.spec2, "second spec (file or preset)");
    if (required) {
      o1->required();
      o2->required();
    }
  };

  std::function<int()> action;
  auto bind = [&](CLI::App* sub, int (*fn)(const RunConfig&, std::ostream&, std::ostream&)) {
    sub->callback([&, fn] { action = [&, fn] { return fn(cfg, out, err); }; });
  };

  auto* check = app.add_subcommand("check", "validate conditions i-iii and the period sum");
  one_spec(check);
  common(check);
  bind(check, cmd_check);

  auto* eval = app.add_subcommand("eval", "evaluate f(n)");
  one_spec(eval);
  common(eval);
  eval->add_option("--n", cfg.n, "argument n")->required();
  bind(eval, cmd_eval);

  auto* sum = app.add_subcommand("sum", "partial sums of f up to N (CSV x,re,im)");
  one_spec(sum);
  common(sum);
  sum->add_option("--N", cfg.N, "range limit")->required();
  bind(sum, cmd_sum);

  auto* conv = app.add_subcommand("convolve", "table of f1*f2 up to N (CSV n,re,im)");
  two_specs(conv, true);
  common(conv);
  conv->add_option("--N", cfg.N, "range limit")->required();
  conv->add_flag("--partial", cfg.partial, "emit partial sums (CSV x,re,im)");
  bind(conv, cmd_convolve);

  auto* verify = app.add_subcommand("verify-thm4", "check sum f1*f2 = sum g(n) Delta(x/n) for x > m1 m2");
  two_specs(verify, true);
  common(verify);
  verify->add_option("--xmax", cfg.xmax, "upper end of the sampling range");
  verify->add_option("--samples", cfg.samples, "number of random samples");
  verify->add_option("--seed", cfg.seed, "RNG seed");
  verify->add_option("--x", cfg.xs, "explicit sample points");
  verify->add_option("--residual-tol", cfg.residual_tol, "bound on |left-right|/(1+|left|)");
  bind(verify, cmd_verify);

  auto* dcmd = app.add_subcommand("delta", "D(x) and Delta(x)");
  common(dcmd);
  dcmd->add_option("--x", cfg.xs, "x >= 1 (repeatable)")->required();
  bind(dcmd, cmd_delta);

  auto* tong = app.add_subcommand("tong", "the constant A by series and by zeta values");
  common(tong);
  tong->add_option("--nmax", cfg.nmax, "series truncation point (>= 1000)");
  bind(tong, cmd_tong);

  auto* l2 = app.add_subcommand("l2", "L2[1,X] norms of Delta(x/n) (CSV n,X,norm,ratio_to_tong)");
  common(l2);
  l2->add_option("--n", cfg.ns, "dilations (repeatable)");
  l2->add_option("--X", cfg.X, "integration endpoint")->required();
  bind(l2, cmd_l2);

  auto* gram = app.add_subcommand("gram", "Gram matrix of dilated Delta and its eigenvalues");
  two_specs(gram, false);
  common(gram);
  gram->add_option("--moduli", cfg.moduli, "dilations n_1..n_T")->delimiter(',');
  gram->add_option("--X", cfg.X, "integration endpoint")->required();
  bind(gram, cmd_gram);

  auto* taucorr = app.add_subcommand("tau-corr", "sum_{n<=x} tau(an) tau(bn)");
  common(taucorr);
  taucorr->add_option("--a", cfg.a)->required();
  taucorr->add_option("--b", cfg.b)->required();
  taucorr->add_option("--x", cfg.x)->required();
  bind(taucorr, cmd_taucorr);

  auto* witness = app.add_subcommand("witness", "n <= x coprime to m with maximal tau(n)");
  common(witness);
  witness->add_option("--m", cfg.m, "coprimality modulus");
  witness->add_option("--x", cfg.x, "bound (>= 30)")->required();
  witness->add_option("--c", cfg.c, "exponent constant in exp(c log x / log log x)");
  bind(witness, cmd_witness);

  auto* fig = app.add_subcommand("figure1", "partial sums of (-1)^(n+1) * itself vs +-4 x^(1/4)");
  common(fig);
  fig->add_option("--xmax", cfg.xmax, "largest x (>= 16)")->required();
  fig->add_option("--svg", cfg.svg, "SVG output path");
  bind(fig, cmd_figure1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    return action();
  } catch (const DomainError& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << " (raw value "
        << format_double(e.raw_value) << ")\n";
    return exit_code_for(e.kind());
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::bad_alloc&) {
    err << "error[resource]: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << '\n';
    return kExitVerdictFailed;
  }
}

}  // namespace bpslab
