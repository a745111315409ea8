#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pythmod/circle.hpp"
#include "pythmod/counter.hpp"
#include "pythmod/error.hpp"
#include "pythmod/expsum.hpp"
#include "pythmod/pythagorean.hpp"
#include "pythmod/weights.hpp"

namespace pythmod::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

constexpr const char* kToolVersion = PYTHMOD_VERSION;
constexpr const char* kOutputDirEnv = "PYTHMOD_OUTPUT_DIR";
constexpr const char* kCsvHeader = "p,n,q,N,nu,phi_scale,measured_T,predicted_T0,ratio,method,seconds";

// Thrown by a subcommand whose own cross-check failed.
struct ToleranceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json error_json(const Error& e) { return json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}}; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "a" or "a..b"; b < a is an empty range.
struct IntRange {
  std::int64_t lo;
  std::int64_t hi;
};

IntRange parse_int_range(const std::string& text, const std::string& flag) {
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, flag + ": cannot parse '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::int64_t v = to_int(text);
    return {v, v};
  }
  return {to_int(text.substr(0, dots)), to_int(text.substr(dots + 2))};
}

// "x", "a..b" (step 1) or "a..b:step".
std::vector<double> parse_real_range(const std::string& text, const std::string& flag) {
  auto to_real = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorCode::InvalidArgument, flag + ": cannot parse '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {to_real(text)};
  const auto colon = text.find(':', dots);
  const double lo = to_real(text.substr(0, dots));
  const double hi = to_real(text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
  const double step = colon == std::string::npos ? 1.0 : to_real(text.substr(colon + 1));
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, flag + ": step must be positive");
  std::vector<double> out;
  const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::int64_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

struct Common {
  std::string out;
  unsigned threads = 0;
};

// Where an artifact goes: --out (with "-" meaning the stream), else the
// environment directory, else the stream.
std::optional<fs::path> destination(const Common& c, const std::string& subcommand, const std::string& ext) {
  if (c.out == "-") return std::nullopt;
  if (!c.out.empty()) return fs::path(c.out);
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    return fs::path(dir) / (subcommand + "." + ext);
  }
  return std::nullopt;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

json manifest(const std::string& subcommand, json params, const std::string& output, Clock::time_point start) {
  return json{{"subcommand", subcommand},
              {"params", std::move(params)},
              {"tool_version", kToolVersion},
              {"output", output},
              {"wall_seconds", std::chrono::duration<double>(Clock::now() - start).count()}};
}

// Embeds the manifest as the first member and emits the document.
void emit_json(const std::string& subcommand, const Common& c, json params, json body, Clock::time_point start,
               std::ostream& out, std::ostream& err) {
  const auto path = destination(c, subcommand, "json");
  json doc;
  doc["manifest"] = manifest(subcommand, std::move(params), path ? path->string() : "stdout", start);
  for (auto& [k, v] : body.items()) doc[k] = v;
  const std::string text = doc.dump(2) + "\n";
  if (path) {
    write_file(*path, text);
    err << "wrote " << path->string() << "\n";
  } else {
    out << text;
  }
}

json report_json(const CountReport& r) {
  const CountConfig& c = r.config;
  json j{{"p", c.modulus.p()},
         {"n", c.modulus.n()},
         {"q", c.modulus.q()},
         {"N", c.N},
         {"nu", r.nu()},
         {"weight", c.weight.name()},
         {"phi_scale", c.weight.scale()},
         {"cutoff", c.cutoff},
         {"box_radius", c.box_radius()},
         {"method", std::string(to_string(c.method))},
         {"measured_T", r.measured_T},
         {"predicted_T0", r.predicted_T0},
         {"ratio", r.ratio},
         {"error_term", r.measured_T - r.predicted_T0},
         {"truncation_weight", r.truncation_weight},
         {"seconds", r.wall_seconds}};
  j["exact_box_count"] = r.exact_box_count ? json(*r.exact_box_count) : json(nullptr);
  return j;
}

// Subcommand state; CLI11 binds into these.
struct CountArgs {
  std::uint64_t p = 0;
  int n = 0;
  double N = 0.0;
  double phi_scale = 1.0;
  double cutoff = kDefaultCutoff;
  std::string method = "sqrt-bucket";
  bool exact = false;
};

struct ScanArgs {
  std::uint64_t p = 0;
  std::string n_range;
  std::string N_range;
  std::optional<double> nu;
  double phi_scale = 1.0;
  double cutoff = kDefaultCutoff;
  std::string method = "sqrt-bucket";
};

struct ExpsumArgs {
  std::uint64_t p = 0;
  int n = 0;
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
  std::int64_t x3 = 0;
  std::optional<std::int64_t> alpha;
  std::string mode = "both";
};

struct ParamArgs {
  std::uint64_t p = 0;
  int n = 0;
  bool solutions = false;
};

int cmd_count(const CountArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  CountConfig cfg{PrimePowerModulus(a.p, a.n), a.N, gaussian(a.phi_scale), a.cutoff, parse_count_method(a.method), c.threads};
  CountReport r = count_smoothed(cfg);
  if (a.exact) r.exact_box_count = count_box_exact(cfg.modulus, static_cast<std::int64_t>(std::floor(a.N)), c.threads);
  const json params{{"p", a.p}, {"n", a.n}, {"N", a.N}, {"phi_scale", a.phi_scale}, {"cutoff", a.cutoff},
                    {"method", a.method}, {"exact", a.exact}, {"threads", c.threads}};
  emit_json("count", c, params, json{{"report", report_json(r)}}, start, out, err);
  return kExitOk;
}

int cmd_scan(const ScanArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const IntRange ns = parse_int_range(a.n_range, "--n");
  if (ns.hi < ns.lo) throw Error(ErrorCode::InvalidArgument, "--n: empty range " + a.n_range);
  if (a.N_range.empty() == !a.nu.has_value()) throw Error(ErrorCode::InvalidArgument, "give exactly one of --N and --nu");
  std::vector<double> Ns;
  if (!a.N_range.empty()) {
    Ns = parse_real_range(a.N_range, "--N");
    if (Ns.empty()) throw Error(ErrorCode::InvalidArgument, "--N: empty range " + a.N_range);
  }
  const CountMethod method = parse_count_method(a.method);

  std::ostringstream csv;
  csv << kCsvHeader << "\r\n";
  std::size_t rows = 0;
  for (std::int64_t n = ns.lo; n <= ns.hi; ++n) {
    const PrimePowerModulus m(a.p, static_cast<int>(n));
    const std::vector<double> row_Ns =
        a.nu ? std::vector<double>{std::ceil(std::pow(static_cast<double>(m.q()), *a.nu) - 1e-9)} : Ns;
    for (double N : row_Ns) {
      const CountConfig cfg{m, N, gaussian(a.phi_scale), a.cutoff, method, c.threads};
      const CountReport r = count_smoothed(cfg);
      csv << m.p() << ',' << m.n() << ',' << m.q() << ',' << format_double(N) << ',' << format_double(r.nu()) << ','
          << format_double(a.phi_scale) << ',' << format_double(r.measured_T) << ',' << format_double(r.predicted_T0) << ','
          << format_double(r.ratio) << ',' << to_string(method) << ',' << format_double(r.wall_seconds) << "\r\n";
      ++rows;
    }
  }

  json params{{"p", a.p}, {"n", a.n_range}, {"phi_scale", a.phi_scale}, {"cutoff", a.cutoff}, {"method", a.method},
              {"threads", c.threads}};
  params["N"] = a.N_range.empty() ? json(nullptr) : json(a.N_range);
  params["nu"] = a.nu ? json(*a.nu) : json(nullptr);
  const auto path = destination(c, "scan", "csv");
  json sidecar = manifest("scan", params, path ? path->string() : "stdout", start);
  sidecar["rows"] = rows;
  sidecar["columns"] = kCsvHeader;
  if (path) {
    write_file(*path, csv.str());
    write_file(fs::path(path->string() + ".manifest.json"), sidecar.dump(2) + "\n");
    err << "wrote " << path->string() << "\n";
  } else {
    out << csv.str();
    err << sidecar.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_expsum(const ExpsumArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  if (a.mode != "brute" && a.mode != "closed" && a.mode != "both") {
    throw Error(ErrorCode::InvalidArgument, "--mode must be brute, closed or both");
  }
  const bool brute = a.mode != "closed";
  const bool closed = a.mode != "brute";
  const PrimePowerModulus m(a.p, a.n);
  const ExpSumSpec spec = make_exp_sum_spec(a.k1, a.k2, a.x3, m);
  const double tolerance = kOracleTolerance * std::sqrt(static_cast<double>(m.q()));

  json body;
  body["spec"] = json{{"k1", a.k1}, {"k2", a.k2}, {"x3", a.x3}, {"p", m.p()}, {"n", m.n()}, {"q", m.q()},
                      {"r", spec.r}, {"l1", spec.l1}, {"l2", spec.l2}, {"D", spec.D}};
  std::optional<Complex> b, s;
  if (a.alpha) {
    const RationalFunction f = circle_phase(a.k1, a.k2, a.x3);
    body["alpha"] = *a.alpha;
    if (brute) b = s_alpha_bruteforce(f, *a.alpha, m);
    if (closed) {
      try {
        const CochraneEvaluation ev = s_alpha_cochrane(f, *a.alpha, m);
        s = ev.value;
        json detail{{"case", ev.kind == StationaryCase::Vanishing ? "vanishing" : "simple-root"}, {"r", ev.r}};
        detail["lifted_root"] = ev.lifted_root ? json(*ev.lifted_root) : json(nullptr);
        detail["legendre_a"] = ev.legendre_a;
        body["closed_detail"] = detail;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::HypothesisViolated) throw;
        body["closed_error"] = error_json(e);
      }
    }
  } else {
    if (spec.l1 % static_cast<std::int64_t>(m.p()) != 0 && spec.l2 % static_cast<std::int64_t>(m.p()) != 0) {
      const KeyCongruenceRoots roots = key_congruence_roots(spec.l1, spec.l2, m.p());
      body["roots"] = roots.roots;
      body["double_root"] = roots.double_root;
    }
    if (brute) b = e_sum(spec, SumMode::BruteForce);
    if (closed) {
      try {
        s = e_sum(spec, SumMode::Closed);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::HypothesisViolated) throw;
        body["closed_error"] = error_json(e);
      }
    }
  }
  if (b) body["brute"] = complex_json(*b);
  if (s) body["closed"] = complex_json(*s);
  bool ok = true;
  if (b && s) {
    const double diff = std::abs(*b - *s);
    body["oracle_diff"] = diff;
    body["tolerance"] = tolerance;
    ok = diff <= tolerance;
  }
  json params{{"p", a.p}, {"n", a.n}, {"k1", a.k1}, {"k2", a.k2}, {"x3", a.x3}, {"mode", a.mode}};
  params["alpha"] = a.alpha ? json(*a.alpha) : json(nullptr);
  emit_json("expsum", c, params, body, start, out, err);
  if (!ok) throw ToleranceFailure("closed form and brute force disagree beyond 1e-9 sqrt(q)");
  return kExitOk;
}

int cmd_param(const ParamArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const PrimePowerModulus m(a.p, a.n);
  json points = json::array();
  for (const Residue& t : enumerate_admissible_t(m)) {
    const CircleParamPoint pt = param_point(static_cast<std::int64_t>(t.value()), m);
    points.push_back(json{{"t", t.value()}, {"y1", pt.y1.value()}, {"y2", pt.y2.value()}});
  }
  json body{{"q", m.q()}, {"admissible_count", points.size()}, {"expected_count", admissible_count(m)}, {"points", points}};
  bool ok = points.size() == admissible_count(m);
  if (a.solutions) {
    const auto sols = enumerate_circle_solutions(m);
    body["circle_solution_count"] = sols.size();
    ok = ok && sols.size() == points.size();
  }
  emit_json("param", c, json{{"p", a.p}, {"n", a.n}, {"solutions", a.solutions}}, body, start, out, err);
  if (!ok) throw ToleranceFailure("admissible parameters do not match the expected count");
  return kExitOk;
}

int cmd_gauss(std::uint64_t q, const Common& c, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const Complex closed = gauss_sum_closed(q);
  const Complex brute = gauss_sum_bruteforce(q);
  const double diff = std::abs(brute - closed);
  const double tolerance = kOracleTolerance * std::sqrt(static_cast<double>(q));
  emit_json("gauss", c, json{{"q", q}},
            json{{"brute", complex_json(brute)}, {"closed", complex_json(closed)}, {"oracle_diff", diff}, {"tolerance", tolerance}},
            start, out, err);
  if (diff > tolerance) throw ToleranceFailure("Gauss sum modes disagree");
  return kExitOk;
}

int cmd_poisson(double scale, const Common& c, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const PoissonCheck pc = poisson_check(gaussian(scale));
  constexpr double tolerance = 1e-12;
  emit_json("poisson", c, json{{"phi_scale", scale}},
            json{{"weight", "gaussian"}, {"lhs", pc.lhs}, {"rhs", pc.rhs}, {"diff", pc.diff}, {"tolerance", tolerance}}, start,
            out, err);
  if (std::abs(pc.diff) > tolerance) throw ToleranceFailure("Poisson sides disagree");
  return kExitOk;
}

int cmd_triples(std::int64_t N, const Common& c, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const std::uint64_t count = count_pythagorean(N);
  json body{{"N", N}, {"count", count}};
  if (N >= 2) {
    const double asymptotic = pythagorean_asymptotic(static_cast<double>(N));
    body["asymptotic"] = asymptotic;
    body["ratio"] = static_cast<double>(count) / asymptotic;
  } else {
    body["asymptotic"] = nullptr;
    body["ratio"] = nullptr;
  }
  emit_json("triples", c, json{{"N", N}}, body, start, out, err);
  return kExitOk;
}

int cmd_transition(std::uint64_t p, int n, std::int64_t N, const Common& c, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const TransitionCheck t = transition_check(PrimePowerModulus(p, n), N, c.threads);
  emit_json("transition", c, json{{"p", p}, {"n", n}, {"N", N}, {"threads", c.threads}},
            json{{"congruence_count", t.congruence_count}, {"equation_count", t.equation_count}, {"equal", t.equal}}, start,
            out, err);
  if (!t.equal) throw ToleranceFailure("congruence and equation counts differ below sqrt(q/2)");
  return kExitOk;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "artifact path; '-' forces stdout; default $PYTHMOD_OUTPUT_DIR/<subcommand>.<ext>");
  sub->add_option("--threads", c.threads, "worker cap for data-parallel kernels; 0 = all cores; results independent of it");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pythmod: unit solutions of x1^2 + x2^2 = x3^2 mod p^n, circle exponential sums and their checks", "pythmod"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Common common;

  CountArgs count;
  auto* c = app.add_subcommand("count", "smoothed unit-solution count T against the main term T0");
  c->add_option("--p", count.p, "odd prime p > 5; base of the modulus q = p^n")->required();
  c->add_option("--n", count.n, "exponent n >= 1 of q = p^n")->required();
  c->add_option("--N", count.N, "box scale N >= 1; each coordinate is weighted by Phi(x/N)")->required();
  c->add_option("--phi-scale", count.phi_scale, "Gaussian width s: Phi(x) = exp(-pi (x/s)^2), hat(Phi)(0) = s");
  c->add_option("--cutoff", count.cutoff, "box half-width in units of N; must reach the weight's 1e-12 tail");
  c->add_option("--method", count.method, "sqrt-bucket (q <= 2^26) or triple-loop ((2 cutoff N)^3 <= 1e9)");
  c->add_flag("--exact", count.exact, "also report the exact unit-solution count in the box max|x_i| <= floor(N)");
  add_common(c, common);

  ScanArgs scan;
  auto* s = app.add_subcommand("scan", "CSV sweep of count over n and N as q = p^n grows");
  s->add_option("--p", scan.p, "odd prime p > 5; base of the modulus q = p^n")->required();
  s->add_option("--n", scan.n_range, "exponent n or inclusive range a..b")->required();
  s->add_option("--N", scan.N_range, "box scale N, or a..b[:step] (default step 1)");
  s->add_option("--nu", scan.nu, "sets N = ceil(q^nu) per row (nu = log N / log q)");
  s->add_option("--phi-scale", scan.phi_scale, "Gaussian width s: Phi(x) = exp(-pi (x/s)^2)");
  s->add_option("--cutoff", scan.cutoff, "box half-width in units of N");
  s->add_option("--method", scan.method, "sqrt-bucket or triple-loop");
  add_common(s, common);

  ExpsumArgs es;
  auto* e = app.add_subcommand("expsum", "E = sum over admissible t of e_q(x3 (k1 (1-t^2) + 2 k2 t) / (1+t^2))");
  e->add_option("--p", es.p, "odd prime p")->required();
  e->add_option("--n", es.n, "exponent n of q = p^n; the closed form needs n >= 2")->required();
  e->add_option("--k1", es.k1, "first dual frequency k1")->required();
  e->add_option("--k2", es.k2, "second dual frequency k2; (k1, k2) != (0, 0) mod q")->required();
  e->add_option("--x3", es.x3, "unit multiplier x3 of the circle phase")->required();
  e->add_option("--alpha", es.alpha, "restrict to t = alpha mod p (the stationary-phase piece S_alpha)");
  e->add_option("--mode", es.mode, "brute (direct sum), closed (stationary phase) or both (with oracle_diff)");
  add_common(e, common);

  ParamArgs pa;
  auto* pm = app.add_subcommand("param", "admissible t and the circle points ((1-t^2)/(1+t^2), 2t/(1+t^2))");
  pm->add_option("--p", pa.p, "odd prime p")->required();
  pm->add_option("--n", pa.n, "exponent n of q = p^n")->required();
  pm->add_flag("--solutions", pa.solutions, "also count unit circle points by exhaustive search (q <= 1e6)");
  add_common(pm, common);

  std::uint64_t gauss_q = 0;
  auto* g = app.add_subcommand("gauss", "quadratic Gauss sum G_q, brute force and closed form");
  g->add_option("--q", gauss_q, "odd modulus q >= 1; brute force needs q <= 1e6")->required();
  add_common(g, common);

  double poisson_scale = 1.0;
  auto* po = app.add_subcommand("poisson", "sum Phi(n) against sum hat(Phi)(n) for a Gaussian weight");
  po->add_option("--phi-scale", poisson_scale, "Gaussian width s > 0");
  add_common(po, common);

  std::int64_t triples_N = 0;
  auto* tr = app.add_subcommand("triples", "integer triples x1^2 + x2^2 = x3^2 with |x3| <= N, against (8/pi) N log N");
  tr->add_option("--N", triples_N, "bound on |x3|, at most 1e7")->required();
  add_common(tr, common);

  std::uint64_t tp = 0;
  int tn = 0;
  std::int64_t tN = 0;
  auto* ts = app.add_subcommand("transition", "below N = sqrt(q/2) every congruence solution is an exact triple");
  ts->add_option("--p", tp, "odd prime p")->required();
  ts->add_option("--n", tn, "exponent n of q = p^n")->required();
  ts->add_option("--N", tN, "integer box bound with 2 N^2 < q")->required();
  add_common(ts, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*c) return cmd_count(count, common, out, err);
    if (*s) return cmd_scan(scan, common, out, err);
    if (*e) return cmd_expsum(es, common, out, err);
    if (*pm) return cmd_param(pa, common, out, err);
    if (*g) return cmd_gauss(gauss_q, common, out, err);
    if (*po) return cmd_poisson(poisson_scale, common, out, err);
    if (*tr) return cmd_triples(triples_N, common, out, err);
    if (*ts) return cmd_transition(tp, tn, tN, common, out, err);
  } catch (const Error& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const ToleranceFailure& ex) {
    err << "tolerance failure: " << ex.what() << "\n";
    return kExitTolerance;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace pythmod::cli
