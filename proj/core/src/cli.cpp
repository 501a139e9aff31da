#include "recq/cli.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "recq/errors.hpp"
#include "recq/ffzeros.hpp"
#include "recq/io.hpp"
#include "recq/parallel.hpp"
#include "recq/polyzero.hpp"
#include "recq/quotient.hpp"
#include "recq/wirsing.hpp"

namespace recq::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string fd(double v) { return io::format_double(v); }

struct Output {
  std::string format = "json";  // json | csv
  std::string path;             // empty = stdout
  std::string subcommand;
  ojson params;

  std::ostream& stream(std::ostream& fallback,
                       std::unique_ptr<std::ofstream>& holder) const {
    if (path.empty()) return fallback;
    holder = std::make_unique<std::ofstream>(path);
    if (!*holder) throw domain_error("cannot write output file: " + path);
    return *holder;
  }

  void emit_json(const ojson& result, std::ostream& fallback) const {
    std::unique_ptr<std::ofstream> holder;
    std::ostream& os = stream(fallback, holder);
    ojson envelope;
    envelope["schema_version"] = 1;
    envelope["tool"] = "recq";
    envelope["version"] = kVersion;
    envelope["subcommand"] = subcommand;
    envelope["params"] = params;
    envelope["result"] = result;
    os << envelope.dump(2) << "\n";
  }

  void emit_csv(const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows,
                const std::vector<std::pair<std::string, std::string>>& notes,
                std::ostream& fallback) const {
    std::unique_ptr<std::ofstream> holder;
    std::ostream& os = stream(fallback, holder);
    // metadata comments keep the run replayable from the file alone
    os << "# tool=recq version=" << kVersion << " subcommand=" << subcommand
       << "\n";
    os << "# params=" << params.dump() << "\n";
    for (const auto& [k, v] : notes) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
      os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << row[i];
      os << "\n";
    }
  }
};

// ---------------------------------------------------------------------------
// problem selection shared by count-quotients and split
// ---------------------------------------------------------------------------

struct ProblemFlags {
  bool fib = false;
  std::string lucas;     // "a,b"
  std::string hl_tuple;  // "0,2"
  std::string file;
  std::string g_text;
  std::string invert;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& pf) {
  cmd->add_flag("--fib", pf.fib, "Fibonacci numbers");
  cmd->add_option("--lucas", pf.lucas, "Lucas sequence 'a,b'");
  cmd->add_option("--hl-family", pf.hl_tuple,
                  "Hardy-Littlewood family for a tuple, e.g. '0,2'");
  cmd->add_option("--problem", pf.file, "problem file (JSON)");
  cmd->add_option("--g", pf.g_text,
                  "divisor polynomial G: 'x' or coefficients low-to-high");
  cmd->add_option("--invert-primes", pf.invert,
                  "primes inverted in the target ring (the set S)");
}

QuotientProblem build_problem(const ProblemFlags& pf, ojson& params) {
  const int sources = int(pf.fib) + int(!pf.lucas.empty()) +
                      int(!pf.hl_tuple.empty()) + int(!pf.file.empty());
  if (sources != 1)
    throw CLI::ValidationError(
        "problem", "exactly one of --fib/--lucas/--hl-family/--problem");
  std::vector<u64> s = io::parse_u64_list(pf.invert);
  params["invert_primes"] = s;
  if (pf.fib) {
    params["problem"] = "fibonacci";
    if (pf.g_text.empty())
      throw CLI::ValidationError("--g", "required with --fib");
    params["g"] = pf.g_text;
    CompanionRecurrence rec;
    rec.coeffs = {1, 1};
    rec.init = {0, 1};
    return QuotientProblem::from_companion(std::move(rec),
                                           io::parse_poly(pf.g_text),
                                           std::move(s));
  }
  if (!pf.lucas.empty()) {
    const auto ab = io::parse_mpz_list(pf.lucas);
    if (ab.size() != 2)
      throw CLI::ValidationError("--lucas", "expects 'a,b'");
    params["problem"] = "lucas:" + pf.lucas;
    if (pf.g_text.empty())
      throw CLI::ValidationError("--g", "required with --lucas");
    params["g"] = pf.g_text;
    CompanionRecurrence rec;
    rec.coeffs = {ab[1], ab[0]};  // F(n+2) = a F(n+1) + b F(n)
    rec.init = {0, 1};
    return QuotientProblem::from_companion(std::move(rec),
                                           io::parse_poly(pf.g_text),
                                           std::move(s));
  }
  if (!pf.hl_tuple.empty()) {
    if (!pf.invert.empty())
      throw CLI::ValidationError("--invert-primes",
                                 "not available with --hl-family");
    params["problem"] = "hl-family:" + pf.hl_tuple;
    return hl_family(io::parse_u64_list(pf.hl_tuple));
  }
  params["problem"] = "file:" + pf.file;
  return io::load_problem(pf.file);
}

ojson count_report_json(const CountReport& rep) {
  ojson j;
  j["x"] = rep.x;
  j["count"] = rep.count;
  j["h"] = rep.h;
  j["h_caveat"] = rep.h_caveat;
  j["mode"] = rep.mode;
  j["bound_shape"] = rep.bound_shape;
  j["fitted_constant"] = rep.fitted_constant;
  j["members_complete"] = rep.members_complete;
  j["members"] = rep.members;
  return j;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

void cmd_count_quotients(const ProblemFlags& pf, const std::string& x_list,
                         const std::string& mode, std::size_t retain,
                         Output& output, std::ostream& out) {
  QuotientProblem prob = build_problem(pf, output.params);
  const std::vector<u64> xs = io::parse_u64_list(x_list);
  if (xs.empty()) throw CLI::ValidationError("--x", "required");
  output.params["x"] = xs;
  output.params["mode"] = mode;
  output.params["retain"] = retain;

  ojson reports = ojson::array();
  std::vector<std::vector<std::string>> rows;
  for (u64 x : xs) {
    ojson jr;
    if (mode == "exact" || mode == "modular") {
      const CountReport rep = count_N(
          prob, x,
          mode == "exact" ? CountMode::kExact : CountMode::kModularFilter,
          retain);
      jr = count_report_json(rep);
      rows.push_back({std::to_string(rep.x), std::to_string(rep.count),
                      fd(rep.bound_shape), fd(rep.fitted_constant)});
    } else if (mode == "both") {
      const CountReport a = count_N(prob, x, CountMode::kExact, retain);
      const CountReport b = count_N(prob, x, CountMode::kModularFilter,
                                    retain);
      jr = count_report_json(a);
      jr["mode"] = "both";
      jr["modes_agree"] = a.count == b.count && a.members == b.members;
      rows.push_back({std::to_string(a.x), std::to_string(a.count),
                      fd(a.bound_shape), fd(a.fitted_constant)});
    } else {
      throw CLI::ValidationError("--mode", "must be exact, modular, or both");
    }
    reports.push_back(std::move(jr));
  }
  if (output.format == "csv") {
    output.emit_csv({"x", "count", "bound_shape", "ratio"}, rows, {}, out);
  } else {
    ojson result;
    result["reports"] = std::move(reports);
    output.emit_json(result, out);
  }
}

void cmd_split(const ProblemFlags& pf, u64 x, u64 y, u64 z, Output& output,
               std::ostream& out) {
  QuotientProblem prob = build_problem(pf, output.params);
  output.params["x"] = x;
  std::optional<std::pair<u64, u64>> override_yz;
  if (y != 0 || z != 0) {
    if (y == 0 || z == 0)
      throw CLI::ValidationError("--y/--z", "pass both or neither");
    override_yz = std::make_pair(y, z);
    output.params["y"] = y;
    output.params["z"] = z;
  }
  const SplitReport rep = split_diagnostic(prob, x, override_yz);
  if (output.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [p, hits] : rep.histogram) {
      const double shape =
          static_cast<double>(rep.x) /
          std::pow(static_cast<double>(p), rep.exponent);
      rows.push_back({std::to_string(p), std::to_string(hits), fd(shape)});
    }
    output.emit_csv({"p", "n2_hits", "shape"}, rows,
                    {{"y", std::to_string(rep.y)},
                     {"z", std::to_string(rep.z)},
                     {"total", std::to_string(rep.total)},
                     {"n1", std::to_string(rep.n1)},
                     {"n2", std::to_string(rep.n2)},
                     {"fitted_c", fd(rep.fitted_c)}},
                    out);
    return;
  }
  ojson result;
  result["x"] = rep.x;
  result["y"] = rep.y;
  result["z"] = rep.z;
  result["defaults_used"] = rep.defaults_used;
  result["regime_override"] = rep.regime_override;
  result["total"] = rep.total;
  result["n1"] = rep.n1;
  result["n2"] = rep.n2;
  result["r"] = rep.r;
  result["h"] = rep.h;
  result["exponent"] = rep.exponent;
  result["fitted_c"] = rep.fitted_c;
  ojson hist = ojson::array();
  for (const auto& [p, hits] : rep.histogram) {
    ojson row;
    row["p"] = p;
    row["hits"] = hits;
    hist.push_back(std::move(row));
  }
  result["histogram"] = std::move(hist);
  output.emit_json(result, out);
}

void cmd_kronecker(const std::string& poly_text, const std::string& samples,
                   Output& output, std::ostream& out) {
  const IntPolynomial f = io::parse_poly(poly_text);
  const std::vector<u64> pts = io::parse_u64_list(samples);
  output.params["poly"] = poly_text;
  output.params["samples"] = pts;
  const KroneckerReport rep = kronecker_statistic(f, pts);
  if (output.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& pt : rep.table)
      rows.push_back({std::to_string(pt.t), fd(pt.s), fd(pt.residual)});
    output.emit_csv({"t", "s", "residual"}, rows,
                    {{"h", std::to_string(rep.h)},
                     {"slope", fd(rep.slope)},
                     {"max_abs_residual", fd(rep.max_abs_residual)}},
                    out);
    return;
  }
  ojson result;
  result["h"] = rep.h;
  result["slope"] = rep.slope;
  result["slope_intercept"] = rep.slope_intercept;
  result["max_abs_residual"] = rep.max_abs_residual;
  result["skipped_vanishing"] = rep.skipped_vanishing;
  ojson table = ojson::array();
  for (const auto& pt : rep.table) {
    ojson row;
    row["t"] = pt.t;
    row["s"] = pt.s;
    row["residual"] = pt.residual;
    table.push_back(std::move(row));
  }
  result["table"] = std::move(table);
  output.emit_json(result, out);
}

void cmd_sieve_count(const std::string& gtilde_text,
                     const std::string& roots_text,
                     const std::string& invert_text, u64 y,
                     const std::string& z_text, const std::string& x_list,
                     const std::string& save_system, Output& output,
                     std::ostream& out) {
  const IntPolynomial gtilde = io::parse_poly(gtilde_text);
  const std::vector<mpz_class> roots = io::parse_mpz_list(roots_text);
  const std::vector<u64> s = io::parse_u64_list(invert_text);
  const std::vector<u64> xs = io::parse_u64_list(x_list);
  if (xs.empty()) throw CLI::ValidationError("--x", "required");
  output.params["gtilde"] = gtilde_text;
  output.params["roots"] = roots_text;
  output.params["invert_primes"] = s;
  output.params["y"] = y;
  output.params["z"] = z_text;
  output.params["x"] = xs;

  ojson per_x = ojson::array();
  std::vector<std::vector<std::string>> rows;
  double min_ratio = 0.0, max_ratio = 0.0;
  bool first = true;
  for (u64 x : xs) {
    u64 z;
    if (z_text == "sqrt")
      z = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    else
      z = io::parse_u64_list(z_text).at(0);
    const SieveSystem sys = build_sieve_system(gtilde, roots, s, y, z);
    if (!save_system.empty() && x == xs.back())
      io::save_sieve_system(sys, save_system);
    const u64 count = sieved_count(x, sys);
    const double shape = sieve_bound_shape(x, y, sys.h);
    const double ratio = static_cast<double>(count) / shape;
    if (first || ratio < min_ratio) min_ratio = ratio;
    if (first || ratio > max_ratio) max_ratio = ratio;
    first = false;
    ojson row;
    row["x"] = x;
    row["y"] = y;
    row["z"] = z;
    row["h"] = sys.h;
    row["primes_in_system"] = sys.entries.size();
    row["excluded"] = sys.excluded.size();
    row["count"] = count;
    row["shape"] = shape;
    row["ratio"] = ratio;
    per_x.push_back(std::move(row));
    rows.push_back({std::to_string(x), std::to_string(y), std::to_string(z),
                    std::to_string(count), fd(shape), fd(ratio)});
  }
  const double spread =
      min_ratio > 0.0 ? (max_ratio - min_ratio) / min_ratio : 0.0;
  if (output.format == "csv") {
    output.emit_csv({"x", "y", "z", "count", "shape", "ratio"}, rows,
                    {{"ratio_spread", fd(spread)}}, out);
    return;
  }
  ojson result;
  result["reports"] = std::move(per_x);
  result["ratio_spread"] = spread;
  output.emit_json(result, out);
}

MultFnSpec parse_multfn(const std::string& name) {
  if (name == "mu2_over_n") return MultFnSpec::mu2_over_n();
  if (name == "one_only") return MultFnSpec::one_only();
  if (name.rfind("k_over_p:", 0) == 0) {
    const unsigned k =
        static_cast<unsigned>(std::stoul(name.substr(strlen("k_over_p:"))));
    return MultFnSpec::k_over_p(k);
  }
  for (const char* prefix : {"omega_system:", "omega-system:"}) {
    if (name.rfind(prefix, 0) == 0) {
      const SieveSystem sys =
          io::load_sieve_system(name.substr(strlen(prefix)));
      return gy_from_system(sys);
    }
  }
  throw domain_error("unknown multiplicative function spec: " + name);
}

void cmd_wirsing(const std::string& g_name, const std::string& x_list, u64 p0,
                 Output& output, std::ostream& out) {
  const MultFnSpec g = parse_multfn(g_name);
  const std::vector<u64> xs = io::parse_u64_list(x_list);
  if (xs.empty()) throw CLI::ValidationError("--x", "required");
  output.params["g"] = g_name;
  output.params["x"] = xs;
  output.params["p0"] = p0;

  const EulerProductReport cg = euler_constant_cg(g, g.declared_h(), p0);
  ojson per_x = ojson::array();
  std::vector<std::vector<std::string>> rows;
  for (u64 x : xs) {
    const WirsingSumReport rep = wirsing_sum(g, x);
    ojson row;
    row["x"] = rep.x;
    row["sum"] = rep.sum;
    row["ratio"] = rep.ratio;
    per_x.push_back(std::move(row));
    rows.push_back({std::to_string(rep.x), fd(rep.sum), fd(rep.ratio)});
  }
  if (output.format == "csv") {
    std::vector<std::pair<std::string, std::string>> notes = {
        {"h", fd(g.declared_h())}, {"cg", fd(cg.value)}};
    if (cg.tail_rel_bound)
      notes.emplace_back("cg_tail_rel_bound", fd(*cg.tail_rel_bound));
    output.emit_csv({"x", "sum", "ratio"}, rows, notes, out);
    return;
  }
  ojson result;
  result["h"] = g.declared_h();
  result["cg"] = cg.value;
  if (cg.tail_rel_bound)
    result["cg_tail_rel_bound"] = *cg.tail_rel_bound;
  else
    result["cg_tail_rel_bound"] = nullptr;
  result["reports"] = std::move(per_x);
  output.emit_json(result, out);
}

void cmd_ffzeros(bool stress, unsigned trials, u64 seed, u64 qmax,
                 unsigned rmin, unsigned rmax, const std::string& instance,
                 Output& output, std::ostream& out) {
  if (stress == !instance.empty())
    throw CLI::ValidationError("ffzeros",
                               "pass exactly one of --stress or --instance");
  if (stress) {
    output.params["stress"] = true;
    output.params["trials"] = trials;
    output.params["seed"] = seed;
    output.params["qmax"] = qmax;
    output.params["rmin"] = rmin;
    output.params["rmax"] = rmax;
    const StressReport rep = stress_bound(qmax, rmin, rmax, trials, seed);
    if (output.format == "csv") {
      output.emit_csv(
          {"trials", "violations", "max_ratio"},
          {{std::to_string(rep.trials), std::to_string(rep.violations),
            fd(rep.max_ratio)}},
          {}, out);
      return;
    }
    ojson result;
    result["trials"] = rep.trials;
    result["violations"] = rep.violations;
    result["max_ratio"] = rep.max_ratio;
    if (rep.worst) {
      ojson w;
      w["q"] = rep.worst->q;
      w["r"] = rep.worst->r;
      w["count"] = rep.worst->count;
      w["n_min_order"] = rep.worst->n_min_order;
      w["bound"] = rep.worst->bound;
      result["worst"] = std::move(w);
    } else {
      result["worst"] = nullptr;
    }
    result["violation_dumps"] = rep.violation_dumps;
    output.emit_json(result, out);
    return;
  }
  const SparseInstance inst = io::load_sparse_instance(instance);
  output.params["instance"] = instance;
  const u64 count = sparse_zero_count(inst);
  ojson result;
  result["q"] = inst.field.q();
  result["r"] = inst.r();
  result["count"] = count;
  if (inst.r() >= 2) {
    const u64 n = min_ratio_order(inst);
    result["n_min_order"] = n;
    result["bound"] = ff_bound(inst.field.q(), n, inst.r());
    result["bound_weak_exponent"] = ff_bound_weak(inst.field.q(), n, inst.r());
  } else {
    result["n_min_order"] = nullptr;
    result["bound"] = nullptr;
    result["bound_weak_exponent"] = nullptr;
  }
  if (output.format == "csv") {
    output.emit_csv({"q", "r", "count"},
                    {{std::to_string(inst.field.q()),
                      std::to_string(inst.r()), std::to_string(count)}},
                    {}, out);
    return;
  }
  output.emit_json(result, out);
}

void cmd_hl(const std::string& tuple_text, u64 x, u64 p0, u64 containment_x,
            Output& output, std::ostream& out) {
  const std::vector<u64> tuple = io::parse_u64_list(tuple_text);
  output.params["tuple"] = tuple;
  output.params["x"] = x;
  output.params["p0"] = p0;
  output.params["containment_x"] = containment_x;

  const AdmissibleResult adm = admissible(tuple);
  ojson result;
  result["admissible"] = adm.admissible;
  if (adm.witness)
    result["witness"] = *adm.witness;
  else
    result["witness"] = nullptr;
  std::vector<std::vector<std::string>> rows;
  if (adm.admissible) {
    if (x > 0) result["hl_count"] = hl_count(tuple, x);
    const SingularSeriesReport ss = singular_series(tuple, p0);
    ojson jss;
    jss["value"] = ss.value;
    jss["tail_rel_bound"] = ss.tail_rel_bound;
    jss["p0"] = ss.p0;
    result["singular_series"] = std::move(jss);
    if (tuple.size() <= 4) {
      const QuotientProblem fam = hl_family(tuple);
      ojson jf;
      ojson terms = ojson::array();
      for (const auto& t : fam.exppoly()->terms) {
        ojson jt;
        jt["coeff"] = t.poly.coeffs()[0].get_str();
        jt["root"] = t.root.get_str();
        terms.push_back(std::move(jt));
      }
      jf["f_terms"] = std::move(terms);
      ojson gc = ojson::array();
      for (const auto& c : fam.g().coeffs()) gc.push_back(c.get_str());
      jf["g"] = std::move(gc);
      jf["r"] = fam.r();
      jf["h"] = fam.h();
      result["family"] = std::move(jf);
      if (containment_x > 0) {
        const CountReport cn = count_N(fam, containment_x, CountMode::kExact,
                                       static_cast<std::size_t>(containment_x) + 1);
        const u64 t_count = hl_count(tuple, containment_x);
        ojson jc;
        jc["checked_to"] = containment_x;
        jc["hl_count"] = t_count;
        jc["quotient_count"] = cn.count;
        jc["holds"] = t_count <= cn.count;
        result["containment"] = std::move(jc);
      }
    } else {
      result["family"] = nullptr;
    }
    if (x > 0)
      rows.push_back({std::to_string(x),
                      std::to_string(result["hl_count"].get<u64>()),
                      fd(ss.value)});
  }
  if (output.format == "csv") {
    output.emit_csv({"x", "hl_count", "singular_series"}, rows,
                    {{"admissible", adm.admissible ? "true" : "false"}}, out);
    return;
  }
  output.emit_json(result, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"recq: exact-arithmetic experiments on quotients of linear "
               "recurrences"};
  app.require_subcommand(1);
  app.fallthrough();  // --threads may follow the subcommand

  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker cap (0 = hardware); never affects results");

  Output output;
  auto add_output_flags = [&output](CLI::App* cmd) {
    cmd->add_option("--format", output.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", output.path, "output file (default stdout)");
  };

  // count-quotients
  auto* cq = app.add_subcommand("count-quotients",
                                "enumerate N(x) and fit the bound shape");
  ProblemFlags cq_pf;
  std::string cq_x, cq_mode = "exact";
  std::size_t cq_retain = 100000;
  add_problem_flags(cq, cq_pf);
  cq->add_option("--x", cq_x, "thresholds, comma separated");
  cq->add_option("--mode", cq_mode, "exact | modular | both");
  cq->add_option("--retain", cq_retain, "member retention cap");
  add_output_flags(cq);

  // split
  auto* sp = app.add_subcommand("split",
                                "N1/N2 sieve decomposition diagnostic");
  ProblemFlags sp_pf;
  u64 sp_x = 0, sp_y = 0, sp_z = 0;
  add_problem_flags(sp, sp_pf);
  sp->add_option("--x", sp_x, "threshold")->required();
  sp->add_option("--y", sp_y, "window lower end (with --z)");
  sp->add_option("--z", sp_z, "window upper end (with --y)");
  add_output_flags(sp);

  // kronecker
  auto* kr = app.add_subcommand("kronecker",
                                "zero-count statistic of a polynomial");
  std::string kr_poly, kr_samples;
  kr->add_option("--poly", kr_poly, "'x' or coefficients low-to-high")
      ->required();
  kr->add_option("--samples", kr_samples, "sample thresholds, comma separated")
      ->required();
  add_output_flags(kr);

  // sieve-count
  auto* sc = app.add_subcommand("sieve-count",
                                "exact sieved-set counts against the bound "
                                "shape");
  std::string sc_gtilde, sc_roots, sc_invert, sc_z = "sqrt", sc_x, sc_save;
  u64 sc_y = 0;
  sc->add_option("--gtilde", sc_gtilde, "defining polynomial")->required();
  sc->add_option("--roots", sc_roots, "recurrence roots (order filter)");
  sc->add_option("--invert-primes", sc_invert, "the set S");
  sc->add_option("--y", sc_y, "window lower end")->required();
  sc->add_option("--z", sc_z, "window upper end, or 'sqrt' for x^(1/2)");
  sc->add_option("--x", sc_x, "thresholds, comma separated")->required();
  sc->add_option("--save-system", sc_save, "write the residue system (JSON)");
  add_output_flags(sc);

  // wirsing
  auto* wi = app.add_subcommand("wirsing",
                                "mean values of multiplicative functions");
  std::string wi_g, wi_x;
  u64 wi_p0 = 100000;
  wi->add_option("--g", wi_g,
                 "mu2_over_n | one_only | k_over_p:<k> | omega_system:<file>")
      ->required();
  wi->add_option("--x", wi_x, "thresholds, comma separated")->required();
  wi->add_option("--p0", wi_p0, "Euler product truncation");
  add_output_flags(wi);

  // ffzeros
  auto* ff = app.add_subcommand("ffzeros",
                                "sparse exponential-sum zero counts");
  bool ff_stress = false;
  unsigned ff_trials = 1000, ff_rmin = 2, ff_rmax = 4;
  u64 ff_seed = 1, ff_qmax = 4096;
  std::string ff_instance;
  ff->add_flag("--stress", ff_stress, "randomized bound stress");
  ff->add_option("--trials", ff_trials, "stress trials");
  ff->add_option("--seed", ff_seed, "stress seed");
  ff->add_option("--qmax", ff_qmax, "largest field size");
  ff->add_option("--rmin", ff_rmin, "smallest term count");
  ff->add_option("--rmax", ff_rmax, "largest term count");
  ff->add_option("--instance", ff_instance, "single instance file (JSON)");
  add_output_flags(ff);

  // hl
  auto* hl = app.add_subcommand("hl",
                                "admissible tuples, prime k-tuple counts, "
                                "singular series, witness family");
  std::string hl_tuple;
  u64 hl_x = 0, hl_p0 = 1000000, hl_cont = 0;
  hl->add_option("--tuple", hl_tuple, "offsets, comma separated")->required();
  hl->add_option("--x", hl_x, "count threshold (0 = skip)");
  hl->add_option("--p0", hl_p0, "singular series truncation");
  hl->add_option("--containment-x", hl_cont,
                 "verify T(x) <= #N(x) up to this x (0 = skip)");
  add_output_flags(hl);

  // CLI11 wants argc/argv
  std::vector<const char*> argv;
  argv.push_back("recq");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  set_worker_count(threads);
  try {
    if (cq->parsed()) {
      output.subcommand = "count-quotients";
      cmd_count_quotients(cq_pf, cq_x, cq_mode, cq_retain, output, out);
    } else if (sp->parsed()) {
      output.subcommand = "split";
      cmd_split(sp_pf, sp_x, sp_y, sp_z, output, out);
    } else if (kr->parsed()) {
      output.subcommand = "kronecker";
      cmd_kronecker(kr_poly, kr_samples, output, out);
    } else if (sc->parsed()) {
      output.subcommand = "sieve-count";
      cmd_sieve_count(sc_gtilde, sc_roots, sc_invert, sc_y, sc_z, sc_x,
                      sc_save, output, out);
    } else if (wi->parsed()) {
      output.subcommand = "wirsing";
      cmd_wirsing(wi_g, wi_x, wi_p0, output, out);
    } else if (ff->parsed()) {
      output.subcommand = "ffzeros";
      cmd_ffzeros(ff_stress, ff_trials, ff_seed, ff_qmax, ff_rmin, ff_rmax,
                  ff_instance, output, out);
    } else if (hl->parsed()) {
      output.subcommand = "hl";
      cmd_hl(hl_tuple, hl_x, hl_p0, hl_cont, output, out);
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const regime_error& e) {
    ojson rec;
    rec["error"]["type"] = "regime";
    rec["error"]["message"] = e.what();
    out << rec.dump(2) << "\n";
    return 1;
  } catch (const resource_error& e) {
    ojson rec;
    rec["error"]["type"] = "resource";
    rec["error"]["message"] = e.what();
    out << rec.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    ojson rec;
    rec["error"]["type"] = "domain";
    rec["error"]["message"] = e.what();
    out << rec.dump(2) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace recq::cli
