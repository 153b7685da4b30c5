#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "stress_shield/constrained.hpp"
#include "stress_shield/montecarlo.hpp"
#include "stress_shield/oracle.hpp"
#include "stress_shield/plane_stress.hpp"
#include "stress_shield/unconstrained.hpp"

namespace stress_shield::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::map<std::string, std::string> parse_report(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    const std::size_t eq = line.find('=');
    if (eq != std::string_view::npos) {
      kv.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
    }
    pos = eol + 1;
  }
  return kv;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { kUnconstrained, kTensile, kCompressive, kPlane };

const std::map<std::string, Mode> kModes{{"unconstrained", Mode::kUnconstrained},
                                         {"tensile", Mode::kTensile},
                                         {"compressive", Mode::kCompressive},
                                         {"plane", Mode::kPlane}};

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kUnconstrained: return "unconstrained";
    case Mode::kTensile: return "tensile";
    case Mode::kCompressive: return "compressive";
    case Mode::kPlane: return "plane";
  }
  return "unknown";
}

ProblemMode problem_mode(Mode m) {
  switch (m) {
    case Mode::kUnconstrained: return ProblemMode::kUnconstrained;
    case Mode::kTensile: return ProblemMode::kTensile;
    case Mode::kCompressive: return ProblemMode::kCompressive;
    case Mode::kPlane: break;
  }
  throw UsageError("plane mode is not available for this command");
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    double v = 0.0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    if (!item.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (item.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
      throw UsageError(std::string("cannot parse ") + what + " component '" + item + "'");
    }
    values.push_back(v);
    pos = comma + 1;
  }
  return values;
}

std::string join(std::initializer_list<double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ',';
    s += format_double(v);
  }
  return s;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("STRESS_SHIELD_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t v = 0;
    const char* last = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw UsageError("STRESS_SHIELD_SEED is not an unsigned integer");
    }
    return v;
  }
  return 0;
}

CompressiveFallback parse_fallback(const std::string& s) {
  return s == "optimal" ? CompressiveFallback::kFeasibleOptimum : CompressiveFallback::kUpperBound;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string mode;
  std::string sigma;
  bool plane = false;
  double eps0 = 1.0;
  double epsr = 1.0;
  bool json = false;
  std::string fallback = "bound";
};

void write_kkt(std::ostream& out, const KktDiagnostics& k) {
  out << "kkt_case=" << k.case_id << '\n'
      << "lower_bound_active=" << k.lower_bound_active << '\n'
      << "upper_bound_active=" << k.upper_bound_active << '\n'
      << "constraint_satisfied=" << k.constraint_satisfied << '\n'
      << "objective=" << format_double(k.lagrangian_value) << '\n'
      << "case_lambdas=" << join({k.case_lambdas[0], k.case_lambdas[1], k.case_lambdas[2]}) << '\n'
      << "interval=" << join({k.interval_lower, k.interval_upper}) << '\n';
  for (const KktCandidate& c : k.candidates) {
    out << "candidate.case" << c.case_id << "=lambda_m:" << format_double(c.lambda_m)
        << ";objective:" << format_double(c.objective) << ";valid:" << c.valid;
    for (const std::string& f : c.failed_inequalities) out << ";failed:" << f;
    out << '\n';
  }
}

int cmd_solve(const SolveArgs& a, std::ostream& out) {
  const Mode mode = kModes.at(a.mode);
  const std::vector<double> c = parse_list(a.sigma, "--sigma");
  const MaterialParams params(a.eps0, a.epsr);
  if (a.plane && mode != Mode::kPlane) throw UsageError("--plane requires --mode plane");

  if (mode == Mode::kPlane) {
    if (c.size() != 3) throw UsageError("--mode plane expects --sigma xx,yy,xy");
    if (params.epsr() != 1.0) throw UsageError("plane mode supports epsr = 1 only");
    const PlaneSolution s = solve_plane({c[0], c[1], c[2]});
    const double alpha = std::sqrt(2.0 * s.lambda_m / params.eps0());
    if (a.json) {
      nlohmann::json j;
      j["mode"] = "plane";
      j["lambda_m"] = s.lambda_m;
      j["alpha"] = alpha;
      j["direction"] = {s.direction[0], s.direction[1], s.direction[2]};
      j["total"] = {s.total.xx, s.total.yy, 0.0, s.total.xy, 0.0, 0.0};
      j["sigma_rel"] = s.sigma_rel;
      j["case"] = "plane/case" + std::to_string(s.case_id);
      j["feasible"] = true;
      j["tau_sign"] = s.tau_sign;
      out << j.dump() << '\n';
      return kExitOk;
    }
    out << "mode=plane\n"
        << "status=solved\n"
        << "feasible=1\n"
        << "lambda_m=" << format_double(s.lambda_m) << '\n'
        << "alpha=" << format_double(alpha) << '\n'
        << "tau_sign=" << s.tau_sign << '\n'
        << "e_axis=" << (s.e_axis == PlaneFieldAxis::kInPlane ? "in_plane" : "out_of_plane") << '\n'
        << "direction=" << join({s.direction[0], s.direction[1], s.direction[2]}) << '\n'
        << "principal=" << join({s.principal[0], s.principal[1]}) << '\n'
        << "total=" << join({s.total.xx, s.total.yy, s.total.xy}) << '\n'
        << "sigma_rel=" << format_double(s.sigma_rel) << '\n'
        << "case=plane/case" << s.case_id << '\n';
    return kExitOk;
  }

  if (c.size() != 6) throw UsageError("expected --sigma xx,yy,zz,xy,xz,yz");
  if (params.epsr() != 1.0) throw UsageError("this mode supports epsr = 1 only");
  const SymStress3 sigma{c[0], c[1], c[2], c[3], c[4], c[5]};
  ReductionSolution s;
  switch (mode) {
    case Mode::kUnconstrained: s = solve_unconstrained(sigma, params); break;
    case Mode::kTensile: s = solve_tensile(sigma, params); break;
    case Mode::kCompressive: s = solve_compressive(sigma, params, parse_fallback(a.fallback)); break;
    case Mode::kPlane: break;
  }

  const SymStress3& t = s.total;
  if (a.json) {
    nlohmann::json j;
    j["mode"] = mode_name(mode);
    j["lambda_m"] = s.lambda_m;
    j["alpha"] = s.alpha;
    j["direction"] = {s.direction[0], s.direction[1], s.direction[2]};
    j["total"] = {t.xx, t.yy, t.zz, t.xy, t.xz, t.yz};
    j["sigma_rel"] = s.sigma_rel;
    j["case"] = s.case_label;
    j["feasible"] = s.solved();
    j["status"] = to_string(s.status);
    out << j.dump() << '\n';
  } else {
    out << "mode=" << mode_name(mode) << '\n'
        << "status=" << to_string(s.status) << '\n'
        << "feasible=" << s.solved() << '\n'
        << "lambda_m=" << format_double(s.lambda_m) << '\n'
        << "alpha=" << format_double(s.alpha) << '\n'
        << "direction=" << join({s.direction[0], s.direction[1], s.direction[2]}) << '\n'
        << "eigen_choice=" << s.eigen_choice << '\n'
        << "total=" << join({t.xx, t.yy, t.zz, t.xy, t.xz, t.yz}) << '\n'
        << "sigma_rel=" << format_double(s.sigma_rel) << '\n'
        << "case=" << s.case_label << '\n';
    if (s.kkt) write_kkt(out, *s.kkt);
  }
  return s.solved() ? kExitOk : kExitInfeasible;
}

// ------------------------------------------------------------------ map

struct MapArgs {
  std::string mode;
  std::string out;
  std::size_t grid = 512;
  std::string range = "-1,1";
  std::string fallback = "bound";
};

int cmd_map(const MapArgs& a, std::ostream& out, std::ostream& err) {
  const Mode mode = kModes.at(a.mode);
  if (a.grid < 2) throw UsageError("--grid must be >= 2");
  std::ostringstream csv;
  csv << "a,b,sigma_rel,feasible\n";
  std::size_t rows = 0;
  if (mode == Mode::kPlane) {
    const std::vector<double> r = parse_list(a.range, "--range");
    if (r.size() != 2 || !(r[0] < r[1])) throw UsageError("--range expects lo,hi with lo < hi");
    for (const PlaneMapRow& row : plane_map(a.grid, r[0], r[1])) {
      csv << format_double(row.lambda1) << ',' << format_double(row.lambda2) << ','
          << format_double(row.sigma_rel) << ",1\n";
      ++rows;
    }
  } else {
    const ProblemMode pm = problem_mode(mode);
    for (const AngularMapRow& row : angular_map(pm, a.grid, a.grid, parse_fallback(a.fallback))) {
      csv << format_double(row.theta) << ',' << format_double(row.phi) << ',';
      if (row.feasible) {
        csv << format_double(row.sigma_rel) << ",1\n";
      } else if (pm == ProblemMode::kUnconstrained) {
        csv << "1,0\n";
      } else {
        csv << ",0\n";
      }
      ++rows;
    }
  }

  std::ofstream file(a.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << a.out << "' for writing\n";
    return kExitIo;
  }
  file << csv.str();
  file.close();
  if (!file) {
    err << "error: failed writing '" << a.out << "'\n";
    return kExitIo;
  }
  out << "mode=" << mode_name(mode) << "\nrows=" << rows << "\nout=" << a.out << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------- mc

struct McArgs {
  std::string mode;
  std::size_t samples = 100000;
  std::optional<std::uint64_t> seed;
  std::string policy;
  std::string fallback = "bound";
  unsigned threads = 0;
};

int cmd_mc(const McArgs& a, std::ostream& out) {
  const ProblemMode pm = problem_mode(kModes.at(a.mode));
  if (a.samples == 0) throw UsageError("--samples must be >= 1");
  McOptions opt;
  if (!a.policy.empty()) {
    opt.policy = a.policy == "exclude" ? InfeasiblePolicy::kExclude : InfeasiblePolicy::kCountAsOne;
  }
  opt.fallback = parse_fallback(a.fallback);
  opt.threads = a.threads;
  const McEstimate e = mc_mean(pm, a.samples, resolve_seed(a.seed), opt);
  out << "mode=" << to_string(pm) << '\n'
      << "mean=" << format_double(e.mean) << '\n'
      << "std_error=" << format_double(e.std_error) << '\n'
      << "n=" << e.n << '\n'
      << "n_infeasible=" << e.n_infeasible << '\n'
      << "seed=" << e.seed << '\n'
      << "policy=" << to_string(e.policy) << '\n'
      << "fallback=" << (opt.fallback == CompressiveFallback::kUpperBound ? "bound" : "optimal") << '\n'
      << "generator=" << e.generator << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string mode;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  double tol = 1e-6;
  std::string fallback = "bound";
};

struct TrialOutcome {
  bool counted = true;  // false: input had no admissible field, redrawn
  bool violation = false;
  double gap = 0.0;
  std::string note;
};

TrialOutcome check_unconstrained(const SymStress3& sigma, double tol) {
  const ReductionSolution s = solve_unconstrained(sigma);
  const double closed = frobenius_norm_squared(s.total);
  const oracle::GridResult g = oracle::grid_min_unconstrained(sigma, {}, oracle::magnitude_bound(sigma, {}));
  TrialOutcome o;
  o.gap = g.objective - closed;
  o.violation = std::abs(o.gap) > tol;
  return o;
}

TrialOutcome check_plane(const SymStress2& sigma, double tol) {
  const PlaneSolution s = solve_plane(sigma);
  const EigenSystem2 e = eigen_decompose(sigma);
  const double closed = s.total.xx * s.total.xx + s.total.yy * s.total.yy + 2.0 * s.total.xy * s.total.xy;
  const double hi = std::abs(e.values[0]) + std::abs(e.values[1]);
  const oracle::PlaneScanResult r = oracle::scan_min_plane(e.values[0], e.values[1], hi);
  TrialOutcome o;
  o.gap = r.objective - closed;
  o.violation = std::abs(o.gap) > tol;
  return o;
}

TrialOutcome check_constrained(const SymStress3& sigma, SignConstraint c, CompressiveFallback fb,
                               double tol) {
  const ReductionSolution s = solve_constrained(sigma, c, {}, fb);
  const EigenSystem3 e = eigen_decompose(sigma);
  const oracle::ConstrainedScanResult r = oracle::scan_min_constrained(e.values, c);
  TrialOutcome o;
  if (!r.feasible) {
    o.counted = false;
    // With no admissible field the solver must say so, either as Infeasible
    // or by flagging the constraint as violated.
    const bool flagged = !s.solved() || (s.kkt && !s.kkt->constraint_satisfied);
    o.violation = !flagged;
    if (o.violation) o.note = "solver claims a feasible solution the oracle cannot find";
    return o;
  }
  if (!s.solved() || (s.kkt && !s.kkt->constraint_satisfied)) {
    o.violation = true;
    o.gap = std::numeric_limits<double>::infinity();
    o.note = "solver reports infeasible but the oracle found an admissible field";
    return o;
  }
  o.gap = r.objective - frobenius_norm_squared(s.total);
  o.violation = std::abs(o.gap) > tol;
  return o;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const Mode mode = kModes.at(a.mode);
  if (a.trials == 0) throw UsageError("--trials must be >= 1");
  if (!(a.tol >= 0.0)) throw UsageError("--tol must be >= 0");
  const std::uint64_t seed = resolve_seed(a.seed);
  const CompressiveFallback fb = parse_fallback(a.fallback);
  std::mt19937_64 rng(shard_seed(seed, 0));
  auto uniform = [&rng] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };

  std::size_t counted = 0;
  std::size_t redrawn = 0;
  std::size_t violations = 0;
  double worst = -1.0;
  std::string worst_sigma;
  std::string worst_note;
  const std::size_t max_draws = 1000 * a.trials;
  for (std::size_t draw = 0; counted < a.trials && draw < max_draws; ++draw) {
    TrialOutcome o;
    std::string sigma_text;
    if (mode == Mode::kPlane) {
      const SymStress2 s{uniform(), uniform(), uniform()};
      sigma_text = join({s.xx, s.yy, s.xy});
      o = check_plane(s, a.tol);
    } else {
      const SymStress3 s{uniform(), uniform(), uniform(), uniform(), uniform(), uniform()};
      sigma_text = join({s.xx, s.yy, s.zz, s.xy, s.xz, s.yz});
      if (mode == Mode::kUnconstrained) {
        o = check_unconstrained(s, a.tol);
      } else {
        const SignConstraint c = mode == Mode::kTensile ? SignConstraint::kTensile : SignConstraint::kCompressive;
        o = check_constrained(s, c, fb, a.tol);
      }
    }
    if (o.counted) {
      ++counted;
    } else {
      ++redrawn;
    }
    if (o.violation) ++violations;
    const double mag = std::abs(o.gap);
    if (o.violation || (o.counted && mag > worst)) {
      if (mag > worst || (o.violation && worst_note.empty() && !o.note.empty())) {
        worst = mag;
        worst_sigma = sigma_text;
        worst_note = o.note;
      }
    }
  }

  out << "mode=" << mode_name(mode) << '\n'
      << "trials=" << counted << '\n'
      << "redrawn_no_admissible_field=" << redrawn << '\n'
      << "seed=" << seed << '\n'
      << "tol=" << format_double(a.tol) << '\n'
      << "violations=" << violations << '\n'
      << "worst_gap=" << format_double(std::max(worst, 0.0)) << '\n'
      << "worst_sigma=" << worst_sigma << '\n';
  if (!worst_note.empty()) out << "worst_note=" << worst_note << '\n';
  out << "result=" << (violations == 0 && counted == a.trials ? "pass" : "fail") << '\n';
  return violations == 0 && counted == a.trials ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Electric-field stress reduction solver", "stress_shield"};
  app.require_subcommand(1);

  const auto mode_check = CLI::IsMember({"unconstrained", "tensile", "compressive", "plane"});
  const auto fallback_check = CLI::IsMember({"bound", "optimal"});
  const char* fallback_help =
      "compressive all-negative fallback: 'bound' (lambda_m = l1, default) or 'optimal' (lambda_m = 0)";

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a single stress tensor");
  solve_cmd->add_option("--mode", solve.mode, "Problem")->required()->check(mode_check);
  solve_cmd->add_option("--sigma", solve.sigma, "xx,yy,zz,xy,xz,yz (or xx,yy,xy for plane)")->required();
  solve_cmd->add_flag("--plane", solve.plane, "Input is a plane-stress tensor");
  solve_cmd->add_option("--eps0", solve.eps0, "Vacuum permittivity");
  solve_cmd->add_option("--epsr", solve.epsr, "Relative permittivity");
  solve_cmd->add_flag("--json", solve.json, "Emit a single JSON object");
  solve_cmd->add_option("--fallback", solve.fallback, fallback_help)->check(fallback_check);

  MapArgs map;
  CLI::App* map_cmd = app.add_subcommand("map", "Write a sigma_rel map as CSV");
  map_cmd->add_option("--mode", map.mode, "Problem")->required()->check(mode_check);
  map_cmd->add_option("--out", map.out, "Output CSV path")->required();
  map_cmd->add_option("--grid", map.grid, "Grid points per axis")->capture_default_str();
  map_cmd->add_option("--range", map.range, "Plane eigenvalue range lo,hi")->capture_default_str();
  map_cmd->add_option("--fallback", map.fallback, fallback_help)->check(fallback_check);

  McArgs mc;
  CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo mean of sigma_rel over the sphere");
  mc_cmd->add_option("--mode", mc.mode, "Problem")->required()->check(mode_check);
  mc_cmd->add_option("--samples", mc.samples, "Sample count")->capture_default_str();
  mc_cmd->add_option("--seed", mc.seed, "Seed (default: $STRESS_SHIELD_SEED or 0)");
  mc_cmd->add_option("--policy", mc.policy, "Infeasible samples: count-as-one | exclude")
      ->check(CLI::IsMember({"count-as-one", "exclude"}));
  mc_cmd->add_option("--fallback", mc.fallback, fallback_help)->check(fallback_check);
  mc_cmd->add_option("--threads", mc.threads, "Worker threads (0 = auto)");

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand("check", "Cross-check the solver against brute force");
  check_cmd->add_option("--mode", check.mode, "Problem")->required()->check(mode_check);
  check_cmd->add_option("--trials", check.trials, "Random tensors")->capture_default_str();
  check_cmd->add_option("--seed", check.seed, "Seed (default: $STRESS_SHIELD_SEED or 0)");
  check_cmd->add_option("--tol", check.tol, "Allowed objective gap")->capture_default_str();
  check_cmd->add_option("--fallback", check.fallback, fallback_help)->check(fallback_check);

  try {
    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    app.parse(std::move(rest));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*map_cmd) return cmd_map(map, out, err);
    if (*mc_cmd) return cmd_mc(mc, out);
    if (*check_cmd) return cmd_check(check, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace stress_shield::cli
