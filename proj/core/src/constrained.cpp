#include "stress_shield/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stress_shield {

const char* to_string(SignRegion r) {
  switch (r) {
    case SignRegion::kTensileOneNegative: return "tensile/one_negative";
    case SignRegion::kTensileNonNegative: return "tensile/non_negative";
    case SignRegion::kTensileInfeasible: return "tensile/infeasible";
    case SignRegion::kCompressiveTwoPositive: return "compressive/two_positive";
    case SignRegion::kCompressiveOnePositive: return "compressive/one_positive";
    case SignRegion::kCompressiveNonPositive: return "compressive/non_positive";
    case SignRegion::kCompressiveInfeasible: return "compressive/infeasible";
  }
  return "unknown";
}

double default_sign_tolerance(const SymStress3& sigma) {
  return 1e-12 * std::max(1.0, frobenius_norm(sigma));
}

Classification classify(const SymStress3& sigma, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("classify: tol must be >= 0");
  Classification c;
  c.eigen = eigen_decompose(sigma);
  c.tol = tol;
  for (double l : c.eigen.values) {
    if (l > tol) {
      ++c.pattern.n_pos;
    } else if (l < -tol) {
      ++c.pattern.n_neg;
    } else {
      ++c.pattern.n_zero;
    }
  }
  return c;
}

CanonicalForm Classification::canonical(SignConstraint constraint) const {
  const Vec3& mu = eigen.values;
  CanonicalForm f;
  // Every sign case puts the field on the axis of the smallest eigenvalue;
  // the remaining axes are listed by descending value.
  f.axes = {2, 1, 0};
  f.field_label = 2;
  if (constraint == SignConstraint::kTensile) {
    if (pattern.n_neg >= 2) {
      f.region = SignRegion::kTensileInfeasible;
      f.signs = {1, -1, -1};
    } else if (pattern.n_neg == 1) {
      f.region = SignRegion::kTensileOneNegative;
      f.signs = {1, 1, -1};
    } else {
      f.region = SignRegion::kTensileNonNegative;
      f.signs = {1, 1, 1};
    }
  } else {
    if (pattern.n_pos == 3) {
      f.region = SignRegion::kCompressiveInfeasible;
      f.signs = {1, 1, 1};
    } else if (pattern.n_pos == 2) {
      f.region = SignRegion::kCompressiveTwoPositive;
      f.signs = {1, 1, -1};
    } else if (pattern.n_pos == 1) {
      f.region = SignRegion::kCompressiveOnePositive;
      f.signs = {1, -1, -1};
    } else {
      f.region = SignRegion::kCompressiveNonPositive;
      f.axes = {0, 1, 2};
      f.field_label = 0;
      f.signs = {-1, -1, -1};
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    f.magnitudes[k] = f.signs[k] * mu[f.axes[k]];
  }
  return f;
}

double case_objective(const CanonicalForm& form, double lambda_m) {
  double sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double t = k == form.field_label ? lambda_m : -lambda_m;
    const double v = form.signs[k] * form.magnitudes[k] + t;
    sum += v * v;
  }
  return sum;
}

namespace {

struct Inequality {
  const char* text;
  double value;  // must be >= -tol
};

KktCandidate make_candidate(const CanonicalForm& form, int case_id, double lambda_m,
                            std::initializer_list<Inequality> checks, double tol) {
  KktCandidate c;
  c.case_id = case_id;
  c.lambda_m = lambda_m;
  c.objective = case_objective(form, lambda_m);
  for (const Inequality& in : checks) {
    if (in.value < -tol) c.failed_inequalities.emplace_back(in.text);
  }
  c.valid = c.failed_inequalities.empty();
  return c;
}

ReductionSolution infeasible_solution(const SymStress3& sigma, const CanonicalForm& form) {
  ReductionSolution sol;
  sol.status = SolveStatus::kInfeasible;
  sol.total = sigma;
  sol.sigma_rel = std::numeric_limits<double>::quiet_NaN();
  sol.case_label = to_string(form.region);
  KktDiagnostics kkt;
  kkt.case_lambdas = form.magnitudes;
  kkt.constraint_satisfied = false;
  kkt.interval_lower = 1.0;
  kkt.interval_upper = 0.0;
  sol.kkt = kkt;
  return sol;
}

}  // namespace

ReductionSolution solve_constrained(const SymStress3& sigma, SignConstraint constraint,
                                    const MaterialParams& p, CompressiveFallback fallback) {
  if (p.epsr() != 1.0) {
    throw std::invalid_argument("constrained solvers support epsr = 1 only");
  }
  const double tol = default_sign_tolerance(sigma);
  const Classification cls = classify(sigma, tol);
  const CanonicalForm form = cls.canonical(constraint);
  const double l1 = form.magnitudes[0];
  const double l2 = form.magnitudes[1];
  const double l3 = form.magnitudes[2];

  KktDiagnostics kkt;
  kkt.case_lambdas = form.magnitudes;
  KktCandidate chosen;

  switch (form.region) {
    case SignRegion::kTensileInfeasible:
    case SignRegion::kCompressiveInfeasible:
      return infeasible_solution(sigma, form);

    case SignRegion::kTensileOneNegative: {
      kkt.interval_lower = l3;
      kkt.interval_upper = l2;
      const double interior = (l1 + l2 + l3) / 3.0;
      kkt.candidates.push_back(make_candidate(
          form, 1, interior,
          {{"2*l2 - l1 - l3 >= 0", 2.0 * l2 - l1 - l3}, {"l1 + l2 - 2*l3 >= 0", l1 + l2 - 2.0 * l3}},
          tol));
      kkt.candidates.push_back(make_candidate(form, 2, l2, {{"l2 - l3 >= 0", l2 - l3}}, tol));
      if (kkt.candidates[0].valid) {
        chosen = kkt.candidates[0];
      } else {
        chosen = kkt.candidates[1];
        kkt.upper_bound_active = true;
        if (std::abs(l2 - l3) <= tol) {
          chosen.case_id = 4;
          kkt.lower_bound_active = true;
        }
      }
      kkt.constraint_satisfied = l2 >= l3 - tol;
      break;
    }

    case SignRegion::kTensileNonNegative: {
      kkt.interval_lower = 0.0;
      kkt.interval_upper = l2;
      const double interior = (l1 + l2 - l3) / 3.0;
      kkt.candidates.push_back(
          make_candidate(form, 1, interior, {{"l2 - lambda_m >= 0", l2 - interior}}, tol));
      kkt.candidates.push_back(make_candidate(form, 2, l2, {}, tol));
      if (kkt.candidates[0].valid) {
        chosen = kkt.candidates[0];
      } else {
        chosen = kkt.candidates[1];
        kkt.upper_bound_active = true;
      }
      break;
    }

    case SignRegion::kCompressiveTwoPositive:
    case SignRegion::kCompressiveOnePositive: {
      kkt.interval_lower = l1;
      kkt.interval_upper = l3;
      const bool two_pos = form.region == SignRegion::kCompressiveTwoPositive;
      if (two_pos) {
        kkt.candidates.push_back(make_candidate(
            form, 1, (l1 + l2 + l3) / 3.0,
            {{"l2 + l3 - 2*l1 >= 0", l2 + l3 - 2.0 * l1},
             {"2*l3 - l1 - l2 >= 0", 2.0 * l3 - l1 - l2}},
            tol));
      } else {
        kkt.candidates.push_back(make_candidate(
            form, 1, (l1 - l2 + l3) / 3.0,
            {{"l3 - l2 - 2*l1 >= 0", l3 - l2 - 2.0 * l1},
             {"2*l3 + l2 - l1 >= 0", 2.0 * l3 + l2 - l1}},
            tol));
      }
      kkt.candidates.push_back(make_candidate(form, 2, l1, {{"l3 - l1 >= 0", l3 - l1}}, tol));
      if (kkt.candidates[0].valid) {
        chosen = kkt.candidates[0];
      } else {
        chosen = kkt.candidates[1];
        kkt.lower_bound_active = true;
        if (std::abs(l3 - l1) <= tol) {
          chosen.case_id = 4;
          kkt.upper_bound_active = true;
        }
      }
      kkt.constraint_satisfied = l3 >= l1 - tol;
      break;
    }

    case SignRegion::kCompressiveNonPositive: {
      kkt.interval_lower = 0.0;
      kkt.interval_upper = l1;
      const double interior = (l1 - l2 - l3) / 3.0;
      kkt.candidates.push_back(make_candidate(
          form, 1, interior,
          {{"lambda_m >= 0", interior}, {"l1 - lambda_m >= 0", l1 - interior}}, tol));
      kkt.candidates.push_back(make_candidate(form, 2, l1, {}, tol));
      kkt.candidates.push_back(make_candidate(form, 3, 0.0, {}, tol));
      if (kkt.candidates[0].valid) {
        chosen = kkt.candidates[0];
      } else if (fallback == CompressiveFallback::kUpperBound) {
        chosen = kkt.candidates[1];
        kkt.upper_bound_active = true;
      } else {
        chosen = kkt.candidates[2];
        kkt.lower_bound_active = true;
      }
      break;
    }
  }

  ReductionSolution sol;
  sol.lambda_m = std::max(0.0, chosen.lambda_m);
  sol.eigen_choice = form.axes[form.field_label];
  sol.direction = canonical_sign(cls.eigen.vectors[sol.eigen_choice]);
  sol.alpha = std::sqrt(2.0 * sol.lambda_m / p.eps0());
  sol.total = total_stress(sigma, sol.field(), p);
  const double sigma_norm = frobenius_norm(sigma);
  sol.sigma_rel = sigma_norm == 0.0 ? 0.0 : frobenius_norm(sol.total) / sigma_norm;
  sol.case_label = std::string(to_string(form.region)) + "/case" + std::to_string(chosen.case_id);
  if (!kkt.constraint_satisfied) sol.case_label += "/constraint_violated";
  kkt.case_id = chosen.case_id;
  kkt.lagrangian_value = case_objective(form, sol.lambda_m);
  sol.kkt = std::move(kkt);
  return sol;
}

ReductionSolution solve_tensile(const SymStress3& sigma, const MaterialParams& p) {
  return solve_constrained(sigma, SignConstraint::kTensile, p);
}

ReductionSolution solve_compressive(const SymStress3& sigma, const MaterialParams& p,
                                    CompressiveFallback fallback) {
  return solve_constrained(sigma, SignConstraint::kCompressive, p, fallback);
}

}  // namespace stress_shield
