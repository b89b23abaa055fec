// asymlab: numerical experiments on almost-representations of finitely
// presented groups. Subcommands: sweep (scaling tables), verify (norm and
// cocycle property suites), correct (defect-diminishing runs).

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <vector>

#include "asymlab/cohomology.hpp"
#include "asymlab/families.hpp"
#include "asymlab/fit.hpp"
#include "asymlab/io.hpp"
#include "asymlab/parallel.hpp"

namespace {

using namespace asymlab;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  return Rng::derived(seed, salt).next_u64();
}

// "a:b:xK" is the geometric grid a, aK, aK^2, ... <= b; otherwise a comma
// separated list.
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  size_t colon1 = text.find(':');
  try {
    if (colon1 != std::string::npos) {
      size_t colon2 = text.find(':', colon1 + 1);
      if (colon2 == std::string::npos || colon2 + 1 >= text.size() ||
          text[colon2 + 1] != 'x')
        throw ConfigError("size range must look like a:b:xK");
      long a = std::stol(text.substr(0, colon1));
      long b = std::stol(text.substr(colon1 + 1, colon2 - colon1 - 1));
      long k = std::stol(text.substr(colon2 + 2));
      if (a < 1 || b < a || k < 2) throw ConfigError("bad size range");
      for (long v = a; v <= b; v *= k) sizes.push_back(static_cast<int>(v));
    } else {
      size_t start = 0;
      while (start < text.size()) {
        size_t comma = text.find(',', start);
        std::string tok = text.substr(start, comma == std::string::npos
                                                 ? std::string::npos
                                                 : comma - start);
        if (!tok.empty()) sizes.push_back(std::stoi(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse --sizes '" + text + "'");
  }
  if (sizes.empty()) throw ConfigError("size list is empty");
  for (int v : sizes)
    if (v < 1) throw ConfigError("sizes must be positive");
  return sizes;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  int n = 0;
  std::vector<double> values;
};

int cmd_sweep(const std::string& example, const std::string& sizes_text,
              uint64_t seed, const std::string& out_path) {
  std::vector<int> sizes = parse_sizes(sizes_text);

  std::vector<std::string> columns;
  std::function<std::vector<double>(int, uint64_t)> measure;

  if (example == "voiculescu") {
    columns = {"defect_op", "defect_frob", "defect_hs", "homdist_lb"};
    measure = [](int n, uint64_t) {
      if (n < 2) throw ConfigError("voiculescu sizes must be >= 2");
      AlmostRep rep = voiculescu_rep(n);
      return std::vector<double>{defect(rep, NormKind::Operator),
                                 defect(rep, NormKind::Frobenius),
                                 defect(rep, NormKind::NormalizedHS),
                                 homdist_lower_bound_voiculescu(n)};
    };
  } else if (example == "bs23") {
    columns = {"defect_op", "defect_frob", "defect_hs", "commutator_gap",
               "sqrt6n_minus_gap"};
    measure = [](int n, uint64_t) {
      double gap = bs23_commutator_gap(n);
      return std::vector<double>{bs23_defect(n, NormKind::Operator),
                                 bs23_defect(n, NormKind::Frobenius),
                                 bs23_defect(n, NormKind::NormalizedHS), gap,
                                 std::sqrt(6.0 * n) - gap};
    };
  } else if (example.rfind("perturbed:", 0) == 0) {
    // perturbed:<z^d|cyclic:m>:<eps>, swept over the dimension
    std::string rest = example.substr(10);
    size_t cut = rest.rfind(':');
    if (cut == std::string::npos)
      throw ConfigError("perturbed sweep needs a group and eps");
    std::string gname = rest.substr(0, cut);
    double eps;
    try {
      eps = std::stod(rest.substr(cut + 1));
    } catch (const std::exception&) {
      throw ConfigError("cannot parse eps in '" + example + "'");
    }
    std::shared_ptr<const NormalFormGroup> group;
    try {
      group = group_by_name(gname);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    columns = {"defect_op", "defect_frob", "defect_hs"};
    measure = [group, eps](int n, uint64_t row_seed) {
      AlmostRep rep = perturbed_rep(group, n, eps, row_seed);
      return std::vector<double>{defect(rep, NormKind::Operator),
                                 defect(rep, NormKind::Frobenius),
                                 defect(rep, NormKind::NormalizedHS)};
    };
  } else {
    throw ConfigError("unknown example '" + example + "'");
  }

  std::vector<SweepRow> rows(sizes.size());
  std::exception_ptr first_error;
  std::mutex error_mutex;
  parallel_for(static_cast<int>(sizes.size()), [&](int i) {
    try {
      rows[i].n = sizes[i];
      rows[i].values = measure(sizes[i], mix_seed(seed, sizes[i]));
    } catch (...) {
      std::lock_guard<std::mutex> hold(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  });
  if (first_error) std::rethrow_exception(first_error);

  CsvWriter csv;
  std::vector<std::string> header = {"n"};
  header.insert(header.end(), columns.begin(), columns.end());
  csv.row(header);
  for (const SweepRow& row : rows) {
    std::vector<std::string> fields = {std::to_string(row.n)};
    for (double v : row.values) fields.push_back(format_double(v));
    csv.row(fields);
  }
  // trailing summary: per-column log-log fit against n
  std::vector<double> ns(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) ns[i] = rows[i].n;
  std::vector<std::string> slope_row = {"slope"}, intercept_row = {"intercept"};
  for (size_t c = 0; c < columns.size(); ++c) {
    std::vector<double> vals(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) vals[i] = rows[i].values[c];
    LineFit fit = ols_loglog(ns, vals);
    slope_row.push_back(format_double(fit.slope));
    intercept_row.push_back(format_double(fit.intercept));
  }
  csv.row(slope_row);
  csv.row(intercept_row);

  emit(out_path, csv.text());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
};

using CheckFn = std::function<CheckResult(uint64_t seed)>;

ComplexMatrix random_matrix(int k, Rng& rng) {
  ComplexMatrix m(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = cplx(rng.gaussian(), rng.gaussian());
  return m;
}

const NormKind kAllNorms[] = {NormKind::Operator, NormKind::Frobenius,
                              NormKind::NormalizedHS};

std::vector<std::pair<std::string, CheckFn>> verify_registry() {
  std::vector<std::pair<std::string, CheckFn>> registry;

  registry.emplace_back("uniprop-product", [](uint64_t seed) {
    CheckResult r{true, 0.0, 1e-10};
    for (int k : {2, 4, 8}) {
      Rng rng = Rng::derived(seed, 100 + k);
      for (int t = 0; t < 50; ++t) {
        ComplexMatrix a = random_matrix(k, rng), b = random_matrix(k, rng),
                      c = random_matrix(k, rng);
        ComplexMatrix abc = multiply(multiply(a, b), c);
        double aop = norm(a, NormKind::Operator), cop = norm(c, NormKind::Operator);
        for (NormKind kind : kAllNorms)
          r.measured = std::max(r.measured,
                                norm(abc, kind) - aop * norm(b, kind) * cop);
      }
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("uniprop-adjoint-abs", [](uint64_t seed) {
    CheckResult r{true, 0.0, 1e-10};
    for (int k : {2, 4, 8}) {
      Rng rng = Rng::derived(seed, 200 + k);
      for (int t = 0; t < 30; ++t) {
        ComplexMatrix a = random_matrix(k, rng);
        for (NormKind kind : kAllNorms) {
          double na = norm(a, kind);
          r.measured = std::max(r.measured, std::abs(norm(adjoint(a), kind) - na) / na);
          r.measured =
              std::max(r.measured, std::abs(norm(absolute_value(a), kind) - na) / na);
        }
      }
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("uniprop-monotone", [](uint64_t seed) {
    CheckResult r{true, 0.0, 1e-12};
    for (int k : {2, 4, 8}) {
      Rng rng = Rng::derived(seed, 300 + k);
      for (int t = 0; t < 30; ++t) {
        ComplexMatrix x = random_matrix(k, rng), y = random_matrix(k, rng);
        ComplexMatrix a = multiply(adjoint(x), x);
        ComplexMatrix b = a + multiply(adjoint(y), y);
        for (NormKind kind : kAllNorms)
          r.measured = std::max(r.measured, norm(a, kind) - norm(b, kind));
      }
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("unitary-invariance", [](uint64_t seed) {
    CheckResult r{true, 0.0, 1e-10};
    for (int k : {2, 4, 8}) {
      Rng rng = Rng::derived(seed, 400 + k);
      for (int t = 0; t < 30; ++t) {
        ComplexMatrix a = random_matrix(k, rng);
        UnitaryMatrix u = haar_unitary(k, rng), v = haar_unitary(k, rng);
        ComplexMatrix uav = multiply(multiply(u.matrix(), a), v.matrix());
        for (NormKind kind : kAllNorms) {
          double na = norm(a, kind);
          r.measured = std::max(r.measured, std::abs(norm(uav, kind) - na) / na);
        }
      }
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("submult-op-frob", [](uint64_t seed) {
    CheckResult r{true, 0.0, 1e-12};
    for (int k : {2, 4, 8}) {
      Rng rng = Rng::derived(seed, 500 + k);
      for (int t = 0; t < 50; ++t) {
        ComplexMatrix a = random_matrix(k, rng), b = random_matrix(k, rng);
        for (NormKind kind : {NormKind::Operator, NormKind::Frobenius})
          r.measured = std::max(r.measured, norm(multiply(a, b), kind) -
                                                norm(a, kind) * norm(b, kind));
      }
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("hs-submult", [](uint64_t) {
    // fixed witness diag(1, 0): the normalized norm is not submultiplicative
    ComplexMatrix w = ComplexMatrix::diagonal({cplx(1, 0), cplx(0, 0)});
    double lhs = norm(multiply(w, w), NormKind::NormalizedHS);
    double rhs = norm(w, NormKind::NormalizedHS) * norm(w, NormKind::NormalizedHS);
    CheckResult r;
    r.measured = lhs - rhs;
    r.bound = 0.2;
    r.pass = r.measured >= r.bound;
    return r;
  });

  registry.emplace_back("involution-closeness", [](uint64_t seed) {
    CheckResult r{true, 0.0, 1e-10};
    for (int k : {2, 4, 8}) {
      Rng rng = Rng::derived(seed, 600 + k);
      for (int t = 0; t < 100; ++t) {
        UnitaryMatrix a = haar_unitary(k, rng);
        UnitaryMatrix b = nearest_involution(a);
        ComplexMatrix a2 = multiply(a.matrix(), a.matrix());
        for (NormKind kind : kAllNorms)
          r.measured = std::max(r.measured, norm(b.matrix() - a.matrix(), kind) -
                                                distance_to_identity(a2, kind));
        r.measured = std::max(r.measured,
                              frobenius_norm(multiply(b.matrix(), b.matrix()) -
                                             ComplexMatrix::identity(k)));
      }
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("exp-bound-first-order", [](uint64_t seed) {
    CheckResult r{true, 0.0, 1e-10};
    Rng rng = Rng::derived(seed, 700);
    for (int t = 0; t < 50; ++t) {
      ComplexMatrix x = skew_part(random_matrix(5, rng));
      double cap = norm(x, NormKind::Operator);
      if (cap > 2.0) x *= cplx(2.0 / cap, 0);
      UnitaryMatrix e = exp_skew(x);
      for (NormKind kind : kAllNorms) {
        double nx = norm(x, kind);
        r.measured = std::max(r.measured, distance_to_identity(e.matrix(), kind) -
                                              nx * std::exp(nx));
      }
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("exp-bound-second-order", [](uint64_t seed) {
    CheckResult r{true, 0.0, 1e-10};
    Rng rng = Rng::derived(seed, 800);
    for (int t = 0; t < 50; ++t) {
      ComplexMatrix x = skew_part(random_matrix(5, rng));
      double cap = norm(x, NormKind::Operator);
      if (cap > 2.0) x *= cplx(2.0 / cap, 0);
      ComplexMatrix gap = ComplexMatrix::identity(5) + x - exp_skew(x).matrix();
      for (NormKind kind : {NormKind::Operator, NormKind::Frobenius}) {
        double nx = norm(x, kind);
        r.measured = std::max(r.measured, norm(gap, kind) - nx * nx * std::exp(nx));
      }
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("cocycle-identities", [](uint64_t seed) {
    auto z2 = free_abelian(2);
    auto w = std::make_shared<const Window>(ball(z2, 2));
    AlmostRep rep = perturbed_rep(z2, 6, 1e-2, mix_seed(seed, 900));
    double eps = defect(rep, NormKind::Frobenius);
    Lift phi = lift(rep, w);
    Cochain2 c = hochschild_cocycle(phi, eps);
    CocycleResiduals res = cocycle_residuals(c, phi);
    CheckResult r;
    r.bound = 1e-10 * (1.0 + max_frobenius(c));
    r.measured = std::max(res.hochschild_residual, res.symmetry_residual);
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("group-cocycle-quadratic", [](uint64_t seed) {
    // the 2-cocycle identity closes up to eps times a quadratic cochain term
    auto z2 = free_abelian(2);
    auto w = std::make_shared<const Window>(ball(z2, 2));
    AlmostRep rep = perturbed_rep(z2, 6, 1e-2, mix_seed(seed, 1000));
    double eps = defect(rep, NormKind::Frobenius);
    Lift phi = lift(rep, w);
    Cochain2 c = hochschild_cocycle(phi, eps);
    CocycleResiduals res = cocycle_residuals(c, phi);
    double cmax = max_frobenius(c);
    CheckResult r;
    r.bound = 2.0 * eps * cmax * cmax + 1e-10 * (1.0 + cmax);
    r.measured = res.group_cocycle_residual;
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("block-constant", [](uint64_t) {
    BSBlockData data(1);
    cplx zeta = unit_phase(1.0 / 3.0);
    ComplexMatrix s_tilde = ComplexMatrix::diagonal(
        {cplx(1, 0), cplx(1, 0), cplx(1, 0), cplx(-1, 0), cplx(-1, 0), cplx(-1, 0)});
    ComplexMatrix c_tilde = ComplexMatrix::diagonal(
        {cplx(1, 0), zeta, zeta * zeta, cplx(1, 0), zeta, zeta * zeta});
    ComplexMatrix m =
        multiply(adjoint(data.b_block), multiply(s_tilde, data.b_block));
    double g = frobenius_norm(multiply(c_tilde, m) - multiply(m, c_tilde));
    CheckResult r;
    r.measured = g * g;
    r.bound = 1e-10;
    r.pass = std::abs(r.measured - 6.0) <= r.bound;
    return r;
  });

  registry.emplace_back("plant-recover", [](uint64_t seed) {
    auto z5 = cyclic(5);
    auto w = std::make_shared<const Window>(ball(z5, 2));
    AlmostRep pi = perturbed_rep(z5, 4, 0.0, mix_seed(seed, 1100));
    Lift phi = lift(pi, w);
    Cochain1 planted = Cochain1::zero(w, 4);
    Rng rng = Rng::derived(seed, 1200);
    for (int i = 1; i < w->size(); ++i)
      planted.values[i] = skew_part(random_matrix(4, rng));
    Cochain2 alpha = coboundary1(planted, phi);
    CoboundarySolution sol = solve_coboundary(alpha, phi);
    CheckResult r;
    r.measured = sol.residual;
    r.bound = 1e-8;
    r.pass = r.measured <= r.bound;
    return r;
  });

  registry.emplace_back("lift-invariants", [](uint64_t seed) {
    auto z6 = cyclic(6);
    auto w = std::make_shared<const Window>(ball(z6, 3));
    AlmostRep rep = perturbed_rep(z6, 4, 0.05, mix_seed(seed, 1300));
    Lift phi = lift(rep, w);
    CheckResult r;
    r.bound = 1e-12;
    r.measured = frobenius_norm(phi.value(0).matrix() - ComplexMatrix::identity(4));
    for (int i = 0; i < w->size(); ++i) {
      int inv = w->inverse(i);
      r.measured = std::max(r.measured, frobenius_norm(phi.value(inv).matrix() -
                                                       adjoint(phi.value(i).matrix())));
      if (w->is_involution(i))
        r.measured = std::max(r.measured,
                              frobenius_norm(phi.value(i).matrix() -
                                             adjoint(phi.value(i).matrix())));
    }
    r.pass = r.measured <= r.bound;
    return r;
  });

  return registry;
}

int cmd_verify(const std::string& only_check, uint64_t seed,
               const std::string& out_path) {
  auto registry = verify_registry();
  if (!only_check.empty()) {
    bool known = false;
    for (const auto& [name, fn] : registry) known |= name == only_check;
    if (!known) throw ConfigError("unknown check '" + only_check + "'");
  }
  json output = json::object();
  bool all_pass = true;
  for (const auto& [name, fn] : registry) {
    if (!only_check.empty() && name != only_check) continue;
    CheckResult result = fn(seed);
    output[name] = {{"pass", result.pass},
                    {"measured", result.measured},
                    {"bound", result.bound}};
    all_pass &= result.pass;
  }
  emit(out_path, output.dump(2) + "\n");
  return all_pass ? kExitOk : kExitVerifyFailure;
}

// ---------------------------------------------------------------------------
// correct

int cmd_correct(const std::string& selector, int radius, int max_iters,
                double stall_factor, const std::string& out_path) {
  RepSelection sel;
  try {
    sel = rep_by_selector(selector);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!sel.group)
    throw ConfigError("representation '" + selector +
                      "' has no normal-form group backend; cannot run the pipeline");
  if (radius < 2) throw ConfigError("--radius must be >= 2");
  if (max_iters < 1) throw ConfigError("--max-iters must be >= 1");
  if (!(stall_factor > 0.0 && stall_factor < 1.0))
    throw ConfigError("--stall-factor must be in (0, 1)");

  auto [rep, report] = diminish(sel.rep, sel.group, radius, max_iters, stall_factor);
  (void)rep;
  emit(out_path, report_to_json(report).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "numerical laboratory for almost-representations of finitely presented groups"};
  app.require_subcommand(1);

  std::string example = "voiculescu", sizes = "4:256:x2";
  std::string rep_selector, check_name, out_path, norm_name_opt = "frob";
  uint64_t seed = 1;
  int radius = 3, max_iters = 8;
  double stall_factor = 0.5;

  CLI::App* sweep = app.add_subcommand("sweep", "measure defect scaling over a size grid");
  sweep->add_option("--example", example, "voiculescu | bs23 | perturbed:<group>:<eps>");
  sweep->add_option("--sizes", sizes, "geometric range a:b:xK or comma list");
  sweep->add_option("--seed", seed, "base RNG seed");
  sweep->add_option("--norm", norm_name_opt, "op | frob | hs (informational)");
  sweep->add_option("--out", out_path, "output CSV path (default stdout)");

  CLI::App* verify = app.add_subcommand("verify", "run the property check suites");
  verify->add_option("--check", check_name, "run a single named check");
  verify->add_option("--seed", seed, "base RNG seed");
  verify->add_option("--out", out_path, "output JSON path (default stdout)");

  CLI::App* correct_cmd =
      app.add_subcommand("correct", "run the defect-diminishing correction loop");
  correct_cmd
      ->add_option("--rep", rep_selector,
                   "voiculescu:n | perturbed:<group>:<k>:<eps>:<seed>")
      ->required();
  correct_cmd->add_option("--radius", radius, "window radius (>= 2)");
  correct_cmd->add_option("--max-iters", max_iters, "iteration cap");
  correct_cmd->add_option("--stall-factor", stall_factor,
                          "per-step shrink requirement in (0, 1)");
  correct_cmd->add_option("--seed", seed, "base RNG seed");
  correct_cmd->add_option("--out", out_path, "output JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    try {
      norm_from_name(norm_name_opt);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (sweep->parsed()) return cmd_sweep(example, sizes, seed, out_path);
    if (verify->parsed()) return cmd_verify(check_name, seed, out_path);
    if (correct_cmd->parsed())
      return cmd_correct(rep_selector, radius, max_iters, stall_factor, out_path);
    return kExitConfigError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}
