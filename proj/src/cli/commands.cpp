// Copyright 2026 The snowflake-embed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "snowflake/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "snowflake/cli/io.hpp"
#include "snowflake/embedding.hpp"
#include "snowflake/group_quotient.hpp"
#include "snowflake/negative_type.hpp"
#include "snowflake/schoenberg_integral.hpp"

namespace snowflake::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json claim(double value, double tolerance, bool pass) {
  return {{"value", value}, {"tolerance", tolerance}, {"pass", pass}};
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

void add_input(RunReport& report, const InputFile& file) {
  report.inputs.push_back({{"path", file.path}, {"sha256", file.sha256}});
}

json error_json(const Error& e) {
  json j = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  if (const auto* m = dynamic_cast<const MetricError*>(&e)) {
    j["indices"] = {m->i(), m->j(), m->k()};
  }
  if (const auto* o = dynamic_cast<const OrbitError*>(&e)) {
    j["orbit"] = o->orbit();
    j["element"] = o->element();
    j["other_orbit"] = o->other_orbit();
    j["other_element"] = o->other_element();
  }
  if (const auto* em = dynamic_cast<const EmbeddingError*>(&e)) {
    j["eigenvalues"] = to_json(em->eigenvalues());
    if (em->code() == ErrorCode::NotEmbeddable) {
      j["offending_eigenvalue"] = em->offending_eigenvalue();
      j["witness"] = to_json(em->witness());
    }
  }
  return j;
}

// Runs body and turns every failure into the documented exit code.
CommandResult guarded(const std::string& command, const std::function<void(CommandResult&)>& body) {
  CommandResult result;
  result.report.command = command;
  try {
    body(result);
  } catch (const UsageError& e) {
    result.exit_code = kUsageError;
    result.report.pass = false;
    result.report.payload["error"] = {{"code", "UsageError"}, {"message", e.what()}};
    result.report.summary.push_back(std::string("usage error: ") + e.what());
  } catch (const InputError& e) {
    result.exit_code = kInputError;
    result.report.pass = false;
    result.report.payload["error"] = {{"code", "InputError"}, {"message", e.what()}};
    result.report.summary.push_back(std::string("input error: ") + e.what());
  } catch (const json::exception& e) {
    result.exit_code = kInputError;
    result.report.pass = false;
    result.report.payload["error"] = {{"code", "InputError"}, {"message", e.what()}};
    result.report.summary.push_back(std::string("input error: ") + e.what());
  } catch (const Error& e) {
    result.exit_code = e.code() == ErrorCode::DomainError ? kUsageError : kPropertyFails;
    result.report.pass = false;
    result.report.payload["error"] = error_json(e);
    result.report.summary.push_back(std::string(to_string(e.code())) + ": " + e.what());
  }
  return result;
}

json negtype_json(const NegativeTypeReport& r, const Eigen::MatrixXd& d, double tol) {
  json j = {{"is_negative_type", r.is_negative_type},
            {"embeddable", r.embeddable()},
            {"is_strict", r.is_strict},
            {"min_eigenvalue", claim(r.min_eigenvalue, tol * r.spectral_radius, r.is_strict)},
            {"spectral_radius", r.spectral_radius}};
  if (r.witness) {
    j["witness"] = to_json(*r.witness);
    j["witness_form"] = quadratic_form(d, *r.witness);
  }
  return j;
}

void require_alpha(double alpha, bool allow_zero, bool allow_one) {
  const bool ok = (alpha > 0.0 || (allow_zero && alpha == 0.0)) &&
                  (alpha < 1.0 || (allow_one && alpha == 1.0));
  if (!ok || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << "--alpha " << alpha << " outside " << (allow_zero ? "[0, " : "(0, ")
        << (allow_one ? "1]" : "1)");
    throw UsageError(msg.str());
  }
}

}  // namespace

json RunReport::to_json() const {
  return {{"command", command},
          {"inputs", inputs},
          {"outcome", pass ? "pass" : "fail"},
          {"payload", payload},
          {"tolerances", tolerances}};
}

CommandResult cmd_validate(const ValidateArgs& args) {
  return guarded("validate", [&](CommandResult& r) {
    r.report.tolerances = {{"triangle", args.tol}};
    const InputFile file = read_input(args.metric_file);
    add_input(r.report, file);
    const Eigen::MatrixXd m = parse_metric(file);
    r.report.payload["n"] = m.rows();
    try {
      const FiniteMetricSpace x = validate_metric(m, args.tol);
      r.report.pass = true;
      r.report.payload["valid"] = true;
      r.report.summary.push_back("valid " + std::to_string(x.size()) + "-point metric");
    } catch (const MetricError& e) {
      r.exit_code = kPropertyFails;
      r.report.payload["valid"] = false;
      r.report.payload["violation"] = error_json(e);
      r.report.summary.push_back(std::string("invalid metric: ") + e.what());
    }
  });
}

CommandResult cmd_negtype(const NegtypeArgs& args) {
  return guarded("negtype", [&](CommandResult& r) {
    if (args.alpha) require_alpha(*args.alpha, true, true);
    r.report.tolerances = {{"spectral", args.tol}, {"triangle", args.validate_tol}};
    const InputFile file = read_input(args.metric_file);
    add_input(r.report, file);
    const FiniteMetricSpace input = validate_metric(parse_metric(file), args.validate_tol);
    const FiniteMetricSpace x =
        args.alpha ? snowflake(input, SnowflakeExponent(*args.alpha)) : input;
    const Eigen::MatrixXd d = squared_distance_matrix(x);
    r.report.payload["n"] = x.size();
    if (args.alpha) r.report.payload["alpha"] = *args.alpha;
    r.report.payload["strict_requested"] = args.strict;

    NegativeTypeReport report;
    if (args.strict && args.alpha && *args.alpha > 0.0) {
      try {
        report = check_strict_negative_type(input, SnowflakeExponent(*args.alpha), args.tol);
      } catch (const NotStrictError& e) {
        report = e.report();
        r.report.payload["error"] = error_json(e);
      }
    } else {
      report = check_negative_type(x, args.tol);
    }
    r.report.payload.update(negtype_json(report, d, args.tol));
    r.report.pass = report.is_negative_type && (!args.strict || report.is_strict);
    r.exit_code = r.report.pass ? kPass : kPropertyFails;
    std::string line = report.is_negative_type ? "negative type" : "NOT of negative type";
    if (args.strict || report.is_negative_type) {
      line += report.is_strict ? " (strict)" : " (not strict)";
    }
    r.report.summary.push_back(line + ", min centered eigenvalue " + fmt(report.min_eigenvalue));
    if (report.witness) r.report.summary.push_back("witness attached to the report");
  });
}

CommandResult cmd_embed(const EmbedArgs& args) {
  return guarded("embed", [&](CommandResult& r) {
    if (args.alpha) require_alpha(*args.alpha, true, true);
    r.report.tolerances = {{"rank", args.tol},
                           {"residual", kMaxEmbeddingResidual},
                           {"triangle", args.validate_tol}};
    const InputFile file = read_input(args.metric_file);
    add_input(r.report, file);
    const FiniteMetricSpace input = validate_metric(parse_metric(file), args.validate_tol);
    const Eigen::Index n = input.size();
    const double alpha = args.alpha.value_or(1.0);
    const SnowflakeExponent a(alpha);
    const bool theorem_applies = a.is_open_unit();

    EmbedOptions opts;
    opts.tol = args.tol;
    const EmbeddingResult e =
        theorem_applies ? snowflake_embed(input, a, opts) : embed(snowflake(input, a), opts);

    const double lambda_max = e.eigenvalues.size() ? e.eigenvalues[0] : 0.0;
    json& p = r.report.payload;
    p["n"] = n;
    p["alpha"] = alpha;
    p["rank"] = e.rank;
    p["eigenvalues"] = to_json(e.eigenvalues);
    p["residual"] = claim(e.residual, kMaxEmbeddingResidual, e.residual <= kMaxEmbeddingResidual);
    p["min_kept_eigenvalue"] = claim(e.min_kept_eigenvalue(), args.tol * lambda_max,
                                     e.rank == 0 || e.min_kept_eigenvalue() > args.tol * lambda_max);
    p["full_rank"] = e.rank == n - 1;
    if (theorem_applies) {
      p["theorem"] = {{"applicable", true}, {"rank_equals_n_minus_1", e.rank == n - 1}};
    } else {
      p["theorem"] = {{"applicable", false},
                      {"note", "alpha outside (0,1): the image need not span n-1 dimensions"}};
    }
    if (!args.out.empty()) {
      write_json(args.out, {{"alpha", alpha}, {"rank", e.rank}, {"coordinates", to_json(e.coordinates)}});
    }
    r.report.pass = true;
    r.report.summary.push_back("embedded " + std::to_string(n) + " points with rank " +
                               std::to_string(e.rank) + ", residual " + fmt(e.residual));
    if (e.rank < n - 1) {
      r.report.summary.push_back("rank < n-1; the dimension theorem does not apply at alpha = " +
                                 fmt(alpha));
    }
  });
}

CommandResult cmd_schoenberg(const SchoenbergArgs& args) {
  return guarded("schoenberg", [&](CommandResult& r) {
    require_alpha(args.alpha, false, false);
    if (args.t_grid.empty()) throw UsageError("--t-grid is empty");
    for (double t : args.t_grid) {
      if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("--t-grid values must be positive");
    }
    if (!(args.quad_tol > 0.0)) throw UsageError("--quad-tol must be positive");
    const QuadratureSpec spec;
    r.report.tolerances = {{"rel_err", args.quad_tol},
                           {"quadrature_rel_tol", spec.rel_tol},
                           {"quadrature_abs_tol", spec.abs_tol},
                           {"max_subdivisions", spec.max_subdivisions}};

    const ConstantCheck c = schoenberg_constant_check(args.alpha, spec);
    bool pass = c.rel_err <= args.quad_tol;
    json& p = r.report.payload;
    p["alpha"] = args.alpha;
    p["exponent"] = 2.0 * args.alpha;
    p["constant"] = {{"closed_form", c.closed_form},
                     {"quadrature", c.quadrature},
                     {"rel_err", claim(c.rel_err, args.quad_tol, c.rel_err <= args.quad_tol)}};
    p["identity"] = json::array();
    for (double t : args.t_grid) {
      const PowerIdentity id = verify_power_identity(t, args.alpha, spec);
      const bool ok = id.rel_err <= args.quad_tol;
      pass = pass && ok;
      p["identity"].push_back({{"t", t},
                               {"lhs", id.lhs},
                               {"rhs", id.rhs},
                               {"rel_err", claim(id.rel_err, args.quad_tol, ok)}});
      r.report.summary.push_back("t = " + fmt(t) + ": t^" + fmt(2 * args.alpha) + " = " +
                                 fmt(id.lhs) + ", rel_err " + fmt(id.rel_err));
    }
    r.report.summary.insert(r.report.summary.begin(),
                            "c(" + fmt(args.alpha) + ") = " + fmt(c.closed_form) +
                                " (quadrature rel_err " + fmt(c.rel_err) + ")");
    r.report.pass = pass;
    r.exit_code = pass ? kPass : kPropertyFails;
  });
}

CommandResult cmd_quotient_embed(const QuotientEmbedArgs& args) {
  return guarded("quotient-embed", [&](CommandResult& r) {
    require_alpha(args.alpha, true, false);
    r.report.tolerances = {{"verification", args.tol}, {"lift_separation", args.lift_tol}};
    const InputFile group_file = read_input(args.group_file);
    const InputFile reps_file = read_input(args.reps_file);
    add_input(r.report, group_file);
    add_input(r.report, reps_file);
    const OrthogonalAction action = parse_group(group_file);
    const Eigen::MatrixXd reps = parse_representatives(reps_file);
    const QuotientConfiguration q = lift_orbits(reps, action, args.lift_tol);

    auto fill = [&](const QngEmbedding& e) {
      json& p = r.report.payload;
      p["alpha"] = args.alpha;
      p["group_order"] = action.order();
      p["orbits"] = q.orbits();
      p["lifted_points"] = q.lifted_size();
      p["scale_note"] = std::string(QngEmbedding::kScaleNote);
      p["b_spectrum"] = to_json(e.b_spectrum);
      p["b_zero_eigenvalues"] = e.b_zero_eigenvalues;
      p["invariance_defect"] = claim(e.invariance_defect, args.tol, e.invariance_defect <= args.tol);
      p["equivariance_defect"] = e.equivariance_defect;
      p["report"] = json::array();
      for (const auto& row : e.report) {
        p["report"].push_back({{"i", row.i},
                               {"j", row.j},
                               {"target", row.target},
                               {"achieved", row.achieved},
                               {"abs_error", row.abs_error},
                               {"group_element", row.achieved_element}});
      }
      const double bound = args.tol * (1.0 + e.max_target);
      p["max_abs_error"] = claim(e.max_abs_error, bound, e.max_abs_error <= bound);
    };

    try {
      const QngEmbedding e = qng_embed(q, SnowflakeExponent(args.alpha), args.tol);
      fill(e);
      if (!args.out.empty()) {
        write_json(args.out, {{"points", to_json(e.points)},
                              {"scale_note", std::string(QngEmbedding::kScaleNote)}});
      }
      r.report.pass = true;
      r.report.summary.push_back("embedded " + std::to_string(q.orbits()) + " orbits into Q(" +
                                 std::to_string(q.orbits()) + ", G) with |G| = " +
                                 std::to_string(action.order()) + "; max abs error " +
                                 fmt(e.max_abs_error) + ", equivariance defect " +
                                 fmt(e.equivariance_defect));
    } catch (const QngError& e) {
      fill(e.partial());
      throw;
    }
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isometric embeddings of snowflaked finite metric spaces"};
  app.require_subcommand(1);
  std::string json_path;

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check the metric axioms of a distance matrix");
  v->add_option("metric_file", validate.metric_file, "JSON or CSV distance matrix")->required();
  v->add_option("--tol", validate.tol, "Triangle-inequality slack relative to max distance");
  v->add_option("--json", json_path, "Write the machine-readable report here");

  NegtypeArgs negtype;
  auto* nt = app.add_subcommand("negtype", "Test a metric (or its snowflake) for negative type");
  nt->add_option("metric_file", negtype.metric_file, "JSON or CSV distance matrix")->required();
  nt->add_option("--alpha", negtype.alpha, "Snowflake exponent in [0, 1]");
  nt->add_flag("--strict", negtype.strict, "Require strict negative type");
  nt->add_option("--tol", negtype.tol, "Spectral tolerance relative to the spectral radius");
  nt->add_option("--validate-tol", negtype.validate_tol, "Triangle-inequality slack");
  nt->add_option("--json", json_path, "Write the machine-readable report here");

  EmbedArgs embed_args;
  auto* em = app.add_subcommand("embed", "Embed a metric (or its snowflake) in Euclidean space");
  em->add_option("metric_file", embed_args.metric_file, "JSON or CSV distance matrix")->required();
  em->add_option("--alpha", embed_args.alpha, "Snowflake exponent in [0, 1]");
  em->add_option("--tol", embed_args.tol, "Rank cutoff relative to the largest eigenvalue");
  em->add_option("--validate-tol", embed_args.validate_tol, "Triangle-inequality slack");
  em->add_option("--out", embed_args.out, "Write coordinates JSON here");
  em->add_option("--json", json_path, "Write the machine-readable report here");

  SchoenbergArgs sch;
  std::string t_grid;
  auto* sc = app.add_subcommand("schoenberg", "Verify the Gaussian integral representation of t^{2a}");
  sc->add_option("--alpha", sch.alpha, "Snowflake exponent a in (0, 1)")->required();
  sc->add_option("--t-grid", t_grid, "Comma-separated t values");
  sc->add_option("--quad-tol", sch.quad_tol, "Allowed relative error");
  sc->add_option("--json", json_path, "Write the machine-readable report here");

  QuotientEmbedArgs qe;
  auto* qc = app.add_subcommand("quotient-embed", "Embed orbit representatives into Q(n,G)");
  qc->add_option("group_file", qe.group_file, "Group JSON")->required();
  qc->add_option("reps_file", qe.reps_file, "Representatives JSON or CSV")->required();
  qc->add_option("--alpha", qe.alpha, "Snowflake exponent in [0, 1)");
  qc->add_option("--tol", qe.tol, "Verification tolerance");
  qc->add_option("--lift-tol", qe.lift_tol, "Minimum relative separation of lifted points");
  qc->add_option("--out", qe.out, "Write the L_1(n,G) points JSON here");
  qc->add_option("--json", json_path, "Write the machine-readable report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsageError;
  }

  CommandResult result;
  if (v->parsed()) {
    result = cmd_validate(validate);
  } else if (nt->parsed()) {
    result = cmd_negtype(negtype);
  } else if (em->parsed()) {
    result = cmd_embed(embed_args);
  } else if (sc->parsed()) {
    if (!t_grid.empty()) {
      sch.t_grid.clear();
      std::istringstream cells(t_grid);
      std::string cell;
      try {
        while (std::getline(cells, cell, ',')) sch.t_grid.push_back(std::stod(cell));
      } catch (const std::exception&) {
        err << "--t-grid: '" << cell << "' is not a number\n";
        return kUsageError;
      }
    }
    result = cmd_schoenberg(sch);
  } else {
    result = cmd_quotient_embed(qe);
  }

  for (const auto& line : result.report.summary) out << line << '\n';
  out << result.report.command << ": " << (result.report.pass ? "pass" : "fail") << '\n';
  if (!json_path.empty()) {
    try {
      write_json(json_path, result.report.to_json());
    } catch (const InputError& e) {
      err << e.what() << '\n';
      return kInputError;
    }
  }
  return result.exit_code;
}

}  // namespace snowflake::cli
