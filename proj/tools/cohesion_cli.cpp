// Command-line front end: cohesion, maxent, field, code, matroid, scan, maximizer.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohesion/codes.hpp"
#include "cohesion/error.hpp"
#include "cohesion/explore.hpp"
#include "cohesion/gf.hpp"
#include "cohesion/io.hpp"
#include "cohesion/kernels.hpp"
#include "cohesion/matroid.hpp"
#include "cohesion/maxent.hpp"
#include "cohesion/maximizer.hpp"
#include "cohesion/measures.hpp"

using nlohmann::json;
namespace co = cohesion;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short form for human-readable tables.
std::string shortnum(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct Output {
  bool as_json = false;
  json config = json::object();

  void echo_text() const {
    std::cout << "# config:";
    for (const auto& [k, v] : config.items()) std::cout << ' ' << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump());
    std::cout << '\n';
  }
  void emit(json body) const {
    body["config"] = config;
    std::cout << body.dump(2) << '\n';
  }
};

json check_json(const co::BoundCheck& c) {
  return {{"name", c.name}, {"k", c.k}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}, {"satisfied", c.satisfied}};
}

void print_check(const co::BoundCheck& c) {
  std::cout << c.name;
  if (c.k > 0) std::cout << " k=" << c.k;
  std::cout << ": lhs=" << shortnum(c.lhs) << " rhs=" << shortnum(c.rhs) << " slack=" << shortnum(c.slack) << ' '
            << (c.satisfied ? "ok" : "VIOLATED") << '\n';
}

std::vector<std::vector<co::Element>> matrix_rows(const co::FieldMatrix& m) {
  std::vector<std::vector<co::Element>> rows;
  for (int r = 0; r < m.rows; ++r) rows.push_back(m.row(r));
  return rows;
}

void print_matrix(const co::FieldMatrix& m) {
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) std::cout << (c ? " " : "") << m.at(r, c);
    std::cout << '\n';
  }
}

json field_json(const co::FiniteField& f) {
  return {{"p", f.characteristic()},
          {"m", f.degree()},
          {"q", f.order()},
          {"modulus", f.modulus()},
          {"modulus_text", co::modulus_string(f)},
          {"primitive", f.primitive()}};
}

std::vector<std::vector<int>> index_lists(const std::vector<co::SubsetMask>& sets) {
  std::vector<std::vector<int>> out;
  for (const auto& s : sets) out.push_back(s.indices());
  return out;
}

std::optional<std::vector<int>> parse_coeffs(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw co::Error(co::ErrorKind::invalid_argument, "bad modulus coefficient '" + tok + "'");
    }
  }
  return out;
}

// ---- subcommands -----------------------------------------------------------

struct DistArgs {
  std::string file;
  std::optional<int> q;
  bool normalize = false;

  co::JointDistribution load(Output& out) const {
    out.config["file"] = file;
    out.config["normalize"] = normalize;
    return co::read_distribution(file, {q, normalize});
  }
};

void add_dist_args(CLI::App* sub, DistArgs& args) {
  sub->add_option("file", args.file, "distribution file (.csv or .json)")->required();
  sub->add_option("--q", args.q, "alphabet size (default: from the file)")->check(CLI::Range(2, 65536));
  sub->add_flag("--normalize", args.normalize, "rescale masses to sum to 1");
}

void run_cohesion(Output& out, const DistArgs& args, std::optional<double> base_opt) {
  const auto p = args.load(out);
  const int q = p.q();
  const double base = base_opt.value_or(static_cast<double>(q));
  out.config["n"] = p.n();
  out.config["q"] = q;
  out.config["base"] = base;
  const auto prof = co::cohesion_profile(p, base);
  const auto prof_q = co::cohesion_profile(p, static_cast<double>(q));
  const auto prof_2 = co::cohesion_profile(p, 2.0);
  const auto poly = co::check_polymatroid_bounds(prof_q);
  std::optional<co::QuadReport> quad;
  if (p.n() == 4) quad = co::check_quad_inequalities(prof_q);
  const bool all_ok = poly.all_satisfied && (!quad || quad->all_satisfied);

  if (out.as_json) {
    json body{{"n", p.n()},
              {"q", q},
              {"base", base},
              {"values", prof.values},
              {"values_base_q", prof_q.values},
              {"values_bits", prof_2.values},
              {"constant_bounds", prof.constant_bounds},
              {"constant_bounds_base_q", prof_q.constant_bounds},
              {"joint_entropy_base_q", co::entropy(p).value},
              {"all_satisfied", all_ok}};
    std::vector<double> upper, lower;
    json checks = json::array();
    for (const auto& c : poly.upper) {
      upper.push_back(c.slack);
      checks.push_back(check_json(c));
    }
    for (const auto& c : poly.lower) {
      lower.push_back(c.slack);
      checks.push_back(check_json(c));
    }
    for (const auto& c : poly.constant) checks.push_back(check_json(c));
    body["eq1_slack"] = upper;
    body["eq1_dual_slack"] = lower;
    if (quad) {
      std::vector<double> qs;
      for (const auto& c : quad->checks) {
        qs.push_back(c.slack);
        checks.push_back(check_json(c));
      }
      body["quad_slack"] = qs;
    }
    body["checks"] = checks;
    out.emit(body);
    return;
  }
  out.echo_text();
  std::cout << "H(X) = " << shortnum(co::entropy(p).value) << " (base q=" << q << ")\n";
  for (int k = 1; k <= p.n() - 1; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    std::cout << 'C' << k << " = " << num(prof.values[i]) << " (base " << shortnum(base) << ") | "
              << shortnum(prof_q.values[i]) << " (base q) | " << shortnum(prof_2.values[i]) << " bits | bound "
              << shortnum(prof_q.constant_bounds[i]) << " (base q) | slack " << shortnum(prof_q.slack[i]) << '\n';
  }
  for (const auto& c : poly.upper) print_check(c);
  for (const auto& c : poly.lower) print_check(c);
  for (const auto& c : poly.constant) print_check(c);
  if (quad) {
    for (const auto& c : quad->checks) print_check(c);
  }
  std::cout << "all bounds " << (all_ok ? "satisfied" : "VIOLATED") << '\n';
}

void run_maxent(Output& out, const DistArgs& args, int k, const co::ProjectionOptions& opts) {
  const auto p = args.load(out);
  out.config["n"] = p.n();
  out.config["q"] = p.q();
  out.config["k"] = k;
  out.config["tol"] = opts.tol;
  out.config["max_sweeps"] = opts.max_sweeps;
  const auto rep = co::check_eq4_bound(p, k, opts);
  const double div_bits = rep.projection.divergence(2.0);
  if (out.as_json) {
    out.emit({{"divergence", rep.lhs},
              {"divergence_bits", div_bits},
              {"iterations", rep.projection.iterations},
              {"residual", rep.projection.residual},
              {"converged", rep.projection.converged},
              {"eq4_lhs", rep.lhs},
              {"eq4_rhs", rep.rhs},
              {"eq4_slack", rep.slack},
              {"eq4_satisfied", rep.satisfied}});
    return;
  }
  out.echo_text();
  std::cout << "D(p || p^(" << k << ")) = " << num(rep.lhs) << " (base q) | " << shortnum(div_bits) << " bits\n"
            << "iterations = " << rep.projection.iterations << ", residual = " << shortnum(rep.projection.residual)
            << ", converged = " << (rep.projection.converged ? "true" : "false") << '\n'
            << "divergence bound: D = " << shortnum(rep.lhs) << " <= C" << k << "/C(n-1,k-1) = " << shortnum(rep.rhs)
            << ", slack " << shortnum(rep.slack) << ' ' << (rep.satisfied ? "ok" : "VIOLATED") << '\n';
}

void run_field_show(Output& out, int p, int m, const std::string& modulus) {
  out.config["p"] = p;
  out.config["m"] = m;
  if (!modulus.empty()) out.config["modulus"] = modulus;
  const auto f = co::FiniteField::make(p, m, parse_coeffs(modulus));
  if (out.as_json) {
    json body = field_json(f);
    if (f.order() <= 64) {
      body["addition"] = f.addition_table();
      body["multiplication"] = f.multiplication_table();
    }
    out.emit(body);
    return;
  }
  out.echo_text();
  if (f.order() <= 64) {
    std::cout << co::emit_tables(f);
  } else {
    std::cout << "GF(" << f.order() << ") modulus " << co::modulus_string(f) << ", primitive element "
              << f.primitive() << "\n(tables are printed for q <= 64 only)\n";
  }
}

void run_code_rs(Output& out, int p, int m, int k, const std::string& emit, bool list) {
  out.config["p"] = p;
  out.config["m"] = m;
  out.config["k"] = k;
  if (!emit.empty()) out.config["emit"] = emit;
  const auto f = co::FiniteField::make(p, m);
  const auto code = co::rs_generator(f, k);
  std::optional<co::CodeParams> params;
  std::string params_note;
  try {
    params = co::min_distance(code);
  } catch (const co::Error& e) {
    if (e.kind() != co::ErrorKind::size_limit) throw;
    params_note = e.what();
  }
  std::optional<bool> kci;
  if (co::binomial(code.n(), code.k()) <= co::kMaxColumnSubsets) kci = co::k_column_independence(code);
  std::optional<co::CodewordList> words;
  if (list) words = co::enumerate_codewords(code);
  if (!emit.empty()) {
    co::write_distribution_file(emit, co::code_to_distribution(code),
                                {"Reed-Solomon code over GF(" + std::to_string(f.order()) + "), k=" + std::to_string(k)});
  }
  if (out.as_json) {
    json body{{"field", field_json(f)},
              {"n", code.n()},
              {"k", code.k()},
              {"q", code.q()},
              {"evaluation_points", co::rs_evaluation_points(f)},
              {"generator", matrix_rows(code.generator())}};
    if (params) {
      body["d"] = params->d;
      body["is_mds"] = params->is_mds;
    } else {
      body["d"] = nullptr;
      body["note"] = params_note;
    }
    body["k_column_independent"] = kci ? json(*kci) : json(nullptr);
    if (words) {
      json rows = json::array();
      for (std::size_t i = 0; i < words->size(); ++i) {
        const auto w = (*words)[i];
        rows.push_back(std::vector<co::Element>(w.begin(), w.end()));
      }
      body["codewords"] = rows;
    }
    out.emit(body);
    return;
  }
  out.echo_text();
  std::cout << "generator (" << code.k() << " x " << code.n() << ", integer labels):\n";
  print_matrix(code.generator());
  if (params) {
    std::cout << "n=" << params->n << " k=" << params->k << " q=" << params->q << " d=" << params->d
              << " mds=" << (params->is_mds ? "true" : "false") << '\n';
  } else {
    std::cout << "minimum distance not computed: " << params_note << '\n';
  }
  if (kci) std::cout << "every k columns independent: " << (*kci ? "true" : "false") << '\n';
  if (words) {
    std::cout << "codewords (" << words->size() << "):\n";
    for (std::size_t i = 0; i < words->size(); ++i) {
      const auto w = (*words)[i];
      for (std::size_t j = 0; j < w.size(); ++j) std::cout << (j ? " " : "") << w[j];
      std::cout << '\n';
    }
  }
  if (!emit.empty()) std::cout << "distribution written to " << emit << '\n';
}

void run_matroid_from_dist(Output& out, const DistArgs& args) {
  const auto p = args.load(out);
  out.config["n"] = p.n();
  out.config["q"] = p.q();
  const auto rep = co::entropy_rank_report(p);
  if (rep.near_matroidal) {
    std::cerr << "warning: subset entropies are within 1e-3 of integers but not within 1e-6 (max deviation "
              << shortnum(rep.max_deviation) << ")\n";
  }
  const auto m = co::matroid_from_ranks(rep);
  const auto axioms = co::verify_axioms(m);
  const int r = m.rank();
  const bool uniform = co::is_isomorphic_uniform(m, r);
  if (out.as_json) {
    out.emit({{"n", p.n()},
              {"ranks", rep.ranks},
              {"integer_valued", rep.integer_valued},
              {"max_deviation", rep.max_deviation},
              {"near_matroidal", rep.near_matroidal},
              {"nonnegative", rep.nonnegative},
              {"monotone", rep.monotone},
              {"submodular", rep.submodular},
              {"bounded_by_size", rep.bounded_by_size},
              {"rank", r},
              {"independents", index_lists(m.independents())},
              {"axioms", {{"m1", axioms.m1}, {"m2", axioms.m2}, {"m3", axioms.m3}, {"m3_checked", axioms.m3_checked}}},
              {"uniform", uniform}});
    return;
  }
  out.echo_text();
  std::cout << "rank " << r << ", max deviation from integers " << shortnum(rep.max_deviation) << '\n'
            << "axioms: M1 " << (axioms.m1 ? "ok" : "FAIL") << ", M2 " << (axioms.m2 ? "ok" : "FAIL") << ", M3 "
            << (axioms.m3_checked ? (axioms.m3 ? "ok" : "FAIL") : "not checked") << '\n'
            << "uniform U_{" << r << "," << p.n() << "}: " << (uniform ? "yes" : "no") << '\n'
            << "independent sets:";
  for (const auto& s : m.independents()) {
    std::cout << " {";
    const auto idx = s.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) std::cout << (i ? "," : "") << idx[i];
    std::cout << '}';
  }
  std::cout << '\n';
}

void run_uniform_rep(Output& out, int k, int n, int p, int m, co::SearchBudget budget) {
  out.config["k"] = k;
  out.config["n"] = n;
  out.config["p"] = p;
  out.config["m"] = m;
  out.config["max_candidates"] = budget.max_candidates;
  out.config["max_nodes"] = budget.max_nodes;
  const auto f = co::FiniteField::make(p, m);
  const auto res = co::uniform_representable_over(k, n, f, budget);
  if (out.as_json) {
    json body{{"k", k}, {"n", n}, {"q", f.order()}, {"outcome", co::to_string(res.outcome)}, {"nodes", res.nodes}};
    body["matrix"] = res.matrix ? json(matrix_rows(*res.matrix)) : json(nullptr);
    if (!res.note.empty()) body["note"] = res.note;
    out.emit(body);
    return;
  }
  out.echo_text();
  std::cout << "U_{" << k << "," << n << "} over GF(" << f.order() << "): " << co::to_string(res.outcome);
  if (!res.note.empty()) std::cout << " (" << res.note << ")";
  std::cout << ", " << res.nodes << " search nodes\n";
  if (res.matrix) print_matrix(*res.matrix);
}

json violations_json(const co::ViolationCounts& v) {
  return {{"polymatroid_upper", v.polymatroid_upper},
          {"polymatroid_lower", v.polymatroid_lower},
          {"constant", v.constant},
          {"quad", v.quad},
          {"divergence", v.divergence},
          {"total", v.total()}};
}

void run_scan_cmd(Output& out, co::ScanConfig cfg, const std::string& measures, const std::string& dir, bool serial) {
  cfg.measures = co::parse_measures(measures, cfg.n);
  cfg.validate();
  const json echo{{"n", cfg.n},
                  {"q", cfg.q},
                  {"mode", co::to_string(cfg.mode)},
                  {"resolution", cfg.resolution},
                  {"samples", cfg.sample_count},
                  {"seed", cfg.seed},
                  {"measures", co::format_measures(cfg.measures)},
                  {"restarts", cfg.restarts},
                  {"ipf_tol", cfg.ipf.tol},
                  {"ipf_max_sweeps", cfg.ipf.max_sweeps},
                  {"out", dir},
                  {"threads", serial ? 1 : co::worker_count()}};
  for (const auto& [k, v] : echo.items()) out.config[k] = v;
  const auto exec = serial ? co::Execution::serial : co::Execution::parallel;
  if (cfg.mode == co::ScanMode::grid) {
    const auto count = co::grid_point_count(cfg.cells(), cfg.resolution);
    if (count > co::kLargeGridPoints && cfg.allow_large_grid) {
      std::cerr << "warning: grid has " << count << " points; expect a long run\n";
    }
  }
  co::ScatterWriter writer(dir, cfg);
  json body;
  if (cfg.mode == co::ScanMode::search) {
    const auto res = co::local_search_max(cfg, cfg.measures.front(), cfg.restarts, exec);
    co::ViolationCounts viol;
    for (std::size_t r = 0; r < res.restarts.size(); ++r) {
      const auto pt = co::evaluate_point(cfg, res.restarts[r].masses);
      viol += pt.violations;
      writer.add(r, pt);
    }
    writer.close();
    const auto dist = co::JointDistribution::from_dense(cfg.n, cfg.q, res.masses);
    co::write_distribution_file(std::filesystem::path(dir) / "best.csv", dist,
                                {"local search best for " + res.objective.name(), "config: " + res.config});
    std::vector<double> per_restart;
    for (const auto& r : res.restarts) per_restart.push_back(r.value);
    body = {{"objective", res.objective.name()},
            {"best_value", res.value},
            {"best_restart", res.best_restart},
            {"restart_values", per_restart},
            {"best_distribution", co::distribution_to_json(dist)},
            {"violations", violations_json(viol)}};
  } else {
    const auto sum = co::run_scan(
        cfg, [&](std::uint64_t i, std::span<const double>, const co::PointEval& pt) { writer.add(i, pt); }, exec);
    writer.close();
    json best = json::object();
    for (std::size_t j = 0; j < cfg.measures.size(); ++j) {
      best[cfg.measures[j].name()] = {{"value", sum.best[j].value}, {"index", sum.best[j].index}};
    }
    body = {{"points", sum.points},
            {"best", best},
            {"violations", violations_json(sum.violations)},
            {"ipf_not_converged", sum.ipf_not_converged}};
  }
  std::vector<std::string> files;
  for (const auto& f : writer.files()) files.push_back(f.string());
  body["files"] = files;
  if (out.as_json) {
    out.emit(body);
    return;
  }
  out.echo_text();
  if (body.contains("points")) {
    std::cout << "points: " << body["points"] << '\n';
    for (const auto& [name, b] : body["best"].items()) {
      std::cout << "max " << name << " = " << num(b["value"].get<double>()) << " at index " << b["index"] << '\n';
    }
    std::cout << "ipf not converged: " << body["ipf_not_converged"] << '\n';
  } else {
    std::cout << "objective " << body["objective"].get<std::string>() << ": best " << num(body["best_value"].get<double>())
              << " (restart " << body["best_restart"] << ")\n";
  }
  std::cout << "bound violations: " << body["violations"]["total"] << '\n';
  for (const auto& f : files) std::cout << "wrote " << f << '\n';
}

void run_maximizer_cmd(Output& out, int n, int k, int max_q, const std::string& emit) {
  out.config["n"] = n;
  out.config["k"] = k;
  out.config["max_q"] = max_q;
  if (!emit.empty()) out.config["emit"] = emit;
  co::MaximizerOptions opts;
  opts.max_q = max_q;
  const auto res = co::run_maximizer(n, k, opts);
  const auto& c = res.certificate;
  std::vector<std::string> comments{
      "maximizer n=" + std::to_string(n) + " k=" + std::to_string(k) + " q=" + std::to_string(c.q) + " (" +
          c.construction + ")",
      "certificate: C" + std::to_string(k) + " = " + num(c.value) + " (base q) = " + num(c.value_bits) +
          " bits; bound " + num(c.bound) + " (base q); meets_bound=" + (c.meets_bound ? "true" : "false"),
      "certificate: " + c.matroid_note};
  if (!emit.empty()) co::write_distribution_file(emit, res.distribution, comments);
  if (out.as_json) {
    out.emit({{"n", c.n},
              {"k", c.k},
              {"q", c.q},
              {"construction", c.construction},
              {"generator", matrix_rows(res.generator)},
              {"distribution", co::distribution_to_json(res.distribution)},
              {"certificate",
               {{"value", c.value},
                {"value_bits", c.value_bits},
                {"bound", c.bound},
                {"meets_bound", c.meets_bound},
                {"uniform_matroid", c.uniform_matroid},
                {"matroid_note", c.matroid_note}}}});
    return;
  }
  out.echo_text();
  if (emit.empty()) {
    co::write_distribution_csv(std::cout, res.distribution, comments);
  } else {
    for (const auto& line : comments) std::cout << "# " << line << '\n';
    std::cout << "# distribution written to " << emit << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  co::apply_thread_cap_from_env();

  CLI::App app{"Cohesion measures, finite fields, MDS codes and matroids", "cohesion"};
  app.set_version_flag("--version", co::kToolVersion);
  app.fallthrough();
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.as_json, "machine-readable JSON output");
  std::function<void()> action;

  // cohesion
  DistArgs coh_args;
  std::optional<double> coh_base;
  auto* coh = app.add_subcommand("cohesion", "Cohesion profile and bound checks for a distribution");
  add_dist_args(coh, coh_args);
  coh->add_option("--base", coh_base, "logarithm base for the primary column (default q)")
      ->check(CLI::PositiveNumber);
  coh->callback([&] { action = [&] { run_cohesion(out, coh_args, coh_base); }; });

  // maxent
  DistArgs me_args;
  int me_k = 0;
  co::ProjectionOptions me_opts;
  auto* me = app.add_subcommand("maxent", "Maximum-entropy projection and the divergence bound");
  add_dist_args(me, me_args);
  me->add_option("--k", me_k, "marginal order")->required();
  me->add_option("--tol", me_opts.tol, "L-infinity marginal tolerance")->capture_default_str();
  me->add_option("--max-sweeps", me_opts.max_sweeps, "sweep limit")->capture_default_str()->check(CLI::PositiveNumber);
  me->callback([&] { action = [&] { run_maxent(out, me_args, me_k, me_opts); }; });

  // field show
  auto* field = app.add_subcommand("field", "Finite fields");
  field->require_subcommand(1);
  int fp = 0, fm = 0;
  std::string fmod;
  auto* show = field->add_subcommand("show", "Print the addition and multiplication tables of GF(p^m)");
  show->add_option("p", fp, "characteristic")->required();
  show->add_option("m", fm, "extension degree")->required();
  show->add_option("--modulus", fmod, "modulus coefficients, constant term first (e.g. 1,1,1)");
  show->callback([&] { action = [&] { run_field_show(out, fp, fm, fmod); }; });

  // code rs
  auto* code = app.add_subcommand("code", "Linear codes");
  code->require_subcommand(1);
  int cp = 0, cm = 1, ck = 0;
  std::string cemit;
  bool clist = false;
  auto* rs = code->add_subcommand("rs", "Reed-Solomon code of length q over GF(p^m)");
  rs->add_option("--p", cp, "characteristic")->required();
  rs->add_option("--m", cm, "extension degree")->capture_default_str();
  rs->add_option("--k", ck, "message length")->required();
  rs->add_option("--emit", cemit, "write the uniform codeword distribution to this CSV");
  rs->add_flag("--codewords", clist, "list every codeword");
  rs->callback([&] { action = [&] { run_code_rs(out, cp, cm, ck, cemit, clist); }; });

  // matroid
  auto* mat = app.add_subcommand("matroid", "Matroids from entropy and from matrices");
  mat->require_subcommand(1);
  DistArgs md_args;
  auto* from_dist = mat->add_subcommand("from-dist", "Entropy matroid of a distribution");
  add_dist_args(from_dist, md_args);
  from_dist->callback([&] { action = [&] { run_matroid_from_dist(out, md_args); }; });
  int uk = 0, un = 0, up = 0, um = 1;
  co::SearchBudget budget;
  auto* urep = mat->add_subcommand("uniform-rep", "Search for a representation of U_{k,n} over GF(p^m)");
  urep->add_option("--k", uk, "rank")->required();
  urep->add_option("--n", un, "ground set size")->required();
  urep->add_option("--p", up, "characteristic")->required();
  urep->add_option("--m", um, "extension degree")->capture_default_str();
  urep->add_option("--max-candidates", budget.max_candidates, "largest q^k searched")->capture_default_str();
  urep->add_option("--max-nodes", budget.max_nodes, "search node budget")->capture_default_str();
  urep->callback([&] { action = [&] { run_uniform_rep(out, uk, un, up, um, budget); }; });

  // scan
  co::ScanConfig scfg;
  std::string smode = "random", smeasures = "c1,c2,c3", sdir = "scan_out";
  bool sserial = false;
  auto* scan = app.add_subcommand("scan", "Simplex scans writing Cohesion and divergence scatter data");
  scan->add_option("--n", scfg.n, "variables")->capture_default_str();
  scan->add_option("--q", scfg.q, "alphabet size")->capture_default_str();
  scan->add_option("--mode", smode, "grid | random | search")->capture_default_str();
  scan->add_option("--resolution", scfg.resolution, "grid denominator")->capture_default_str();
  scan->add_option("--samples", scfg.sample_count, "random samples")->capture_default_str();
  scan->add_option("--seed", scfg.seed, "64-bit seed")->capture_default_str();
  scan->add_option("--measures", smeasures, "comma list of c<k> and d<k>")->capture_default_str();
  scan->add_option("--restarts", scfg.restarts, "local search restarts")->capture_default_str();
  scan->add_option("--ipf-tol", scfg.ipf.tol, "projection tolerance")->capture_default_str();
  scan->add_option("--ipf-max-sweeps", scfg.ipf.max_sweeps, "projection sweep limit")->capture_default_str();
  scan->add_option("--out", sdir, "output directory")->capture_default_str();
  scan->add_flag("--allow-large-grid", scfg.allow_large_grid, "permit grids above 10^6 points");
  scan->add_flag("--serial", sserial, "use the serial reference evaluator");
  scan->callback([&] {
    action = [&] {
      scfg.mode = co::parse_scan_mode(smode);
      run_scan_cmd(out, scfg, smeasures, sdir, sserial);
    };
  });

  // maximizer
  int xn = 0, xk = 0, xmaxq = 256;
  std::string xemit;
  auto* maxi = app.add_subcommand("maximizer", "Distribution attaining the Cohesion-k bound for n variables");
  maxi->add_option("n", xn, "variables")->required();
  maxi->add_option("k", xk, "interaction order")->required();
  maxi->add_option("--max-q", xmaxq, "largest field order tried")->capture_default_str();
  maxi->add_option("--emit", xemit, "write the distribution to this CSV instead of stdout");
  maxi->callback([&] { action = [&] { run_maximizer_cmd(out, xn, xk, xmaxq, xemit); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  out.config["command"] = app.get_subcommands().front()->get_name();
  out.config["threads"] = co::worker_count();
  try {
    if (action) action();
  } catch (const co::Error& e) {
    std::cerr << "error: " << co::to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
