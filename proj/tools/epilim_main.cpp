// epilim: conjugates, epi-limits, integral-functional checks and the
// verification scenarios behind one command-line entry point.
//
// Exit codes: 0 pass, 1 check failure, 2 input/config error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "epilim/builtins.hpp"
#include "epilim/config.hpp"
#include "epilim/delta_plus.hpp"
#include "epilim/epilimit.hpp"
#include "epilim/generators.hpp"
#include "epilim/json_io.hpp"
#include "epilim/legendre.hpp"
#include "epilim/measure.hpp"
#include "epilim/scenarios.hpp"
#include "epilim/subdiff.hpp"

namespace {

using nlohmann::json;
using namespace epilim;

Tail tail_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return Tail::constant(j.value("n0", 0));
  if (kind == "periodic") return Tail::periodic(j.value("n0", 0), j.at("period").get<std::int64_t>());
  if (kind == "truncated") return Tail::truncated(j.at("horizon").get<std::int64_t>());
  throw std::invalid_argument("tail kind must be constant|periodic|truncated");
}

AtomSequence atom_sequence_from_json(const json& j, std::size_t atoms) {
  std::vector<std::vector<double>> values;
  for (const auto& row : j.at("values")) values.push_back(row.get<std::vector<double>>());
  for (const auto& v : values)
    if (v.size() != atoms) throw std::invalid_argument("sequence row size mismatch");
  return AtomSequence::materialized(std::move(values), tail_from_json(j.at("tail")));
}

// Integrand given as per-atom value tables over a grid.
Integrand integrand_from_json(const json& j) {
  const Grid g = grid_from_json(j.at("grid"));
  std::vector<std::vector<ExtReal>> tables;
  for (const auto& row : j.at("tables")) {
    std::vector<ExtReal> t;
    for (const auto& v : row) t.push_back(extreal_from_json(v));
    if (std::int64_t(t.size()) != g.size()) throw std::invalid_argument("table size mismatch");
    tables.push_back(std::move(t));
  }
  Integrand f;
  f.dim = 1;
  f.grid = g;
  f.convex_in_e = j.value("convex_in_e", false);
  f.nonnegative = j.value("nonnegative", false);
  f.young = j.value("young", false);
  f.eval = [tables = std::move(tables), g](std::size_t atom, Point e) -> ExtReal {
    const std::size_t a = std::min(atom, tables.size() - 1);
    return tables[a][std::size_t(g.index_of(Point{e[0], 0.0}))];
  };
  return f;
}

Integrand builtin_integrand(const std::string& name, const Grid& g) {
  if (name == "quadratic") return builtins::quadratic_integrand(g);
  if (name == "half-quadratic") return builtins::half_quadratic_integrand(g);
  if (name == "abs") return builtins::abs_integrand(g);
  if (name == "neg-sqrt") return builtins::neg_sqrt_integrand(g);
  throw std::invalid_argument("unknown builtin integrand '" + name + "' (quadratic|half-quadratic|abs|neg-sqrt)");
}

json epilimit_report_to_json(const EpiLimitReport& r) {
  json out;
  out["label"] = r.label;
  out["exact"] = r.exact;
  out["function"] = to_json(r.function);
  json div = json::array();
  for (auto b : r.diverging) div.push_back(bool(b));
  out["diverging"] = std::move(div);
  if (!r.exact) {
    json br = json::array();
    for (const auto& b : r.bracket) br.push_back({to_json(b[0]), to_json(b[1])});
    out["bracket"] = std::move(br);
  }
  return out;
}

json certificate_to_json(const Certificate& c) {
  json out;
  out["verdict"] = c.verdict == Verdict::certified ? "certified"
                   : c.verdict == Verdict::refuted ? "refuted"
                                                   : "inconclusive";
  out["detail"] = c.detail;
  out["approximate"] = c.approximate;
  if (!c.resolution.empty()) out["resolution"] = c.resolution;
  json trace = json::array();
  for (const auto& [r, v] : c.trace) trace.push_back({{"r", r}, {"value", v}});
  out["trace"] = std::move(trace);
  if (c.witness) {
    json w;
    w["n"] = c.witness->n;
    w["r"] = c.witness->r;
    w["atom"] = c.witness->atom;
    w["direction"] = c.witness->direction;
    w["value"] = c.witness->value;
    if (!c.witness->set.empty()) w["set"] = c.witness->set;
    if (!c.witness->x.values.empty()) w["x"] = to_json(c.witness->x);
    out["witness"] = std::move(w);
  }
  return out;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    save_json_file(out_path, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale conjugacy, epi-limit and integral-functional checks"};
  app.require_subcommand(1);

  std::string in_path, out_path, family = "constant", mode = "lower", variant = "frechet";
  std::string scenario = "all", profile = "quick", space_path, x0_path, xstar_path, f_spec = "quadratic";
  double dual_min = -1, dual_max = 1, p = 1.0;
  std::int64_t dual_n = 3, horizon = 2000;
  bool fast = false, bruteforce = false, timings = false;
  std::uint64_t seed = 1;
  int threads = 0, depth = 0;
  std::vector<double> radii;

  auto* conj = app.add_subcommand("conj", "Fenchel conjugate of a grid function");
  conj->add_option("--in", in_path, "grid function JSON")->required();
  conj->add_option("--dual-min", dual_min)->required();
  conj->add_option("--dual-max", dual_max)->required();
  conj->add_option("--dual-n", dual_n)->required();
  conj->add_flag("--fast", fast, "linear-time transform (1-D)");
  conj->add_option("--out", out_path);

  auto* envelope = app.add_subcommand("envelope", "convex envelope (biconjugate)");
  envelope->add_option("--in", in_path)->required();
  envelope->add_option("--out", out_path);

  auto* epi = app.add_subcommand("epi", "epi-limit of a builtin or file-backed family");
  epi->add_option("--family", family, "constant|alternating-shift|steep-quadratic|shifted-vee|file.json");
  epi->add_option("--mode", mode, "lower|upper|seq");
  epi->add_option("--radii", radii, "descending grid-commensurate radii");
  epi->add_option("--horizon", horizon);
  epi->add_option("--out", out_path);

  auto* dplus = app.add_subcommand("delta-plus", "equi-integrability index of a value sequence");
  dplus->add_option("--in", in_path, "{space, sequence{values,tail}, ladder?}")->required();
  dplus->add_flag("--bruteforce", bruteforce, "exhaustive oracle (small instances)");
  dplus->add_option("--out", out_path);

  auto* ui = app.add_subcommand("ui-test", "uniform integrability of a family");
  ui->add_option("--in", in_path, "{space, family:[...], p?}")->required();
  ui->add_option("--out", out_path);

  auto* dlvp = app.add_subcommand("dlvp", "superlinear certificate for a uniformly integrable family");
  dlvp->add_option("--in", in_path, "{space, family:[...]}")->required();
  dlvp->add_option("--out", out_path);

  auto* inter = app.add_subcommand("interchange", "conjugate-interchange identity check");
  inter->add_option("--in", in_path, "{space, xstar, f{grid,tables}}")->required();
  inter->add_option("--out", out_path);

  auto* subdiff_cmd = app.add_subcommand("subdiff", "subdifferential certificates");
  subdiff_cmd->add_option("--f", f_spec, "builtin name or integrand file");
  subdiff_cmd->add_option("--x0", x0_path, "simple function JSON (default 0)");
  subdiff_cmd->add_option("--xstar", xstar_path, "simple function JSON (default 0)");
  subdiff_cmd->add_option("--p", p);
  subdiff_cmd->add_option("--variant", variant, "frechet|growth|mr|wh|sp|sinfty");
  subdiff_cmd->add_option("--space", space_path, "measure space JSON (default 4 uniform atoms)");
  subdiff_cmd->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "run verification scenarios");
  verify->add_option("scenario", scenario, "scenario name or 'all'");
  verify->add_option("--seed", seed);
  verify->add_option("--profile", profile, "quick|full");
  verify->add_option("--json", out_path, "write the report JSON here");
  verify->add_option("--threads", threads, "0 = hardware concurrency, 1 = serial");
  verify->add_option("--depth", depth, "refinement depth override (envelope-gap)");
  verify->add_flag("--timings", timings, "include wall-clock timings (nondeterministic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (conj->parsed()) {
      const GridFunction f = grid_function_from_json(load_json_file(in_path));
      const DualGrid dual(dual_min, dual_max, dual_n);
      const ConjugateResult r = fast ? conjugate_fast_1d(f, dual) : conjugate_bruteforce(f, dual);
      emit(to_json(r), out_path);
      return 0;
    }
    if (envelope->parsed()) {
      const GridFunction f = grid_function_from_json(load_json_file(in_path));
      emit(to_json(biconjugate(f)), out_path);
      return 0;
    }
    if (epi->parsed()) {
      FunctionSequence seq;
      if (family.size() > 5 && family.substr(family.size() - 5) == ".json") {
        // file-backed family: {"grid":..., "frames":[values...], "tail":...}
        const json j = load_json_file(family);
        const Grid g = grid_from_json(j.at("grid"));
        std::vector<GridFunction> frames;
        for (const auto& row : j.at("frames")) {
          std::vector<ExtReal> vals;
          for (const auto& v : row) vals.push_back(extreal_from_json(v));
          frames.emplace_back(g, std::move(vals));
        }
        seq.grid = g;
        seq.tail = tail_from_json(j.at("tail"));
        seq.provider = [frames, tail = seq.tail](std::int64_t n) {
          n = std::max<std::int64_t>(n, 0);
          const std::int64_t len = std::int64_t(frames.size());
          if (n >= len && tail.kind == TailKind::eventually_periodic)
            n = tail.n0 + (n - tail.n0) % tail.period;
          return frames[std::size_t(std::min(n, len - 1))];
        };
      } else {
        const Grid g = Grid::symmetric(2.0, 401);
        seq = builtins::family_by_name(family, g, horizon);
      }
      if (radii.empty()) radii = default_radii(seq.grid);
      EpiLimitReport rep = mode == "upper"  ? upper_epilimit(seq, radii)
                           : mode == "seq" ? seq_lower_epilimit(seq, radii)
                                           : lower_epilimit(seq, radii);
      emit(epilimit_report_to_json(rep), out_path);
      return 0;
    }
    if (dplus->parsed()) {
      const json j = load_json_file(in_path);
      const MeasureSpace sp = measure_space_from_json(j.at("space"));
      const AtomSequence u = atom_sequence_from_json(j.at("sequence"), sp.size());
      DeltaPlusReport rep;
      if (bruteforce)
        rep = delta_plus_bruteforce(u, sp, j.value("max_depth", 4));
      else
        rep = delta_plus_greedy(u, sp, j.value("ladder", std::vector<double>{}));
      json out{{"pass", !rep.diverging},
               {"value", rep.diverging ? json("inf") : json(rep.value)},
               {"exact", rep.exact},
               {"diverging", rep.diverging}};
      json trace = json::array();
      for (const auto& [eps, v] : rep.trace) trace.push_back({{"eps", eps}, {"value", v}});
      out["trace"] = std::move(trace);
      out["witness"] = {{"n", rep.witness_n}, {"set", rep.witness_set}};
      emit(out, out_path);
      return 0;
    }
    if (ui->parsed() || dlvp->parsed()) {
      const json j = load_json_file(in_path);
      const MeasureSpace sp = measure_space_from_json(j.at("space"));
      std::vector<SimpleFunction> fam;
      for (const auto& x : j.at("family")) fam.push_back(simple_function_from_json(x));
      if (ui->parsed()) {
        const UiReport r = uniform_integrability_test(fam, sp, j.value("p", 1.0));
        json out{{"pass", r.ui},       {"bounded", r.bounded},
                 {"equi", r.equi},     {"equi_small_sets", r.equi_small_sets},
                 {"equi_escape", r.equi_escape}, {"norm_bound", r.norm_bound},
                 {"small_set_modulus", r.small_set_modulus}, {"escape_modulus", r.escape_modulus}};
        if (!r.equi)
          out["witness"] = {{"member", r.witness_member}, {"set", r.witness_set}, {"value", r.witness_value}};
        emit(out, out_path);
        return r.ui ? 0 : 1;
      }
      const YoungCertificate c = young_from_ui(fam, sp);
      json out{{"pass", c.ok}, {"sup_integral", c.sup_integral}, {"message", c.message}};
      if (c.ok) out["psi"] = {{"knots", c.psi.knots}, {"slopes", c.psi.slopes}};
      if (!c.ui.equi)
        out["witness"] = {{"member", c.ui.witness_member}, {"set", c.ui.witness_set}, {"value", c.ui.witness_value}};
      emit(out, out_path);
      return c.ok ? 0 : 1;
    }
    if (inter->parsed()) {
      const json j = load_json_file(in_path);
      const MeasureSpace sp = measure_space_from_json(j.at("space"));
      const SimpleFunction xs = simple_function_from_json(j.at("xstar"));
      const Integrand f = integrand_from_json(j.at("f"));
      const InterchangeReport r = conjugate_interchange_check(f, xs, sp, j.value("tolerance", 1e-9));
      json out{{"pass", r.ok && r.pass}, {"lhs", r.lhs},       {"rhs", r.rhs},
               {"gap", r.gap},           {"tolerance", r.tolerance}, {"message", r.message}};
      emit(out, out_path);
      return (r.ok && r.pass) ? 0 : 1;
    }
    if (subdiff_cmd->parsed()) {
      const MeasureSpace sp = space_path.empty()
                                  ? MeasureSpace::finite({0.25, 0.25, 0.25, 0.25})
                                  : measure_space_from_json(load_json_file(space_path));
      const Grid g = Grid::symmetric(8.0, 129);
      Integrand f;
      if (f_spec.size() > 5 && f_spec.substr(f_spec.size() - 5) == ".json")
        f = integrand_from_json(load_json_file(f_spec));
      else
        f = builtin_integrand(f_spec, g);
      const SimpleFunction x0 = x0_path.empty() ? SimpleFunction::constant(sp.size(), 0.0)
                                                : simple_function_from_json(load_json_file(x0_path));
      const SimpleFunction xs = xstar_path.empty()
                                    ? SimpleFunction::constant(sp.size(), 0.0)
                                    : simple_function_from_json(load_json_file(xstar_path));
      Certificate cert;
      if (variant == "frechet")
        cert = frechet_certificate(f, x0, xs, p, {1.0}, default_r_ladder(), sp);
      else if (variant == "growth") {
        GrowthCondition cond;
        cond.kind = GrowthCondition::Kind::lp;
        cond.p = p;
        cert = growth_certificate(f, x0, xs, cond, default_r_ladder(), sp);
      } else if (variant == "mr")
        cert = global_lower_bound_checks(f, x0, xs, GlobalBoundVariant::moreau_rockafellar, {}, sp);
      else if (variant == "wh")
        cert = global_lower_bound_checks(f, x0, xs, GlobalBoundVariant::weak_hadamard, {}, sp);
      else if (variant == "sp") {
        GlobalBoundParams prm;
        prm.p = p;
        prm.c = 1.0;
        prm.a = g.spacing(0);
        cert = global_lower_bound_checks(f, x0, xs, GlobalBoundVariant::s_p, prm, sp);
      } else if (variant == "sinfty")
        cert = global_lower_bound_checks(f, x0, xs, GlobalBoundVariant::s_infty, {}, sp);
      else
        throw std::invalid_argument("unknown variant '" + variant + "'");
      emit(certificate_to_json(cert), out_path);
      return cert.refuted() ? 1 : 0;
    }
    if (verify->parsed()) {
      const Profile prof = profile_from_string(profile);
      const auto t0 = std::chrono::steady_clock::now();
      json out;
      bool pass = false;
      if (scenario == "all") {
        const SuiteResult suite = run_all(seed, prof, threads);
        out = suite_to_json(suite, seed, prof);
        pass = suite.pass();
        for (const auto& r : suite.reports)
          for (const auto& c : r.checks)
            std::printf("[%s] %s/%s  gap %.3g (tol %.3g)\n", c.pass ? "PASS" : "FAIL",
                        r.scenario.c_str(), c.name.c_str(), c.gap, c.tolerance);
      } else {
        const ScenarioReport rep =
            depth > 0 && scenario == "envelope-gap"
                ? scenario_envelope_gap(depth, prof == Profile::quick ? 40 : 100)
                : run_scenario(scenario, seed, prof);
        out = report_to_json(rep);
        pass = rep.pass();
        for (const auto& c : rep.checks)
          std::printf("[%s] %s/%s  gap %.3g (tol %.3g)\n", c.pass ? "PASS" : "FAIL",
                      rep.scenario.c_str(), c.name.c_str(), c.gap, c.tolerance);
      }
      if (timings) {
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        out["wall_ms"] = ms;
        std::fprintf(stderr, "wall %lld ms\n", static_cast<long long>(ms));
      }
      if (!out_path.empty()) save_json_file(out_path, out);
      std::printf("%s\n", pass ? "PASS" : "FAIL");
      return pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
