// fatpoints: command-line front end for the reduction, speciality and
// containment toolkit.
//
// Exit codes: 0 computed (whatever the verdict), 1 usage or input error,
// 2 internal invariant violation.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "fatpoints/fatpoints.hpp"
#include "fatpoints/json_io.hpp"

namespace fp = fatpoints;

namespace {

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::uint64_t prime = 65537;
  unsigned threads = 1;
  std::size_t trials = 3;

  fp::oracle::OracleOptions oracle() const { return {prime, trials, seed}; }
};

void emit(const Globals& g, const std::string& command, const fp::json& payload) {
  if (g.json) std::cout << fp::envelope(command, payload).dump(2) << '\n';
}

// Ranges and a^b are accepted; the order of entries is kept.
std::vector<fp::Int> parse_positive_list(const std::string& text) {
  auto v = fp::parse_int_list(text);
  if (v.empty()) throw std::invalid_argument("empty list '" + text + "'");
  for (auto x : v)
    if (x <= 0) throw std::invalid_argument("entries must be positive in '" + text + "'");
  return v;
}

void print_verdict(const fp::SpecialityVerdict& v) {
  std::cout << "L(" << v.d << "; " << fp::format_compressed(v.mults.values()) << ")\n"
            << "route:      " << fp::to_string(v.route) << '\n'
            << "order:      (" << fp::format_list(v.order) << "), orders tried " << v.orders_tried << '\n'
            << "nonspecial: " << fp::to_string(v.nonspecial) << '\n'
            << "effective:  " << fp::to_string(v.effective) << '\n'
            << "h1_regular: " << fp::to_string(v.h1_regular) << '\n'
            << "detail:     " << v.detail << '\n';
  if (v.certificate) std::cout << '\n' << fp::render_trace(*v.certificate);
  if (v.failure) std::cout << "\nchain stopped at step " << v.failure->step_index << ": " << v.failure->failure.describe() << '\n';
}

int cmd_reduce(const Globals& g, const std::string& seq_text, const std::string& ms_text) {
  const fp::IntSequence seq = fp::parse_sequence(seq_text);
  const auto ms = parse_positive_list(ms_text);
  const auto outcome = fp::reduce_chain(seq, ms);
  if (const auto* cert = std::get_if<fp::ReductionCertificate>(&outcome)) {
    if (g.json) emit(g, "reduce", {{"ok", true}, {"certificate", fp::to_json(*cert)}});
    else std::cout << fp::render_trace(*cert);
    return 0;
  }
  const auto& fail = std::get<fp::ChainFailure>(outcome);
  if (g.json) {
    emit(g, "reduce", {{"ok", false}, {"failure", fp::to_json(fail)}});
    return 0;
  }
  if (!fail.completed.empty()) {
    fp::ReductionCertificate partial;
    partial.initial = seq;
    partial.steps = fail.completed;
    partial.final = fail.completed.back().output.stripped();
    partial.final_size = fp::size(partial.final);
    std::cout << fp::render_trace(partial);
  }
  std::cout << "step " << fail.step_index << " (m=" << fail.failure.m << ") failed: " << fail.failure.describe()
            << '\n';
  return 0;
}

int cmd_prove(const Globals& g, fp::Int d, const std::string& mults_text, const std::string& order) {
  const auto strategy = fp::parse_order_strategy(order);
  fp::SpecialityVerdict v;
  if (strategy.kind == fp::OrderStrategy::Kind::AsGiven) {
    const auto raw = parse_positive_list(mults_text);
    v = fp::prove_with_order(d, raw);
  } else {
    v = fp::prove_h1_regular(d, fp::parse_multiplicities(mults_text), strategy);
  }
  if (g.json) emit(g, "prove", fp::to_json(v));
  else print_verdict(v);
  return 0;
}

int cmd_criterion(const Globals& g, fp::Int d, const std::string& mults_text) {
  const auto mults = fp::parse_multiplicities(mults_text);
  fp::SpecialityVerdict v;
  if (mults.count() < 4) {
    v = fp::prove_h1_regular(d, mults);
    v.detail = "s < 4, criterion does not apply; chain prover used: " + v.detail;
  } else {
    v = fp::criterion_kryterium(d, mults);
  }
  if (g.json) {
    auto j = fp::to_json(v);
    if (mults.count() >= 4) j["reg_upper_bound"] = fp::reg_upper_bound(mults);
    emit(g, "criterion", j);
  } else {
    print_verdict(v);
    if (mults.count() >= 4) std::cout << "reg bound:  " << fp::reg_upper_bound(mults) << '\n';
  }
  return 0;
}

int cmd_containment(const Globals& g, const std::string& mults_text, bool explain, bool direct) {
  const auto mults = fp::parse_multiplicities(mults_text);
  const auto v = direct ? fp::check_zastosowanie(mults) : fp::theorem_b_dispatch(mults);
  if (g.json) {
    emit(g, "containment", fp::to_json(v));
    return 0;
  }
  std::cout << "I^(2r) in M^r I^r for " << fp::format_compressed(mults.values()) << '\n'
            << "verdict: " << (v.proven ? "proven" : "unknown") << '\n'
            << "route:   " << fp::to_string(v.route) << '\n';
  if (v.witness_d) std::cout << "witness: d = " << *v.witness_d << '\n';
  if (v.branch) std::cout << "branch:  " << fp::to_string(*v.branch) << '\n';
  std::cout << "notes:   " << v.diagnostics << '\n';
  if (explain) {
    std::cout << '\n';
    for (const auto& f : v.facts)
      std::cout << (f.holds ? "  [ok]   " : "  [fail] ") << f.name << (f.essential ? "" : " (aux)") << ": "
                << f.statement << '\n';
  }
  return 0;
}

int cmd_oracle_dim(const Globals& g, fp::Int d, const std::string& mults_text) {
  const auto r = fp::oracle::dim_system(d, fp::parse_multiplicities(mults_text), g.oracle());
  if (g.json) {
    emit(g, "oracle dim", fp::to_json(r));
    return 0;
  }
  std::cout << "L(" << d << "; " << fp::format_compressed(r.mults) << ") over F_" << r.options.prime << '\n'
            << "matrix " << r.rows << " x " << r.cols << ", rank " << r.max_rank << " (best of " << r.trials_run
            << " trial(s))\n"
            << "dim " << r.dim_observed << ", vdim " << r.vdim << ", edim " << r.edim << '\n'
            << "certificate: " << fp::oracle::to_string(r.certificate) << '\n';
  return 0;
}

int cmd_oracle_alpha(const Globals& g, const std::string& mults_text, fp::Int scale) {
  const auto r = fp::oracle::alpha_scan(fp::parse_multiplicities(mults_text), scale, g.oracle());
  if (g.json) {
    emit(g, "oracle alpha", fp::to_json(r));
    return 0;
  }
  std::cout << "points " << fp::format_compressed(r.scaled) << '\n'
            << "alpha >= " << r.alpha_lb << " (certified empty below)\n"
            << "alpha observed " << r.alpha_observed << (r.alpha_certified ? " (certified)" : "") << '\n';
  return 0;
}

int cmd_oracle_containment(const Globals& g, const std::string& mults_text, fp::Int r, fp::Int t_max) {
  const auto mults = fp::parse_multiplicities(mults_text);
  if (t_max < 0) t_max = std::min(fp::oracle::default_t_max(mults, r), fp::oracle::kMaxContainmentDegree);
  const auto rep = fp::oracle::truncated_containment_check(mults, r, t_max, g.oracle());
  if (g.json) {
    emit(g, "oracle containment", fp::to_json(rep));
    return 0;
  }
  std::cout << "t\tdim I^(2r)_t\tdim (M^r I^r)_t\tcontained\n";
  for (const auto& c : rep.degrees)
    std::cout << c.t << '\t' << c.dim_symbolic << '\t' << c.dim_target << '\t' << (c.contained ? "yes" : "no") << '\n';
  std::cout << "holds up to degree " << rep.t_max << ": " << (rep.holds() ? "yes" : "no") << '\n';
  return 0;
}

int cmd_scan(const Globals& g, const std::string& family, fp::Int max_cells) {
  const auto rep = fp::search::scan_zastosowanie_failures(fp::search::parse_family(family), max_cells, g.threads);
  if (g.json) {
    emit(g, "scan", fp::to_json(rep));
    return 0;
  }
  std::cout << "sequence\ts\tverdict\n";
  for (const auto& f : rep.failures) std::cout << f.str() << '\t' << f.p + f.q << "\tno witness\n";
  std::cerr << rep.cells << " sequences checked, " << rep.failures.size() << " without witness\n";
  return 0;
}

void print_grid(const fp::search::GridReport& rep, bool all) {
  std::cout << "lemma\tparams\tpass\tvalue\n";
  for (const auto& c : rep.cells)
    if (all || !c.pass) std::cout << c.lemma << '\t' << c.params << '\t' << (c.pass ? "pass" : "FAIL") << '\t' << c.value << '\n';
  std::cout << rep.cells.size() << " cells, " << rep.failures() << " failures\n";
}

int cmd_verify_lemma(const Globals& g, const std::string& name, const std::string& grid_text, bool all) {
  using namespace fp::search;
  const auto grid = grid_text.empty() ? std::map<std::string, Range>{} : parse_grid(grid_text);
  auto get = [&](const char* key, Range fallback) { return grid.count(key) ? grid.at(key) : fallback; };
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : grid) {
      bool ok = false;
      for (const char* key : keys) ok = ok || k == key;
      if (!ok) throw std::invalid_argument("unknown grid key '" + k + "' for " + name);
    }
  };
  GridReport rep;
  if (name == "drugie") {
    allow({"m0", "s"});
    rep = verify_drugie(get("m0", {2, 6}), get("s", {8, 36}), grid_text.empty());
  } else if (name == "hopefullylast") {
    allow({"m", "s", "part"});
    const auto part = get("part", {1, 1}).lo == 0 ? fp::HopefullyPart::A : fp::HopefullyPart::B;
    rep = verify_hopefullylast(get("m", {2, 3}), get("s", {8, 21}), part);
  } else if (name == "nowa2") {
    allow({"x", "s"});
    rep = verify_nowa2(get("x", {4, 33}), get("s", {9, 16}));
  } else if (name == "comb1") {
    allow({"m1", "s"});
    rep = verify_comb1(get("m1", {4, 12}), get("s", {9, 14}));
  } else {
    throw std::invalid_argument("unknown lemma '" + name + "' (drugie, hopefullylast, comb1, nowa2)");
  }
  if (g.json) emit(g, "verify-lemma", fp::to_json(rep));
  else print_grid(rep, all);
  return 0;
}

int cmd_selftest(const Globals& g, bool all) {
  const auto rep = fp::search::verify_finite_cases();
  if (g.json) {
    emit(g, "selftest", fp::to_json(rep));
    return 0;
  }
  std::map<std::string, std::pair<std::size_t, std::size_t>> per;
  for (const auto& c : rep.cells) {
    ++per[c.lemma].first;
    if (!c.pass) ++per[c.lemma].second;
  }
  for (const auto& [lemma, counts] : per)
    std::cout << lemma << ": " << counts.first << " cells, " << counts.second << " failures\n";
  if (all || !rep.all_pass()) print_grid(rep, all);
  std::cout << (rep.all_pass() ? "all finite cases pass" : "FINITE CASE FAILURES") << '\n';
  return 0;
}

int cmd_crosscheck(const Globals& g, const fp::search::CrosscheckLimits& lim) {
  const auto rep = fp::search::crosscheck_reduction_vs_oracle(lim, g.oracle(), g.threads);
  if (g.json) {
    emit(g, "crosscheck", fp::to_json(rep));
    return 0;
  }
  std::cout << "cells " << rep.cells << ", chain proofs " << rep.chain_proofs << ", criterion proofs "
            << rep.criterion_proofs << ", oracle checks " << rep.oracle_checks << ", violations "
            << rep.violations.size() << '\n';
  for (const auto& v : rep.violations)
    std::cout << "VIOLATION d=" << v.d << " mults=" << fp::format_compressed(v.mults) << " prover=" << v.prover
              << " dim=" << v.dim_observed << " edim=" << v.edim << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction certificates, speciality and containment criteria for planar fat points"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_flag("--json", g.json, "Machine-readable JSON output");
  app.add_option("--seed", g.seed, "Oracle seed")->envname("FATPOINTS_SEED");
  app.add_option("--prime", g.prime, "Oracle prime (< 2^32)")->envname("FATPOINTS_PRIME");
  app.add_option("--threads", g.threads, "Worker threads for scan and crosscheck")->check(CLI::PositiveNumber);
  app.add_option("--trials", g.trials, "Random configurations per oracle rank")->check(CLI::PositiveNumber);

  std::function<int()> run;

  auto* reduce = app.add_subcommand("reduce", "Chain of m-reductions with a trace table");
  std::string seq_text, ms_text;
  reduce->add_option("--seq", seq_text, "Start sequence, e.g. 1..10")->required();
  reduce->add_option("--ms", ms_text, "Reduction parameters, e.g. 4,4,4,3,3,3,3")->required();
  reduce->callback([&] { run = [&] { return cmd_reduce(g, seq_text, ms_text); }; });

  fp::Int d = 0;
  std::string mults_text, order = "descending";
  auto* prove = app.add_subcommand("prove", "Chain prover for h1-regularity of L(d; m)");
  prove->add_option("--d", d, "Degree")->required();
  prove->add_option("--mults", mults_text, "Multiplicities, e.g. 4^3,3^4")->required();
  prove->add_option("--order", order, "as-given | descending | kryterium | backtrack[=N]");
  prove->callback([&] { run = [&] { return cmd_prove(g, d, mults_text, order); }; });

  auto* criterion = app.add_subcommand("criterion", "Closed-form speciality criterion");
  criterion->add_option("--d", d, "Degree")->required();
  criterion->add_option("--mults", mults_text, "Multiplicities")->required();
  criterion->callback([&] { run = [&] { return cmd_criterion(g, d, mults_text); }; });

  bool explain = false, direct = false;
  auto* containment = app.add_subcommand("containment", "Decide I^(2r) in M^r I^r for all r");
  containment->add_option("--mults", mults_text, "Multiplicities")->required();
  containment->add_flag("--explain", explain, "Print every checked comparison");
  containment->add_flag("--direct", direct, "Only the direct numerical criterion (needs >= 9 points)");
  containment->callback([&] { run = [&] { return cmd_containment(g, mults_text, explain, direct); }; });

  auto* oracle = app.add_subcommand("oracle", "Finite-field interpolation oracle");
  oracle->require_subcommand(1);
  fp::Int scale = 1, r = 1, t_max = -1;
  auto* odim = oracle->add_subcommand("dim", "Dimension of L(d; m) at random points");
  odim->add_option("--d", d, "Degree")->required();
  odim->add_option("--mults", mults_text, "Multiplicities")->required();
  odim->callback([&] { run = [&] { return cmd_oracle_dim(g, d, mults_text); }; });
  auto* oalpha = oracle->add_subcommand("alpha", "Initial degree of the scaled fat points ideal");
  oalpha->add_option("--mults", mults_text, "Multiplicities")->required();
  oalpha->add_option("--scale", scale, "Scale factor for the multiplicities");
  oalpha->callback([&] { run = [&] { return cmd_oracle_alpha(g, mults_text, scale); }; });
  auto* ocont = oracle->add_subcommand("containment", "Degree-truncated containment check");
  ocont->add_option("--mults", mults_text, "Multiplicities")->required();
  ocont->add_option("--r", r, "Power r");
  ocont->add_option("--tmax", t_max, "Largest degree compared (default r*(reg bound+1), capped)");
  ocont->callback([&] { run = [&] { return cmd_oracle_containment(g, mults_text, r, t_max); }; });

  std::string family;
  fp::Int max_cells = fp::search::kDefaultMaxCells;
  auto* scan = app.add_subcommand("scan", "Two-level families with no direct-criterion witness (TSV)");
  scan->add_option("--family", family, "a=lo..hi,p=lo..hi,b=lo..hi,q=lo..hi[,n=max]")->required();
  scan->add_option("--max-cells", max_cells, "Cap on the family size");
  scan->callback([&] { run = [&] { return cmd_scan(g, family, max_cells); }; });

  std::string lemma, grid_text;
  bool all_cells = false;
  auto* verify = app.add_subcommand("verify-lemma", "Evaluate a lemma's inequality over a grid");
  verify->add_option("--name", lemma, "drugie | hopefullylast | comb1 | nowa2")->required();
  verify->add_option("--grid", grid_text, "key=lo..hi,... (defaults to the finite-case grid)");
  verify->add_flag("--all", all_cells, "List passing cells too");
  verify->callback([&] { run = [&] { return cmd_verify_lemma(g, lemma, grid_text, all_cells); }; });

  bool finite_cases = false;
  auto* selftest = app.add_subcommand("selftest", "Re-check the finite cases left to computation");
  selftest->add_flag("--finite-cases", finite_cases, "Run the finite-case grids (default)");
  selftest->add_flag("--all", all_cells, "List every cell");
  selftest->callback([&] { run = [&] { return cmd_selftest(g, all_cells); }; });

  fp::search::CrosscheckLimits lim;
  auto* cross = app.add_subcommand("crosscheck", "Audit prover claims against the oracle");
  cross->add_option("--dmax", lim.d_max, "Largest degree")->check(CLI::NonNegativeNumber);
  cross->add_option("--smax", lim.s_max, "Largest number of points")->check(CLI::PositiveNumber);
  cross->add_option("--mmax", lim.m_max, "Largest multiplicity")->check(CLI::PositiveNumber);
  cross->callback([&] { run = [&] { return cmd_crosscheck(g, lim); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    fp::oracle::PrimeField check(g.prime);
    (void)check;
    return run();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
