#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "pgrass/io.hpp"

namespace {

using namespace pgrass;

struct SpaceArgs {
  std::string kind;
  int q = 0, p = 0, e = 0;
  int d = 0;
  int n_amb = -1;
};

void add_space_options(CLI::App* cmd, SpaceArgs& a, bool need_q = true) {
  cmd->add_option("--kind", a.kind,
                  "symplectic | hermitian | orthogonal_plus | orthogonal_minus | "
                  "orthogonal_odd")
      ->required();
  cmd->add_option("--d", a.d, "Witt index (polar rank)")->required();
  cmd->add_option("--n-amb", a.n_amb, "ambient dimension (defaults per kind)");
  auto* q = cmd->add_option("--q", a.q, "field size, a prime power <= 16");
  auto* p = cmd->add_option("--p", a.p, "field characteristic");
  auto* e = cmd->add_option("--e", a.e, "extension degree, q = p^e");
  p->needs(e);
  e->needs(p);
  q->excludes(p);
  if (need_q) {
    // exactly one of --q or --p/--e
    cmd->callback([&a, cmd]() {
      if (a.q == 0 && a.p == 0)
        throw CLI::ValidationError("--q or --p/--e is required for " + cmd->get_name());
    });
  }
}

void resolve_field(SpaceArgs& a) {
  if (a.q > 0) {
    int t = a.q;
    int p = 2;
    while (p <= t && t % p != 0) ++p;
    int e = 0;
    while (t % p == 0) {
      t /= p;
      ++e;
    }
    require(t == 1, ErrorCode::BadParameters,
            "q = " + std::to_string(a.q) + " is not a prime power");
    a.p = p;
    a.e = e;
  } else {
    a.q = 1;
    for (int k = 0; k < a.e; ++k) a.q *= a.p;
  }
}

PolarSpace make_space(SpaceArgs& a) {
  resolve_field(a);
  const Field& F = Field::get(a.p, a.e);
  return PolarSpace::standard(parse_kind(a.kind), F, a.d, a.n_amb);
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  require(bool(f), ErrorCode::BadParameters, "cannot open output file: " + path);
  f << content;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations in finite classical polar spaces"};
  app.require_subcommand(1);
  int workers = 1;
  app.add_option("--workers", workers, "reserved; the current implementation is serial")
      ->check(CLI::PositiveNumber);

  SpaceArgs sa;
  std::string out;
  int m = 0, t = 2;
  long long samples = 0;
  uint64_t seed = 20240915;
  int max_aut_vertices = 1000;
  bool symbolic = false, full = false, timings = false, audit = false;
  std::string graph_name;

  CLI::App* cmd_build = app.add_subcommand("build", "construct a space, verify axioms/facts");
  add_space_options(cmd_build, sa);
  cmd_build->add_option("--out", out, "output file (stdout by default)");

  CLI::App* cmd_rel = app.add_subcommand("relations", "classify all pairs of one level");
  add_space_options(cmd_rel, sa);
  cmd_rel->add_option("--m", m, "level (dimension of the subspaces)")->required();
  cmd_rel->add_option("--out", out, "output file for the table JSON");
  cmd_rel->add_flag("--audit", audit, "include the association-scheme audit");
  cmd_rel->add_option("--graph", graph_name, "also export gamma|gamma_prime|gamma_dprime|weak");
  std::string graph_out;
  cmd_rel->add_option("--graph-out", graph_out, "file for the graph export");
  cmd_rel->add_option("--t", t, "t for gamma_dprime (default 2)");

  CLI::App* cmd_val = app.add_subcommand("valency", "valency formulas vs. brute force");
  add_space_options(cmd_val, sa, false);
  cmd_val->add_option("--m", m, "level")->required();
  cmd_val->add_flag("--symbolic", symbolic, "emit polynomials instead of the CSV");
  cmd_val->add_option("--out", out, "output file");

  CLI::App* cmd_clq = app.add_subcommand("cliques", "clique classification of Gamma'/Gamma''");
  add_space_options(cmd_clq, sa);
  cmd_clq->add_option("--m", m, "level (defaults to d - t for gamma_dprime)");
  cmd_clq->add_option("--graph", graph_name, "gamma_prime (default) or gamma_dprime");
  cmd_clq->add_option("--t", t, "t for gamma_dprime (default 2)");
  cmd_clq->add_option("--samples", samples, "edges to sample for gamma_dprime (default 500)");
  cmd_clq->add_option("--seed", seed, "sampling seed");
  cmd_clq->add_flag("--full", full, "include the full clique list in the artifact");
  cmd_clq->add_option("--out", out, "output file");

  CLI::App* cmd_aut = app.add_subcommand("autgrp", "automorphism group vs. the induced group");
  add_space_options(cmd_aut, sa);
  cmd_aut->add_option("--m", m, "level")->required();
  cmd_aut->add_option("--graph", graph_name, "gamma_prime (default) or gamma_dprime");
  cmd_aut->add_option("--t", t, "t for gamma_dprime (default 2)");
  cmd_aut->add_option("--samples", samples, "isometries to sample (default 200)");
  cmd_aut->add_option("--seed", seed, "sampling seed");
  cmd_aut->add_option("--max-aut-vertices", max_aut_vertices,
                      "largest graph for the exact search");
  cmd_aut->add_flag("--timings", timings, "include runtime_ms in the artifact");
  cmd_aut->add_option("--out", out, "output file");

  CLI::App* cmd_all = app.add_subcommand("verify-all", "the full deterministic battery");
  add_space_options(cmd_all, sa);
  cmd_all->add_option("--seed", seed, "seed for the sampled sections");
  cmd_all->add_option("--samples", samples, "samples per sampled section (default 50)");
  cmd_all->add_option("--out", out, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_build->parsed()) {
      PolarSpace ps = make_space(sa);
      ordered_json j = build_report_json(ps);
      write_output(out, dump(j));
      return j["axioms"]["pass"].get<bool>() ? 0 : 1;
    }

    if (cmd_rel->parsed()) {
      PolarSpace ps = make_space(sa);
      RelationTable tbl = relation_table(ps, m);
      ordered_json j = table_json(tbl);
      bool ok = true;
      if (audit) {
        SchemeAuditReport sa_rep = scheme_audit(tbl);
        j["scheme_audit"] = scheme_json(sa_rep, tbl.m);
        ok = sa_rep.pass();
      }
      if (!graph_name.empty()) {
        Graph g = graph_by_name(tbl, graph_name, t);
        write_output(graph_out, graph_export(g));
      }
      write_output(out, dump(j));
      return ok ? 0 : 1;
    }

    if (cmd_val->parsed()) {
      if (symbolic) {
        resolve_field(sa);  // optional; symbolic output does not evaluate at q
        SpaceParams sp = SpaceParams::make(parse_kind(sa.kind), sa.d, sa.n_amb);
        write_output(out, dump(valency_symbolic_json(sp, m)));
        return 0;
      }
      require(sa.q > 0 || sa.p > 0, ErrorCode::BadParameters,
              "valency without --symbolic needs --q or --p/--e");
      PolarSpace ps = make_space(sa);
      RelationTable tbl = relation_table(ps, m);
      std::string csv = valency_csv(tbl);
      write_output(out, csv);
      return csv.find("false") == std::string::npos ? 0 : 1;
    }

    if (cmd_clq->parsed()) {
      PolarSpace ps = make_space(sa);
      if (graph_name.empty() || graph_name == "gamma_prime") {
        require(m > 0, ErrorCode::BadParameters, "--m is required for gamma_prime cliques");
        RelationTable tbl = relation_table(ps, m);
        GammaPrimeCliqueReport rep = verify_gamma_prime_cliques(tbl);
        write_output(out, dump(gamma_prime_cliques_json(ps, tbl, rep, full)));
        return rep.pass() ? 0 : 1;
      }
      require(graph_name == "gamma_dprime", ErrorCode::BadParameters,
              "cliques supports gamma_prime or gamma_dprime");
      if (m == 0) m = ps.d - t;
      require(m == ps.d - t, ErrorCode::LevelMismatch, "gamma_dprime needs m = d - t");
      if (samples == 0) samples = 500;
      RelationTable tbl = relation_table(ps, m);
      GammaDPrimeCliqueReport rep = verify_gamma_dprime_cliques(tbl, t, samples, seed);
      write_output(out, dump(gamma_dprime_cliques_json(ps, rep, t, samples, seed)));
      return rep.pass() ? 0 : 1;
    }

    if (cmd_aut->parsed()) {
      PolarSpace ps = make_space(sa);
      RelationTable tbl = relation_table(ps, m);
      TheoremCheckOptions to;
      to.samples = samples > 0 ? int(samples) : 200;
      to.seed = seed;
      to.aut.max_vertices = max_aut_vertices;
      to.t = t;
      std::string which = graph_name.empty() ? "gamma_prime" : graph_name;
      auto t0 = std::chrono::steady_clock::now();
      TheoremReport rep = theorem_check(tbl, which, to);
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      write_output(out, dump(theorem_json(rep, ps, timings, ms)));
      return rep.verdict != "mismatch" && rep.soundness_ok ? 0 : 1;
    }

    if (cmd_all->parsed()) {
      PolarSpace ps = make_space(sa);
      VerifyAllOptions vo;
      vo.seed = seed;
      if (samples > 0) vo.samples = int(samples);
      ordered_json j = verify_all_json(ps, vo);
      write_output(out, dump(j));
      return j["pass"].get<bool>() ? 0 : 1;
    }
  } catch (const pgrass::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 4;
  }
  return 2;
}
