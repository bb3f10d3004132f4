#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "pgrass/autgrp.hpp"
#include "pgrass/base.hpp"
#include "pgrass/cliques.hpp"
#include "pgrass/polar.hpp"
#include "pgrass/relations.hpp"
#include "pgrass/valency.hpp"

namespace pgrass {

using ordered_json = nlohmann::ordered_json;

inline ordered_json space_json(const PolarSpace& ps) {
  ordered_json j;
  j["kind"] = kind_name(ps.kind);
  j["q"] = ps.field().q;
  j["p"] = ps.field().p;
  j["e"] = ps.field().e;
  j["d"] = ps.d;
  j["n_amb"] = ps.n_amb;
  return j;
}

inline ordered_json axioms_json(const AxiomFactReport& r) {
  ordered_json j;
  j["p1"] = r.p1;
  j["p2"] = r.p2;
  j["p3"] = r.p3;
  j["p4"] = r.p4;
  j["fact1"] = r.fact1;
  j["fact1_direction"] = r.fact1_direction;
  j["fact2"] = r.fact2;
  j["fact3"] = r.fact3;
  j["lines_checked"] = r.lines_checked;
  j["pass"] = r.all_pass();
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  return j;
}

inline ordered_json basis_json(const Subspace& S) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < S.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < S.ambient; ++c) row.push_back(int(S.basis.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline ordered_json poly_json(const HalfExpLaurent& p) {
  // sorted (exponent, coefficient) pairs; exponents are powers of x, x^2 = q
  ordered_json terms = ordered_json::array();
  for (auto& [e, k] : p.terms()) terms.push_back(ordered_json::array({e, k}));
  return terms;
}

// ---------------------------------------------------------------------------
// Per-subcommand artifacts.
// ---------------------------------------------------------------------------

inline ordered_json build_report_json(const PolarSpace& ps) {
  ordered_json j;
  j["space"] = space_json(ps);
  j["axioms"] = axioms_json(verify_axioms_and_facts(ps));
  ordered_json levels = ordered_json::array();
  SpaceParams sp = ps.params();
  for (int m = 1; m <= ps.d; ++m) {
    ordered_json lj;
    lj["m"] = m;
    lj["count"] = ps.level_count(m);
    lj["formula"] = level_count_poly(sp, m).eval_at_q(ps.field().q);
    lj["match"] = lj["count"] == lj["formula"];
    levels.push_back(lj);
  }
  j["levels"] = levels;
  return j;
}

inline ordered_json table_json(const RelationTable& tbl) {
  ordered_json j;
  j["space"] = space_json(*tbl.ps);
  j["m"] = tbl.m;
  j["vertices"] = tbl.V;
  ordered_json vals = ordered_json::array();
  for (size_t k = 0; k < tbl.labels.size(); ++k) {
    ordered_json v;
    v["i"] = tbl.labels[k].i;
    v["j"] = tbl.labels[k].j;
    v["count"] = tbl.valency[k];
    vals.push_back(v);
  }
  j["valencies"] = vals;
  return j;
}

// CSV with one row per label (i, j), formula evaluated at q against the
// brute-force valency from the relation table.
inline std::string valency_csv(const RelationTable& tbl) {
  const PolarSpace& ps = *tbl.ps;
  SpaceParams sp = ps.params();
  std::string out = "i,j,formula_value_at_q,brute_force_value,match\n";
  for (int j = 0; j <= tbl.m; ++j)
    for (int i = 0; i <= j; ++i) {
      long long formula = stanton_valency(sp, tbl.m, i, j).eval_at_q(ps.field().q);
      long long brute = (i == 0 && j == 0) ? 1 : tbl.valency_of(RelationLabel{i, j});
      out += std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(formula) +
             "," + std::to_string(brute) + "," + (formula == brute ? "true" : "false") + "\n";
    }
  return out;
}

inline ordered_json valency_symbolic_json(const SpaceParams& sp, int m) {
  ordered_json j;
  j["kind"] = kind_name(sp.kind);
  j["n_amb"] = sp.n_amb;
  j["d"] = sp.d;
  j["mu2"] = sp.mu2();
  j["nu2"] = sp.nu2();
  j["m"] = m;
  j["exponent_convention"] = "powers of x with x^2 = q";
  ordered_json polys = ordered_json::array();
  for (int jj = 0; jj <= m; ++jj)
    for (int ii = 0; ii <= jj; ++ii) {
      ordered_json p;
      p["i"] = ii;
      p["j"] = jj;
      p["feasible"] = label_feasible(sp, m, ii, jj);
      p["terms"] = poly_json(stanton_valency(sp, m, ii, jj));
      polys.push_back(p);
    }
  j["polynomials"] = polys;
  j["level_count_terms"] = poly_json(level_count_poly(sp, m));
  DistinctnessReport dr = distinctness_check(sp, m);
  j["distinct"] = dr.distinct;
  ordered_json zl = ordered_json::array();
  for (auto& [zi, zj] : dr.zero_labels) zl.push_back(ordered_json::array({zi, zj}));
  j["zero_labels"] = zl;
  return j;
}

// Plain-text graph export: header "p edge V E", then one sorted "u v" line
// per edge, vertices 0-based.
inline std::string graph_export(const Graph& g) {
  std::string out = "p edge " + std::to_string(g.V) + " " + std::to_string(g.E) + "\n";
  for (auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

inline Graph graph_by_name(const RelationTable& tbl, const std::string& name, int t) {
  if (name == "gamma") return gamma_graph(tbl);
  if (name == "gamma_prime") return gamma_prime_graph(tbl);
  if (name == "gamma_dprime") return gamma_dprime_graph(tbl, t);
  if (name == "weak") return weak_graph(tbl);
  fail(ErrorCode::BadParameters, "unknown graph name: " + name);
}

inline ordered_json scheme_json(const SchemeAuditReport& r, int m) {
  ordered_json j;
  j["pass"] = r.pass();
  j["identity_ok"] = r.identity_ok;
  j["symmetry_ok"] = r.symmetry_ok;
  j["constant_ok"] = r.constant_ok;
  j["num_classes"] = r.num_classes;
  if (!r.witness.empty()) j["witness"] = r.witness;
  ordered_json pn = ordered_json::array();
  auto decode = [m](int code) { return ordered_json::array({code / (m + 1), code % (m + 1)}); };
  for (auto& [key, v] : r.p_numbers) {
    auto [L, L1, L2] = key;
    ordered_json e;
    e["L"] = decode(L);
    e["L1"] = decode(L1);
    e["L2"] = decode(L2);
    e["value"] = v;
    pn.push_back(e);
  }
  j["p_numbers"] = pn;
  return j;
}

inline ordered_json gamma_prime_cliques_json(const PolarSpace& ps, const RelationTable& tbl,
                                             const GammaPrimeCliqueReport& rep,
                                             bool include_cliques) {
  ordered_json j;
  j["space"] = space_json(ps);
  j["m"] = tbl.m;
  j["graph"] = "gamma_prime";
  j["pass"] = rep.pass();
  j["num_maximal_cliques"] = rep.num_maximal_cliques;
  j["cliques_in_big_star"] = rep.cliques_in_big_star;
  j["residue_adjacency_ok"] = rep.residue_adjacency_ok;
  j["tops_independent"] = rep.tops_independent;
  ordered_json tags;
  for (auto& [tag, n] : rep.tag_counts) tags[tag] = n;
  j["tag_counts"] = tags;
  if (!rep.witness.empty()) j["witness"] = rep.witness;
  if (include_cliques) {
    Graph g = gamma_prime_graph(tbl);
    auto cliques = maximal_cliques(g);
    ordered_json list = ordered_json::array();
    for (const auto& c : cliques) {
      CliqueClass cc = classify_clique(ps, tbl.m, c);
      ordered_json e;
      e["vertices"] = c;
      e["tag"] = cc.str();
      ordered_json w;
      w["N"] = basis_json(cc.N);
      w["M"] = basis_json(cc.M);
      e["witness"] = w;
      list.push_back(e);
    }
    j["cliques"] = list;
  }
  return j;
}

inline ordered_json gamma_dprime_cliques_json(const PolarSpace& ps,
                                              const GammaDPrimeCliqueReport& rep, int t,
                                              long long samples, uint64_t seed) {
  ordered_json j;
  j["space"] = space_json(ps);
  j["m"] = ps.d - t;
  j["graph"] = "gamma_dprime";
  j["t"] = t;
  j["samples_requested"] = samples;
  j["seed"] = seed;
  j["edges_checked"] = rep.edges_checked;
  j["span_maximal_ok"] = rep.span_maximal_ok;
  j["neighbors_in_top_ok"] = rep.neighbors_in_top_ok;
  j["total_cliques"] = rep.total_cliques;
  j["pass"] = rep.pass();
  if (!rep.witness.empty()) j["witness"] = rep.witness;
  return j;
}

inline ordered_json theorem_json(const TheoremReport& rep, const PolarSpace& ps,
                                 bool timings = false, long long runtime_ms = 0) {
  ordered_json j;
  j["space"] = space_json(ps);
  j["m"] = rep.m;
  j["graph"] = rep.which;
  j["vertices"] = rep.vertices;
  j["edges"] = rep.edges;
  if (rep.aut_computed)
    j["aut_order"] = rep.aut_order;
  else
    j["aut_order"] = nullptr;
  if (rep.induced.known)
    j["induced_order"] = rep.induced.order;
  else
    j["induced_order"] = nullptr;
  j["sampled_isometries"] = rep.sampled;
  j["soundness_ok"] = rep.soundness_ok;
  j["verdict"] = rep.verdict;
  if (timings) j["runtime_ms"] = runtime_ms;
  return j;
}

// ---------------------------------------------------------------------------
// verify-all: the full desk-scale battery with fixed budgets, deterministic
// for a given space and seed.
// ---------------------------------------------------------------------------

struct VerifyAllOptions {
  uint64_t seed = 20240915;
  int axiom_budget = 400;     // max maximal-level size for the exhaustive axiom scan
  int table_budget = 6000;    // max level size for a full relation table
  int scheme_budget = 400;    // max vertices for the O(V^3) scheme audit
  int clique_budget = 600;    // max vertices for exhaustive clique search
  int aut_budget = 1000;      // max vertices for the automorphism search
  int samples = 50;           // seeded samples per sampled section
};

inline ordered_json verify_all_json(const PolarSpace& ps,
                                    const VerifyAllOptions& opt = VerifyAllOptions{}) {
  ordered_json j;
  bool all_pass = true;
  j["space"] = space_json(ps);
  j["seed"] = opt.seed;

  if (ps.level_count(ps.d) <= opt.axiom_budget) {
    AxiomFactReport ax = verify_axioms_and_facts(ps);
    j["axioms"] = axioms_json(ax);
    all_pass &= ax.all_pass();
  } else {
    j["axioms"] = ordered_json{{"skipped", true}};
  }

  SpaceParams sp = ps.params();
  const int q = ps.field().q;
  ordered_json levels = ordered_json::array();
  for (int m = 1; m <= ps.d; ++m) {
    ordered_json lj;
    lj["m"] = m;
    long long count = ps.level_count(m);
    long long formula = level_count_poly(sp, m).eval_at_q(q);
    lj["count"] = count;
    lj["formula"] = formula;
    lj["match"] = count == formula;
    all_pass &= count == formula;
    levels.push_back(lj);
  }
  j["levels"] = levels;

  std::map<int, RelationTable> cache;
  auto table_of = [&](int m) -> const RelationTable& {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, relation_table(ps, m)).first;
    return it->second;
  };

  std::vector<int> table_ms;
  ordered_json rels = ordered_json::array();
  for (int m = 1; m <= ps.d; ++m) {
    if (ps.level_count(m) > opt.table_budget) continue;
    table_ms.push_back(m);
    const RelationTable& tbl = table_of(m);
    ordered_json rj;
    rj["m"] = m;
    rj["vertices"] = tbl.V;
    ordered_json vals = ordered_json::array();
    for (size_t k = 0; k < tbl.labels.size(); ++k) {
      ordered_json v;
      v["i"] = tbl.labels[k].i;
      v["j"] = tbl.labels[k].j;
      v["count"] = tbl.valency[k];
      long long formula = tbl.labels[k].i == 0 && tbl.labels[k].j == 0
                              ? 1
                              : stanton_valency(sp, m, tbl.labels[k].i, tbl.labels[k].j)
                                    .eval_at_q(q);
      long long brute = tbl.labels[k].i == 0 && tbl.labels[k].j == 0 ? 1 : tbl.valency[k];
      v["formula"] = formula;
      bool ok = formula == brute;
      v["match"] = ok;
      all_pass &= ok;
      vals.push_back(v);
    }
    rj["valencies"] = vals;

    DistinctnessReport dr = distinctness_check(sp, m);
    rj["distinct"] = dr.distinct;
    all_pass &= dr.distinct;

    if (1 <= m && m <= ps.d - 1) {
      DistanceCheckReport dc = graph_distance_check(tbl);
      rj["distance_check"] = dc.pass;
      ordered_json lst = ordered_json::array();
      for (RelationLabel L : dc.labels_at_distance2) lst.push_back({L.i, L.j});
      rj["labels_at_distance2"] = lst;
      all_pass &= dc.pass;
    }
    if (tbl.V <= opt.scheme_budget) {
      SchemeAuditReport sa = scheme_audit(tbl);
      rj["scheme_audit"] = sa.pass();
      rj["scheme_classes"] = sa.num_classes;
      all_pass &= sa.pass();
    }
    rels.push_back(rj);
  }
  j["relations"] = rels;

  ordered_json cliques = ordered_json::array();
  for (int m = 2; m <= ps.d - 1; ++m) {
    if (ps.level_count(m) > opt.clique_budget) continue;
    const RelationTable& tbl = table_of(m);
    GammaPrimeCliqueReport rep = verify_gamma_prime_cliques(tbl);
    ordered_json cj;
    cj["m"] = m;
    cj["graph"] = "gamma_prime";
    cj["pass"] = rep.pass();
    cj["num_maximal_cliques"] = rep.num_maximal_cliques;
    ordered_json tags;
    for (auto& [tag, n] : rep.tag_counts) tags[tag] = n;
    cj["tag_counts"] = tags;
    all_pass &= rep.pass();
    cliques.push_back(cj);
  }
  if (ps.d >= 4 && ps.level_count(ps.d - 2) <= opt.table_budget) {
    const RelationTable& tbl = table_of(ps.d - 2);
    GammaDPrimeCliqueReport rep = verify_gamma_dprime_cliques(tbl, 2, opt.samples, opt.seed);
    ordered_json cj;
    cj["m"] = ps.d - 2;
    cj["graph"] = "gamma_dprime";
    cj["t"] = 2;
    cj["edges_checked"] = rep.edges_checked;
    cj["pass"] = rep.pass();
    all_pass &= rep.pass();
    cliques.push_back(cj);
  }
  j["cliques"] = cliques;

  ordered_json thms = ordered_json::array();
  for (int m : table_ms) {
    bool in_theorem_range = (ps.d >= 3 && 1 <= m && m <= ps.d - 1) || (ps.d == 2 && m == 1);
    if (!in_theorem_range) continue;
    if (ps.level_count(m) > opt.aut_budget) continue;
    if (!induced_aut_order(ps).known) continue;
    const RelationTable& tbl = table_of(m);
    TheoremCheckOptions to;
    to.samples = opt.samples;
    to.seed = opt.seed;
    to.aut.max_vertices = opt.aut_budget;
    TheoremReport rep = theorem_check(tbl, "gamma_prime", to);
    thms.push_back(theorem_json(rep, ps));
    all_pass &= rep.verdict == "matches" && rep.soundness_ok;
  }
  j["theorems"] = thms;

  // sampled lemma witnesses
  {
    std::mt19937_64 rng(opt.seed);
    const IsotropicLevel& pts = ps.level(1);
    int done = 0, attempts = 0;
    bool ok = true;
    while (done < opt.samples && attempts++ < opt.samples * 500) {
      int a = int(rng() % uint64_t(pts.size()));
      int b = int(rng() % uint64_t(pts.size()));
      int c = int(rng() % uint64_t(pts.size()));
      if (a == b || ps.collinear(pts.items[a], pts.items[b])) continue;
      if (!ps.collinear(pts.items[c], pts.items[a]) &&
          !ps.collinear(pts.items[c], pts.items[b]))
        continue;
      try {
        noncollinear_witness(ps, pts.items[a], pts.items[b], pts.items[c]);
      } catch (const Error&) {
        ok = false;
        break;
      }
      ++done;
    }
    ordered_json wj;
    wj["samples"] = done;
    wj["pass"] = ok && done > 0;
    j["noncollinear_witness"] = wj;
    all_pass &= ok && done > 0;
  }

  if (ps.d >= 4) {
    std::mt19937_64 rng(opt.seed + 1);
    const int m = ps.d - 2, t = 2;
    std::map<std::string, long long> cases;
    int done = 0, attempts = 0;
    bool ok = true;
    while (done < opt.samples && attempts++ < opt.samples * 500) {
      Subspace M = random_maximal_singular(ps, rng);
      Subspace S = random_subspace_of(M, m, rng);
      Subspace U = random_subspace_of(M, m, rng);
      if (meet(S, U).dim() != m - t) continue;
      Subspace T = random_subspace_of(M, m, rng);
      if (meet(S, T).dim() <= m - t && meet(U, T).dim() <= m - t) continue;
      try {
        ComplementWitness w = construct_common_complement(ps, S, U, T);
        ++cases[w.case_name()];
      } catch (const Error&) {
        ok = false;
        break;
      }
      ++done;
    }
    ordered_json cj;
    cj["samples"] = done;
    ordered_json cc;
    for (auto& [name, n] : cases) cc[name] = n;
    cj["cases"] = cc;
    cj["pass"] = ok && done > 0;
    j["common_complement"] = cj;
    all_pass &= ok && done > 0;
  }

  j["pass"] = all_pass;
  return j;
}

}  // namespace pgrass
