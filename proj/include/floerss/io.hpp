#pragma once

// JSON readers and writers. Objects use nlohmann::json, whose std::map keys
// serialize sorted.

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "floerss/error.hpp"
#include "floerss/floercomplex.hpp"
#include "floerss/gradedalg.hpp"
#include "floerss/maslov.hpp"
#include "floerss/spectral.hpp"
#include "floerss/theorems.hpp"

namespace floerss::io {

using json = nlohmann::json;

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::ParseError, what + ": " + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

/// Runs `f`, turning JSON type and key errors into ParseError.
template <class F>
auto guarded(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, what + ": " + e.what());
  }
}

// ---- rings ----

inline json ring_to_json(const GradedRing& r) {
  json basis = json::array();
  for (const auto& b : r.basis()) basis.push_back({{"name", b.name}, {"degree", b.degree}});
  json mult = json::array();
  for (const auto& e : r.product_entries()) mult.push_back({e.left, e.right, e.terms});
  return {{"basis", basis}, {"unit", r.unit()}, {"mult", mult}};
}

inline RingPtr ring_from_json(const json& j) {
  return guarded("ring", [&] {
    std::vector<BasisElement> basis;
    for (const auto& b : j.at("basis")) basis.push_back({b.at("name").get<std::string>(), b.at("degree").get<int>()});
    std::vector<ProductEntry> mult;
    for (const auto& e : j.at("mult")) {
      if (!e.is_array() || e.size() != 3) throw Error(Errc::ParseError, "ring: mult entries are [i, j, [k...]]");
      mult.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(), e[2].get<std::vector<std::size_t>>()});
    }
    return std::make_shared<const GradedRing>(std::move(basis), j.at("unit").get<std::size_t>(), std::move(mult));
  });
}

inline json element_to_json(const GradedRing& r, const Element& e) { return r.describe(e); }

inline json derivation_to_json(const Derivation& d) {
  const GradedRing& r = d.ring();
  json values = json::object();
  const auto gens = r.generators();
  const auto vals = d.generator_values();
  for (std::size_t k = 0; k < gens.size(); ++k) values[r.basis()[gens[k]].name] = element_to_json(r, vals[k]);
  return {{"shift", d.shift()}, {"generator_values", values}};
}

// ---- complexes ----

inline json matrix_to_json(const F2Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t c : m.row(i).support()) out.push_back({i, c});
  return out;
}

inline json complex_to_json(const FloerComplex& fc) {
  json gens = json::array();
  for (const auto& g : fc.morse().generators()) gens.push_back({{"name", g.name}, {"index", g.index}});
  json ops = json::object();
  for (int k = 0; k <= fc.nu(); ++k) ops[std::to_string(k)] = matrix_to_json(fc.op(k));
  json out = {{"dimL", fc.dim_l()}, {"NL", fc.nl()}, {"generators", gens}, {"operators", ops}};
  if (fc.has_products()) {
    json prods = json::object();
    const auto& tables = fc.products();
    for (std::size_t l = 0; l < tables.size(); ++l) {
      json entries = json::array();
      for (const auto& [key, v] : tables[l])
        for (std::size_t k : v.support()) entries.push_back({key.first, key.second, k});
      prods[std::to_string(l)] = entries;
    }
    out["products"] = prods;
  }
  return out;
}

inline FloerComplex complex_from_json(const json& j, AssembleOptions options = {}) {
  return guarded("complex", [&] {
    const int dim_l = j.at("dimL").get<int>();
    const int nl = j.at("NL").get<int>();
    std::vector<Generator> gens;
    for (const auto& g : j.at("generators")) gens.push_back({g.at("name").get<std::string>(), g.at("index").get<int>()});
    const std::size_t n = gens.size();
    auto read_index = [&](const json& v) {
      const auto i = v.get<std::size_t>();
      if (i >= n) throw Error(Errc::ParseError, "complex: generator position " + std::to_string(i) + " out of range");
      return i;
    };
    std::vector<F2Matrix> ops;
    for (const auto& [key, entries] : j.at("operators").items()) {
      std::size_t k = 0;
      try {
        k = std::stoul(key);
      } catch (const std::exception&) {
        throw Error(Errc::ParseError, "complex: operator key '" + key + "' is not an integer");
      }
      if (ops.size() <= k) ops.resize(k + 1, F2Matrix(n, n));
      for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "complex: operator entries are [row, col]");
        ops[k].flip(read_index(e[0]), read_index(e[1]));
      }
    }
    std::optional<std::vector<ProductTable>> products;
    if (j.contains("products")) {
      products.emplace();
      for (const auto& [key, entries] : j.at("products").items()) {
        std::size_t l = 0;
        try {
          l = std::stoul(key);
        } catch (const std::exception&) {
          throw Error(Errc::ParseError, "complex: product key '" + key + "' is not an integer");
        }
        if (products->size() <= l) products->resize(l + 1);
        auto& table = (*products)[l];
        for (const auto& e : entries) {
          if (!e.is_array() || e.size() != 3) throw Error(Errc::ParseError, "complex: product entries are [i, j, k]");
          const std::pair<std::size_t, std::size_t> ij{read_index(e[0]), read_index(e[1])};
          auto it = table.try_emplace(ij, F2Vector(n)).first;
          it->second.flip(read_index(e[2]));
        }
      }
    }
    return assemble_from_unsorted(dim_l, nl, gens, ops, std::move(products), options);
  });
}

// ---- loops ----

inline json loop_to_json(const LagrangianLoop& loop) {
  json samples = json::array();
  for (const auto& z : loop.samples) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < z.rows(); ++i)
      for (Eigen::Index c = 0; c < z.cols(); ++c) rows.push_back({z(i, c).real(), z(i, c).imag()});
    samples.push_back(rows);
  }
  return {{"n", loop.n}, {"samples", samples}};
}

inline LagrangianLoop loop_from_json(const json& j) {
  return guarded("loop", [&] {
    LagrangianLoop loop;
    loop.n = j.at("n").get<int>();
    if (loop.n < 1 || loop.n > kMaxMaslovDim) throw Error(Errc::SizeLimit, "loop: n must be in 1..8");
    const auto n2 = static_cast<std::size_t>(loop.n * loop.n);
    for (const auto& s : j.at("samples")) {
      if (!s.is_array() || s.size() != n2) throw Error(Errc::ParseError, "loop: each sample needs n*n entries");
      Frame z(loop.n, loop.n);
      for (std::size_t k = 0; k < n2; ++k) {
        const auto& e = s[k];
        if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "loop: entries are [re, im]");
        z(static_cast<Eigen::Index>(k) / loop.n, static_cast<Eigen::Index>(k) % loop.n) =
            cplx(e[0].get<double>(), e[1].get<double>());
      }
      loop.samples.push_back(std::move(z));
    }
    return loop;
  });
}

// ---- spectral output ----

inline json page_to_json(const SpectralPage& p, bool verbose = false) {
  json v = json::object(), ranks = json::object();
  for (int m = 0; m <= p.dim_l(); ++m) {
    v[std::to_string(m)] = p.dim(m);
    ranks[std::to_string(m)] = p.delta_rank(m);
  }
  json out = {{"r", p.r}, {"V", v}, {"delta_rank", ranks}, {"collapsed", p.collapsed()}};
  if (verbose) {
    json deltas = json::object();
    for (int m = 0; m <= p.dim_l(); ++m) deltas[std::to_string(m)] = matrix_to_json(p.at(m).delta);
    out["delta"] = deltas;
  }
  return out;
}

inline json convergence_to_json(const ConvergenceReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"residue", e.residue}, {"einf", e.einf}, {"folded", e.folded}, {"window", e.window}, {"ok", e.ok()}});
  return {{"ok", rep.ok()}, {"residues", entries}};
}

// ---- theorem drivers ----

inline json certificate_to_json(const VanishingCertificate& c) {
  json gens = json::array();
  for (const auto& g : c.generators)
    gens.push_back({{"generator", g.generator}, {"image_degree", g.image_degree}, {"image_dim", g.image_dim}});
  json gen = json::array();
  for (const auto& s : c.generation)
    gen.push_back({{"degree", s.degree}, {"closure_dim", s.closure_dim}, {"ring_dim", s.ring_dim}});
  return {{"shift", c.shift},
          {"generators", gens},
          {"generation", gen},
          {"unit_in_kernel", c.unit_in_kernel},
          {"kernel_is_whole_ring", c.kernel_is_whole_ring}};
}

inline json step_to_json(const PageStep& s) {
  json out = {{"r", s.r}, {"shift", s.shift}, {"forced_zero", s.forced_zero}};
  if (s.certificate) {
    out["method"] = "vanishing_lemma";
    out["certificate"] = certificate_to_json(*s.certificate);
  } else {
    out["method"] = "derivation_search";
    if (s.derivations_found) out["derivations_found"] = *s.derivations_found;
  }
  return out;
}

inline json engine_to_json(const EngineCheck& e) {
  return {{"einf", e.einf}, {"folded", e.folded}, {"agrees", e.agrees}};
}

inline json verdict_to_json(const AudinVerdict& v) {
  json steps = json::array();
  for (const auto& s : v.steps) steps.push_back(step_to_json(s));
  json out = {{"ring", v.ring},
              {"n", v.n},
              {"NL", v.nl},
              {"nu", v.nu},
              {"displaceable", v.hf_assumption},
              {"pages_forced_equal", v.pages_forced_equal},
              {"einf_dims", v.einf_dims},
              {"verdict", verdict_name(v.verdict)},
              {"steps", steps},
              {"warnings", v.warnings}};
  if (v.witness) out["witness"] = derivation_to_json(*v.witness);
  if (v.engine) out["engine"] = engine_to_json(*v.engine);
  return out;
}

inline json top_witness_to_json(const GradedRing& r, const TopClassWitness& w) {
  json basis = json::array();
  for (const auto& b : w.adapted_basis) basis.push_back(element_to_json(r, b));
  return {{"pivot", w.pivot_generator},
          {"adapted_basis", basis},
          {"y", element_to_json(r, w.y)},
          {"top", element_to_json(r, w.top)},
          {"d_top", element_to_json(r, w.d_top)},
          {"x1_times_d_top", element_to_json(r, w.x1_times_d_top)},
          {"identity_holds", w.identity_holds}};
}

inline json maslov_two_to_json(const MaslovTwoReport& rep) {
  const auto ring = build_exterior(rep.n);
  json steps = json::array();
  for (const auto& s : rep.hypothetical_steps) steps.push_back(step_to_json(s));
  json wit = json::array();
  for (const auto& w : rep.witnesses) wit.push_back(top_witness_to_json(*ring, w));
  json out = {{"n", rep.n},
              {"NL", rep.nl},
              {"nu", rep.nu},
              {"hypothetical_steps", steps},
              {"delta1_nonzero", rep.delta1_nonzero},
              {"exhaustive", rep.exhaustive},
              {"witnesses", wit},
              {"constructive_all_hold", rep.constructive_all_hold}};
  if (rep.exhaustive) {
    out["derivations"] = rep.derivations;
    out["nonzero_derivations"] = rep.nonzero_derivations;
    out["exhaustive_all_top_nonzero"] = rep.exhaustive_all_top_nonzero;
    out["methods_agree"] = rep.methods_agree.value_or(false);
  }
  return out;
}

inline json rpn_to_json(const RpnReport& rep) {
  json steps = json::array();
  for (const auto& s : rep.steps) steps.push_back(step_to_json(s));
  return {{"n", rep.n},
          {"NL", rep.nl},
          {"nu", rep.nu},
          {"steps", steps},
          {"pages_forced_equal", rep.pages_forced_equal},
          {"hf_by_residue", rep.hf_by_residue},
          {"hf_rank", rep.hf_rank},
          {"intersection_bound", rep.intersection_bound},
          {"nondisplaceable", rep.nondisplaceable},
          {"engine", engine_to_json(rep.engine)}};
}

inline json maslov_index_to_json(const MaslovIndex& m, std::size_t samples) {
  return {{"index", m.value}, {"max_step", m.max_step}, {"winding", m.winding}, {"samples", samples}};
}

}  // namespace floerss::io
