#pragma once

// Command-line front end. Exit codes: 0/1 verdict, 2 input error,
// 3 numerical guard.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "floerss/io.hpp"

namespace floerss::cli {

enum Exit : int { kOk = 0, kVerdictFail = 1, kInputError = 2, kNumericalGuard = 3 };

struct Output {
  std::string format = "json";
  std::string out_path;
};

namespace detail {

using io::json;

inline void add_output_flags(CLI::App* app, Output& o) {
  app->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app->add_option("--out", o.out_path, "write output to this file");
}

inline void emit(const Output& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + o.out_path + "'");
  f << text;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(Errc::InvalidArgument, "dims must be a comma-separated list of non-negative integers");
    }
  }
  if (out.empty()) throw Error(Errc::InvalidArgument, "dims is empty");
  return out;
}

// ---- table renderers ----

inline std::string ring_table(const GradedRing& r) {
  std::ostringstream s;
  s << "basis (" << r.dim() << ")\n";
  for (const auto& b : r.basis()) s << "  " << std::left << std::setw(12) << b.name << " deg " << b.degree << "\n";
  s << "products\n";
  for (const auto& e : r.product_entries()) {
    Element t(r.dim());
    for (std::size_t k : e.terms) t.flip(k);
    s << "  " << r.basis()[e.left].name << " * " << r.basis()[e.right].name << " = " << r.describe(t) << "\n";
  }
  return s.str();
}

inline std::string verdict_table(const AudinVerdict& v) {
  std::ostringstream s;
  s << "ring " << v.ring << "  N_L " << v.nl << "  nu " << v.nu << "  displaceable " << (v.hf_assumption ? "yes" : "no")
    << "\n";
  s << "  r  shift  method             delta_r forced zero\n";
  for (const auto& st : v.steps)
    s << "  " << std::setw(1) << st.r << "  " << std::setw(5) << st.shift << "  " << std::left << std::setw(19)
      << (st.certificate ? "vanishing_lemma" : "derivation_search") << std::right << (st.forced_zero ? "yes" : "no")
      << "\n";
  if (v.witness) s << "  witness: " << io::derivation_to_json(*v.witness).dump() << "\n";
  for (const auto& w : v.warnings) s << "  warning: " << w << "\n";
  s << "verdict " << verdict_name(v.verdict) << "\n";
  return s.str();
}

// ---- commands ----

inline int cmd_ring(const std::string& kind, int n, const Output& o, std::ostream& out) {
  const RingPtr r = kind == "torus" ? build_exterior(n) : build_truncated_poly(n);
  emit(o, out, o.format == "json" ? io::dump(io::ring_to_json(*r)) : ring_table(*r));
  return kOk;
}

inline int cmd_ss(const std::string& file, bool paranoid, bool verbose, const Output& o, std::ostream& out) {
  const FloerComplex fc = io::complex_from_json(io::read_file(file));
  const SpectralOptions opts{paranoid};
  const auto run = run_to_collapse(fc, opts);
  const auto conv = check_convergence(fc, run);
  std::optional<std::size_t> product_pages;
  if (fc.has_products()) product_pages = induced_page_products(fc, run, opts).size();
  if (o.format == "json") {
    json pages = json::array();
    for (const auto& p : run.pages) pages.push_back(io::page_to_json(p, verbose));
    json doc = {{"NL", fc.nl()}, {"nu", fc.nu()}, {"pages", pages}, {"einf", run.einf},
                {"einf_by_residue", run.einf_by_residue(fc.nl())}, {"convergence", io::convergence_to_json(conv)}};
    if (product_pages) doc["product_leibniz_pages"] = *product_pages;
    emit(o, out, io::dump(doc));
  } else {
    std::ostringstream s;
    s << "N_L " << fc.nl() << "  nu " << fc.nu() << "\n";
    for (const auto& p : run.pages) {
      std::vector<std::size_t> ranks;
      for (int m = 0; m <= p.dim_l(); ++m) ranks.push_back(p.delta_rank(m));
      s << "E" << p.r << "  V: " << join(p.dims()) << "  rank delta: " << join(ranks) << "\n";
    }
    s << "residue  E_inf  folded  window\n";
    for (const auto& e : conv.entries)
      s << std::setw(7) << e.residue << std::setw(7) << e.einf << std::setw(8) << e.folded << std::setw(8) << e.window
        << "\n";
    s << "convergence " << (conv.ok() ? "OK" : "FAILED") << "\n";
    emit(o, out, s.str());
  }
  return conv.ok() ? kOk : kVerdictFail;
}

inline int cmd_audin(const AudinVerdict& v, const Output& o, std::ostream& out) {
  emit(o, out, o.format == "json" ? io::dump(io::verdict_to_json(v)) : verdict_table(v));
  return v.verdict == Verdict::Contradiction ? kOk : kVerdictFail;
}

inline int cmd_disc(int n, const Output& o, std::ostream& out) {
  const auto rep = maslov_two_disc_argument(n);
  const bool ok = rep.delta1_nonzero && rep.constructive_all_hold && rep.methods_agree.value_or(true);
  if (o.format == "json") {
    emit(o, out, io::dump(io::maslov_two_to_json(rep)));
  } else {
    std::ostringstream s;
    s << "T^" << n << "  N_L 2  nu " << rep.nu << "\n";
    for (const auto& st : rep.hypothetical_steps)
      s << "  r " << st.r << "  shift " << st.shift << "  forced zero " << (st.forced_zero ? "yes" : "no") << "\n";
    s << "delta_1 nonzero " << (rep.delta1_nonzero ? "yes" : "no") << "\n";
    if (rep.exhaustive)
      s << "exhaustive: " << rep.nonzero_derivations << " nonzero derivations, top class moved by all: "
        << (rep.exhaustive_all_top_nonzero ? "yes" : "no") << "\n";
    s << "constructive certificates: " << rep.witnesses.size() << ", all hold: "
      << (rep.constructive_all_hold ? "yes" : "no") << "\n";
    emit(o, out, s.str());
  }
  return ok ? kOk : kVerdictFail;
}

inline int cmd_rp(int n, int nl, const Output& o, std::ostream& out) {
  const auto rep = rpn_driver(n, nl);
  const bool ok = rep.hf_rank == static_cast<std::size_t>(n + 1) && rep.engine.agrees;
  if (o.format == "json") {
    emit(o, out, io::dump(io::rpn_to_json(rep)));
  } else {
    std::ostringstream s;
    s << "RP^" << n << "  N_L " << nl << "  nu " << rep.nu << "\n";
    for (const auto& st : rep.steps)
      s << "  r " << st.r << "  shift " << st.shift << "  forced zero " << (st.forced_zero ? "yes" : "no") << "\n";
    s << "HF by residue: " << join(rep.hf_by_residue) << "\n";
    s << "HF rank " << rep.hf_rank << "  intersection bound " << rep.intersection_bound << "  engine "
      << (rep.engine.agrees ? "agrees" : "DISAGREES") << "\n";
    emit(o, out, s.str());
  }
  return ok ? kOk : kVerdictFail;
}

inline int cmd_derivations(const RingPtr& ring, int shift, const Output& o, std::ostream& out) {
  const auto all = enumerate_derivations(ring, shift);
  std::size_t nonzero = 0;
  json list = json::array();
  for (const auto& d : all) {
    nonzero += d.is_zero() ? 0 : 1;
    list.push_back(io::derivation_to_json(d)["generator_values"]);
  }
  if (o.format == "json") {
    emit(o, out, io::dump({{"shift", shift}, {"count", all.size()}, {"nonzero", nonzero}, {"derivations", list}}));
  } else {
    std::ostringstream s;
    s << "shift " << shift << ": " << all.size() << " derivations, " << nonzero << " nonzero\n";
    for (const auto& d : list) s << "  " << d.dump() << "\n";
    emit(o, out, s.str());
  }
  return kOk;
}

/// `samples` > 0 keeps that many evenly spaced samples of the file's loop.
inline int cmd_maslov_index(const std::string& file, std::size_t samples, const Output& o, std::ostream& out) {
  LagrangianLoop loop = io::loop_from_json(io::read_file(file));
  if (samples > 0) {
    if (samples > loop.samples.size())
      throw Error(Errc::InvalidArgument, "--samples exceeds the " + std::to_string(loop.samples.size()) +
                                             " samples in the file");
    LagrangianLoop sub{loop.n, {}};
    for (std::size_t i = 0; i < samples; ++i) sub.samples.push_back(loop.samples[i * loop.samples.size() / samples]);
    loop = std::move(sub);
  }
  const auto m = maslov_index(loop);
  if (o.format == "json") {
    emit(o, out, io::dump(io::maslov_index_to_json(m, loop.samples.size())));
  } else {
    std::ostringstream s;
    s << m.value << "\n";
    s << "samples " << loop.samples.size() << "  max step " << std::setprecision(6) << m.max_step << " rad\n";
    emit(o, out, s.str());
  }
  return kOk;
}

inline int cmd_maslov_loop(const std::vector<int>& weights, std::size_t samples, const Output& o, std::ostream& out) {
  emit(o, out, io::dump(io::loop_to_json(rotation_loop(weights, samples))));
  return kOk;
}

struct CorpusCheck {
  bool d_squared = false;
  bool convergence = false;
  bool pages_match = false;
  bool monotone = false;
  bool ok() const { return d_squared && convergence && pages_match && monotone; }
};

inline CorpusCheck check_corpus_member(const GeneratedComplex& g, bool paranoid) {
  CorpusCheck c;
  c.d_squared = check_d_squared(g.complex).ok();
  const auto run = run_to_collapse(g.complex, {paranoid});
  c.convergence = check_convergence(g.complex, run).ok();
  c.pages_match = true;
  c.monotone = true;
  for (std::size_t r = 0; r < run.pages.size(); ++r) {
    c.pages_match = c.pages_match && r < g.predicted_pages.size() && run.pages[r].dims() == g.predicted_pages[r];
    if (r > 0)
      for (int m = 0; m <= g.complex.dim_l(); ++m) c.monotone = c.monotone && run.pages[r].dim(m) <= run.pages[r - 1].dim(m);
  }
  return c;
}

inline int cmd_corpus(std::uint64_t seed, std::size_t count, const std::string& dims, std::optional<int> nl,
                      bool paranoid, const Output& o, std::ostream& out) {
  if (count > 10000) throw Error(Errc::SizeLimit, "corpus count limited to 10000");
  if (!o.out_path.empty()) std::filesystem::create_directories(o.out_path);
  const std::optional<std::vector<std::size_t>> fixed = dims.empty() ? std::nullopt : std::optional(parse_dims(dims));
  json members = json::array();
  std::vector<std::uint64_t> failed;
  for (std::size_t i = 0; i < count; ++i) {
    auto shape = corpus_shape(seed, i, nl);
    if (fixed) shape.dims = *fixed;
    const std::uint64_t member_seed = floerss::detail::mix_seed(seed, 1000003 + i);
    const auto g = generate_complex(member_seed, shape.dims, shape.nl);
    const auto c = check_corpus_member(g, paranoid);
    if (!o.out_path.empty()) {
      std::ostringstream name;
      name << "complex_" << std::setw(4) << std::setfill('0') << i << ".json";
      std::ofstream f(std::filesystem::path(o.out_path) / name.str(), std::ios::binary);
      f << io::dump(io::complex_to_json(g.complex));
    }
    members.push_back({{"index", i}, {"seed", member_seed}, {"NL", shape.nl}, {"dims", shape.dims},
                       {"d_squared", c.d_squared}, {"convergence", c.convergence}, {"pages_match", c.pages_match},
                       {"monotone", c.monotone}, {"ok", c.ok()}});
    if (!c.ok()) failed.push_back(member_seed);
  }
  const std::size_t passed = count - failed.size();
  if (o.format == "json") {
    out << io::dump({{"seed", seed}, {"count", count}, {"passed", passed}, {"failed_seeds", failed}, {"members", members}});
  } else {
    out << passed << "/" << count << " pass\n";
    for (auto s : failed) out << "  failed seed " << s << "\n";
  }
  return failed.empty() ? kOk : kVerdictFail;
}

}  // namespace detail

/// Parses and dispatches; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral sequence and Maslov index toolkit", "floerss"};
  app.require_subcommand(1);
  Output o;
  int n = 0, nl = 0, shift = -1;
  bool displaceable = false, paranoid = false, verbose = false;
  std::string kind, file, dims;
  std::uint64_t seed = 0;
  std::size_t count = 0, samples = 0;
  std::optional<int> corpus_nl;
  std::vector<int> weights;

  auto* ring = app.add_subcommand("ring", "emit a cohomology ring");
  ring->add_option("kind", kind, "torus or rp")->required()->check(CLI::IsMember({"torus", "rp"}));
  ring->add_option("--n", n, "dimension")->required();
  detail::add_output_flags(ring, o);

  auto* ss = app.add_subcommand("ss", "spectral sequence");
  ss->require_subcommand(1);
  auto* ss_run = ss->add_subcommand("run", "run a complex file to collapse");
  ss_run->add_option("file", file, "complex JSON")->required();
  ss_run->add_flag("--paranoid", paranoid, "second-lift checks");
  ss_run->add_flag("--verbose", verbose, "include delta matrices");
  detail::add_output_flags(ss_run, o);

  auto* audin = app.add_subcommand("audin", "page-vanishing driver");
  audin->require_subcommand(1);
  auto* a_torus = audin->add_subcommand("torus", "exterior algebra on n generators");
  a_torus->add_option("--n", n, "torus dimension")->required();
  a_torus->add_option("--maslov", nl, "minimal Maslov number")->required();
  a_torus->add_flag("--displaceable", displaceable, "assume HF = 0");
  detail::add_output_flags(a_torus, o);
  auto* a_ring = audin->add_subcommand("ring", "ring from a JSON file");
  a_ring->add_option("file", file, "ring JSON")->required();
  a_ring->add_option("--maslov", nl, "minimal Maslov number")->required();
  a_ring->add_flag("--displaceable", displaceable, "assume HF = 0");
  detail::add_output_flags(a_ring, o);
  auto* a_disc = audin->add_subcommand("disc", "N_L = 2 argument on the torus ring");
  a_disc->add_option("--n", n, "torus dimension")->required();
  detail::add_output_flags(a_disc, o);

  auto* rp = app.add_subcommand("rp", "projective-space driver");
  rp->add_option("--n", n, "dimension")->required();
  rp->add_option("--maslov", nl, "minimal Maslov number")->required();
  detail::add_output_flags(rp, o);

  auto* der = app.add_subcommand("derivations", "Leibniz derivations");
  der->require_subcommand(1);
  auto* der_enum = der->add_subcommand("enumerate", "all derivations of a shift");
  der_enum->add_option("kind", kind, "torus, rp or a ring JSON file")->required();
  der_enum->add_option("--n", n, "dimension for torus or rp");
  der_enum->add_option("--shift", shift, "degree shift")->required();
  detail::add_output_flags(der_enum, o);

  auto* maslov = app.add_subcommand("maslov", "Maslov index of Lagrangian loops");
  maslov->require_subcommand(1);
  auto* m_index = maslov->add_subcommand("index", "index of a loop file");
  m_index->add_option("file", file, "loop JSON")->required();
  m_index->add_option("--samples", samples, "use this many evenly spaced samples");
  detail::add_output_flags(m_index, o);
  auto* m_loop = maslov->add_subcommand("loop", "emit diag(exp(i pi w_j t))");
  m_loop->add_option("--weights", weights, "integer weight per factor")->required()->delimiter(',');
  m_loop->add_option("--samples", samples, "number of samples")->required();
  m_loop->add_option("--out", o.out_path, "write output to this file");

  auto* corpus = app.add_subcommand("corpus", "random complexes and self-test");
  corpus->add_option("--seed", seed, "corpus seed");
  corpus->add_option("--count", count, "number of complexes")->required();
  corpus->add_option("--dims", dims, "fixed Morse dims, e.g. 2,3,2");
  corpus->add_option("--NL", corpus_nl, "fixed minimal Maslov number");
  corpus->add_flag("--paranoid", paranoid, "second-lift checks");
  corpus->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  corpus->add_option("--out", o.out_path, "directory for complex files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*ring) return detail::cmd_ring(kind, n, o, out);
    if (*ss_run) return detail::cmd_ss(file, paranoid, verbose, o, out);
    if (*a_torus) return detail::cmd_audin(audin_torus(n, nl, displaceable), o, out);
    if (*a_ring) {
      const auto r = io::ring_from_json(io::read_file(file));
      return detail::cmd_audin(audin_general(r, nl, displaceable, file), o, out);
    }
    if (*a_disc) return detail::cmd_disc(n, o, out);
    if (*rp) return detail::cmd_rp(n, nl, o, out);
    if (*der_enum) {
      RingPtr r;
      if (kind == "torus")
        r = build_exterior(n);
      else if (kind == "rp")
        r = build_truncated_poly(n);
      else
        r = io::ring_from_json(io::read_file(kind));
      return detail::cmd_derivations(r, shift, o, out);
    }
    if (*m_index) return detail::cmd_maslov_index(file, samples, o, out);
    if (*m_loop) return detail::cmd_maslov_loop(weights, samples, o, out);
    if (*corpus) return detail::cmd_corpus(seed, count, dims, corpus_nl, paranoid, o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.code() == Errc::InsufficientSampling) {
      err << "hint: resample the loop more finely\n";
      return kNumericalGuard;
    }
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace floerss::cli
