#pragma once

// Drivers that run the page-by-page vanishing induction on a cohomology ring
// generated in degree 1, and the engine cross-checks that go with them.

#include <optional>
#include <string>
#include <vector>

#include "floerss/error.hpp"
#include "floerss/floercomplex.hpp"
#include "floerss/gradedalg.hpp"
#include "floerss/spectral.hpp"

namespace floerss {

enum class Verdict { Contradiction, Consistent };

inline const char* verdict_name(Verdict v) { return v == Verdict::Contradiction ? "contradiction" : "consistent"; }

/// One page of the induction: delta_r has degree 1 - r N_L and is either
/// forced to vanish (certificate) or not (a nonzero derivation exists).
struct PageStep {
  int r = 0;
  int shift = 0;
  bool forced_zero = false;
  std::optional<VanishingCertificate> certificate;  // shift <= -2
  std::optional<std::size_t> derivations_found;     // shift -1: exhaustive count
};

struct EngineCheck {
  std::vector<std::size_t> einf;
  std::vector<std::size_t> folded;
  bool agrees = false;
};

struct AudinVerdict {
  std::string ring;
  int n = 0;
  int nl = 2;
  int nu = 0;
  bool pages_forced_equal = false;
  std::vector<std::size_t> einf_dims;
  bool hf_assumption = false;  // displaceable, hence HF = 0
  Verdict verdict = Verdict::Consistent;
  std::vector<PageStep> steps;
  std::vector<std::string> warnings;
  /// Generator values of a nonzero delta_1 candidate when the induction stops.
  std::optional<Derivation> witness;
  std::optional<EngineCheck> engine;
};

namespace detail {

inline std::vector<std::size_t> ring_dims(const GradedRing& r) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= r.max_degree(); ++d) out.push_back(r.dim_in_degree(d));
  return out;
}

/// First nonzero Leibniz derivation in enumeration order, and how many exist
/// when the assignment space is small enough to count.
inline std::pair<std::optional<Derivation>, std::optional<std::size_t>> nonzero_derivation(const RingPtr& ring,
                                                                                           int shift,
                                                                                           bool count) {
  if (count) {
    auto all = enumerate_derivations(ring, shift);
    std::optional<Derivation> first;
    for (auto& d : all)
      if (!d.is_zero()) {
        first = std::move(d);
        break;
      }
    return {std::move(first), all.size()};
  }
  const GradedRing& r = *ring;
  const auto gens = r.generators();
  const int target = 1 + shift;
  const auto tidx = r.indices_in_degree(target);
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t t : tidx) {
      std::vector<Element> values(gens.size(), r.zero());
      values[g] = r.basis_element(t);
      try {
        return {derivation_from_generator_values(ring, shift, values), std::nullopt};
      } catch (const Error& e) {
        if (e.code() != Errc::InconsistentExtension) throw;
      }
    }
  return {std::nullopt, std::nullopt};
}

inline EngineCheck engine_check(const GradedRing& ring, int nl, const Derivation* d1) {
  const auto rc = complex_from_ring(ring, nl, d1, false);
  EngineCheck e;
  e.einf = run_to_collapse(rc.complex).einf;
  e.folded = folded_homology(rc.complex);
  std::vector<std::size_t> by_residue(static_cast<std::size_t>(nl), 0);
  for (std::size_t m = 0; m < e.einf.size(); ++m) by_residue[m % static_cast<std::size_t>(nl)] += e.einf[m];
  e.agrees = by_residue == e.folded;
  return e;
}

}  // namespace detail

inline constexpr int kEnumerationCutoff = 4;

/// The page induction on a degree-1-generated ring with minimal Maslov
/// number `nl`. `displaceable` supplies the assumption HF = 0.
inline AudinVerdict audin_general(const RingPtr& ring, int nl, bool displaceable, const std::string& label = "ring") {
  if (nl < 2) throw Error(Errc::InvalidArgument, "minimal Maslov number must be >= 2");
  if (ring->min_degree() < 0 || !ring->is_degree_one_generated())
    throw Error(Errc::NotDegreeOneGenerated, "ring is not generated by its unit and degree-1 part");
  AudinVerdict v;
  v.ring = label;
  v.n = ring->max_degree();
  v.nl = nl;
  v.nu = FloerComplex::nu_for(v.n, nl);
  v.hf_assumption = displaceable;
  v.pages_forced_equal = true;
  for (int r = 1; r <= v.nu; ++r) {
    PageStep step;
    step.r = r;
    step.shift = 1 - r * nl;
    if (step.shift <= -2) {
      step.certificate = vanishing_lemma(*ring, step.shift);
      step.forced_zero = step.certificate->kernel_is_whole_ring && replay_certificate(*ring, *step.certificate);
    } else {
      const std::size_t bits = ring->generators().size() * ring->dim_in_degree(1 + step.shift);
      const bool count = bits <= static_cast<std::size_t>(kEnumerationCutoff);
      auto [d, found] = detail::nonzero_derivation(ring, step.shift, count);
      step.derivations_found = found;
      step.forced_zero = !d.has_value();
      if (d && !v.witness) v.witness = std::move(d);
    }
    v.steps.push_back(std::move(step));
    if (!v.steps.back().forced_zero) {
      v.pages_forced_equal = false;
      break;
    }
  }
  if (v.pages_forced_equal) v.einf_dims = detail::ring_dims(*ring);
  const bool einf_nonzero = v.pages_forced_equal;  // E_inf = E_1 = H*(L) has the unit
  v.verdict = (v.pages_forced_equal && einf_nonzero && v.hf_assumption) ? Verdict::Contradiction : Verdict::Consistent;
  return v;
}

inline AudinVerdict audin_torus(int n, int nl, bool displaceable) {
  if (n < 1) throw Error(Errc::InvalidArgument, "torus dimension must be >= 1");
  const auto ring = build_exterior(n);
  AudinVerdict v = audin_general(ring, nl, displaceable, "T^" + std::to_string(n));
  if (nl % 2 != 0)
    v.warnings.push_back("N_L = " + std::to_string(nl) + " is odd; an orientable Lagrangian has even minimal Maslov number");
  if (v.witness && n <= kEnumerationCutoff) v.engine = detail::engine_check(*ring, nl, &*v.witness);
  return v;
}

struct MaslovTwoReport {
  int n = 0;
  int nl = 2;
  int nu = 0;
  /// Pages r = 2..nu under the hypothesis delta_1 = 0; all forced to vanish.
  std::vector<PageStep> hypothetical_steps;
  bool delta1_nonzero = false;
  bool exhaustive = false;
  std::size_t derivations = 0;          // exhaustive: all shift -1 derivations
  std::size_t nonzero_derivations = 0;  // exhaustive: nonzero ones
  bool exhaustive_all_top_nonzero = false;
  std::vector<TopClassWitness> witnesses;  // constructive certificates
  bool constructive_all_hold = false;
  std::optional<bool> methods_agree;
};

/// With N_L = 2 and HF = 0: delta_1 != 0, and every nonzero shift -1
/// derivation of the torus ring moves the top class.
inline MaslovTwoReport maslov_two_disc_argument(int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "argument needs n >= 2");
  const auto ring = build_exterior(n);
  MaslovTwoReport rep;
  rep.n = n;
  rep.nu = FloerComplex::nu_for(n, 2);
  bool all_forced = true;
  for (int r = 2; r <= rep.nu; ++r) {
    PageStep step{r, 1 - 2 * r, false, vanishing_lemma(*ring, 1 - 2 * r), std::nullopt};
    step.forced_zero = step.certificate->kernel_is_whole_ring && replay_certificate(*ring, *step.certificate);
    all_forced = all_forced && step.forced_zero;
    rep.hypothetical_steps.push_back(std::move(step));
  }
  rep.delta1_nonzero = all_forced;

  const Element top = ring->basis_element(ring->indices_in_degree(n)[0]);
  std::vector<Derivation> candidates;
  if (n <= kEnumerationCutoff) {
    rep.exhaustive = true;
    auto all = enumerate_derivations(ring, -1);
    rep.derivations = all.size();
    rep.exhaustive_all_top_nonzero = true;
    for (auto& d : all) {
      if (d.is_zero()) continue;
      ++rep.nonzero_derivations;
      rep.exhaustive_all_top_nonzero = rep.exhaustive_all_top_nonzero && !d.apply(top).is_zero();
      candidates.push_back(std::move(d));
    }
  } else {
    const auto gens = ring->generators();
    for (std::size_t g = 0; g <= gens.size(); ++g) {
      std::vector<Element> values(gens.size(), ring->zero());
      if (g < gens.size())
        values[g] = ring->one();
      else
        for (auto& v : values) v = ring->one();
      candidates.push_back(derivation_from_generator_values(ring, -1, values));
    }
  }
  rep.constructive_all_hold = true;
  for (const auto& d : candidates) {
    rep.witnesses.push_back(top_class_nonvanishing(d));
    rep.constructive_all_hold = rep.constructive_all_hold && rep.witnesses.back().identity_holds;
  }
  if (rep.exhaustive) rep.methods_agree = rep.exhaustive_all_top_nonzero == rep.constructive_all_hold;
  return rep;
}

struct RpnReport {
  int n = 0;
  int nl = 3;
  int nu = 0;
  std::vector<PageStep> steps;
  bool pages_forced_equal = false;
  std::vector<std::size_t> hf_by_residue;
  std::size_t hf_rank = 0;
  std::size_t intersection_bound = 0;
  bool nondisplaceable = false;
  EngineCheck engine;
};

inline RpnReport rpn_driver(int n, int nl) {
  if (nl < 3) throw Error(Errc::HypothesisFailure, "projective-space statement needs N_L >= 3");
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  if (n > 64) throw Error(Errc::SizeLimit, "projective-space driver limited to n <= 64");
  const auto ring = build_truncated_poly(n);
  const AudinVerdict v = audin_general(ring, nl, false, "RP^" + std::to_string(n));
  RpnReport rep;
  rep.n = n;
  rep.nl = nl;
  rep.nu = v.nu;
  rep.steps = v.steps;
  rep.pages_forced_equal = v.pages_forced_equal;
  rep.hf_by_residue.assign(static_cast<std::size_t>(nl), 0);
  for (std::size_t m = 0; m < v.einf_dims.size(); ++m) rep.hf_by_residue[m % static_cast<std::size_t>(nl)] += v.einf_dims[m];
  for (std::size_t x : rep.hf_by_residue) rep.hf_rank += x;
  rep.intersection_bound = rep.hf_rank;
  rep.nondisplaceable = rep.hf_rank > 0;
  rep.engine = detail::engine_check(*ring, nl, nullptr);
  rep.engine.agrees = rep.engine.agrees && rep.engine.folded == rep.hf_by_residue;
  return rep;
}

}  // namespace floerss
