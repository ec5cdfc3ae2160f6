#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "floerss/gradedalg.hpp"

using namespace floerss;

namespace {

Element named(const GradedRing& r, const std::string& name) { return r.basis_element(*r.find(name)); }

std::vector<std::size_t> dims_by_degree(const GradedRing& r) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= r.max_degree(); ++d) out.push_back(r.dim_in_degree(d));
  return out;
}

Derivation from_values(const RingPtr& r, int shift, std::vector<Element> values) {
  return derivation_from_generator_values(r, shift, values);
}

}  // namespace

TEST(Exterior, DimsAndProducts) {
  const auto l3 = build_exterior(3);
  EXPECT_EQ(dims_by_degree(*l3), (std::vector<std::size_t>{1, 3, 3, 1}));
  const auto l2 = build_exterior(2);
  EXPECT_EQ(l2->multiply(named(*l2, "x1"), named(*l2, "x2")), named(*l2, "x1x2"));
  EXPECT_EQ(l2->multiply(named(*l2, "x2"), named(*l2, "x1")), named(*l2, "x1x2"));
  EXPECT_TRUE(l2->check_associativity());
  EXPECT_TRUE(l3->check_associativity());
  EXPECT_THROW(build_exterior(13), Error);
  EXPECT_EQ(build_exterior(12)->dim(), 4096u);
}

TEST(Exterior, TopClassFromEveryOrdering) {
  const auto l4 = build_exterior(4);
  std::vector<std::string> gens{"x1", "x2", "x3", "x4"};
  std::sort(gens.begin(), gens.end());
  int orderings = 0;
  do {
    Element p = l4->one();
    for (const auto& g : gens) p = l4->multiply(p, named(*l4, g));
    EXPECT_EQ(p, named(*l4, "x1x2x3x4"));
    ++orderings;
  } while (std::next_permutation(gens.begin(), gens.end()));
  EXPECT_EQ(orderings, 24);
}

TEST(TruncatedPoly, Structure) {
  const auto r = build_truncated_poly(4);
  EXPECT_EQ(dims_by_degree(*r), (std::vector<std::size_t>{1, 1, 1, 1, 1}));
  EXPECT_TRUE(r->multiply(named(*r, "a^2"), named(*r, "a^3")).is_zero());
  EXPECT_EQ(r->multiply(named(*r, "a"), named(*r, "a^3")), named(*r, "a^4"));
  EXPECT_TRUE(r->check_associativity());
  EXPECT_TRUE(r->is_degree_one_generated());
}

TEST(Cup, Basics) {
  const auto l2 = build_exterior(2);
  const Element x1 = named(*l2, "x1"), x2 = named(*l2, "x2");
  EXPECT_EQ(cup(*l2, l2->one(), x2), x2);
  EXPECT_TRUE(cup(*l2, x1, x1).is_zero());
  EXPECT_TRUE(cup(*l2, x1 + x2, x1 + x2).is_zero());
}

TEST(GradedRing, RejectsBadTables) {
  // not degree additive
  EXPECT_THROW(GradedRing({{"1", 0}, {"a", 1}}, 0, {{0, 0, {0}}, {0, 1, {1}}, {1, 0, {1}}, {1, 1, {1}}}), Error);
  // not commutative
  EXPECT_THROW(GradedRing({{"1", 0}, {"a", 1}, {"b", 1}, {"c", 2}}, 0,
                          {{0, 0, {0}}, {0, 1, {1}}, {1, 0, {1}}, {0, 2, {2}}, {2, 0, {2}}, {0, 3, {3}}, {3, 0, {3}},
                           {1, 2, {3}}}),
               Error);
  // unit missing on a basis element
  EXPECT_THROW(GradedRing({{"1", 0}, {"a", 1}}, 0, {{0, 0, {0}}, {0, 1, {1}}}), Error);
}

TEST(GradedRing, GenerationCheck) {
  EXPECT_TRUE(build_exterior(5)->is_degree_one_generated());
  EXPECT_FALSE(build_sphere(2)->is_degree_one_generated());
  EXPECT_TRUE(build_sphere(1)->is_degree_one_generated());
  EXPECT_FALSE(tensor_product(*build_exterior(1), *build_sphere(2))->is_degree_one_generated());
  EXPECT_TRUE(tensor_product(*build_exterior(2), *build_truncated_poly(2))->is_degree_one_generated());
}

TEST(Derivation, LeibnizExtension) {
  const auto l2 = build_exterior(2);
  const auto d = from_values(l2, -1, {l2->one(), l2->zero()});
  EXPECT_EQ(d.apply(named(*l2, "x1x2")), named(*l2, "x2"));
  EXPECT_TRUE(check_leibniz(d));
  EXPECT_TRUE(from_values(l2, -1, {l2->zero(), l2->zero()}).is_zero());
  // shift <= -2: generator targets are empty
  EXPECT_TRUE(from_values(l2, -2, {l2->zero(), l2->zero()}).is_zero());
}

TEST(Derivation, InconsistentExtension) {
  const auto r = build_truncated_poly(2);
  const auto d = from_values(r, 0, {named(*r, "a")});
  EXPECT_EQ(d.apply(named(*r, "a^2")), r->zero());
  const auto e = from_values(r, 1, {named(*r, "a^2")});
  EXPECT_TRUE(check_leibniz(e));
  // a relation x*y = 0 with x, y of degree 1 and d(x) = 1 forces d(xy) = y, contradicting 0
  const auto rel = std::make_shared<const GradedRing>(
      std::vector<BasisElement>{{"1", 0}, {"x", 1}, {"y", 1}, {"q", 2}},
      0,
      std::vector<ProductEntry>{{0, 0, {0}}, {0, 1, {1}}, {1, 0, {1}}, {0, 2, {2}}, {2, 0, {2}}, {0, 3, {3}},
                                {3, 0, {3}}, {1, 1, {3}}, {2, 2, {3}}});
  EXPECT_THROW(from_values(rel, -1, {rel->one(), rel->zero()}), Error);
  try {
    from_values(rel, -1, {rel->one(), rel->zero()});
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::InconsistentExtension);
  }
}

TEST(Derivation, CheckLeibnizRejectsNonDerivation) {
  const auto l2 = build_exterior(2);
  std::map<int, F2Matrix> maps;
  F2Matrix top(2, 1);
  top.set(1, 0);  // x1x2 -> x2
  maps.emplace(2, top);
  const Derivation d(l2, -1, maps);
  const auto fail = leibniz_failure(d);
  ASSERT_TRUE(fail.has_value());
  EXPECT_FALSE(check_leibniz(d));
  EXPECT_TRUE(check_leibniz(Derivation::zero(l2, -1)));
}

TEST(Derivation, EnumerationCounts) {
  EXPECT_EQ(enumerate_derivations(build_exterior(2), -1).size(), 4u);
  EXPECT_EQ(enumerate_derivations(build_exterior(3), -1).size(), 8u);
  for (int n = 2; n <= 4; ++n)
    for (int s = -2; s >= -2 * n; --s) {
      const auto ds = enumerate_derivations(build_exterior(n), s);
      ASSERT_EQ(ds.size(), 1u);
      EXPECT_TRUE(ds[0].is_zero());
    }
  EXPECT_THROW(enumerate_derivations(build_exterior(5), 0), Error);  // 25 assignment bits
}

TEST(Derivation, KernelIsUnitalSubring) {
  for (int n = 1; n <= 3; ++n) {
    const auto r = build_exterior(n);
    for (int s = -1; s <= 1; ++s)
      for (const auto& d : enumerate_derivations(r, s)) {
        EXPECT_TRUE(d.apply(r->one()).is_zero());
        std::vector<Element> ker;
        for (int deg : r->degrees()) {
          const F2Matrix& m = d.map(deg);
          const Subspace k = m.rows() == 0 ? Subspace::full(m.cols()) : kernel(m);
          for (const auto& v : k.basis_vectors()) ker.push_back(r->from_local(v, deg));
        }
        for (const auto& a : ker)
          for (const auto& b : ker) EXPECT_TRUE(d.apply(r->multiply(a, b)).is_zero());
      }
  }
}

TEST(VanishingLemma, Certificates) {
  const auto l3 = build_exterior(3);
  const auto cert = vanishing_lemma(*l3, -3);
  EXPECT_TRUE(cert.kernel_is_whole_ring);
  for (const auto& g : cert.generators) {
    EXPECT_EQ(g.image_degree, -2);
    EXPECT_EQ(g.image_dim, 0u);
  }
  EXPECT_TRUE(replay_certificate(*l3, cert));
  EXPECT_TRUE(vanishing_lemma(*build_truncated_poly(5), -2).kernel_is_whole_ring);
  try {
    vanishing_lemma(*build_exterior(2), -1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotApplicable);
  }
  try {
    vanishing_lemma(*build_sphere(2), -2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotDegreeOneGenerated);
  }
  auto tampered = cert;
  tampered.generators[0].image_degree = 0;
  EXPECT_FALSE(replay_certificate(*l3, tampered));
}

TEST(TopClass, Witnesses) {
  const auto l2 = build_exterior(2);
  const auto w = top_class_nonvanishing(from_values(l2, -1, {l2->one(), l2->zero()}));
  EXPECT_TRUE(w.identity_holds);
  EXPECT_EQ(w.y, named(*l2, "x2"));
  EXPECT_EQ(w.d_top, named(*l2, "x2"));

  const auto l3 = build_exterior(3);
  const auto w3 = top_class_nonvanishing(from_values(l3, -1, {l3->zero(), l3->zero(), l3->one()}));
  EXPECT_TRUE(w3.identity_holds);
  EXPECT_EQ(w3.d_top, named(*l3, "x1x2"));

  for (int n = 2; n <= 4; ++n) {
    const auto r = build_exterior(n);
    const Element top = r->basis_element(r->dim() - 1);
    int nonzero = 0;
    for (const auto& d : enumerate_derivations(r, -1)) {
      if (d.is_zero()) continue;
      ++nonzero;
      EXPECT_FALSE(d.apply(top).is_zero());
      EXPECT_TRUE(top_class_nonvanishing(d).identity_holds);
    }
    EXPECT_EQ(nonzero, (1 << n) - 1);
  }
  try {
    top_class_nonvanishing(Derivation::zero(l2, -1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroDerivation);
  }
  try {
    top_class_nonvanishing(Derivation::zero(l2, -2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotShiftMinusOne);
  }
}
