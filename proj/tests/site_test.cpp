#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "fieldtopos/io.hpp"
#include "fieldtopos/site.hpp"
#include "oracles.hpp"

using namespace fieldtopos;

namespace {

const std::vector<std::string> kCorpus = {"one",   "discrete2", "chain2", "chain3", "cospan",     "wedge",       "fork3",
                                          "parallel", "square", "z2",     "idempotent", "retract", "cospan_under"};

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

FinCategory load(const std::string& name) { return io::category_from_json(io::read_json_file(fixture(name))); }

SitePtr site_of(const std::string& name) { return make_site(load(name)); }

int obj(const Site& s, const std::string& name) { return *s.category().find_object(name); }
int mor(const Site& s, const std::string& id) { return *s.category().find_morphism(id); }

int sieve(const Site& s, const std::string& d, std::vector<std::string> gens) {
  std::vector<int> ids;
  for (const auto& g : gens) ids.push_back(mor(s, g));
  return s.generate(obj(s, d), ids);
}

Topology with_covers(const SitePtr& s, const std::string& d, std::vector<std::vector<std::string>> covers) {
  Precoverage pre(s->object_count());
  for (auto& gens : covers) pre[obj(*s, d)].push_back(sieve(*s, d, gens));
  return saturate_topology(s, pre);
}

}  // namespace

TEST(Category, ValidateExamples) {
  EXPECT_EQ(load("one").morphism_count(), 1u);
  EXPECT_EQ(load("cospan").morphism_count(), 5u);
  for (const auto& name : kCorpus) EXPECT_NO_THROW(load(name)) << name;

  auto bad = io::category_description_from_json(io::read_json_file(fixture("chain3")));
  bad.compose = {{"b->c", "a->b", "a->b"}};
  try {
    validate_category(bad);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DanglingMorphism);
  }
  auto missing = io::category_description_from_json(io::read_json_file(fixture("cospan")));
  missing.identities.erase("p");
  try {
    validate_category(missing);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingIdentity);
  }
}

TEST(Category, NonAssociativeTable) {
  // one object, {1, a, b}: a∘a = b, a∘b = a, b∘a = b, b∘b = b.
  // (a∘a)∘a = b∘a = b but a∘(a∘a) = a∘b = a.
  CategoryDescription d;
  d.objects = {"*"};
  d.morphisms = {{"1", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}};
  d.identities = {{"*", "1"}};
  d.compose = {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "b"}};
  try {
    validate_category(d);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonAssociative);
  }
}

TEST(Category, OppositeIsInvolution) {
  for (const auto& name : kCorpus) {
    auto C = load(name);
    EXPECT_EQ(C.opposite().opposite(), C);
  }
}

TEST(Category, JsonRoundTrip) {
  for (const auto& name : kCorpus) {
    auto C = load(name);
    EXPECT_EQ(io::category_from_json(io::to_json(C)), C) << name;
  }
}

TEST(Sieve, GenerateExamples) {
  auto s = site_of("cospan");
  const int p = obj(*s, "p");
  EXPECT_EQ(sieve(*s, "p", {"id_p"}), s->maximal_sieve(p));
  EXPECT_EQ(s->generate(p, {}), s->empty_sieve(p));
  EXPECT_EQ(s->members(p, sieve(*s, "p", {"q->p"})), std::vector<int>{mor(*s, "q->p")});
  try {
    s->generate(p, {mor(*s, "id_q")});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidGenerator);
  }
}

TEST(Sieve, EnumeratedSievesAreExactlyTheDownClosedSets) {
  for (const auto& name : kCorpus) {
    auto s = site_of(name);
    const auto& C = s->category();
    for (int d = 0; d < static_cast<int>(s->object_count()); ++d) {
      const auto& into = s->into(d);
      std::size_t closed = 0;
      for (std::uint32_t mask = 0; mask < (1u << into.size()); ++mask) {
        bool ok = true;
        for (std::size_t j = 0; j < into.size() && ok; ++j)
          if (mask >> j & 1u)
            for (int g : s->into(C.src(into[j])))
              ok = ok && (mask >> s->local_index(C.compose(into[j], g)) & 1u);
        closed += ok;
      }
      EXPECT_EQ(closed, s->sieve_count(d)) << name;
    }
  }
}

TEST(Saturate, Examples) {
  auto s = site_of("cospan");
  auto trivial = saturate_topology(s, Precoverage(s->object_count()));
  EXPECT_EQ(trivial, trivial_topology(s));
  EXPECT_EQ(trivial.cover_count(), 3u);
  auto j1 = with_covers(s, "p", {{"q->p", "r->p"}});
  const int p = obj(*s, "p");
  EXPECT_TRUE(j1.covers(p, sieve(*s, "p", {"q->p", "r->p"})));
  EXPECT_FALSE(j1.covers(p, sieve(*s, "p", {"q->p"})));
  EXPECT_EQ(j1.cover_count(), 4u);
  EXPECT_EQ(saturate(j1), j1);
}

TEST(Saturate, MatchesLeastTopologyByBruteForce) {
  for (const auto& name : kCorpus) {
    auto s = site_of(name);
    auto all = oracle::all_topologies(s);
    for (const auto& J : all) EXPECT_FALSE(topology_violation(J).has_value()) << name;
    // saturating any single sieve gives the least brute-force topology containing it
    for (int d = 0; d < static_cast<int>(s->object_count()); ++d)
      for (int t = 0; t < static_cast<int>(s->sieve_count(d)); ++t) {
        Precoverage pre(s->object_count());
        pre[d].push_back(t);
        auto K = saturate_topology(s, pre);
        const Topology* least = nullptr;
        for (const auto& J : all)
          if (J.covers(d, t) && (!least || J.cover_count() < least->cover_count())) least = &J;
        ASSERT_NE(least, nullptr);
        EXPECT_EQ(K, *least) << name;
      }
  }
}

TEST(Closure, Examples) {
  auto s = site_of("cospan");
  auto trivial = trivial_topology(s);
  const int p = obj(*s, "p");
  for (int t = 0; t < static_cast<int>(s->sieve_count(p)); ++t) EXPECT_EQ(closure(trivial, p, t), t);
  auto j1 = with_covers(s, "p", {{"q->p", "r->p"}});
  const int q = sieve(*s, "p", {"q->p"});
  EXPECT_EQ(closure(j1, p, q), q);
  EXPECT_EQ(closure(j1, p, sieve(*s, "p", {"q->p", "r->p"})), s->maximal_sieve(p));
}

TEST(Closure, PropertiesOnEveryTopology) {
  for (const auto& name : kCorpus) {
    auto s = site_of(name);
    for (const auto& J : oracle::all_topologies(s))
      for (int d = 0; d < static_cast<int>(s->object_count()); ++d) {
        const int count = static_cast<int>(s->sieve_count(d));
        for (int a = 0; a < count; ++a) {
          const int ca = closure(J, d, a);
          EXPECT_TRUE(s->subset(d, a, ca));
          EXPECT_EQ(closure(J, d, ca), ca);
          EXPECT_EQ(J.covers(d, a), ca == s->maximal_sieve(d));
          for (int b = 0; b < count; ++b)
            if (s->subset(d, a, b)) EXPECT_TRUE(s->subset(d, ca, closure(J, d, b)));
        }
      }
  }
}

TEST(Heyting, Examples) {
  auto s = site_of("cospan");
  auto trivial = trivial_topology(s);
  const int p = obj(*s, "p");
  EXPECT_EQ(heyting_neg(trivial, p, sieve(*s, "p", {"q->p"})), sieve(*s, "p", {"r->p"}));
  EXPECT_EQ(heyting_neg(trivial, p, s->maximal_sieve(p)), s->empty_sieve(p));
  EXPECT_EQ(heyting_neg(trivial, p, s->empty_sieve(p)), s->maximal_sieve(p));
}

TEST(Heyting, PropertiesOnEveryTopology) {
  for (const auto& name : kCorpus) {
    auto s = site_of(name);
    for (const auto& J : oracle::all_topologies(s))
      for (int d = 0; d < static_cast<int>(s->object_count()); ++d) {
        auto closed = closed_sieves(J, d);
        const int bottom = closure(J, d, s->empty_sieve(d));
        EXPECT_EQ(heyting_neg(J, d, bottom, closed), s->maximal_sieve(d));
        for (int a : closed) {
          const int na = heyting_neg(J, d, a, closed);
          EXPECT_EQ(heyting_neg(J, d, heyting_neg(J, d, na, closed), closed), na);
          for (int b : closed)
            if (s->subset(d, a, b)) EXPECT_TRUE(s->subset(d, heyting_neg(J, d, b, closed), na));
        }
      }
  }
}

TEST(DeMorgan, Examples) {
  auto one = site_of("one");
  EXPECT_TRUE(is_demorgan(trivial_topology(one)).holds);
  auto s = site_of("cospan");
  auto rep = is_demorgan(trivial_topology(s));
  EXPECT_FALSE(rep.holds);
  EXPECT_EQ(rep.object, obj(*s, "p"));
  EXPECT_EQ(rep.sieve, sieve(*s, "p", {"q->p"}));
  EXPECT_TRUE(is_demorgan(with_covers(s, "p", {{"q->p", "r->p"}})).holds);
}

TEST(Dense, Examples) {
  auto s = site_of("cospan");
  EXPECT_EQ(dense_topology(trivial_topology(s)), with_covers(s, "p", {{"q->p", "r->p"}}));
  auto one = site_of("one");
  EXPECT_EQ(dense_topology(trivial_topology(one)), trivial_topology(one));
  auto chain = site_of("chain2");
  EXPECT_EQ(dense_topology(trivial_topology(chain)), with_covers(chain, "b", {{"a->b"}}));
}

TEST(Dense, IsDenseOverExamples) {
  auto s = site_of("cospan");
  auto trivial = trivial_topology(s);
  auto j1 = with_covers(s, "p", {{"q->p", "r->p"}});
  EXPECT_TRUE(is_dense_over(trivial, trivial));
  EXPECT_TRUE(is_dense_over(trivial, j1));
  EXPECT_FALSE(is_dense_over(trivial, with_covers(s, "p", {{"q->p"}})));
  try {
    is_dense_over(j1, trivial);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotARefinement);
  }
}

TEST(Dense, LargestDenseAndBooleanOnCorpus) {
  for (const auto& name : kCorpus) {
    auto s = site_of(name);
    auto all = oracle::all_topologies(s);
    for (const auto& J : all) {
      auto D = dense_topology(J);
      EXPECT_FALSE(topology_violation(D).has_value());
      EXPECT_TRUE(is_boolean(D)) << name;
      EXPECT_TRUE(is_dense_over(J, D));
      for (const auto& K : all)
        if (J.subset_of(K) && is_dense_over(J, K)) EXPECT_TRUE(K.subset_of(D)) << name;
      if (is_boolean(J)) EXPECT_TRUE(is_demorgan(J).holds);
    }
  }
}

TEST(DeMorganization, Examples) {
  auto s = site_of("cospan");
  auto j1 = with_covers(s, "p", {{"q->p", "r->p"}});
  auto dm = demorganization(trivial_topology(s));
  EXPECT_EQ(dm, j1);
  EXPECT_TRUE(is_boolean(dm));
  EXPECT_EQ(demorganization(j1), j1);
  auto chain = site_of("chain2");
  EXPECT_EQ(demorganization(trivial_topology(chain)), trivial_topology(chain));
}

TEST(DeMorganization, LeastDenseDeMorganByBruteForce) {
  for (const auto& name : kCorpus) {
    auto s = site_of(name);
    auto all = oracle::all_topologies(s);
    for (const auto& J : all) {
      auto M = demorganization(J);
      EXPECT_TRUE(J.subset_of(M));
      EXPECT_TRUE(is_dense_over(J, M));
      EXPECT_TRUE(is_demorgan(M).holds);
      for (const auto& K : all)
        if (J.subset_of(K) && is_dense_over(J, K) && is_demorgan(K).holds) EXPECT_TRUE(M.subset_of(K)) << name;
    }
  }
}

TEST(Boolean, Examples) {
  auto s = site_of("cospan");
  EXPECT_TRUE(is_boolean(with_covers(s, "p", {{"q->p", "r->p"}})));
  EXPECT_FALSE(is_boolean(trivial_topology(s)));
  EXPECT_TRUE(is_boolean(trivial_topology(site_of("one"))));
}

TEST(Ore, Examples) {
  EXPECT_TRUE(ore_check(load("chain3")).holds);
  auto wedge = load("wedge");
  auto rep = ore_check(wedge);
  EXPECT_FALSE(rep.holds);
  EXPECT_EQ(wedge.morphism_id(rep.f), "p->q");
  EXPECT_EQ(wedge.morphism_id(rep.g), "p->r");
  EXPECT_TRUE(ore_check(load("square")).holds);
}

TEST(Ore, EquivalentToDeMorganOnOppositeSite) {
  for (const auto& name : kCorpus) {
    auto C = load(name);
    EXPECT_EQ(ore_check(C).holds, is_demorgan(trivial_topology(make_site(C.opposite()))).holds) << name;
  }
}

TEST(Atomic, Examples) {
  EXPECT_NO_THROW(atomic_topology(load("chain2")));
  try {
    atomic_topology(load("wedge"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAtomicizable);
  }
  auto one = load("one");
  EXPECT_EQ(atomic_topology(one), trivial_topology(make_site(one.opposite())));
}

TEST(Atomic, EqualsDenseWhenOre) {
  for (const auto& name : kCorpus) {
    auto C = load(name);
    if (!ore_check(C).holds) {
      EXPECT_THROW(atomic_topology(C), Error);
      continue;
    }
    auto A = atomic_topology(C);
    EXPECT_EQ(A, dense_topology(trivial_topology(A.site()))) << name;
  }
}

TEST(Sheaf, Examples) {
  auto s = site_of("cospan");
  auto j1 = with_covers(s, "p", {{"q->p", "r->p"}});
  const auto& C = s->category();
  for (int c = 0; c < static_cast<int>(C.object_count()); ++c) {
    EXPECT_TRUE(is_sheaf(j1, representable(C, c)));
    EXPECT_TRUE(is_sheaf(trivial_topology(s), representable(C, c)));
  }
  auto two = io::presheaf_from_json(C, io::read_json_file(fixture("cospan_const2")));
  EXPECT_FALSE(is_sheaf(j1, two));
  EXPECT_TRUE(is_sheaf(trivial_topology(s), two));
  auto broken = two;
  broken.action[mor(*s, "q->p")] = {0, 5};
  try {
    is_sheaf(j1, broken);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidPresheaf);
  }
}

TEST(Sheaf, RepresentablesUnderTrivialTopologyAndRoundTrip) {
  for (const auto& name : kCorpus) {
    auto s = site_of(name);
    const auto& C = s->category();
    for (int c = 0; c < static_cast<int>(C.object_count()); ++c) {
      auto P = representable(C, c);
      EXPECT_NO_THROW(validate_presheaf(C, P));
      EXPECT_TRUE(is_sheaf(trivial_topology(s), P));
      auto back = io::presheaf_from_json(C, io::to_json(C, P));
      EXPECT_EQ(back.sets, P.sets);
      EXPECT_EQ(back.action, P.action);
    }
  }
}

TEST(Rigidity, Examples) {
  auto s = site_of("cospan");
  auto trivial = rigidity_check(trivial_topology(s));
  EXPECT_TRUE(trivial.rigid);
  EXPECT_EQ(trivial.irreducibles.size(), 3u);
  auto j1 = rigidity_check(with_covers(s, "p", {{"q->p", "r->p"}}));
  EXPECT_TRUE(j1.rigid);
  EXPECT_EQ(j1.irreducibles, (std::vector<int>{obj(*s, "q"), obj(*s, "r")}));
}

TEST(Topology, JsonRoundTrip) {
  for (const auto& name : kCorpus) {
    auto s = site_of(name);
    for (const auto& J : oracle::all_topologies(s)) EXPECT_EQ(io::topology_from_json(s, io::to_json(J)), J);
  }
}
