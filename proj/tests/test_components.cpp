#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace acp;

namespace {

const Quadruple kPeople = make_quadruple(-6, 11, 14, 15);
const Quadruple kSmall = make_quadruple(-2, 3, 6, 7);

// Maximum prime, the other three entries not prime, checked by trial division.
bool naive_prime_root(const Quadruple& q) {
  Quadruple s = q.sorted();
  if (!oracle::trial_prime(s[3])) return false;
  return !oracle::trial_prime(s[0]) && !oracle::trial_prime(s[1]) && !oracle::trial_prime(s[2]);
}

}  // namespace

TEST(PrimeRoot, Examples) {
  EXPECT_FALSE(is_prime_root(kPeople));  // 11 is prime and not the maximum
  EXPECT_TRUE(is_prime_root(make_quadruple(59, -6, 14, 15)));
  EXPECT_TRUE(is_prime_root(make_quadruple(1, 4, 9, 37)));
  EXPECT_FALSE(is_prime_root(make_quadruple(3, 4, 9, 37)));
  EXPECT_FALSE(is_prime_root(make_quadruple(0, 0, 1, 1)));
}

TEST(Extract, SeedElevenFrozen) {
  ComponentSnapshot s = extract_component(kPeople, 11, 10000);
  EXPECT_EQ(s.members.size(), 123u);
  EXPECT_EQ(s.thickening.size(), 1699u);
  EXPECT_TRUE(s.touches_root);
  EXPECT_FALSE(s.root_valid);
  std::vector<i64> head(s.member_curvatures.begin(), s.member_curvatures.begin() + 8);
  EXPECT_EQ(head, (std::vector<i64>{11, 23, 47, 71, 107, 227, 227, 263}));
  for (i64 v : s.member_curvatures) EXPECT_TRUE(oracle::trial_prime(v));
  EXPECT_THROW(extract_component(kPeople, 15, 10000), Error);
}

TEST(Extract, MembersAreConnectedAndClosed) {
  // every prime neighbor of a member is a member; every member reaches the seed
  const i64 X = 5000;
  CircleTable t = build_circle_table(kPeople, X);
  ComponentSnapshot s = extract_component(t, find_circle(t, 11));
  std::set<i64> in(s.members.begin(), s.members.end());
  std::map<i64, std::vector<i64>> adj;
  enumerate_orbit(kPeople, X, [&](const CircleRecord& r, const Quadruple&) {
    if (r.root_slot) {
      for (int k = 0; k < 4; ++k)
        if (k != r.root_slot - 1) adj[r.id].push_back(k);
      return;
    }
    for (int k = 0; k < 3; ++k) {
      adj[r.id].push_back(r.parents[static_cast<size_t>(k)]);
      adj[r.parents[static_cast<size_t>(k)]].push_back(r.id);
    }
  });
  auto prime = [&](i64 id) {
    i64 c = t.curvature[static_cast<size_t>(id)];
    return c > 2 && oracle::trial_prime(c);
  };
  std::set<i64> seen{find_circle(t, 11)};
  std::vector<i64> todo{find_circle(t, 11)};
  while (!todo.empty()) {
    i64 u = todo.back();
    todo.pop_back();
    for (i64 v : adj[u])
      if (prime(v) && seen.insert(v).second) todo.push_back(v);
  }
  EXPECT_EQ(seen, in);
}

TEST(Extract, NonRootComponentHasValidRoot) {
  ComponentSnapshot s = extract_component(kPeople, 59, 100000);
  EXPECT_EQ(s.members.size(), 114u);
  ASSERT_TRUE(s.root_quadruple.has_value());
  EXPECT_TRUE(s.root_valid);
  EXPECT_TRUE(naive_prime_root(*s.root_quadruple));
  EXPECT_EQ(s.root_quadruple->max(), 59);
}

TEST(Scan, AgreesWithUnionFind) {
  for (auto [root, seed] : {std::pair{kPeople, i64{11}}, std::pair{kSmall, i64{3}}}) {
    const i64 X = 100000;
    ComponentSnapshot s = extract_component(root, seed, X);
    ScanOptions opt;
    opt.grid = {X};
    ComponentScan c = scan_component(root, ComponentTarget{}, opt);
    EXPECT_EQ(c.members[0], static_cast<i64>(s.members.size())) << format_quadruple(root);
    EXPECT_EQ(c.thickened[0], static_cast<i64>(s.members.size() + s.thickening.size())) << format_quadruple(root);
  }
}

TEST(Scan, WordTargetAgreesWithUnionFind) {
  const i64 X = 100000;
  Census census = component_census(kPeople, X);
  CircleTable t = build_circle_table(kPeople, X);
  int checked = 0;
  for (const auto& c : census.components) {
    if (c.label == 0 || c.members < 30) continue;
    // curvatures repeat, so locate the seed by its birth quadruple
    i64 id = -1;
    enumerate_orbit(kPeople, X, [&](const CircleRecord& r, const Quadruple& q) {
      if (id < 0 && r.root_slot == 0 && q == c.birth) id = r.id;
    });
    ASSERT_GE(id, 0);
    ComponentSnapshot s = extract_component(t, id);
    ScanOptions opt;
    opt.grid = {X};
    ComponentScan sc = scan_component(kPeople, ComponentTarget{false, c.word}, opt);
    EXPECT_EQ(sc.members[0], c.members);
    EXPECT_EQ(sc.members[0], static_cast<i64>(s.members.size()));
    EXPECT_EQ(sc.thickened[0], static_cast<i64>(s.members.size() + s.thickening.size()));
    if (++checked == 4) break;
  }
  EXPECT_EQ(checked, 4);
}

TEST(Scan, GridIsMonotone) {
  ScanOptions opt;
  opt.grid = {1000, 10000, 100000};
  ComponentScan c = scan_component(kPeople, ComponentTarget{}, opt);
  for (size_t k = 0; k < c.grid.size(); ++k) {
    ComponentScan one = scan_component(kPeople, ComponentTarget{}, ScanOptions{{c.grid[k]}, 0, 0, {}, nullptr});
    EXPECT_EQ(one.members[0], c.members[k]);
    EXPECT_EQ(one.thickened[0], c.thickened[k]);
    if (k) {
      EXPECT_LE(c.members[k - 1], c.members[k]);
    }
  }
}

TEST(Census, PrimeRootsMatchRootCount) {
  for (auto root : {kPeople, kSmall}) {
    const i64 X = 100000;
    Census c = component_census(root, X);
    EXPECT_EQ(c.label_conflicts, 0);
    i64 roots = 0;
    for (const auto& s : c.components) {
      roots += s.prime_root;
      if (s.prime_root) {
        ASSERT_TRUE(naive_prime_root(s.birth));
      }
    }
    EXPECT_EQ(roots, count_prime_roots(root, X).nroot);
  }
}

TEST(RootCount, FrozenAndIdentity) {
  RootCount r = count_prime_roots(kSmall, 1000000);
  EXPECT_EQ(r.nroot, 611482);
  EXPECT_EQ(r.sigma1 - r.sigma2, r.nroot);
  RootCount w = count_prime_roots(kSmall, 1000000, 3);
  EXPECT_EQ(w.nroot, r.nroot);
  EXPECT_EQ(w.sigma1, r.sigma1);
}

TEST(RootCount, MatchesSerialRecount) {
  for (auto root : {kPeople, kSmall, make_quadruple(-1, 2, 2, 3)}) {
    const i64 X = 20000;
    i64 n = naive_prime_root(root);
    enumerate_orbit(root, X, [&](const CircleRecord& r, const Quadruple& q) {
      if (r.root_slot == 0) n += naive_prime_root(q);
    });
    RootCount c = count_prime_roots(root, X);
    EXPECT_EQ(c.nroot, n) << format_quadruple(root);
    EXPECT_EQ(c.sigma1 - c.sigma2, c.nroot);
  }
}

TEST(Coverage, Examples) {
  ComponentSnapshot s = extract_component(kPeople, 11, 1000000);
  EXPECT_TRUE(prime_coverage(s, 7).missing.empty());
  EXPECT_EQ(prime_coverage(s, 2).present.members(), (std::vector<i64>{1}));
  Coverage th = thickened_coverage(s, 24);
  for (i64 r : th.present.members()) EXPECT_TRUE(admissible_residues(kPeople, 24).contains(r));
  EXPECT_TRUE(th.missing.empty());
}

TEST(Kappa2, EmptyAndUnionBound) {
  EXPECT_EQ(two_layer_kappa2(kPeople, 2, 2, 1000).distinct, 0);
  Kappa2 k = two_layer_kappa2(kPeople, 2, 1000, 100000, true);
  EXPECT_LE(k.distinct, k.total);
  EXPECT_EQ(k.distinct, oracle::merged_distinct(k.sets, 100000));
  ASSERT_EQ(k.sets.size(), k.layer1.size());
  for (i64 a : k.layer1) EXPECT_TRUE(oracle::trial_prime(a));
}

TEST(Kappa2, FrozenAtOneMillion) {
  Kappa2 k = two_layer_kappa2(kPeople, 2, 1000, 1000000, true);
  EXPECT_EQ(k.distinct, 67227);
  EXPECT_EQ(k.total, 73841);
  EXPECT_EQ(k.distinct, oracle::merged_distinct(k.sets, 1000000));
  EXPECT_GE(k.distinct, 50000);  // at least 0.05 X
}
