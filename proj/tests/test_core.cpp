#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace acp;

namespace {

const Quadruple kRoots[] = {make_quadruple(-1, 2, 2, 3), make_quadruple(-2, 3, 6, 7), make_quadruple(-6, 11, 14, 15),
                            make_quadruple(-47, 97, 100, 108)};

}

TEST(Descartes, KnownRootsVanish) {
  EXPECT_EQ(descartes_form(make_quadruple(-1, 2, 2, 3)), 0);
  EXPECT_EQ(descartes_form(make_quadruple(0, 0, 0, 0)), 0);
  EXPECT_EQ(descartes_form(make_quadruple(-47, 97, 100, 108)), 0);
  EXPECT_NE(descartes_form(make_quadruple(1, 2, 3, 4)), 0);
}

TEST(Descartes, OverflowIsAnError) {
  i64 big = i64{1} << 62;
  try {
    descartes_form(make_quadruple(big, big, big, big));
    FAIL() << "expected an overflow error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Overflow);
  }
}

TEST(Swap, Examples) {
  EXPECT_EQ(apply_swap(make_quadruple(-1, 2, 2, 3), 1), make_quadruple(15, 2, 2, 3));
  EXPECT_EQ(apply_swap(make_quadruple(-6, 11, 14, 15), 1), make_quadruple(86, 11, 14, 15));
  EXPECT_TRUE(is_descartes(make_quadruple(86, 11, 14, 15)));
}

TEST(Swap, InvolutionOnRandomOrbitElements) {
  std::mt19937_64 rng(7);
  for (const auto& root : kRoots)
    for (int n = 0; n < 2500; ++n) {
      Quadruple q = oracle::random_orbit_element(root, rng, static_cast<int>(rng() % 25));
      ASSERT_EQ(descartes_form(q), 0);
      for (int s = 1; s <= 4; ++s) {
        Quadruple t = apply_swap(q, s);
        ASSERT_EQ(t, oracle::swap(q, s));
        ASSERT_EQ(descartes_form(t), 0);
        ASSERT_EQ(apply_swap(t, s), q);
      }
    }
}

TEST(Primitive, Examples) {
  EXPECT_TRUE(is_primitive(make_quadruple(-1, 2, 2, 3)));
  EXPECT_FALSE(is_primitive(make_quadruple(-2, 4, 4, 6)));
  EXPECT_TRUE(is_primitive(make_quadruple(0, 0, 1, 1)));
}

TEST(Reduce, Examples) {
  Reduction r = reduce_to_root(make_quadruple(15, 2, 2, 3));
  EXPECT_EQ(r.root, make_quadruple(-1, 2, 2, 3));
  EXPECT_EQ(format_word(r.word), "[1]");
  EXPECT_TRUE(reduce_to_root(make_quadruple(-1, 2, 2, 3)).word.empty());
  Reduction s = reduce_to_root(make_quadruple(-47, 97, 100, 108));
  EXPECT_EQ(s.root, make_quadruple(-47, 97, 100, 108));
  EXPECT_TRUE(s.word.empty());
}

TEST(Reduce, RandomElementsReturnToTheirRoot) {
  std::mt19937_64 rng(11);
  for (const auto& root : kRoots)
    for (int n = 0; n < 200; ++n) {
      Quadruple q = oracle::random_orbit_element(root, rng, 1 + static_cast<int>(rng() % 20));
      Reduction r = reduce_to_root(q);
      EXPECT_EQ(r.root, root);
      EXPECT_TRUE(is_root(r.root));
      EXPECT_EQ(reduce_to_root(r.root).root, r.root);
      // replaying the word backwards from the root gives back a permutation of q
      Quadruple back = r.root;
      for (auto it = r.word.rbegin(); it != r.word.rend(); ++it) back = apply_swap(back, *it);
      EXPECT_EQ(back.sorted(), q.sorted());
    }
}

TEST(Parse, RoundTripAndErrors) {
  EXPECT_EQ(parse_quadruple("-6,11,14,15"), make_quadruple(-6, 11, 14, 15));
  EXPECT_EQ(format_quadruple(make_quadruple(-6, 11, 14, 15)), "-6,11,14,15");
  EXPECT_THROW(parse_quadruple("1,2,3"), Error);
  EXPECT_THROW(parse_quadruple("1,2,x,4"), Error);
}

TEST(Residues, SmallModuli) {
  ResidueClassSet two = admissible_residues(make_quadruple(-1, 2, 2, 3), 2);
  EXPECT_EQ(two.members(), (std::vector<i64>{0, 1}));
  EXPECT_EQ(admissible_residues(make_quadruple(-6, 11, 14, 15), 5).size(), 5u);
}

TEST(Residues, Mod24MatchesOrbitSample) {
  for (const auto& root : kRoots) {
    ResidueClassSet s = admissible_residues(root, 24);
    EXPECT_TRUE(s.size() == 6 || s.size() == 8);
    std::set<i64> seen;
    for (const auto& q : oracle::closure(root, 20000))
      for (i64 v : q.v) seen.insert(mod(v, 24));
    EXPECT_EQ(std::vector<i64>(seen.begin(), seen.end()), s.members());
  }
}

TEST(Residues, SameForEveryOrbitElement) {
  std::mt19937_64 rng(3);
  for (const auto& root : kRoots) {
    auto base = admissible_residues(root, 24);
    for (int n = 0; n < 5; ++n)
      EXPECT_EQ(admissible_residues(oracle::random_orbit_element(root, rng, 12), 24), base);
  }
}

TEST(Residues, TwoOddEntriesModTwo) {
  for (const auto& root : kRoots)
    for (u64 code : closure_states(root, 2)) {
      auto st = decode_state(code, 2);
      EXPECT_EQ(std::count(st.begin(), st.end(), 1), 2);
    }
}

TEST(Residues, Mod8Cases) {
  EXPECT_EQ(mod8_case(make_quadruple(-1, 2, 2, 3)), Mod8Case::Mixed37);
  EXPECT_EQ(mod8_case(make_quadruple(-6, 11, 14, 15)), Mod8Case::Mixed37);
  EXPECT_EQ(mod8_case(make_quadruple(-3, 5, 8, 8)), Mod8Case::All5);
}

TEST(Primality, OddPrimeCurvature) {
  EXPECT_TRUE(is_odd_prime_curvature(3));
  EXPECT_FALSE(is_odd_prime_curvature(2));
  EXPECT_FALSE(is_odd_prime_curvature(-7));
  EXPECT_FALSE(is_odd_prime_curvature(1));
}

TEST(Primality, AgreesWithSieveBelowTenMillion) {
  const i64 n = 10000000;
  auto ref = oracle::sieve(n);
  PrimeSieve s(n);
  for (i64 k = 0; k <= n; ++k) {
    ASSERT_EQ(is_prime(k), ref[static_cast<size_t>(k)] != 0) << k;
    ASSERT_EQ(s.is_prime(k), ref[static_cast<size_t>(k)] != 0) << k;
  }
}

TEST(Primality, LargeValues) {
  EXPECT_TRUE(is_prime(1000000007));
  EXPECT_TRUE(is_prime(2305843009213693951));  // 2^61 - 1
  EXPECT_FALSE(is_prime(3215031751));           // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime(i64{1000000007} * 998244353));
  for (i64 k = 1000000000000; k < 1000000000000 + 2000; ++k) EXPECT_EQ(is_prime(k), oracle::trial_prime(k));
}

TEST(PrimeCount, Values) {
  EXPECT_EQ(prime_pi(10), 4);
  EXPECT_EQ(prime_pi(1), 0);
  EXPECT_EQ(prime_pi(1000000), 78498);
  EXPECT_EQ(prime_pi(30000), oracle::naive_pi(30000));
  auto many = prime_pi_many({100, 10, 1000});
  EXPECT_EQ(many, (std::vector<i64>{25, 4, 168}));
}

TEST(Arith, CrtAndInverses) {
  auto [r, m] = crt({{2, 3}, {3, 5}, {2, 7}});
  EXPECT_EQ(m, 105);
  EXPECT_EQ(r, 23);
  EXPECT_EQ(mulmod(inv_mod(5, 49), 5, 49), 1);
  EXPECT_EQ(inv_mod(7, 49), 0);
  auto f = factor(3 * 3 * 3 * 11);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].p, 3);
  EXPECT_EQ(f[0].e, 3);
  EXPECT_EQ(f[1].q, 11);
}

TEST(Budget, EnvironmentOverride) {
  setenv("ACP_MEMORY_BUDGET_MB", "1", 1);
  EXPECT_THROW(check_budget(u64{2} << 20, "test"), Error);
  EXPECT_NO_THROW(check_budget(u64{1} << 19, "test"));
  unsetenv("ACP_MEMORY_BUDGET_MB");
}
