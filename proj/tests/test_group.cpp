#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "qgft/group.hpp"

using namespace qgft;

namespace {

using Table = std::vector<std::vector<std::size_t>>;

GroupErrorKind kind_of(const Table& t) {
  try {
    FiniteGroup::from_cayley_table(t);
  } catch (const GroupError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "table accepted";
  return GroupErrorKind::malformed_table;
}

bool row_matches(const ComplexMatrix& chars, const std::vector<Complex>& row) {
  for (Index j = 0; j < chars.rows(); ++j) {
    bool same = true;
    for (Index x = 0; x < chars.cols(); ++x) same = same && std::abs(chars(j, x) - row[static_cast<std::size_t>(x)]) < 1e-12;
    if (same) return true;
  }
  return false;
}

// All reduced Latin squares of order n (row 0 and column 0 in natural order).
void reduced_latin_squares(std::size_t n, Table& t, std::size_t cell, std::vector<Table>& out) {
  if (cell == n * n) {
    out.push_back(t);
    return;
  }
  const std::size_t r = cell / n;
  const std::size_t c = cell % n;
  if (r == 0 || c == 0) {
    t[r][c] = r == 0 ? c : r;
    reduced_latin_squares(n, t, cell + 1, out);
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    bool free = true;
    for (std::size_t k = 0; k < c && free; ++k) free = t[r][k] != v;
    for (std::size_t k = 0; k < r && free; ++k) free = t[k][c] != v;
    if (!free) continue;
    t[r][c] = v;
    reduced_latin_squares(n, t, cell + 1, out);
  }
}

bool two_sided_inverses(const Table& t) {
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b)
      if (t[a][b] == 0 && t[b][a] != 0) return false;
  return true;
}

bool associative(const Table& t) {
  const std::size_t n = t.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
  return true;
}

}  // namespace

TEST(Builtins, TrivialGroup) {
  const FiniteGroup g = FiniteGroup::cyclic(1);
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_TRUE(g.is_abelian());
}

TEST(Builtins, CyclicFourAddsModFour) {
  const FiniteGroup g = FiniteGroup::cyclic(4);
  EXPECT_EQ(g.mult(3, 2), 1u);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) EXPECT_EQ(g.mult(a, b), (a + b) % 4);
  EXPECT_EQ(g.inv(GroupElement{1}), GroupElement{3});
}

TEST(Builtins, SymmetricThreeIsNonAbelian) {
  const FiniteGroup g = FiniteGroup::symmetric(3);
  EXPECT_EQ(g.order(), 6u);
  EXPECT_FALSE(g.is_abelian());
  bool found = false;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) found = found || g.mult(a, b) != g.mult(b, a);
  EXPECT_TRUE(found);
}

TEST(Builtins, EveryBuiltinSatisfiesTheAxioms) {
  std::vector<FiniteGroup> groups;
  for (std::size_t n = 1; n <= 24; ++n) groups.push_back(FiniteGroup::cyclic(n));
  for (std::size_t m = 1; m <= 12; ++m) groups.push_back(FiniteGroup::dihedral(m));
  for (std::size_t k = 1; k <= 4; ++k) groups.push_back(FiniteGroup::symmetric(k));
  groups.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::symmetric(3)));
  for (const auto& g : groups) {
    EXPECT_EQ(find_axiom_violation(g), "") << "order " << g.order();
    // the stored table reproduces itself through the validating constructor
    const FiniteGroup again = FiniteGroup::from_cayley_table(g.table());
    EXPECT_EQ(again.table(), g.table());
  }
  EXPECT_EQ(FiniteGroup::symmetric(4).order(), 24u);
  EXPECT_FALSE(FiniteGroup::dihedral(3).is_abelian());
  EXPECT_TRUE(FiniteGroup::dihedral(2).is_abelian());
  EXPECT_EQ(FiniteGroup::dihedral(4).order(), 8u);
}

TEST(Builtins, DihedralRelations) {
  for (std::size_t m = 2; m <= 6; ++m) {
    const FiniteGroup g = FiniteGroup::dihedral(m);
    const std::size_t r = 1;
    const std::size_t s = m;
    std::size_t power = g.identity();
    for (std::size_t k = 0; k < m; ++k) power = g.mult(power, r);
    EXPECT_EQ(power, g.identity());
    EXPECT_EQ(g.mult(s, s), g.identity());
    EXPECT_EQ(g.mult(g.mult(s, r), s), g.inv(r));
  }
}

TEST(Builtins, DirectProductIsComponentwise) {
  const FiniteGroup a = FiniteGroup::cyclic(3);
  const FiniteGroup b = FiniteGroup::symmetric(3);
  const FiniteGroup p = FiniteGroup::direct_product(a, b);
  ASSERT_EQ(p.order(), 18u);
  for (std::size_t x = 0; x < 18; ++x)
    for (std::size_t y = 0; y < 18; ++y)
      EXPECT_EQ(p.mult(x, y), a.mult(x / 6, y / 6) * 6 + b.mult(x % 6, y % 6));
}

TEST(Builtins, ParameterRange) {
  EXPECT_THROW(FiniteGroup::cyclic(0), GroupError);
  EXPECT_THROW(FiniteGroup::cyclic(25), GroupError);
  EXPECT_THROW(FiniteGroup::dihedral(0), GroupError);
  EXPECT_THROW(FiniteGroup::dihedral(13), GroupError);
  EXPECT_THROW(FiniteGroup::symmetric(5), GroupError);
  try {
    FiniteGroup::symmetric(5);
  } catch (const GroupError& e) {
    EXPECT_EQ(e.kind(), GroupErrorKind::out_of_range);
  }
}

TEST(CayleyTable, CyclicTwoAccepted) {
  const FiniteGroup g = FiniteGroup::from_cayley_table({{0, 1}, {1, 0}});
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.inv(1), 1u);
}

TEST(CayleyTable, IdentityNeedNotBeZero) {
  // Z/3 relabelled so that the identity is element 2.
  const FiniteGroup g = FiniteGroup::from_cayley_table({{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
  EXPECT_EQ(g.identity(), 2u);
  EXPECT_EQ(find_axiom_violation(g), "");
}

TEST(CayleyTable, RepeatedEntryIsNotLatin) {
  EXPECT_EQ(kind_of({{0, 1}, {1, 1}}), GroupErrorKind::not_latin_square);
}

TEST(CayleyTable, LatinSquareWithoutIdentity) {
  // x*y = x - y mod 6: a Latin square whose right identity 0 is not a left identity.
  Table t(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) t[a][b] = (a + 6 - b) % 6;
  EXPECT_EQ(kind_of(t), GroupErrorKind::no_identity);
  // Left-zero semigroup x*y = x: associative, no identity.
  Table lz(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a) std::fill(lz[a].begin(), lz[a].end(), a);
  EXPECT_EQ(kind_of(lz), GroupErrorKind::no_identity);
}

TEST(CayleyTable, AssociativeLatinSquaresAlwaysHaveAnIdentity) {
  // Column-rotated reduced squares of order 4: the associative ones must be accepted as groups.
  std::vector<Table> reduced;
  Table scratch(4, std::vector<std::size_t>(4));
  reduced_latin_squares(4, scratch, 0, reduced);
  std::size_t associative_count = 0;
  for (const Table& t : reduced) {
    Table shuffled = t;
    for (auto& row : shuffled) std::rotate(row.begin(), row.begin() + 1, row.end());
    if (!associative(shuffled)) continue;
    ++associative_count;
    EXPECT_NO_THROW(FiniteGroup::from_cayley_table(shuffled));
  }
  EXPECT_GT(associative_count, 0u);
}

TEST(CayleyTable, OrderFiveLoopsClassifiedByBruteForce) {
  std::vector<Table> loops;
  Table scratch(5, std::vector<std::size_t>(5));
  reduced_latin_squares(5, scratch, 0, loops);
  ASSERT_EQ(loops.size(), 56u);
  std::size_t missing = 0, nonassoc = 0, groups = 0;
  for (const Table& t : loops) {
    if (!two_sided_inverses(t)) {
      EXPECT_EQ(kind_of(t), GroupErrorKind::missing_inverse);
      ++missing;
    } else if (!associative(t)) {
      EXPECT_EQ(kind_of(t), GroupErrorKind::not_associative);
      ++nonassoc;
    } else {
      EXPECT_NO_THROW(FiniteGroup::from_cayley_table(t));
      ++groups;
    }
  }
  EXPECT_GT(missing, 0u);
  EXPECT_GT(nonassoc, 0u);
  EXPECT_EQ(groups, 6u);  // relabellings of Z/5 fixing 0: 4!/|Aut(Z/5)| = 24/4
}

TEST(CayleyTable, MalformedShapes) {
  EXPECT_EQ(kind_of({}), GroupErrorKind::malformed_table);
  EXPECT_EQ(kind_of({{0, 1}, {1}}), GroupErrorKind::malformed_table);
  EXPECT_EQ(kind_of({{0, 1}, {1, 2}}), GroupErrorKind::malformed_table);
}

TEST(CayleyTable, ErrorNamesAreDistinct) {
  std::set<std::string> names;
  for (auto k : {GroupErrorKind::malformed_table, GroupErrorKind::not_latin_square, GroupErrorKind::no_identity,
                 GroupErrorKind::missing_inverse, GroupErrorKind::not_associative, GroupErrorKind::out_of_range,
                 GroupErrorKind::non_abelian_input})
    names.insert(to_string(k));
  EXPECT_EQ(names.size(), 7u);
  EXPECT_EQ(to_string(GroupErrorKind::not_associative), "NotAssociative");
}

TEST(Characters, CyclicTwo) {
  const ComplexMatrix chi = FiniteGroup::cyclic(2).characters();
  ASSERT_EQ(chi.rows(), 2);
  EXPECT_TRUE(row_matches(chi, {1.0, 1.0}));
  EXPECT_TRUE(row_matches(chi, {1.0, -1.0}));
}

TEST(Characters, CyclicThreeRootsOfUnity) {
  const ComplexMatrix chi = FiniteGroup::cyclic(3).characters();
  for (int j = 0; j < 3; ++j) {
    std::vector<Complex> row;
    for (int k = 0; k < 3; ++k) row.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j * k / 3.0));
    EXPECT_TRUE(row_matches(chi, row)) << "j = " << j;
  }
}

TEST(Characters, HomomorphismsAndOrthogonality) {
  for (const FiniteGroup& g : {FiniteGroup::cyclic(8), FiniteGroup::dihedral(2),
                               FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(6))}) {
    const ComplexMatrix chi = g.characters();
    const auto n = static_cast<Index>(g.order());
    ASSERT_EQ(chi.rows(), n);
    for (Index j = 0; j < n; ++j)
      for (std::size_t x = 0; x < g.order(); ++x)
        for (std::size_t y = 0; y < g.order(); ++y)
          EXPECT_NEAR(std::abs(chi(j, static_cast<Index>(g.mult(x, y))) -
                               chi(j, static_cast<Index>(x)) * chi(j, static_cast<Index>(y))),
                      0.0, 1e-12);
    const ComplexMatrix gram = chi * chi.adjoint();
    EXPECT_LE((gram - static_cast<double>(n) * ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Characters, NonAbelianRejected) {
  try {
    FiniteGroup::symmetric(3).characters();
    FAIL() << "expected NonAbelianInput";
  } catch (const GroupError& e) {
    EXPECT_EQ(e.kind(), GroupErrorKind::non_abelian_input);
  }
}
