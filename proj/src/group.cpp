#include "qgft/group.hpp"

#include <algorithm>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>

namespace qgft {

std::string to_string(GroupErrorKind kind) {
  switch (kind) {
    case GroupErrorKind::malformed_table: return "MalformedTable";
    case GroupErrorKind::not_latin_square: return "NotLatinSquare";
    case GroupErrorKind::no_identity: return "NoIdentity";
    case GroupErrorKind::missing_inverse: return "MissingInverse";
    case GroupErrorKind::not_associative: return "NotAssociative";
    case GroupErrorKind::out_of_range: return "OutOfRange";
    case GroupErrorKind::non_abelian_input: return "NonAbelianInput";
  }
  return "GroupError";
}

GroupError::GroupError(GroupErrorKind kind, const std::string& detail)
    : Error(to_string(kind) + ": " + detail), kind_(kind) {}

namespace {

using Table = std::vector<std::size_t>;

std::string cell(std::size_t r, std::size_t c) {
  return "(row " + std::to_string(r) + ", column " + std::to_string(c) + ")";
}

std::size_t find_identity(std::size_t n, const Table& t) {
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      ok = t[e * n + a] == a && t[a * n + e] == a;
    }
    if (ok) return e;
  }
  // Report where the most promising candidate (a left identity, if any) breaks.
  for (std::size_t e = 0; e < n; ++e) {
    bool left = true;
    for (std::size_t a = 0; a < n && left; ++a) left = t[e * n + a] == a;
    if (!left) continue;
    for (std::size_t a = 0; a < n; ++a) {
      if (t[a * n + e] != a) {
        throw GroupError(GroupErrorKind::no_identity,
                         "element " + std::to_string(e) + " is a left identity but " + cell(a, e) +
                             " holds " + std::to_string(t[a * n + e]));
      }
    }
  }
  throw GroupError(GroupErrorKind::no_identity,
                   "no element e with e*a = a*e = a; row 0 differs from the header at " +
                       cell(0, t[0] == 0 ? 1 : 0));
}

void check_latin(std::size_t n, const Table& t) {
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::size_t> seen(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t v = t[r * n + c];
      if (seen[v] != n) {
        throw GroupError(GroupErrorKind::not_latin_square,
                         "value " + std::to_string(v) + " repeats in row " + std::to_string(r) +
                             " at " + cell(r, seen[v]) + " and " + cell(r, c));
      }
      seen[v] = c;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::size_t> seen(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      const std::size_t v = t[r * n + c];
      if (seen[v] != n) {
        throw GroupError(GroupErrorKind::not_latin_square,
                         "value " + std::to_string(v) + " repeats in column " + std::to_string(c) +
                             " at " + cell(seen[v], c) + " and " + cell(r, c));
      }
      seen[v] = r;
    }
  }
}

Table find_inverses(std::size_t n, const Table& t, std::size_t e) {
  Table inverse(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t right = n;
    for (std::size_t b = 0; b < n; ++b) {
      if (t[a * n + b] == e) right = b;
    }
    if (right == n) {
      throw GroupError(GroupErrorKind::missing_inverse,
                       "row " + std::to_string(a) + " never reaches the identity");
    }
    if (t[right * n + a] != e) {
      throw GroupError(GroupErrorKind::missing_inverse,
                       "element " + std::to_string(a) + " has right inverse " +
                           std::to_string(right) + " but " + cell(right, a) + " holds " +
                           std::to_string(t[right * n + a]));
    }
    inverse[a] = right;
  }
  return inverse;
}

void check_associative(std::size_t n, const Table& t) {
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = t[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t lhs = t[ab * n + c];
        const std::size_t rhs = t[a * n + t[b * n + c]];
        if (lhs != rhs) {
          throw GroupError(GroupErrorKind::not_associative,
                           "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                               std::to_string(c) + " = " + std::to_string(lhs) + " but " +
                               std::to_string(a) + "*(" + std::to_string(b) + "*" +
                               std::to_string(c) + ") = " + std::to_string(rhs));
        }
      }
    }
  }
}

}  // namespace

FiniteGroup::FiniteGroup(std::size_t order, std::vector<std::size_t> table)
    : order_(order), table_(std::move(table)) {
  const std::size_t n = order_;
  if (n == 0) throw GroupError(GroupErrorKind::malformed_table, "empty table");
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] >= n) {
      throw GroupError(GroupErrorKind::malformed_table,
                       "entry " + std::to_string(table_[i]) + " at " + cell(i / n, i % n) +
                           " is not an element index below " + std::to_string(n));
    }
  }
  identity_ = find_identity(n, table_);
  check_latin(n, table_);
  inverse_ = find_inverses(n, table_, identity_);
  check_associative(n, table_);
}

FiniteGroup FiniteGroup::from_cayley_table(const std::vector<std::vector<std::size_t>>& raw) {
  const std::size_t n = raw.size();
  Table flat;
  flat.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (raw[r].size() != n) {
      throw GroupError(GroupErrorKind::malformed_table,
                       "row " + std::to_string(r) + " has " + std::to_string(raw[r].size()) +
                           " entries, expected " + std::to_string(n));
    }
    flat.insert(flat.end(), raw[r].begin(), raw[r].end());
  }
  return FiniteGroup(n, std::move(flat));
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n < 1 || n > kMaxBuiltinOrder) {
    throw GroupError(GroupErrorKind::out_of_range,
                     "cyclic order must be in 1.." + std::to_string(kMaxBuiltinOrder));
  }
  Table t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  }
  return FiniteGroup(n, std::move(t));
}

FiniteGroup FiniteGroup::dihedral(std::size_t m) {
  if (m < 1 || 2 * m > kMaxBuiltinOrder) {
    throw GroupError(GroupErrorKind::out_of_range,
                     "dihedral parameter must be in 1.." + std::to_string(kMaxBuiltinOrder / 2));
  }
  const std::size_t n = 2 * m;
  Table t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t f = x / m;
    const std::size_t a = x % m;
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t g = y / m;
      const std::size_t b = y % m;
      const std::size_t k = f == 0 ? (a + b) % m : (a + m - b) % m;
      t[x * n + y] = ((f + g) % 2) * m + k;
    }
  }
  return FiniteGroup(n, std::move(t));
}

FiniteGroup FiniteGroup::symmetric(std::size_t k) {
  if (k < 1 || k > 4) throw GroupError(GroupErrorKind::out_of_range, "symmetric degree must be in 1..4");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  const std::size_t n = perms.size();
  Table t(n * n);
  std::vector<std::size_t> composed(k);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < k; ++i) composed[i] = perms[a][perms[b][i]];
      t[a * n + b] = index.at(composed);
    }
  }
  return FiniteGroup(n, std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.order();
  const std::size_t nh = h.order();
  const std::size_t n = ng * nh;
  if (n > kMaxBuiltinOrder) {
    throw GroupError(GroupErrorKind::out_of_range,
                     "direct product of order " + std::to_string(n) + " exceeds " +
                         std::to_string(kMaxBuiltinOrder));
  }
  Table t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      t[x * n + y] = g.mult(x / nh, y / nh) * nh + h.mult(x % nh, y % nh);
    }
  }
  return FiniteGroup(n, std::move(t));
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a) {
    for (std::size_t b = a + 1; b < order_; ++b) {
      if (mult(a, b) != mult(b, a)) return false;
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> FiniteGroup::table() const {
  std::vector<std::vector<std::size_t>> out(order_);
  for (std::size_t a = 0; a < order_; ++a) {
    out[a].assign(table_.begin() + static_cast<std::ptrdiff_t>(a * order_),
                  table_.begin() + static_cast<std::ptrdiff_t>((a + 1) * order_));
  }
  return out;
}

namespace {

// exp(2πi num/den), exact on quarter turns.
Complex root_of_unity(std::size_t num, std::size_t den) {
  num %= den;
  if ((4 * num) % den == 0) {
    switch (4 * num / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) /
                             static_cast<double>(den));
}

}  // namespace

ComplexMatrix FiniteGroup::characters() const {
  if (!is_abelian()) {
    throw GroupError(GroupErrorKind::non_abelian_input, "character table requires an abelian group");
  }
  const std::size_t n = order_;

  // Greedy generating set; every element gets exponents over the generators.
  std::vector<std::size_t> gens;
  std::vector<std::size_t> orders;
  std::vector<std::vector<std::size_t>> exps(n);
  std::vector<bool> reached(n, false);
  reached[identity_] = true;
  exps[identity_] = {};
  for (std::size_t x = 0; x < n; ++x) {
    if (reached[x]) continue;
    std::size_t ord = 1;
    for (std::size_t p = x; p != identity_; p = mult(p, x)) ++ord;
    gens.push_back(x);
    orders.push_back(ord);
    for (auto& e : exps) e.resize(gens.size(), 0);
    std::queue<std::size_t> frontier;
    for (std::size_t y = 0; y < n; ++y) {
      if (reached[y]) frontier.push(y);
    }
    while (!frontier.empty()) {
      const std::size_t y = frontier.front();
      frontier.pop();
      const std::size_t z = mult(y, x);
      if (!reached[z]) {
        reached[z] = true;
        exps[z] = exps[y];
        exps[z].back() += 1;
        frontier.push(z);
      }
    }
  }

  // Enumerate assignments of generator images; keep the homomorphisms.
  const std::size_t k = gens.size();
  std::vector<std::size_t> choice(k, 0);
  std::vector<std::size_t> phase(n);
  ComplexMatrix chi(static_cast<Index>(n), static_cast<Index>(n));
  Index found = 0;
  while (true) {
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t num = 0;
      for (std::size_t i = 0; i < k; ++i) num += choice[i] * exps[x][i] * (n / orders[i]);
      phase[x] = num % n;
    }
    bool hom = true;
    for (std::size_t a = 0; a < n && hom; ++a) {
      for (std::size_t b = 0; b < n && hom; ++b) hom = phase[mult(a, b)] == (phase[a] + phase[b]) % n;
    }
    if (hom) {
      for (std::size_t x = 0; x < n; ++x) chi(found, static_cast<Index>(x)) = root_of_unity(phase[x], n);
      ++found;
    }
    std::size_t i = 0;
    while (i < k && ++choice[i] == orders[i]) choice[i++] = 0;
    if (i == k) break;
  }
  if (found != static_cast<Index>(n)) {
    throw Error("characters: found " + std::to_string(found) + " homomorphisms for order " +
                std::to_string(n));
  }
  return chi;
}

std::string find_axiom_violation(const FiniteGroup& g) {
  const std::size_t n = g.order();
  for (std::size_t a = 0; a < n; ++a) {
    if (g.mult(g.identity(), a) != a || g.mult(a, g.identity()) != a) {
      return "identity fails on " + std::to_string(a);
    }
    if (g.mult(a, g.inv(a)) != g.identity() || g.mult(g.inv(a), a) != g.identity()) {
      return "inverse fails on " + std::to_string(a);
    }
    std::vector<bool> row(n, false);
    std::vector<bool> col(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      row[g.mult(a, b)] = true;
      col[g.mult(b, a)] = true;
      for (std::size_t c = 0; c < n; ++c) {
        if (g.mult(g.mult(a, b), c) != g.mult(a, g.mult(b, c))) {
          return "associativity fails on (" + std::to_string(a) + "," + std::to_string(b) + "," +
                 std::to_string(c) + ")";
        }
      }
    }
    if (std::find(row.begin(), row.end(), false) != row.end()) return "row " + std::to_string(a);
    if (std::find(col.begin(), col.end(), false) != col.end()) return "column " + std::to_string(a);
  }
  return {};
}

}  // namespace qgft
