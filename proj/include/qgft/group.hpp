#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgft/linalg.hpp"

namespace qgft {

/// Index of an element of a FiniteGroup.
struct GroupElement {
  std::size_t index = 0;
  friend bool operator==(GroupElement, GroupElement) = default;
};

enum class GroupErrorKind {
  malformed_table,
  not_latin_square,
  no_identity,
  missing_inverse,
  not_associative,
  out_of_range,
  non_abelian_input,
};

std::string to_string(GroupErrorKind kind);

class GroupError : public Error {
 public:
  GroupError(GroupErrorKind kind, const std::string& detail);
  GroupErrorKind kind() const { return kind_; }

 private:
  GroupErrorKind kind_;
};

inline constexpr std::size_t kMaxBuiltinOrder = 24;

/// Finite group on {0..n-1} given by its Cayley table. Immutable.
class FiniteGroup {
 public:
  /// Validates raw as a group table; the identity is discovered.
  static FiniteGroup from_cayley_table(const std::vector<std::vector<std::size_t>>& raw);

  static FiniteGroup cyclic(std::size_t n);
  /// Symmetries of the m-gon, order 2m. Element f*m + k is r^k s^f.
  static FiniteGroup dihedral(std::size_t m);
  /// Permutations of {0..k-1} in lexicographic order, (στ)(i) = σ(τ(i)).
  static FiniteGroup symmetric(std::size_t k);
  /// Element g*|H| + h is (g, h).
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  std::size_t order() const { return order_; }
  std::size_t identity() const { return identity_; }
  std::size_t mult(std::size_t a, std::size_t b) const { return table_[a * order_ + b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  GroupElement mult(GroupElement a, GroupElement b) const { return {mult(a.index, b.index)}; }
  GroupElement inv(GroupElement a) const { return {inv(a.index)}; }

  bool is_abelian() const;
  std::vector<std::vector<std::size_t>> table() const;

  /// Row j is the character χ_j; throws GroupError(non_abelian_input).
  ComplexMatrix characters() const;

 private:
  FiniteGroup(std::size_t order, std::vector<std::size_t> table);

  std::size_t order_ = 0;
  std::size_t identity_ = 0;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
};

/// Exhaustive check of every group axiom; empty string when all hold.
std::string find_axiom_violation(const FiniteGroup& g);

}  // namespace qgft
