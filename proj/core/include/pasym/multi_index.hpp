#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pasym {

/// Multi-index α = (α₁,…,α_N) of nonnegative integers.
///
/// Indexes Gauss-kernel derivatives g_α and monomials x^α. Comparison operators
/// are lexicographic (a total order for containers); the componentwise partial
/// order used by the moment recursion is `le`.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex zero(int dimension);
  static MultiIndex unit(int dimension, int axis);

  int dimension() const { return static_cast<int>(entries_.size()); }
  int operator[](int axis) const { return entries_[static_cast<std::size_t>(axis)]; }
  std::span<const int> entries() const { return entries_; }

  /// |α| = Σ αᵢ
  int order() const;
  /// α! = Π αᵢ!
  double factorial() const;
  /// x^α
  double monomial(std::span<const double> x) const;

  /// Componentwise α ≤ β.
  bool le(const MultiIndex& other) const;
  /// β − α, requires α ≤ β.
  MultiIndex minus(const MultiIndex& other) const;
  /// J(α) = {ρ ≠ α : ρ ≤ α}, in graded order.
  std::vector<MultiIndex> strictly_below() const;

  /// Dash-joined entries, e.g. "2-0-1".
  std::string to_string() const;
  static MultiIndex parse(std::string_view text);

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
};

/// Every α with |α| ≤ max_order in `dimension` variables, ordered by increasing
/// |α| with lexicographic ties (descending in the first axis).
std::vector<MultiIndex> indices_up_to(int dimension, int max_order);

}  // namespace pasym
