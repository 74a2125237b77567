#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spslab/bits.hpp"

namespace spslab {

/// Why a finite order fails to be a bounded lattice.
struct LatticeDefect {
  std::string kind;  // "antisymmetry" | "bottom" | "top" | "meet" | "join"
  std::vector<std::size_t> elements;
};

/// A finite partial order on {0..n-1} with designated bottom and top, plus
/// meet/join tables when they exist. Construction never throws on order
/// defects; those are reported by defect().
class FiniteLattice {
 public:
  FiniteLattice() = default;

  /// Builds the reflexive-transitive closure of `leq` on n elements.
  static FiniteLattice from_pairs(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> leq,
                                  std::size_t bottom, std::size_t top) {
    std::vector<PropSet> up(n, PropSet(n));
    for (std::size_t a = 0; a < n; ++a) up[a].set(a);
    for (auto [a, b] : leq) up[a].set(b);
    // Warshall over rows: if k is above a, everything above k is above a.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t a = 0; a < n; ++a)
        if (up[a].test(k)) up[a] |= up[k];
    return FiniteLattice(std::move(up), bottom, top);
  }

  /// Builds the inclusion order of a family of sets (each given as a bitmask
  /// over some universe).
  static FiniteLattice from_sets(const std::vector<StateSet>& sets, std::size_t bottom, std::size_t top) {
    const std::size_t n = sets.size();
    std::vector<PropSet> up(n, PropSet(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (sets[a].subset_of(sets[b])) up[a].set(b);
    return FiniteLattice(std::move(up), bottom, top);
  }

  std::size_t size() const { return up_.size(); }
  std::size_t bottom() const { return bottom_; }
  std::size_t top() const { return top_; }

  bool leq(std::size_t a, std::size_t b) const { return up_[a].test(b); }
  bool lt(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  const PropSet& up(std::size_t a) const { return up_[a]; }
  const PropSet& down(std::size_t a) const { return down_[a]; }

  const std::optional<LatticeDefect>& defect() const { return defect_; }
  bool is_lattice() const { return !defect_.has_value(); }

  /// Meet/join of two elements; only meaningful when is_lattice().
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }

  /// Meet of a set of elements; the empty meet is top.
  std::size_t meet_all(const PropSet& s) const {
    std::size_t m = top_;
    for (auto i = s.find_first(); i != PropSet::npos; i = s.find_next(i)) m = meet(m, i);
    return m;
  }
  /// Join of a set of elements; the empty join is bottom.
  std::size_t join_all(const PropSet& s) const {
    std::size_t j = bottom_;
    for (auto i = s.find_first(); i != PropSet::npos; i = s.find_next(i)) j = join(j, i);
    return j;
  }
  template <class Range>
  std::size_t join_of(const Range& elems) const {
    std::size_t j = bottom_;
    for (auto i : elems) j = join(j, static_cast<std::size_t>(i));
    return j;
  }

  /// b covers a: a < b with nothing strictly between.
  bool covers(std::size_t a, std::size_t b) const {
    if (!lt(a, b)) return false;
    PropSet between = up_[a] & down_[b];
    return between.count() == 2;
  }

  std::vector<std::size_t> atoms() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < size(); ++a)
      if (covers(bottom_, a)) out.push_back(a);
    return out;
  }
  std::vector<std::size_t> coatoms() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < size(); ++a)
      if (covers(a, top_)) out.push_back(a);
    return out;
  }

  /// Every element is the join of the atoms below it. Returns the first
  /// element that is not, if any.
  std::optional<std::size_t> non_atomistic_element() const {
    const auto at = atoms();
    for (std::size_t b = 0; b < size(); ++b) {
      std::size_t j = bottom_;
      for (auto a : at)
        if (leq(a, b)) j = join(j, a);
      if (j != b) return b;
    }
    return std::nullopt;
  }

 private:
  FiniteLattice(std::vector<PropSet> up, std::size_t bottom, std::size_t top)
      : up_(std::move(up)), bottom_(bottom), top_(top) {
    const std::size_t n = up_.size();
    down_.assign(n, PropSet(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (up_[a].test(b)) down_[b].set(a);
    compute_tables();
  }

  void compute_tables() {
    const std::size_t n = size();
    for (std::size_t a = 0; a < n && !defect_; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (leq(a, b) && leq(b, a)) {
          defect_ = LatticeDefect{"antisymmetry", {a, b}};
          break;
        }
    if (!defect_ && n > 0) {
      if (up_[bottom_].count() != n) defect_ = LatticeDefect{"bottom", {bottom_}};
      else if (down_[top_].count() != n) defect_ = LatticeDefect{"top", {top_}};
    }
    if (defect_ || n == 0) {
      if (n == 0) defect_ = LatticeDefect{"bottom", {}};
      return;
    }
    meet_.assign(n * n, 0);
    join_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        auto m = greatest(down_[a] & down_[b], true);
        auto j = greatest(up_[a] & up_[b], false);
        if (!m) {
          defect_ = LatticeDefect{"meet", {a, b}};
          return;
        }
        if (!j) {
          defect_ = LatticeDefect{"join", {a, b}};
          return;
        }
        meet_[a * n + b] = meet_[b * n + a] = *m;
        join_[a * n + b] = join_[b * n + a] = *j;
      }
    }
  }

  // Greatest (or least, for upper bounds) element of `bounds` under the order.
  std::optional<std::size_t> greatest(const PropSet& bounds, bool lower) const {
    for (auto c = bounds.find_first(); c != PropSet::npos; c = bounds.find_next(c)) {
      const PropSet& cone = lower ? down_[c] : up_[c];
      if (bounds.is_subset_of(cone)) return c;
    }
    return std::nullopt;
  }

  std::vector<PropSet> up_;
  std::vector<PropSet> down_;
  std::size_t bottom_ = 0;
  std::size_t top_ = 0;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::optional<LatticeDefect> defect_;
};

}  // namespace spslab
