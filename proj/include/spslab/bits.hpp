#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace spslab {

/// Hard limit on the number of states of a system; subsets of states are
/// stored as single 64-bit words.
inline constexpr std::size_t kMaxStates = 64;

/// A subset of the state set, as a bitmask over state indices.
class StateSet {
 public:
  class iterator {
   public:
    using value_type = std::size_t;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    iterator() = default;
    explicit iterator(std::uint64_t rest) : rest_(rest) {}
    std::size_t operator*() const { return static_cast<std::size_t>(std::countr_zero(rest_)); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint64_t mask) : mask_(mask) {}

  static constexpr StateSet single(std::size_t i) { return StateSet(std::uint64_t{1} << i); }
  static constexpr StateSet first(std::size_t n) {
    return StateSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  template <class Range>
  static StateSet of(const Range& indices) {
    StateSet s;
    for (auto i : indices) s.insert(static_cast<std::size_t>(i));
    return s;
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  constexpr void insert(std::size_t i) { mask_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { mask_ &= ~(std::uint64_t{1} << i); }
  constexpr bool subset_of(StateSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool proper_subset_of(StateSet other) const { return subset_of(other) && mask_ != other.mask_; }
  constexpr bool intersects(StateSet other) const { return (mask_ & other.mask_) != 0; }
  std::size_t front() const { return static_cast<std::size_t>(std::countr_zero(mask_)); }

  iterator begin() const { return iterator(mask_); }
  iterator end() const { return iterator(0); }

  std::vector<std::size_t> indices() const { return {begin(), end()}; }

  constexpr StateSet with(std::size_t i) const { return StateSet(mask_ | (std::uint64_t{1} << i)); }
  constexpr StateSet without(std::size_t i) const { return StateSet(mask_ & ~(std::uint64_t{1} << i)); }

  constexpr StateSet operator|(StateSet o) const { return StateSet(mask_ | o.mask_); }
  constexpr StateSet operator&(StateSet o) const { return StateSet(mask_ & o.mask_); }
  constexpr StateSet operator-(StateSet o) const { return StateSet(mask_ & ~o.mask_); }
  constexpr StateSet& operator|=(StateSet o) {
    mask_ |= o.mask_;
    return *this;
  }
  constexpr StateSet& operator&=(StateSet o) {
    mask_ &= o.mask_;
    return *this;
  }

  constexpr bool operator==(const StateSet&) const = default;
  constexpr auto operator<=>(const StateSet&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

/// A subset of the property set.
using PropSet = boost::dynamic_bitset<std::uint64_t>;

inline std::vector<std::size_t> indices_of(const PropSet& s) {
  std::vector<std::size_t> out;
  for (auto i = s.find_first(); i != PropSet::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

/// Calls fn(sub) for every subset of `set` (including empty and `set` itself),
/// in increasing mask order.
template <class Fn>
void for_each_subset(StateSet set, Fn&& fn) {
  const std::uint64_t m = set.mask();
  std::uint64_t sub = 0;
  while (true) {
    fn(StateSet(sub));
    if (sub == m) break;
    sub = (sub - m) & m;
  }
}

/// Calls fn(combo) for every k-element subset of {0..n-1} in lexicographic order
/// of the sorted index lists. Stops early when fn returns false.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(StateSet::of(idx))) return false;
    if (k == 0) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace spslab
