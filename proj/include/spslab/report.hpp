#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spslab/bits.hpp"

namespace spslab {

enum class Verdict {
  holds,
  fails,
  precondition_unmet,
  partial,         // budget stopped the search before it was exhaustive
  not_applicable,
};

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::precondition_unmet: return "precondition-unmet";
    case Verdict::partial: return "partial";
    case Verdict::not_applicable: return "not-applicable";
  }
  return "?";
}

/// Concrete evidence attached to an entry. For failing entries this is the
/// falsifying configuration; for holding entries it may carry an example.
struct Witness {
  std::vector<std::size_t> states;
  std::vector<std::size_t> props;
  std::vector<StateSet> sets;
  std::string note;

  bool operator==(const Witness&) const = default;
};

struct AxiomEntry {
  std::string name;
  Verdict verdict = Verdict::holds;
  std::optional<Witness> witness;
  std::string note;

  bool holds() const { return verdict == Verdict::holds; }
};

class AxiomReport {
 public:
  AxiomEntry& add(std::string name, Verdict verdict, std::optional<Witness> witness = {},
                  std::string note = {}) {
    entries_.push_back({std::move(name), verdict, std::move(witness), std::move(note)});
    return entries_.back();
  }
  AxiomEntry& add(AxiomEntry e) {
    entries_.push_back(std::move(e));
    return entries_.back();
  }
  AxiomEntry& add_check(std::string name, const std::optional<Witness>& failure, std::string note = {}) {
    return add(std::move(name), failure ? Verdict::fails : Verdict::holds, failure, std::move(note));
  }
  void append(const AxiomReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
  }

  const std::vector<AxiomEntry>& entries() const { return entries_; }

  const AxiomEntry* find(std::string_view name) const {
    for (const auto& e : entries_)
      if (e.name == name) return &e;
    return nullptr;
  }
  bool holds(std::string_view name) const {
    const auto* e = find(name);
    return e && e->holds();
  }
  bool all_hold() const {
    for (const auto& e : entries_)
      if (!e.holds()) return false;
    return true;
  }
  bool any_fails() const {
    for (const auto& e : entries_)
      if (e.verdict == Verdict::fails) return true;
    return false;
  }

 private:
  std::vector<AxiomEntry> entries_;
};

/// Work limit for exhaustive enumerations, measured in enumerated subsets
/// (or subset pairs / tuples, whichever the operation iterates over).
struct Budget {
  std::uint64_t max_work = std::uint64_t{1} << 16;
  std::optional<std::uint64_t> seed;  // enables randomized sampling when exhaustive work is over budget

  static Budget from_env() {
    Budget b;
    if (const char* env = std::getenv("SPSLAB_BUDGET"); env && *env) {
      try {
        b.max_work = std::stoull(env);
      } catch (const std::exception&) {
      }
    }
    return b;
  }
  bool allows(std::uint64_t work) const { return work <= max_work; }
};

/// 2^n, saturating.
inline std::uint64_t pow2_sat(std::size_t n) {
  return n >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << n;
}
inline std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > ~std::uint64_t{0} / a) return ~std::uint64_t{0};
  return a * b;
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionUnmet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace spslab
