#pragma once

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/sha.h>

#include "spslab/system.hpp"

namespace spslab {

/// Largest state count for which canonical forms minimise over all state
/// permutations.
inline constexpr std::size_t kCanonicalMaxStates = 8;

inline std::uint64_t permute_mask(std::uint64_t mask, const std::vector<std::size_t>& perm) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if ((mask >> i) & 1U) out |= std::uint64_t{1} << perm[i];
  return out;
}

inline std::vector<std::uint64_t> permuted_sorted(const std::vector<std::uint64_t>& masks,
                                                  const std::vector<std::size_t>& perm) {
  std::vector<std::uint64_t> out;
  out.reserve(masks.size());
  for (auto m : masks) out.push_back(permute_mask(m, perm));
  std::sort(out.begin(), out.end());
  return out;
}

/// Least sorted image of a family of state masks over all permutations of n
/// states, with every permutation attaining it.
struct MaskCanon {
  std::vector<std::uint64_t> key;
  std::vector<std::vector<std::size_t>> perms;
};

inline MaskCanon canonical_masks(std::size_t n, const std::vector<std::uint64_t>& masks) {
  MaskCanon out;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bool first = true;
  do {
    auto img = permuted_sorted(masks, perm);
    if (first || img < out.key) {
      out.key = std::move(img);
      out.perms.assign(1, perm);
      first = false;
    } else if (img == out.key) {
      out.perms.push_back(perm);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline std::string sha256_hex(const std::string& text) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), md);
  std::string hex;
  char buf[3];
  for (unsigned char c : md) {
    std::snprintf(buf, sizeof buf, "%02x", c);
    hex += buf;
  }
  return hex;
}

/// Label-free text form of an instance: Cartan images, testable set,
/// probabilities and explicit orthogonality, with properties identified by
/// their Cartan image. `canonical` is false when the state count was too
/// large to minimise over relabelings; the text then uses the given labels.
struct CanonicalForm {
  std::string text;
  bool canonical = true;
  std::string digest() const { return sha256_hex(text); }
};

namespace detail {

inline std::string render_under(const System& sys, const std::vector<std::uint64_t>& kmasks,
                                const std::vector<std::size_t>& perm) {
  std::ostringstream os;
  os << "states " << sys.size() << "\nkappa";
  for (auto m : permuted_sorted(kmasks, perm)) os << ' ' << m;
  if (sys.instance().testable) {
    std::vector<std::uint64_t> t;
    for (auto a : indices_of(*sys.instance().testable)) t.push_back(kmasks[a]);
    os << "\ntestable";
    for (auto m : permuted_sorted(t, perm)) os << ' ' << m;
  }
  if (sys.instance().mu) {
    std::vector<std::string> rows;
    for (std::size_t p = 0; p < sys.size(); ++p)
      for (std::size_t a = 0; a < sys.prop_count(); ++a)
        if (auto v = (*sys.instance().mu)[p][a]) {
          std::ostringstream r;
          r << perm[p] << ':' << permute_mask(kmasks[a], perm) << '=' << v->numerator() << '/' << v->denominator();
          rows.push_back(r.str());
        }
    std::sort(rows.begin(), rows.end());
    os << "\nmu";
    for (const auto& r : rows) os << ' ' << r;
  }
  if (sys.instance().perp) {
    std::vector<std::uint64_t> pr(sys.size());
    for (std::size_t p = 0; p < sys.size(); ++p) pr[perm[p]] = permute_mask((*sys.instance().perp)[p].mask(), perm);
    os << "\nperp";
    for (auto m : pr) os << ' ' << m;
  }
  os << '\n';
  return os.str();
}

}  // namespace detail

inline CanonicalForm canonical_form(const System& sys) {
  std::vector<std::uint64_t> kmasks;
  for (std::size_t a = 0; a < sys.prop_count(); ++a) kmasks.push_back(sys.kappa(a).mask());
  CanonicalForm out;
  if (sys.size() > kCanonicalMaxStates) {
    std::vector<std::size_t> id(sys.size());
    std::iota(id.begin(), id.end(), 0);
    out.canonical = false;
    out.text = detail::render_under(sys, kmasks, id);
    return out;
  }
  const auto mc = canonical_masks(sys.size(), kmasks);
  bool first = true;
  for (const auto& perm : mc.perms) {
    auto t = detail::render_under(sys, kmasks, perm);
    if (first || t < out.text) out.text = std::move(t);
    first = false;
  }
  return out;
}

}  // namespace spslab
