#pragma once

// Combinatorics of degree sets: ring-supporting and (pre)modular predicates,
// stabilizers, quotient sets (S:U), enumeration over Z_n and the structure
// theory of ring-supporting subsets of Z.
//
// The group is written additively. The predicates are stated for an
// arbitrary group in the literature; nothing below relies on commutativity
// except where noted in a comment.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gka/degree_set.hpp"

namespace gka {

namespace detail {

inline void require_same_group(const DegreeSet& a, const DegreeSet& b) {
  if (a.group() != b.group())
    throw PreconditionError("degree sets live in different groups (" + a.group().to_string() + " vs " +
                            b.group().to_string() + ")");
}

inline void require_contains_zero(const DegreeSet& u) {
  if (!u.in_window(0) || !u.contains(0)) throw PreconditionError("U must contain 0");
}

/// When some input is windowed, exact inputs are cut to a common window that
/// also holds every difference of window points.
inline std::pair<Degree, Degree> scan_window(const DegreeSet& a, const DegreeSet& b) {
  Degree lo = 0, hi = 0;
  bool first = true;
  for (const DegreeSet* s : {&a, &b}) {
    if (!s->is_windowed()) continue;
    if (first) {
      lo = s->window_lo();
      hi = s->window_hi();
      first = false;
    } else {
      lo = std::min(lo, s->window_lo());
      hi = std::max(hi, s->window_hi());
    }
  }
  const Degree span = hi - lo;
  return {std::min(lo, -span), std::max(hi, span)};
}

inline DegreeSet as_windowed(const DegreeSet& s, std::pair<Degree, Degree> w) {
  return s.is_windowed() ? s : s.restrict_to(w.first, w.second);
}

}  // namespace detail

/// U is ring-supporting: 0 in U and for u, v, w in U with u+v+w in U one has
/// u+v in U iff v+w in U. Periodic sets are decided exactly on residues.
inline Verdict is_ring_supporting(const DegreeSet& u) {
  detail::require_contains_zero(u);
  Verdict verdict;
  if (u.is_full()) return verdict;
  if (u.is_periodic()) {
    const auto r = u.residues();
    for (auto a : r)
      for (auto b : r)
        for (auto c : r) {
          if (!u.contains(a + b + c)) continue;
          if (u.contains(a + b) != u.contains(b + c)) {
            verdict.holds = false;
            verdict.witness = {a, b, c};
            return verdict;
          }
        }
    return verdict;
  }
  verdict.window_certified = true;
  const auto& e = u.elements();
  for (auto a : e)
    for (auto b : e)
      for (auto c : e) {
        if (!u.in_window(a + b) || !u.in_window(b + c) || !u.in_window(a + b + c)) continue;
        if (!u.contains(a + b + c)) continue;
        if (u.contains(a + b) != u.contains(b + c)) {
          verdict.holds = false;
          verdict.witness = {a, b, c};
          return verdict;
        }
      }
  return verdict;
}

/// (S, U) is right premodular: for (s, u, v) in S x U x U with s+u+v in S,
/// s+u in S iff u+v in U.
inline Verdict is_right_premodular(const DegreeSet& s, const DegreeSet& u) {
  detail::require_same_group(s, u);
  detail::require_contains_zero(u);
  if (s.is_windowed() && s.elements().empty()) throw PreconditionError("S must be nonempty");
  Verdict verdict;
  if (s.is_exact() && u.is_exact()) {
    const Degree l = common_period(s, u);
    std::vector<Degree> ss, uu;
    for (Degree x = 0; x < l; ++x) {
      if (s.contains(x)) ss.push_back(x);
      if (u.contains(x)) uu.push_back(x);
    }
    for (auto a : ss)
      for (auto b : uu)
        for (auto c : uu) {
          if (!s.contains(a + b + c)) continue;
          if (s.contains(a + b) != u.contains(b + c)) {
            verdict.holds = false;
            verdict.witness = {a, b, c};
            return verdict;
          }
        }
    return verdict;
  }
  verdict.window_certified = true;
  const auto w = detail::scan_window(s, u);
  const DegreeSet sw = detail::as_windowed(s, w), uw = detail::as_windowed(u, w);
  for (auto a : sw.elements())
    for (auto b : uw.elements())
      for (auto c : uw.elements()) {
        if (!sw.in_window(a + b) || !sw.in_window(a + b + c) || !uw.in_window(b + c)) continue;
        if (!sw.contains(a + b + c)) continue;
        if (sw.contains(a + b) != uw.contains(b + c)) {
          verdict.holds = false;
          verdict.witness = {a, b, c};
          return verdict;
        }
      }
  return verdict;
}

/// Right modular: right premodular with U ring-supporting.
inline Verdict is_right_modular(const DegreeSet& s, const DegreeSet& u) {
  auto pre = is_right_premodular(s, u);
  if (!pre.holds) return pre;
  auto ring = is_ring_supporting(u);
  ring.window_certified = ring.window_certified || pre.window_certified;
  return ring;
}

/// Left premodular pair (U, S), obtained through the negation identity
/// "(U, S) left iff (-S, U) right".
inline Verdict is_left_premodular(const DegreeSet& u, const DegreeSet& s) {
  return is_right_premodular(negate(s), u);
}

inline Verdict is_left_modular(const DegreeSet& u, const DegreeSet& s) { return is_right_modular(negate(s), u); }

/// (S:U) = { g : g + U = S }, or nullopt when empty. Exact inputs give an
/// exact answer in its minimal period; windowed inputs a window-certified one.
inline std::optional<DegreeSet> quotient_set(const DegreeSet& s, const DegreeSet& u);

/// Smallest period of an exact set (the generator of its stabilizer).
inline Degree minimal_period(const DegreeSet& s) {
  if (s.is_full()) return 1;
  const Degree n = s.period();
  for (Degree d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (Degree x = 0; x < n && periodic; ++x) periodic = s.contains(x) == s.contains(x + d);
    if (periodic) return d;
  }
  return n;
}

/// The same exact set written in its minimal period (Full when that is 1).
inline DegreeSet canonical(const DegreeSet& s) {
  if (s.is_windowed()) return s;
  const Degree k = minimal_period(s);
  if (k == 1) return DegreeSet::full(s.group());
  std::vector<Degree> r;
  for (Degree x = 0; x < k; ++x)
    if (s.contains(x)) r.push_back(x);
  return DegreeSet::periodic(k, std::move(r), s.group());
}

inline std::optional<DegreeSet> quotient_set(const DegreeSet& s, const DegreeSet& u) {
  detail::require_same_group(s, u);
  if (s.is_exact() && u.is_exact()) {
    const Degree l = common_period(s, u);
    std::vector<Degree> g;
    for (Degree d = 0; d < l; ++d) {
      bool ok = true;
      for (Degree x = 0; x < l && ok; ++x) ok = u.contains(x) == s.contains(x + d);
      if (ok) g.push_back(d);
    }
    if (g.empty()) return std::nullopt;
    return canonical(DegreeSet::periodic(l, std::move(g), s.group()));
  }
  const auto w = detail::scan_window(s, u);
  const DegreeSet sw = detail::as_windowed(s, w), uw = detail::as_windowed(u, w);
  const Degree lo = sw.window_lo() - uw.window_hi(), hi = sw.window_hi() - uw.window_lo();
  std::vector<Degree> g;
  for (Degree d = lo; d <= hi; ++d) {
    bool ok = true;
    for (Degree x = uw.window_lo(); x <= uw.window_hi() && ok; ++x)
      if (sw.in_window(x + d)) ok = uw.contains(x) == sw.contains(x + d);
    if (ok) g.push_back(d);
  }
  if (g.empty()) return std::nullopt;
  return DegreeSet::windowed(std::move(g), lo, hi);
}

/// (U:U) = { g : g + U = U }, a subgroup contained in U.
inline DegreeSet stabilizer(const DegreeSet& u) {
  detail::require_contains_zero(u);
  if (u.is_full()) return u;
  auto q = quotient_set(u, u);
  if (!q) throw InternalConsistencyError("stabilizer of a set containing 0 cannot be empty");
  return *q;
}

/// Pointwise intersection of exact sets.
inline DegreeSet intersection(const DegreeSet& a, const DegreeSet& b) {
  detail::require_same_group(a, b);
  if (!a.is_exact() || !b.is_exact()) throw PreconditionError("intersection needs exact sets");
  const Degree l = common_period(a, b);
  std::vector<Degree> r;
  for (Degree x = 0; x < l; ++x)
    if (a.contains(x) && b.contains(x)) r.push_back(x);
  if (r.empty()) throw PreconditionError("intersection is empty");
  return canonical(DegreeSet::periodic(l, std::move(r), a.group()));
}

// ---------------------------------------------------------------------------
// Enumeration over Z_n

/// Largest n accepted by enumerate_ring_supporting.
inline constexpr int kEnumerationCap = 20;

namespace detail {

using Mask = std::uint32_t;

/// { x : x + k mod n in J }.
inline Mask shift_mask(Mask j, int k, int n) {
  const Mask full = (n == 32) ? ~Mask{0} : ((Mask{1} << n) - 1);
  k %= n;
  if (k == 0) return j;
  return ((j >> k) | (j << (n - k))) & full;
}

inline bool mask_is_ring_supporting(Mask j, int n) {
  for (int u = 0; u < n; ++u) {
    if (!(j >> u & 1U)) continue;
    for (int v = 0; v < n; ++v) {
      if (!(j >> v & 1U)) continue;
      const bool uv = j >> ((u + v) % n) & 1U;
      const Mask closing = j & shift_mask(j, u + v, n);  // w in J with u+v+w in J
      const Mask right = shift_mask(j, v, n);            // w with v+w in J
      if (uv ? (closing & ~right) != 0 : (closing & right) != 0) return false;
    }
  }
  return true;
}

inline bool mask_has_trivial_stabilizer(Mask j, int n) {
  for (int d = 1; d < n; ++d)
    if (shift_mask(j, d, n) == j) return false;
  return true;
}

inline std::vector<Degree> mask_to_residues(Mask j, int n) {
  std::vector<Degree> r;
  for (int x = 0; x < n; ++x)
    if (j >> x & 1U) r.push_back(x);
  return r;
}

}  // namespace detail

/// Canonical order of residue sets: by cardinality, then lexicographic.
inline bool residue_order(const std::vector<Degree>& a, const std::vector<Degree>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// All J ⊆ [0, n) with 0 in J, J ring-supporting in Z_n and (J:J) = {0};
/// for n = 1 the single answer {0} stands for U = Z.
inline std::vector<std::vector<Degree>> enumerate_ring_supporting(int n) {
  if (n < 1) throw PreconditionError("enumeration needs n >= 1");
  if (n > kEnumerationCap)
    throw CapacityError("enumeration is capped at n = " + std::to_string(kEnumerationCap) + ", got " +
                        std::to_string(n));
  if (n == 1) return {{0}};
  std::vector<std::vector<Degree>> out;
  const detail::Mask rest = detail::Mask{1} << (n - 1);
  for (detail::Mask high = 0; high < rest; ++high) {
    const detail::Mask j = (high << 1U) | 1U;
    if (detail::mask_has_trivial_stabilizer(j, n) && detail::mask_is_ring_supporting(j, n))
      out.push_back(detail::mask_to_residues(j, n));
  }
  std::sort(out.begin(), out.end(), residue_order);
  return out;
}

struct ReducedSet {
  Degree n = 1;
  std::vector<Degree> residues;
  friend bool operator==(const ReducedSet&, const ReducedSet&) = default;
};

/// Writes an exact U with (U:U) = nZ as the union of nZ + j over j in the
/// returned residues; the image of U in Z_n then has trivial stabilizer.
inline ReducedSet reduce_mod_stabilizer(const DegreeSet& u) {
  detail::require_contains_zero(u);
  if (u.is_windowed()) throw PreconditionError("reduction modulo the stabilizer needs a periodic or full set");
  const DegreeSet c = canonical(u);
  return {c.period(), c.residues()};
}

// ---------------------------------------------------------------------------
// Structure of ring-supporting subsets of Z

enum class StructureClass { AllOfZ, SubmonoidOfN, SubmonoidOfNegN, FiniteIntervalUnion };

inline std::string to_string(StructureClass c) {
  switch (c) {
    case StructureClass::AllOfZ:
      return "AllOfZ";
    case StructureClass::SubmonoidOfN:
      return "SubmonoidOfN";
    case StructureClass::SubmonoidOfNegN:
      return "SubmonoidOfNegN";
    case StructureClass::FiniteIntervalUnion:
      return "FiniteIntervalUnion";
  }
  return {};
}

struct IntervalDecomposition {
  StructureClass classification = StructureClass::AllOfZ;
  /// Maximal runs; for periodic sets one fundamental domain starting at the
  /// run that contains 0.
  std::vector<std::pair<Degree, Degree>> intervals;
  /// Period n of the set (0 when not periodic).
  Degree period = 0;
  /// The run through 0 is [0, r] or [-r, 0].
  std::optional<Degree> zero_radius;
  bool window_certified = false;
};

namespace detail {

inline std::vector<std::pair<Degree, Degree>> runs(const std::vector<Degree>& sorted) {
  std::vector<std::pair<Degree, Degree>> out;
  for (auto x : sorted) {
    if (!out.empty() && out.back().second + 1 == x)
      out.back().second = x;
    else
      out.emplace_back(x, x);
  }
  return out;
}

inline bool closed_under_addition(const DegreeSet& u) {
  const auto& e = u.elements();
  for (auto a : e)
    for (auto b : e)
      if (u.in_window(a + b) && !u.contains(a + b)) return false;
  return true;
}

}  // namespace detail

/// Classifies a ring-supporting U and checks the constraints the structure
/// theorem imposes. A violation on a periodic input is an invariant trap.
inline IntervalDecomposition structure_decompose(const DegreeSet& u) {
  const auto rs = is_ring_supporting(u);
  if (!rs.holds) throw PreconditionError("structure_decompose needs a ring-supporting set");
  IntervalDecomposition d;
  if (u.is_exact()) {
    const auto red = reduce_mod_stabilizer(u);
    const Degree n = red.n;
    d.period = n;
    if (n == 1) {
      d.classification = StructureClass::AllOfZ;
      return d;
    }
    d.classification = StructureClass::FiniteIntervalUnion;
    const DegreeSet c = DegreeSet::periodic(n, red.residues);
    Degree a = 0, b = 0;
    while (c.contains(-(a + 1)) && a + 1 < n) ++a;
    while (c.contains(b + 1) && b + 1 < n) ++b;
    if (a + b + 1 >= n) throw InternalConsistencyError("proper periodic set covers a full period");
    d.intervals = detail::runs(c.elements_in(-a, -a + n - 1));
    const auto& first = d.intervals.front();
    const auto& last = d.intervals.back();
    for (std::size_t i = 0; i + 1 < d.intervals.size(); ++i)
      if (!(d.intervals[i].first <= d.intervals[i].second &&
            d.intervals[i].second < d.intervals[i + 1].first - 1))
        throw InternalConsistencyError("interval gap condition violated");
    if (!(last.second < first.first + n - 1)) throw InternalConsistencyError("interval gap condition violated");
    if (a != 0 && b != 0)
      throw InternalConsistencyError("run through 0 is [" + std::to_string(-a) + "," + std::to_string(b) +
                                     "], not anchored at 0, for " + u.to_string());
    const Degree r = a + b;
    if (!(2 * r < n))
      throw InternalConsistencyError("zero run radius " + std::to_string(r) + " violates 2r < n = " +
                                     std::to_string(n));
    d.zero_radius = r;
    return d;
  }

  d.window_certified = true;
  const auto& e = u.elements();
  const Degree lo = u.window_lo(), hi = u.window_hi();
  d.intervals = detail::runs(e);
  if (static_cast<Degree>(e.size()) == hi - lo + 1 && lo < 0 && hi > 0) {
    d.classification = StructureClass::AllOfZ;
    return d;
  }
  const bool top_tail = !d.intervals.empty() && d.intervals.back().second == hi &&
                        d.intervals.back().second > d.intervals.back().first && hi > 0;
  const bool bottom_tail = !d.intervals.empty() && d.intervals.front().first == lo &&
                           d.intervals.front().second > d.intervals.front().first && lo < 0;
  if (top_tail && e.front() >= 0 && detail::closed_under_addition(u))
    d.classification = StructureClass::SubmonoidOfN;
  else if (bottom_tail && e.back() <= 0 && detail::closed_under_addition(u))
    d.classification = StructureClass::SubmonoidOfNegN;
  else
    d.classification = StructureClass::FiniteIntervalUnion;
  for (const auto& [a, b] : d.intervals)
    if (a <= 0 && 0 <= b) {
      if (a == 0) d.zero_radius = b;
      else if (b == 0) d.zero_radius = -a;
    }
  return d;
}

enum class Orientation { Right, Left };

inline std::string to_string(Orientation o) { return o == Orientation::Right ? "Right" : "Left"; }

struct IntervalTranslation {
  Orientation orientation = Orientation::Right;
  Degree n = 0;
  Degree r = 0;
  friend bool operator==(const IntervalTranslation&, const IntervalTranslation&) = default;
};

/// ⋃_k [nk, nk+r] (Right) or ⋃_k [nk-r, nk] (Left).
inline DegreeSet interval_translation(Degree n, Degree r, Orientation o) {
  if (n < 1 || r < 0 || r >= n) throw PreconditionError("interval translation needs 0 <= r < n");
  std::vector<Degree> res;
  for (Degree i = 0; i <= r; ++i) res.push_back(o == Orientation::Right ? i : -i);
  return DegreeSet::periodic(n, std::move(res));
}

/// Some iff U is a translation of an interval: U = ⋃[nk, nk+r] or
/// ⋃[nk-r, nk] with 0 <= 2r < n, where (U:U) = nZ. Requires n != 0, 1.
inline std::optional<IntervalTranslation> is_translation_of_interval(const DegreeSet& u) {
  if (u.is_windowed()) throw PreconditionError("translation-of-interval test needs a periodic set");
  const auto red = reduce_mod_stabilizer(u);
  const Degree n = red.n;
  if (n <= 1) throw PreconditionError("translation-of-interval test needs (U:U) = nZ with n != 0,1");
  const auto& j = red.residues;
  const Degree r = static_cast<Degree>(j.size()) - 1;
  if (!(2 * r < n)) return std::nullopt;
  bool right = true, left = true;
  for (Degree i = 0; i <= r; ++i) {
    right = right && j[static_cast<std::size_t>(i)] == i;
    left = left && (i == 0 ? j[0] == 0 : j[static_cast<std::size_t>(i)] == n - r + i - 1);
  }
  if (right) return IntervalTranslation{Orientation::Right, n, r};
  if (left) return IntervalTranslation{Orientation::Left, n, r};
  return std::nullopt;
}

}  // namespace gka
