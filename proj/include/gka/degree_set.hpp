#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "gka/errors.hpp"

namespace gka {

using Degree = std::int64_t;

/// Floor modulus: result in [0, n).
inline Degree mod_floor(Degree x, Degree n) {
  const Degree r = x % n;
  return r < 0 ? r + n : r;
}

/// The grading group: the integers or a finite cyclic group Z_n.
class GradedGroup {
 public:
  enum class Kind { Integers, Cyclic };

  static GradedGroup integers() { return GradedGroup(Kind::Integers, 0); }
  static GradedGroup cyclic(Degree n) {
    if (n < 1) throw PreconditionError("Z_n needs n >= 1, got " + std::to_string(n));
    return GradedGroup(Kind::Cyclic, n);
  }

  Kind kind() const { return kind_; }
  bool is_cyclic() const { return kind_ == Kind::Cyclic; }
  /// Order of Z_n; 0 for Z.
  Degree order() const { return n_; }

  /// Canonical representative (residue in [0, n) for Z_n).
  Degree normalize(Degree x) const { return is_cyclic() ? mod_floor(x, n_) : x; }
  Degree add(Degree a, Degree b) const { return normalize(a + b); }

  std::string to_string() const { return is_cyclic() ? "Z_" + std::to_string(n_) : "Z"; }

  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;

 private:
  GradedGroup(Kind k, Degree n) : kind_(k), n_(n) {}
  Kind kind_ = Kind::Integers;
  Degree n_ = 0;
};

/// Outcome of a universally quantified check. `window_certified` means the
/// quantifiers only ranged over a finite window; exact checks leave it false.
struct Verdict {
  bool holds = true;
  bool window_certified = false;
  std::optional<std::array<Degree, 3>> witness;
  /// Human-readable reason for a failure, empty on success.
  std::string detail;

  explicit operator bool() const { return holds; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// A subset of Z or Z_n in one of three canonical forms.
///
///  - Full: the whole group.
///  - Periodic(n, J): { x : x mod n in J }, J a nonempty subset of [0, n).
///    In Z_N the period must divide N.
///  - Windowed(E, [lo, hi]): a finite set of integers known only on the
///    window; anything derived from it is window-certified. Z only.
class DegreeSet {
 public:
  enum class Form { Full, Periodic, Windowed };

  static DegreeSet full(GradedGroup g = GradedGroup::integers()) {
    DegreeSet s;
    s.group_ = g;
    s.form_ = Form::Full;
    return s;
  }

  static DegreeSet periodic(Degree period, std::vector<Degree> residues,
                            GradedGroup g = GradedGroup::integers()) {
    if (period < 1) throw PreconditionError("period must be >= 1, got " + std::to_string(period));
    if (g.is_cyclic() && g.order() % period != 0)
      throw PreconditionError("period " + std::to_string(period) + " does not divide |" + g.to_string() + "|");
    for (auto& r : residues) r = mod_floor(r, period);
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    if (residues.empty()) throw PreconditionError("periodic set needs at least one residue");
    DegreeSet s;
    s.group_ = g;
    s.form_ = Form::Periodic;
    s.period_ = period;
    s.elements_ = std::move(residues);
    return s;
  }

  /// The subgroup kZ (or the subgroup generated by k in Z_n).
  static DegreeSet multiples(Degree k, GradedGroup g = GradedGroup::integers()) {
    if (k == 1) return full(g);
    return periodic(k, {0}, g);
  }

  static DegreeSet windowed(std::vector<Degree> elements, Degree lo, Degree hi) {
    if (lo > hi) throw PreconditionError("empty window [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (!elements.empty() && (elements.front() < lo || elements.back() > hi))
      throw WindowViolation("windowed set has elements outside its window");
    DegreeSet s;
    s.group_ = GradedGroup::integers();
    s.form_ = Form::Windowed;
    s.elements_ = std::move(elements);
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
  }

  const GradedGroup& group() const { return group_; }
  Form form() const { return form_; }
  bool is_full() const { return form_ == Form::Full; }
  bool is_periodic() const { return form_ == Form::Periodic; }
  bool is_windowed() const { return form_ == Form::Windowed; }
  /// Full and Periodic sets are known everywhere.
  bool is_exact() const { return form_ != Form::Windowed; }

  /// Period of an exact set (1 for Full).
  Degree period() const {
    if (is_windowed()) throw PreconditionError("windowed set has no period");
    return is_full() ? 1 : period_;
  }
  /// Residues of an exact set ({0} for Full).
  std::vector<Degree> residues() const {
    if (is_windowed()) throw PreconditionError("windowed set has no residues");
    return is_full() ? std::vector<Degree>{0} : elements_;
  }
  const std::vector<Degree>& elements() const {
    if (!is_windowed()) throw PreconditionError("only windowed sets list their elements");
    return elements_;
  }
  Degree window_lo() const { return lo_; }
  Degree window_hi() const { return hi_; }
  bool in_window(Degree x) const { return !is_windowed() || (lo_ <= x && x <= hi_); }

  bool contains(Degree x) const {
    switch (form_) {
      case Form::Full:
        return true;
      case Form::Periodic:
        return std::binary_search(elements_.begin(), elements_.end(), mod_floor(x, period_));
      case Form::Windowed:
        if (x < lo_ || x > hi_)
          throw WindowViolation("degree " + std::to_string(x) + " outside window [" + std::to_string(lo_) + "," +
                                std::to_string(hi_) + "]");
        return std::binary_search(elements_.begin(), elements_.end(), x);
    }
    return false;
  }

  /// Elements of the set lying in [lo, hi] (the set must be known there).
  std::vector<Degree> elements_in(Degree lo, Degree hi) const {
    std::vector<Degree> out;
    for (Degree x = lo; x <= hi; ++x)
      if (contains(x)) out.push_back(x);
    return out;
  }

  /// Restriction of an exact set to a window.
  DegreeSet restrict_to(Degree lo, Degree hi) const {
    if (is_windowed()) {
      const Degree a = std::max(lo, lo_), b = std::min(hi, hi_);
      if (a > b) throw WindowViolation("restriction window does not meet the set's window");
      return windowed(elements_in(a, b), a, b);
    }
    return windowed(elements_in(lo, hi), lo, hi);
  }

  std::string to_string() const {
    auto list = [](const std::vector<Degree>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "}";
    };
    switch (form_) {
      case Form::Full:
        return "Full(" + group_.to_string() + ")";
      case Form::Periodic:
        return "Periodic(" + std::to_string(period_) + "," + list(elements_) + ")";
      case Form::Windowed:
        return "Windowed(" + list(elements_) + ",[" + std::to_string(lo_) + "," + std::to_string(hi_) + "])";
    }
    return {};
  }

  /// Structural equality of the stored form (see same_set for set equality).
  friend bool operator==(const DegreeSet&, const DegreeSet&) = default;

 private:
  GradedGroup group_ = GradedGroup::integers();
  Form form_ = Form::Full;
  Degree period_ = 1;
  std::vector<Degree> elements_;
  Degree lo_ = 0;
  Degree hi_ = 0;
};

/// Common period of exact sets (lcm of the periods).
inline Degree common_period(const DegreeSet& a, const DegreeSet& b) { return std::lcm(a.period(), b.period()); }

/// Set equality for exact sets; windowed sets compare structurally.
inline bool same_set(const DegreeSet& a, const DegreeSet& b) {
  if (a.group() != b.group()) return false;
  if (a.is_windowed() || b.is_windowed()) return a == b;
  const Degree l = common_period(a, b);
  for (Degree x = 0; x < l; ++x)
    if (a.contains(x) != b.contains(x)) return false;
  return true;
}

/// Pointwise negation; a window [lo, hi] becomes [-hi, -lo].
inline DegreeSet negate(const DegreeSet& s) {
  switch (s.form()) {
    case DegreeSet::Form::Full:
      return s;
    case DegreeSet::Form::Periodic: {
      std::vector<Degree> r;
      for (auto x : s.residues()) r.push_back(-x);
      return DegreeSet::periodic(s.period(), std::move(r), s.group());
    }
    case DegreeSet::Form::Windowed: {
      std::vector<Degree> e;
      for (auto x : s.elements()) e.push_back(-x);
      return DegreeSet::windowed(std::move(e), -s.window_hi(), -s.window_lo());
    }
  }
  return s;
}

/// Translate by m: m + S.
inline DegreeSet translate(const DegreeSet& s, Degree m) {
  switch (s.form()) {
    case DegreeSet::Form::Full:
      return s;
    case DegreeSet::Form::Periodic: {
      std::vector<Degree> r;
      for (auto x : s.residues()) r.push_back(x + m);
      return DegreeSet::periodic(s.period(), std::move(r), s.group());
    }
    case DegreeSet::Form::Windowed: {
      std::vector<Degree> e;
      for (auto x : s.elements()) e.push_back(x + m);
      return DegreeSet::windowed(std::move(e), s.window_lo() + m, s.window_hi() + m);
    }
  }
  return s;
}

}  // namespace gka
