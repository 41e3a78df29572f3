#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gka/subsets.hpp"

namespace gka {

/// An integer map known on a finite window [lo, hi] of Z.
class WindowedMap {
 public:
  WindowedMap() = default;
  WindowedMap(Degree lo, std::vector<Degree> values) : lo_(lo), values_(std::move(values)) {
    if (values_.empty()) throw PreconditionError("windowed map needs a nonempty window");
    std::unordered_set<Degree> seen;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!seen.insert(values_[i]).second) injective_ = false;
      preimage_.emplace(values_[i], lo_ + static_cast<Degree>(i));
    }
  }

  static WindowedMap identity(Degree lo, Degree hi) {
    std::vector<Degree> v;
    for (Degree x = lo; x <= hi; ++x) v.push_back(x);
    return WindowedMap(lo, std::move(v));
  }

  Degree lo() const { return lo_; }
  Degree hi() const { return lo_ + static_cast<Degree>(values_.size()) - 1; }
  bool in_window(Degree x) const { return lo() <= x && x <= hi(); }
  bool injective() const { return injective_; }
  const std::vector<Degree>& values() const { return values_; }

  Degree operator()(Degree x) const {
    if (!in_window(x))
      throw WindowViolation("map evaluated at " + std::to_string(x) + " outside [" + std::to_string(lo()) + "," +
                            std::to_string(hi()) + "]");
    return values_[static_cast<std::size_t>(x - lo_)];
  }

  /// Whether y is in the image of the window.
  bool in_image(Degree y) const { return preimage_.count(y) != 0; }
  /// Some x in the window with φ(x) = y.
  std::optional<Degree> preimage(Degree y) const {
    auto it = preimage_.find(y);
    if (it == preimage_.end()) return std::nullopt;
    return it->second;
  }

  WindowedMap shifted_values(Degree m) const {
    auto v = values_;
    for (auto& x : v) x += m;
    return WindowedMap(lo_, std::move(v));
  }

  friend bool operator==(const WindowedMap& a, const WindowedMap& b) {
    return a.lo_ == b.lo_ && a.values_ == b.values_;
  }

 private:
  Degree lo_ = 0;
  std::vector<Degree> values_;
  bool injective_ = true;
  std::unordered_map<Degree, Degree> preimage_;
};

/// The strictly increasing enumeration δ of s0 + U with δ(0) = s0, on a
/// window: writing the residues of U modulo its stabilizer nZ as
/// 0 = i_0 < ... < i_{t-1}, δ(tj + k) = s0 + nj + i_k.
inline WindowedMap delta_map(const DegreeSet& u, Degree s0, Degree lo, Degree hi) {
  if (u.is_windowed()) throw PreconditionError("delta_map needs a periodic or full set (unsupported form)");
  if (lo > hi) throw PreconditionError("delta_map needs a nonempty window");
  const auto red = reduce_mod_stabilizer(u);
  const Degree t = static_cast<Degree>(red.residues.size());
  std::vector<Degree> v;
  for (Degree x = lo; x <= hi; ++x) {
    const Degree j = (x - mod_floor(x, t)) / t;
    const Degree k = mod_floor(x, t);
    v.push_back(s0 + red.n * j + red.residues[static_cast<std::size_t>(k)]);
  }
  return WindowedMap(lo, std::move(v));
}

/// Window-certified pseudomorphism check (additive form): injective,
/// φ(0) = 0, and φ(σ)+φ(τ) in Im φ forces φ(σ+τ) = φ(σ)+φ(τ). The witness
/// is (σ, τ, 0); a failing φ(0) or injectivity reports (0, 0, 0).
inline Verdict is_pseudomorphism(const WindowedMap& phi) {
  if (!phi.in_window(0)) throw PreconditionError("pseudomorphism check needs 0 in the window");
  Verdict v;
  v.window_certified = true;
  if (phi(0) != 0 || !phi.injective()) {
    v.holds = false;
    v.witness = {0, 0, 0};
    return v;
  }
  for (Degree s = phi.lo(); s <= phi.hi(); ++s)
    for (Degree t = phi.lo(); t <= phi.hi(); ++t) {
      if (!phi.in_window(s + t)) continue;
      const Degree target = phi(s) + phi(t);
      if (!phi.in_image(target)) continue;
      if (phi(s + t) != target) {
        v.holds = false;
        v.witness = {s, t, 0};
        return v;
      }
    }
  return v;
}

/// φ^{-1}(H) on the window, as a windowed set.
inline DegreeSet preimage_subgroup(const WindowedMap& phi, const DegreeSet& h) {
  if (!h.is_exact()) throw PreconditionError("preimage_subgroup needs H in subgroup (exact) form");
  if (!h.contains(0) || !same_set(stabilizer(h), h)) throw PreconditionError("H must be a subgroup");
  std::vector<Degree> out;
  for (Degree s = phi.lo(); s <= phi.hi(); ++s)
    if (h.contains(phi(s))) out.push_back(s);
  return DegreeSet::windowed(std::move(out), phi.lo(), phi.hi());
}

/// If a windowed set is exactly kZ ∩ window for some k >= 1, returns kZ.
inline std::optional<DegreeSet> as_subgroup(const DegreeSet& w) {
  if (!w.is_windowed()) return w;
  Degree k = 0;
  for (auto x : w.elements()) k = std::gcd(k, x);
  if (k == 0) return std::nullopt;
  const DegreeSet candidate = DegreeSet::multiples(k);
  if (candidate.restrict_to(w.window_lo(), w.window_hi()) != w) return std::nullopt;
  return candidate;
}

}  // namespace gka
