// Command-line front end for the graded-algebra toolkit.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gka/gka.hpp"
#include "gka/json_io.hpp"

namespace {

using gka::Degree;
using gka::DegreeSet;
using gka::json_io::Json;

enum Exit { kHolds = 0, kFalsified = 1, kUsage = 2 };

struct Options {
  std::string format = "json";
  std::string out;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw gka::PreconditionError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw gka::SchemaError(path + ": malformed JSON (" + std::string(e.what()) + ")");
  }
}

void emit(const Options& o, const Json& j, const std::string& text) {
  std::ostringstream s;
  if (o.format == "json") s << j.dump(2) << "\n";
  else s << text;
  if (o.out.empty()) {
    std::cout << s.str();
  } else {
    std::ofstream f(o.out);
    if (!f) throw gka::PreconditionError("cannot write " + o.out);
    f << s.str();
  }
}

std::string residues_text(const std::vector<Degree>& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "}";
}

std::string verdict_text(const std::string& name, const gka::Verdict& v) {
  std::ostringstream s;
  s << std::left << std::setw(22) << name << (v.holds ? "holds" : "fails");
  if (v.window_certified) s << " (window-certified)";
  if (v.witness) s << "  witness (" << (*v.witness)[0] << "," << (*v.witness)[1] << "," << (*v.witness)[2] << ")";
  if (!v.detail.empty()) s << "  " << v.detail;
  s << "\n";
  return s.str();
}

/// Runs `fn(field)` with the field named by `name` ("Q", "GF101", "GF(7)", "GFp").
template <typename Fn>
int with_field_name(const std::string& name, Fn&& fn) {
  if (name == "Q") return fn(gka::Rationals{});
  if (name.rfind("GF", 0) == 0) {
    std::string digits;
    for (char c : name)
      if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
    return fn(gka::PrimeField(digits.empty() ? 101 : static_cast<std::uint32_t>(std::stoul(digits))));
  }
  throw gka::PreconditionError("unknown field '" + name + "', expected Q or GF(p)");
}

template <typename Fn>
int with_field_of(const Json& j, Fn&& fn) {
  const auto p = gka::json_io::field_from_json(j);
  if (!p) return fn(gka::Rationals{});
  return fn(gka::PrimeField(*p));
}

template <gka::ScalarField F>
std::string dims_text(const std::vector<std::size_t>& dims, const gka::DegreeWindow& w) {
  std::ostringstream s;
  s << "degree:";
  for (auto d : w.degrees()) s << std::setw(4) << d;
  s << "\ndim:   ";
  for (auto d : dims) s << std::setw(4) << d;
  s << "\n";
  return s.str();
}

// enumerate

int cmd_enumerate(const Options& o, int n, std::optional<int> max_n) {
  const int last = max_n.value_or(n);
  if (n < 1 || last < n) throw gka::PreconditionError("enumerate needs 1 <= n <= max-n");
  Json all = Json::array();
  std::string text;
  for (int k = n; k <= last; ++k) {
    const auto subsets = gka::enumerate_ring_supporting(k);
    Json j{{"n", k}, {"count", subsets.size()}, {"subsets", subsets}};
    if (k == 1) j["note"] = "U = Z";
    all.push_back(j);
    text += "n = " + std::to_string(k) + ": " + std::to_string(subsets.size()) + " subsets" +
            (k == 1 ? " (U = Z)" : "") + "\n";
    for (const auto& s : subsets) text += "  " + residues_text(s) + "\n";
  }
  emit(o, max_n ? all : all[0], text);
  return kHolds;
}

// check-set / check-pair

int cmd_check_set(const Options& o, const std::string& file) {
  const auto u = gka::json_io::degree_set_from_json(read_json(file));
  const auto v = gka::is_ring_supporting(u);
  Json j{{"set", gka::json_io::to_json(u)}, {"ring_supporting", gka::json_io::to_json(v)}};
  std::string text = "set                   " + u.to_string() + "\n" + verdict_text("ring_supporting", v);
  if (u.is_exact() && u.contains(0)) {
    const auto stab = gka::stabilizer(u);
    j["stabilizer"] = gka::json_io::to_json(stab);
    text += "stabilizer            " + stab.to_string() + "\n";
    if (v.holds) {
      const auto dec = gka::structure_decompose(u);
      j["structure"] = gka::to_string(dec.classification);
      text += "structure             " + gka::to_string(dec.classification) + "\n";
      if (!u.group().is_cyclic() && !u.is_full()) {
        if (const auto it = gka::is_translation_of_interval(u)) {
          j["interval_translation"] = {{"orientation", gka::to_string(it->orientation)}, {"n", it->n}, {"r", it->r}};
          text += "interval translation  " + gka::to_string(it->orientation) + " n=" + std::to_string(it->n) +
                  " r=" + std::to_string(it->r) + "\n";
        } else {
          j["interval_translation"] = nullptr;
        }
      }
    }
  }
  emit(o, j, text);
  return v.holds ? kHolds : kFalsified;
}

int cmd_check_pair(const Options& o, const std::string& s_file, const std::string& u_file) {
  const auto s = gka::json_io::degree_set_from_json(read_json(s_file));
  const auto u = gka::json_io::degree_set_from_json(read_json(u_file));
  const auto rp = gka::is_right_premodular(s, u);
  const auto rm = gka::is_right_modular(s, u);
  const auto lp = gka::is_left_premodular(u, s);
  const auto lm = gka::is_left_modular(u, s);
  Json j{{"right_premodular", gka::json_io::to_json(rp)},
         {"right_modular", gka::json_io::to_json(rm)},
         {"left_premodular", gka::json_io::to_json(lp)},
         {"left_modular", gka::json_io::to_json(lm)}};
  std::string text = verdict_text("right_premodular", rp) + verdict_text("right_modular", rm) +
                     verdict_text("left_premodular", lp) + verdict_text("left_modular", lm);
  if (s.is_exact() && u.is_exact()) {
    const auto q = gka::quotient_set(s, u);
    j["transporter"] = q ? gka::json_io::to_json(*q) : Json(nullptr);
    text += "(S:U)                 " + (q ? q->to_string() : std::string("empty")) + "\n";
  }
  emit(o, j, text);
  return rm.holds ? kHolds : kFalsified;
}

// kill / regrade

int cmd_kill(const Options& o, const std::string& alg_file, const std::string& u_file) {
  const auto aj = read_json(alg_file);
  const auto u = gka::json_io::degree_set_from_json(read_json(u_file));
  return with_field_of(aj, [&]<typename F>(const F& f) {
    const auto a = gka::json_io::algebra_from_json(f, aj);
    const auto k = gka::kill_support_algebra(a, u);
    const auto v = gka::validate_algebra(k);
    Json j{{"valid", gka::json_io::to_json(v)}, {"algebra", gka::json_io::to_json(k)}};
    emit(o, j, verdict_text("associative", v) + dims_text<F>(k.dims(), k.window()));
    return v.holds ? kHolds : kFalsified;
  });
}

int cmd_regrade(const Options& o, const std::string& alg_file, const std::string& map_file) {
  const auto aj = read_json(alg_file);
  const auto phi = gka::json_io::windowed_map_from_json(read_json(map_file));
  const auto pv = gka::is_pseudomorphism(phi);
  if (!pv.holds) {
    emit(o, Json{{"pseudomorphism", gka::json_io::to_json(pv)}}, verdict_text("pseudomorphism", pv));
    return kFalsified;
  }
  return with_field_of(aj, [&]<typename F>(const F& f) {
    const auto b = gka::json_io::algebra_from_json(f, aj);
    const auto r = gka::regrade_algebra(b, phi);
    const auto v = gka::validate_algebra(r);
    Json j{{"pseudomorphism", gka::json_io::to_json(pv)}, {"valid", gka::json_io::to_json(v)},
           {"algebra", gka::json_io::to_json(r)}};
    emit(o, j, verdict_text("pseudomorphism", pv) + verdict_text("associative", v) + dims_text<F>(r.dims(), r.window()));
    return v.holds ? kHolds : kFalsified;
  });
}

// lift-check / lift

template <gka::ScalarField F>
Json violations_json(const F& f, const gka::LiftReport<F>& r) {
  Json out = Json::array();
  for (const auto& v : r.violations)
    out.push_back(Json{{"m", v.m}, {"u", v.u}, {"v", v.v}, {"witness", gka::json_io::vector_json(f, v.witness)}});
  return out;
}

template <gka::ScalarField F>
std::string violations_text(const gka::LiftReport<F>& r) {
  std::ostringstream s;
  s << "liftable              " << (r.liftable ? "yes" : "no") << (r.window_certified ? " (window-certified)" : "")
    << "\n";
  if (!r.violations.empty()) {
    s << std::setw(6) << "m" << std::setw(6) << "u" << std::setw(6) << "v" << "\n";
    for (const auto& v : r.violations) s << std::setw(6) << v.m << std::setw(6) << v.u << std::setw(6) << v.v << "\n";
  }
  return s.str();
}

int cmd_lift(const Options& o, const std::string& x_file, const std::string& s_file, const std::string& u_file,
             const std::string& a_file, bool check_only, bool interval) {
  const auto xj = read_json(x_file);
  const auto aj = read_json(a_file);
  const auto s = gka::json_io::degree_set_from_json(read_json(s_file));
  const auto u = gka::json_io::degree_set_from_json(read_json(u_file));
  return with_field_of(aj, [&]<typename F>(const F& f) {
    const auto a = gka::share(gka::json_io::algebra_from_json(f, aj));
    const auto x = gka::json_io::module_from_json(f, xj);
    if (check_only) {
      const auto r = interval ? gka::liftability_check_interval(x, s, u, *a) : gka::liftability_check(x, s, u, *a);
      Json j{{"liftable", r.liftable}, {"window_certified", r.window_certified},
             {"criterion", interval ? "interval" : "general"}, {"violations", violations_json(f, r)}};
      emit(o, j, violations_text(r));
      return r.liftable ? kHolds : kFalsified;
    }
    const auto r = gka::lift_module(x, s, u, a);
    Json j{{"liftable", r.liftable}, {"window_certified", r.window_certified}, {"violations", violations_json(f, r)},
           {"isomorphism_certified", r.isomorphism_certified}};
    std::string text = violations_text(r);
    if (r.lift) {
      j["lift"] = gka::json_io::to_json(*r.lift);
      text += "isomorphism_certified " + std::string(r.isomorphism_certified ? "yes" : "no") + "\n" +
              dims_text<F>(r.lift->dims(), r.lift->window());
    }
    emit(o, j, text);
    return r.liftable ? kHolds : kFalsified;
  });
}

// verify-equivalence

int cmd_verify_equivalence(const Options& o, const std::string& field, std::size_t samples, std::uint64_t seed,
                           const std::string& alg_file, const std::string& s_file, const std::string& u_file) {
  const auto u = u_file.empty() ? DegreeSet::periodic(3, {0, 1}) : gka::json_io::degree_set_from_json(read_json(u_file));
  const auto s = s_file.empty() ? u : gka::json_io::degree_set_from_json(read_json(s_file));
  return with_field_name(field, [&]<typename F>(const F& f) {
    const auto a = gka::share(alg_file.empty() ? gka::free_algebra_quotient<F>(2, {"y*x"}, 4, f)
                                               : gka::json_io::algebra_from_json(f, read_json(alg_file)));
    const auto rep = gka::equivalence_harness(a, a->window(), s, u, samples, seed);
    Json rows = Json::array();
    std::ostringstream t;
    t << std::setw(6) << "pair" << std::setw(10) << "Hom(M,N)" << std::setw(14) << "Hom(M_S,N_S)" << std::setw(8)
      << "equal" << "\n";
    for (const auto& smp : rep.samples) {
      rows.push_back(Json{{"index", smp.index}, {"dims_m", smp.dims_m}, {"dims_n", smp.dims_n}, {"hom", smp.hom},
                          {"hom_killed", smp.hom_killed}, {"equal", smp.agree()}});
      t << std::setw(6) << smp.index << std::setw(10) << smp.hom << std::setw(14) << smp.hom_killed << std::setw(8)
        << (smp.agree() ? "yes" : "NO") << "\n";
    }
    Json j{{"field", f.name()}, {"seed", seed}, {"samples", rows}, {"all_equal", rep.all_agree()}};
    emit(o, j, t.str());
    return rep.all_agree() ? kHolds : kFalsified;
  });
}

// koszul-pipeline

int cmd_koszul(const Options& o, Degree n, Degree window, const std::string& field) {
  return with_field_name(field, [&]<typename F>(const F& f) {
    std::vector<gka::Vector<F>> rel{gka::relation_tensor<F>(
        [&] {
          std::string r = "x";
          for (Degree i = 1; i < n; ++i) r += "*x";
          return r;
        }(),
        1, static_cast<std::size_t>(n), f)};
    const auto lambda_dual = gka::n_homogeneous_dual(1, gka::Subspace<F>::span(f, 1, rel), static_cast<std::size_t>(n), window);
    const auto r = gka::koszul_pipeline(gka::share(lambda_dual), n);
    Json conds = Json::array();
    for (const auto& [k, ok] : r.conditions) conds.push_back(Json{{"k", k}, {"holds", ok}});
    Json j{{"U", gka::json_io::to_json(r.u)},
           {"delta", gka::json_io::to_json(r.delta)},
           {"regraded_dims", r.regraded->dims()},
           {"regraded_valid", gka::json_io::to_json(r.regraded_valid)},
           {"h_prime", gka::json_io::to_json(r.h_prime)},
           {"sigma_vanishing", r.sigma_vanishing},
           {"conditions", conds},
           {"regraded", gka::json_io::to_json(*r.regraded)}};
    std::ostringstream t;
    t << "U                     " << r.u.to_string() << "\n";
    t << "delta                ";
    for (auto v : r.delta.values()) t << " " << v;
    t << "\n" << dims_text<F>(r.regraded->dims(), r.regraded->window());
    t << verdict_text("regraded valid", r.regraded_valid);
    t << "H'                    " << r.h_prime.to_string() << "\n";
    t << "sigma vanishing       " << (r.sigma_vanishing ? "yes" : "no") << "\n";
    for (const auto& [k, ok] : r.conditions) t << "condition k=" << k << "          " << (ok ? "holds" : "fails") << "\n";
    emit(o, j, t.str());
    const bool ok = r.regraded_valid.holds && r.sigma_vanishing && r.conditions_hold();
    return ok ? kHolds : kFalsified;
  });
}

// make

template <gka::ScalarField F>
int emit_algebra(const Options& o, const gka::GradedAlgebra<F>& a) {
  const auto v = gka::validate_algebra(a);
  emit(o, gka::json_io::to_json(a), verdict_text("associative", v) + dims_text<F>(a.dims(), a.window()));
  return v.holds ? kHolds : kFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded algebras: support killing, regrading and liftability"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", o.out, "Write output to a file");

  int n = 1;
  std::optional<int> max_n;
  auto* en = app.add_subcommand("enumerate", "Ring-supporting subsets with stabilizer nZ");
  en->add_option("--n", n, "n")->required();
  en->add_option("--max-n", max_n, "Enumerate n..max-n");

  std::string f1, f2, f3, f4;
  auto* cs = app.add_subcommand("check-set", "Ring-supporting check for a DegreeSet file");
  cs->add_option("set", f1)->required()->check(CLI::ExistingFile);
  auto* cp = app.add_subcommand("check-pair", "Premodular and modular checks for (S, U)");
  cp->add_option("S", f1)->required()->check(CLI::ExistingFile);
  cp->add_option("U", f2)->required()->check(CLI::ExistingFile);
  auto* kl = app.add_subcommand("kill", "Support-restricted algebra A_U");
  kl->add_option("algebra", f1)->required()->check(CLI::ExistingFile);
  kl->add_option("U", f2)->required()->check(CLI::ExistingFile);
  auto* rg = app.add_subcommand("regrade", "Regrade an algebra along a pseudomorphism");
  rg->add_option("algebra", f1)->required()->check(CLI::ExistingFile);
  rg->add_option("map", f2)->required()->check(CLI::ExistingFile);

  bool interval = false;
  auto* lc = app.add_subcommand("lift-check", "Liftability criterion for an A_U-module");
  auto* lf = app.add_subcommand("lift", "Construct and certify a lift");
  for (auto* sub : {lc, lf}) {
    sub->add_option("module", f1, "Module over A_U")->required()->check(CLI::ExistingFile);
    sub->add_option("S", f2)->required()->check(CLI::ExistingFile);
    sub->add_option("U", f3)->required()->check(CLI::ExistingFile);
    sub->add_option("algebra", f4, "The algebra A")->required()->check(CLI::ExistingFile);
  }
  lc->add_flag("--interval", interval, "Use the interval-translation criterion");

  std::string field = "GF101";
  std::size_t samples = 20;
  std::uint64_t seed = 0;
  auto* ve = app.add_subcommand("verify-equivalence", "Hom(M,N) = Hom(M_S,N_S) on random pairs");
  ve->add_option("--samples", samples);
  ve->add_option("--seed", seed);
  ve->add_option("--field", field, "Q or GF(p)");
  ve->add_option("--alg", f1, "Algebra file (default K<x,y>/(yx) on [0,4])")->check(CLI::ExistingFile);
  ve->add_option("--S", f2, "S file (default U)")->check(CLI::ExistingFile);
  ve->add_option("--U", f3, "U file (default 3Z ∪ (3Z+1))")->check(CLI::ExistingFile);

  Degree kn = 3, window = 6;
  std::string kfield = "Q";
  auto* kp = app.add_subcommand("koszul-pipeline", "Regrade the dual of K[x]/(x^n) along δ");
  kp->add_option("--n", kn);
  kp->add_option("--window", window);
  kp->add_option("--field", kfield);

  auto* mk = app.add_subcommand("make", "Build a standard algebra");
  mk->require_subcommand(1);
  mk->fallthrough();
  std::string mfield = "Q";
  mk->add_option("--field", mfield, "Q or GF(p)");
  Degree zn = 5;
  auto* mg = mk->add_subcommand("group-zn", "K[Z_n]");
  mg->add_option("--n", zn)->required();
  int tk = 3;
  Degree tdeg = 1, twin = 6;
  auto* mt = mk->add_subcommand("trunc-poly", "K[x]/(x^k)");
  mt->add_option("--k", tk)->required();
  mt->add_option("--deg", tdeg);
  mt->add_option("--window", twin);
  std::string wcase = "iv";
  Degree wg = 1, wh = 2;
  std::optional<Degree> wlo, whi;
  auto* mw = mk->add_subcommand("witness", "K<x,y>/(x^2,y^2,yx)");
  mw->add_option("--case", wcase)->check(CLI::IsMember({"iii", "iv"}));
  mw->add_option("--deg-g", wg, "Degree of x");
  mw->add_option("--deg-h", wh, "Degree of y");
  mw->add_option("--lo", wlo, "Window bottom (default: smallest degree)");
  mw->add_option("--hi", whi, "Window top (default: largest degree)");
  std::size_t vdim = 1, dn = 3;
  std::vector<std::string> rels;
  Degree dwin = 6;
  auto* md = mk->add_subcommand("dual", "n-homogeneous dual of T(V)/(R)");
  md->add_option("--vdim", vdim);
  md->add_option("--n", dn);
  md->add_option("--rel", rels, "Relation over x, y, z, w (repeatable)");
  md->add_option("--window", dwin);
  int vertices = 1;
  std::vector<std::string> arrows, qrels;
  Degree qtop = 4;
  auto* mq = mk->add_subcommand("quiver", "Path algebra modulo relations");
  mq->add_option("--vertices", vertices);
  mq->add_option("--arrow", arrows, "name:source:target (repeatable)");
  mq->add_option("--rel", qrels, "Relation such as \"a*c - b*c\" (repeatable)");
  mq->add_option("--window", qtop);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*en) return cmd_enumerate(o, n, max_n);
    if (*cs) return cmd_check_set(o, f1);
    if (*cp) return cmd_check_pair(o, f1, f2);
    if (*kl) return cmd_kill(o, f1, f2);
    if (*rg) return cmd_regrade(o, f1, f2);
    if (*lc) return cmd_lift(o, f1, f2, f3, f4, true, interval);
    if (*lf) return cmd_lift(o, f1, f2, f3, f4, false, false);
    if (*ve) return cmd_verify_equivalence(o, field, samples, seed, f1, f2, f3);
    if (*kp) return cmd_koszul(o, kn, window, kfield);
    if (*mk) {
      return with_field_name(mfield, [&]<typename F>(const F& f) {
        if (*mg) return emit_algebra(o, gka::group_algebra<F>(zn, f));
        if (*mt) return emit_algebra(o, gka::truncated_poly<F>(tk, tdeg, gka::DegreeWindow::integers(std::min<Degree>(0, twin), std::max<Degree>(0, twin)), f));
        if (*mw) {
          const std::vector<Degree> degs{0, wg, wh, wg + wh};
          const Degree lo = wlo.value_or(*std::min_element(degs.begin(), degs.end()));
          const Degree hi = whi.value_or(*std::max_element(degs.begin(), degs.end()));
          const auto which = wcase == "iii" ? gka::WitnessCase::iii : gka::WitnessCase::iv;
          return emit_algebra(o, gka::two_var_witness<F>(which, wg, wh, gka::DegreeWindow::integers(lo, hi), f));
        }
        if (*md) {
          std::vector<gka::Vector<F>> vs;
          for (const auto& r : rels) vs.push_back(gka::relation_tensor<F>(r, vdim, dn, f));
          std::size_t size = 1;
          for (std::size_t i = 0; i < dn; ++i) size *= vdim;
          return emit_algebra(o, gka::n_homogeneous_dual(vdim, gka::Subspace<F>::span(f, size, vs), dn, dwin));
        }
        std::vector<gka::Arrow> qa;
        for (const auto& arrow : arrows) {
          const auto c1 = arrow.find(':'), c2 = arrow.rfind(':');
          if (c1 == std::string::npos || c1 == c2) throw gka::PreconditionError("arrow must be name:source:target");
          qa.push_back({arrow.substr(0, c1), std::stoi(arrow.substr(c1 + 1, c2 - c1 - 1)), std::stoi(arrow.substr(c2 + 1))});
        }
        return emit_algebra(o, gka::quiver_algebra<F>(vertices, qa, qrels, qtop, f));
      });
    }
  } catch (const gka::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return kUsage;
  } catch (const gka::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kUsage;
  } catch (const gka::GradingViolation& e) {
    std::cerr << "grading violation: " << e.what() << "\n";
    return kFalsified;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
