#include "latticecalc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string_view>

#include "latticecalc/constants.hpp"
#include "latticecalc/error.hpp"
#include "latticecalc/finite_lattice.hpp"
#include "latticecalc/mixed_norms.hpp"
#include "latticecalc/operators.hpp"
#include "latticecalc/rng.hpp"
#include "latticecalc/seq_lattice.hpp"

namespace latcalc {
namespace {

using InputsFn = std::function<Json()>;

// Tolerances. Closed-form evaluations are held to rounding level; anything
// that goes through a sphere search gets the optimizer's resolution.
constexpr double kExact = 1e-12;
constexpr double kNorm = 1e-9;
constexpr double kSearch = 1e-6;

std::uint64_t string_tag(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Every probe draws from its own stream, so a failure is reproduced from
// (seed, sweep, instance) alone.
Rng instance_rng(std::uint64_t seed, std::string_view sweep, std::uint64_t i) {
  return substream(seed ^ string_tag(sweep), i);
}

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// Gaussian entries with occasional exact zeros; never the zero vector.
std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  bool nonzero = false;
  for (auto& x : v) {
    x = uniform01(rng) < 0.1 ? 0.0 : gaussian(rng);
    nonzero = nonzero || x != 0.0;
  }
  if (!nonzero) v[pick(rng, 0, n - 1)] = 1.0;
  return v;
}

VectorTuple random_tuple(Rng& rng, std::size_t n, std::size_t m, SpaceTag tag = SpaceTag::lattice) {
  VectorTuple t(n, m, tag);
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = random_vector(rng, m);
    std::copy(row.begin(), row.end(), t.row(j).begin());
  }
  return t;
}

// |s_i| <= |t_i| with random signs.
std::vector<double> dominated(Rng& rng, std::span<const double> t) {
  std::vector<double> s(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) s[i] = t[i] * uniform(rng, -1.0, 1.0);
  return s;
}

Json vec(std::span<const double> v) { return std::vector<double>(v.begin(), v.end()); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::vector<double> add(std::span<const double> a, std::span<const double> b) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

std::vector<double> scale(std::span<const double> a, double lambda) {
  std::vector<double> r(a.begin(), a.end());
  for (auto& x : r) x *= lambda;
  return r;
}

bool numeric(const SeqNormFamily& f) { return f.kind() == FamilyKind::numeric_dual; }

const std::vector<double>& test_weights() {
  static const std::vector<double> w{2.0, 1.0, 0.5, 3.0, 1.5, 1.0, 2.5, 0.75,
                                     1.25, 0.8, 2.0, 1.0, 0.6, 1.75, 1.1, 0.9};
  return w;
}

// The families every sweep runs over.
std::vector<SeqNormFamily> standard_families() {
  return {SeqNormFamily::lp(1.0),
          SeqNormFamily::lp(1.5),
          SeqNormFamily::lp(2.0),
          SeqNormFamily::lp(3.0),
          SeqNormFamily::lp(kInfinity),
          SeqNormFamily::weighted_lp(1.0, test_weights()),
          SeqNormFamily::orlicz(OrliczFunction::from_expression("u^2"))};
}

std::vector<SeqNormFamily> closed_form_families() {
  auto all = standard_families();
  all.pop_back();
  return all;
}

class Recorder {
 public:
  Recorder(std::string name, std::uint64_t seed, int cap) : seed_(seed), cap_(cap) {
    result_.name = std::move(name);
  }

  // lhs <= rhs up to tol relative to max(|lhs|, |rhs|).
  void leq(const std::string& check, std::uint64_t instance, double lhs, double rhs, double tol,
           const InputsFn& inputs) {
    const double s = std::max(std::abs(lhs), std::abs(rhs));
    const double excess = s > 0.0 ? std::max(0.0, (lhs - rhs) / s) : 0.0;
    record(check, instance, lhs - rhs <= tol * s, lhs, rhs, excess, inputs);
  }

  void eq(const std::string& check, std::uint64_t instance, double lhs, double rhs, double tol,
          const InputsFn& inputs) {
    const double s = std::max(std::abs(lhs), std::abs(rhs));
    const double excess = s > 0.0 ? std::abs(lhs - rhs) / s : 0.0;
    record(check, instance, std::abs(lhs - rhs) <= tol * s, lhs, rhs, excess, inputs);
  }

  // Coordinatewise versions; lhs/rhs report the worst coordinate.
  void leq(const std::string& check, std::uint64_t instance, std::span<const double> lhs,
           std::span<const double> rhs, double tol, const InputsFn& inputs) {
    vector_check(check, instance, lhs, rhs, tol, false, inputs);
  }
  void eq(const std::string& check, std::uint64_t instance, std::span<const double> lhs,
          std::span<const double> rhs, double tol, const InputsFn& inputs) {
    vector_check(check, instance, lhs, rhs, tol, true, inputs);
  }

  void truth(const std::string& check, std::uint64_t instance, bool ok, double lhs, double rhs,
             const InputsFn& inputs) {
    record(check, instance, ok, lhs, rhs, ok ? 0.0 : 1.0, inputs);
  }

  // Stream of probe i in `sweep`; violations until the next call carry it.
  Rng probe(std::string_view sweep, std::uint64_t i) {
    begin(sweep);
    return instance_rng(seed_, sweep, i);
  }
  // For checks on fixed inputs.
  void begin(std::string_view sweep) { sweep_.assign(sweep); }

  void inconclusive() { ++result_.inconclusive; }

  SuiteResult take() { return std::move(result_); }

 private:
  void vector_check(const std::string& check, std::uint64_t instance, std::span<const double> lhs,
                    std::span<const double> rhs, double tol, bool two_sided, const InputsFn& inputs) {
    bool ok = lhs.size() == rhs.size();
    double worst = 0.0, wl = 0.0, wr = 0.0;
    for (std::size_t i = 0; ok && i < lhs.size(); ++i) {
      const double s = std::max(std::abs(lhs[i]), std::abs(rhs[i]));
      const double d = two_sided ? std::abs(lhs[i] - rhs[i]) : lhs[i] - rhs[i];
      const double excess = s > 0.0 ? std::max(0.0, d / s) : 0.0;
      if (d > tol * s) ok = false;
      if (excess >= worst) {
        worst = excess;
        wl = lhs[i];
        wr = rhs[i];
      }
    }
    record(check, instance, ok, wl, wr, worst, inputs);
  }

  void record(const std::string& check, std::uint64_t instance, bool ok, double lhs, double rhs,
              double excess, const InputsFn& inputs) {
    ++result_.checks;
    result_.max_violation = std::max(result_.max_violation, excess);
    if (ok) return;
    ++result_.failures;
    if (static_cast<int>(result_.violations.size()) >= cap_) return;
    Violation v;
    v.check = check;
    v.seed = seed_;
    v.sweep = sweep_;
    v.instance = instance;
    v.inputs = inputs ? inputs() : Json::object();
    v.inputs_digest = inputs_digest(v.inputs);
    v.lhs = lhs;
    v.rhs = rhs;
    v.gap = lhs - rhs;
    result_.violations.push_back(std::move(v));
  }

  std::uint64_t seed_;
  int cap_;
  std::string sweep_;
  SuiteResult result_;
};

// ---------------------------------------------------------------- seq_lattice

void norm_sweeps(Recorder& rec, const std::vector<SeqNormFamily>& families,
                 const VerifyOptions& o) {
  for (const auto& f : families) {
    const std::string sweep = "norms/" + f.label();
    const int count = numeric(f) ? o.numeric_probes : o.probes;
    const double tol = numeric(f) ? kSearch : kNorm;
    for (int i = 0; i < count; ++i) {
      Rng rng = rec.probe(sweep, i);
      const std::size_t n = pick(rng, 1, 8);
      const auto t = random_vector(rng, n);
      const auto r = random_vector(rng, n);
      const auto s = dominated(rng, t);
      const double lambda = 3.0 * gaussian(rng);
      const auto inputs = [&] {
        return Json{{"family", to_json(f)}, {"t", vec(t)}, {"r", vec(r)}, {"s", vec(s)},
                    {"lambda", lambda}};
      };
      const double nt = f.norm(t);
      rec.truth(sweep + "/definite", i, nt > 0.0 && f.norm(std::vector<double>(n, 0.0)) == 0.0,
                nt, 0.0, inputs);
      rec.eq(sweep + "/homogeneity", i, f.norm(scale(t, lambda)), std::abs(lambda) * nt, tol, inputs);
      rec.leq(sweep + "/monotone", i, f.norm(s), nt, tol, inputs);
      rec.leq(sweep + "/triangle", i, f.norm(add(t, r)), nt + f.norm(r), tol, inputs);
      std::vector<double> padded = t;
      padded.push_back(0.0);
      rec.eq(sweep + "/padding", i, f.norm(padded), nt, 0.0, inputs);
      const double e = f.unit_vector_norm(n - 1);
      rec.truth(sweep + "/unit_vector", i, e > 0.0 && std::isfinite(e), e, 0.0, inputs);
    }
  }
}

SuiteResult suite_dual_norms(const VerifyOptions& o) {
  Recorder rec("seq_lattice.dual_norms", o.seed, o.max_recorded);
  norm_sweeps(rec,
              {kothe_dual(SeqNormFamily::weighted_lp(1.0, test_weights())),
               kothe_dual(SeqNormFamily::orlicz(OrliczFunction::from_expression("u^2")),
                          DualMethod::numeric(o.dual_budget, o.seed))},
              o);
  return rec.take();
}

SuiteResult suite_norms(const VerifyOptions& o) {
  Recorder rec("seq_lattice.norms", o.seed, o.max_recorded);
  norm_sweeps(rec, standard_families(), o);

  // Orlicz functions: phi(0) = 0 and midpoint convexity.
  const OrliczFunction phis[] = {OrliczFunction::from_expression("u^2"),
                                 OrliczFunction::from_expression("u^3 + u"),
                                 OrliczFunction::from_expression("exp(u) - 1 - u")};
  for (const auto& phi : phis) {
    const std::string sweep = "orlicz/" + phi.label();
    rec.begin(sweep);
    rec.eq(sweep + "/zero", 0, phi(0.0), 0.0, 0.0, [&] { return Json{{"phi", phi.label()}}; });
    for (int i = 0; i < o.probes; ++i) {
      Rng rng = rec.probe(sweep, i);
      const double a = uniform(rng, 0.0, 4.0 * phi.unit_level());
      const double b = uniform(rng, 0.0, 4.0 * phi.unit_level());
      const double chord = 0.5 * (phi(a) + phi(b));
      // Absolute slack 1e-12, scaled up only where the values themselves exceed 1.
      const double mid = phi(0.5 * (a + b));
      rec.truth(sweep + "/midpoint_convex", i, mid <= chord + 1e-12 * std::max(1.0, chord), mid,
                chord, [&] { return Json{{"phi", phi.label()}, {"a", a}, {"b", b}}; });
    }
  }
  return rec.take();
}

SuiteResult suite_duality(const VerifyOptions& o) {
  Recorder rec("seq_lattice.duality", o.seed, o.max_recorded);
  const DualMethod num = DualMethod::numeric(o.dual_budget, o.seed);

  for (const auto& f : standard_families()) {
    const bool searched = !f.has_analytic_dual();
    const int count = searched ? o.numeric_probes : o.probes;
    const double tol = searched ? kSearch : kNorm;
    const DualMethod method = searched ? num : DualMethod::analytic();

    // Truncation: dual norms of prefixes grow with the prefix; zero tails are invisible.
    const std::string trunc = "truncation/" + f.label();
    for (int i = 0; i < count; ++i) {
      Rng rng = rec.probe(trunc, i);
      const std::size_t n = pick(rng, 2, 8);
      const std::size_t m = pick(rng, 1, n - 1);
      const auto beta = random_vector(rng, n);
      std::vector<double> head(beta.begin(), beta.begin() + static_cast<std::ptrdiff_t>(m));
      std::vector<double> head_padded = head;
      head_padded.resize(n, 0.0);
      const auto inputs = [&] { return Json{{"family", to_json(f)}, {"beta", vec(beta)}, {"m", m}}; };
      const DualNormResult dm = kothe_dual_norm(f, head, method);
      // The shorter witness starts the longer search, so the comparison is certified.
      std::vector<double> hint = dm.witness;
      hint.resize(n, 0.0);
      const std::vector<std::vector<double>> hints{hint};
      const DualNormResult dn = kothe_dual_norm(f, beta, method, hints);
      rec.leq(trunc + "/monotone", i, dm.value, dn.value, tol, inputs);
      rec.eq(trunc + "/zero_tail", i, kothe_dual_norm(f, head_padded, method).value, dm.value, 0.0,
             inputs);
    }

    const std::string holder = "holder/" + f.label();
    for (int i = 0; i < o.probes; ++i) {
      Rng rng = rec.probe(holder, i);
      const std::size_t n = pick(rng, 1, 8);
      const auto alpha = random_vector(rng, n);
      const auto beta = random_vector(rng, n);
      const HolderReport h = holder_check(f, alpha, beta, method);
      rec.leq(holder + "/inequality", i, h.lhs, h.rhs, kNorm,
              [&] { return Json{{"family", to_json(f)}, {"alpha", vec(alpha)}, {"beta", vec(beta)}}; });
    }
  }

  // Conjugate witnesses attain equality for l_p.
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
    const SeqNormFamily y = SeqNormFamily::lp(p);
    const double q = conjugate_exponent(p);
    const std::string sweep = "holder_equality/" + y.label();
    for (int i = 0; i < o.probes; ++i) {
      Rng rng = rec.probe(sweep, i);
      const auto beta = random_vector(rng, pick(rng, 1, 8));
      const auto alpha = norming_functional(q, beta);
      const HolderReport h = holder_check(y, alpha, beta);
      rec.eq(sweep + "/attained", i, h.lhs, h.rhs, kNorm,
             [&] { return Json{{"p", number_to_json(p)}, {"beta", vec(beta)}}; });
    }
  }

  // Closed forms against the search, and the bidual.
  const auto closed = closed_form_families();
  for (int i = 0; i < o.numeric_probes; ++i) {
    const auto& f = closed[static_cast<std::size_t>(i) % closed.size()];
    Rng rng = rec.probe("analytic_vs_numeric", i);
    const auto beta = random_vector(rng, pick(rng, 1, 8));
    const double a = kothe_dual_norm(f, beta).value;
    const double s = kothe_dual_norm(f, beta, num).value;
    rec.eq("analytic_vs_numeric/" + f.label(), i, s, a, kSearch,
           [&] { return Json{{"family", to_json(f)}, {"beta", vec(beta)}}; });
  }
  for (const auto& f : closed) {
    const SeqNormFamily bidual = kothe_dual(kothe_dual(f));
    const std::string sweep = "bidual/" + f.label();
    for (int i = 0; i < o.probes; ++i) {
      Rng rng = rec.probe(sweep, i);
      const auto t = random_vector(rng, pick(rng, 1, 8));
      rec.eq(sweep, i, bidual.norm(t), f.norm(t), kNorm,
             [&] { return Json{{"family", to_json(f)}, {"t", vec(t)}}; });
    }
  }
  return rec.take();
}

// ------------------------------------------------------------- finite_lattice

struct HZoo {
  std::vector<HomogeneousFunction> by_arity[5];
};

// A fixed set of homogeneous functions of arity 1..4.
HZoo make_zoo(std::uint64_t seed) {
  HZoo zoo;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto& z = zoo.by_arity[n];
    Rng rng = instance_rng(seed, "zoo", n);
    for (std::size_t j = 0; j < n; ++j) z.push_back(HomogeneousFunction::projection(n, j));
    z.push_back(HomogeneousFunction::y_norm(SeqNormFamily::lp(2.0), n));
    z.push_back(HomogeneousFunction::y_norm(SeqNormFamily::lp(1.5), n));
    z.push_back(HomogeneousFunction::y_norm(SeqNormFamily::lp(kInfinity), n));
    z.push_back(HomogeneousFunction::join(n));
    z.push_back(HomogeneousFunction::meet(n));
    z.push_back(HomogeneousFunction::linear(random_vector(rng, n)));
    const std::vector<HomogeneousFunction> inner{HomogeneousFunction::join(n),
                                                 HomogeneousFunction::linear(random_vector(rng, n))};
    z.push_back(HomogeneousFunction::compose(HomogeneousFunction::y_norm(SeqNormFamily::lp(3.0), 2),
                                             inner));
  }
  return zoo;
}

FiniteLattice random_lattice(Rng& rng, const std::vector<SeqNormFamily>& families, std::size_t max_dim) {
  return FiniteLattice(pick(rng, 1, max_dim), families[pick(rng, 0, families.size() - 1)]);
}

// T on R^m given by v -> d_i v[pi(i)] with d_i > 0: a lattice homomorphism.
struct DiagPerm {
  std::vector<double> d;
  std::vector<std::size_t> perm;
  std::vector<double> operator()(std::span<const double> v) const {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = d[i] * v[perm[i]];
    return r;
  }
};

DiagPerm random_diag_perm(Rng& rng, std::size_t m) {
  DiagPerm t;
  t.d.resize(m);
  for (auto& x : t.d) x = uniform(rng, 0.1, 3.0);
  t.perm.resize(m);
  std::iota(t.perm.begin(), t.perm.end(), 0);
  for (std::size_t i = m; i > 1; --i) std::swap(t.perm[i - 1], t.perm[pick(rng, 0, i - 1)]);
  return t;
}

VectorTuple map_rows(const VectorTuple& x, const std::function<std::vector<double>(std::span<const double>)>& f) {
  VectorTuple out(x.size(), x.dim());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto r = f(x.row(j));
    std::copy(r.begin(), r.end(), out.row(j).begin());
  }
  return out;
}

SuiteResult suite_finite_lattice(const VerifyOptions& o) {
  Recorder rec("finite_lattice", o.seed, o.max_recorded);
  const auto families = standard_families();
  const HZoo zoo = make_zoo(o.seed);
  const auto pick_h = [&](Rng& rng, std::size_t n) -> const HomogeneousFunction& {
    const auto& z = zoo.by_arity[n];
    return z[pick(rng, 0, z.size() - 1)];
  };

  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("lattice", i);
    const FiniteLattice x = random_lattice(rng, families, 5);
    const auto v = random_vector(rng, x.dim());
    const auto s = dominated(rng, v);
    const auto inputs = [&] { return Json{{"space", to_json(x)}, {"x", vec(v)}, {"s", vec(s)}}; };
    rec.leq("lattice/monotone", i, x.norm(s), x.norm(v), kNorm, inputs);
    rec.eq("lattice/abs_is_join", i, lattice_abs(v), lattice_join(v, scale(v, -1.0)), 0.0, inputs);
  }

  // Dual lattice: monotone, and the pairing bound. Searched duals get the
  // primal vector as a start, which makes the bound certified.
  const DualMethod num = DualMethod::numeric(o.dual_budget, o.seed);
  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("dual_lattice", i);
    const FiniteLattice x = random_lattice(rng, families, 5);
    const bool searched = !x.norm_family().has_analytic_dual();
    if (searched && i >= o.numeric_probes) continue;
    const auto v = random_vector(rng, x.dim());
    const auto phi = random_vector(rng, x.dim());
    const auto phi_small = dominated(rng, phi);
    const auto inputs = [&] {
      return Json{{"space", to_json(x)}, {"x", vec(v)}, {"phi", vec(phi)}, {"phi_small", vec(phi_small)}};
    };
    const DualNormResult small = kothe_dual_norm(x.norm_family(), phi_small, num);
    const std::vector<std::vector<double>> hints{small.witness, v};
    const double dual = searched ? kothe_dual_norm(x.norm_family(), phi, num, hints).value
                                 : x.dual().norm(phi);
    const double dual_small = searched ? small.value : x.dual().norm(phi_small);
    rec.leq("dual_lattice/monotone", i, dual_small, dual, kNorm, inputs);
    rec.leq("dual_lattice/pairing_bound", i, std::abs(pairing(v, phi)), dual * x.norm(v), kNorm, inputs);
  }

  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("krivine", i);
    const std::size_t n = pick(rng, 1, 4);
    const std::size_t m = pick(rng, 1, 5);
    const auto x = random_tuple(rng, n, m);
    const auto& h = pick_h(rng, n);
    const auto& h2 = pick_h(rng, n);
    const auto t = random_vector(rng, n);
    const double lambda = uniform(rng, 0.0, 5.0);
    const double a = gaussian(rng), b = gaussian(rng);
    const std::size_t j = pick(rng, 0, n - 1);
    const auto inputs = [&] {
      return Json{{"h", h.label()}, {"h2", h2.label()}, {"x", to_json(x)}, {"t", vec(t)},
                  {"lambda", lambda}, {"a", a}, {"b", b}, {"j", j}};
    };

    rec.eq("krivine/h_homogeneity", i, h(scale(t, lambda)), lambda * h(t), kNorm, inputs);
    rec.eq("krivine/projection_recovery", i,
           krivine_apply(HomogeneousFunction::projection(n, j), x), x.row(j), 0.0, inputs);
    const auto lo = krivine_apply(HomogeneousFunction::meet(n), x);
    const auto mid = krivine_apply(HomogeneousFunction::projection(n, j), x);
    const auto hi = krivine_apply(HomogeneousFunction::join(n), x);
    rec.leq("krivine/order_preserving", i, lo, mid, 0.0, inputs);
    rec.leq("krivine/order_preserving", i, mid, hi, 0.0, inputs);

    const HomogeneousFunction combo(
        n, [&h, &h2, a, b](std::span<const double> u) { return a * h(u) + b * h2(u); }, "combo",
        std::abs(a) * h.hnorm() + std::abs(b) * h2.hnorm());
    const auto r1 = krivine_apply(h, x);
    const auto r2 = krivine_apply(h2, x);
    std::vector<double> expected(m);
    for (std::size_t w = 0; w < m; ++w) expected[w] = a * r1[w] + b * r2[w];
    rec.eq("krivine/linear_in_h", i, krivine_apply(combo, x), expected, kExact, inputs);

    const FiniteLattice lat(m, families[pick(rng, 0, families.size() - 1)]);
    const BoundCheck bc = krivine_bound_check(lat, h, x);
    rec.leq("krivine/bound", i, bc.lhs, bc.rhs, kNorm,
            [&] { auto j2 = inputs(); j2["space"] = to_json(lat); return j2; });
  }

  for (int i = 0; i < o.compose_probes; ++i) {
    Rng rng = rec.probe("compose", i);
    const std::size_t n = pick(rng, 1, 4);
    const std::size_t k = pick(rng, 1, 4);
    const auto x = random_tuple(rng, n, pick(rng, 1, 5));
    std::vector<HomogeneousFunction> g;
    for (std::size_t r = 0; r < k; ++r) g.push_back(pick_h(rng, n));
    const auto& h = pick_h(rng, k);
    const VectorCheck c = krivine_compose_check(g, h, x);
    rec.eq("krivine/compose", i, c.lhs, c.rhs, 0.0, [&] {
      Json gs = Json::array();
      for (const auto& gi : g) gs.push_back(gi.label());
      return Json{{"g", gs}, {"h", h.label()}, {"x", to_json(x)}};
    });
  }

  // Pointwise properties of the lattice-valued Y-norm.
  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("y_norm", i);
    const auto& y = families[pick(rng, 0, families.size() - 1)];
    const std::size_t n = pick(rng, 1, 6);
    const std::size_t m = pick(rng, 1, 5);
    const auto x = random_tuple(rng, n, m);
    const auto z = random_tuple(rng, n, m);
    VectorTuple small(n, m), absx(n, m);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t w = 0; w < m; ++w) {
        small(j, w) = x(j, w) * uniform(rng, -1.0, 1.0);
        absx(j, w) = std::abs(x(j, w));
      }
    }
    const double lambda = 3.0 * gaussian(rng);
    const FiniteLattice lat(m, families[pick(rng, 0, families.size() - 1)]);
    const DiagPerm hom = random_diag_perm(rng, m);
    Matrix pos(m, m);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) pos(r, c) = uniform01(rng) < 0.3 ? 0.0 : uniform(rng, 0.0, 2.0);
    }
    const auto inputs = [&] {
      return Json{{"Y", to_json(y)}, {"x", to_json(x)}, {"z", to_json(z)}, {"small", to_json(small)},
                  {"lambda", lambda}, {"space", to_json(lat)}, {"d", hom.d}, {"perm", hom.perm},
                  {"positive", pos.to_rows()}};
    };

    const auto nx = y_vector_norm(y, x);
    rec.eq("y_norm/homogeneity", i, y_vector_norm(y, x.scaled(lambda)), scale(nx, std::abs(lambda)),
           kExact, inputs);
    rec.leq("y_norm/monotone", i, y_vector_norm(y, small), nx, kExact, inputs);
    rec.eq("y_norm/abs_invariant", i, y_vector_norm(y, absx), nx, 0.0, inputs);
    const auto nz = y_vector_norm(y, z);
    rec.leq("y_norm/triangle", i, y_vector_norm(y, x + z), add(nx, nz), kExact, inputs);
    rec.leq("y_norm/triangle_in_X", i, norm_XnY_tau(lat, y, x + z),
            norm_XnY_tau(lat, y, x) + norm_XnY_tau(lat, y, z), kNorm, inputs);
    const auto mx = max_abs(x);
    rec.leq("y_norm/ones_bound", i, nx, scale(mx, y.ones_norm(n)), kExact, inputs);
    rec.leq("y_norm/ones_bound_in_X", i, lat.norm(nx), y.ones_norm(n) * lat.norm(mx), kNorm, inputs);

    // Lattice homomorphisms commute with the calculus; positive maps satisfy
    // |Tv| <= T|v| and hence ||Tx||_Y <= T ||x||_Y.
    const VectorTuple hx = map_rows(x, hom);
    rec.eq("y_norm/lattice_hom", i, hom(nx), y_vector_norm(y, hx), kExact, inputs);
    const auto& h = pick_h(rng, std::min<std::size_t>(n, 4));
    if (h.arity() == n) {
      rec.eq("krivine/lattice_hom", i, hom(krivine_apply(h, x)), krivine_apply(h, hx), kExact, inputs);
    }
    const auto apply_pos = [&pos, m](std::span<const double> v) {
      std::vector<double> r(m, 0.0);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) r[a] += pos(a, b) * v[b];
      }
      return r;
    };
    rec.leq("positive/abs", i, lattice_abs(apply_pos(x.row(0))), apply_pos(lattice_abs(x.row(0))),
            kExact, inputs);
    rec.leq("positive/y_norm", i, y_vector_norm(y, map_rows(x, apply_pos)), apply_pos(nx), kExact,
            inputs);
  }

  // Sup representation for Y = l_p: sampled dual-ball families stay below the
  // Y-norm; the per-coordinate norming functionals reach it.
  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("sup_representation", i);
    const double ps[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
    const double p = ps[pick(rng, 0, 4)];
    const std::size_t n = pick(rng, 1, 5);
    const auto x = random_tuple(rng, n, pick(rng, 1, 5));
    const SeqNormFamily y = SeqNormFamily::lp(p);
    const SeqNormFamily ystar = kothe_dual(y);
    VectorTuple fam(pick(rng, 1, 16), n);
    for (std::size_t k = 0; k < fam.size(); ++k) {
      const auto a = random_vector(rng, n);
      const double d = ystar.norm(a);
      for (std::size_t j = 0; j < n; ++j) fam(k, j) = a[j] / d;
    }
    const auto inputs = [&] { return Json{{"p", number_to_json(p)}, {"x", to_json(x)}, {"family", to_json(fam)}}; };
    const auto nx = y_vector_norm(y, x);
    rec.leq("sup_representation/sampled", i, dual_family_join(fam, x), nx, kExact, inputs);
    rec.eq("sup_representation/analytic", i, dual_family_join(lp_sup_family(p, x), x), nx, kNorm, inputs);
  }
  return rec.take();
}

// ---------------------------------------------------------------- mixed_norms

SuiteResult suite_mixed_norms(const VerifyOptions& o) {
  Recorder rec("mixed_norms", o.seed, o.max_recorded);
  const auto families = standard_families();
  const auto closed = closed_form_families();

  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("mixed", i);
    const auto& y = families[pick(rng, 0, families.size() - 1)];
    const FiniteLattice x_lat = random_lattice(rng, families, 5);
    const std::size_t n = pick(rng, 1, 6);
    const auto x = random_tuple(rng, n, x_lat.dim());
    const auto z = random_tuple(rng, n, x_lat.dim());
    const std::size_t k = pick(rng, 1, n);
    const auto inputs = [&] {
      return Json{{"Y", to_json(y)}, {"space", to_json(x_lat)}, {"x", to_json(x)}, {"z", to_json(z)}, {"k", k}};
    };

    const double tau = norm_XnY_tau(x_lat, y, x);
    const double eny = norm_EnY(x_lat, y, x);
    rec.leq("tau/triangle", i, norm_XnY_tau(x_lat, y, x + z), tau + norm_XnY_tau(x_lat, y, z), kNorm, inputs);
    rec.leq("tau/prefix_monotone", i, norm_XnY_tau(x_lat, y, x.prefix(k)), tau, kExact, inputs);
    rec.leq("EnY/prefix_monotone", i, norm_EnY(x_lat, y, x.prefix(k)), eny, kExact, inputs);
    rec.eq("tau/padding", i, norm_XnY_tau(x_lat, y, x.padded(2)), tau, 0.0, inputs);
    rec.eq("EnY/padding", i, norm_EnY(x_lat, y, x.padded(2)), eny, 0.0, inputs);

    // An eventually-zero sequence is normed at its last nonzero index.
    const VectorTuple seq = x.tail_from(k - 1).padded(k);
    const VectorTuple support = seq.prefix(seq.support_length());
    rec.eq("sequence/last_nonzero_index", i, norm_XnY_tau(x_lat, y, seq), norm_XnY_tau(x_lat, y, support),
           0.0, inputs);

    const EquivalenceReport eq = norm_equivalence_check(x_lat, y, x);
    rec.leq("equivalence/lower", i, eq.lower_constant * eq.l1_norm, eq.tau_norm, kNorm, inputs);
    rec.leq("equivalence/upper", i, eq.tau_norm, eq.upper_constant * eq.l1_norm, kNorm, inputs);

    for (TailFlavor flavor : {TailFlavor::plain, TailFlavor::tau}) {
      const auto prof = tail_profile(x_lat, y, x, flavor);
      bool ok = prof.size() == n + 1 && prof.back() == 0.0;
      for (std::size_t q = 1; ok && q < prof.size(); ++q) ok = prof[q] <= prof[q - 1] * (1.0 + kExact);
      rec.truth(flavor == TailFlavor::plain ? "tail/nonincreasing_plain" : "tail/nonincreasing_tau", i,
                ok, prof.empty() ? 0.0 : prof.front(), 0.0, inputs);
    }
  }

  // Fubini collapse for matched exponents.
  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("fubini", i);
    const double ps[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
    const double p = ps[pick(rng, 0, 4)];
    const FiniteLattice x_lat(pick(rng, 1, 5), SeqNormFamily::lp(p));
    const auto x = random_tuple(rng, pick(rng, 1, 6), x_lat.dim());
    rec.eq("fubini", i, norm_XnY_tau(x_lat, SeqNormFamily::lp(p), x), norm_EnY(x_lat, SeqNormFamily::lp(p), x),
           kExact, [&] { return Json{{"p", number_to_json(p)}, {"x", to_json(x)}}; });
  }

  // Join of sampled Y*-unit families bounded by the tau-norm; l_p maximizers attain it.
  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("wsde", i);
    const auto& y = closed[pick(rng, 0, closed.size() - 1)];
    const SeqNormFamily ystar = kothe_dual(y);
    const FiniteLattice x_lat = random_lattice(rng, families, 5);
    const std::size_t n = pick(rng, 1, 6);
    const auto x = random_tuple(rng, n, x_lat.dim());
    VectorTuple fam(pick(rng, 1, 16), n);
    for (std::size_t k = 0; k < fam.size(); ++k) {
      const auto a = random_vector(rng, n);
      const double d = ystar.norm(a);
      for (std::size_t j = 0; j < n; ++j) fam(k, j) = a[j] / d;
    }
    const auto inputs = [&] {
      return Json{{"Y", to_json(y)}, {"space", to_json(x_lat)}, {"x", to_json(x)}, {"family", to_json(fam)}};
    };
    const double tau = norm_XnY_tau(x_lat, y, x);
    rec.leq("wsde/sampled", i, x_lat.norm(dual_family_join(fam, x)), tau, kNorm, inputs);
    if (y.kind() == FamilyKind::lp) {
      const double attained = x_lat.norm(dual_family_join(lp_sup_family(y.exponent(), x), x));
      rec.leq("wsde/analytic_attains", i, tau - 1e-6, attained, 0.0, inputs);
      rec.leq("wsde/analytic_below", i, attained, tau, kNorm, inputs);
    }
  }

  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("pairing", i);
    const auto& y = closed[pick(rng, 0, closed.size() - 1)];
    const FiniteLattice e = random_lattice(rng, closed, 4);
    const auto s = random_tuple(rng, pick(rng, 1, 6), e.dim());
    const auto w = random_tuple(rng, pick(rng, 1, 6), e.dim());
    const PairingReport pr = pairing_rho(e, y, s, w);
    rec.leq("pairing/bound", i, pr.lhs, pr.rhs, kNorm,
            [&] { return Json{{"Y", to_json(y)}, {"space", to_json(e)}, {"s", to_json(s)}, {"w", to_json(w)}}; });
  }

  // qcv over l1, l2, l3 and the Orlicz u^2 family.
  const std::vector<SeqNormFamily> qcv_families{SeqNormFamily::lp(1.0), SeqNormFamily::lp(2.0), SeqNormFamily::lp(3.0),
                                                SeqNormFamily::orlicz(OrliczFunction::from_expression("u^2"))};
  const DualMethod num = DualMethod::numeric(o.dual_budget, o.seed);
  for (const auto& y : qcv_families) {
    const int count = y.has_analytic_dual() ? o.probes / 4 : o.numeric_probes / 4;
    const std::string sweep = "qcv/" + y.label();
    for (int i = 0; i < count; ++i) {
      Rng rng = rec.probe(sweep, i);
      const std::size_t n = pick(rng, 1, 5);
      const std::size_t m = pick(rng, 1, 4);
      const auto x = random_tuple(rng, n, m);
      const auto phis = random_tuple(rng, n, m);
      const QcvReport q = qcv_check(y, x, phis, num);
      rec.leq(sweep, i, q.lhs, q.rhs, kNorm,
              [&] { return Json{{"Y", to_json(y)}, {"x", to_json(x)}, {"phis", to_json(phis)}}; });
    }
  }

  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("join_sup", i);
    const std::size_t m = pick(rng, 1, 5);
    const auto phis = random_tuple(rng, pick(rng, 1, 5), m);
    auto x = random_vector(rng, m);
    for (auto& v : x) v = std::abs(v);
    const JoinSupReport js = join_sup_check(phis, x, 8, splitmix64(o.seed + static_cast<std::uint64_t>(i)));
    const auto inputs = [&] { return Json{{"phis", to_json(phis)}, {"x", vec(x)}}; };
    rec.eq("join_sup/greedy_attains", i, js.greedy_value, js.join_value, kExact, inputs);
    rec.leq("join_sup/random_below", i, js.best_random_value, js.join_value, kExact, inputs);
  }
  return rec.take();
}

// ------------------------------------------------------------------ operators

OperatorInstance random_operator(Rng& rng, std::size_t rows, std::size_t cols,
                                 const std::vector<SeqNormFamily>& families) {
  Matrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = gaussian(rng);
  }
  FiniteLattice e(cols, families[pick(rng, 0, families.size() - 1)]);
  FiniteLattice x(rows, families[pick(rng, 0, families.size() - 1)]);
  return OperatorInstance(std::move(a), std::move(e), std::move(x));
}

SuiteResult suite_operators(const VerifyOptions& o) {
  Recorder rec("operators", o.seed, o.max_recorded);
  const auto closed = closed_form_families();

  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("linear", i);
    const OperatorInstance t = random_operator(rng, pick(rng, 1, 4), pick(rng, 1, 4), closed);
    const auto w = random_tuple(rng, pick(rng, 1, 5), t.matrix.cols());
    const auto phi = random_vector(rng, t.matrix.rows());
    const auto inputs = [&] { return Json{{"operator", to_json(t)}, {"w", to_json(w)}, {"phi", vec(phi)}}; };

    rec.truth("apply_n/padding", i, apply_n(t, w.padded()) == apply_n(t, w).padded(), 0.0, 0.0, inputs);
    const OperatorInstance tt = transpose(transpose(t));
    rec.truth("transpose/involution", i, tt.matrix == t.matrix, 0.0, 0.0, inputs);
    const OperatorInstance ts = transpose(t);
    const auto tw = latcalc::apply(t, w.row(0));
    const auto tphi = latcalc::apply(ts, phi);
    double mag = 0.0;
    for (std::size_t r = 0; r < t.matrix.rows(); ++r) {
      for (std::size_t c = 0; c < t.matrix.cols(); ++c) mag += std::abs(t.matrix(r, c) * w(0, c) * phi[r]);
    }
    const double lhs = pairing(tw, phi), rhs = pairing(w.row(0), tphi);
    rec.truth("transpose/adjoint_identity", i, std::abs(lhs - rhs) <= kExact * mag, lhs, rhs, inputs);

    // The associated operator on a sequence with a zero tail.
    const VectorTuple seq = w.padded(2);
    const VectorTuple img = apply_truncated(t, seq);
    const std::size_t len = seq.support_length();
    rec.truth("truncated/matches_apply_n", i,
              img.prefix(len) == apply_n(t, seq.prefix(len)) && img.support_length() <= len, 0.0, 0.0, inputs);
  }

  for (int i = 0; i < o.optimizer_instances; ++i) {
    Rng rng = rec.probe("norm_vs_adjoint", i);
    const OperatorInstance t = random_operator(rng, 3, 3, closed);
    const auto a = operator_norm(t, o.budget, splitmix64(o.seed ^ 0x1ULL) + i);
    const auto b = operator_norm(transpose(t), o.budget, splitmix64(o.seed ^ 0x2ULL) + i);
    if (!a.converged || !b.converged) rec.inconclusive();
    rec.eq("operator_norm/adjoint", i, a.value, b.value, kSearch,
           [&] { return Json{{"operator", to_json(t)}}; });
  }

  for (int i = 0; i < o.numeric_probes; ++i) {
    Rng rng = rec.probe("nnlema", i);
    const OperatorInstance t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3), closed);
    const auto& y = closed[pick(rng, 0, closed.size() - 1)];
    const auto w = random_tuple(rng, pick(rng, 1, 5), t.matrix.cols(), SpaceTag::normed_space);
    const NnlemaReport r = nnlema_check(t, y, w, o.budget, splitmix64(o.seed) + i);
    const auto inputs = [&] { return Json{{"operator", to_json(t)}, {"Y", to_json(y)}, {"w", to_json(w)}}; };
    if (r.status == CheckStatus::inconclusive) {
      rec.inconclusive();
    } else {
      rec.leq("nnlema", i, r.lhs, r.rhs, kSearch, inputs);
    }
  }
  return rec.take();
}

// ------------------------------------------------------------------ constants

void check_estimate(Recorder& rec, const std::string& sweep, std::uint64_t i, const OperatorInstance& op,
                    const SeqNormFamily& y, const ConstantEstimate& est, const InputsFn& inputs) {
  bool monotone = true;
  double best = -kInfinity;
  for (std::size_t k = 0; k < est.per_n.size(); ++k) {
    const auto& level = est.per_n[k];
    if (k > 0 && level.lower_bound < est.per_n[k - 1].lower_bound) monotone = false;
    best = std::max(best, level.lower_bound);
    rec.eq(sweep + "/witness_replay", i, flavor_ratio(op, y, est.flavor, level.witness), level.lower_bound,
           kNorm, inputs);
  }
  rec.truth(sweep + "/levels_nondecreasing", i, monotone, 0.0, 0.0, inputs);
  rec.eq(sweep + "/overall_is_max", i, est.overall, best, 0.0, inputs);
}

SuiteResult suite_constants(const VerifyOptions& o) {
  Recorder rec("constants", o.seed, o.max_recorded);
  const auto closed = closed_form_families();

  for (int i = 0; i < o.probes; ++i) {
    Rng rng = rec.probe("ratio", i);
    const OperatorInstance t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3), closed);
    const auto& y = closed[pick(rng, 0, closed.size() - 1)];
    const std::size_t n = pick(rng, 1, 4);
    const auto w = random_tuple(rng, n, t.matrix.cols(), SpaceTag::normed_space);
    const auto x = random_tuple(rng, n, t.matrix.cols());
    const double lambda = 3.0 * gaussian(rng);
    const OperatorInstance lt = t.scaled(lambda);
    const auto inputs = [&] {
      return Json{{"operator", to_json(t)}, {"Y", to_json(y)}, {"w", to_json(w)}, {"x", to_json(x)}, {"lambda", lambda}};
    };
    rec.eq("ratio/convexity_homogeneity", i, convexity_ratio(lt, y, w), std::abs(lambda) * convexity_ratio(t, y, w),
           kExact, inputs);
    rec.eq("ratio/concavity_homogeneity", i, concavity_ratio(lt, y, x), std::abs(lambda) * concavity_ratio(t, y, x),
           kExact, inputs);
  }

  const int few = std::max(1, o.optimizer_instances / 4);
  for (int i = 0; i < few; ++i) {
    Rng rng = rec.probe("estimate_homogeneity", i);
    const OperatorInstance t = random_operator(rng, pick(rng, 2, 3), pick(rng, 2, 3), closed);
    const auto& y = closed[pick(rng, 0, closed.size() - 1)];
    const Flavor flavor = i % 2 == 0 ? Flavor::convexity : Flavor::concavity;
    const double lambda = 3.0 * gaussian(rng);
    const std::uint64_t seed = splitmix64(o.seed + static_cast<std::uint64_t>(i));
    const auto inputs = [&] { return Json{{"operator", to_json(t)}, {"Y", to_json(y)}, {"lambda", lambda}}; };
    const ConstantEstimate a = estimate_constant(t, y, flavor, 2, o.budget, seed);
    const ConstantEstimate b = estimate_constant(t.scaled(lambda), y, flavor, 2, o.budget, seed);
    rec.eq("estimate/homogeneity", i, b.overall, std::abs(lambda) * a.overall, kNorm, inputs);
    check_estimate(rec, "estimate", i, t, y, a, inputs);
    check_estimate(rec, "estimate", i, t.scaled(lambda), y, b, inputs);
  }

  // The duality theorem at truncation level n, for each operator under both
  // Y, at the default budget and at twice that budget.
  std::vector<double> gaps, gaps_doubled;
  for (int i = 0; i < o.optimizer_instances; ++i) {
    Rng rng = rec.probe("duality", i);
    const OperatorInstance t = random_operator(rng, 3, 3, closed);
    const std::size_t n = 1 + static_cast<std::size_t>(i) % 3;
    for (double p : {2.0, 1.5}) {
      const SeqNormFamily y = SeqNormFamily::lp(p);
      const std::uint64_t seed = splitmix64(o.seed ^ static_cast<std::uint64_t>(i));
      const DualityReport r = duality_check(t, y, n, o.budget, seed);
      const DualityReport r2 = duality_check(t, y, n, o.budget.doubled(), seed);
      const auto inputs = [&] { return Json{{"operator", to_json(t)}, {"Y", to_json(y)}, {"n", n}}; };
      if (!r.converged) rec.inconclusive();
      rec.leq("duality/rel_gap", i, r.rel_gap, 5e-2, 0.0, inputs);
      check_estimate(rec, "duality/convex", i, t, y, r.convex, inputs);
      check_estimate(rec, "duality/concave_dual", i, transpose(t), kothe_dual(y), r.concave_dual, inputs);
      gaps.push_back(r.rel_gap);
      gaps_doubled.push_back(r2.rel_gap);
    }
  }
  if (!gaps.empty()) {
    rec.begin("duality_budget");
    const double m1 = median(gaps);
    const double m2 = median(gaps_doubled);
    // Gaps sit near rounding level, so the slack is absolute.
    rec.truth("duality/median_gap_nonincreasing", 0, m2 <= m1 + kNorm, m2, m1,
              [&] { return Json{{"median_default", m1}, {"median_doubled", m2}}; });
  }
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
    const SeqNormFamily y = SeqNormFamily::lp(p);
    rec.begin("identity_duality");
    const OperatorInstance id = identity_operator(FiniteLattice(3, y));
    const DualityReport r = duality_check(id, y, 2, o.budget, o.seed);
    const auto inputs = [&] { return Json{{"p", number_to_json(p)}}; };
    rec.leq("duality/identity_gap", 0, r.rel_gap, 1e-6, 0.0, inputs);
    rec.eq("duality/identity_value", 0, r.convex_n, 1.0, kSearch, inputs);
  }

  // Y = l_inf convexity and Y = l_1 concavity are bounded by n ||T||. The rows
  // of the witness start the norm search, so an underestimated ||T|| cannot
  // fail the check.
  for (int i = 0; i < few; ++i) {
    Rng rng = rec.probe("degenerate", i);
    const OperatorInstance t = random_operator(rng, pick(rng, 2, 3), pick(rng, 2, 3), closed);
    const std::size_t n = 2;
    for (Flavor flavor : {Flavor::convexity, Flavor::concavity}) {
      const SeqNormFamily y = SeqNormFamily::lp(flavor == Flavor::convexity ? kInfinity : 1.0);
      const ConstantEstimate est = estimate_constant(t, y, flavor, n, o.budget, o.seed + static_cast<std::uint64_t>(i));
      const auto& w = est.per_n.back().witness;
      std::vector<std::vector<double>> starts;
      for (std::size_t j = 0; j < w.size(); ++j) starts.emplace_back(w.row(j).begin(), w.row(j).end());
      const double tnorm = operator_norm(t, o.budget, o.seed, starts).value;
      rec.leq(flavor == Flavor::convexity ? "degenerate/linf_convexity" : "degenerate/l1_concavity", i,
              est.per_n.back().lower_bound, static_cast<double>(n) * tnorm, kNorm,
              [&] { return Json{{"operator", to_json(t)}, {"witness", to_json(w)}}; });
    }
  }

  // Sphere ascent against the exhaustive grid on tiny instances.
  for (int i = 0; i < few; ++i) {
    Rng rng = rec.probe("oracle", i);
    const OperatorInstance t = random_operator(rng, 2, 2, closed);
    const auto& y = closed[pick(rng, 0, closed.size() - 1)];
    for (Flavor flavor : {Flavor::convexity, Flavor::concavity}) {
      const ConstantEstimate est = estimate_constant(t, y, flavor, 2, o.budget, o.seed);
      for (std::size_t n = 1; n <= 2; ++n) {
        const ConstantEstimate grid = brute_force_constant(t, y, flavor, n, o.grid_resolution);
        const auto& g = grid.per_n.front();
        const double e = est.per_n[n - 1].lower_bound;
        const auto inputs = [&] {
          return Json{{"operator", to_json(t)}, {"Y", to_json(y)}, {"flavor", to_string(flavor)}, {"n", n}};
        };
        rec.eq("oracle/agreement", i, e, g.lower_bound, 1e-2, inputs);
        rec.leq("oracle/below_certified_upper", i, e, *g.upper_bound, kNorm, inputs);
      }
    }
  }

  // Functional norms on both mixed spaces against the dual mixed norms.
  for (int i = 0; i < o.optimizer_instances; ++i) {
    Rng rng = rec.probe("functional_norm", i);
    const auto& y = closed[pick(rng, 0, closed.size() - 1)];
    const FiniteLattice space(pick(rng, 1, 3), closed[pick(rng, 0, closed.size() - 1)]);
    const auto s = random_tuple(rng, pick(rng, 1, 3), space.dim());
    const auto inputs = [&] { return Json{{"Y", to_json(y)}, {"space", to_json(space)}, {"s", to_json(s)}}; };
    const std::uint64_t seed = splitmix64(o.seed + static_cast<std::uint64_t>(i));
    const auto a = functional_norm(MixedSpace::EnY, space, y, s, o.budget, seed);
    rec.eq("functional_norm/EnY", i, a.value, norm_EnY(space.dual(), kothe_dual(y), s), 1e-3, inputs);
    const auto b = functional_norm(MixedSpace::XnY_tau, space, y, s, o.budget, seed);
    rec.eq("functional_norm/tau", i, b.value, norm_XnY_tau(space.dual(), kothe_dual(y), s), 1e-3, inputs);
  }

  // Identity constants of matched l_p lattices.
  for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
    const SeqNormFamily y = SeqNormFamily::lp(p);
    rec.begin("lattice_constants");
    const auto [cv, cc] = lattice_constants(FiniteLattice(2, y), y, 2, o.budget, o.seed);
    const auto inputs = [&] { return Json{{"p", number_to_json(p)}}; };
    rec.eq("lattice_constants/convexity", 0, cv.overall, 1.0, kSearch, inputs);
    rec.eq("lattice_constants/concavity", 0, cc.overall, 1.0, kSearch, inputs);
  }
  return rec.take();
}

struct SuiteEntry {
  const char* name;
  SuiteResult (*run)(const VerifyOptions&);
};

constexpr SuiteEntry kSuites[] = {
    {"seq_lattice.norms", suite_norms},
    {"seq_lattice.dual_norms", suite_dual_norms},
    {"seq_lattice.duality", suite_duality},
    {"finite_lattice", suite_finite_lattice},
    {"mixed_norms", suite_mixed_norms},
    {"operators", suite_operators},
    {"constants", suite_constants},
};

}  // namespace

long VerifyReport::checks() const {
  long c = 0;
  for (const auto& s : suites) c += s.checks;
  return c;
}

long VerifyReport::failures() const {
  long c = 0;
  for (const auto& s : suites) c += s.failures;
  return c;
}

std::vector<std::string> verify_suite_names() {
  std::vector<std::string> names;
  for (const auto& s : kSuites) names.emplace_back(s.name);
  return names;
}

VerifyReport run_verify(const VerifyOptions& options, const std::vector<std::string>& only) {
  for (const auto& name : only) {
    const auto names = verify_suite_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw InputError("unknown verify suite '" + name + "'");
    }
  }
  VerifyReport report;
  report.seed = options.seed;
  for (const auto& s : kSuites) {
    if (!only.empty() && std::find(only.begin(), only.end(), s.name) == only.end()) continue;
    report.suites.push_back(s.run(options));
  }
  return report;
}

Json to_json(const SuiteResult& suite) {
  Json violations = Json::array();
  for (const auto& v : suite.violations) {
    violations.push_back({{"check", v.check},
                          {"seed", v.seed},
                          {"sweep", v.sweep},
                          {"instance", v.instance},
                          {"inputs", v.inputs},
                          {"inputs_digest", v.inputs_digest},
                          {"lhs", number_to_json(v.lhs)},
                          {"rhs", number_to_json(v.rhs)},
                          {"gap", number_to_json(v.gap)}});
  }
  return {{"name", suite.name},
          {"checks", suite.checks},
          {"failures", suite.failures},
          {"inconclusive", suite.inconclusive},
          {"passed", suite.failures == 0},
          {"max_violation", number_to_json(suite.max_violation)},
          {"violations", std::move(violations)}};
}

Json to_json(const VerifyReport& report) {
  Json suites = Json::array();
  for (const auto& s : report.suites) suites.push_back(to_json(s));
  return {{"seed", report.seed},
          {"checks", report.checks()},
          {"failures", report.failures()},
          {"passed", report.passed()},
          {"suites", std::move(suites)}};
}

}  // namespace latcalc
