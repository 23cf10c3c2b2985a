#include "prodsys/checks.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "prodsys/fock.hpp"
#include "prodsys/linalg.hpp"
#include "prodsys/wick.hpp"

namespace prodsys {

namespace {

using json = nlohmann::json;
using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

std::string sci(double v) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(3) << v;
  return out.str();
}

class Check {
 public:
  explicit Check(std::string name) : start_(Clock::now()) { r_.name = std::move(name); }

  void residual(const std::string& key, double value, double tol, const json& inputs) {
    ++r_.cases;
    double& worst = worst_[key];
    worst = std::max(worst, value);
    if (!(value <= tol)) fail(inputs, key + " = " + sci(value) + " exceeds " + sci(tol));
  }

  void expect(bool ok, const json& inputs, const std::string& what) {
    ++r_.cases;
    if (!ok) fail(inputs, what);
  }

  void inexact(const std::string& why, const json& inputs) {
    ++inexact_;
    if (r_.status == Status::pass) {
      r_.status = Status::inexact;
      r_.detail = why;
      r_.inputs = inputs;
    }
  }

  std::size_t cases() const { return r_.cases; }
  void witness(const std::string& key, json value) { r_.witnesses[key] = std::move(value); }
  void note(const std::string& d) {
    if (r_.detail.empty()) r_.detail = d;
  }

  CheckReport finish() {
    for (const auto& [k, v] : worst_) r_.residuals[k] = v;
    if (failures_) r_.witnesses["failures"] = failures_;
    if (inexact_) r_.witnesses["inexact_cases"] = inexact_;
    if (r_.cases == 0 && r_.detail.empty()) r_.detail = "vacuous: no applicable cases";
    r_.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    return r_;
  }

 private:
  void fail(const json& inputs, const std::string& what) {
    ++failures_;
    if (r_.status != Status::fail) {
      r_.status = Status::fail;
      r_.inputs = inputs;
      r_.detail = what;
    }
  }

  CheckReport r_;
  std::map<std::string, double> worst_;
  std::size_t failures_ = 0;
  std::size_t inexact_ = 0;
  Clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Sampling

std::size_t uniform(Rng& g, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(g); }

bool coin(Rng& g, double p = 0.5) { return std::bernoulli_distribution(p)(g); }

template <class T>
const T& pick(Rng& g, const std::vector<T>& v) {
  return v[uniform(g, v.size())];
}

// Small Gaussian integers keep products exact in double arithmetic.
Complex rand_coeff(Rng& g) {
  std::uniform_int_distribution<int> d(-3, 3);
  for (;;) {
    const Complex c(d(g), coin(g) ? d(g) : 0);
    if (c != Complex(0.0)) return c;
  }
}

BasisLabel rand_label(Rng& g, const ProductSystem& sys, const MonoidElement& s) { return pick(g, sys.basis(s)); }

FiberVector rand_vector(Rng& g, const ProductSystem& sys, const MonoidElement& s, std::size_t max_terms = 2) {
  const auto labels = sys.basis(s);
  FiberVector v(s);
  const std::size_t terms = 1 + uniform(g, max_terms);
  for (std::size_t k = 0; k < terms; ++k) v.add(pick(g, labels), rand_coeff(g));
  v.prune();
  if (v.empty()) v.add(labels.front(), 1.0);
  return v;
}

FiberOperator rand_operator(Rng& g, const ProductSystem& sys, const MonoidElement& s, std::size_t max_terms = 3) {
  const auto labels = sys.basis(s);
  FiberOperator op(s);
  const std::size_t terms = 1 + uniform(g, max_terms);
  for (std::size_t k = 0; k < terms; ++k) op.add(pick(g, labels), pick(g, labels), rand_coeff(g));
  op.prune();
  if (op.entries().empty()) op.add(labels.front(), labels.front(), 1.0);
  return op;
}

Exponent rand_exponent(Rng& g, FactorKind kind, bool positive) {
  if (kind == FactorKind::integers) {
    const int e = static_cast<int>(1 + uniform(g, 2));
    return positive || coin(g) ? e : -e;
  }
  const Exponent e(static_cast<int>(1 + uniform(g, 4)), static_cast<int>(1 + uniform(g, 3)));
  return positive || coin(g) ? e : Exponent(-e);
}

MonoidElement rand_element(Rng& g, const Monoid& m, bool positive, std::size_t max_letters = 3) {
  std::vector<Letter> raw;
  const std::size_t n = uniform(g, max_letters + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto f = static_cast<std::uint32_t>(uniform(g, m.factor_count()));
    raw.push_back(Letter{f, rand_exponent(g, m.factors()[f].kind, positive)});
  }
  return m.normalize(std::move(raw));
}

// ---------------------------------------------------------------------------
// Formatting of replay inputs

std::string vec_str(const Monoid& m, const FiberVector& v) {
  std::ostringstream out;
  out << m.format(v.grade()) << ":";
  bool first = true;
  for (const auto& [l, c] : v.coords()) {
    out << (first ? "" : " + ") << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "j)e["
        << format_label(l) << "]";
    first = false;
  }
  return out.str();
}

std::string op_str(const Monoid& m, const FiberOperator& op) {
  if (op.is_identity()) return "1@" + m.format(op.grade());
  std::ostringstream out;
  out << m.format(op.grade()) << ":";
  bool first = true;
  for (const auto& [key, c] : op.entries()) {
    out << (first ? "" : " + ") << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "j)|"
        << format_label(key.first) << "><" << format_label(key.second) << "|";
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Shared context

struct Ctx {
  const SystemConfig& cfg;
  std::uint64_t seed;
  std::size_t samples;
  Rng rng;

  const Monoid& monoid() const { return cfg.monoid(); }
  const ProductSystem& sys() const { return cfg.system; }
  std::size_t n(std::size_t fallback) const { return samples ? samples : fallback; }
  json in(json j) const {
    j["seed"] = seed;
    return j;
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

unsigned depth_limit(const IdealBound& b) {
  if (const auto* l = std::get_if<LengthBound>(&b)) return l->max_degree;
  const auto& lim = std::get<BoxBound>(b).limits;
  return lim.empty() ? 0 : *std::min_element(lim.begin(), lim.end());
}

std::vector<MonoidElement> up_to_degree(const std::vector<MonoidElement>& all, unsigned d) {
  std::vector<MonoidElement> out;
  for (const auto& s : all) {
    if (grade_degree(s) <= d) out.push_back(s);
  }
  return out;
}

std::vector<MonoidElement> nonidentity(const std::vector<MonoidElement>& all) {
  std::vector<MonoidElement> out;
  for (const auto& s : all) {
    if (!s.is_identity()) out.push_back(s);
  }
  return out;
}

IdealBound fock_bound(const Ctx& c) { return c.cfg.require_truncation(); }

std::vector<MonoidElement> check_ideal(const Ctx& c) {
  return c.monoid().enumerate_ideal(c.cfg.truncation.value_or(IdealBound{LengthBound{3}}));
}

double diff(const SparseMatrix& a, const SparseMatrix& b) { return max_abs(SparseMatrix(a - b)); }

// ---------------------------------------------------------------------------
// Independent order oracle: prefix test on the expanded generator string for
// free products and total orders, coordinatewise comparison for direct sums.
// Only integer exponents are expanded.

std::vector<std::uint32_t> expand(const MonoidElement& s) {
  std::vector<std::uint32_t> out;
  for (const auto& l : s.letters()) {
    if (boost::multiprecision::denominator(l.exponent) != 1 || l.exponent < 0) {
      throw UnsupportedOperation("oracle expansion needs nonnegative integer exponents");
    }
    const auto e = static_cast<std::size_t>(boost::multiprecision::numerator(l.exponent));
    out.insert(out.end(), e, l.factor);
  }
  return out;
}

std::vector<std::size_t> letter_counts(const std::vector<std::uint32_t>& word, std::size_t factors) {
  std::vector<std::size_t> out(factors, 0);
  for (auto f : word) ++out[f];
  return out;
}

struct OracleElement {
  MonoidElement element;
  std::vector<std::uint32_t> word;
  std::vector<std::size_t> counts;
};

bool oracle_leq(MonoidKind kind, const OracleElement& s, const OracleElement& t) {
  if (kind == MonoidKind::direct_sum) {
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
      if (s.counts[i] > t.counts[i]) return false;
    }
    return true;
  }
  return s.word.size() <= t.word.size() && std::equal(s.word.begin(), s.word.end(), t.word.begin());
}

std::vector<OracleElement> oracle_elements(const Monoid& m, const std::vector<MonoidElement>& xs) {
  std::vector<OracleElement> out;
  for (const auto& x : xs) {
    auto w = expand(x);
    auto cnt = letter_counts(w, m.factor_count());
    out.push_back({x, std::move(w), std::move(cnt)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suites

using Suite = std::function<std::vector<CheckReport>(Ctx&)>;

std::vector<CheckReport> order_axioms(Ctx& c) {
  const Monoid& m = c.monoid();
  std::vector<MonoidElement> pool;
  std::vector<MonoidElement> small;
  if (m.has_dense_factor()) {
    for (std::size_t k = 0; k < 24; ++k) pool.push_back(rand_element(c.rng, m, true));
    small.assign(pool.begin(), pool.begin() + 12);
  } else {
    pool = m.enumerate_ideal(LengthBound{3});
    small = m.enumerate_ideal(LengthBound{2});
  }

  Check refl("reflexive"), anti("antisymmetric"), trans("transitive"), inv("left-invariant");
  Check cone("cone-pointed"), norm("normal-form-idempotent"), assoc("associative"), ub("join-upper-bound");
  Check least("join-least-on-pool"), jassoc("join-associative");

  for (const auto& s : pool) refl.expect(m.leq(s, s), c.in({{"s", m.format(s)}}), "s <= s failed");
  for (const auto& s : pool) {
    for (const auto& t : pool) {
      const json in = c.in({{"s", m.format(s)}, {"t", m.format(t)}});
      const bool st = m.leq(s, t);
      anti.expect(!(st && m.leq(t, s)) || s == t, in, "s <= t <= s with s != t");
      for (const auto& u : pool) {
        if (st && m.leq(t, u)) {
          trans.expect(m.leq(s, u), c.in({{"s", m.format(s)}, {"t", m.format(t)}, {"u", m.format(u)}}),
                       "s <= t <= u but not s <= u");
        }
      }
      const JoinResult j = m.join(s, t);
      if (j.is_finite()) {
        ub.expect(m.leq(s, j.value()) && m.leq(t, j.value()), in, "join is not an upper bound");
      }
      for (const auto& u : pool) {
        if (m.leq(s, u) && m.leq(t, u)) {
          least.expect(j.is_finite() && m.leq(j.value(), u),
                       c.in({{"s", m.format(s)}, {"t", m.format(t)}, {"u", m.format(u)}}),
                       "common upper bound not above the join");
        }
      }
    }
  }
  for (const auto& r : small) {
    for (const auto& s : small) {
      for (const auto& t : small) {
        const json in = c.in({{"r", m.format(r)}, {"s", m.format(s)}, {"t", m.format(t)}});
        inv.expect(m.leq(s, t) == m.leq(m.multiply(r, s), m.multiply(r, t)), in, "left translation changed order");
        assoc.expect(m.multiply(m.multiply(r, s), t) == m.multiply(r, m.multiply(s, t)), in, "(rs)t != r(st)");
        const JoinResult rs = m.join(r, s);
        const JoinResult st = m.join(s, t);
        const JoinResult left = rs.is_finite() ? m.join(rs.value(), t) : JoinResult(Infinity{});
        const JoinResult right = st.is_finite() ? m.join(r, st.value()) : JoinResult(Infinity{});
        jassoc.expect(left == right, in, "(r v s) v t != r v (s v t)");
      }
    }
  }
  const std::size_t n = c.n(200);
  for (std::size_t k = 0; k < n; ++k) {
    const MonoidElement g = rand_element(c.rng, m, false, 4);
    const json in = c.in({{"g", m.format(g)}});
    cone.expect(!(m.is_positive(g) && m.is_positive(m.invert(g))) || g.is_identity(), in, "P meets P^-1 off e");
    cone.expect(m.multiply(g, m.invert(g)).is_identity(), in, "g g^-1 != e");
    norm.expect(m.normalize(g.letters()) == g, in, "normalize is not idempotent");
    norm.expect(m.parse(m.format(g)) == g, in, "parse(format(g)) != g");
  }
  std::vector<CheckReport> out;
  for (Check* ch : {&refl, &anti, &trans, &inv, &cone, &norm, &assoc, &ub, &least, &jassoc}) {
    out.push_back(ch->finish());
  }
  return out;
}

std::vector<CheckReport> join_oracle(Ctx& c) {
  const Monoid& m = c.monoid();
  const auto pairs = oracle_elements(m, m.enumerate_ideal(LengthBound{3}));
  const auto scan = oracle_elements(m, m.enumerate_ideal(LengthBound{6}));
  Check leq("leq-oracle"), join("join-oracle");
  std::size_t finite = 0, infinite = 0;
  for (const auto& s : pairs) {
    for (const auto& t : pairs) {
      const json in = c.in({{"s", m.format(s.element)}, {"t", m.format(t.element)}});
      leq.expect(m.leq(s.element, t.element) == oracle_leq(m.kind(), s, t), in, "leq disagrees with the oracle");
      std::vector<const OracleElement*> upper;
      for (const auto& u : scan) {
        if (oracle_leq(m.kind(), s, u) && oracle_leq(m.kind(), t, u)) upper.push_back(&u);
      }
      const OracleElement* lub = nullptr;
      for (const auto* u : upper) {
        if (std::all_of(upper.begin(), upper.end(), [&](const auto* v) { return oracle_leq(m.kind(), *u, *v); })) {
          lub = u;
          break;
        }
      }
      const JoinResult got = m.join(s.element, t.element);
      const JoinResult want = lub ? JoinResult(lub->element) : JoinResult(Infinity{});
      (lub ? finite : infinite)++;
      join.expect(got == want, c.in({{"s", m.format(s.element)}, {"t", m.format(t.element)},
                                     {"got", m.format(got)}, {"oracle", m.format(want)}}),
                  "join disagrees with the brute-force least upper bound");
    }
  }
  join.witness("finite_joins", finite);
  join.witness("infinite_joins", infinite);
  join.witness("scan_size", scan.size());
  return {leq.finish(), join.finish()};
}

std::vector<CheckReport> theta_suite(Ctx& c) {
  const Monoid& m = c.monoid();
  const auto elems = oracle_elements(m, m.enumerate_ideal(LengthBound{3}));
  Check image("theta-letter-counts"), hom("theta-join"), inj("theta-injective-on-joinable");
  for (const auto& s : elems) {
    const DirectSumImage th = m.theta(s.element);
    bool ok = true;
    for (std::uint32_t f = 0; f < m.factor_count(); ++f) ok = ok && th.at(f) == Exponent(s.counts[f]);
    image.expect(ok, c.in({{"s", m.format(s.element)}}), "theta differs from the letter counts");
  }
  std::size_t joinable = 0;
  for (const auto& s : elems) {
    for (const auto& t : elems) {
      const JoinResult j = m.join(s.element, t.element);
      if (j.is_infinite()) continue;
      ++joinable;
      const json in = c.in({{"s", m.format(s.element)}, {"t", m.format(t.element)}});
      const DirectSumImage ts = m.theta(s.element), tt = m.theta(t.element);
      hom.expect(m.theta(j.value()) == ts.join(tt), in, "theta(s v t) != theta(s) v theta(t)");
      inj.expect(!(ts == tt) || s.element == t.element, in, "theta(s) = theta(t) for distinct joinable s, t");
    }
  }
  hom.witness("joinable_pairs", joinable);
  return {image.finish(), hom.finish(), inj.finish()};
}

std::vector<CheckReport> product_system_suite(Ctx& c) {
  const Monoid& m = c.monoid();
  const ProductSystem& sys = c.sys();
  const auto grades = check_ideal(c);
  const auto small = up_to_degree(grades, 2);
  const bool vn = sys.style() == SystemStyle::vn_truncated;
  Check dims("fiber-dimensions"), bij("multiplication-bijective"), assoc("multiplication-associative");
  Check fac("factor-inverse"), inner_c("inner-product-multiplicative"), pmul("promote-multiplicative");
  Check ptrans("promote-transitive"), align("compact-align-reduction"), fp("free-product-tensor");

  std::size_t lost = 0;
  for (const auto& s : small) {
    for (const auto& t : small) {
      const MonoidElement st = m.multiply(s, t);
      const json in = c.in({{"s", m.format(s)}, {"t", m.format(t)}});
      const FiberDim ds = sys.dim(s), dt = sys.dim(t), dst = sys.dim(st);
      if (!vn) {
        dims.expect(dst.count == ds.count * dt.count && dst.infinite == (ds.infinite || dt.infinite), in,
                    "dim E_st != dim E_s * dim E_t");
      }
      std::set<BasisLabel> images;
      std::size_t made = 0;
      bool valid = true;
      for (const auto& x : sys.basis(s)) {
        for (const auto& y : sys.basis(t)) {
          const auto xy = sys.try_multiply_labels(s, x, t, y);
          if (!xy) {
            ++lost;
            continue;
          }
          ++made;
          valid = valid && sys.is_label(st, *xy);
          images.insert(*xy);
        }
      }
      bij.expect(valid && images.size() == made, in, "multiplication is not injective on basis labels");
      if (made == ds.count * dt.count) {
        bij.expect(made == dst.count, in, "multiplication does not cover the basis of E_st");
      }
    }
  }
  if (vn) dims.note("skipped for truncated von Neumann fibers");
  bij.witness("lost_support_products", lost);

  const std::size_t n = c.n(50);
  for (std::size_t k = 0; k < n; ++k) {
    const auto &r = pick(c.rng, small), &s = pick(c.rng, small), &t = pick(c.rng, small);
    const BasisLabel x = rand_label(c.rng, sys, r), y = rand_label(c.rng, sys, s), z = rand_label(c.rng, sys, t);
    const json in = c.in({{"r", m.format(r)}, {"s", m.format(s)}, {"t", m.format(t)}, {"x", format_label(x)},
                          {"y", format_label(y)}, {"z", format_label(z)}});
    const auto xy = sys.try_multiply_labels(r, x, s, y);
    const auto yz = sys.try_multiply_labels(s, y, t, z);
    if (xy && yz) {
      const auto left = sys.try_multiply_labels(m.multiply(r, s), *xy, t, z);
      const auto right = sys.try_multiply_labels(r, x, m.multiply(s, t), *yz);
      if (left && right) assoc.expect(*left == *right, in, "(xy)z != x(yz)");
    }

    try {
      const FiberVector a = rand_vector(c.rng, sys, r), a2 = rand_vector(c.rng, sys, r);
      const FiberVector b = rand_vector(c.rng, sys, s), b2 = rand_vector(c.rng, sys, s);
      const Complex lhs = inner(multiply_vectors(sys, a, b), multiply_vectors(sys, a2, b2));
      const Complex rhs = inner(a, a2) * inner(b, b2);
      inner_c.residual("residual", std::abs(lhs - rhs), kMatrixTolerance,
                       c.in({{"x", vec_str(m, a)}, {"x2", vec_str(m, a2)}, {"y", vec_str(m, b)},
                             {"y2", vec_str(m, b2)}}));
    } catch (const LostSupport&) {
    }

    const MonoidElement u = m.multiply(r, s);
    const MonoidElement w = m.multiply(u, t);
    const FiberOperator s1 = rand_operator(c.rng, sys, r), s2 = rand_operator(c.rng, sys, r);
    try {
      const json pin = c.in({{"S1", op_str(m, s1)}, {"S2", op_str(m, s2)}, {"u", m.format(u)}});
      pmul.residual("residual",
                    max_difference(sys, promote(sys, compose(s1, s2), u),
                                   compose(promote(sys, s1, u), promote(sys, s2, u))),
                    kMatrixTolerance, pin);
      ptrans.residual("residual",
                      max_difference(sys, promote(sys, promote(sys, s1, u), w), promote(sys, s1, w)),
                      kMatrixTolerance, c.in({{"S", op_str(m, s1)}, {"u", m.format(u)}, {"w", m.format(w)}}));
    } catch (const LostSupport&) {
    }
  }

  for (const auto& u : grades) {
    for (const auto& s : grades) {
      if (!m.leq(s, u)) continue;
      const MonoidElement q = m.left_quotient(s, u);
      bool ok = true;
      std::string bad;
      for (const auto& l : sys.basis(u)) {
        const auto [head, tail] = sys.factor_label(u, s, l);
        const auto back = sys.try_multiply_labels(s, head, q, tail);
        if (!back || *back != l) {
          ok = false;
          bad = format_label(l);
          break;
        }
      }
      fac.expect(ok, c.in({{"u", m.format(u)}, {"s", m.format(s)}, {"label", bad}}),
                 "factor_label does not invert multiplication");
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    const auto &s = pick(c.rng, small), &t = pick(c.rng, small);
    const JoinResult j = m.join(s, t);
    if (j.is_infinite()) continue;
    const MonoidElement& J = j.value();
    if (sys.dim(m.left_quotient(s, J)).infinite || sys.dim(m.left_quotient(t, J)).infinite) continue;
    const FiberOperator S = rand_operator(c.rng, sys, s), T = rand_operator(c.rng, sys, t);
    const json in = c.in({{"S", op_str(m, S)}, {"T", op_str(m, T)}});
    try {
      const auto aligned = compact_align(sys, S, T);
      align.expect(aligned.has_value(), in, "finite join produced the zero branch");
      if (!aligned) continue;
      const FiberOperator direct = compose(promote(sys, S, J), promote(sys, T, J));
      align.residual("residual", max_difference(sys, *aligned, direct), kMatrixTolerance, in);
      if (m.is_quasi_totally_ordered()) align.expect(!aligned->truncated(), in, "truncation flag on a qto monoid");
    } catch (const LostSupport&) {
    }
  }

  if (m.kind() == MonoidKind::free_product && m.factor_count() >= 2 && !vn) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto lam = static_cast<std::uint32_t>(uniform(c.rng, m.factor_count()));
      std::vector<MonoidElement> heads;
      for (const auto& r : up_to_degree(grades, 1)) {
        if (r.is_identity() || r.letters().back().factor != lam) heads.push_back(r);
      }
      const MonoidElement& r = pick(c.rng, heads);
      const MonoidElement sp = m.generator(lam, static_cast<int>(1 + uniform(c.rng, 2)));
      const MonoidElement tp = m.generator(lam, static_cast<int>(1 + uniform(c.rng, 2)));
      const FiberOperator r1 = rand_operator(c.rng, sys, r), r2 = rand_operator(c.rng, sys, r);
      const FiberOperator a = rand_operator(c.rng, sys, sp), b = rand_operator(c.rng, sys, tp);
      const json in = c.in({{"R1", op_str(m, r1)}, {"R2", op_str(m, r2)}, {"S'", op_str(m, a)}, {"T'", op_str(m, b)}});
      const auto lhs = compact_align(sys, tensor(sys, r1, a), tensor(sys, r2, b));
      const auto inner_align = compact_align(sys, a, b);
      if (!lhs || !inner_align) {
        fp.expect(false, in, "comparable grades produced the zero branch");
        continue;
      }
      fp.residual("residual", max_difference(sys, *lhs, tensor(sys, compose(r1, r2), *inner_align)),
                  kMatrixTolerance, in);
    }
  } else {
    fp.note("applies to word-graded free products only");
  }

  std::vector<CheckReport> out;
  for (Check* ch : {&dims, &bij, &assoc, &fac, &inner_c, &pmul, &ptrans, &align, &fp}) out.push_back(ch->finish());
  return out;
}

std::vector<CheckReport> representation_axioms(Ctx& c) {
  const Monoid& m = c.monoid();
  const ProductSystem& sys = c.sys();
  const IdealBound bound = fock_bound(c);
  const auto basis = std::make_shared<const FockBasis>(sys, bound);
  const FockRepresentation rep(basis);
  const unsigned top = depth_limit(bound);
  const auto grades = up_to_degree(basis->grades(), top);
  Check mult("phi-multiplicative"), iso("phi-isometric"), route("creation-routes-agree"), vac("phi-vacuum");
  const std::size_t n = c.n(40);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = pick(c.rng, grades);
    const auto t_choices = up_to_degree(grades, top - grade_degree(s));
    const auto& t = pick(c.rng, t_choices);
    const FiberVector x = rand_vector(c.rng, sys, s), y = rand_vector(c.rng, sys, t);
    const json in = c.in({{"x", vec_str(m, x)}, {"y", vec_str(m, y)}});
    try {
      const auto cols = basis->interior(grade_degree(s) + grade_degree(t));
      mult.residual("residual",
                    max_deviation(SparseMatrix(phi(rep, x) * phi(rep, y)), phi(rep, multiply_vectors(sys, x, y)), cols),
                    kMatrixTolerance, in);
    } catch (const LostSupport&) {
    }
    const FiberVector x2 = rand_vector(c.rng, sys, s);
    const auto cols = basis->interior(grade_degree(s));
    const SparseMatrix lhs = SparseMatrix(phi(rep, x2).adjoint()) * phi(rep, x);
    const SparseMatrix rhs = inner(x, x2) * identity_matrix(basis->size());
    iso.residual("residual", max_deviation(lhs, rhs, cols), kMatrixTolerance,
                 c.in({{"x", vec_str(m, x)}, {"y", vec_str(m, x2)}}));
    route.residual("residual", diff(fock_phi(basis, x).matrix, phi(rep, x)), kMatrixTolerance, in);
  }
  const FiberVector omega = FiberVector::basis(m.identity(), {});
  vac.residual("residual", diff(phi(rep, omega), identity_matrix(basis->size())), 0.0, c.in({}));
  return {mult.finish(), iso.finish(), route.finish(), vac.finish()};
}

std::vector<CheckReport> lemma_suite(Ctx& c) {
  const Monoid& m = c.monoid();
  const ProductSystem& sys = c.sys();
  const IdealBound bound = fock_bound(c);
  const auto basis = std::make_shared<const FockBasis>(sys, bound);
  const FockRepresentation rep(basis);
  const unsigned top = depth_limit(bound);
  const auto grades = up_to_degree(basis->grades(), top);
  const std::size_t dim = basis->size();
  Check l1("alpha-unit-is-rho-unit"), l2("phi-intertwines-alpha"), l3("rho-phi");
  Check l4("rho-promote"), l5("alpha-rho-promote-left"), route("rho-creation-route");

  for (const auto& t : basis->grades()) {
    const json in = c.in({{"t", m.format(t)}});
    l1.residual("fock", diff(alpha_endo(t, fock_identity(basis)).matrix, rho_proj(basis, t).matrix),
                kMatrixTolerance, in);
    l1.residual("generic", diff(alpha(rep, t, identity_matrix(dim)), rho_unit(rep, t)), kMatrixTolerance, in);
  }

  const std::size_t n = c.n(40);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = pick(c.rng, grades);
    const auto t_choices = up_to_degree(grades, top - grade_degree(s));
    const auto& t = pick(c.rng, t_choices);
    const MonoidElement st = m.multiply(s, t);
    try {
      // (2): A lives on rows whose grade g keeps st·g inside the ideal.
      const FiberVector z = rand_vector(c.rng, sys, s);
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < dim; ++i) {
        if (basis->grade_index(m.multiply(st, basis->grade_of(i)))) rows.push_back(i);
      }
      std::vector<Eigen::Triplet<Complex>> trips;
      const std::size_t entries = 1 + uniform(c.rng, 4);
      json a_entries = json::array();
      for (std::size_t e = 0; e < entries; ++e) {
        const std::size_t row = pick(c.rng, rows), col = uniform(c.rng, dim);
        const Complex v = rand_coeff(c.rng);
        trips.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), v);
        a_entries.push_back({row, col, v.real(), v.imag()});
      }
      SparseMatrix a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
      a.setFromTriplets(trips.begin(), trips.end());
      const json in2 = c.in({{"z", vec_str(m, z)}, {"t", m.format(t)}, {"A", a_entries}});
      const SparseMatrix pz = phi(rep, z);
      l2.residual("residual", max_deviation(SparseMatrix(pz * alpha(rep, t, a)), SparseMatrix(alpha(rep, st, a) * pz),
                                            basis->interior(grade_degree(s))),
                  kMatrixTolerance, in2);

      // (3)
      const FiberOperator S = rand_operator(c.rng, sys, s);
      const FiberVector w = rand_vector(c.rng, sys, s);
      const json in3 = c.in({{"S", op_str(m, S)}, {"z", vec_str(m, w)}});
      l3.residual("residual",
                  max_deviation(SparseMatrix(rho_op(basis, S).matrix * phi(rep, w)), phi(rep, S.apply(w)),
                                basis->interior(grade_degree(s))),
                  kMatrixTolerance, in3);
      route.residual("residual", max_deviation(rho(rep, S), rho_op(basis, S).matrix, basis->interior(grade_degree(s))),
                     kMatrixTolerance, c.in({{"S", op_str(m, S)}}));

      // (4)
      const json in4 = c.in({{"S", op_str(m, S)}, {"t", m.format(t)}});
      const SparseMatrix promoted = rho_op(basis, promote(sys, S, st)).matrix;
      const SparseMatrix rs = rho_op(basis, S).matrix, pst = rho_proj(basis, st).matrix;
      l4.residual("left", diff(promoted, SparseMatrix(pst * rs)), kMatrixTolerance, in4);
      l4.residual("right", diff(promoted, SparseMatrix(rs * pst)), kMatrixTolerance, in4);

      // (5)
      l5.residual("residual",
                  diff(rho_op(basis, promote_left(sys, S, t)).matrix, alpha_endo(t, rho_op(basis, S)).matrix),
                  kMatrixTolerance, in4);
    } catch (const LostSupport& e) {
      l2.inexact(e.what(), c.in({{"s", m.format(s)}, {"t", m.format(t)}}));
    }
  }
  return {l1.finish(), l2.finish(), l3.finish(), l4.finish(), l5.finish(), route.finish()};
}

WickKey rand_key(Rng& g, const FockBasis& basis, const std::vector<MonoidElement>& left_grades,
                 const std::vector<MonoidElement>& right_grades) {
  const ProductSystem& sys = basis.system();
  const auto& v = pick(g, left_grades);
  const auto& w = pick(g, right_grades);
  return WickKey{v, rand_label(g, sys, v), w, rand_label(g, sys, w)};
}

std::vector<CheckReport> homomorphism_oracle(Ctx& c) {
  const Monoid& m = c.monoid();
  const ProductSystem& sys = c.sys();
  const IdealBound bound = fock_bound(c);
  const auto basis = std::make_shared<const FockBasis>(sys, bound);
  const unsigned top = depth_limit(bound);
  const auto all = basis->grades();
  const auto lefts = up_to_degree(all, top);
  Check hom("represent-is-multiplicative"), star("represent-preserves-adjoint");
  const std::size_t n = c.n(120);
  std::size_t nonzero = 0;
  for (std::size_t k = 0; k < n; ++k) {
    WickKey a = rand_key(c.rng, *basis, lefts, all);
    const auto x_choices = up_to_degree(all, top - grade_degree(a.left_grade));
    WickKey b = rand_key(c.rng, *basis, x_choices, all);
    const std::size_t mode = uniform(c.rng, 3);
    if (mode == 0) {
      // B's creation grade extends A's annihilation grade with a matching head.
      std::vector<MonoidElement> ext;
      for (const auto& x : x_choices) {
        if (m.leq(a.right_grade, x)) ext.push_back(x);
      }
      if (!ext.empty()) {
        b.left_grade = pick(c.rng, ext);
        const MonoidElement q = m.left_quotient(a.right_grade, b.left_grade);
        const auto l = sys.try_multiply_labels(a.right_grade, a.right, q, rand_label(c.rng, sys, q));
        if (l) b.left = *l;
        else b.left = rand_label(c.rng, sys, b.left_grade);
      }
    } else if (mode == 1) {
      // A's annihilation grade extends B's creation grade.
      std::vector<MonoidElement> ext;
      for (const auto& w : all) {
        if (m.leq(b.left_grade, w)) ext.push_back(w);
      }
      a.right_grade = pick(c.rng, ext);
      const MonoidElement q = m.left_quotient(b.left_grade, a.right_grade);
      const auto l = sys.try_multiply_labels(b.left_grade, b.left, q, rand_label(c.rng, sys, q));
      a.right = l ? *l : rand_label(c.rng, sys, a.right_grade);
    }
    const WickElement A = WickElement::basis_monomial(a, rand_coeff(c.rng));
    const WickElement B = WickElement::basis_monomial(b, rand_coeff(c.rng));
    const json in = c.in({{"A", format(m, A)}, {"B", format(m, B)}});
    const auto ab = wick_multiply(sys, A, B);
    if (!ab.exact()) {
      hom.inexact(ab.inexact_reason, in);
      continue;
    }
    if (!ab.value->is_zero()) ++nonzero;
    const auto cols = basis->interior(creation_depth(A) + creation_depth(B));
    const FockOperator ra = represent(basis, A), rb = represent(basis, B);
    hom.residual("residual", max_deviation(represent(basis, *ab.value).matrix, SparseMatrix(ra.matrix * rb.matrix), cols),
                 kMatrixTolerance, in);
    star.residual("residual", diff(represent(basis, adjoint(A)).matrix, adjoint(ra).matrix), kMatrixTolerance,
                  c.in({{"A", format(m, A)}}));
  }
  hom.witness("nonzero_products", nonzero);
  hom.witness("states", basis->size());
  return {hom.finish(), star.finish()};
}

std::vector<CheckReport> series_exactness(Ctx& c) {
  const Monoid& m = c.monoid();
  const ProductSystem& sys = c.sys();
  const auto grades = check_ideal(c);
  Check series("series-equals-compact-align"), wick("wick-product-of-rank-ones");
  const std::size_t want = c.n(60);
  std::size_t proper = 0;
  for (std::size_t tries = 0; series.cases() < want && tries < 50 * want; ++tries) {
    const auto& s = pick(c.rng, grades);
    MonoidElement t = pick(c.rng, grades);
    const std::size_t mode = uniform(c.rng, 3);
    if (mode == 0) t = m.multiply(s, t);
    if (mode == 1) t = m.multiply(t, s);
    const JoinResult j = m.join(s, t);
    if (j.is_infinite()) continue;
    const MonoidElement& J = j.value();
    const MonoidElement qs = m.left_quotient(s, J), qt = m.left_quotient(t, J);
    if (sys.dim(qs).infinite || sys.dim(qt).infinite) continue;
    const FiberVector v = rand_vector(c.rng, sys, s), w = rand_vector(c.rng, sys, t);
    const json in = c.in({{"v", vec_str(m, v)}, {"w", vec_str(m, w)}});
    try {
      FiberOperator oracle(J);
      for (const auto& f : sys.basis(qs)) {
        const FiberVector vf = multiply_vectors(sys, v, FiberVector::basis(qs, f));
        for (const auto& g : sys.basis(qt)) {
          const FiberVector wg = multiply_vectors(sys, w, FiberVector::basis(qt, g));
          const Complex coeff = inner(wg, vf);
          if (coeff == Complex(0.0)) continue;
          for (const auto& [lv, cv] : vf.coords()) {
            for (const auto& [lw, cw] : wg.coords()) oracle.add(lv, lw, coeff * cv * std::conj(cw));
          }
        }
      }
      oracle.prune(0.0);
      const auto aligned =
          compact_align(sys, FiberOperator::rank_one(v, v), FiberOperator::rank_one(w, w));
      if (!aligned) {
        series.expect(false, in, "finite join produced the zero branch");
        continue;
      }
      if (!m.leq(s, t) && !m.leq(t, s)) ++proper;
      series.residual("max_entry_difference", max_difference(sys, *aligned, oracle), 0.0, in);

      // i(Ω)i(v)* · i(w)i(Ω)* = Σ ⟨wg, vf⟩ i(f)i(g)*.
      const MonoidElement e = m.identity();
      const WickElement lhs_a = WickElement::monomial(FiberVector::basis(e, {}), v);
      const WickElement lhs_b = WickElement::monomial(w, FiberVector::basis(e, {}));
      const auto prod = wick_multiply(sys, lhs_a, lhs_b);
      if (!prod.exact()) {
        wick.inexact(prod.inexact_reason, in);
        continue;
      }
      WickElement expect;
      for (const auto& f : sys.basis(qs)) {
        const FiberVector vf = multiply_vectors(sys, v, FiberVector::basis(qs, f));
        for (const auto& g : sys.basis(qt)) {
          const FiberVector wg = multiply_vectors(sys, w, FiberVector::basis(qt, g));
          expect.add(WickKey{qs, f, qt, g}, inner(wg, vf));
        }
      }
      expect.prune(0.0);
      wick.residual("max_coefficient_difference", max_difference(*prod.value, expect), 0.0, in);
    } catch (const LostSupport& e) {
      series.inexact(e.what(), in);
    }
  }
  series.witness("proper_joins", proper);
  return {series.finish(), wick.finish()};
}

std::vector<CheckReport> covariance_suite(Ctx& c) {
  const Monoid& m = c.monoid();
  const ProductSystem& sys = c.sys();
  const IdealBound bound = fock_bound(c);
  const auto basis = std::make_shared<const FockBasis>(sys, bound);
  const auto& grades = basis->grades();
  Check proj("projection-covariance"), comp("compact-covariance"), sym("symbolic-covariance");

  std::map<MonoidElement, SparseMatrix> p;
  for (const auto& s : grades) p.emplace(s, rho_proj(basis, s).matrix);
  const SparseMatrix zero(static_cast<Eigen::Index>(basis->size()), static_cast<Eigen::Index>(basis->size()));
  std::size_t inf = 0;
  for (const auto& s : grades) {
    for (const auto& t : grades) {
      const JoinResult j = m.join(s, t);
      const SparseMatrix lhs = p.at(s) * p.at(t);
      SparseMatrix rhs = zero;
      if (j.is_finite()) {
        const auto it = p.find(j.value());
        rhs = it == p.end() ? rho_proj(basis, j.value()).matrix : it->second;
      } else {
        ++inf;
      }
      proj.residual("max_entry_difference", diff(lhs, rhs), 0.0, c.in({{"s", m.format(s)}, {"t", m.format(t)}}));
    }
  }
  proj.witness("infinite_joins", inf);

  const bool force_disjoint = m.kind() == MonoidKind::free_product && m.factor_count() >= 2;
  const auto nonid = nonidentity(grades);
  const std::size_t n = c.n(80);
  std::size_t comp_inf = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const MonoidElement s = pick(c.rng, grades);
    MonoidElement t = pick(c.rng, grades);
    if (force_disjoint && k % 4 == 0 && !s.is_identity()) {
      std::vector<MonoidElement> other;
      for (const auto& r : nonid) {
        if (r.letters().front().factor != s.letters().front().factor) other.push_back(r);
      }
      if (!other.empty()) t = pick(c.rng, other);
    } else if (k % 4 == 1) {
      std::vector<MonoidElement> ext;
      for (const auto& r : grades) {
        if (m.leq(s, r)) ext.push_back(r);
      }
      t = pick(c.rng, ext);
    }
    const FiberOperator S = FiberOperator::rank_one(rand_vector(c.rng, sys, s), rand_vector(c.rng, sys, s));
    const FiberOperator T = FiberOperator::rank_one(rand_vector(c.rng, sys, t), rand_vector(c.rng, sys, t));
    const json in = c.in({{"S", op_str(m, S)}, {"T", op_str(m, T)}});
    try {
      const auto aligned = compact_align(sys, S, T);
      if (aligned && aligned->truncated()) {
        comp.inexact("(S⊗1)(T⊗1) was cut at the working dimension", in);
        continue;
      }
      if (!aligned) ++comp_inf;
      const SparseMatrix lhs = rho_op(basis, S).matrix * rho_op(basis, T).matrix;
      const SparseMatrix rhs = aligned ? rho_op(basis, *aligned).matrix : zero;
      comp.residual("residual", diff(lhs, rhs), kMatrixTolerance, in);
      const auto symbolic = covariance_check_symbolic(sys, S, T);
      if (!symbolic.exact()) {
        sym.inexact(symbolic.inexact_reason, in);
      } else {
        sym.residual("residual", symbolic.value->residual, kWickTolerance, in);
      }
    } catch (const LostSupport& e) {
      comp.inexact(e.what(), in);
    }
  }
  comp.witness("infinite_joins", comp_inf);
  if (force_disjoint) {
    comp.expect(comp_inf > 0, c.in({}), "no pair exercised the infinite-join branch");
  }
  return {proj.finish(), comp.finish(), sym.finish()};
}

WickElement rand_element_wick(Rng& g, const FockBasis& basis, const std::vector<MonoidElement>& lefts,
                              const std::vector<MonoidElement>& all, std::size_t max_terms, bool diagonal) {
  WickElement x;
  const std::size_t terms = 1 + uniform(g, max_terms);
  for (std::size_t k = 0; k < terms; ++k) {
    WickKey key = rand_key(g, basis, lefts, all);
    if (diagonal || coin(g)) {
      key.right_grade = key.left_grade;
      key.right = rand_label(g, basis.system(), key.left_grade);
    }
    x.add(key, rand_coeff(g));
  }
  x.prune();
  return x;
}

std::vector<CheckReport> expectation_suite(Ctx& c) {
  const Monoid& m = c.monoid();
  const IdealBound bound = fock_bound(c);
  const auto basis = std::make_shared<const FockBasis>(c.sys(), bound);
  const auto lefts = up_to_degree(basis->grades(), depth_limit(bound));
  Check cons("spatial-consistency"), idem("phi-delta-idempotent"), contr("phi-delta-contractive");
  const std::size_t n = c.n(60);
  for (std::size_t k = 0; k < n; ++k) {
    const WickElement x = rand_element_wick(c.rng, *basis, lefts, basis->grades(), 4, false);
    if (x.is_zero()) continue;
    const json in = c.in({{"X", format(m, x)}});
    const auto cols = basis->interior(creation_depth(x));
    const FockOperator rx = represent(basis, x);
    const WickElement dx = phi_delta(x);
    const FockOperator ex = expectation_spatial(rx);
    const SparseMatrix rdx = represent(basis, dx).matrix;
    cons.residual("residual", max_deviation(ex.matrix, rdx, cols), kMatrixTolerance, in);
    idem.residual("symbolic", max_difference(phi_delta(dx), dx), 0.0, in);
    idem.residual("spatial", diff(expectation_spatial(ex).matrix, ex.matrix), 0.0, in);
    const SparseMatrix full = columns(rx.matrix, cols);
    const SparseMatrix part = columns(rdx, cols);
    const double nx = max_abs(full) == 0.0 ? 0.0 : operator_norm(full).value;
    const double nd = max_abs(part) == 0.0 ? 0.0 : operator_norm(part).value;
    contr.residual("excess", std::max(0.0, nd - nx), kNormRelativeTolerance * std::max(1.0, nx), in);
  }
  return {cons.finish(), idem.finish(), contr.finish()};
}

IdealBound shrink(const IdealBound& b) {
  if (const auto* l = std::get_if<LengthBound>(&b)) return LengthBound{l->max_degree ? l->max_degree - 1 : 0};
  BoxBound box = std::get<BoxBound>(b);
  for (auto& v : box.limits) v = v ? v - 1 : 0;
  return box;
}

std::vector<CheckReport> diagonal_norm(Ctx& c) {
  const Monoid& m = c.monoid();
  const ProductSystem& sys = c.sys();
  const IdealBound bound = fock_bound(c);
  const auto basis = std::make_shared<const FockBasis>(sys, bound);
  const auto smaller = std::make_shared<const FockBasis>(sys, shrink(bound));
  const auto& grades = basis->grades();
  Check cert("certificate-matches-power-iteration"), sq("norm-of-square"), mono("norm-monotone-in-truncation");
  const std::size_t n = c.n(40);
  std::size_t outside = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const WickElement x = rand_element_wick(c.rng, *basis, grades, grades, 3, true);
    if (x.is_zero()) continue;
    const json in = c.in({{"X", format(m, x)}});
    const auto value = norm_diagonal(sys, x);
    if (!value.exact()) {
      cert.inexact(value.inexact_reason, in);
      continue;
    }
    const double v = value.value->value;
    const SparseMatrix rx = represent(basis, x).matrix;
    const double big = operator_norm(rx).value;
    if (basis->grade_index(value.value->a)) {
      cert.residual("relative_deviation", std::abs(v - big) / std::max(v, 1e-300), kNormRelativeTolerance,
                    c.in({{"X", format(m, x)}, {"certificate", m.format(value.value->a)}, {"value", v},
                          {"power_iteration", big}}));
    } else {
      ++outside;
    }
    const auto xx = wick_multiply(sys, x, adjoint(x));
    if (!xx.exact()) {
      sq.inexact(xx.inexact_reason, in);
    } else {
      const auto v2 = norm_diagonal(sys, *xx.value);
      if (v2.exact()) {
        sq.residual("relative_deviation", std::abs(v2.value->value - v * v) / std::max(v * v, 1e-300),
                    kNormRelativeTolerance, in);
      } else {
        sq.inexact(v2.inexact_reason, in);
      }
    }
    bool inside = true;
    for (const auto& [key, coef] : x.terms()) inside = inside && smaller->grade_index(key.left_grade).has_value();
    if (inside) {
      const double small = operator_norm(represent(smaller, x).matrix).value;
      mono.residual("excess", std::max(0.0, small - big), kNormRelativeTolerance * std::max(1.0, big), in);
    }
  }
  cert.witness("certificates_outside_truncation", outside);
  return {cert.finish(), sq.finish(), mono.finish()};
}

std::vector<CheckReport> faithfulness_suite(Ctx& c) {
  const Monoid& m = c.monoid();
  const IdealBound bound = fock_bound(c);
  const auto basis = std::make_shared<const FockBasis>(c.sys(), bound);
  const FockRepresentation rep(basis);
  const auto nonid = nonidentity(basis->grades());
  Check vac("vacuum-survives-complements"), helper("faithfulness-condition"), absorb("free-product-absorption");

  const std::size_t dim = basis->size();
  const std::size_t omega = basis->index_of(m.identity(), {}).value();
  std::vector<SparseMatrix> proj;
  for (const auto& s : nonid) proj.push_back(rho_proj(basis, s).matrix);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  e(static_cast<Eigen::Index>(omega)) = 1.0;

  auto run_subset = [&](const std::vector<std::size_t>& subset) {
    Eigen::VectorXcd v = e;
    for (auto i : subset) v -= proj[i] * v;
    json family = json::array();
    for (auto i : subset) family.push_back(m.format(nonid[i]));
    vac.residual("max_entry_difference", (v - e).cwiseAbs().maxCoeff(), 0.0, c.in({{"family", family}}));
  };
  const std::size_t k = nonid.size();
  if (k <= 16) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) subset.push_back(i);
      }
      run_subset(subset);
    }
    vac.witness("families", "all subsets");
  } else {
    std::vector<std::size_t> everything(k);
    for (std::size_t i = 0; i < k; ++i) everything[i] = i;
    run_subset(everything);
    for (std::size_t r = 0; r < 4096; ++r) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < k; ++i) {
        if (coin(c.rng)) subset.push_back(i);
      }
      run_subset(subset);
    }
    vac.witness("families", "full family and 4096 sampled subsets");
  }

  const auto res = faithfulness_condition(rep, nonid, basis->interior(0));
  helper.expect(res.holds && res.witness == omega, c.in({}), "vacuum is not a witness of the condition");

  if (m.kind() == MonoidKind::free_product && m.factor_count() >= 2) {
    for (const auto& t : nonid) {
      if (t.size() != 1) continue;
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < k; ++i) {
        if (nonid[i].letters().front().factor != t.letters().front().factor) others.push_back(i);
      }
      const SparseMatrix pt = rho_proj(basis, t).matrix;
      const SparseMatrix one = identity_matrix(dim);
      for (std::size_t r = 0; r < 8; ++r) {
        std::vector<std::size_t> fam;
        for (auto i : others) {
          if (r == 0 || coin(c.rng)) fam.push_back(i);
        }
        SparseMatrix prod = pt;
        json family = json::array();
        for (auto i : fam) {
          prod = prod * SparseMatrix(one - proj[i]);
          family.push_back(m.format(nonid[i]));
        }
        const json in = c.in({{"t", m.format(t)}, {"family", family}});
        absorb.residual("max_entry_difference", diff(prod, pt), 0.0, in);
        absorb.expect(max_abs(pt) > 0.0, in, "rho_t(1) vanished");
      }
    }
  } else {
    absorb.note("applies to free products with at least two factors");
  }
  return {vac.finish(), helper.finish(), absorb.finish()};
}

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> r{
      {"order-axioms", order_axioms},
      {"join-oracle", join_oracle},
      {"theta", theta_suite},
      {"product-system", product_system_suite},
      {"representation-axioms", representation_axioms},
      {"lemma-1.1", lemma_suite},
      {"homomorphism-oracle", homomorphism_oracle},
      {"series-exactness", series_exactness},
      {"covariance", covariance_suite},
      {"expectation", expectation_suite},
      {"diagonal-norm", diagonal_norm},
      {"faithfulness", faithfulness_suite},
  };
  return r;
}

std::vector<CheckReport> run_one(const SystemConfig& cfg, const std::string& id, const Suite& suite,
                                 const SuiteOptions& opts) {
  Ctx ctx{cfg, opts.seed, opts.samples, Rng(opts.seed ^ fnv1a(id))};
  try {
    return suite(ctx);
  } catch (const UnsupportedOperation& e) {
    CheckReport r;
    r.name = id;
    r.status = Status::unsupported;
    r.detail = e.what();
    return {r};
  }
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, s] : registry()) out.push_back(id);
    out.push_back("all");
    return out;
  }();
  return ids;
}

SuiteReport run_check_suite(const SystemConfig& cfg, const std::string& suite, const SuiteOptions& opts) {
  SuiteReport out;
  out.suite = suite;
  out.system = cfg.label.empty() ? describe(cfg.truncation.value_or(IdealBound{LengthBound{3}})) : cfg.label;
  out.seed = opts.seed;
  bool found = false;
  for (const auto& [id, s] : registry()) {
    if (suite != "all" && suite != id) continue;
    found = true;
    std::vector<CheckReport> reports;
    try {
      reports = run_one(cfg, id, s, opts);
    } catch (const ConfigError& e) {
      if (suite != "all") throw;
      CheckReport r;
      r.name = id;
      r.status = Status::unsupported;
      r.detail = "needs a truncation block";
      reports.push_back(r);
    }
    for (auto& r : reports) {
      if (suite == "all") r.name = id + "/" + r.name;
      out.checks.push_back(std::move(r));
    }
  }
  if (!found) {
    std::string known;
    for (const auto& id : suite_ids()) known += (known.empty() ? "" : ", ") + id;
    throw std::invalid_argument("unknown suite '" + suite + "' (known: " + known + ")");
  }
  return out;
}

}  // namespace prodsys
