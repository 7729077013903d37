#include "rabi_qes/roots.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "rabi_qes/errors.hpp"

namespace rabi_qes::exact {

ExactScalar cauchy_bound(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw DomainError("zero polynomial");
  ExactScalar m = 0;
  const ExactScalar& lead = p.leading();
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, ExactScalar(abs(p.coeff(k) / lead)));
  return 1 + m;
}

SturmSequence::SturmSequence(const UnivariatePolynomial& p) {
  if (p.is_zero()) throw DomainError("zero polynomial");
  auto normalize = [](const UnivariatePolynomial& q) { return q * ExactScalar(1 / abs(q.leading())); };
  chain_.push_back(normalize(p));
  if (p.degree() == 0) return;
  chain_.push_back(normalize(p.derivative()));
  while (true) {
    auto r = divide(chain_[chain_.size() - 2], chain_.back()).remainder;
    if (r.is_zero()) break;
    chain_.push_back(normalize(-r));
  }
}

int SturmSequence::sign_variations(const ExactScalar& x) const {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain_) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int SturmSequence::count(const ExactScalar& a, const ExactScalar& b) const {
  return sign_variations(a) - sign_variations(b);
}

namespace {

// Multiplicity of the single root of p isolated by (lo, hi].
int multiplicity_in(const UnivariatePolynomial& p, const ExactScalar& lo, const ExactScalar& hi) {
  int m = 1;
  auto g = gcd(p, p.derivative());
  while (g.degree() > 0) {
    const SturmSequence s(square_free_part(g));
    if (s.count(lo, hi) == 0) break;
    ++m;
    g = gcd(g, g.derivative());
  }
  return m;
}

// A point of (a, b) where q does not vanish, as close to the midpoint as the
// search allows.
ExactScalar split_point(const UnivariatePolynomial& q, const ExactScalar& a, const ExactScalar& b) {
  const ExactScalar width = b - a;
  for (long den = 2;; ++den) {
    for (long num = den / 2; num >= 1; --num) {
      for (const long k : {num, den - num}) {
        ExactScalar x = a + width * make_ratio(k, den);
        if (q.sign_at(x) != 0) return x;
      }
    }
  }
}

}  // namespace

std::vector<RootBracket> sturm_isolate(const UnivariatePolynomial& p, const ExactScalar& lo, const ExactScalar& hi) {
  if (p.is_zero()) throw DomainError("zero polynomial");
  if (!(lo < hi)) throw DomainError("sturm_isolate requires lo < hi");

  const auto q = square_free_part(p);
  const SturmSequence sturm(q);

  std::vector<RootBracket> out;
  std::vector<std::pair<ExactScalar, ExactScalar>> pending{{lo, hi}};
  while (!pending.empty()) {
    auto [a, b] = std::move(pending.back());
    pending.pop_back();
    const int n = sturm.count(a, b);
    if (n == 0) continue;
    if (n > 1) {
      const ExactScalar mid = split_point(q, a, b);
      pending.emplace_back(mid, b);
      pending.emplace_back(a, mid);
      continue;
    }
    // The open end a may itself be a root of q (only possible for the
    // caller's lo); nudge it inward so both ends bracket the same root.
    if (q.sign_at(a) == 0) {
      ExactScalar step = (b - a) / 2;
      while (q.sign_at(a + step) == 0 || sturm.count(a + step, b) != 1) step /= 2;
      a += step;
    }
    RootBracket br{a, b, q.evaluate(a), q.evaluate(b), 1};
    br.multiplicity = multiplicity_in(p, a, b);
    out.push_back(std::move(br));
  }
  std::sort(out.begin(), out.end(), [](const RootBracket& x, const RootBracket& y) { return x.lo < y.lo; });
  return out;
}

std::vector<RootBracket> sturm_isolate(const UnivariatePolynomial& p, double lo, double hi) {
  return sturm_isolate(p, from_double(lo), from_double(hi));
}

double refine_root(const UnivariatePolynomial& p, const RootBracket& bracket, double tol, const SolverConfig& config) {
  if (p.is_zero()) throw DomainError("zero polynomial");
  if (!(bracket.lo < bracket.hi)) throw DomainError("invalid bracket");

  // Work on the square-free part so multiple roots still change sign.
  const auto q = square_free_part(p);
  const auto dq = q.derivative();

  ExactScalar lo = bracket.lo;
  ExactScalar hi = bracket.hi;
  const int s_lo = q.sign_at(lo);
  const int s_hi = q.sign_at(hi);
  if (s_lo == 0) return to_double(lo);
  if (s_hi == 0) return to_double(hi);
  if (s_lo == s_hi) throw DomainError("bracket does not isolate a sign change");

  auto width_ok = [&](const ExactScalar& a, const ExactScalar& b, double scale_tol) {
    const double centre = std::abs(to_double((a + b) / 2));
    return to_double(b - a) < scale_tol * std::max(1.0, centre);
  };
  // Moves one end of [lo, hi] to x given the exact sign of q there.
  auto shrink_to = [&](const ExactScalar& x) -> bool {
    const int s = q.sign_at(x);
    if (s == 0) {
      lo = hi = x;
      return true;
    }
    (s == s_lo ? lo : hi) = x;
    return false;
  };

  int iterations = 0;
  while (!width_ok(lo, hi, config.bisection_width)) {
    if (++iterations > config.refine_max_iterations)
      throw RefinementError("root refinement did not reach tolerance", to_double((lo + hi) / 2));
    if (shrink_to((lo + hi) / 2)) return to_double(lo);
  }

  double x = to_double((lo + hi) / 2);
  while (true) {
    if (++iterations > config.refine_max_iterations)
      throw RefinementError("root refinement did not reach tolerance", x);

    const double half = 0.5 * tol * std::max(1.0, std::abs(x));
    const ExactScalar a = std::max(lo, from_double(x - half));
    const ExactScalar b = std::min(hi, from_double(x + half));
    if (a < b) {
      const int sa = q.sign_at(a);
      const int sb = q.sign_at(b);
      if (sa == 0) return to_double(a);
      if (sb == 0) return to_double(b);
      if (sa != sb) {
        lo = a;
        hi = b;
        break;
      }
    }

    const long double fx = q.evaluate(static_cast<long double>(x));
    const long double dfx = dq.evaluate(static_cast<long double>(x));
    double next = dfx != 0 ? static_cast<double>(x - fx / dfx) : x;
    const double lo_d = to_double(lo);
    const double hi_d = to_double(hi);
    const ExactScalar before = hi - lo;
    if (!(next > lo_d && next < hi_d) || next == x) next = to_double((lo + hi) / 2);
    if (shrink_to(from_double(next))) return next;
    // Newton converging from one side only: force progress on the other.
    if (hi - lo > before / 2 && shrink_to((lo + hi) / 2)) return to_double(lo);
    x = next;
    if (!(x > to_double(lo) && x < to_double(hi))) x = to_double((lo + hi) / 2);
    if (width_ok(lo, hi, tol)) break;
  }

  // Enclosed to tolerance; keep bisecting down to the double grid so the
  // result is the correctly rounded root.
  for (int k = 0; k < 64 && to_double(lo) != to_double(hi); ++k)
    if (shrink_to((lo + hi) / 2)) break;
  return to_double((lo + hi) / 2);
}

}  // namespace rabi_qes::exact
