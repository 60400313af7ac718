#include "btstrata/chi.hpp"

#include <algorithm>
#include <stdexcept>

namespace bts {

Rational::Rational(mpz_class n, mpz_class d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  return den == 1 ? num.get_str() : num.get_str() + "/" + den.get_str();
}

nlohmann::json Rational::to_json() const {
  // exact: plain integer when it fits a 64-bit value, else decimal strings
  if (den == 1 && num.fits_slong_p()) return nlohmann::json(num.get_si());
  return {{"num", num.get_str()}, {"den", den.get_str()}};
}

namespace {

void check_q(const mpz_class& q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
}

Rational half_sum(long lmax, long c0, const mpz_class& q) {
  // 1/2 * sum_{l=0}^{lmax} q^l (c0 - 2l)
  mpz_class acc = 0, qp = 1;
  for (long l = 0; l <= lmax; ++l) {
    acc += qp * (c0 - 2 * l);
    qp *= q;
  }
  return Rational(acc, 2);
}

}  // namespace

Rational chi_z(long a, long b, const mpz_class& q) {
  check_q(q);
  if (a < 0) throw std::invalid_argument("chi_z: a must be nonnegative");
  if (a > b) throw std::invalid_argument("chi_z: need a <= b");
  if (((a - b) % 2) == 0) throw std::invalid_argument("chi_z: need a != b mod 2");
  return half_sum(a, a + b + 1, q);
}

Rational chi_y(long a, long b, const mpz_class& q) {
  check_q(q);
  if (a < -1) throw std::invalid_argument("chi_y: a must be >= -1");
  if (a > b) throw std::invalid_argument("chi_y: need a <= b");
  if (((a - b) % 2) == 0) throw std::invalid_argument("chi_y: need a != b mod 2");
  return half_sum(a + 1, a + b + 3, q);
}

std::variant<Reduction, std::string> reduce_problem(const IntersectionProblem& p) {
  if (p.n < 2 || p.h < 0 || p.h > p.n) return std::string("unsupported pattern: bad (n, h)");
  if (static_cast<int>(p.xvals.size()) != p.n - p.h ||
      static_cast<int>(p.yvals.size()) != p.h)
    return std::string("unsupported pattern: valuation counts do not match (n-h, h)");
  check_q(p.q);

  auto build = [&](char core_case, size_t d1, size_t d2, long a, long b) {
    Reduction red;
    red.core_case = core_case;
    if (a > b) std::swap(a, b);
    red.a = a;
    red.b = b;
    int n = p.n, h = p.h;
    if (core_case == 'z') {
      for (size_t i = 0; i < p.xvals.size(); ++i) {
        if (i == d1 || i == d2) continue;
        red.steps.push_back({'x', n, h, p.xvals[i]});
        --n;
      }
      for (size_t j = 0; j < p.yvals.size(); ++j) {
        red.steps.push_back({'y', n, h, p.yvals[j]});
        --n;
        --h;
      }
    } else {
      for (size_t i = 0; i < p.xvals.size(); ++i) {
        red.steps.push_back({'x', n, h, p.xvals[i]});
        --n;
      }
      for (size_t j = 0; j < p.yvals.size(); ++j) {
        if (j == d1 || j == d2) continue;
        red.steps.push_back({'y', n, h, p.yvals[j]});
        --n;
        --h;
      }
    }
    return red;
  };

  // shape with two distinguished x-slots: all remaining x-valuations zero,
  // every y-valuation -1
  {
    bool ys_ok = std::all_of(p.yvals.begin(), p.yvals.end(), [](long v) { return v == -1; });
    std::vector<size_t> nz;
    bool xs_ok = p.n - p.h >= 2;
    for (size_t i = 0; i < p.xvals.size() && xs_ok; ++i) {
      if (p.xvals[i] < 0) xs_ok = false;
      else if (p.xvals[i] != 0) nz.push_back(i);
    }
    if (ys_ok && xs_ok && nz.size() <= 2) {
      // pad with zero slots, rightmost first, for determinism
      std::vector<size_t> slots = nz;
      for (size_t i = p.xvals.size(); i-- > 0 && slots.size() < 2;)
        if (p.xvals[i] == 0 && std::find(slots.begin(), slots.end(), i) == slots.end())
          slots.push_back(i);
      long a = p.xvals[slots[0]], b = p.xvals[slots[1]];
      if (((a - b) % 2 + 2) % 2 == 1)
        return build('z', slots[0], slots[1], a, b);
    }
  }
  // shape with two distinguished y-slots: all x-valuations zero, remaining
  // y-valuations -1
  {
    bool xs_ok = std::all_of(p.xvals.begin(), p.xvals.end(), [](long v) { return v == 0; });
    std::vector<size_t> nz;
    bool ys_ok = p.h >= 2;
    for (size_t j = 0; j < p.yvals.size() && ys_ok; ++j) {
      if (p.yvals[j] < -1) ys_ok = false;
      else if (p.yvals[j] != -1) nz.push_back(j);
    }
    if (xs_ok && ys_ok && nz.size() <= 2) {
      std::vector<size_t> slots = nz;
      for (size_t j = p.yvals.size(); j-- > 0 && slots.size() < 2;)
        if (p.yvals[j] == -1 && std::find(slots.begin(), slots.end(), j) == slots.end())
          slots.push_back(j);
      long a = p.yvals[slots[0]], b = p.yvals[slots[1]];
      if (((a - b) % 2 + 2) % 2 == 1)
        return build('y', slots[0], slots[1], a, b);
    }
  }
  return std::string("unsupported pattern: valuation profile matches neither shape");
}

Rational chi(const IntersectionProblem& p) {
  auto red = reduce_problem(p);
  if (std::holds_alternative<std::string>(red))
    throw std::invalid_argument(std::get<std::string>(red));
  const Reduction& r = std::get<Reduction>(red);
  return r.core_case == 'z' ? chi_z(r.a, r.b, p.q) : chi_y(r.a, r.b, p.q);
}

nlohmann::json chi_report(const IntersectionProblem& p) {
  nlohmann::json j;
  j["n"] = p.n;
  j["h"] = p.h;
  j["q"] = p.q.get_str();
  j["xvals"] = p.xvals;
  j["yvals"] = p.yvals;
  auto red = reduce_problem(p);
  if (std::holds_alternative<std::string>(red)) {
    j["error"] = std::get<std::string>(red);
    return j;
  }
  const Reduction& r = std::get<Reduction>(red);
  j["core"] = {r.a, r.b};
  j["case"] = std::string(1, r.core_case);
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"strip", std::string(1, s.kind)},
                     {"n", s.n_before},
                     {"h", s.h_before},
                     {"val", s.removed_val}});
  j["trace"] = std::move(steps);
  j["chi"] = (r.core_case == 'z' ? chi_z(r.a, r.b, p.q) : chi_y(r.a, r.b, p.q)).to_json();
  return j;
}

}  // namespace bts
