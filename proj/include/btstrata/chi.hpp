#ifndef BTSTRATA_CHI_HPP
#define BTSTRATA_CHI_HPP

#include <gmpxx.h>

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace bts {

// reduced fraction with positive denominator
struct Rational {
  mpz_class num = 0, den = 1;

  Rational() = default;
  Rational(mpz_class n, mpz_class d);
  bool is_integer() const { return den == 1; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  std::string str() const;
  nlohmann::json to_json() const;
};

// 1/2 * sum_{l=0}^{a} q^l (a + b + 1 - 2l); requires 0 <= a <= b, a != b mod 2
Rational chi_z(long a, long b, const mpz_class& q);
// 1/2 * sum_{l=0}^{a+1} q^l (a + b + 3 - 2l); requires -1 <= a <= b, a != b mod 2
Rational chi_y(long a, long b, const mpz_class& q);

// valuation profile of an orthogonal basis of special homomorphisms
struct IntersectionProblem {
  int n = 2, h = 0;
  std::vector<long> xvals;  // n - h entries
  std::vector<long> yvals;  // h entries
  mpz_class q = 3;
};

struct ReductionStep {
  char kind;  // 'x': strip a val-0 x slot; 'y': strip a val-(-1) y slot
  int n_before, h_before;
  long removed_val;
};

struct Reduction {
  long a = 0, b = 0;
  char core_case;  // 'z' or 'y'
  std::vector<ReductionStep> steps;
};

// peel off non-distinguished slots one at a time; "unsupported pattern"
// (returned as the string alternative) for any profile outside the two
// supported shapes
std::variant<Reduction, std::string> reduce_problem(const IntersectionProblem& p);

Rational chi(const IntersectionProblem& p);

nlohmann::json chi_report(const IntersectionProblem& p);

}  // namespace bts

#endif
