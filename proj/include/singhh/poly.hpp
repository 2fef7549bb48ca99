#pragma once

#include <string>
#include <utility>
#include <vector>

#include "singhh/field.hpp"

namespace singhh {

// Exponent vector; length = number of variables.
using Exps = std::vector<unsigned>;

unsigned exps_degree(const Exps& a);
Exps exps_mul(const Exps& a, const Exps& b);
bool exps_divides(const Exps& a, const Exps& b);  // a | b
Exps exps_quot(const Exps& b, const Exps& a);     // b / a, requires a | b
Exps exps_lcm(const Exps& a, const Exps& b);

struct MonomialOrder {
  enum class Kind { Grevlex, GradedLex, Lex };

  Kind kind = Kind::Grevlex;
  // Variable indices, most significant first. Empty means 0,1,...,n-1.
  std::vector<int> priority;

  static MonomialOrder grevlex() { return {Kind::Grevlex, {}}; }
  static MonomialOrder graded_lex() { return {Kind::GradedLex, {}}; }
  static MonomialOrder lex() { return {Kind::Lex, {}}; }
  MonomialOrder with_priority(std::vector<int> perm) const;

  int compare(const Exps& a, const Exps& b) const;  // -1, 0, 1
  bool less(const Exps& a, const Exps& b) const { return compare(a, b) < 0; }
  bool greater(const Exps& a, const Exps& b) const { return compare(a, b) > 0; }

  std::string describe() const;
  static MonomialOrder parse(const std::string& name);  // "grevlex" | "gradedlex" | "lex"
};

// Multivariate polynomial with exact coefficients. Terms are kept in a canonical
// order (degree then lexicographic, natural variable order, descending) that does
// not depend on any MonomialOrder, so equality is plain term comparison.
class MultiPoly {
public:
  MultiPoly(const Field& F, int nvars);
  static MultiPoly constant(const Field& F, int nvars, const Scalar& c);
  static MultiPoly variable(const Field& F, int nvars, int i);
  static MultiPoly monomial(const Field& F, const Exps& e, const Scalar& c);

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for the zero polynomial
  const std::vector<std::pair<Exps, Scalar>>& terms() const { return terms_; }
  Scalar coeff(const Exps& e) const;

  MultiPoly add(const MultiPoly& o) const;
  MultiPoly sub(const MultiPoly& o) const;
  MultiPoly mul(const MultiPoly& o) const;
  MultiPoly neg() const;
  MultiPoly scale(const Scalar& c) const;
  MultiPoly pow(unsigned k) const;
  MultiPoly mul_term(const Exps& e, const Scalar& c) const;
  MultiPoly derivative(int var) const;
  MultiPoly rename_variables(const std::vector<int>& image, int new_nvars) const;

  bool equal(const MultiPoly& o) const;
  bool is_constant() const;

  std::pair<Exps, Scalar> leading_term(const MonomialOrder& ord) const;  // nonzero only

  std::string to_string(const std::vector<std::string>& vars) const;

  // Accepts + - * / ^ and parentheses; '/' only by nonzero constants, '^' only by
  // nonnegative integer literals. Reports the byte offset of any syntax error.
  static MultiPoly parse(const std::string& text, const std::vector<std::string>& vars,
                         const Field& F);

private:
  void normalize();

  Field field_;
  int nvars_;
  std::vector<std::pair<Exps, Scalar>> terms_;
};

std::vector<MultiPoly> jacobian(const MultiPoly& f);

// Variable names for the CLI: comma separated, each a C-style identifier.
std::vector<std::string> parse_var_list(const std::string& text);

}  // namespace singhh
