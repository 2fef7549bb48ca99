#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "singhh/algebra.hpp"
#include "singhh/groebner.hpp"
#include "singhh/poly.hpp"
#include "singhh/resolution.hpp"

namespace testers {

inline singhh::MultiPoly P(const std::string& s, const std::vector<std::string>& vars,
                           const singhh::Field& F = singhh::Field::rationals()) {
  return singhh::MultiPoly::parse(s, vars, F);
}

// k[x]/(x^m) as a structure-constant algebra on the basis 1, x, ..., x^(m-1).
inline singhh::Algebra kxm(int m) {
  using namespace singhh;
  Field F = Field::rationals();
  std::vector<std::string> vars{"x"};
  auto gb = groebner({MultiPoly::parse("x^" + std::to_string(m), vars, F)},
                     MonomialOrder::grevlex());
  return Algebra::from_commutative(*quotient_algebra(gb, vars), "kx" + std::to_string(m));
}

inline singhh::Algebra base_field_algebra() {
  using namespace singhh;
  Field F = Field::rationals();
  std::vector<std::vector<SparseVec>> table{{{{0, F.one()}}}};
  return Algebra(F, {"1"}, table, {F.one()}, "k");
}

// Two-periodic length-3 resolution of k[x]/(x^m) in the text format:
// differentials alternate right multiplication by the degree-one and the
// degree-(m-1) central elements of the enveloping algebra.
inline std::string periodic_text(const singhh::Algebra& A) {
  using namespace singhh;
  const Field& F = A.field();
  int m = A.dim();
  Algebra env = Algebra::enveloping(A);
  int D = env.dim();
  DenseVec zm(static_cast<size_t>(D), F.zero()), zp(static_cast<size_t>(D), F.zero());
  zm[static_cast<size_t>(Algebra::pair_index(1, 0, m))] = F.one();
  zm[static_cast<size_t>(Algebra::pair_index(0, 1, m))] = F.neg(F.one());
  for (int i = 0; i < m; ++i)
    zp[static_cast<size_t>(Algebra::pair_index(i, m - 1 - i, m))] = F.one();
  Matrix Rm = env.right_mult(zm), Rp = env.right_mult(zp);

  std::ostringstream os;
  os << "resolution\nranks 1 1 1 1\nperiod 2\n";
  os << "complex\nfield rationals\nrange -3 0\n";
  os << "dims " << D << " " << D << " " << D << " " << D << "\n";
  const Matrix* diffs[3] = {&Rm, &Rp, &Rm};
  for (int k = 0; k < 3; ++k) {
    os << "diff " << (-3 + k) << "\n";
    for (int i = 0; i < D; ++i) {
      DenseVec row = diffs[k]->dense_row(i);
      for (int j = 0; j < D; ++j) os << (j ? " " : "") << F.to_string(row[j]);
      os << "\n";
    }
  }
  os << "end\naugmentation\n";
  Matrix aug(F, m, D);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (const auto& [k, c] : A.table(i, j)) aug.set(k, Algebra::pair_index(i, j, m), c);
  for (int i = 0; i < m; ++i) {
    DenseVec row = aug.dense_row(i);
    for (int j = 0; j < D; ++j) os << (j ? " " : "") << F.to_string(row[j]);
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

inline singhh::BimoduleResolution periodic_res(const singhh::Algebra& A, int L) {
  std::istringstream is(periodic_text(A));
  return singhh::BimoduleResolution::load(is, A).extend_periodic(L);
}

}  // namespace testers
