#pragma once

#include <map>

#include "singhh/algebra.hpp"
#include "singhh/complex.hpp"

namespace singhh {

// Cochain in the bar cochain complex: a multilinear map A^{⊗n} → A stored as a
// d x d^n matrix. Columns enumerate basis tensors (i_1..i_n) with i_1 most
// significant; degree 0 is a single column holding an element of A.
struct HochschildClass {
  int degree = 0;
  Matrix cocycle;

  HochschildClass(int n, Matrix m) : degree(n), cocycle(std::move(m)) {}
};

long tensor_power_dim(int d, int n, long budget);  // d^n, budget-guarded

// Components Hom(A^{⊗n}, A) for n = 0..n_max with the standard differential;
// every component dimension d^{n+1} is checked against the entry budget.
CochainComplex bar_cochain_complex(const Algebra& A, int n_max, long budget);

std::map<int, int> hh_dims(const Algebra& A, int n_max, long budget);

// Cocycle representatives of a basis of HH^n.
std::vector<HochschildClass> hh_class_basis(const Algebra& A, int n, long budget);

HochschildClass cup_product(const Algebra& A, const HochschildClass& f, const HochschildClass& g,
                            long budget);

HochschildClass unit_class(const Algebra& A);

bool is_hh_cocycle(const Algebra& A, const HochschildClass& f, long budget);
bool is_hh_coboundary(const Algebra& A, const HochschildClass& f, long budget);

}  // namespace singhh
