#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "singhh/groebner.hpp"
#include "singhh/linalg.hpp"

namespace singhh {

// Cochain complex of finite-dimensional based vector spaces on a bounded degree
// range. Differentials raise degree by one; d^{d+1} ∘ d^d = 0 is checked at
// construction. The suspension convention is fixed once: (Σ X)^d = X^{d+1} and
// the differential changes sign.
class CochainComplex {
public:
  explicit CochainComplex(const Field& F);  // empty complex
  // dims[i] is the dimension in degree lo+i; diffs[i] maps degree lo+i to lo+i+1
  // and must have shape dims[i+1] x dims[i].
  CochainComplex(const Field& F, int lo, std::vector<int> dims, std::vector<Matrix> diffs);

  static CochainComplex single(const Field& F, int degree, int dim);

  const Field& field() const { return field_; }
  bool empty() const { return dims_.empty(); }
  int lo() const;
  int hi() const;
  int dim(int d) const;
  Matrix diff(int d) const;  // shaped dim(d+1) x dim(d); zero outside the range
  long total_dim() const;

  std::map<int, int> homology_dims() const;
  std::map<int, int> homology_dims(int dlo, int dhi) const;

  CochainComplex truncate_le(int q) const;
  CochainComplex truncate_gt(int q) const;
  CochainComplex shift(int n) const;  // Σ^n
  CochainComplex direct_sum(const CochainComplex& o) const;

  void write(std::ostream& os) const;
  static CochainComplex read(std::istream& is);

private:
  void validate() const;

  Field field_;
  int lo_ = 0;
  std::vector<int> dims_;
  std::vector<Matrix> diffs_;  // diffs_[i]: degree lo_+i -> lo_+i+1, size dims_.size()-1
};

enum class TruncSide { Le, Gt };
CochainComplex truncate(const CochainComplex& c, int q, TruncSide side);

// Degreewise map between complexes commuting with the differentials; checked at
// construction with the failing degree reported.
class ChainMap {
public:
  ChainMap(CochainComplex src, CochainComplex tgt, std::map<int, Matrix> comps);

  static ChainMap identity(const CochainComplex& c);
  static ChainMap zero(CochainComplex src, CochainComplex tgt);

  const CochainComplex& source() const { return src_; }
  const CochainComplex& target() const { return tgt_; }
  Matrix component(int d) const;  // shaped tgt.dim(d) x src.dim(d)

  ChainMap compose_after(const ChainMap& first) const;  // this ∘ first

private:
  CochainComplex src_, tgt_;
  std::map<int, Matrix> comps_;
};

// Canonical quotient chain map σ≤q c → σ≤q−1 c: identity below degree q, zero at q.
ChainMap truncation_quotient_map(const CochainComplex& c, int q);

CochainComplex cone(const ChainMap& f);

// Degree-n component ⊕_i Hom(c^i, d^{i+n}); blocks ordered by ascending i, each
// block in column-major layout. Differential f ↦ d_d ∘ f − (−1)^n f ∘ d_c.
CochainComplex hom_complex(const CochainComplex& c, const CochainComplex& d);

// Independent oracle for H^0 of hom_complex: dimension of the space of chain maps
// c → d modulo chain homotopy, computed by two direct linear solves.
int chain_maps_mod_homotopy_dim(const CochainComplex& c, const CochainComplex& d);

// Koszul complex on r chosen elements of a commutative algebra, cohomologically
// indexed in degrees −r..0. Contraction against e_{i1}∧…∧e_{ij} uses the
// alternating sum Σ_t (−1)^{t+1} f_{i_t}·(… without e_{i_t} …).
CochainComplex koszul(const CommAlgebra& B, const std::vector<DenseVec>& elems);

// Homology dimensions of the 2-periodic complex generated by a two-term complex:
// even degrees carry the cokernel dimension of its matrix, odd degrees the kernel
// dimension.
std::map<int, int> periodic_unfold(const CochainComplex& c, int n_min, int n_max);

}  // namespace singhh
