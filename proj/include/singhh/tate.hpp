#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singhh/resolution.hpp"

namespace singhh {

// One stage of the truncation direct system at a fixed cohomological degree:
// the dimension of Hom into the stage, and rank data for the map to the next
// stage once it has been computed.
struct TruncationStep {
  int q = 0;
  int dim = 0;
  int map_rank = -1;  // -1 while the map to stage q+1 has not been computed
  bool map_iso = false;
};

// Full record of a stabilization scan. The verdict is declared only after
// three consecutive structure maps are isomorphisms; the scan stops early at
// that point, so later stages stay uncomputed. Scans that never see the run
// report inconclusive instead of extrapolating.
struct StabilizationTrace {
  int degree = 0;
  int q_max = 0;
  std::vector<TruncationStep> steps;
  bool stabilized = false;
  int stable_at = -1;  // first q of the isomorphism run
  int value = -1;      // the stable dimension
};

// Computes dim Hom in the derived category of bimodules from the base algebra
// into each shifted brutal truncation of the resolution, walking q = 0..q_max
// with the canonical quotient maps between stages. The resolution must be long
// enough: length >= q_max + |n| + 2. Stages with q + n < 0 are zero and are
// never counted toward stabilization, so negative degrees cannot fake an early
// verdict. All computation is read-only on the resolution; scans for distinct
// degrees may run concurrently over one shared resolution.
StabilizationTrace hhsg_dim(const Algebra& A, int n, int q_max, const BimoduleResolution& res);

// Comparison of the two descriptions of the q-th syzygy over a bar-built
// resolution: homology of the brutal truncation versus the kernel of the
// previous differential, computed independently.
struct SyzygyReport {
  int q = 0;
  std::map<int, int> truncation_homology;  // degrees above the resolution floor
  int syzygy_dim = 0;
  bool concentrated = false;  // homology lives only at degree -q
  bool matches = false;       // and has the independently computed dimension
};
SyzygyReport syzygy_identification_check(const Algebra& A, int q, const BimoduleResolution& res);

// A degree-n morphism from the resolution into its shifted brutal truncation at
// depth q, recorded as one matrix per degree. Chain map equations are verified
// at construction; the single seam equation at the resolution floor, where the
// finite complex stops being exact, is excluded (classes are only trusted with
// two degrees of margin below their truncation depth). Holds a pointer to the
// resolution, which must outlive the class.
class SingularClass {
public:
  SingularClass(const BimoduleResolution& res, int degree, int depth,
                std::map<int, Matrix> comps);

  const BimoduleResolution& resolution() const { return *res_; }
  int degree() const { return degree_; }
  int depth() const { return depth_; }
  // Component at source degree d, zero-shaped outside the stored range.
  Matrix component(int d) const;

private:
  void validate() const;
  int target_dim(int d) const;

  const BimoduleResolution* res_;
  int degree_ = 0;
  int depth_ = 0;
  std::map<int, Matrix> comps_;
};

// The class of the identity at truncation depth 0; two-sided unit for the
// composition product.
SingularClass unit_singular_class(const BimoduleResolution& res);

// Composition product: applies g first, then f pushed to a truncation depth
// deep enough that it factors through g's target. The depth starts at the
// least admissible value and deepens by one on each lifting failure, up to
// depth_cap; exhausting the cap reports the last obstruction rank.
SingularClass hhsg_product(const SingularClass& f, const SingularClass& g, int depth_cap = 10);

// Hom group at one fixed truncation depth, with a chosen cohomology basis
// realized as singular classes and coordinates for arbitrary classes of the
// same degree at depth <= q. Pointer semantics as for SingularClass.
class HhsgGroup {
public:
  static HhsgGroup compute(const BimoduleResolution& res, int n, int q);

  int degree() const { return degree_; }
  int depth() const { return depth_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<SingularClass>& basis() const { return basis_; }
  DenseVec coordinates(const SingularClass& f) const;

private:
  HhsgGroup() = default;

  const BimoduleResolution* res_ = nullptr;
  int degree_ = 0;
  int depth_ = 0;
  std::vector<SingularClass> basis_;
  Matrix solve_basis_{Field::rationals(), 0, 0};  // boundary columns then basis columns
  int boundary_count_ = 0;
};

}  // namespace singhh
