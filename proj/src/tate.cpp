#include "singhh/tate.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "singhh/errors.hpp"

namespace singhh {

namespace {

bool same_structure(const Algebra& a, const Algebra& b) {
  if (a.dim() != b.dim() || !(a.field() == b.field())) return false;
  const Field& F = a.field();
  for (int i = 0; i < a.dim(); ++i) {
    if (!F.equal(a.unit()[i], b.unit()[i])) return false;
  }
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) {
      if (a.table(i, j) != b.table(i, j)) return false;
    }
  }
  return true;
}

// Quotient of the degree -q component by the image of the incoming
// differential, with a chosen linear splitting. Deep truncation stages
// compress onto this quotient: a stage cochain is stored by its generator
// images in quotient coordinates.
struct Stage {
  int q = 0;
  int dim = 0;
  Matrix projection{Field::rationals(), 0, 0};  // dim x free_dim(q), kernel = incoming image
  Matrix section{Field::rationals(), 0, 0};     // free_dim(q) x dim, projection * section = id
  std::vector<Matrix> action;                   // induced action of each env basis element
};

Stage stage_at(const BimoduleResolution& res, int q) {
  const Field& F = res.base().field();
  int nfree = res.free_dim(q);
  std::vector<DenseVec> img = image_basis(res.underlying_diff(q + 1));
  Stage st;
  st.q = q;
  if (img.empty()) {
    st.dim = nfree;
    st.projection = Matrix::identity(F, nfree);
    st.section = Matrix::identity(F, nfree);
  } else {
    RankKernel ann = rank_and_kernel(Matrix::from_rows(F, img));
    st.dim = static_cast<int>(ann.kernel.size());
    if (st.dim == 0) {
      st.projection = Matrix(F, 0, nfree);
      st.section = Matrix(F, nfree, 0);
    } else {
      st.projection = Matrix::from_rows(F, ann.kernel);
      Echelon e = eliminate(st.projection);
      std::vector<DenseVec> pivot_cols;
      for (int p : e.pivot_cols) pivot_cols.push_back(st.projection.column(p));
      auto inv = multi_solve(Matrix::from_columns(F, pivot_cols), Matrix::identity(F, st.dim));
      if (!inv) fail_math("quotient splitting is not a retraction");
      std::vector<SparseVec> rows(nfree);
      for (int k = 0; k < st.dim; ++k) rows[e.pivot_cols[k]] = to_sparse(F, inv->dense_row(k));
      st.section = Matrix::from_sparse_rows(F, st.dim, std::move(rows));
      if (!st.projection.mul(st.section).equal(Matrix::identity(F, st.dim)))
        fail_math("quotient splitting is not a retraction");
    }
  }
  const Algebra& env = res.env();
  Matrix id_copies = Matrix::identity(F, res.rank(q));
  for (int zb = 0; zb < env.dim(); ++zb) {
    Matrix free_act = Matrix::kron(id_copies, env.left_mult_basis(zb));
    st.action.push_back(st.projection.mul(free_act).mul(st.section));
  }
  return st;
}

// Differential on compressed stage cochains, from generator level s to s+1:
// precomposition with the differential, pushed into quotient coordinates.
// Cochain vectors store the image of generator t at offset t * stage dim.
Matrix cochain_block(const BimoduleResolution& res, const Stage& st, int s) {
  const Field& F = res.base().field();
  int w = st.dim;
  int rs = res.rank(s), rt = res.rank(s + 1);
  std::vector<std::vector<SparseVec>> act_rows(st.action.size());
  for (size_t zb = 0; zb < st.action.size(); ++zb) {
    for (int a = 0; a < w; ++a) act_rows[zb].push_back(st.action[zb].sparse_row(a));
  }
  std::vector<SparseVec> raw(static_cast<size_t>(rt) * w);
  for (int t = 0; t < rt; ++t) {
    for (const auto& [u, z] : res.column_entries(s + 1, t)) {
      for (const auto& [zb, c] : z) {
        for (int a = 0; a < w; ++a) {
          auto& row = raw[static_cast<size_t>(t) * w + a];
          for (const auto& [b, v] : act_rows[zb][a]) row.emplace_back(u * w + b, F.mul(c, v));
        }
      }
    }
  }
  for (auto& row : raw) {
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVec merged;
    for (auto& [j, v] : row) {
      if (!merged.empty() && merged.back().first == j)
        merged.back().second = F.add(merged.back().second, v);
      else
        merged.emplace_back(j, v);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [&](const auto& e) { return F.is_zero(e.second); }),
                 merged.end());
    row = std::move(merged);
  }
  return Matrix::from_sparse_rows(F, rs * w, std::move(raw));
}

DenseVec cochain_to_vec(const Matrix& c) {
  DenseVec v;
  v.reserve(static_cast<size_t>(c.rows()) * c.cols());
  for (int t = 0; t < c.cols(); ++t) {
    DenseVec col = c.column(t);
    for (int a = 0; a < c.rows(); ++a) v.push_back(col[a]);
  }
  return v;
}

Matrix vec_to_cochain(const Field& F, int w, int r, const DenseVec& v) {
  if (w == 0 || r == 0) return Matrix(F, w, r);
  std::vector<DenseVec> cols;
  for (int t = 0; t < r; ++t) cols.emplace_back(v.begin() + static_cast<size_t>(t) * w,
                                                v.begin() + static_cast<size_t>(t + 1) * w);
  return Matrix::from_columns(F, cols);
}

// Images of several stage-q cochains at generator level s under the connecting
// map of 0 -> quotient(q+1) -> free(-q-1) -> quotient(q) -> 0: lift generator
// images through the section, apply the next differential, pull the result
// back through the free cover one stage deeper. One elimination serves all
// cochains. The pullback fails only on non-cocycles; the obstruction rank is
// reported through the out parameter in that case.
std::optional<std::vector<Matrix>> push_many(const BimoduleResolution& res, const Stage& from,
                                             const Stage& to, int s, const std::vector<Matrix>& cs,
                                             int* obstruction_rank) {
  const Field& F = res.base().field();
  int q = from.q;
  int rs = res.rank(s), rt = res.rank(s + 1);
  int k = static_cast<int>(cs.size());
  std::vector<DenseVec> rhs_cols;
  for (const Matrix& c : cs) {
    std::vector<DenseVec> lifted;
    for (int u = 0; u < rs; ++u) lifted.push_back(from.section.apply(c.column(u)));
    for (int t = 0; t < rt; ++t) {
      DenseVec col(res.free_dim(q), F.zero());
      for (const auto& [u, z] : res.column_entries(s + 1, t)) {
        DenseVec term = res.free_action(q, z, lifted[u]);
        for (size_t i = 0; i < col.size(); ++i) col[i] = F.add(col[i], term[i]);
      }
      rhs_cols.push_back(std::move(col));
    }
  }
  const Matrix& step = res.underlying_diff(q + 1);
  Matrix rhs = rhs_cols.empty() ? Matrix(F, res.free_dim(q), 0) : Matrix::from_columns(F, rhs_cols);
  auto lift = multi_solve(step, rhs);
  if (!lift) {
    if (obstruction_rank) *obstruction_rank = rank(Matrix::hstack(step, rhs)) - rank(step);
    return std::nullopt;
  }
  Matrix projected = to.projection.mul(*lift);
  std::vector<Matrix> out;
  for (int i = 0; i < k; ++i) {
    std::vector<DenseVec> cols;
    for (int t = 0; t < rt; ++t) cols.push_back(projected.column(i * rt + t));
    out.push_back(to.dim == 0 || rt == 0 ? Matrix(F, to.dim, rt) : Matrix::from_columns(F, cols));
  }
  return out;
}

std::optional<Matrix> push_one(const BimoduleResolution& res, const Stage& from, const Stage& to,
                               int s, const Matrix& c, int* obstruction_rank = nullptr) {
  auto out = push_many(res, from, to, s, {c}, obstruction_rank);
  if (!out) return std::nullopt;
  return std::move((*out)[0]);
}

// Incremental row span with exact reduction; absorb returns whether the vector
// enlarged the span.
struct IncrementalSpan {
  explicit IncrementalSpan(const Field& F) : F_(&F) {}

  int size() const { return static_cast<int>(rows_.size()); }

  bool absorb(DenseVec v) {
    int n = static_cast<int>(v.size());
    int i = 0;
    while (i < n) {
      if (F_->is_zero(v[i])) {
        ++i;
        continue;
      }
      auto it = rows_.find(i);
      if (it == rows_.end()) {
        Scalar lead_inv = F_->inv(v[i]);
        SparseVec row;
        for (int j = i; j < n; ++j)
          if (!F_->is_zero(v[j])) row.emplace_back(j, F_->mul(lead_inv, v[j]));
        rows_.emplace(i, std::move(row));
        return true;
      }
      Scalar c = v[i];
      for (const auto& [j, x] : it->second) v[j] = F_->sub(v[j], F_->mul(c, x));
      ++i;
    }
    return false;
  }

private:
  const Field* F_;
  std::map<int, SparseVec> rows_;
};

// Columns embedding the generators of the level-s component (unit of the
// enveloping algebra in each copy).
Matrix generator_embed(const BimoduleResolution& res, int s) {
  const Field& F = res.base().field();
  AlgElem u = to_sparse(F, res.env().unit());
  std::vector<DenseVec> cols;
  for (int t = 0; t < res.rank(s); ++t) cols.push_back(res.embed_generator(s, t, u));
  return Matrix::from_columns(F, cols);
}

// Extension of generator images at a target level to the full component, one
// column per (source generator, env basis element).
Matrix extend_linearly(const BimoduleResolution& res, int level, const Matrix& gen) {
  const Field& F = res.base().field();
  int D = res.env().dim();
  std::vector<DenseVec> cols;
  for (int t = 0; t < gen.cols(); ++t) {
    DenseVec g = gen.column(t);
    for (int zb = 0; zb < D; ++zb) {
      AlgElem z{{zb, F.one()}};
      cols.push_back(res.free_action(level, z, g));
    }
  }
  if (cols.empty()) return Matrix(F, res.free_dim(level), 0);
  return Matrix::from_columns(F, cols);
}

struct Realized {
  std::optional<SingularClass> cls;
  int obstruction_rank = 0;
};

// Builds the chain map for a compressed cocycle: the top component lifts the
// generator images through the section, and each lower component is solved
// through the target differential at generator level. A solve can only fail at
// the top target degree for a non-cocycle (reported with its obstruction rank)
// or at the resolution floor, where the component is set to zero and the seam
// is excluded from validation.
Realized realize_cocycle(const BimoduleResolution& res, int n, int q, const Stage& st,
                         const Matrix& c) {
  const Field& F = res.base().field();
  int L = res.length();
  int s = q + n;
  std::map<int, Matrix> comps;
  int d_top = -s;
  Matrix cur_gen = st.section.mul(c);
  comps.emplace(d_top, extend_linearly(res, q, cur_gen));
  for (int d = d_top - 1; d >= -L; --d) {
    int tgt = d + n;
    if (tgt < -L) break;
    int src_level = -d;
    int val_level = -(d + 1 + n);
    std::vector<DenseVec> rhs_cols;
    for (int t = 0; t < res.rank(src_level); ++t) {
      DenseVec col(res.free_dim(val_level), F.zero());
      for (const auto& [u, z] : res.column_entries(src_level, t)) {
        DenseVec term = res.free_action(val_level, z, cur_gen.column(u));
        for (size_t i = 0; i < col.size(); ++i) col[i] = F.add(col[i], term[i]);
      }
      rhs_cols.push_back(std::move(col));
    }
    Matrix rhs = rhs_cols.empty() ? Matrix(F, res.free_dim(val_level), 0)
                                  : Matrix::from_columns(F, rhs_cols);
    if (n % 2 != 0) rhs = rhs.neg();
    const Matrix& step = res.underlying_diff(-tgt);
    auto sol = multi_solve(step, rhs);
    if (!sol) {
      if (tgt == -L) {
        cur_gen = Matrix(F, res.free_dim(-tgt), res.rank(src_level));
        continue;
      }
      Realized r;
      r.obstruction_rank = rank(Matrix::hstack(step, rhs)) - rank(step);
      return r;
    }
    cur_gen = std::move(*sol);
    comps.emplace(d, extend_linearly(res, -tgt, cur_gen));
  }
  Realized r;
  r.cls = SingularClass(res, n, q, std::move(comps));
  return r;
}

// Compressed generator-image cochain of a class at its own truncation depth.
Matrix compress_class(const BimoduleResolution& res, const Stage& st, const SingularClass& f) {
  int level = st.q + f.degree();
  return st.projection.mul(f.component(-level).mul(generator_embed(res, level)));
}

void check_window(const BimoduleResolution& res, int q, int n, const char* what) {
  int need = q + std::abs(n) + 2;
  if (res.length() < need) {
    std::ostringstream os;
    os << "resolution too short: " << what << " at degree " << n << ", truncation depth " << q
       << " needs length >= " << need << ", have " << res.length();
    fail_input(os.str());
  }
}

}  // namespace

StabilizationTrace hhsg_dim(const Algebra& A, int n, int q_max, const BimoduleResolution& res) {
  if (!same_structure(A, res.base())) fail_input("resolution does not resolve the given algebra");
  if (q_max < 0) fail_input("truncation scan requires q_max >= 0");
  check_window(res, q_max, n, "scanning");
  const Field& F = A.field();

  StabilizationTrace trace;
  trace.degree = n;
  trace.q_max = q_max;

  struct LevelData {
    int q = 0, s = 0, dim = 0;
    bool has_space = false;
    Stage st;
    std::vector<Matrix> reps;
  };
  LevelData prev;
  int run = 0;
  int guard = std::max(0, -n);

  for (int q = 0; q <= q_max; ++q) {
    LevelData cur;
    cur.q = q;
    cur.s = q + n;
    IncrementalSpan boundary_span(F);
    if (cur.s >= 0) {
      cur.has_space = true;
      cur.st = stage_at(res, q);
      int w = cur.st.dim;
      int space = res.rank(cur.s) * w;
      Matrix d_out = cochain_block(res, cur.st, cur.s);
      Echelon eo = eliminate(d_out);
      std::vector<DenseVec> boundaries;
      if (cur.s >= 1) boundaries = image_basis(cochain_block(res, cur.st, cur.s - 1));
      for (DenseVec& b : boundaries) boundary_span.absorb(std::move(b));
      int ker_dim = space - eo.rank;
      cur.dim = ker_dim - boundary_span.size();
      IncrementalSpan rep_span = boundary_span;
      std::vector<char> is_pivot(space, 0);
      for (int p : eo.pivot_cols) is_pivot[p] = 1;
      for (int j = 0; j < space && static_cast<int>(cur.reps.size()) < cur.dim; ++j) {
        if (is_pivot[j]) continue;
        DenseVec v(space, F.zero());
        v[j] = F.one();
        for (int r = 0; r < eo.rank; ++r) {
          const SparseVec& row = eo.reduced_rows[r];
          auto it = std::lower_bound(row.begin(), row.end(), j,
                                     [](const auto& e, int col) { return e.first < col; });
          if (it != row.end() && it->first == j) v[eo.pivot_cols[r]] = F.neg(it->second);
        }
        DenseVec keep = v;
        if (rep_span.absorb(std::move(v)))
          cur.reps.push_back(vec_to_cochain(F, w, res.rank(cur.s), keep));
      }
      if (static_cast<int>(cur.reps.size()) != cur.dim)
        fail_math("cocycle representatives fell short of the cohomology dimension");
    }
    trace.steps.push_back({q, cur.dim, -1, false});

    if (q >= 1) {
      int map_rank = 0;
      if (prev.has_space && !prev.reps.empty()) {
        auto pushed = push_many(res, prev.st, cur.st, prev.s, prev.reps, nullptr);
        if (!pushed) fail_math("structure map image fell outside the next stage");
        for (const Matrix& p : *pushed)
          if (boundary_span.absorb(cochain_to_vec(p))) ++map_rank;
      }
      bool iso = (map_rank == prev.dim) && (prev.dim == cur.dim);
      trace.steps[q - 1].map_rank = map_rank;
      trace.steps[q - 1].map_iso = iso;
      if (iso && (q - 1) >= guard)
        ++run;
      else
        run = 0;
      if (run == 3) {
        trace.stabilized = true;
        trace.stable_at = q - 3;
        trace.value = trace.steps[trace.stable_at].dim;
        break;
      }
    }
    prev = std::move(cur);
  }
  return trace;
}

SyzygyReport syzygy_identification_check(const Algebra& A, int q, const BimoduleResolution& res) {
  if (!same_structure(A, res.base())) fail_input("resolution does not resolve the given algebra");
  if (res.provenance() != BimoduleResolution::Provenance::Bar)
    fail_input("syzygy identification requires a bar-built resolution");
  int L = res.length();
  if (q < 0 || q >= L) fail_input("truncation depth must lie in [0, length-1]");

  SyzygyReport rep;
  rep.q = q;
  rep.truncation_homology = res.underlying().truncate_le(-q).homology_dims(-L + 1, 0);

  if (q == 0)
    rep.syzygy_dim = A.dim();
  else if (q == 1)
    rep.syzygy_dim = res.free_dim(0) - rank(res.augmentation());
  else
    rep.syzygy_dim = res.free_dim(q - 1) - rank(res.underlying_diff(q - 1));

  rep.concentrated = true;
  for (const auto& [d, h] : rep.truncation_homology) {
    if (h != 0 && d != -q) rep.concentrated = false;
  }
  int at_top = 0;
  auto it = rep.truncation_homology.find(-q);
  if (it != rep.truncation_homology.end()) at_top = it->second;
  rep.matches = rep.concentrated && (at_top == rep.syzygy_dim);
  return rep;
}

SingularClass::SingularClass(const BimoduleResolution& res, int degree, int depth,
                             std::map<int, Matrix> comps)
    : res_(&res), degree_(degree), depth_(depth), comps_(std::move(comps)) {
  if (depth_ < 0 || depth_ > res.length()) fail_input("class truncation depth is out of range");
  validate();
}

int SingularClass::target_dim(int d) const {
  int e = d + degree_;
  if (e < -res_->length() || e > -depth_) return 0;
  return res_->free_dim(-e);
}

Matrix SingularClass::component(int d) const {
  auto it = comps_.find(d);
  if (it != comps_.end()) return it->second;
  int src = (d >= -res_->length() && d <= 0) ? res_->free_dim(-d) : 0;
  return Matrix(res_->base().field(), target_dim(d), src);
}

void SingularClass::validate() const {
  int L = res_->length();
  for (const auto& [d, m] : comps_) {
    if (d < -L || d > 0) fail_input("singular class component degree is out of range");
    if (m.rows() != target_dim(d) || m.cols() != res_->free_dim(-d)) {
      std::ostringstream os;
      os << "singular class component at degree " << d << " has the wrong shape";
      fail_input(os.str());
    }
  }
  for (int d = -L; d <= -1; ++d) {
    if (degree_ <= 0 && (d == -L || d == -L - degree_)) continue;
    int e = d + degree_;
    Matrix lhs(res_->base().field(), target_dim(d + 1), res_->free_dim(-d));
    if (e >= -L && e <= -depth_ - 1) lhs = res_->underlying_diff(-e).mul(component(d));
    if (degree_ % 2 != 0) lhs = lhs.neg();
    Matrix rhs = component(d + 1).mul(res_->underlying_diff(-d));
    if (!lhs.equal(rhs)) {
      std::ostringstream os;
      os << "singular class fails the chain map equation at source degree " << d;
      fail_math(os.str());
    }
  }
}

SingularClass unit_singular_class(const BimoduleResolution& res) {
  const Field& F = res.base().field();
  std::map<int, Matrix> comps;
  for (int d = -res.length(); d <= 0; ++d) comps.emplace(d, Matrix::identity(F, res.free_dim(-d)));
  return SingularClass(res, 0, 0, std::move(comps));
}

SingularClass hhsg_product(const SingularClass& f, const SingularClass& g, int depth_cap) {
  if (&f.resolution() != &g.resolution()) fail_input("classes live over different resolutions");
  const BimoduleResolution& res = f.resolution();
  int n = f.degree(), m = g.degree();
  int qf = f.depth(), qg = g.depth();
  int r = std::max(qf, qg - n);
  if (r > depth_cap) {
    std::ostringstream os;
    os << "required truncation depth " << r << " exceeds the depth cap " << depth_cap;
    fail_input(os.str());
  }

  Stage st = stage_at(res, qf);
  Matrix c = compress_class(res, st, f);
  int depth = qf;
  std::optional<SingularClass> lifted;
  int last_obstruction = 0;
  while (true) {
    if (depth < r) {
      check_window(res, depth + 1, n, "lifting the product");
      Stage next = stage_at(res, depth + 1);
      auto pushed = push_one(res, st, next, depth + n, c);
      if (!pushed) fail_math("structure map image fell outside the next stage");
      c = std::move(*pushed);
      st = std::move(next);
      ++depth;
      continue;
    }
    check_window(res, depth, n, "lifting the product");
    Realized attempt = realize_cocycle(res, n, depth, st, c);
    if (attempt.cls) {
      lifted = std::move(attempt.cls);
      break;
    }
    last_obstruction = attempt.obstruction_rank;
    if (depth + 1 > depth_cap) {
      std::ostringstream os;
      os << "product lifting failed at truncation depth " << depth
         << " after exhausting the depth cap; last obstruction rank " << last_obstruction;
      fail_math(os.str());
    }
    r = depth + 1;
  }

  int L = res.length();
  std::map<int, Matrix> comps;
  for (int d = -L; d <= 0; ++d) {
    int te = d + m + n;
    if (te < -L || te > -depth) continue;
    comps.emplace(d, lifted->component(d + m).mul(g.component(d)));
  }
  return SingularClass(res, n + m, depth, std::move(comps));
}

HhsgGroup HhsgGroup::compute(const BimoduleResolution& res, int n, int q) {
  if (q < 0 || q + n < 0) fail_input("class group requires q >= 0 and q + n >= 0");
  check_window(res, q, n, "computing the class group");
  const Field& F = res.base().field();

  HhsgGroup grp;
  grp.res_ = &res;
  grp.degree_ = n;
  grp.depth_ = q;

  Stage st = stage_at(res, q);
  int s = q + n;
  int w = st.dim;
  int space = res.rank(s) * w;
  Matrix d_out = cochain_block(res, st, s);
  Echelon eo = eliminate(d_out);
  std::vector<DenseVec> boundaries;
  if (s >= 1) boundaries = image_basis(cochain_block(res, st, s - 1));
  IncrementalSpan span(F);
  std::vector<DenseVec> basis_cols;
  for (const DenseVec& b : boundaries) {
    if (span.absorb(b)) basis_cols.push_back(b);
  }
  grp.boundary_count_ = static_cast<int>(basis_cols.size());
  int dim = (space - eo.rank) - grp.boundary_count_;
  std::vector<char> is_pivot(space, 0);
  for (int p : eo.pivot_cols) is_pivot[p] = 1;
  std::vector<Matrix> reps;
  for (int j = 0; j < space && static_cast<int>(reps.size()) < dim; ++j) {
    if (is_pivot[j]) continue;
    DenseVec v(space, F.zero());
    v[j] = F.one();
    for (int r = 0; r < eo.rank; ++r) {
      const SparseVec& row = eo.reduced_rows[r];
      auto it = std::lower_bound(row.begin(), row.end(), j,
                                 [](const auto& e, int col) { return e.first < col; });
      if (it != row.end() && it->first == j) v[eo.pivot_cols[r]] = F.neg(it->second);
    }
    if (span.absorb(v)) {
      basis_cols.push_back(v);
      reps.push_back(vec_to_cochain(F, w, res.rank(s), v));
    }
  }
  if (static_cast<int>(reps.size()) != dim)
    fail_math("cocycle representatives fell short of the cohomology dimension");

  for (const Matrix& rep : reps) {
    Realized re = realize_cocycle(res, n, q, st, rep);
    if (!re.cls) fail_math("cohomology representative failed to lift to a chain map");
    grp.basis_.push_back(std::move(*re.cls));
  }
  grp.solve_basis_ = basis_cols.empty() ? Matrix(F, space, 0)
                                        : Matrix::from_columns(F, basis_cols);
  return grp;
}

DenseVec HhsgGroup::coordinates(const SingularClass& f) const {
  if (&f.resolution() != res_) fail_input("class belongs to a different resolution");
  if (f.degree() != degree_) fail_input("class degree does not match the group");
  if (f.depth() > depth_) fail_input("class truncation depth exceeds the group depth");
  const Field& F = res_->base().field();

  Stage st = stage_at(*res_, f.depth());
  Matrix c = compress_class(*res_, st, f);
  for (int j = f.depth(); j < depth_; ++j) {
    Stage next = stage_at(*res_, j + 1);
    auto pushed = push_one(*res_, st, next, j + degree_, c);
    if (!pushed) fail_math("structure map image fell outside the next stage");
    c = std::move(*pushed);
    st = std::move(next);
  }
  DenseVec v = cochain_to_vec(c);

  if (solve_basis_.cols() == 0) {
    for (const Scalar& x : v)
      if (!F.is_zero(x)) fail_math("class does not define a cocycle at the group depth");
    return {};
  }
  auto coords = coordinates_in(solve_basis_, Matrix::from_columns(F, {v}));
  if (!coords) fail_math("class does not define a cocycle at the group depth");
  DenseVec out;
  for (int i = boundary_count_; i < solve_basis_.cols(); ++i) out.push_back(coords->get(i, 0));
  return out;
}

}  // namespace singhh
