#include "singhh/complex.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "singhh/errors.hpp"

namespace singhh {

CochainComplex::CochainComplex(const Field& F) : field_(F) {}

CochainComplex::CochainComplex(const Field& F, int lo, std::vector<int> dims,
                               std::vector<Matrix> diffs)
    : field_(F), lo_(lo), dims_(std::move(dims)), diffs_(std::move(diffs)) {
  validate();
}

void CochainComplex::validate() const {
  if (dims_.empty()) {
    if (!diffs_.empty()) fail_input("empty complex with differentials");
    return;
  }
  if (diffs_.size() + 1 != dims_.size())
    fail_input("complex needs exactly one differential per adjacent degree pair");
  for (int d : dims_)
    if (d < 0) fail_input("negative component dimension");
  for (size_t i = 0; i < diffs_.size(); ++i) {
    const Matrix& m = diffs_[i];
    if (m.field() != field_) fail_input("differential over the wrong field");
    if (m.rows() != dims_[i + 1] || m.cols() != dims_[i])
      fail_input("differential at degree " + std::to_string(lo_ + static_cast<int>(i)) +
                 " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                 ", expected " + std::to_string(dims_[i + 1]) + "x" + std::to_string(dims_[i]));
  }
  for (size_t i = 0; i + 1 < diffs_.size(); ++i) {
    if (!diffs_[i + 1].mul(diffs_[i]).is_zero())
      fail_input("d^2 is nonzero at degree " + std::to_string(lo_ + static_cast<int>(i)));
  }
}

CochainComplex CochainComplex::single(const Field& F, int degree, int dim) {
  return CochainComplex(F, degree, {dim}, {});
}

int CochainComplex::lo() const {
  if (empty()) fail_input("empty complex has no support");
  return lo_;
}

int CochainComplex::hi() const {
  if (empty()) fail_input("empty complex has no support");
  return lo_ + static_cast<int>(dims_.size()) - 1;
}

int CochainComplex::dim(int d) const {
  if (empty() || d < lo_ || d > lo_ + static_cast<int>(dims_.size()) - 1) return 0;
  return dims_[static_cast<size_t>(d - lo_)];
}

Matrix CochainComplex::diff(int d) const {
  if (!empty() && d >= lo_ && d - lo_ < static_cast<int>(diffs_.size()))
    return diffs_[static_cast<size_t>(d - lo_)];
  return Matrix(field_, dim(d + 1), dim(d));
}

long CochainComplex::total_dim() const {
  long t = 0;
  for (int d : dims_) t += d;
  return t;
}

std::map<int, int> CochainComplex::homology_dims() const {
  if (empty()) return {};
  return homology_dims(lo(), hi());
}

std::map<int, int> CochainComplex::homology_dims(int dlo, int dhi) const {
  std::map<int, int> out;
  for (int d = dlo; d <= dhi; ++d) {
    int h = dim(d) - rank(diff(d)) - rank(diff(d - 1));
    out[d] = h;
  }
  return out;
}

CochainComplex CochainComplex::truncate_le(int q) const {
  if (empty() || q < lo_) return CochainComplex(field_);
  int h = lo_ + static_cast<int>(dims_.size()) - 1;
  if (q >= h) return *this;
  size_t keep = static_cast<size_t>(q - lo_) + 1;
  return CochainComplex(field_, lo_, std::vector<int>(dims_.begin(), dims_.begin() + static_cast<long>(keep)),
                        std::vector<Matrix>(diffs_.begin(), diffs_.begin() + static_cast<long>(keep) - 1));
}

CochainComplex CochainComplex::truncate_gt(int q) const {
  if (empty()) return CochainComplex(field_);
  int h = lo_ + static_cast<int>(dims_.size()) - 1;
  if (q >= h) return CochainComplex(field_);
  if (q < lo_) return *this;
  size_t drop = static_cast<size_t>(q - lo_) + 1;
  return CochainComplex(field_, q + 1, std::vector<int>(dims_.begin() + static_cast<long>(drop), dims_.end()),
                        std::vector<Matrix>(diffs_.begin() + static_cast<long>(drop), diffs_.end()));
}

CochainComplex truncate(const CochainComplex& c, int q, TruncSide side) {
  return side == TruncSide::Le ? c.truncate_le(q) : c.truncate_gt(q);
}

CochainComplex CochainComplex::shift(int n) const {
  if (empty()) return *this;
  std::vector<Matrix> diffs = diffs_;
  if (n % 2 != 0)
    for (Matrix& m : diffs) m = m.neg();
  return CochainComplex(field_, lo_ - n, dims_, std::move(diffs));
}

CochainComplex CochainComplex::direct_sum(const CochainComplex& o) const {
  if (field_ != o.field_) fail_input("direct sum over different fields");
  if (empty()) return o;
  if (o.empty()) return *this;
  int nlo = std::min(lo_, o.lo_), nhi = std::max(hi(), o.hi());
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int d = nlo; d <= nhi; ++d) dims.push_back(dim(d) + o.dim(d));
  for (int d = nlo; d < nhi; ++d) {
    Matrix m(field_, dim(d + 1) + o.dim(d + 1), dim(d) + o.dim(d));
    m.set_block(0, 0, diff(d));
    m.set_block(dim(d + 1), dim(d), o.diff(d));
    diffs.push_back(std::move(m));
  }
  return CochainComplex(field_, nlo, std::move(dims), std::move(diffs));
}

void CochainComplex::write(std::ostream& os) const {
  os << "complex\n";
  if (field_.kind() == FieldKind::Rationals)
    os << "field rationals\n";
  else
    os << "field gf " << field_.characteristic() << "\n";
  if (empty()) {
    os << "empty\nend\n";
    return;
  }
  os << "range " << lo() << " " << hi() << "\n";
  os << "dims";
  for (int d : dims_) os << " " << d;
  os << "\n";
  for (int d = lo(); d < hi(); ++d) {
    os << "diff " << d << "\n";
    Matrix m = diff(d);
    for (int i = 0; i < m.rows(); ++i) {
      DenseVec row = m.dense_row(i);
      for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << field_.to_string(row[static_cast<size_t>(j)]);
      os << "\n";
    }
  }
  os << "end\n";
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

std::string next_content_line(std::istream& is, int& lineno) {
  std::string line;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (!split_ws(line).empty()) return line;
  }
  return "";
}

}  // namespace

CochainComplex CochainComplex::read(std::istream& is) {
  int lineno = 0;
  auto where = [&]() { return " (line " + std::to_string(lineno) + ")"; };

  std::vector<std::string> tok = split_ws(next_content_line(is, lineno));
  if (tok.empty() || tok[0] != "complex") fail_input("expected 'complex' header" + where());

  tok = split_ws(next_content_line(is, lineno));
  Field F = Field::rationals();
  if (tok.size() == 2 && tok[0] == "field" && tok[1] == "rationals") {
  } else if (tok.size() == 3 && tok[0] == "field" && tok[1] == "gf") {
    F = Field::prime(std::stoul(tok[2]));
  } else {
    fail_input("expected field line" + where());
  }

  tok = split_ws(next_content_line(is, lineno));
  if (!tok.empty() && tok[0] == "empty") {
    tok = split_ws(next_content_line(is, lineno));
    if (tok.empty() || tok[0] != "end") fail_input("expected 'end'" + where());
    return CochainComplex(F);
  }
  if (tok.size() != 3 || tok[0] != "range") fail_input("expected range line" + where());
  int lo = std::stoi(tok[1]), hi = std::stoi(tok[2]);
  if (hi < lo) fail_input("range upper bound below lower bound" + where());

  tok = split_ws(next_content_line(is, lineno));
  if (tok.empty() || tok[0] != "dims" || static_cast<int>(tok.size()) != hi - lo + 2)
    fail_input("expected dims line with " + std::to_string(hi - lo + 1) + " entries" + where());
  std::vector<int> dims;
  for (size_t i = 1; i < tok.size(); ++i) dims.push_back(std::stoi(tok[i]));

  std::vector<Matrix> diffs;
  for (int d = lo; d < hi; ++d) {
    tok = split_ws(next_content_line(is, lineno));
    if (tok.size() != 2 || tok[0] != "diff" || std::stoi(tok[1]) != d)
      fail_input("expected 'diff " + std::to_string(d) + "'" + where());
    int nr = dims[static_cast<size_t>(d - lo + 1)], nc = dims[static_cast<size_t>(d - lo)];
    Matrix m(F, nr, nc);
    for (int i = 0; i < nr; ++i) {
      tok = split_ws(next_content_line(is, lineno));
      if (static_cast<int>(tok.size()) != nc)
        fail_input("matrix row has " + std::to_string(tok.size()) + " entries, expected " +
                   std::to_string(nc) + where());
      for (int j = 0; j < nc; ++j) m.set(i, j, F.parse(tok[static_cast<size_t>(j)]));
    }
    diffs.push_back(std::move(m));
  }
  tok = split_ws(next_content_line(is, lineno));
  if (tok.empty() || tok[0] != "end") fail_input("expected 'end'" + where());
  return CochainComplex(F, lo, std::move(dims), std::move(diffs));
}

ChainMap::ChainMap(CochainComplex src, CochainComplex tgt, std::map<int, Matrix> comps)
    : src_(std::move(src)), tgt_(std::move(tgt)), comps_(std::move(comps)) {
  if (src_.field() != tgt_.field()) fail_input("chain map between different fields");
  for (const auto& [d, m] : comps_)
    if (m.rows() != tgt_.dim(d) || m.cols() != src_.dim(d))
      fail_input("chain map component at degree " + std::to_string(d) + " has wrong shape");
  if (src_.empty() || tgt_.empty()) return;
  int lo = std::min(src_.lo(), tgt_.lo()) - 1, hi = std::max(src_.hi(), tgt_.hi());
  for (int d = lo; d <= hi; ++d) {
    Matrix lhs = tgt_.diff(d).mul(component(d));
    Matrix rhs = component(d + 1).mul(src_.diff(d));
    if (!lhs.equal(rhs))
      fail_input("chain map fails to commute with differentials at degree " + std::to_string(d));
  }
}

Matrix ChainMap::component(int d) const {
  auto it = comps_.find(d);
  if (it != comps_.end()) return it->second;
  return Matrix(src_.field(), tgt_.dim(d), src_.dim(d));
}

ChainMap ChainMap::identity(const CochainComplex& c) {
  std::map<int, Matrix> comps;
  if (!c.empty())
    for (int d = c.lo(); d <= c.hi(); ++d)
      if (c.dim(d) > 0) comps.emplace(d, Matrix::identity(c.field(), c.dim(d)));
  return ChainMap(c, c, std::move(comps));
}

ChainMap ChainMap::zero(CochainComplex src, CochainComplex tgt) {
  return ChainMap(std::move(src), std::move(tgt), {});
}

ChainMap ChainMap::compose_after(const ChainMap& first) const {
  std::map<int, Matrix> comps;
  if (!first.src_.empty()) {
    int lo = first.src_.lo(), hi = first.src_.hi();
    for (int d = lo; d <= hi; ++d) {
      Matrix m = component(d).mul(first.component(d));
      if (!m.is_zero() || (tgt_.dim(d) > 0 && first.src_.dim(d) > 0)) comps.emplace(d, std::move(m));
    }
  }
  return ChainMap(first.src_, tgt_, std::move(comps));
}

ChainMap truncation_quotient_map(const CochainComplex& c, int q) {
  CochainComplex src = c.truncate_le(q), tgt = c.truncate_le(q - 1);
  std::map<int, Matrix> comps;
  if (!tgt.empty())
    for (int d = tgt.lo(); d <= tgt.hi(); ++d)
      if (tgt.dim(d) > 0) comps.emplace(d, Matrix::identity(c.field(), tgt.dim(d)));
  return ChainMap(std::move(src), std::move(tgt), std::move(comps));
}

CochainComplex cone(const ChainMap& f) {
  const CochainComplex& X = f.source();
  const CochainComplex& Y = f.target();
  const Field& F = X.field();
  if (X.empty() && Y.empty()) return CochainComplex(F);
  int lo = 1 << 30, hi = -(1 << 30);
  if (!X.empty()) {
    lo = std::min(lo, X.lo() - 1);
    hi = std::max(hi, X.hi() - 1);
  }
  if (!Y.empty()) {
    lo = std::min(lo, Y.lo());
    hi = std::max(hi, Y.hi());
  }
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int d = lo; d <= hi; ++d) dims.push_back(X.dim(d + 1) + Y.dim(d));
  for (int d = lo; d < hi; ++d) {
    Matrix m(F, X.dim(d + 2) + Y.dim(d + 1), X.dim(d + 1) + Y.dim(d));
    m.set_block(0, 0, X.diff(d + 1).neg());
    m.set_block(X.dim(d + 2), 0, f.component(d + 1));
    m.set_block(X.dim(d + 2), X.dim(d + 1), Y.diff(d));
    diffs.push_back(std::move(m));
  }
  return CochainComplex(F, lo, std::move(dims), std::move(diffs));
}

CochainComplex hom_complex(const CochainComplex& c, const CochainComplex& d) {
  const Field& F = c.field();
  if (F != d.field()) fail_input("hom complex over different fields");
  if (c.empty() || d.empty()) return CochainComplex(F);

  int nlo = d.lo() - c.hi(), nhi = d.hi() - c.lo();
  // Block offsets per degree n: for each source degree i ascending, a block of
  // size dim(c^i) * dim(d^{i+n}) in column-major layout.
  auto degree_dim = [&](int n) {
    long t = 0;
    for (int i = c.lo(); i <= c.hi(); ++i) t += static_cast<long>(c.dim(i)) * d.dim(i + n);
    return t;
  };
  auto block_offset = [&](int n, int i) {
    long t = 0;
    for (int k = c.lo(); k < i; ++k) t += static_cast<long>(c.dim(k)) * d.dim(k + n);
    return t;
  };

  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int n = nlo; n <= nhi; ++n) dims.push_back(static_cast<int>(degree_dim(n)));
  for (int n = nlo; n < nhi; ++n) {
    Matrix m(F, static_cast<int>(degree_dim(n + 1)), static_cast<int>(degree_dim(n)));
    bool flip = n % 2 != 0;  // -(-1)^n
    for (int i = c.lo(); i <= c.hi(); ++i) {
      int sc = c.dim(i), tc = d.dim(i + n);
      if (sc == 0 || tc == 0) continue;
      long col0 = block_offset(n, i);
      // post-composition with d_d lands in the block at the same source degree i
      if (d.dim(i + n + 1) > 0) {
        Matrix blk = Matrix::kron(Matrix::identity(F, sc), d.diff(i + n));
        m.set_block(static_cast<int>(block_offset(n + 1, i)), static_cast<int>(col0), blk);
      }
      // pre-composition with d_c comes from the block at source degree i-1
      if (i > c.lo() && c.dim(i - 1) > 0 && tc > 0) {
        Matrix blk = Matrix::kron(c.diff(i - 1).transpose(), Matrix::identity(F, tc));
        if (!flip) blk = blk.neg();
        m.set_block(static_cast<int>(block_offset(n + 1, i - 1)), static_cast<int>(col0), blk);
      }
    }
    diffs.push_back(std::move(m));
  }
  return CochainComplex(F, nlo, std::move(dims), std::move(diffs));
}

int chain_maps_mod_homotopy_dim(const CochainComplex& c, const CochainComplex& d) {
  const Field& F = c.field();
  if (c.empty() || d.empty()) return 0;

  // Unknowns f_i: c^i -> d^i, one block per degree, column-major.
  auto f_dim = [&](int i) { return static_cast<long>(c.dim(i)) * d.dim(i); };
  int ilo = std::min(c.lo(), d.lo()), ihi = std::max(c.hi(), d.hi());
  long nf = 0;
  std::map<int, long> f_off;
  for (int i = ilo; i <= ihi; ++i) {
    f_off[i] = nf;
    nf += f_dim(i);
  }

  long nrows = 0;
  std::map<int, long> r_off;
  for (int i = ilo; i <= ihi; ++i) {
    r_off[i] = nrows;
    nrows += static_cast<long>(c.dim(i)) * d.dim(i + 1);
  }

  Matrix C(F, static_cast<int>(nrows), static_cast<int>(nf));
  for (int i = ilo; i <= ihi; ++i) {
    if (c.dim(i) == 0 || d.dim(i + 1) == 0) continue;
    if (d.dim(i) > 0)
      C.set_block(static_cast<int>(r_off[i]), static_cast<int>(f_off[i]),
                  Matrix::kron(Matrix::identity(F, c.dim(i)), d.diff(i)));
    if (i + 1 <= ihi && d.dim(i + 1) > 0 && c.dim(i + 1) > 0)
      C.set_block(static_cast<int>(r_off[i]), static_cast<int>(f_off[i + 1]),
                  Matrix::kron(c.diff(i).transpose(), Matrix::identity(F, d.dim(i + 1))).neg());
  }
  long chain_maps = nf - rank(C);

  // Homotopies h_i: c^i -> d^{i-1}; boundary h ↦ d∘h + h∘d into the f-blocks.
  long nh = 0;
  std::map<int, long> h_off;
  for (int i = ilo; i <= ihi + 1; ++i) {
    h_off[i] = nh;
    nh += static_cast<long>(c.dim(i)) * d.dim(i - 1);
  }
  Matrix H(F, static_cast<int>(nf), static_cast<int>(nh));
  for (int i = ilo; i <= ihi; ++i) {
    if (c.dim(i) == 0 || d.dim(i) == 0) continue;
    if (d.dim(i - 1) > 0)
      H.set_block(static_cast<int>(f_off[i]), static_cast<int>(h_off[i]),
                  Matrix::kron(Matrix::identity(F, c.dim(i)), d.diff(i - 1)));
    if (c.dim(i + 1) > 0)
      H.set_block(static_cast<int>(f_off[i]), static_cast<int>(h_off[i + 1]),
                  Matrix::kron(c.diff(i).transpose(), Matrix::identity(F, d.dim(i))));
  }
  // The boundary image lies inside the chain-map solution space; its rank is the
  // dimension of null-homotopic maps.
  return static_cast<int>(chain_maps - rank(H));
}

CochainComplex koszul(const CommAlgebra& B, const std::vector<DenseVec>& elems) {
  const Field& F = B.field;
  int r = static_cast<int>(elems.size());
  int b = B.dim;
  std::vector<Matrix> mult;
  for (const DenseVec& e : elems) {
    if (static_cast<int>(e.size()) != b) fail_input("element coordinates have wrong length");
    mult.push_back(B.mult_operator(e));
  }

  // Subsets of {0..r-1} of size j, lexicographically ordered.
  std::vector<std::vector<std::vector<int>>> subsets(static_cast<size_t>(r) + 1);
  std::vector<int> cur;
  auto gen = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      subsets[cur.size()].push_back(cur);
      return;
    }
    for (int v = start; v <= r - remaining; ++v) {
      cur.push_back(v);
      self(self, v + 1, remaining - 1);
      cur.pop_back();
    }
  };
  for (int j = 0; j <= r; ++j) gen(gen, 0, j);

  std::vector<std::map<std::vector<int>, int>> index(static_cast<size_t>(r) + 1);
  for (int j = 0; j <= r; ++j)
    for (size_t s = 0; s < subsets[static_cast<size_t>(j)].size(); ++s)
      index[static_cast<size_t>(j)][subsets[static_cast<size_t>(j)][s]] = static_cast<int>(s);

  std::vector<int> dims;
  for (int deg = -r; deg <= 0; ++deg) {
    int j = -deg;
    dims.push_back(static_cast<int>(subsets[static_cast<size_t>(j)].size()) * b);
  }
  std::vector<Matrix> diffs;
  for (int deg = -r; deg < 0; ++deg) {
    int j = -deg;  // source exterior degree
    Matrix m(F, static_cast<int>(subsets[static_cast<size_t>(j) - 1].size()) * b,
             static_cast<int>(subsets[static_cast<size_t>(j)].size()) * b);
    for (size_t s = 0; s < subsets[static_cast<size_t>(j)].size(); ++s) {
      const std::vector<int>& S = subsets[static_cast<size_t>(j)][s];
      for (size_t t = 0; t < S.size(); ++t) {
        std::vector<int> T = S;
        T.erase(T.begin() + static_cast<long>(t));
        int tgt = index[static_cast<size_t>(j) - 1][T];
        Matrix blk = mult[static_cast<size_t>(S[t])];
        if (t % 2 == 1) blk = blk.neg();  // sign (−1)^{t+1} with t counted from 1
        m.set_block(tgt * b, static_cast<int>(s) * b, blk);
      }
    }
    diffs.push_back(std::move(m));
  }
  return CochainComplex(F, -r, std::move(dims), std::move(diffs));
}

std::map<int, int> periodic_unfold(const CochainComplex& c, int n_min, int n_max) {
  if (c.empty() || c.hi() != c.lo() + 1)
    fail_input("periodic unfold needs a complex supported in exactly two adjacent degrees");
  if (n_min > n_max) fail_input("empty degree window");
  Matrix m = c.diff(c.lo());
  int r = rank(m);
  int coker = c.dim(c.hi()) - r;
  int ker = c.dim(c.lo()) - r;
  std::map<int, int> out;
  for (int n = n_min; n <= n_max; ++n) out[n] = (n % 2 == 0) ? coker : ker;
  return out;
}

}  // namespace singhh
