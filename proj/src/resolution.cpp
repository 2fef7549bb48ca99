#include "singhh/resolution.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "singhh/errors.hpp"

namespace singhh {

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

int to_int(const std::string& t, const std::string& context) {
  try {
    size_t pos = 0;
    int v = std::stoi(t, &pos);
    if (pos != t.size()) fail_input("bad integer '" + t + "' in " + context);
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail_input("bad integer '" + t + "' in " + context);
  }
}

std::vector<int> tuple_digits(int t, int s, int d) {
  std::vector<int> dg(static_cast<size_t>(s));
  for (int k = s - 1; k >= 0; --k) {
    dg[static_cast<size_t>(k)] = t % d;
    t /= d;
  }
  return dg;  // dg[0] is the most significant slot
}

int digits_index(const std::vector<int>& dg, int d) {
  int idx = 0;
  for (int v : dg) idx = idx * d + v;
  return idx;
}

void add_scaled(const Field& F, std::map<int, Scalar>& acc, int key, const Scalar& v) {
  auto it = acc.find(key);
  if (it == acc.end())
    acc.emplace(key, v);
  else
    it->second = F.add(it->second, v);
}

std::string join_problems(const std::vector<std::string>& problems) {
  std::string msg;
  for (const auto& p : problems) {
    if (!msg.empty()) msg += "; ";
    msg += p;
  }
  return msg;
}

}  // namespace

int BimoduleResolution::rank(int s) const {
  if (s < 0 || s > length_) fail_input("resolution degree index out of range");
  return ranks_[static_cast<size_t>(s)];
}

const Matrix& BimoduleResolution::underlying_diff(int s) const {
  if (s < 1 || s > length_) fail_input("resolution differential index out of range");
  return underlying_[static_cast<size_t>(s - 1)];
}

const std::vector<std::pair<int, AlgElem>>& BimoduleResolution::column_entries(int s, int t) const {
  if (s < 1 || s > length_) fail_input("resolution differential index out of range");
  if (t < 0 || t >= rank(s)) fail_input("resolution generator index out of range");
  return entries_[static_cast<size_t>(s - 1)][static_cast<size_t>(t)];
}

const CochainComplex& BimoduleResolution::underlying() const { return *underlying_complex_; }

CochainComplex BimoduleResolution::augmented_complex() const {
  const Field& F = base_->field();
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int s = length_; s >= 0; --s) dims.push_back(free_dim(s));
  dims.push_back(base_->dim());
  for (int s = length_; s >= 1; --s) diffs.push_back(underlying_diff(s));
  diffs.push_back(augmentation_);
  return CochainComplex(F, -length_, std::move(dims), std::move(diffs));
}

DenseVec BimoduleResolution::free_action(int s, const AlgElem& z, const DenseVec& x) const {
  const Field& F = base_->field();
  int D = env_->dim();
  if (static_cast<int>(x.size()) != free_dim(s))
    fail_input("coordinate vector length does not match the component");
  DenseVec y(x.size(), F.zero());
  for (int t = 0; t < rank(s); ++t)
    for (int w = 0; w < D; ++w) {
      const Scalar& xv = x[static_cast<size_t>(t * D + w)];
      if (F.is_zero(xv)) continue;
      for (const auto& [zb, c] : z)
        for (const auto& [k, v] : env_->table(zb, w)) {
          size_t at = static_cast<size_t>(t * D + k);
          y[at] = F.add(y[at], F.mul(F.mul(c, v), xv));
        }
    }
  return y;
}

const Matrix& BimoduleResolution::target_action(int zbasis) const {
  if (zbasis < 0 || zbasis >= env_->dim()) fail_input("basis index out of range");
  return target_actions_[static_cast<size_t>(zbasis)];
}

DenseVec BimoduleResolution::embed_generator(int s, int t, const AlgElem& z) const {
  const Field& F = base_->field();
  int D = env_->dim();
  if (t < 0 || t >= rank(s)) fail_input("resolution generator index out of range");
  DenseVec x(static_cast<size_t>(free_dim(s)), F.zero());
  for (const auto& [zb, c] : z) x[static_cast<size_t>(t * D + zb)] = F.reduce(c);
  return x;
}

Matrix BimoduleResolution::assemble_diff(int s) const {
  const Field& F = base_->field();
  const Algebra& E = *env_;
  int D = E.dim();
  int nr = free_dim(s - 1), nc = free_dim(s);
  std::vector<std::vector<std::pair<int, Scalar>>> raw(static_cast<size_t>(nr));
  for (int t = 0; t < rank(s); ++t)
    for (const auto& [u, z] : entries_[static_cast<size_t>(s - 1)][static_cast<size_t>(t)])
      for (const auto& [zb, c] : z)
        for (int w = 0; w < D; ++w)
          for (const auto& [k, x] : E.table(w, zb))
            raw[static_cast<size_t>(u * D + k)].emplace_back(t * D + w, F.mul(c, x));
  std::vector<SparseVec> rows(static_cast<size_t>(nr));
  for (size_t i = 0; i < raw.size(); ++i) {
    auto& r = raw[i];
    std::sort(r.begin(), r.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec merged;
    for (auto& [col, val] : r) {
      if (!merged.empty() && merged.back().first == col)
        merged.back().second = F.add(merged.back().second, val);
      else
        merged.emplace_back(col, val);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [&](const auto& e) { return F.is_zero(e.second); }),
                 merged.end());
    rows[i] = std::move(merged);
  }
  return Matrix::from_sparse_rows(F, nc, std::move(rows));
}

void BimoduleResolution::build_underlying() {
  underlying_.clear();
  for (int s = 1; s <= length_; ++s) underlying_.push_back(assemble_diff(s));
  const Field& F = base_->field();
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int s = length_; s >= 0; --s) dims.push_back(free_dim(s));
  for (int s = length_; s >= 1; --s) diffs.push_back(underlying_diff(s));
  underlying_complex_ =
      std::make_shared<CochainComplex>(F, -length_, std::move(dims), std::move(diffs));
}

void BimoduleResolution::build_target_actions() {
  int d = base_->dim();
  target_actions_.clear();
  for (int i = 0; i < d; ++i) {
    Matrix li = base_->left_mult_basis(i);
    for (int j = 0; j < d; ++j) target_actions_.push_back(li.mul(base_->right_mult_basis(j)));
  }
}

std::vector<std::string> BimoduleResolution::exactness_problems() const {
  std::vector<std::string> problems;
  CochainComplex aug = augmented_complex();
  std::map<int, int> h = aug.homology_dims(-length_ + 1, 1);
  for (const auto& [deg, dim] : h)
    if (dim > 0)
      problems.push_back("augmented complex has homology of dimension " + std::to_string(dim) +
                         " at degree " + std::to_string(deg));
  return problems;
}

void BimoduleResolution::validate_exactness() const {
  std::vector<std::string> problems = exactness_problems();
  if (!problems.empty()) fail_input(join_problems(problems));
}

void BimoduleResolution::verify_bar_homotopy() const {
  const Field& F = base_->field();
  int d = base_->dim(), D = env_->dim();
  SparseVec ua = to_sparse(F, base_->unit());

  // h_{-1}: A -> P^0 sends b_i to 1 tensor b_i.
  std::vector<SparseVec> hm1rows(static_cast<size_t>(free_dim(0)));
  for (int i = 0; i < d; ++i)
    for (const auto& [c, uc] : ua)
      hm1rows[static_cast<size_t>(Algebra::pair_index(c, i, d))].emplace_back(i, uc);
  Matrix hm1 = Matrix::from_sparse_rows(F, d, std::move(hm1rows));

  if (!augmentation_.mul(hm1).equal(Matrix::identity(F, d)))
    fail_math("contracting homotopy fails the augmentation identity");

  Matrix prev = hm1;           // h_{s-1}
  Matrix into = augmentation_; // map out of the degree -s component
  for (int s = 0; s < length_; ++s) {
    // h_s prepends the unit: generator tuple T with basis pair (i,j) goes to
    // the tuple (i,T) with pair (c,j), weighted by the unit coordinates u_c.
    int pow = free_dim(s) / D;  // d^s
    std::vector<SparseVec> hrows(static_cast<size_t>(free_dim(s + 1)));
    for (int t = 0; t < rank(s); ++t)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (const auto& [c, uc] : ua) {
            int row = (i * pow + t) * D + Algebra::pair_index(c, j, d);
            hrows[static_cast<size_t>(row)].emplace_back(t * D + Algebra::pair_index(i, j, d), uc);
          }
    Matrix h = Matrix::from_sparse_rows(F, free_dim(s), std::move(hrows));
    Matrix lhs = underlying_diff(s + 1).mul(h).add(prev.mul(into));
    if (!lhs.equal(Matrix::identity(F, free_dim(s))))
      fail_math("contracting homotopy identity fails at degree " + std::to_string(-s));
    prev = std::move(h);
    into = underlying_diff(s + 1);
  }
}

BimoduleResolution BimoduleResolution::bar(const Algebra& A, int L, long budget) {
  if (L < 0) fail_input("resolution length must be nonnegative");
  const Field& F = A.field();
  int d = A.dim();
  long big = 1;
  long cap = std::min(budget, static_cast<long>(std::numeric_limits<int>::max()));
  for (int e = 0; e < L + 2; ++e) {
    if (big > cap / d)
      fail_budget("bar component dimension " + std::to_string(d) + "^" + std::to_string(L + 2) +
                  " exceeds the size budget of " + std::to_string(budget) + " entries");
    big *= d;
  }

  BimoduleResolution R;
  R.base_ = std::make_shared<Algebra>(A);
  R.env_ = std::make_shared<Algebra>(Algebra::enveloping(A));
  R.length_ = L;
  R.period_ = 0;
  R.provenance_ = Provenance::Bar;

  int pw = 1;
  for (int s = 0; s <= L; ++s) {
    R.ranks_.push_back(pw);
    if (s < L) pw *= d;
  }

  SparseVec ua = to_sparse(F, A.unit());
  AlgElem unit_env;
  for (const auto& [j, uj] : ua)
    for (const auto& [l, ul] : ua) unit_env.emplace_back(Algebra::pair_index(j, l, d), F.mul(uj, ul));

  for (int s = 1; s <= L; ++s) {
    std::vector<EntryColumn> cols;
    int r_src = R.ranks_[static_cast<size_t>(s)];
    int pow_tail = r_src / d;  // d^{s-1}
    for (int t = 0; t < r_src; ++t) {
      std::vector<int> dg = tuple_digits(t, s, d);
      std::map<int, std::map<int, Scalar>> acc;  // target copy -> env coords
      // leading slot joins the left factor
      int u_tail = t % pow_tail;
      for (const auto& [l, ul] : ua)
        add_scaled(F, acc[u_tail], Algebra::pair_index(dg[0], l, d), ul);
      // interior multiplications, alternating signs
      for (int i = 1; i <= s - 1; ++i) {
        bool negate = (i % 2 == 1);
        std::vector<int> dg2;
        for (int k = 0; k < i - 1; ++k) dg2.push_back(dg[static_cast<size_t>(k)]);
        dg2.push_back(0);  // merged slot, filled per product term
        for (int k = i + 1; k < s; ++k) dg2.push_back(dg[static_cast<size_t>(k)]);
        for (const auto& [m, c] : A.table(dg[static_cast<size_t>(i - 1)], dg[static_cast<size_t>(i)])) {
          dg2[static_cast<size_t>(i - 1)] = m;
          int u_mid = digits_index(dg2, d);
          Scalar cv = negate ? F.neg(c) : c;
          for (const auto& [zb, uz] : unit_env) add_scaled(F, acc[u_mid], zb, F.mul(cv, uz));
        }
      }
      // trailing slot joins the right factor
      int u_head = t / d;
      bool neg_head = (s % 2 == 1);
      for (const auto& [j, uj] : ua)
        add_scaled(F, acc[u_head], Algebra::pair_index(j, dg[static_cast<size_t>(s - 1)], d),
                   neg_head ? F.neg(uj) : uj);

      EntryColumn col;
      for (const auto& [u, coords] : acc) {
        AlgElem z;
        for (const auto& [zb, v] : coords)
          if (!F.is_zero(v)) z.emplace_back(zb, v);
        if (!z.empty()) col.emplace_back(u, std::move(z));
      }
      cols.push_back(std::move(col));
    }
    R.entries_.push_back(std::move(cols));
  }

  // augmentation sends the basis pair (i,j) to the product of b_i and b_j
  std::vector<SparseVec> augrows(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (const auto& [k, v] : A.table(i, j))
        augrows[static_cast<size_t>(k)].emplace_back(Algebra::pair_index(i, j, d), v);
  R.augmentation_ = Matrix::from_sparse_rows(F, R.free_dim(0), std::move(augrows));

  R.build_underlying();
  R.build_target_actions();
  R.verify_bar_homotopy();
  return R;
}

BimoduleResolution BimoduleResolution::load(std::istream& is, const Algebra& A) {
  int lineno = 0;
  auto where = [&]() { return " (line " + std::to_string(lineno) + ")"; };
  const Field& F = A.field();
  int d = A.dim();

  std::vector<std::string> tok = split_ws(next_content_line(is, lineno));
  if (tok.empty() || tok[0] != "resolution") fail_input("expected 'resolution' header" + where());

  tok = split_ws(next_content_line(is, lineno));
  if (tok.size() < 2 || tok[0] != "ranks") fail_input("expected ranks line" + where());
  std::vector<int> by_degree;
  for (size_t k = 1; k < tok.size(); ++k) {
    int r = to_int(tok[k], "ranks line" + where());
    if (r < 0) fail_input("negative rank" + where());
    by_degree.push_back(r);
  }
  int L = static_cast<int>(by_degree.size()) - 1;

  tok = split_ws(next_content_line(is, lineno));
  int period = 0;
  if (!tok.empty() && tok[0] == "period") {
    if (tok.size() != 2) fail_input("expected 'period p'" + where());
    period = to_int(tok[1], "period line" + where());
    if (period < 1) fail_input("period must be positive" + where());
    tok = split_ws(next_content_line(is, lineno));
  }
  if (tok.empty() || tok[0] != "complex") fail_input("expected 'complex' block" + where());

  // hand the block through to the complex reader
  std::string buf = "complex\n";
  std::string raw;
  bool closed = false;
  while (std::getline(is, raw)) {
    ++lineno;
    buf += raw;
    buf += "\n";
    std::string content = raw;
    size_t hash = content.find('#');
    if (hash != std::string::npos) content = content.substr(0, hash);
    std::vector<std::string> ct = split_ws(content);
    if (!ct.empty() && ct[0] == "end") {
      closed = true;
      break;
    }
  }
  if (!closed) fail_input("complex block never ends" + where());
  std::istringstream cbuf(buf);
  CochainComplex cx = [&]() {
    try {
      return CochainComplex::read(cbuf);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string("resolution complex: ") + e.what());
    }
  }();

  if (cx.empty()) fail_input("resolution complex is empty");
  if (cx.field() != F) fail_input("resolution field does not match the algebra");
  if (cx.hi() != 0)
    fail_input("resolution components must end at degree 0, found " + std::to_string(cx.hi()));
  if (cx.hi() - cx.lo() != L)
    fail_input("ranks line length does not match the complex range");

  tok = split_ws(next_content_line(is, lineno));
  if (tok.empty() || tok[0] != "augmentation") fail_input("expected augmentation block" + where());
  int D = d * d;
  int r0 = by_degree.back();
  Matrix aug(F, d, r0 * D);
  for (int i = 0; i < d; ++i) {
    tok = split_ws(next_content_line(is, lineno));
    if (static_cast<int>(tok.size()) != r0 * D)
      fail_input("augmentation row has " + std::to_string(tok.size()) + " entries, expected " +
                 std::to_string(r0 * D) + where());
    for (int j = 0; j < r0 * D; ++j) aug.set(i, j, F.parse(tok[static_cast<size_t>(j)]));
  }
  tok = split_ws(next_content_line(is, lineno));
  if (tok.empty() || tok[0] != "end") fail_input("expected 'end'" + where());

  BimoduleResolution R;
  R.base_ = std::make_shared<Algebra>(A);
  R.env_ = std::make_shared<Algebra>(Algebra::enveloping(A));
  R.length_ = L;
  R.period_ = period;
  R.provenance_ = Provenance::Loaded;
  for (int s = 0; s <= L; ++s) R.ranks_.push_back(by_degree[static_cast<size_t>(L - s)]);
  R.augmentation_ = aug;
  R.build_target_actions();

  std::vector<std::string> problems;
  for (int s = 0; s <= L; ++s)
    if (cx.dim(-s) != R.free_dim(s))
      problems.push_back("component at degree " + std::to_string(-s) + " has dimension " +
                         std::to_string(cx.dim(-s)) + ", expected rank " +
                         std::to_string(R.ranks_[static_cast<size_t>(s)]) + " times " +
                         std::to_string(D));
  if (!problems.empty()) fail_input(join_problems(problems));

  // recover the entries from generator images, then check that their linear
  // extension over the enveloping algebra reproduces the matrices
  AlgElem unit_env = to_sparse(F, R.env_->unit());
  for (int s = 1; s <= L; ++s) {
    Matrix m = cx.diff(-s);
    std::vector<EntryColumn> cols;
    for (int t = 0; t < R.ranks_[static_cast<size_t>(s)]; ++t) {
      DenseVec img = m.apply(R.embed_generator(s, t, unit_env));
      EntryColumn col;
      for (int u = 0; u < R.ranks_[static_cast<size_t>(s - 1)]; ++u) {
        AlgElem z;
        for (int w = 0; w < D; ++w) {
          const Scalar& v = img[static_cast<size_t>(u * D + w)];
          if (!F.is_zero(v)) z.emplace_back(w, v);
        }
        if (!z.empty()) col.emplace_back(u, std::move(z));
      }
      cols.push_back(std::move(col));
    }
    R.entries_.push_back(std::move(cols));
    if (!R.assemble_diff(s).equal(m))
      problems.push_back("differential at degree " + std::to_string(-s) +
                         " is not linear over the enveloping algebra");
    R.underlying_.push_back(std::move(m));
  }
  R.underlying_complex_ = std::make_shared<CochainComplex>(cx);

  for (int zb = 0; zb < D; ++zb) {
    Matrix act = Matrix::kron(Matrix::identity(F, r0), R.env_->left_mult_basis(zb));
    if (!R.augmentation_.mul(act).equal(R.target_action(zb).mul(R.augmentation_))) {
      problems.push_back("augmentation is not linear over the enveloping algebra");
      break;
    }
  }
  if (L >= 1 && !R.augmentation_.mul(R.underlying_diff(1)).is_zero())
    problems.push_back("augmentation composed with the degree -1 differential is nonzero");

  if (problems.empty()) {
    for (const std::string& p : R.exactness_problems()) problems.push_back(p);
  }

  if (period > 0) {
    if (period > L)
      problems.push_back("declared period exceeds the resolution length");
    else if (R.ranks_[static_cast<size_t>(L)] != R.ranks_[static_cast<size_t>(L - period)])
      problems.push_back("declared period does not match the free ranks");
  }

  if (!problems.empty()) fail_input(join_problems(problems));
  return R;
}

BimoduleResolution BimoduleResolution::load_file(const std::string& path, const Algebra& A) {
  std::ifstream is(path);
  if (!is) fail_io("cannot open resolution file " + path);
  return load(is, A);
}

BimoduleResolution BimoduleResolution::extend_periodic(int L) const {
  if (period_ <= 0) fail_input("resolution declares no period to extend by");
  if (L < length_) fail_input("extension target is shorter than the resolution");
  BimoduleResolution R = *this;
  R.provenance_ = Provenance::PeriodicExtended;
  for (int s = length_ + 1; s <= L; ++s) {
    R.ranks_.push_back(R.ranks_[static_cast<size_t>(s - period_)]);
    R.entries_.push_back(R.entries_[static_cast<size_t>(s - period_ - 1)]);
  }
  R.length_ = L;
  R.build_underlying();
  R.validate_exactness();
  return R;
}

BimoduleResolution BimoduleResolution::pad_contractible(int extra) const {
  if (extra < 0) fail_input("padding rank must be nonnegative");
  const Field& F = base_->field();
  BimoduleResolution R;
  R.base_ = base_;
  R.env_ = env_;
  R.length_ = length_;
  R.period_ = 0;
  R.provenance_ = Provenance::Padded;
  for (int s = 0; s <= length_; ++s)
    R.ranks_.push_back(ranks_[static_cast<size_t>(s)] + (s <= length_ - 1 ? extra : 0) +
                       (s >= 1 ? extra : 0));

  AlgElem unit_env = to_sparse(F, env_->unit());
  for (int s = 1; s <= length_; ++s) {
    std::vector<EntryColumn> cols = entries_[static_cast<size_t>(s - 1)];
    int pair_in = (s <= length_ - 1) ? extra : 0;  // columns absorbed from the pair below
    for (int c = 0; c < pair_in; ++c) cols.emplace_back();
    for (int c = 0; c < extra; ++c) {
      EntryColumn col;
      col.emplace_back(ranks_[static_cast<size_t>(s - 1)] + c, unit_env);
      cols.push_back(std::move(col));
    }
    R.entries_.push_back(std::move(cols));
  }

  Matrix aug(F, base_->dim(), R.free_dim(0));
  aug.set_block(0, 0, augmentation_);
  R.augmentation_ = std::move(aug);
  R.target_actions_ = target_actions_;
  R.build_underlying();
  R.validate_exactness();
  return R;
}

void BimoduleResolution::write(std::ostream& os) const {
  os << "resolution\n";
  os << "ranks";
  for (int s = length_; s >= 0; --s) os << " " << ranks_[static_cast<size_t>(s)];
  os << "\n";
  if (period_ > 0) os << "period " << period_ << "\n";
  underlying().write(os);
  const Field& F = base_->field();
  os << "augmentation\n";
  for (int i = 0; i < augmentation_.rows(); ++i) {
    DenseVec row = augmentation_.dense_row(i);
    for (int j = 0; j < augmentation_.cols(); ++j)
      os << (j ? " " : "") << F.to_string(row[static_cast<size_t>(j)]);
    os << "\n";
  }
  os << "end\n";
}

}  // namespace singhh
