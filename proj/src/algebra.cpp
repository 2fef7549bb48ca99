#include "singhh/algebra.hpp"

#include <fstream>
#include <sstream>

#include "singhh/errors.hpp"

namespace singhh {

Algebra::Algebra(const Field& F, std::vector<std::string> labels,
                 std::vector<std::vector<SparseVec>> table, DenseVec unit, std::string name)
    : field_(F),
      dim_(static_cast<int>(labels.size())),
      name_(std::move(name)),
      labels_(std::move(labels)),
      table_(std::move(table)),
      unit_(std::move(unit)) {
  if (static_cast<int>(table_.size()) != dim_) fail_input("structure table has wrong row count");
  for (auto& row : table_) {
    if (static_cast<int>(row.size()) != dim_) fail_input("structure table has wrong column count");
    for (auto& cell : row) {
      for (auto& [k, c] : cell) {
        if (k < 0 || k >= dim_) fail_input("structure constant index out of range");
        c = field_.reduce(c);
      }
    }
  }
  if (static_cast<int>(unit_.size()) != dim_) fail_input("unit vector has wrong length");
  for (auto& c : unit_) c = field_.reduce(c);
  validate();
}

const SparseVec& Algebra::table(int i, int j) const {
  if (i < 0 || i >= dim_ || j < 0 || j >= dim_) fail_input("basis index out of range");
  return table_[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

DenseVec Algebra::mul(const DenseVec& a, const DenseVec& b) const {
  if (static_cast<int>(a.size()) != dim_ || static_cast<int>(b.size()) != dim_)
    fail_input("element vector has wrong length");
  DenseVec out(static_cast<size_t>(dim_), Scalar(0));
  for (int i = 0; i < dim_; ++i) {
    if (field_.is_zero(a[static_cast<size_t>(i)])) continue;
    for (int j = 0; j < dim_; ++j) {
      if (field_.is_zero(b[static_cast<size_t>(j)])) continue;
      Scalar c = field_.mul(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]);
      for (const auto& [k, x] : table_[static_cast<size_t>(i)][static_cast<size_t>(j)])
        out[static_cast<size_t>(k)] = field_.add(out[static_cast<size_t>(k)], field_.mul(c, x));
    }
  }
  return out;
}

Matrix Algebra::left_mult(const DenseVec& a) const {
  Matrix m(field_, dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (field_.is_zero(a[static_cast<size_t>(i)])) continue;
    for (int j = 0; j < dim_; ++j)
      for (const auto& [k, x] : table_[static_cast<size_t>(i)][static_cast<size_t>(j)])
        m.set(k, j, field_.add(m.get(k, j), field_.mul(a[static_cast<size_t>(i)], x)));
  }
  return m;
}

Matrix Algebra::right_mult(const DenseVec& a) const {
  Matrix m(field_, dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    if (field_.is_zero(a[static_cast<size_t>(j)])) continue;
    for (int i = 0; i < dim_; ++i)
      for (const auto& [k, x] : table_[static_cast<size_t>(i)][static_cast<size_t>(j)])
        m.set(k, i, field_.add(m.get(k, i), field_.mul(a[static_cast<size_t>(j)], x)));
  }
  return m;
}

Matrix Algebra::left_mult_basis(int i) const {
  DenseVec e(static_cast<size_t>(dim_), Scalar(0));
  e[static_cast<size_t>(i)] = field_.one();
  return left_mult(e);
}

Matrix Algebra::right_mult_basis(int i) const {
  DenseVec e(static_cast<size_t>(dim_), Scalar(0));
  e[static_cast<size_t>(i)] = field_.one();
  return right_mult(e);
}

void Algebra::validate() const {
  DenseVec ei(static_cast<size_t>(dim_), Scalar(0));
  for (int i = 0; i < dim_; ++i) {
    std::fill(ei.begin(), ei.end(), Scalar(0));
    ei[static_cast<size_t>(i)] = field_.one();
    DenseVec ue = mul(unit_, ei), eu = mul(ei, unit_);
    for (int k = 0; k < dim_; ++k) {
      bool want = k == i;
      if (!field_.equal(ue[static_cast<size_t>(k)], want ? field_.one() : field_.zero()) ||
          !field_.equal(eu[static_cast<size_t>(k)], want ? field_.one() : field_.zero()))
        fail_input("unit axiom fails at basis element " + std::to_string(i));
    }
  }

  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        // (b_i b_j) b_k vs b_i (b_j b_k)
        DenseVec lhs(static_cast<size_t>(dim_), Scalar(0)), rhs(static_cast<size_t>(dim_), Scalar(0));
        for (const auto& [m, c] : table_[static_cast<size_t>(i)][static_cast<size_t>(j)])
          for (const auto& [n, x] : table_[static_cast<size_t>(m)][static_cast<size_t>(k)])
            lhs[static_cast<size_t>(n)] = field_.add(lhs[static_cast<size_t>(n)], field_.mul(c, x));
        for (const auto& [m, c] : table_[static_cast<size_t>(j)][static_cast<size_t>(k)])
          for (const auto& [n, x] : table_[static_cast<size_t>(i)][static_cast<size_t>(m)])
            rhs[static_cast<size_t>(n)] = field_.add(rhs[static_cast<size_t>(n)], field_.mul(c, x));
        for (int n = 0; n < dim_; ++n)
          if (!field_.equal(lhs[static_cast<size_t>(n)], rhs[static_cast<size_t>(n)]))
            fail_input("associativity fails at basis triple (" + std::to_string(i) + ", " +
                       std::to_string(j) + ", " + std::to_string(k) + ")");
      }
}

Algebra Algebra::from_commutative(const CommAlgebra& A, std::string name) {
  std::vector<std::string> labels;
  for (const Exps& m : A.basis) {
    MultiPoly p = MultiPoly::monomial(A.field, m, A.field.one());
    labels.push_back(p.to_string(A.var_names));
  }
  DenseVec unit(static_cast<size_t>(A.dim), Scalar(0));
  if (A.dim > 0) unit[0] = A.field.one();  // staircase basis always starts with 1
  return Algebra(A.field, std::move(labels), A.table, std::move(unit), std::move(name));
}

Algebra Algebra::enveloping(const Algebra& A) {
  int d = A.dim();
  const Field& F = A.field();
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      labels.push_back(A.labels()[static_cast<size_t>(i)] + "(x)" + A.labels()[static_cast<size_t>(j)]);

  std::vector<std::vector<SparseVec>> table(static_cast<size_t>(d) * d,
                                            std::vector<SparseVec>(static_cast<size_t>(d) * d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          // (b_i (x) b_j) * (b_k (x) b_l) = b_i b_k (x) b_l b_j
          SparseVec out;
          for (const auto& [m, c] : A.table(i, k))
            for (const auto& [n, x] : A.table(l, j))
              out.emplace_back(pair_index(m, n, d), F.mul(c, x));
          std::sort(out.begin(), out.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
          SparseVec merged;
          for (auto& [idx, c] : out) {
            if (!merged.empty() && merged.back().first == idx)
              merged.back().second = F.add(merged.back().second, c);
            else
              merged.emplace_back(idx, c);
          }
          SparseVec cleaned;
          for (auto& [idx, c] : merged)
            if (!F.is_zero(c)) cleaned.emplace_back(idx, c);
          table[static_cast<size_t>(pair_index(i, j, d))][static_cast<size_t>(pair_index(k, l, d))] =
              std::move(cleaned);
        }

  DenseVec unit(static_cast<size_t>(d) * d, Scalar(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Scalar c = F.mul(A.unit()[static_cast<size_t>(i)], A.unit()[static_cast<size_t>(j)]);
      if (!F.is_zero(c)) unit[static_cast<size_t>(pair_index(i, j, d))] = c;
    }
  return Algebra(F, std::move(labels), std::move(table), std::move(unit),
                 A.name().empty() ? "" : A.name() + "_env");
}

bool Algebra::is_commutative() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      const SparseVec &a = table_[static_cast<size_t>(i)][static_cast<size_t>(j)],
                      &b = table_[static_cast<size_t>(j)][static_cast<size_t>(i)];
      if (a.size() != b.size()) return false;
      for (size_t k = 0; k < a.size(); ++k)
        if (a[k].first != b[k].first || !field_.equal(a[k].second, b[k].second)) return false;
    }
  return true;
}

std::vector<DenseVec> Algebra::center_basis() const {
  // z central iff z b_j = b_j z for all j; rows indexed by (j, coordinate).
  std::vector<DenseVec> rows;
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k) {
      DenseVec row(static_cast<size_t>(dim_), Scalar(0));
      for (int i = 0; i < dim_; ++i) {
        Scalar v(0);
        for (const auto& [m, c] : table_[static_cast<size_t>(i)][static_cast<size_t>(j)])
          if (m == k) v = field_.add(v, c);
        for (const auto& [m, c] : table_[static_cast<size_t>(j)][static_cast<size_t>(i)])
          if (m == k) v = field_.sub(v, c);
        row[static_cast<size_t>(i)] = v;
      }
      rows.push_back(std::move(row));
    }
  auto rk = rank_and_kernel(Matrix::from_rows(field_, rows));
  return rk.kernel;
}

int Algebra::derivation_dim() const {
  // Unknown matrix D, column-major entries D[(k, i)] at index i * dim + k.
  std::vector<DenseVec> rows;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int n = 0; n < dim_; ++n) {
        DenseVec row(static_cast<size_t>(dim_) * dim_, Scalar(0));
        auto at = [&](int k, int col) -> Scalar& { return row[static_cast<size_t>(col) * dim_ + k]; };
        // coordinate n of  D(b_i b_j) - D(b_i) b_j - b_i D(b_j) = 0
        for (const auto& [m, c] : table_[static_cast<size_t>(i)][static_cast<size_t>(j)])
          at(n, m) = field_.add(at(n, m), c);
        for (int k = 0; k < dim_; ++k) {
          for (const auto& [m, c] : table_[static_cast<size_t>(k)][static_cast<size_t>(j)])
            if (m == n) at(k, i) = field_.sub(at(k, i), c);
          for (const auto& [m, c] : table_[static_cast<size_t>(i)][static_cast<size_t>(k)])
            if (m == n) at(k, j) = field_.sub(at(k, j), c);
        }
        rows.push_back(std::move(row));
      }
  auto rk = rank_and_kernel(Matrix::from_rows(field_, rows));
  return static_cast<int>(rk.kernel.size());
}

int Algebra::inner_derivation_dim() const {
  return dim_ - static_cast<int>(center_basis().size());
}

void Algebra::write(std::ostream& os) const {
  os << "algebra " << (name_.empty() ? "unnamed" : name_) << "\n";
  if (field_.kind() == FieldKind::Rationals)
    os << "field rationals\n";
  else
    os << "field gf " << field_.characteristic() << "\n";
  os << "dim " << dim_ << "\n";
  os << "labels";
  for (const std::string& l : labels_) os << " " << l;
  os << "\nunit";
  for (const Scalar& c : unit_) os << " " << field_.to_string(c);
  os << "\ntable\n";
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (const auto& [k, c] : table_[static_cast<size_t>(i)][static_cast<size_t>(j)])
        os << i << " " << j << " " << k << " " << field_.to_string(c) << "\n";
  os << "end\n";
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

}  // namespace

Algebra Algebra::read(std::istream& is) {
  std::string name;
  Field F = Field::rationals();
  bool have_field = false;
  int dim = -1;
  std::vector<std::string> labels;
  DenseVec unit;
  std::vector<std::vector<SparseVec>> table;
  bool in_table = false, done = false;

  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto where = [&]() { return " (line " + std::to_string(lineno) + ")"; };
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;

    if (in_table) {
      if (tok[0] == "end") {
        done = true;
        break;
      }
      if (tok.size() != 4) fail_input("expected 'i j k coeff' in table" + where());
      int i = std::stoi(tok[0]), j = std::stoi(tok[1]), k = std::stoi(tok[2]);
      if (i < 0 || i >= dim || j < 0 || j >= dim || k < 0 || k >= dim)
        fail_input("structure constant index out of range" + where());
      table[static_cast<size_t>(i)][static_cast<size_t>(j)].emplace_back(k, F.parse(tok[3]));
      continue;
    }

    if (tok[0] == "algebra" && tok.size() >= 2) {
      name = tok[1];
    } else if (tok[0] == "field") {
      if (tok.size() == 2 && tok[1] == "rationals") {
        F = Field::rationals();
      } else if (tok.size() == 3 && tok[1] == "gf") {
        F = Field::prime(std::stoul(tok[2]));
      } else {
        fail_input("bad field line" + where());
      }
      have_field = true;
    } else if (tok[0] == "dim" && tok.size() == 2) {
      dim = std::stoi(tok[1]);
      if (dim < 0) fail_input("negative dimension" + where());
      table.assign(static_cast<size_t>(dim), std::vector<SparseVec>(static_cast<size_t>(dim)));
    } else if (tok[0] == "labels") {
      labels.assign(tok.begin() + 1, tok.end());
    } else if (tok[0] == "unit") {
      if (dim < 0) fail_input("unit before dim" + where());
      if (static_cast<int>(tok.size()) != dim + 1) fail_input("unit has wrong length" + where());
      unit.clear();
      for (int k = 0; k < dim; ++k) unit.push_back(F.parse(tok[static_cast<size_t>(k) + 1]));
    } else if (tok[0] == "table") {
      if (dim < 0) fail_input("table before dim" + where());
      in_table = true;
    } else {
      fail_input("unrecognized line in algebra file" + where());
    }
  }
  if (!done) fail_input("algebra file ended before 'end'");
  if (!have_field) fail_input("algebra file lacks a field line");
  if (dim < 0) fail_input("algebra file lacks a dim line");
  if (unit.empty() && dim > 0) fail_input("algebra file lacks a unit line");
  if (labels.empty())
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
  if (static_cast<int>(labels.size()) != dim) fail_input("label count does not match dim");
  for (auto& row : table)
    for (auto& cell : row)
      std::sort(cell.begin(), cell.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
  return Algebra(F, std::move(labels), std::move(table), std::move(unit), std::move(name));
}

Algebra Algebra::read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail_io("cannot open algebra file '" + path + "'");
  return read(is);
}

}  // namespace singhh
