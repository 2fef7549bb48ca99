#include "singhh/mfactor.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "singhh/errors.hpp"
#include "singhh/groebner.hpp"

namespace singhh {

namespace {

using PolyMat = std::vector<std::vector<MultiPoly>>;

PolyMat pm_zero(const Field& F, int nvars, int rows, int cols) {
  return PolyMat(static_cast<size_t>(rows),
                 std::vector<MultiPoly>(static_cast<size_t>(cols), MultiPoly(F, nvars)));
}

PolyMat pm_mul(const PolyMat& A, const PolyMat& B) {
  size_t rows = A.size(), mid = B.size(), cols = B[0].size();
  PolyMat out = pm_zero(A[0][0].field(), A[0][0].nvars(), static_cast<int>(rows),
                        static_cast<int>(cols));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < mid; ++k)
      for (size_t j = 0; j < cols; ++j)
        out[i][j] = out[i][j].add(A[i][k].mul(B[k][j]));
  return out;
}

PolyMat pm_add(const PolyMat& A, const PolyMat& B) {
  PolyMat out = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) out[i][j] = A[i][j].add(B[i][j]);
  return out;
}

PolyMat pm_sub(const PolyMat& A, const PolyMat& B) {
  PolyMat out = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) out[i][j] = A[i][j].sub(B[i][j]);
  return out;
}

// ---- free module elements under the position over term order ----
// An element of R^N is one polynomial per position. Terms compare by position
// first (earlier positions dominate), then by the monomial order, so a basis
// of the span doubles as an elimination basis for leading block positions.

using ModVec = std::vector<MultiPoly>;

struct ModLead {
  int pos;
  Exps exps;
  Scalar coeff;
};

bool mod_is_zero(const ModVec& v) {
  for (const MultiPoly& p : v)
    if (!p.is_zero()) return false;
  return true;
}

ModLead mod_lead(const ModVec& v, const MonomialOrder& ord) {
  for (size_t p = 0; p < v.size(); ++p)
    if (!v[p].is_zero()) {
      auto [m, c] = v[p].leading_term(ord);
      return {static_cast<int>(p), m, c};
    }
  fail_math("zero vector has no leading term");
}

ModVec mod_sub(const ModVec& a, const ModVec& b) {
  ModVec out = a;
  for (size_t p = 0; p < a.size(); ++p) out[p] = a[p].sub(b[p]);
  return out;
}

ModVec mod_mul_term(const ModVec& v, const Exps& e, const Scalar& c) {
  ModVec out = v;
  for (size_t p = 0; p < v.size(); ++p) out[p] = v[p].mul_term(e, c);
  return out;
}

ModVec mod_make_monic(const ModVec& v, const MonomialOrder& ord) {
  ModLead l = mod_lead(v, ord);
  Scalar inv = v[0].field().inv(l.coeff);
  ModVec out = v;
  for (size_t p = 0; p < v.size(); ++p) out[p] = v[p].scale(inv);
  return out;
}

ModVec mod_reduce_full(const ModVec& f, const std::vector<ModVec>& gens,
                       const MonomialOrder& ord) {
  const Field& F = f[0].field();
  std::vector<ModLead> leads;
  leads.reserve(gens.size());
  for (const ModVec& g : gens) leads.push_back(mod_lead(g, ord));

  ModVec h = f;
  ModVec rem(f.size(), MultiPoly(F, f[0].nvars()));
  while (!mod_is_zero(h)) {
    ModLead t = mod_lead(h, ord);
    bool reduced = false;
    for (size_t k = 0; k < gens.size(); ++k) {
      if (leads[k].pos == t.pos && exps_divides(leads[k].exps, t.exps)) {
        Scalar factor = F.div(t.coeff, leads[k].coeff);
        h = mod_sub(h, mod_mul_term(gens[k], exps_quot(t.exps, leads[k].exps), factor));
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      MultiPoly m = MultiPoly::monomial(F, t.exps, t.coeff);
      size_t p = static_cast<size_t>(t.pos);
      rem[p] = rem[p].add(m);
      h[p] = h[p].sub(m);
    }
  }
  return rem;
}

ModVec mod_s_vector(const ModVec& f, const ModVec& g, const MonomialOrder& ord) {
  const Field& F = f[0].field();
  ModLead lf = mod_lead(f, ord), lg = mod_lead(g, ord);
  Exps l = exps_lcm(lf.exps, lg.exps);
  ModVec a = mod_mul_term(f, exps_quot(l, lf.exps), F.inv(lf.coeff));
  ModVec b = mod_mul_term(g, exps_quot(l, lg.exps), F.inv(lg.coeff));
  return mod_sub(a, b);
}

struct ModPair {
  int i, j;  // i < j, equal leading positions
  Exps lcm;
  unsigned deg;
};

// Buchberger over a free module. Pairs only form between elements leading in
// the same position. The coprime shortcut is skipped on purpose: it is a ring
// fact, and a trailing position can survive an s-vector with coprime leads.
std::vector<ModVec> module_groebner(const std::vector<ModVec>& input,
                                    const MonomialOrder& ord) {
  std::vector<ModVec> basis;
  for (const ModVec& v : input)
    if (!mod_is_zero(v)) basis.push_back(mod_make_monic(v, ord));
  if (basis.empty()) return basis;

  auto lead = [&](int i) { return mod_lead(basis[static_cast<size_t>(i)], ord); };

  std::set<std::pair<int, int>> pending;
  std::vector<ModPair> queue;
  auto push_pairs_with = [&](int j) {
    for (int i = 0; i < j; ++i) {
      ModLead li = lead(i), lj = lead(j);
      if (li.pos != lj.pos) continue;
      Exps l = exps_lcm(li.exps, lj.exps);
      queue.push_back({i, j, l, exps_degree(l)});
      pending.insert({i, j});
    }
  };
  for (int j = 1; j < static_cast<int>(basis.size()); ++j) push_pairs_with(j);

  auto pick = [&]() {
    size_t best = 0;
    for (size_t k = 1; k < queue.size(); ++k) {
      const ModPair &a = queue[k], &b = queue[best];
      int c = a.deg != b.deg ? (a.deg < b.deg ? -1 : 1) : ord.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && (a.i < b.i || (a.i == b.i && a.j < b.j)))) best = k;
    }
    ModPair p = queue[best];
    queue.erase(queue.begin() + static_cast<long>(best));
    pending.erase({p.i, p.j});
    return p;
  };

  while (!queue.empty()) {
    ModPair p = pick();

    // Chain criterion, position aware: a third element leading in the same
    // position whose lead divides the lcm and whose two pairs are both done.
    bool redundant = false;
    int ppos = lead(p.i).pos;
    for (int k = 0; k < static_cast<int>(basis.size()) && !redundant; ++k) {
      if (k == p.i || k == p.j) continue;
      ModLead lk = lead(k);
      if (lk.pos != ppos || !exps_divides(lk.exps, p.lcm)) continue;
      auto key = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (pending.count(key(p.i, k)) == 0 && pending.count(key(p.j, k)) == 0) redundant = true;
    }
    if (redundant) continue;

    ModVec r = mod_reduce_full(
        mod_s_vector(basis[static_cast<size_t>(p.i)], basis[static_cast<size_t>(p.j)], ord),
        basis, ord);
    if (mod_is_zero(r)) continue;
    basis.push_back(mod_make_monic(r, ord));
    push_pairs_with(static_cast<int>(basis.size()) - 1);
  }

  // Minimalize, then interreduce.
  std::vector<ModVec> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    ModLead li = mod_lead(basis[i], ord);
    bool drop = false;
    for (size_t j = 0; j < basis.size() && !drop; ++j) {
      if (i == j) continue;
      ModLead lj = mod_lead(basis[j], ord);
      if (lj.pos != li.pos || !exps_divides(lj.exps, li.exps)) continue;
      if (lj.exps != li.exps || j < i) drop = true;
    }
    if (!drop) minimal.push_back(basis[i]);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < minimal.size(); ++i) {
      std::vector<ModVec> others;
      for (size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      ModVec r = others.empty() ? minimal[i] : mod_reduce_full(minimal[i], others, ord);
      if (mod_is_zero(r)) {
        minimal.erase(minimal.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
      r = mod_make_monic(r, ord);
      bool same = true;
      for (size_t p = 0; p < r.size() && same; ++p) same = r[p].equal(minimal[i][p]);
      if (!same) {
        minimal[i] = r;
        changed = true;
        break;
      }
    }
  }

  std::sort(minimal.begin(), minimal.end(), [&](const ModVec& a, const ModVec& b) {
    ModLead la = mod_lead(a, ord), lb = mod_lead(b, ord);
    if (la.pos != lb.pos) return la.pos < lb.pos;
    return ord.greater(la.exps, lb.exps);
  });
  return minimal;
}

// Generators of {a in R^p : sum_i a_i K_i lies in the span of C}, with K and C
// inside R^m. Computed from a basis of the graph module in R^(m+p): block
// positions come first, so elements with vanishing first block cut out exactly
// the wanted relations, and their tails form a basis of the relation module.
std::vector<ModVec> preimage_relations(const std::vector<ModVec>& K,
                                       const std::vector<ModVec>& C, int m,
                                       const MonomialOrder& ord, const Field& F,
                                       int nvars) {
  int p = static_cast<int>(K.size());
  MultiPoly zero(F, nvars);
  std::vector<ModVec> graph;
  for (int i = 0; i < p; ++i) {
    ModVec g(static_cast<size_t>(m + p), zero);
    for (int t = 0; t < m; ++t) g[static_cast<size_t>(t)] = K[static_cast<size_t>(i)][static_cast<size_t>(t)];
    g[static_cast<size_t>(m + i)] = MultiPoly::constant(F, nvars, F.one());
    graph.push_back(std::move(g));
  }
  for (const ModVec& c : C) {
    ModVec g(static_cast<size_t>(m + p), zero);
    for (int t = 0; t < m; ++t) g[static_cast<size_t>(t)] = c[static_cast<size_t>(t)];
    graph.push_back(std::move(g));
  }

  std::vector<ModVec> out;
  for (const ModVec& g : module_groebner(graph, ord)) {
    bool head_zero = true;
    for (int t = 0; t < m && head_zero; ++t) head_zero = g[static_cast<size_t>(t)].is_zero();
    if (!head_zero) continue;
    out.emplace_back(g.begin() + m, g.end());
  }
  return out;
}

// Monomial count of R^p modulo a basis of relations, summed per position;
// -1 when some position has an infinite staircase (witness_var set).
int quotient_dimension(const std::vector<ModVec>& rels, int p, const MonomialOrder& ord,
                       const Field& F, int nvars, int* witness_var) {
  std::vector<std::vector<Exps>> leads(static_cast<size_t>(p));
  for (const ModVec& r : rels) {
    ModLead l = mod_lead(r, ord);
    leads[static_cast<size_t>(l.pos)].push_back(l.exps);
  }

  int total = 0;
  for (int pos = 0; pos < p; ++pos) {
    bool unit = false;
    for (const Exps& e : leads[static_cast<size_t>(pos)])
      if (exps_degree(e) == 0) unit = true;
    if (unit) continue;  // the position is wiped out entirely

    GroebnerBasis gb;
    gb.order = ord;
    gb.field = F;
    gb.nvars = nvars;
    for (const Exps& e : leads[static_cast<size_t>(pos)])
      gb.gens.push_back(MultiPoly::monomial(F, e, F.one()));
    int w = -1;
    if (!staircase_is_finite(gb, &w)) {
      if (witness_var) *witness_var = w;
      return -1;
    }
    total += static_cast<int>(staircase_monomials(gb).size());
  }
  return total;
}

ModVec flatten_pair(const PolyMat& X, const PolyMat& Y) {
  ModVec out;
  out.reserve(2 * X.size() * X[0].size());
  for (const auto& row : X)
    for (const MultiPoly& e : row) out.push_back(e);
  for (const auto& row : Y)
    for (const MultiPoly& e : row) out.push_back(e);
  return out;
}

// Columns of a map on pairs of s x r matrices, listed in the same order the
// flattening uses, so domain coordinates and codomain coordinates agree.
template <typename Fn>
std::vector<ModVec> map_columns(const Field& F, int nvars, int s, int r, Fn&& apply) {
  std::vector<ModVec> cols;
  cols.reserve(static_cast<size_t>(2 * s * r));
  for (int slot = 0; slot < 2; ++slot)
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < r; ++j) {
        PolyMat X = pm_zero(F, nvars, s, r);
        PolyMat Y = pm_zero(F, nvars, s, r);
        (slot == 0 ? X : Y)[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            MultiPoly::constant(F, nvars, F.one());
        auto [U, V] = apply(X, Y);
        cols.push_back(flatten_pair(U, V));
      }
  return cols;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ';') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

MatrixFactorization::MatrixFactorization(std::vector<std::vector<MultiPoly>> phi,
                                         std::vector<std::vector<MultiPoly>> psi,
                                         MultiPoly potential)
    : size_(static_cast<int>(phi.size())),
      phi_(std::move(phi)),
      psi_(std::move(psi)),
      potential_(std::move(potential)) {
  if (size_ == 0) fail_input("the factorization matrices are empty");
  if (static_cast<int>(psi_.size()) != size_)
    fail_input("phi and psi have different sizes");
  for (const auto* mat : {&phi_, &psi_}) {
    for (const auto& row : *mat) {
      if (static_cast<int>(row.size()) != size_)
        fail_input("the factorization matrices are not square");
      for (const MultiPoly& e : row)
        if (e.field() != potential_.field() || e.nvars() != potential_.nvars())
          fail_input("matrix entries live in a different ring than the potential");
    }
  }

  const Field& F = potential_.field();
  MultiPoly zero(F, potential_.nvars());
  auto check_product = [&](const PolyMat& A, const PolyMat& B, const std::string& label) {
    PolyMat prod = pm_mul(A, B);
    for (int i = 0; i < size_; ++i)
      for (int j = 0; j < size_; ++j) {
        const MultiPoly& want = i == j ? potential_ : zero;
        if (!prod[static_cast<size_t>(i)][static_cast<size_t>(j)].equal(want))
          fail_input(label + " is not the potential times the identity at entry (" +
                     std::to_string(i) + ", " + std::to_string(j) + ")");
      }
  };
  check_product(phi_, psi_, "phi*psi");
  check_product(psi_, phi_, "psi*phi");
}

MatrixFactorization MatrixFactorization::shift() const {
  MatrixFactorization out(psi_, phi_, potential_);
  out.var_names_ = var_names_;
  return out;
}

MatrixFactorization MatrixFactorization::trivial(const MultiPoly& potential) {
  const Field& F = potential.field();
  MultiPoly one = MultiPoly::constant(F, potential.nvars(), F.one());
  return MatrixFactorization({{one}}, {{potential}}, potential);
}

void MatrixFactorization::write(std::ostream& os, const std::vector<std::string>& vars) const {
  if (static_cast<int>(vars.size()) != potential_.nvars())
    fail_input("variable name list has wrong length");
  os << "mf\n";
  os << "vars ";
  for (size_t i = 0; i < vars.size(); ++i) os << (i ? "," : "") << vars[i];
  os << "\n";
  if (potential_.field().kind() == FieldKind::Rationals)
    os << "field rationals\n";
  else
    os << "field gf " << potential_.field().characteristic() << "\n";
  os << "size " << size_ << "\n";
  os << "potential " << potential_.to_string(vars) << "\n";
  for (const auto* mat : {&phi_, &psi_}) {
    os << (mat == &phi_ ? "phi" : "psi") << "\n";
    for (const auto& row : *mat) {
      for (size_t j = 0; j < row.size(); ++j)
        os << (j ? " ; " : "") << row[j].to_string(vars);
      os << "\n";
    }
  }
  os << "end\n";
}

MatrixFactorization MatrixFactorization::read(std::istream& is) {
  std::vector<std::string> vars;
  Field F = Field::rationals();
  bool have_field = false, have_vars = false, seen_marker = false;
  int size = -1;
  std::optional<MultiPoly> potential;
  PolyMat phi, psi;
  // 0 header, 1 phi rows, 2 expecting psi, 3 psi rows, 4 expecting end
  int state = 0;
  bool done = false;

  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto where = [&]() { return " (line " + std::to_string(lineno) + ")"; };
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;

    if (state == 1 || state == 3) {
      PolyMat& mat = state == 1 ? phi : psi;
      std::vector<std::string> chunks = split_row(line);
      if (static_cast<int>(chunks.size()) != size)
        fail_input("matrix row has " + std::to_string(chunks.size()) + " entries, expected " +
                   std::to_string(size) + where());
      std::vector<MultiPoly> row;
      for (const std::string& c : chunks) row.push_back(MultiPoly::parse(c, vars, F));
      mat.push_back(std::move(row));
      if (static_cast<int>(mat.size()) == size) ++state;
      continue;
    }
    if (state == 2) {
      if (tok.size() == 1 && tok[0] == "psi") {
        state = 3;
        continue;
      }
      fail_input("expected 'psi'" + where());
    }
    if (state == 4) {
      if (tok.size() == 1 && tok[0] == "end") {
        done = true;
        break;
      }
      fail_input("expected 'end'" + where());
    }

    if (tok[0] == "mf") {
      seen_marker = true;
    } else if (tok[0] == "vars" && tok.size() == 2) {
      vars = parse_var_list(tok[1]);
      have_vars = true;
    } else if (tok[0] == "field") {
      if (tok.size() == 2 && tok[1] == "rationals") {
        F = Field::rationals();
      } else if (tok.size() == 3 && tok[1] == "gf") {
        F = Field::prime(std::stoul(tok[2]));
      } else {
        fail_input("bad field line" + where());
      }
      have_field = true;
    } else if (tok[0] == "size" && tok.size() == 2) {
      size = std::stoi(tok[1]);
      if (size <= 0) fail_input("size must be positive" + where());
    } else if (tok[0] == "potential") {
      if (!have_vars || !have_field) fail_input("potential before vars and field" + where());
      std::string rest = line.substr(line.find("potential") + 9);
      potential = MultiPoly::parse(rest, vars, F);
    } else if (tok[0] == "phi" && tok.size() == 1) {
      if (!seen_marker) fail_input("file does not start with 'mf'" + where());
      if (!have_vars || !have_field || size < 0 || !potential)
        fail_input("phi before vars, field, size and potential" + where());
      state = 1;
    } else {
      fail_input("unrecognized line in matrix factorization file" + where());
    }
  }
  if (!done) fail_input("matrix factorization file ended before 'end'");

  MatrixFactorization out(std::move(phi), std::move(psi), std::move(*potential));
  out.var_names_ = std::move(vars);
  return out;
}

MatrixFactorization MatrixFactorization::read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail_io("cannot open matrix factorization file '" + path + "'");
  return read(is);
}

MatrixFactorization make_mf(std::vector<std::vector<MultiPoly>> phi,
                            std::vector<std::vector<MultiPoly>> psi, MultiPoly potential) {
  return MatrixFactorization(std::move(phi), std::move(psi), std::move(potential));
}

std::pair<int, int> mf_hom_cohomology(const MatrixFactorization& E,
                                      const MatrixFactorization& F) {
  const MultiPoly& Q = E.potential();
  if (F.potential().field() != Q.field() || F.potential().nvars() != Q.nvars() ||
      !F.potential().equal(Q))
    fail_input("the factorizations have different potentials");

  const Field& K = Q.field();
  int nv = Q.nvars();
  int r = E.size(), s = F.size();
  MonomialOrder ord = MonomialOrder::grevlex();

  // Morphism complex between the two periodic twisted differentials: an even
  // pair maps the even and odd summands to themselves, an odd pair crosses.
  // The differential is the graded commutator with the structure matrices.
  auto even_diff = [&](const PolyMat& X, const PolyMat& Y) {
    return std::pair<PolyMat, PolyMat>(pm_sub(pm_mul(F.phi(), Y), pm_mul(X, E.phi())),
                                       pm_sub(pm_mul(F.psi(), X), pm_mul(Y, E.psi())));
  };
  auto odd_diff = [&](const PolyMat& X, const PolyMat& Y) {
    return std::pair<PolyMat, PolyMat>(pm_add(pm_mul(F.phi(), Y), pm_mul(X, E.psi())),
                                       pm_add(pm_mul(F.psi(), X), pm_mul(Y, E.phi())));
  };
  std::vector<ModVec> even_cols = map_columns(K, nv, s, r, even_diff);
  std::vector<ModVec> odd_cols = map_columns(K, nv, s, r, odd_diff);
  int m = 2 * s * r;

  // Cocycles modulo coboundaries: kernel generators of one differential,
  // presented by their relations together with the other differential's image.
  auto cohomology_dim = [&](const std::vector<ModVec>& d, const std::vector<ModVec>& d_prev) {
    std::vector<ModVec> kernel = preimage_relations(d, {}, m, ord, K, nv);
    std::vector<ModVec> rels =
        preimage_relations(kernel, d_prev, m, ord, K, nv);
    int w = -1;
    int dim = quotient_dimension(rels, static_cast<int>(kernel.size()), ord, K, nv, &w);
    if (dim < 0)
      fail_math(
          "the morphism complex has infinite dimensional cohomology: the critical locus of "
          "the potential is not isolated (unbounded along variable index " +
          std::to_string(w) + ")");
    return dim;
  };
  return {cohomology_dim(even_cols, odd_cols), cohomology_dim(odd_cols, even_cols)};
}

}  // namespace singhh
