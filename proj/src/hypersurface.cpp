#include "singhh/hypersurface.hpp"

#include <utility>

#include "singhh/errors.hpp"

namespace singhh {

namespace {

void check_ring(const MultiPoly& Q, const std::vector<std::string>& vars) {
  if (static_cast<int>(vars.size()) != Q.nvars())
    fail_input("variable list length does not match the polynomial");
}

bool is_zero_vec(const Field& F, const DenseVec& v) {
  for (const Scalar& c : v)
    if (!F.is_zero(c)) return false;
  return true;
}

// Quotient by the given generators; the zero ring when they generate the unit
// ideal, a Math error when the staircase is infinite.
CommAlgebra quotient_or_fail(const std::vector<MultiPoly>& gens,
                             const std::vector<std::string>& vars,
                             const MonomialOrder& order) {
  GroebnerBasis gb = groebner(gens, order);
  if (gb.gens.size() == 1 && gb.gens[0].is_constant() && !gb.gens[0].is_zero()) {
    CommAlgebra zero;
    zero.field = gb.field;
    zero.nvars = gb.nvars;
    zero.var_names = vars;
    zero.gb = std::move(gb);
    zero.dim = 0;
    zero.var_image.assign(static_cast<size_t>(zero.nvars), DenseVec{});
    return zero;
  }
  InfiniteStaircase why;
  std::optional<CommAlgebra> A = quotient_algebra(gb, vars, &why);
  if (!A)
    fail_math("non-isolated critical locus: the quotient is infinite dimensional along " +
              vars[static_cast<size_t>(why.witness_var)]);
  return std::move(*A);
}

std::vector<MultiPoly> nonzero_partials(const MultiPoly& Q) {
  if (Q.is_constant()) fail_input("the polynomial is constant and cuts out no singularity");
  std::vector<MultiPoly> gens;
  for (MultiPoly& p : jacobian(Q))
    if (!p.is_zero()) gens.push_back(std::move(p));
  if (gens.empty())
    fail_input(
        "every partial derivative vanishes; the coefficient field characteristic divides all "
        "exponents");
  return gens;
}

// Columns spanning the subspace on which every variable class is nilpotent.
// In a finite dimensional quotient this is the component supported at the
// origin: away from it some coordinate acts invertibly.
Matrix origin_core(const CommAlgebra& A) {
  if (A.dim == 0) return Matrix(A.field, 0, 0);
  if (A.nvars == 0) return Matrix::identity(A.field, A.dim);
  std::optional<Matrix> stacked;
  for (int v = 0; v < A.nvars; ++v) {
    Matrix P = A.mult_operator(A.var_image[static_cast<size_t>(v)]);
    for (int e = 1; e < A.dim; e *= 2) P = P.mul(P);  // power >= dim, kernel is stable there
    stacked = stacked ? Matrix::vstack(*stacked, P) : std::move(P);
  }
  RankKernel rk = rank_and_kernel(*stacked);
  if (rk.kernel.empty()) return Matrix(A.field, A.dim, 0);
  return Matrix::from_columns(A.field, rk.kernel);
}

// Rank of multiplication by Q restricted to the origin component; core_dim
// receives the component's dimension.
int origin_potential_rank(const CommAlgebra& M, const MultiPoly& Q, int* core_dim) {
  Matrix core = origin_core(M);
  *core_dim = core.cols();
  if (core.cols() == 0) return 0;
  Matrix moved = M.mult_operator(M.element_coords(Q)).mul(core);
  std::optional<Matrix> restricted = coordinates_in(core, moved);
  if (!restricted) fail_math("multiplication by the polynomial left the origin component");
  return rank(*restricted);
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') {
      out += '\\';
      out += ch;
    } else if (ch == '\n') {
      out += "\\n";
    } else {
      out += ch;
    }
  }
  out += '"';
  return out;
}

std::string json_int_array(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string json_string_array(const std::vector<std::string>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += json_string(v[i]);
  }
  return out + "]";
}

std::string algebra_json(const CommAlgebra& A) {
  std::vector<std::string> basis;
  basis.reserve(static_cast<size_t>(A.dim));
  for (const Exps& e : A.basis)
    basis.push_back(MultiPoly::monomial(A.field, e, A.field.one()).to_string(A.var_names));
  return "{\"dimension\": " + std::to_string(A.dim) + ", \"basis\": " + json_string_array(basis) +
         "}";
}

}  // namespace

CommAlgebra milnor_algebra(const MultiPoly& Q, const std::vector<std::string>& vars,
                           const MonomialOrder& order) {
  check_ring(Q, vars);
  return quotient_or_fail(nonzero_partials(Q), vars, order);
}

CommAlgebra tyurina_algebra(const MultiPoly& Q, const std::vector<std::string>& vars,
                            const MonomialOrder& order) {
  check_ring(Q, vars);
  std::vector<MultiPoly> gens = nonzero_partials(Q);
  gens.insert(gens.begin(), Q);
  CommAlgebra T = quotient_or_fail(gens, vars, order);
  for (int v = 0; v < T.nvars; ++v) {
    DenseVec p = T.var_image[static_cast<size_t>(v)];
    for (int k = 0; k < T.dim && !is_zero_vec(T.field, p); ++k)
      p = T.mul_coords(T.var_image[static_cast<size_t>(v)], p);
    if (!is_zero_vec(T.field, p))
      fail_input("singularity away from origin: " + vars[static_cast<size_t>(v)] +
                 " is not nilpotent in the quotient");
  }
  return T;
}

int milnor_number(const CommAlgebra& milnor) { return origin_core(milnor).cols(); }

std::map<int, int> stable_hh_dims(const MultiPoly& Q, const std::vector<std::string>& vars,
                                  int n_min, int n_max) {
  if (n_min > n_max) fail_input("the degree window is empty");
  CommAlgebra M = milnor_algebra(Q, vars);
  int mu = 0;
  int r = origin_potential_rank(M, Q, &mu);
  int even = mu - r;  // cokernel of multiplication by Q
  int odd = mu - r;   // kernel
  std::map<int, int> dims;
  for (int n = n_min; n <= n_max; ++n) dims[n] = (n % 2 == 0) ? even : odd;
  return dims;
}

std::optional<std::vector<Scalar>> quasi_homogeneous_weights(const MultiPoly& Q) {
  if (Q.is_zero()) fail_input("the zero polynomial has no weight normalization");
  Field F = Field::rationals();
  std::vector<DenseVec> rows;
  rows.reserve(Q.terms().size());
  for (const auto& [e, c] : Q.terms()) {
    DenseVec row;
    row.reserve(e.size());
    for (unsigned a : e) row.push_back(F.from_long(static_cast<long>(a)));
    rows.push_back(std::move(row));
  }
  return solve(Matrix::from_rows(F, rows), DenseVec(rows.size(), F.one()));
}

AlgebraFingerprint algebra_fingerprint(const CommAlgebra& A) {
  AlgebraFingerprint fp;
  fp.dimension = A.dim;
  if (A.dim == 0) return fp;

  // layer 0 is the whole algebra; each step multiplies by every variable class
  std::vector<int> layers{A.dim};
  std::vector<DenseVec> cur;
  for (int j = 0; j < A.dim; ++j) {
    DenseVec e(static_cast<size_t>(A.dim), A.field.zero());
    e[static_cast<size_t>(j)] = A.field.one();
    cur.push_back(std::move(e));
  }
  while (!cur.empty()) {
    std::vector<DenseVec> prods;
    prods.reserve(cur.size() * static_cast<size_t>(A.nvars));
    for (const DenseVec& c : cur)
      for (int v = 0; v < A.nvars; ++v)
        prods.push_back(A.mul_coords(A.var_image[static_cast<size_t>(v)], c));
    std::vector<DenseVec> next = image_basis(Matrix::from_columns(A.field, prods));
    if (next.size() == cur.size())
      fail_math("the ideal generated by the variables is not nilpotent");
    layers.push_back(static_cast<int>(next.size()));
    cur = std::move(next);
  }

  for (size_t i = 0; i + 1 < layers.size(); ++i) fp.hilbert.push_back(layers[i] - layers[i + 1]);
  fp.mod_square_dim = A.dim - (layers.size() > 2 ? layers[2] : 0);

  if (A.nvars == 0) {
    fp.socle_dim = A.dim;
  } else {
    Matrix stacked = A.mult_operator(A.var_image[0]);
    for (int v = 1; v < A.nvars; ++v)
      stacked = Matrix::vstack(stacked, A.mult_operator(A.var_image[static_cast<size_t>(v)]));
    fp.socle_dim = A.dim - rank(stacked);
  }
  return fp;
}

AlgebraFingerprint fingerprint(const MultiPoly& Q, const std::vector<std::string>& vars,
                               const MonomialOrder& order) {
  return algebra_fingerprint(tyurina_algebra(Q, vars, order));
}

std::string AlgebraFingerprint::to_text() const {
  return "{\"dimension\": " + std::to_string(dimension) + ", \"hilbert\": " +
         json_int_array(hilbert) + ", \"socle_dim\": " + std::to_string(socle_dim) +
         ", \"mod_square_dim\": " + std::to_string(mod_square_dim) + "}";
}

CompareReport compare_singularities(const MultiPoly& Q1, const MultiPoly& Q2,
                                    const std::vector<std::string>& vars) {
  if (Q1.field() != Q2.field()) fail_input("the polynomials have different coefficient fields");
  if (Q1.nvars() != Q2.nvars()) fail_input("the polynomials use different numbers of variables");
  check_ring(Q1, vars);
  AlgebraFingerprint a = fingerprint(Q1, vars);
  AlgebraFingerprint b = fingerprint(Q2, vars);
  bool distinct = !(a == b);
  return CompareReport{std::move(a), std::move(b), distinct};
}

std::string CompareReport::to_text() const {
  return "{\n  \"verdict\": " + json_string(verdict()) + ",\n  \"first\": " + first.to_text() +
         ",\n  \"second\": " + second.to_text() + "\n}";
}

SingularityReport singularity_report(const MultiPoly& Q, const std::vector<std::string>& vars) {
  CommAlgebra M = milnor_algebra(Q, vars);
  CommAlgebra T = tyurina_algebra(Q, vars);
  int mu = 0;
  int r = origin_potential_rank(M, Q, &mu);
  SingularityReport rep{Q,      vars, std::move(M), std::move(T), 0, 0, 0, 0,
                        std::nullopt, {}};
  rep.milnor_number = mu;
  rep.tyurina_number = rep.tyurina.dim;
  rep.stable_even_dim = mu - r;
  rep.stable_odd_dim = mu - r;
  rep.quasi_homogeneous = quasi_homogeneous_weights(Q);
  if (Q.field().kind() == FieldKind::Prime)
    rep.warnings.push_back(
        "prime coefficient field: dimension counts can differ from characteristic zero");
  return rep;
}

std::string SingularityReport::to_text() const {
  Field FQ = Field::rationals();
  std::string out = "{\n";
  out += "  \"q\": " + json_string(Q.to_string(vars)) + ",\n";
  out += "  \"vars\": " + json_string_array(vars) + ",\n";
  out += "  \"milnor_number\": " + std::to_string(milnor_number) + ",\n";
  out += "  \"tyurina_number\": " + std::to_string(tyurina_number) + ",\n";
  out += "  \"milnor_algebra\": " + algebra_json(milnor) + ",\n";
  out += "  \"tyurina_algebra\": " + algebra_json(tyurina) + ",\n";
  out += "  \"stable_even_dim\": " + std::to_string(stable_even_dim) + ",\n";
  out += "  \"stable_odd_dim\": " + std::to_string(stable_odd_dim) + ",\n";
  if (quasi_homogeneous) {
    std::vector<std::string> ws;
    for (const Scalar& w : *quasi_homogeneous) ws.push_back(FQ.to_string(w));
    out += "  \"quasi_homogeneous\": " + json_string_array(ws) + ",\n";
  } else {
    out += "  \"quasi_homogeneous\": null,\n";
  }
  out += "  \"warnings\": " + json_string_array(warnings) + "\n";
  return out + "}";
}

}  // namespace singhh
