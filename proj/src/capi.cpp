#include "singhh/singhh.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "singhh/errors.hpp"
#include "singhh/groebner.hpp"
#include "singhh/hochschild.hpp"
#include "singhh/hypersurface.hpp"
#include "singhh/linalg.hpp"
#include "singhh/mfactor.hpp"
#include "singhh/poly.hpp"
#include "singhh/resolution.hpp"
#include "singhh/tate.hpp"

using json = nlohmann::ordered_json;
using namespace singhh;

struct shh_session {
  Field field = Field::rationals();
  MonomialOrder order = MonomialOrder::grevlex();
  int depth_cap = 10;
  long budget = 50000000;
  int threads = 1;
  std::string last_error;
};

namespace {

char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

int error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input:
      return SHH_ERROR_INPUT;
    case ErrorKind::Math:
      return SHH_ERROR_MATH;
    case ErrorKind::Budget:
      return SHH_ERROR_BUDGET;
    case ErrorKind::Io:
      return SHH_ERROR_IO;
  }
  return SHH_ERROR_INTERNAL;
}

template <typename Fn>
int wrap(shh_session* s, char** out_json, Fn&& body) {
  if (!s) return SHH_ERROR_INPUT;
  if (out_json) *out_json = nullptr;
  try {
    set_thread_count(s->threads);
    json j = body();
    if (out_json) *out_json = copy_out(j.dump(2));
    s->last_error.clear();
    return SHH_OK;
  } catch (const Error& e) {
    s->last_error = e.what();
    return error_code(e.kind());
  } catch (const std::exception& e) {
    s->last_error = std::string("unexpected failure: ") + e.what();
    return SHH_ERROR_INTERNAL;
  }
}

std::string require(const char* text, const char* what) {
  if (!text) fail_input(std::string(what) + " is missing");
  return text;
}

long parse_int(const std::string& v, const char* what) {
  try {
    size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    fail_input("the " + std::string(what) + " '" + v + "' is not an integer");
  }
}

json algebra_json(const CommAlgebra& A, const std::vector<std::string>& vars) {
  json basis = json::array();
  for (const Exps& e : A.basis)
    basis.push_back(MultiPoly::monomial(A.field, e, A.field.one()).to_string(vars));
  return json{{"dimension", A.dim}, {"basis", basis}};
}

json fingerprint_json(const AlgebraFingerprint& fp) {
  return json{{"dimension", fp.dimension},
              {"hilbert", fp.hilbert},
              {"socle_dim", fp.socle_dim},
              {"mod_square_dim", fp.mod_square_dim}};
}

std::string field_name(const Field& F) {
  if (F.kind() == FieldKind::Rationals) return "rationals";
  return "gf " + std::to_string(F.characteristic());
}

struct HypInput {
  MultiPoly poly;
  std::vector<std::string> vars;
};

HypInput parse_hyp(const shh_session* s, const char* poly, const char* vars) {
  std::vector<std::string> names = parse_var_list(require(vars, "the variable list"));
  MultiPoly Q = MultiPoly::parse(require(poly, "the polynomial"), names, s->field);
  return {std::move(Q), std::move(names)};
}

json trace_json(const StabilizationTrace& t) {
  json dims = json::array();
  for (const TruncationStep& step : t.steps) dims.push_back(step.dim);
  json row{{"n", t.degree}, {"stage_dims", dims}, {"stabilized", t.stabilized}};
  if (t.stabilized) {
    row["stable_at"] = t.stable_at;
    row["value"] = t.value;
  } else {
    row["stable_at"] = nullptr;
    row["value"] = nullptr;
  }
  return row;
}

// Loads the named resolution (extending a declared period to the needed
// length) or builds a bar resolution of that length.
BimoduleResolution resolution_for(const shh_session* s, const Algebra& A,
                                  const char* resolution_path, int needed) {
  if (resolution_path) {
    BimoduleResolution res = BimoduleResolution::load_file(resolution_path, A);
    if (res.length() >= needed) return res;
    if (res.declared_period() > 0) return res.extend_periodic(needed);
    fail_input("the resolution has length " + std::to_string(res.length()) +
               " but the scan needs " + std::to_string(needed) +
               " and no period is declared");
  }
  return BimoduleResolution::bar(A, needed, s->budget);
}

int window_reach(int n_min, int n_max) {
  return std::max(std::abs(n_min), std::abs(n_max));
}

}  // namespace

extern "C" {

shh_session* shh_session_new(void) { return new shh_session; }

void shh_session_free(shh_session* s) { delete s; }

const char* shh_last_error(const shh_session* s) { return s ? s->last_error.c_str() : ""; }

void shh_string_free(char* text) { std::free(text); }

int shh_configure(shh_session* s, const char* key, const char* value) {
  return wrap(s, nullptr, [&]() -> json {
    std::string k = require(key, "the configuration key");
    std::string v = require(value, "the configuration value");
    if (k == "field") {
      if (v == "rationals") {
        s->field = Field::rationals();
      } else if (v.rfind("gf ", 0) == 0) {
        long p = parse_int(v.substr(3), "characteristic");
        if (p < 2) fail_input("the characteristic must be at least 2");
        s->field = Field::prime(static_cast<unsigned long>(p));
      } else {
        fail_input("unknown field '" + v + "'");
      }
    } else if (k == "order") {
      s->order = MonomialOrder::parse(v);
    } else if (k == "depth-cap") {
      long n = parse_int(v, "depth cap");
      if (n <= 0) fail_input("depth-cap must be positive");
      s->depth_cap = static_cast<int>(n);
    } else if (k == "budget") {
      long n = parse_int(v, "budget");
      if (n <= 0) fail_input("budget must be positive");
      s->budget = n;
    } else if (k == "threads") {
      long n = parse_int(v, "thread count");
      if (n <= 0 || n > 64) fail_input("the thread count must be between 1 and 64");
      s->threads = static_cast<int>(n);
    } else {
      fail_input("unknown configuration key '" + k + "'");
    }
    return json::object();
  });
}

int shh_milnor(shh_session* s, const char* poly, const char* vars, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    HypInput in = parse_hyp(s, poly, vars);
    CommAlgebra M = milnor_algebra(in.poly, in.vars, s->order);
    return json{{"q", in.poly.to_string(in.vars)},
                {"vars", in.vars},
                {"milnor_number", milnor_number(M)},
                {"milnor_algebra", algebra_json(M, in.vars)}};
  });
}

int shh_tyurina(shh_session* s, const char* poly, const char* vars, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    HypInput in = parse_hyp(s, poly, vars);
    CommAlgebra T = tyurina_algebra(in.poly, in.vars, s->order);
    return json{{"q", in.poly.to_string(in.vars)},
                {"vars", in.vars},
                {"tyurina_number", T.dim},
                {"tyurina_algebra", algebra_json(T, in.vars)}};
  });
}

int shh_fingerprint(shh_session* s, const char* poly, const char* vars, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    HypInput in = parse_hyp(s, poly, vars);
    AlgebraFingerprint fp = fingerprint(in.poly, in.vars, s->order);
    return json{{"q", in.poly.to_string(in.vars)},
                {"vars", in.vars},
                {"fingerprint", fingerprint_json(fp)}};
  });
}

int shh_compare(shh_session* s, const char* poly_a, const char* poly_b, const char* vars,
                char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    std::vector<std::string> names = parse_var_list(require(vars, "the variable list"));
    MultiPoly QA = MultiPoly::parse(require(poly_a, "the first polynomial"), names, s->field);
    MultiPoly QB = MultiPoly::parse(require(poly_b, "the second polynomial"), names, s->field);
    CompareReport rep = compare_singularities(QA, QB, names);
    return json{{"q_first", QA.to_string(names)},
                {"q_second", QB.to_string(names)},
                {"vars", names},
                {"first", fingerprint_json(rep.first)},
                {"second", fingerprint_json(rep.second)},
                {"verdict", rep.verdict()}};
  });
}

int shh_stable_hh(shh_session* s, const char* poly, const char* vars, int n_min, int n_max,
                  char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    HypInput in = parse_hyp(s, poly, vars);
    std::map<int, int> dims = stable_hh_dims(in.poly, in.vars, n_min, n_max);
    json table = json::object();
    for (const auto& [n, d] : dims) table[std::to_string(n)] = d;
    return json{{"q", in.poly.to_string(in.vars)},
                {"vars", in.vars},
                {"window", json::array({n_min, n_max})},
                {"dims", table}};
  });
}

int shh_hochschild(shh_session* s, const char* algebra_path, int n_max, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    Algebra A = Algebra::read_file(require(algebra_path, "the algebra path"));
    if (n_max < 0) fail_input("the degree bound is negative");
    std::map<int, int> dims = hh_dims(A, n_max, s->budget);
    json table = json::object();
    for (const auto& [n, d] : dims) table[std::to_string(n)] = d;
    return json{{"algebra", A.name()}, {"field", field_name(A.field())}, {"n_max", n_max},
                {"dims", table}};
  });
}

int shh_hochschild_sg(shh_session* s, const char* algebra_path, const char* resolution_path,
                      int n_min, int n_max, int q_max, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    Algebra A = Algebra::read_file(require(algebra_path, "the algebra path"));
    if (n_min > n_max) fail_input("the degree window is empty");
    if (q_max < 0) fail_input("the depth bound is negative");
    int needed = q_max + window_reach(n_min, n_max) + 2;
    BimoduleResolution res = resolution_for(s, A, resolution_path, needed);
    json rows = json::array();
    for (int n = n_min; n <= n_max; ++n) rows.push_back(trace_json(hhsg_dim(A, n, q_max, res)));
    return json{{"algebra", A.name()},
                {"resolution", resolution_path ? json(resolution_path) : json("bar")},
                {"length", res.length()},
                {"window", json::array({n_min, n_max})},
                {"q_max", q_max},
                {"degrees", rows}};
  });
}

int shh_hochschild_sg_product(shh_session* s, const char* algebra_path,
                              const char* resolution_path, int degree_f, int degree_g,
                              int q_max, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    Algebra A = Algebra::read_file(require(algebra_path, "the algebra path"));
    if (q_max < 0) fail_input("the depth bound is negative");
    int degree_fg = degree_f + degree_g;
    int reach = std::max({std::abs(degree_f), std::abs(degree_g), std::abs(degree_fg)});
    int needed = q_max + s->depth_cap + reach + 2;
    BimoduleResolution res = resolution_for(s, A, resolution_path, needed);

    auto stable_depth = [&](int n) {
      StabilizationTrace t = hhsg_dim(A, n, q_max, res);
      if (!t.stabilized)
        fail_math("the scan for degree " + std::to_string(n) +
                  " is inconclusive up to depth " + std::to_string(q_max));
      return t.stable_at;
    };
    HhsgGroup GF = HhsgGroup::compute(res, degree_f, stable_depth(degree_f));
    HhsgGroup GG = HhsgGroup::compute(res, degree_g, stable_depth(degree_g));
    int depth_fg = stable_depth(degree_fg);

    std::vector<SingularClass> products;
    for (const SingularClass& f : GF.basis())
      for (const SingularClass& g : GG.basis())
        products.push_back(hhsg_product(f, g, s->depth_cap));
    int depth_out = depth_fg;
    for (const SingularClass& p : products) depth_out = std::max(depth_out, p.depth());
    HhsgGroup GH = HhsgGroup::compute(res, degree_fg, depth_out);

    json rows = json::array();
    int k = 0;
    for (int i = 0; i < GF.dim(); ++i)
      for (int j = 0; j < GG.dim(); ++j) {
        DenseVec coords = GH.coordinates(products[static_cast<size_t>(k)]);
        json cs = json::array();
        for (const Scalar& c : coords) cs.push_back(A.field().to_string(c));
        rows.push_back(json{{"f", i}, {"g", j}, {"coordinates", cs}});
        ++k;
      }
    return json{{"algebra", A.name()},
                {"degree_f", degree_f},
                {"degree_g", degree_g},
                {"degree_product", degree_fg},
                {"dim_f", GF.dim()},
                {"dim_g", GG.dim()},
                {"dim_product", GH.dim()},
                {"depth_f", GF.depth()},
                {"depth_g", GG.depth()},
                {"depth_product", GH.depth()},
                {"products", rows}};
  });
}

int shh_syzygy_check(shh_session* s, const char* algebra_path, int q_max, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    Algebra A = Algebra::read_file(require(algebra_path, "the algebra path"));
    if (q_max < 0) fail_input("the depth bound is negative");
    int length = q_max + 3;
    BimoduleResolution res = BimoduleResolution::bar(A, length, s->budget);
    json rows = json::array();
    for (int q = 0; q <= q_max; ++q) {
      SyzygyReport rep = syzygy_identification_check(A, q, res);
      json hom = json::object();
      for (const auto& [deg, d] : rep.truncation_homology) hom[std::to_string(deg)] = d;
      rows.push_back(json{{"q", rep.q},
                          {"homology", hom},
                          {"syzygy_dim", rep.syzygy_dim},
                          {"concentrated", rep.concentrated},
                          {"matches", rep.matches}});
    }
    return json{{"algebra", A.name()}, {"q_max", q_max}, {"length", length}, {"checks", rows}};
  });
}

int shh_mf_hom(shh_session* s, const char* mf_path_e, const char* mf_path_f, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    MatrixFactorization E =
        MatrixFactorization::read_file(require(mf_path_e, "the first factorization path"));
    MatrixFactorization F =
        MatrixFactorization::read_file(require(mf_path_f, "the second factorization path"));
    auto [even, odd] = mf_hom_cohomology(E, F);
    return json{{"potential", E.potential().to_string(E.var_names())},
                {"vars", E.var_names()},
                {"size_e", E.size()},
                {"size_f", F.size()},
                {"even", even},
                {"odd", odd}};
  });
}

int shh_validate(shh_session* s, const char* path, const char* algebra_path, char** out_json) {
  return wrap(s, out_json, [&]() -> json {
    std::string file = require(path, "the file path");
    std::ifstream is(file);
    if (!is) fail_io("cannot open file '" + file + "'");
    std::string marker, line;
    while (std::getline(is, line)) {
      size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      std::istringstream ss(line);
      if (ss >> marker) break;
    }
    if (marker == "algebra") {
      Algebra A = Algebra::read_file(file);
      return json{{"file", file},
                  {"kind", "algebra"},
                  {"valid", true},
                  {"name", A.name()},
                  {"field", field_name(A.field())},
                  {"dimension", A.dim()}};
    }
    if (marker == "resolution") {
      if (!algebra_path)
        fail_input("a resolution file validates against an algebra; none was given");
      Algebra A = Algebra::read_file(algebra_path);
      BimoduleResolution res = BimoduleResolution::load_file(file, A);
      json ranks = json::array();
      for (int t = 0; t <= res.length(); ++t) ranks.push_back(res.rank(t));
      return json{{"file", file},
                  {"kind", "resolution"},
                  {"valid", true},
                  {"algebra", A.name()},
                  {"length", res.length()},
                  {"ranks", ranks},
                  {"period", res.declared_period()}};
    }
    if (marker == "mf") {
      MatrixFactorization E = MatrixFactorization::read_file(file);
      return json{{"file", file},
                  {"kind", "mf"},
                  {"valid", true},
                  {"vars", E.var_names()},
                  {"field", field_name(E.potential().field())},
                  {"size", E.size()},
                  {"potential", E.potential().to_string(E.var_names())}};
    }
    fail_input("unrecognized file marker '" + marker + "'");
  });
}

}  // extern "C"
