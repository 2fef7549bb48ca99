// Acceptance run: one line per criterion. Invoke as
//   acceptance <path-to-cli> <path-to-data-dir>
// The last two criteria need both arguments; everything else is in-process.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "properties.hpp"
#include "singhh/hochschild.hpp"
#include "singhh/hypersurface.hpp"
#include "singhh/mfactor.hpp"
#include "singhh/resolution.hpp"
#include "singhh/tate.hpp"
#include "test_helpers.hpp"

using namespace singhh;

namespace {

void req(bool ok, const std::string& msg) {
  if (!ok) throw std::runtime_error(msg);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr long kBudget = 50'000'000;
const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kX{"x"};

StabilizationTrace scan(const Algebra& A, int n, const BimoduleResolution& res) {
  auto t = hhsg_dim(A, n, 8, res);
  req(t.stabilized, "degree " + std::to_string(n) + " failed to stabilize");
  return t;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& cli, const std::string& data, const std::string& args) {
  std::string cmd = "cd '" + data + "' && '" + cli + "' " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  req(p != nullptr, "failed to launch " + cmd);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  std::string data = argc > 2 ? argv[2] : "";
  int failures = 0;
  auto criterion = [&](int n, const std::string& what, auto&& body) {
    try {
      body();
      std::printf("criterion %d: pass - %s\n", n, what.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("criterion %d: FAIL - %s: %s\n", n, what.c_str(), e.what());
    }
    std::fflush(stdout);
  };

  criterion(1, "univariate powers: stable dimensions match the Tyurina number, under a second each",
            [&] {
              for (int m = 2; m <= 6; ++m) {
                auto t0 = std::chrono::steady_clock::now();
                auto Q = testers::P("x^" + std::to_string(m), kX);
                auto dims = stable_hh_dims(Q, kX, 0, 1);
                int tau = tyurina_algebra(Q, kX).dim;
                double dt = seconds_since(t0);
                req(dims.at(0) == m - 1 && dims.at(1) == m - 1,
                    "stable dimensions off for exponent " + std::to_string(m));
                req(tau == m - 1, "tyurina number off for exponent " + std::to_string(m));
                req(dt < 1.0, "exponent " + std::to_string(m) + " took " + std::to_string(dt) + "s");
              }
            });

  criterion(2, "dual numbers: every window degree stabilizes to 1 by depth 5, bar and periodic agree",
            [&] {
              auto t0 = std::chrono::steady_clock::now();
              auto A = testers::kxm(2);
              auto bar = BimoduleResolution::bar(A, 13, kBudget);
              auto per = testers::periodic_res(A, 13);
              for (int n = -3; n <= 3; ++n) {
                auto tb = scan(A, n, bar);
                auto tp = scan(A, n, per);
                req(tb.value == 1, "bar value off in degree " + std::to_string(n));
                req(tb.stable_at <= 5, "bar stabilized late in degree " + std::to_string(n));
                req(tp.value == 1, "periodic value off in degree " + std::to_string(n));
                req(tp.stable_at <= 5, "periodic stabilized late in degree " + std::to_string(n));
              }
              double dt = seconds_since(t0);
              req(dt < 30.0, "whole scan took " + std::to_string(dt) + "s");
            });

  criterion(3, "positive degrees agree with the bar cochain dimensions for truncated powers 2 and 3",
            [&] {
              for (int m : {2, 3}) {
                auto A = testers::kxm(m);
                auto hh = hh_dims(A, 4, kBudget);
                auto res = testers::periodic_res(A, 14);
                for (int n = 1; n <= 4; ++n) {
                  auto t = scan(A, n, res);
                  req(hh.at(n) == t.value, "mismatch at degree " + std::to_string(n) +
                                               " for exponent " + std::to_string(m));
                  req(t.value == m - 1, "unexpected stable value for exponent " + std::to_string(m));
                }
              }
            });

  criterion(4, "every stable dimension table over the corpus is 2-periodic", [&] {
    struct Case {
      std::string q;
      std::vector<std::string> vars;
    };
    std::vector<Case> corpus{{"x^2", kX},      {"x^3", kX},      {"x^4", kX},
                             {"x^5", kX},      {"x^6", kX},      {"x^3+y^3", kXY},
                             {"x^3-y^2", kXY}, {"x^4+y^5+x^2*y^3", kXY}};
    for (const auto& c : corpus) {
      auto dims = stable_hh_dims(testers::P(c.q, c.vars), c.vars, -3, 5);
      for (int n = -3; n <= 3; ++n)
        req(dims.at(n) == dims.at(n + 2), c.q + " table is not 2-periodic at " + std::to_string(n));
    }
    for (int m : {2, 3}) {
      auto A = testers::kxm(m);
      auto res = testers::periodic_res(A, 13);
      std::map<int, int> table;
      for (int n = -3; n <= 3; ++n) table[n] = scan(A, n, res).value;
      for (int n = -3; n <= 1; ++n)
        req(table.at(n) == table.at(n + 2),
            "truncated power " + std::to_string(m) + " scan is not 2-periodic");
    }
  });

  criterion(5, "degree zero of the truncated cube is two dimensional with a square-zero nilpotent",
            [&] {
              auto A = testers::kxm(3);
              const Field& F = A.field();
              auto res = testers::periodic_res(A, 20);
              auto G = HhsgGroup::compute(res, 0, 5);
              req(G.dim() == 2, "group dimension is " + std::to_string(G.dim()));
              auto u = unit_singular_class(res);
              DenseVec uc = G.coordinates(u);
              // pick a basis class independent of the unit
              int gi = -1;
              for (int i = 0; i < G.dim(); ++i)
                if (span_rank(F, {uc, G.coordinates(G.basis()[i])}, G.dim()) == 2) {
                  gi = i;
                  break;
                }
              req(gi >= 0, "no class independent of the unit");
              const SingularClass& g = G.basis()[static_cast<size_t>(gi)];
              DenseVec gc = G.coordinates(g);
              auto prod = [&](const SingularClass& a, const SingularClass& b) {
                return G.coordinates(hhsg_product(a, b, 10));
              };
              DenseVec uu = prod(u, u), ug = prod(u, g), gu = prod(g, u), gg = prod(g, g);
              for (int i = 0; i < G.dim(); ++i) {
                req(F.equal(uu[i], uc[i]) && F.equal(ug[i], gc[i]) && F.equal(gu[i], gc[i]),
                    "the unit class does not act as the identity");
              }
              // g*g = alpha*u + beta*g; the shifted class g - (beta/2)u squares to
              // (alpha + beta^2/4) u, which must vanish
              auto basis2 = Matrix::from_columns(F, {uc, gc});
              auto sol = solve(basis2, gg);
              req(sol.has_value(), "g*g escapes the span of the basis");
              Scalar alpha = (*sol)[0], beta = (*sol)[1];
              Scalar disc = F.add(alpha, F.div(F.mul(beta, beta), F.from_long(4)));
              req(F.is_zero(disc), "no square-zero complement to the unit");
              Scalar c = F.div(beta, F.from_long(2));
              bool nil_nonzero = false;
              for (int i = 0; i < G.dim(); ++i) {
                Scalar nu2 = F.add(F.sub(gg[i], F.mul(c, F.add(gu[i], ug[i]))),
                                   F.mul(F.mul(c, c), uu[i]));
                req(F.is_zero(nu2), "the shifted class does not square to zero");
                if (!F.is_zero(F.sub(gc[i], F.mul(c, uc[i])))) nil_nonzero = true;
              }
              req(nil_nonzero, "the nilpotent collapsed to zero");
              // so the group is k[nu]/(nu^2): the same structure as the Tyurina algebra
              auto fp = algebra_fingerprint(tyurina_algebra(testers::P("x^3", kX), kX));
              req(fp.dimension == 2 && fp.hilbert == std::vector<int>{1, 1},
                  "the Tyurina algebra of the cusp point is not k[x]/(x^2)");
            });

  criterion(6, "weighted corpus members have equal invariants; the witness drops by one", [&] {
    struct Case {
      std::string q;
      std::vector<std::string> vars;
    };
    std::vector<Case> weighted{{"x^2", kX},      {"x^3", kX}, {"x^4", kX},     {"x^5", kX},
                               {"x^6", kX},      {"x^3+y^3", kXY}, {"x^3-y^2", kXY}};
    for (const auto& c : weighted) {
      auto Q = testers::P(c.q, c.vars);
      req(quasi_homogeneous_weights(Q).has_value(), c.q + " lost its weights");
      auto M = milnor_algebra(Q, c.vars);
      req(M.mult_operator(M.element_coords(Q)).is_zero(),
          "multiplication by " + c.q + " is nonzero on its Jacobian quotient");
      req(tyurina_algebra(Q, c.vars).dim == milnor_number(M),
          "invariants split for " + c.q);
    }
    auto W = testers::P("x^4+y^5+x^2*y^3", kXY);
    req(!quasi_homogeneous_weights(W).has_value(), "the witness has weights");
    auto M = milnor_algebra(W, kXY);
    int mu = milnor_number(M), tau = tyurina_algebra(W, kXY).dim;
    req(mu == 12 && tau == 11, "witness invariants are " + std::to_string(mu) + " and " +
                                   std::to_string(tau));
    req(rank(M.mult_operator(M.element_coords(W))) == 3,
        "multiplication by the witness has unexpected rank");
  });

  criterion(7, "fingerprints match where required, separate where required, ignore coordinates",
            [&] {
              auto eq = compare_singularities(testers::P("x^2+y^2", kXY),
                                              testers::P("x*y", kXY), kXY);
              req(!eq.distinct && eq.first.dimension == 1, "plain double points were separated");
              auto ne = compare_singularities(testers::P("x^3+y^3", kXY),
                                              testers::P("x^4+y^4", kXY), kXY);
              req(ne.distinct && ne.first.dimension == 4 && ne.second.dimension == 9,
                  "the cubic and quartic cones were not separated");
              auto a = fingerprint(testers::P("x^4+y^5+x^2*y^3", kXY), kXY);
              auto b = fingerprint(testers::P("y^4+x^5+y^2*x^3", kXY), kXY);
              req(a == b, "swapping the variables changed the fingerprint");
              auto c = fingerprint(testers::P("x^4+y^5+x^2*y^3", kXY), kXY, MonomialOrder::lex());
              req(a == c, "changing the monomial order changed the fingerprint");
            });

  criterion(8, "factorization cohomology matches the stable dimensions; the contractible one vanishes",
            [&] {
              Field F = Field::rationals();
              auto Q = testers::P("x^2", kX, F);
              auto x = testers::P("x", kX, F);
              auto E = make_mf({{x}}, {{x}}, Q);
              auto hom = mf_hom_cohomology(E, E);
              req(hom.first == 1 && hom.second == 1, "self cohomology is not (1, 1)");
              auto dims = stable_hh_dims(Q, kX, 0, 1);
              req(hom.first == dims.at(0) && hom.second == dims.at(1),
                  "factorization and hypersurface answers disagree");
              auto A = testers::kxm(2);
              auto res = testers::periodic_res(A, 13);
              req(scan(A, 0, res).value == hom.first && scan(A, 1, res).value == hom.second,
                  "factorization and stabilization answers disagree");
              auto T = MatrixFactorization::trivial(Q);
              auto z1 = mf_hom_cohomology(T, E), z2 = mf_hom_cohomology(E, T);
              req(z1 == std::make_pair(0, 0) && z2 == std::make_pair(0, 0),
                  "the contractible factorization has cohomology");
            });

  criterion(9, "seven randomized structure suites hold over 200 cases each", [&] {
    req(props::check_d_squared(200) >= 200, "d squared suite undersampled");
    req(props::check_buchberger(200) >= 200, "reduction suite undersampled");
    req(props::check_rank_nullity(250) >= 200, "rank suite undersampled");
    req(props::check_center(200) >= 200, "center suite undersampled");
    req(props::check_derivations(200) >= 200, "derivation suite undersampled");
    req(props::check_cup_commutativity(200) >= 200, "cup suite undersampled");
    req(props::check_truncation_accounting(200) >= 200, "truncation suite undersampled");
  });

  criterion(10, "command line output is byte-identical across repeats and thread counts", [&] {
    req(!cli.empty() && !data.empty(), "missing the binary or data directory argument");
    struct Cmd {
      std::string args;
      int expect;
    };
    std::vector<Cmd> corpus{
        {"milnor --poly \"x^3+y^3\" --vars x,y", 0},
        {"milnor --poly \"x^4+y^5+x^2*y^3\" --vars x,y", 0},
        {"tyurina --poly \"x^4+y^5+x^2*y^3\" --vars x,y", 0},
        {"fingerprint --poly \"x^3+y^3\" --vars x,y", 0},
        {"compare --poly \"x^2+y^2\" --with \"x*y\" --vars x,y", 0},
        {"compare --poly \"x^3+y^3\" --with \"x^4+y^4\" --vars x,y", 0},
        {"hyp-hh --poly \"x^3-y^2\" --vars x,y --degrees -2..3", 0},
        {"hh --algebra dual-numbers.alg --nmax 4", 0},
        {"hh-sg --algebra dual-numbers.alg --degrees -3..3 --qmax 8", 0},
        {"hh-sg --algebra kx3.alg --resolution periodic-m3.res --degrees -3..3 --qmax 8", 0},
        {"hh-sg-product --algebra kx3.alg --resolution periodic-m3.res --degree-f 0 --degree-g 0",
         0},
        {"syzygy-check --algebra dual-numbers.alg --qmax 3", 0},
        {"mf-hom --first dual.mf --second dual.mf", 0},
        {"mf-hom --first trivial-m2.mf --second dual.mf", 0},
        {"validate --file kx4.alg", 0},
        {"validate --file periodic-m2.res --algebra dual-numbers.alg", 0},
        {"validate --file cusp.mf", 0},
        {"milnor --poly \"x^3+y^3\" --vars x,y --format tsv", 0},
        {"milnor --poly \"x^3+y^3\" --vars x,y --field \"gf 7\"", 0},
        {"milnor --poly \"x*y^\" --vars x,y", 2},
        {"milnor --poly \"x^2*y^2\" --vars x,y", 1},
    };
    for (const auto& c : corpus) {
      auto first = run_cli(cli, data, c.args);
      req(first.exit_code == c.expect,
          "`" + c.args + "` exited " + std::to_string(first.exit_code));
      for (int rep = 0; rep < 2; ++rep) {
        auto again = run_cli(cli, data, c.args);
        req(again.out == first.out && again.exit_code == first.exit_code,
            "`" + c.args + "` drifted between repeats");
      }
      if (c.expect != 0) continue;
      for (int threads : {1, 2, 8}) {
        auto t = run_cli(cli, data, c.args + " --threads " + std::to_string(threads));
        req(t.out == first.out && t.exit_code == first.exit_code,
            "`" + c.args + "` drifted at " + std::to_string(threads) + " threads");
      }
    }
  });

  if (failures != 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
