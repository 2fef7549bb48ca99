#include "singhh/groebner.hpp"

#include <algorithm>
#include <set>

#include "singhh/errors.hpp"

namespace singhh {

namespace {

MultiPoly make_monic(const MultiPoly& f, const MonomialOrder& ord) {
  if (f.is_zero()) return f;
  auto [lm, lc] = f.leading_term(ord);
  return f.scale(f.field().inv(lc));
}

// One full reduction pass: the remainder has no term divisible by any leading term.
MultiPoly reduce_full(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                      const MonomialOrder& ord) {
  const Field& F = f.field();
  std::vector<std::pair<Exps, Scalar>> leads;
  leads.reserve(gens.size());
  for (const MultiPoly& g : gens) leads.push_back(g.leading_term(ord));

  MultiPoly h = f;
  MultiPoly rem(F, f.nvars());
  while (!h.is_zero()) {
    auto [m, c] = h.leading_term(ord);
    bool reduced = false;
    for (size_t k = 0; k < gens.size(); ++k) {
      if (exps_divides(leads[k].first, m)) {
        Scalar factor = F.div(c, leads[k].second);
        h = h.sub(gens[k].mul_term(exps_quot(m, leads[k].first), factor));
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      MultiPoly t = MultiPoly::monomial(F, m, c);
      rem = rem.add(t);
      h = h.sub(t);
    }
  }
  return rem;
}

MultiPoly s_poly(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord) {
  const Field& F = f.field();
  auto [mf, cf] = f.leading_term(ord);
  auto [mg, cg] = g.leading_term(ord);
  Exps l = exps_lcm(mf, mg);
  MultiPoly a = f.mul_term(exps_quot(l, mf), F.inv(cf));
  MultiPoly b = g.mul_term(exps_quot(l, mg), F.inv(cg));
  return a.sub(b);
}

struct Pair {
  int i, j;  // i < j
  Exps lcm;
  unsigned deg;
};

}  // namespace

GroebnerBasis groebner(const std::vector<MultiPoly>& input, const MonomialOrder& order) {
  GroebnerBasis out;
  out.order = order;

  std::vector<MultiPoly> basis;
  bool ring_known = false;
  for (const MultiPoly& f : input) {
    if (!ring_known) {
      out.field = f.field();
      out.nvars = f.nvars();
      ring_known = true;
    } else if (f.field() != out.field || f.nvars() != out.nvars) {
      fail_input("generators live in different rings");
    }
    if (!f.is_zero()) basis.push_back(make_monic(f, order));
  }
  if (basis.empty()) return out;  // zero ideal

  auto lead = [&](int i) { return basis[static_cast<size_t>(i)].leading_term(order).first; };

  std::set<std::pair<int, int>> pending;
  std::vector<Pair> queue;
  auto push_pairs_with = [&](int j) {
    for (int i = 0; i < j; ++i) {
      Exps l = exps_lcm(lead(i), lead(j));
      queue.push_back({i, j, l, exps_degree(l)});
      pending.insert({i, j});
    }
  };
  for (int j = 1; j < static_cast<int>(basis.size()); ++j) push_pairs_with(j);

  auto pick = [&]() {
    size_t best = 0;
    for (size_t k = 1; k < queue.size(); ++k) {
      const Pair &a = queue[k], &b = queue[best];
      int c = a.deg != b.deg ? (a.deg < b.deg ? -1 : 1) : order.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && (a.i < b.i || (a.i == b.i && a.j < b.j)))) best = k;
    }
    Pair p = queue[best];
    queue.erase(queue.begin() + static_cast<long>(best));
    pending.erase({p.i, p.j});
    return p;
  };

  while (!queue.empty()) {
    Pair p = pick();

    // Coprime leading terms reduce to zero.
    if (p.lcm == exps_mul(lead(p.i), lead(p.j))) continue;

    // Chain criterion: a third generator dividing the lcm whose two pairs are
    // both already handled makes this pair redundant.
    bool redundant = false;
    for (int k = 0; k < static_cast<int>(basis.size()) && !redundant; ++k) {
      if (k == p.i || k == p.j) continue;
      if (!exps_divides(lead(k), p.lcm)) continue;
      auto key = [&](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (pending.count(key(p.i, k)) == 0 && pending.count(key(p.j, k)) == 0) redundant = true;
    }
    if (redundant) continue;

    MultiPoly r = reduce_full(s_poly(basis[static_cast<size_t>(p.i)], basis[static_cast<size_t>(p.j)], order),
                              basis, order);
    if (r.is_zero()) continue;
    basis.push_back(make_monic(r, order));
    push_pairs_with(static_cast<int>(basis.size()) - 1);
  }

  // Minimalize: drop generators whose lead is divisible by another kept lead.
  std::vector<MultiPoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    Exps li = basis[i].leading_term(order).first;
    bool drop = false;
    for (size_t j = 0; j < basis.size() && !drop; ++j) {
      if (i == j) continue;
      Exps lj = basis[j].leading_term(order).first;
      if (exps_divides(lj, li) && (lj != li || j < i)) drop = true;
    }
    if (!drop) minimal.push_back(basis[i]);
  }

  // Interreduce to the reduced basis.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < minimal.size(); ++i) {
      std::vector<MultiPoly> others;
      for (size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      MultiPoly r = others.empty() ? minimal[i] : reduce_full(minimal[i], others, order);
      r = make_monic(r, order);
      if (!r.equal(minimal[i])) {
        if (r.is_zero()) {
          minimal.erase(minimal.begin() + static_cast<long>(i));
        } else {
          minimal[static_cast<size_t>(i)] = r;
        }
        changed = true;
        break;
      }
    }
  }

  std::sort(minimal.begin(), minimal.end(), [&](const MultiPoly& a, const MultiPoly& b) {
    return order.greater(a.leading_term(order).first, b.leading_term(order).first);
  });
  out.gens = std::move(minimal);
  return out;
}

MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb) {
  if (gb.gens.empty()) return f;
  if (f.field() != gb.field || f.nvars() != gb.nvars)
    fail_input("polynomial does not live in the basis ring");
  return reduce_full(f, gb.gens, gb.order);
}

bool ideal_contains(const GroebnerBasis& gb, const MultiPoly& f) {
  if (f.is_zero()) return true;
  if (gb.gens.empty()) return false;
  return normal_form(f, gb).is_zero();
}

}  // namespace singhh
