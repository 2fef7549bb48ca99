#include "singhh/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "singhh/errors.hpp"

namespace singhh {

unsigned exps_degree(const Exps& a) {
  unsigned d = 0;
  for (unsigned e : a) d += e;
  return d;
}

Exps exps_mul(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool exps_divides(const Exps& a, const Exps& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exps exps_quot(const Exps& b, const Exps& a) {
  Exps r(b.size());
  for (size_t i = 0; i < b.size(); ++i) {
    if (a[i] > b[i]) fail_input("monomial quotient is not a monomial");
    r[i] = b[i] - a[i];
  }
  return r;
}

Exps exps_lcm(const Exps& a, const Exps& b) {
  Exps r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

MonomialOrder MonomialOrder::with_priority(std::vector<int> perm) const {
  MonomialOrder o = *this;
  o.priority = std::move(perm);
  return o;
}

int MonomialOrder::compare(const Exps& a, const Exps& b) const {
  if (a.size() != b.size()) fail_input("comparing exponent vectors of different lengths");
  int n = static_cast<int>(a.size());
  if (!priority.empty() && static_cast<int>(priority.size()) != n)
    fail_input("monomial order priority has wrong length");
  auto var = [&](int k) { return priority.empty() ? k : priority[static_cast<size_t>(k)]; };

  if (kind != Kind::Lex) {
    unsigned da = exps_degree(a), db = exps_degree(b);
    if (da != db) return da < db ? -1 : 1;
  }
  if (kind == Kind::Grevlex) {
    for (int k = n - 1; k >= 0; --k) {
      unsigned ea = a[static_cast<size_t>(var(k))], eb = b[static_cast<size_t>(var(k))];
      if (ea != eb) return ea > eb ? -1 : 1;
    }
    return 0;
  }
  for (int k = 0; k < n; ++k) {
    unsigned ea = a[static_cast<size_t>(var(k))], eb = b[static_cast<size_t>(var(k))];
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  switch (kind) {
    case Kind::Grevlex: return "grevlex";
    case Kind::GradedLex: return "gradedlex";
    case Kind::Lex: return "lex";
  }
  return "?";
}

MonomialOrder MonomialOrder::parse(const std::string& name) {
  if (name == "grevlex") return grevlex();
  if (name == "gradedlex") return graded_lex();
  if (name == "lex") return lex();
  fail_input("unknown monomial order '" + name + "' (expected grevlex, gradedlex or lex)");
}

namespace {

// Canonical storage comparator: total degree, then plain lex, ascending.
bool canon_less(const Exps& a, const Exps& b) {
  unsigned da = exps_degree(a), db = exps_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

MultiPoly::MultiPoly(const Field& F, int nvars) : field_(F), nvars_(nvars) {
  if (nvars < 0) fail_input("negative variable count");
}

MultiPoly MultiPoly::constant(const Field& F, int nvars, const Scalar& c) {
  MultiPoly p(F, nvars);
  Scalar r = F.reduce(c);
  if (!F.is_zero(r)) p.terms_.emplace_back(Exps(static_cast<size_t>(nvars), 0), std::move(r));
  return p;
}

MultiPoly MultiPoly::variable(const Field& F, int nvars, int i) {
  if (i < 0 || i >= nvars) fail_input("variable index out of range");
  Exps e(static_cast<size_t>(nvars), 0);
  e[static_cast<size_t>(i)] = 1;
  return monomial(F, e, F.one());
}

MultiPoly MultiPoly::monomial(const Field& F, const Exps& e, const Scalar& c) {
  MultiPoly p(F, static_cast<int>(e.size()));
  Scalar r = F.reduce(c);
  if (!F.is_zero(r)) p.terms_.emplace_back(e, std::move(r));
  return p;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(exps_degree(terms_.back().first));
}

Scalar MultiPoly::coeff(const Exps& e) const {
  for (const auto& [m, c] : terms_)
    if (m == e) return c;
  return Scalar(0);
}

void MultiPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& x, const auto& y) { return canon_less(x.first, y.first); });
  std::vector<std::pair<Exps, Scalar>> out;
  for (auto& [m, c] : terms_) {
    Scalar r = field_.reduce(c);
    if (!out.empty() && out.back().first == m) {
      out.back().second = field_.add(out.back().second, r);
      if (field_.is_zero(out.back().second)) out.pop_back();
    } else if (!field_.is_zero(r)) {
      out.emplace_back(std::move(m), std::move(r));
    }
  }
  terms_ = std::move(out);
}

MultiPoly MultiPoly::add(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || field_ != o.field_) fail_input("polynomial sum mismatch");
  MultiPoly r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

MultiPoly MultiPoly::sub(const MultiPoly& o) const { return add(o.neg()); }

MultiPoly MultiPoly::mul(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || field_ != o.field_) fail_input("polynomial product mismatch");
  std::map<Exps, Scalar> acc;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      Exps m = exps_mul(ma, mb);
      auto it = acc.find(m);
      if (it == acc.end())
        acc.emplace(std::move(m), field_.mul(ca, cb));
      else
        it->second = field_.add(it->second, field_.mul(ca, cb));
    }
  MultiPoly r(field_, nvars_);
  for (auto& [m, c] : acc)
    if (!field_.is_zero(c)) r.terms_.emplace_back(m, c);
  r.normalize();
  return r;
}

MultiPoly MultiPoly::neg() const {
  MultiPoly r = *this;
  for (auto& [m, c] : r.terms_) c = field_.neg(c);
  return r;
}

MultiPoly MultiPoly::scale(const Scalar& c) const {
  Scalar cr = field_.reduce(c);
  MultiPoly r(field_, nvars_);
  if (field_.is_zero(cr)) return r;
  r = *this;
  for (auto& [m, x] : r.terms_) x = field_.mul(x, cr);
  r.normalize();
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(field_, nvars_, field_.one());
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1u) r = r.mul(base);
    k >>= 1u;
    if (k > 0) base = base.mul(base);
  }
  return r;
}

MultiPoly MultiPoly::mul_term(const Exps& e, const Scalar& c) const {
  MultiPoly r(field_, nvars_);
  Scalar cr = field_.reduce(c);
  if (field_.is_zero(cr)) return r;
  for (const auto& [m, x] : terms_) r.terms_.emplace_back(exps_mul(m, e), field_.mul(x, cr));
  r.normalize();
  return r;
}

MultiPoly MultiPoly::derivative(int var) const {
  if (var < 0 || var >= nvars_) fail_input("derivative variable out of range");
  MultiPoly r(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    unsigned e = m[static_cast<size_t>(var)];
    if (e == 0) continue;
    Exps m2 = m;
    --m2[static_cast<size_t>(var)];
    Scalar c2 = field_.mul(c, field_.from_long(static_cast<long>(e)));
    if (!field_.is_zero(c2)) r.terms_.emplace_back(std::move(m2), std::move(c2));
  }
  r.normalize();
  return r;
}

MultiPoly MultiPoly::rename_variables(const std::vector<int>& image, int new_nvars) const {
  if (static_cast<int>(image.size()) != nvars_) fail_input("rename map has wrong length");
  MultiPoly r(field_, new_nvars);
  for (const auto& [m, c] : terms_) {
    Exps m2(static_cast<size_t>(new_nvars), 0);
    for (int i = 0; i < nvars_; ++i) {
      int j = image[static_cast<size_t>(i)];
      if (j < 0 || j >= new_nvars) fail_input("rename map target out of range");
      m2[static_cast<size_t>(j)] += m[static_cast<size_t>(i)];
    }
    r.terms_.emplace_back(std::move(m2), c);
  }
  r.normalize();
  return r;
}

bool MultiPoly::equal(const MultiPoly& o) const {
  if (nvars_ != o.nvars_ || field_ != o.field_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].first != o.terms_[i].first || !field_.equal(terms_[i].second, o.terms_[i].second))
      return false;
  return true;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exps_degree(terms_[0].first) == 0);
}

std::pair<Exps, Scalar> MultiPoly::leading_term(const MonomialOrder& ord) const {
  if (terms_.empty()) fail_math("zero polynomial has no leading term");
  size_t best = 0;
  for (size_t i = 1; i < terms_.size(); ++i)
    if (ord.greater(terms_[i].first, terms_[best].first)) best = i;
  return terms_[best];
}

std::string MultiPoly::to_string(const std::vector<std::string>& vars) const {
  if (static_cast<int>(vars.size()) != nvars_) fail_input("variable name list has wrong length");
  if (terms_.empty()) return "0";
  std::string out;
  for (size_t k = terms_.size(); k-- > 0;) {
    const auto& [m, c] = terms_[k];
    Scalar cc = c;
    bool negative = field_.kind() == FieldKind::Rationals && sgn(cc) < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (negative) cc = -cc;
    std::string mono;
    for (int i = 0; i < nvars_; ++i) {
      unsigned e = m[static_cast<size_t>(i)];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[static_cast<size_t>(i)];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    std::string cs = field_.to_string(cc);
    if (mono.empty())
      out += cs;
    else if (cs == "1")
      out += mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

namespace {

struct Parser {
  const std::string& text;
  const std::vector<std::string>& vars;
  const Field& F;
  size_t pos = 0;

  [[noreturn]] void err(const std::string& what) const {
    fail_input("syntax error at position " + std::to_string(pos + 1) + ": " + what);
  }

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }

  MultiPoly parse_expr() {
    MultiPoly r = eat('-') ? parse_term().neg() : parse_term();
    while (true) {
      if (eat('+'))
        r = r.add(parse_term());
      else if (eat('-'))
        r = r.sub(parse_term());
      else
        break;
    }
    return r;
  }

  MultiPoly parse_term() {
    MultiPoly r = parse_factor();
    while (true) {
      if (eat('*')) {
        r = r.mul(parse_factor());
      } else if (eat('/')) {
        size_t at = pos;
        MultiPoly d = parse_factor();
        if (!d.is_constant() || d.is_zero()) {
          pos = at;
          err("division is only allowed by nonzero constants");
        }
        r = r.scale(F.inv(d.coeff(Exps(static_cast<size_t>(d.nvars()), 0))));
      } else {
        break;
      }
    }
    return r;
  }

  MultiPoly parse_factor() {
    if (eat('-')) return parse_factor().neg();
    MultiPoly base = parse_base();
    if (eat('^')) {
      skip_space();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        err("expected a nonnegative integer exponent");
      unsigned long e = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        e = e * 10 + static_cast<unsigned long>(text[pos] - '0');
        if (e > 100000) err("exponent too large");
        ++pos;
      }
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  MultiPoly parse_base() {
    skip_space();
    if (pos >= text.size()) err("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      MultiPoly r = parse_expr();
      if (!eat(')')) err("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        num += text[pos++];
      return MultiPoly::constant(F, static_cast<int>(vars.size()), F.parse(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      std::string name;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        name += text[pos++];
      for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return MultiPoly::variable(F, static_cast<int>(vars.size()), static_cast<int>(i));
      pos = start;
      err("unknown variable '" + name + "'");
    }
    err(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, const std::vector<std::string>& vars,
                           const Field& F) {
  Parser p{text, vars, F};
  MultiPoly r = p.parse_expr();
  p.skip_space();
  if (p.pos != text.size()) p.err("trailing input");
  return r;
}

std::vector<MultiPoly> jacobian(const MultiPoly& f) {
  std::vector<MultiPoly> out;
  out.reserve(static_cast<size_t>(f.nvars()));
  for (int i = 0; i < f.nvars(); ++i) out.push_back(f.derivative(i));
  return out;
}

std::vector<std::string> parse_var_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&]() {
    size_t a = cur.find_first_not_of(" \t");
    size_t b = cur.find_last_not_of(" \t");
    if (a == std::string::npos) fail_input("empty variable name in list");
    std::string name = cur.substr(a, b - a + 1);
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
      fail_input("bad variable name '" + name + "'");
    for (char c : name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        fail_input("bad variable name '" + name + "'");
    for (const std::string& v : out)
      if (v == name) fail_input("duplicate variable name '" + name + "'");
    out.push_back(name);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',')
      flush();
    else
      cur += c;
  }
  flush();
  return out;
}

}  // namespace singhh
