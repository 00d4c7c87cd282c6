#include "qes/exact/mpoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace qes::exact {

unsigned Monomial::degree(VarMask m) const {
  unsigned d = 0;
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (m & (1u << i)) d += exponent(static_cast<Var>(i));
  return d;
}

Monomial Monomial::restrict(VarMask m) const {
  std::uint64_t keep = 0;
  for (std::size_t i = 0; i < kVarCount; ++i)
    if (m & (1u << i)) keep |= std::uint64_t{0xff} << shift(static_cast<Var>(i));
  return Monomial(bits_ & keep);
}

namespace {

bool term_greater(const Term& a, const Term& b) { return a.mono > b.mono; }

}  // namespace

MPoly::MPoly(const BigRat& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

MPoly::MPoly(long c) : MPoly(BigRat(c)) {}

MPoly MPoly::variable(Var v) { return monomial(Monomial::of(v), 1); }

MPoly MPoly::monomial(Monomial m, BigRat c) {
  MPoly p;
  if (c != 0) p.terms_.push_back({m, std::move(c)});
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  MPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

BigRat MPoly::constant_term() const { return coefficient(Monomial{}); }

BigRat MPoly::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

unsigned MPoly::degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned MPoly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

unsigned MPoly::degree(VarMask m) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(m));
  return d;
}

VarMask MPoly::support() const {
  VarMask m = 0;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < kVarCount; ++i)
      if (t.mono.exponent(static_cast<Var>(i))) m |= static_cast<VarMask>(1u << i);
  return m;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

void MPoly::add_scaled(const MPoly& o, int sign) {
  if (o.terms_.empty()) return;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mono > b->mono)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->mono > a->mono) {
      out.push_back({b->mono, sign > 0 ? b->coef : BigRat(-b->coef)});
      ++b;
    } else {
      BigRat c = sign > 0 ? BigRat(a->coef + b->coef) : BigRat(a->coef - b->coef);
      if (c != 0) out.push_back({a->mono, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

MPoly& MPoly::operator+=(const MPoly& o) {
  add_scaled(o, +1);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  add_scaled(o, -1);
  return *this;
}

MPoly& MPoly::operator*=(const BigRat& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coef *= c;
  }
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1 && b.terms_[0].mono.is_one()) return a * b.terms_[0].coef;
  if (a.terms_.size() == 1 && a.terms_[0].mono.is_one()) return b * a.terms_[0].coef;
  std::unordered_map<Monomial, BigRat> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  BigRat prod;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      prod = s.coef * t.coef;
      auto [it, inserted] = acc.try_emplace(s.mono * t.mono, prod);
      if (!inserted) it->second += prod;
    }
  }
  MPoly r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(), term_greater);
  return r;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(1);
  MPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MPoly MPoly::diff(Var v, unsigned order) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const unsigned e = t.mono.exponent(v);
    if (e < order) continue;
    BigRat c = t.coef;
    for (unsigned k = 0; k < order; ++k) c *= static_cast<long>(e - k);
    out.push_back({t.mono.with_exponent(v, e - order), std::move(c)});
  }
  // Differentiation keeps distinct monomials distinct, but may reorder them.
  return from_terms(std::move(out));
}

MPoly MPoly::subst(Var v, const MPoly& value) const { return subst(std::map<Var, MPoly>{{v, value}}); }

MPoly MPoly::subst(const std::map<Var, MPoly>& bindings) const {
  if (bindings.empty()) return *this;
  VarMask bound = 0;
  for (const auto& [v, _] : bindings) bound |= mask(v);
  // powers[v][e] cache
  std::map<Var, std::vector<MPoly>> powers;
  for (const auto& [v, val] : bindings) powers[v].push_back(MPoly(1));
  auto power_of = [&](Var v, unsigned e) -> const MPoly& {
    auto& cache = powers[v];
    while (cache.size() <= e) cache.push_back(cache.back() * bindings.at(v));
    return cache[e];
  };
  const VarMask free_vars = static_cast<VarMask>(~bound);
  std::map<Monomial, MPoly> grouped;  // bound-exponent pattern -> free part
  for (const auto& t : terms_) {
    grouped[t.mono.restrict(bound)] += MPoly::monomial(t.mono.restrict(free_vars), t.coef);
  }
  MPoly result;
  for (const auto& [pattern, rest] : grouped) {
    MPoly factor(1);
    for (const auto& [v, _] : bindings) {
      const unsigned e = pattern.exponent(v);
      if (e) factor *= power_of(v, e);
    }
    result += factor * rest;
  }
  return result;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return MPoly{};
  const Term& lead = divisor.terms_.front();
  if (divisor.terms_.size() == 1) {
    MPoly q;
    q.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!lead.mono.divides(t.mono)) return std::nullopt;
      q.terms_.push_back({t.mono / lead.mono, t.coef / lead.coef});
    }
    return q;
  }
  MPoly rem = *this;
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const Term& lt = rem.terms_.front();
    if (!lead.mono.divides(lt.mono)) return std::nullopt;
    Term qt{lt.mono / lead.mono, lt.coef / lead.coef};
    MPoly step = divisor;
    for (auto& t : step.terms_) {
      t.mono = t.mono * qt.mono;
      t.coef *= qt.coef;
    }
    rem -= step;
    quotient.push_back(std::move(qt));
  }
  return from_terms(std::move(quotient));
}

std::map<Monomial, MPoly> MPoly::collect(VarMask m) const {
  std::map<Monomial, std::vector<Term>> buckets;
  const VarMask rest = static_cast<VarMask>(~m);
  for (const auto& t : terms_) buckets[t.mono.restrict(m)].push_back({t.mono.restrict(rest), t.coef});
  std::map<Monomial, MPoly> out;
  for (auto& [k, ts] : buckets) out.emplace(k, from_terms(std::move(ts)));
  return out;
}

MPoly MPoly::reflect(Var v) const {
  MPoly r = *this;
  for (auto& t : r.terms_)
    if (t.mono.exponent(v) % 2) t.coef = -t.coef;
  return r;
}

bool MPoly::has_parity(Var v, unsigned parity) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return t.mono.exponent(v) % 2 == parity % 2; });
}

namespace {

std::string monomial_text(Monomial m) {
  std::string s;
  for (std::size_t i = 0; i < kVarCount; ++i) {
    const unsigned e = m.exponent(static_cast<Var>(i));
    if (!e) continue;
    if (!s.empty()) s += '*';
    s += kVarNames[i];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coef < 0;
    const BigRat mag = abs(t.coef);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += exact::to_string(mag);
    } else {
      if (mag != 1) out += exact::to_string(mag) + "*";
      out += monomial_text(t.mono);
    }
  }
  return out;
}

MPoly even_xy_to_uv(const MPoly& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    const unsigned ey = t.mono.exponent(Var::y);
    if (ey % 2)
      throw std::domain_error("odd power of y in term '" + MPoly::monomial(t.mono, t.coef).to_string() + "'");
    const unsigned ex = t.mono.exponent(Var::x);
    Monomial m = t.mono.with_exponent(Var::x, 0).with_exponent(Var::y, 0);
    m = m.with_exponent(Var::u, m.exponent(Var::u) + ex).with_exponent(Var::v, m.exponent(Var::v) + ey / 2);
    out.push_back({m, t.coef});
  }
  return MPoly::from_terms(std::move(out));
}

}  // namespace qes::exact
