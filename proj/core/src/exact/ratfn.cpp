#include "qes/exact/ratfn.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qes/exact/parse.hpp"

namespace qes::exact {
namespace {

constexpr unsigned kCachedPowers = 16;

struct BaseTable {
  std::array<MPoly, kBaseCount> base;
  std::array<std::vector<MPoly>, kBaseCount> powers;  // powers[b][k] = base^k, k < kCachedPowers

  BaseTable() {
    const MPoly d = parse_poly(
                        "9*mu^2*x^4*y^2 + 54*tau*mu^2*x^2*y^4 + 27*mu^2*(3*tau^2-4*mu)*y^6 - 12*mu*x^5"
                        " - 72*tau*mu*x^3*y^2 - 108*mu*(tau^2-2*mu)*x*y^4 - 12*tau*x^4"
                        " - 18*(4*tau^2+5*mu)*x^2*y^2 - 54*tau*(2*tau^2-3*mu)*y^4 - 4*x^3"
                        " - 108*tau*x*y^2 - 27*y^2") *
                    make_rational(1, 12);
    base = {d, even_xy_to_uv(d), vars::v(), vars::y()};
    for (std::size_t b = 0; b < kBaseCount; ++b) {
      powers[b].push_back(MPoly(1));
      for (unsigned k = 1; k < kCachedPowers; ++k) powers[b].push_back(powers[b].back() * base[b]);
    }
  }
};

const BaseTable& table() {
  static const BaseTable t;
  return t;
}

MPoly base_power(std::size_t b, unsigned k) {
  const auto& t = table();
  if (k < kCachedPowers) return t.powers[b][k];
  return t.powers[b][kCachedPowers - 1] * t.base[b].pow(k - kCachedPowers + 1);
}

MPoly den_product(const DenExponents& e) {
  MPoly out(1);
  for (std::size_t b = 0; b < kBaseCount; ++b)
    if (e[b]) out *= base_power(b, e[b]);
  return out;
}

}  // namespace

const MPoly& base_polynomial(Base b) { return table().base[static_cast<std::size_t>(b)]; }

std::string_view base_name(Base b) {
  static constexpr std::array<std::string_view, kBaseCount> names = {"D", "Dt", "v", "y"};
  return names[static_cast<std::size_t>(b)];
}

FactoredRatFn::FactoredRatFn(MPoly num) : num_(std::move(num)) {}

FactoredRatFn::FactoredRatFn(MPoly num, DenExponents den) : num_(std::move(num)), den_(den) { normalize(); }

FactoredRatFn FactoredRatFn::over(MPoly num, Base b, unsigned power) {
  DenExponents e{};
  e[static_cast<std::size_t>(b)] = power;
  return FactoredRatFn(std::move(num), e);
}

MPoly FactoredRatFn::denominator() const { return den_product(den_); }

bool FactoredRatFn::is_polynomial() const {
  return std::all_of(den_.begin(), den_.end(), [](unsigned e) { return e == 0; });
}

std::optional<MPoly> FactoredRatFn::as_polynomial() const {
  if (is_polynomial()) return num_;
  return std::nullopt;
}

void FactoredRatFn::normalize() {
  if (num_.is_zero()) {
    den_ = {};
    return;
  }
  const auto& t = table();
  for (std::size_t b = 0; b < kBaseCount; ++b) {
    while (den_[b] > 0) {
      auto q = num_.divide_exact(t.base[b]);
      if (!q) break;
      num_ = std::move(*q);
      --den_[b];
    }
  }
}

FactoredRatFn FactoredRatFn::operator-() const {
  FactoredRatFn r = *this;
  r.num_ = -r.num_;
  return r;
}

FactoredRatFn& FactoredRatFn::operator+=(const FactoredRatFn& o) {
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    DenExponents common{}, mine{}, theirs{};
    for (std::size_t b = 0; b < kBaseCount; ++b) {
      common[b] = std::max(den_[b], o.den_[b]);
      mine[b] = common[b] - den_[b];
      theirs[b] = common[b] - o.den_[b];
    }
    num_ = num_ * den_product(mine) + o.num_ * den_product(theirs);
    den_ = common;
  }
  normalize();
  return *this;
}

FactoredRatFn& FactoredRatFn::operator-=(const FactoredRatFn& o) { return *this += -o; }

FactoredRatFn& FactoredRatFn::operator*=(const FactoredRatFn& o) {
  num_ *= o.num_;
  for (std::size_t b = 0; b < kBaseCount; ++b) den_[b] += o.den_[b];
  if (!o.is_polynomial()) normalize();
  else if (num_.is_zero()) den_ = {};
  return *this;
}

FactoredRatFn& FactoredRatFn::operator*=(const BigRat& c) {
  num_ *= c;
  if (num_.is_zero()) den_ = {};
  return *this;
}

bool operator==(const FactoredRatFn& a, const FactoredRatFn& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  DenExponents ea{}, eb{};
  for (std::size_t i = 0; i < kBaseCount; ++i) {
    const unsigned m = std::min(a.den_[i], b.den_[i]);
    ea[i] = b.den_[i] - m;  // multiplies a's numerator
    eb[i] = a.den_[i] - m;
  }
  return a.num_ * den_product(ea) == b.num_ * den_product(eb);
}

FactoredRatFn FactoredRatFn::diff(Var v, unsigned order) const {
  if (order == 0) return *this;
  if (is_polynomial()) return FactoredRatFn(num_.diff(v, order));
  const auto& t = table();
  // (N / prod B_i^p_i)' = (N' prod B_i - N sum_i p_i B_i' prod_{j != i} B_j) / prod B_i^(p_i + 1)
  std::vector<std::size_t> present;
  for (std::size_t b = 0; b < kBaseCount; ++b)
    if (den_[b]) present.push_back(b);
  MPoly all(1);
  for (std::size_t b : present) all *= t.base[b];
  MPoly num = num_.diff(v) * all;
  for (std::size_t i : present) {
    const MPoly db = t.base[i].diff(v);
    if (db.is_zero()) continue;
    MPoly others(static_cast<long>(den_[i]));
    for (std::size_t j : present)
      if (j != i) others *= t.base[j];
    num -= num_ * db * others;
  }
  DenExponents e = den_;
  for (std::size_t b : present) ++e[b];
  FactoredRatFn r(std::move(num), e);
  return r.diff(v, order - 1);
}

FactoredRatFn FactoredRatFn::subst(const std::map<Var, MPoly>& bindings) const {
  VarMask bound = 0;
  for (const auto& [v, _] : bindings) bound |= mask(v);
  for (std::size_t b = 0; b < kBaseCount; ++b) {
    if (den_[b] && (table().base[b].support() & bound))
      throw std::domain_error("substitution touches denominator base " +
                              std::string(base_name(static_cast<Base>(b))));
  }
  return FactoredRatFn(num_.subst(bindings), den_);
}

FactoredRatFn FactoredRatFn::reflect(Var v) const {
  FactoredRatFn r = *this;
  r.num_ = num_.reflect(v);
  for (std::size_t b = 0; b < kBaseCount; ++b) {
    if (!den_[b]) continue;
    const MPoly& base = table().base[b];
    if (base.has_parity(v, 1) && den_[b] % 2) r.num_ = -r.num_;
    else if (!base.has_parity(v, 0) && !base.has_parity(v, 1))
      throw std::domain_error("base " + std::string(base_name(static_cast<Base>(b))) + " has no parity");
  }
  return r;
}

std::string FactoredRatFn::to_string() const {
  if (is_polynomial()) return num_.to_string();
  std::string den;
  for (std::size_t b = 0; b < kBaseCount; ++b) {
    if (!den_[b]) continue;
    if (!den.empty()) den += '*';
    den += base_name(static_cast<Base>(b));
    if (den_[b] > 1) den += "^" + std::to_string(den_[b]);
  }
  return "(" + num_.to_string() + ")/(" + den + ")";
}

}  // namespace qes::exact
