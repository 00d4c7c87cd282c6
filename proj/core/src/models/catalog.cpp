#include "qes/models/catalog.hpp"

#include "qes/exact/parse.hpp"

namespace qes::models {

using exact::Base;
using exact::parse_poly;
using exact::Var;

namespace {

DiffOp op(Chart ch, std::initializer_list<std::tuple<unsigned, unsigned, const char*>> terms) {
  DiffOp r(ch);
  for (const auto& [a, b, c] : terms) r.add_term(a, b, FactoredRatFn(parse_poly(c)));
  return r;
}

MPoly nu() { return exact::vars::nu(); }

}  // namespace

MPoly det_D() { return exact::base_polynomial(Base::Dxy); }
MPoly det_D_uv() { return exact::base_polynomial(Base::Duv); }

MPoly potential_numerator_xy() { return parse_poly("x + 2*tau*x^2 + mu*x^3 - 6*(mu - tau^2)*y^2 + 3*mu*tau*x*y^2"); }

MPoly potential_numerator_uv() { return parse_poly("u + 2*tau*u^2 + mu*u^3 - 6*mu*v + 6*tau^2*v + 3*mu*tau*u*v"); }

FactoredRatFn potential_V() {
  const MPoly n = potential_numerator_xy();
  return FactoredRatFn::over(parse_poly("3/4*nu*(nu - 1)") * n * n, Base::Dxy);
}

MPoly e0() { return parse_poly("3*nu*(3*nu + 1)*tau"); }

DiffOp laplace_beltrami() {
  return op(Chart::XY,
            {{2, 0, "3*(x/3 + tau*x^2 + mu*x^3 + (mu - tau^2)*y^2 - mu*tau*x*y^2 - mu^2*x^2*y^2)"},
             {1, 1, "y*(3 + 8*tau*x + 7*mu*x^2 - 3*mu*tau*y^2 - 6*mu^2*x*y^2)"},
             {0, 2, "-x^2/3 + 3*tau*y^2 + 4*mu*x*y^2 - 3*mu^2*y^4"},
             {1, 0, "1 + 4*tau*x + 5*mu*x^2 - 3*mu*tau*y^2 - 6*mu^2*x*y^2"},
             {0, 1, "2*y*(2*tau + 3*mu*x - 3*mu^2*y^2)"}});
}

DiffOp laplace_beltrami_uv() { return weyl::restrict_to_even(laplace_beltrami()); }

DiffOp h_xy() {
  return op(Chart::XY,
            {{2, 0, "x + 3*tau*x^2 + 3*mu*x^3 + 3*(mu - tau^2)*y^2 - 3*mu*tau*x*y^2 - 3*mu^2*x^2*y^2"},
             {1, 1, "y*(3 + 8*tau*x + 7*mu*x^2 - 3*mu*tau*y^2 - 6*mu^2*x*y^2)"},
             {0, 2, "1/3*(-x^2 + 9*tau*y^2 + 12*mu*x*y^2 - 9*mu^2*y^4)"},
             {1, 0, "(1 + 3*nu)*(1 + 4*tau*x + 5*mu*x^2 - 3*mu*tau*y^2 - 6*mu^2*x*y^2)"},
             {0, 1, "2*(1 + 3*nu)*y*(2*tau + 3*mu*x - 3*mu^2*y^2)"},
             {0, 0, "3*nu*(1 + 3*nu)*mu*(2*x - 3*mu*y^2)"}});
}

DiffOp h_xy_at(const MPoly& nu_value) { return h_xy().subst({{Var::nu, nu_value}}); }

DiffOp h_uv() {
  return op(Chart::UV,
            {{2, 0, "u + 3*tau*u^2 + 3*mu*u^3 + 3*(mu - tau^2)*v - 3*mu*tau*u*v - 3*mu^2*u^2*v"},
             {1, 1, "2*v*(3 + 8*tau*u + 7*mu*u^2 - 3*mu*tau*v - 6*mu^2*u*v)"},
             {0, 2, "4*v*(-u^2/3 + 3*tau*v + 4*mu*u*v - 3*mu^2*v^2)"},
             {1, 0, "(1 + 3*nu)*(1 + 4*tau*u + 5*mu*u^2 - 3*mu*tau*v - 6*mu^2*u*v)"},
             {0, 1, "2*(-u^2/3 + tau*(7 + 12*nu)*v + 2*mu*(5 + 9*nu)*u*v - 9*mu^2*(1 + 2*nu)*v^2)"},
             {0, 0, "3*nu*(1 + 3*nu)*mu*(2*u - 3*mu*v)"}});
}

DiffOp sl3_generator(int i) {
  switch (i) {
    case 1: return op(Chart::XY, {{1, 0, "1"}});
    case 2: return op(Chart::XY, {{0, 1, "1"}});
    case 3: return op(Chart::XY, {{1, 0, "x"}});
    case 4: return op(Chart::XY, {{1, 0, "y"}});
    case 5: return op(Chart::XY, {{0, 1, "x"}});
    case 6: return op(Chart::XY, {{0, 1, "y"}});
    case 7: return op(Chart::XY, {{1, 0, "x^2"}, {0, 1, "x*y"}, {0, 0, "3*nu*x"}});
    case 8: return op(Chart::XY, {{1, 0, "x*y"}, {0, 1, "y^2"}, {0, 0, "3*nu*y"}});
    default: throw UnknownGenerator("sl(3) generator index out of range: " + std::to_string(i));
  }
}

namespace {

DiffOp k_higher_order_part() {
  return op(Chart::XY,
            {{1, 0, "1/3*(1 + 3*nu)*(2 + 3*nu)*y*(mu + 8*tau^2 + 28*mu*tau*x + 21*mu^2*x^2 - 9*mu^2*tau*y^2"
                    " - 18*mu^3*x*y^2)"},
             {0, 1, "-2/9*(1 + 3*nu)*(2 + 3*nu)*(1 + 4*tau*x + 6*mu*x^2 - 24*mu*tau*y^2 - 36*mu^2*x*y^2"
                    " + 27*mu^3*y^4)"},
             {2, 0, "(2 + 3*nu)*y*(3*tau + 4*(2*tau^2 + mu)*x + 17*mu*tau*x^2 + 8*mu^2*x^3"
                    " + 3*mu*(tau^2 - 2*mu)*y^2 - 6*mu^2*tau*x*y^2 - 6*mu^3*x^2*y^2)"},
             {1, 1, "-2/3*(2 + 3*nu)*(x + 4*tau*x^2 + 5*mu*x^3 + 3*(mu - 4*tau^2)*y^2 - 27*mu^2*x^2*y^2"
                    " - 33*mu*tau*x*y^2 + 9*mu^2*tau*y^4 + 18*mu^3*x*y^4)"},
             {0, 2, "-(2 + 3*nu)*y*(1 + 8/3*tau*x + 3*mu*x^2 - 7*mu*tau*y^2 - 10*mu^2*x*y^2 + 6*mu^3*y^4)"},
             {3, 0, "y*(1 + 5*tau*x + 2*(2*mu + 3*tau^2)*x^2 + 3*mu*(tau^2 - 2*mu)*x*y^2 + 9*mu*tau*x^3"
                    " - tau*(3*mu - 2*tau^2)*y^2 + 3*mu^2*x^4 - 3*mu^2*tau*x^2*y^2 - 2*mu^3*x^3*y^2)"},
             {2, 1, "-2/3*x^2 + 2*(5*tau^2 + mu)*x*y^2 - 2*tau*x^3 + 3*tau*y^2 - 2*mu*x^4"
                    " + 3*mu*(tau^2 - 2*mu)*y^4 + 19*mu*tau*x^2*y^2 - 6*mu^3*x^2*y^4 + 10*mu^2*x^3*y^2"
                    " - 6*mu^2*tau*x*y^4"},
             {1, 2, "-y*(x + 10/3*tau*x^2 + 11/3*mu*x^3 - 13*mu*tau*x*y^2 + 3*(mu - 2*tau^2)*y^2"
                    " - 11*mu^2*x^2*y^2 + 3*mu^2*tau*y^4 + 6*mu^3*x*y^4)"},
             {0, 3, "-(y^2 + 2/27*x^3 + 2*tau*x*y^2 - 3*mu*tau*y^4 + 5/3*mu*x^2*y^2 - 4*mu^2*x*y^4"
                    " + 2*mu^3*y^6)"}});
}

constexpr const char* kZeroOrderK = "2*nu*(1 + 3*nu)*(2 + 3*nu)*mu*y*(2*tau + 3*mu*x - 3*mu^2*y^2)";

}  // namespace

DiffOp k_a2_xy() { return k_higher_order_part() + op(Chart::XY, {{0, 0, kZeroOrderK}}); }

DiffOp k_a2_xy_as_printed() { return k_higher_order_part() - op(Chart::XY, {{0, 0, kZeroOrderK}}); }

DiffOp g2_generator(std::string_view name, const MPoly& n) {
  const Chart ch = Chart::UV;
  const MPoly third = n * exact::make_rational(1, 3);
  auto euler = [&](const MPoly& shift) {
    DiffOp e = op(ch, {{1, 0, "u"}, {0, 1, "2*v"}});
    e.add_term(0, 0, FactoredRatFn(-shift));
    return e;
  };
  if (name == "J0") return euler(n);
  if (name == "J1") return op(ch, {{1, 0, "1"}});
  if (name == "J2") return op(ch, {{1, 0, "u"}}) + DiffOp::scalar(ch, FactoredRatFn(-third));
  if (name == "J3") return op(ch, {{0, 1, "2*v"}}) + DiffOp::scalar(ch, FactoredRatFn(-third));
  if (name == "J4") return compose(op(ch, {{0, 0, "u"}}), euler(n));
  if (name == "R0") return op(ch, {{0, 1, "1"}});
  if (name == "R1") return op(ch, {{0, 1, "u"}});
  if (name == "R2") return op(ch, {{0, 1, "u^2"}});
  if (name == "T0") return op(ch, {{2, 0, "v"}});
  if (name == "T1") return compose(op(ch, {{1, 0, "v"}}), euler(n));
  if (name == "T2") return compose(compose(op(ch, {{0, 0, "v"}}), euler(n)), euler(n - MPoly(1)));
  throw UnknownGenerator("unknown g(2) generator '" + std::string(name) + "'");
}

DiffOp h_m_uv() {
  return op(Chart::UV, {{1, 0, "6*(1 + 2*tau*u + mu*u^2)"},
                        {0, 1, "4*(-u^2 + 3*tau*v + 3*mu*u*v)"},
                        {0, 0, "18*nu*mu*u"}});
}

DiffOp h_g2_uv() { return h_uv() + FactoredRatFn(exact::vars::lambda()) * h_m_uv(); }

namespace {

DiffOp ipar(Chart ch, int n) {
  if (n < 0) throw std::invalid_argument("particular integral needs n >= 0");
  const DiffOp euler = ch == Chart::XY ? op(ch, {{1, 0, "x"}, {0, 1, "y"}}) : op(ch, {{1, 0, "u"}, {0, 1, "2*v"}});
  DiffOp r = DiffOp::identity(ch);
  for (int j = 0; j <= n; ++j) r = compose(r, euler + DiffOp::scalar(ch, FactoredRatFn(MPoly(j - n))));
  return r;
}

}  // namespace

DiffOp ipar_xy(int n) { return ipar(Chart::XY, n); }
DiffOp ipar_uv(int n) { return ipar(Chart::UV, n); }

std::string GeneratorWord::to_string() const {
  std::string w;
  for (const auto& l : letters) w += l;
  if (w.empty()) w = "1";
  return "(" + coefficient.to_string() + ")*" + w;
}

DiffOp expand_word(const std::vector<std::string>& letters, Algebra algebra) {
  const Chart ch = algebra == Algebra::sl3 ? Chart::XY : Chart::UV;
  DiffOp r = DiffOp::identity(ch);
  const MPoly n = MPoly(-3) * nu();
  for (const auto& l : letters) {
    DiffOp g(ch);
    if (algebra == Algebra::sl3) {
      if (l.size() != 2 || l[0] != 'J' || l[1] < '1' || l[1] > '8')
        throw UnknownGenerator("unknown sl(3) generator '" + l + "'");
      g = sl3_generator(l[1] - '0');
    } else {
      g = g2_generator(l, n);
    }
    r = compose(r, g);
  }
  return r;
}

DiffOp expand_generator_form(const std::vector<GeneratorWord>& words, Algebra algebra) {
  DiffOp r(algebra == Algebra::sl3 ? Chart::XY : Chart::UV);
  for (const auto& w : words) r += FactoredRatFn(w.coefficient) * expand_word(w.letters, algebra);
  return r;
}

namespace {

GeneratorWord W(const char* coef, std::initializer_list<const char*> letters) {
  GeneratorWord w{parse_poly(coef), {}};
  for (const char* l : letters) w.letters.emplace_back(l);
  return w;
}

}  // namespace

std::vector<GeneratorWord> h_sl3_words() {
  return {
      W("1 + 3*nu", {"J1", "J3"}),
      W("-3*nu", {"J3", "J1"}),
      W("3", {"J1", "J6"}),
      W("3*tau", {"J3", "J3"}),
      W("6*tau*(1 - 4*nu)", {"J3", "J6"}),
      W("3*(mu - tau^2)", {"J4", "J4"}),
      W("tau*(1 + 12*nu)", {"J4", "J5"}),
      W("tau*(1 + 12*nu)", {"J5", "J4"}),
      W("2*(1 + 3*nu)*mu", {"J3", "J7"}),
      W("-3*mu*tau", {"J4", "J8"}),
      W("-1/3", {"J5", "J5"}),
      W("3*tau", {"J6", "J6"}),
      W("4*mu", {"J6", "J7"}),
      W("mu*(1 - 6*nu)", {"J7", "J3"}),
      W("-3*mu^2", {"J8", "J8"}),
  };
}

std::vector<GeneratorWord> k_sl3_words_as_printed() {
  return {
      W("1", {"J1", "J1", "J4"}),
      W("3*(2 + 3*nu)*tau", {"J1", "J3", "J4"}),
      W("-2/9*(1 + 3*nu)*(2 + 3*nu)", {"J1", "J3", "J5"}),
      W("3*tau", {"J1", "J4", "J6"}),
      W("nu*(2 + 3*nu)", {"J1", "J5", "J3"}),
      W("-3*nu", {"J1", "J6", "J5"}),
      W("-(1 + 9*nu)*tau", {"J3", "J1", "J4"}),
      W("1/3*(12*mu + 12*tau^2 - (1 + 3*nu)*(11*mu + 16*tau^2) + (1 + 3*nu)^2*(mu + 8*tau^2))", {"J3", "J3", "J4"}),
      W("-8/9*(1 + 3*nu)*(2 + 3*nu)*tau", {"J3", "J3", "J3", "J5"}),
      W("4*(2 + 3*nu)*(1 - 3*nu)*mu*tau", {"J3", "J3", "J8"}),
      W("2/3*(3*tau^2 + (1 + 3*nu)*(5*mu + 4*tau^2) - (1 + 3*nu)^2*(mu + 8*tau^2))", {"J3", "J4", "J3"}),
      W("mu + 8*tau^2 + 2*(1 + 3*nu)*(mu - 4*tau^2)", {"J3", "J4", "J6"}),
      W("2/9*(1 + 36*nu + 72*nu^2)*tau", {"J3", "J5", "J3"}),
      W("-(1 - 3*nu)", {"J3", "J6", "J2"}),
      W("-4/3*(1 + 6*nu)*tau", {"J3", "J6", "J5"}),
      W("2*(2 + 3*nu)*mu^2", {"J3", "J7", "J8"}),
      W("-4*(1 + 3*nu)*mu*tau", {"J3", "J8", "J6"}),
      W("1/3*(1 + 3*nu)*(2 + 3*nu)*(mu + 8*tau^2)", {"J4", "J3", "J3"}),
      W("-(mu*(1 + 6*nu) - 2*(5 + 12*nu)*tau^2)", {"J4", "J3", "J6"}),
      W("-4/3*(1 + 3*nu)*(2 + 3*nu)*mu*tau", {"J4", "J3", "J7"}),
      W("-tau*(3*mu - 2*tau^2)", {"J4", "J4", "J4"}),
      W("-3*mu*(2*mu - tau^2)", {"J4", "J4", "J8"}),
      W("-3*(mu - 2*tau^2)", {"J4", "J6", "J6"}),
      W("2*(7 + 6*nu)*mu*tau", {"J4", "J6", "J7"}),
      W("-3*mu^2*tau", {"J4", "J8", "J8"}),
      W("-1/9*(2 + 9*nu^2)", {"J5", "J3", "J1"}),
      W("-4/9*(1 + 18*nu^2)*tau", {"J5", "J3", "J3"}),
      W("-4/3*(2 + 3*nu)*mu", {"J5", "J3", "J7"}),
      W("-2/27", {"J5", "J5", "J5"}),
      W("2/3*(1 + 6*nu)*mu", {"J5", "J7", "J3"}),
      W("-1", {"J6", "J2", "J6"}),
      W("-2*(1 - 4*nu)*tau", {"J6", "J5", "J3"}),
      W("-2*tau", {"J6", "J5", "J6"}),
      W("-5/3*mu", {"J6", "J5", "J7"}),
      W("-1/3*mu*tau*(5 - 72*nu^2)", {"J7", "J3", "J4"}),
      W("0", {"J7", "J3", "J8"}),
      W("4*mu^2", {"J7", "J8", "J6"}),
      W("12*mu*tau", {"J8", "J6", "J6"}),
      W("-9*mu*tau", {"J6", "J8", "J6"}),
      W("-2*mu^3", {"J8", "J8", "J8"}),
  };
}

std::vector<GeneratorWord> h_m_g2_words_as_printed() {
  return {W("6", {"J1"}), W("-4", {"R2"}), W("6*tau", {"J2"}),
          W("6*tau", {"J3"}), W("6*mu", {"J4"}), W("-12*tau*nu", {})};
}

std::vector<GeneratorWord> h_m_g2_words_consistent() {
  return {W("6", {"J1"}), W("-4", {"R2"}), W("12*tau", {"J2"}),
          W("6*tau", {"J3"}), W("6*mu", {"J4"}), W("-18*tau*nu", {})};
}

Built build(const ModelId& id, std::optional<int> n) {
  auto need_n = [&]() {
    if (!n) throw UnknownModel("model requires n");
    return *n;
  };
  switch (id.tag) {
    case ModelTag::V_A2: return potential_V();
    case ModelTag::Det_D: return det_D();
    case ModelTag::LaplaceBeltrami: return laplace_beltrami();
    case ModelTag::H_alg_XY: return h_xy();
    case ModelTag::H_alg_UV: return h_uv();
    case ModelTag::Sl3Gen: return sl3_generator(id.index);
    case ModelTag::H_from_sl3: return expand_generator_form(h_sl3_words(), Algebra::sl3);
    case ModelTag::K_A2_XY: return k_a2_xy();
    case ModelTag::K_from_sl3: return expand_generator_form(k_sl3_words_as_printed(), Algebra::sl3);
    case ModelTag::G2Gen: return g2_generator(id.generator, MPoly(-3) * nu());
    case ModelTag::H_m_UV: return h_m_uv();
    case ModelTag::H_G2_UV: return h_g2_uv();
    case ModelTag::IparXY: return ipar_xy(need_n());
    case ModelTag::IparUV: return ipar_uv(need_n());
    case ModelTag::E0_scalar: return e0();
    case ModelTag::G2PotentialNumerator: return potential_numerator_uv();
  }
  throw UnknownModel("unknown model tag");
}

}  // namespace qes::models
