#include "qes/models/corrections.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "qes/discovery/modular.hpp"
#include "qes/rep/matrix.hpp"

namespace qes::models {

using discovery::Zp;
using exact::Monomial;
using exact::Var;

std::string WordCorrection::describe() const {
  return GeneratorWord{printed_coefficient, printed_letters}.to_string() + " -> " +
         GeneratorWord{corrected_coefficient, corrected_letters}.to_string();
}

namespace {

// (a, b, monomial in the chart variables)
using Key = std::tuple<unsigned, unsigned, std::uint64_t>;
// Operator with polynomial coefficients flattened to parameter polynomials.
using Flat = std::map<Key, MPoly>;

Flat flatten(const DiffOp& op) {
  const Chart ch = op.chart();
  const auto m = static_cast<exact::VarMask>(exact::mask(weyl::first_var(ch)) | exact::mask(weyl::second_var(ch)));
  Flat out;
  for (const auto& [o, c] : op.terms())
    for (auto& [mono, p] : c.as_polynomial().value().collect(m)) out.emplace(Key{o.a, o.b, mono.packed()}, std::move(p));
  return out;
}

struct Point {
  const Zp* f;
  std::map<Var, std::uint64_t> values;

  std::uint64_t eval(const MPoly& p) const {
    std::uint64_t s = 0;
    for (const auto& t : p.terms()) {
      auto c = f->from_rational(t.coef);
      if (!c) throw std::runtime_error("sample point hits a denominator");
      std::uint64_t v = *c;
      for (const auto& [var, x] : values)
        if (unsigned e = t.mono.exponent(var)) v = f->mul(v, f->pow(x, e));
      s = f->add(s, v);
    }
    return s;
  }
};

struct Variant {
  std::size_t word;
  std::vector<std::string> letters;
  Flat flat;
  std::vector<std::uint64_t> sample;  // dense over key index
};

// Solvable in the unknown coefficients modulo p?
bool consistent(const std::vector<const std::vector<std::uint64_t>*>& cols, const std::vector<std::uint64_t>& rhs,
                const Zp& f) {
  const std::size_t k = cols.size();
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    std::vector<std::uint64_t> row(k + 1);
    bool nz = rhs[i] != 0;
    for (std::size_t j = 0; j < k; ++j) {
      row[j] = (*cols[j])[i];
      nz = nz || row[j] != 0;
    }
    row[k] = rhs[i];
    if (nz) rows.push_back(std::move(row));
  }
  const auto piv = discovery::rref_mod(rows, k + 1, f);
  return piv.empty() || piv.back() != k;
}

}  // namespace

CorrectionSearch find_minimal_corrections(const std::vector<GeneratorWord>& words, Algebra algebra,
                                          const DiffOp& target, unsigned max_edits, std::uint64_t seed) {
  CorrectionSearch out;
  const Chart ch = algebra == Algebra::sl3 ? Chart::XY : Chart::UV;
  const unsigned target_order = target.order();

  std::vector<DiffOp> expanded;
  for (const auto& w : words) expanded.push_back(expand_word(w.letters, algebra));
  DiffOp printed(ch);
  for (std::size_t i = 0; i < words.size(); ++i) printed += FactoredRatFn(words[i].coefficient) * expanded[i];
  out.printed_residual = target - printed;
  if (out.printed_residual.is_zero()) {
    out.found = true;
    return out;
  }

  // Variants: the word itself with a free coefficient, and single-letter
  // drops of words whose order exceeds the target.
  std::vector<Variant> variants;
  for (std::size_t i = 0; i < words.size(); ++i) {
    variants.push_back({i, words[i].letters, flatten(expanded[i]), {}});
    if (expanded[i].order() <= target_order) continue;
    std::set<std::vector<std::string>> seen;
    for (std::size_t j = 0; j < words[i].letters.size(); ++j) {
      auto l = words[i].letters;
      l.erase(l.begin() + static_cast<std::ptrdiff_t>(j));
      if (!seen.insert(l).second) continue;
      variants.push_back({i, l, flatten(expand_word(l, algebra)), {}});
    }
  }

  std::map<Key, std::size_t> index;
  const Flat residual = flatten(out.printed_residual);
  for (const auto& [k, p] : residual) index.emplace(k, 0);
  for (const auto& v : variants)
    for (const auto& [k, p] : v.flat) index.emplace(k, 0);
  std::size_t next = 0;
  for (auto& [k, i] : index) i = next++;

  const Zp f(discovery::large_primes().front());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1, f.prime() - 1);
  Point pt{&f, {{Var::tau, dist(rng)}, {Var::mu, dist(rng)}, {Var::nu, dist(rng)}, {Var::lambda, dist(rng)}}};

  auto dense = [&](const Flat& fl) {
    std::vector<std::uint64_t> d(index.size(), 0);
    for (const auto& [k, p] : fl) d[index.at(k)] = pt.eval(p);
    return d;
  };
  for (auto& v : variants) v.sample = dense(v.flat);
  const std::vector<std::uint64_t> r0 = dense(residual);
  std::vector<std::uint64_t> word_coef(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) word_coef[i] = pt.eval(words[i].coefficient);

  // Variant indices per word.
  std::vector<std::vector<std::size_t>> per_word(words.size());
  for (std::size_t v = 0; v < variants.size(); ++v) per_word[variants[v].word].push_back(v);

  std::vector<std::vector<std::size_t>> hits;
  unsigned best = 0;
  for (unsigned k = 1; k <= max_edits && hits.empty(); ++k) {
    std::vector<std::size_t> chosen(k);
    // Enumerate word subsets in lexicographic order, then variant choices.
    std::vector<std::size_t> wsel(k);
    for (std::size_t i = 0; i < k; ++i) wsel[i] = i;
    if (k > words.size()) break;
    while (true) {
      // rhs = residual + sum of removed printed words
      std::vector<std::uint64_t> rhs = r0;
      for (std::size_t w : wsel) {
        const auto& s = variants[per_word[w].front()].sample;
        for (std::size_t i = 0; i < rhs.size(); ++i)
          if (s[i]) rhs[i] = f.add(rhs[i], f.mul(word_coef[w], s[i]));
      }
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        std::vector<const std::vector<std::uint64_t>*> cols;
        for (std::size_t j = 0; j < k; ++j) cols.push_back(&variants[per_word[wsel[j]][pick[j]]].sample);
        if (consistent(cols, rhs, f)) {
          std::vector<std::size_t> vs;
          for (std::size_t j = 0; j < k; ++j) vs.push_back(per_word[wsel[j]][pick[j]]);
          hits.push_back(std::move(vs));
        }
        std::size_t j = 0;
        while (j < k && ++pick[j] == per_word[wsel[j]].size()) pick[j++] = 0;
        if (j == k) break;
      }
      std::size_t i = k;
      while (i > 0 && wsel[i - 1] == words.size() - k + i - 1) --i;
      if (i == 0) break;
      ++wsel[i - 1];
      for (std::size_t j = i; j < k; ++j) wsel[j] = wsel[j - 1] + 1;
    }
    best = k;
  }
  out.minimal_sets = hits.size();
  if (hits.empty()) {
    out.failure = "no edit set of size <= " + std::to_string(max_edits) + " is consistent";
    return out;
  }

  // Exact solve: pick rows independent at the sample point, Cramer over
  // Q[params], then verify the corrected expansion.
  for (const auto& hit : hits) {
    const std::size_t k = best;
    Flat rhs_exact = residual;
    for (std::size_t v : hit) {
      const std::size_t w = variants[v].word;
      for (const auto& [key, p] : variants[per_word[w].front()].flat) {
        MPoly& slot = rhs_exact[key];
        slot += words[w].coefficient * p;
      }
    }
    std::vector<Key> keys;
    std::vector<std::vector<std::uint64_t>> chosen_rows;
    std::vector<std::vector<std::uint64_t>> probe;
    for (const auto& [key, i] : index) {
      std::vector<std::uint64_t> row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = variants[hit[j]].sample[i];
      auto trial = chosen_rows;
      trial.push_back(row);
      if (discovery::rref_mod(trial, k, f).size() > chosen_rows.size()) {
        chosen_rows.push_back(row);
        keys.push_back(key);
        if (keys.size() == k) break;
      }
    }
    if (keys.size() < k) continue;
    rep::PolyMatrix a(k, k);
    std::vector<MPoly> b(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        auto it = variants[hit[j]].flat.find(keys[i]);
        if (it != variants[hit[j]].flat.end()) a(i, j) = it->second;
      }
      auto it = rhs_exact.find(keys[i]);
      if (it != rhs_exact.end()) b[i] = it->second;
    }
    const MPoly det = rep::determinant(a);
    std::vector<MPoly> coef(k);
    bool ok = !det.is_zero();
    for (std::size_t j = 0; j < k && ok; ++j) {
      rep::PolyMatrix aj = a;
      for (std::size_t i = 0; i < k; ++i) aj(i, j) = b[i];
      auto q = rep::determinant(aj).divide_exact(det);
      if (!q) ok = false;
      else coef[j] = std::move(*q);
    }
    if (!ok) continue;

    std::vector<GeneratorWord> fixed = words;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t w = variants[hit[j]].word;
      fixed[w] = GeneratorWord{coef[j], variants[hit[j]].letters};
    }
    if (!(expand_generator_form(fixed, algebra) == target)) continue;
    out.found = true;
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t w = variants[hit[j]].word;
      out.corrections.push_back({w, words[w].letters, fixed[w].letters, words[w].coefficient, fixed[w].coefficient});
    }
    std::sort(out.corrections.begin(), out.corrections.end(),
              [](const WordCorrection& l, const WordCorrection& r) { return l.word_index < r.word_index; });
    return out;
  }
  out.failure = "consistent edit sets found modulo p, but none has polynomial coefficients that verify exactly";
  return out;
}

}  // namespace qes::models
