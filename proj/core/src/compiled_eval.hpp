#pragma once

#include <utility>
#include <vector>

#include "lyapcert/poly.hpp"

namespace lyapcert::detail {

// double-precision term list for tight sampling/integration loops; the exact
// evaluate() path stays authoritative for identity checks
struct CompiledPoly {
  struct Term {
    double c;
    std::vector<std::pair<int, int>> powers;  // (variable, exponent)
  };
  std::vector<Term> terms;

  explicit CompiledPoly(const Polynomial& p) {
    for (const auto& [m, coef] : p.terms()) {
      Term t;
      t.c = to_double(coef);
      for (int v = 0; v < p.nvars(); ++v)
        if (m.exps[v] > 0) t.powers.emplace_back(v, m.exps[v]);
      terms.push_back(std::move(t));
    }
  }

  double eval(const std::vector<double>& x) const {
    double acc = 0;
    for (const auto& t : terms) {
      double v = t.c;
      for (auto [var, e] : t.powers) {
        double b = x[var];
        double p = 1;
        int k = e;
        while (k > 0) {
          if (k & 1) p *= b;
          b *= b;
          k >>= 1;
        }
        v *= p;
      }
      acc += v;
    }
    return acc;
  }
};

}  // namespace lyapcert::detail
