#include "satmp/generate.hpp"

#include <stdexcept>

#include "satmp/rng.hpp"

namespace satmp {

CnfFormula generate_random_ksat(const GeneratorParams& p) {
  if (p.k < 1) throw std::invalid_argument("generate_random_ksat: k < 1");
  if (p.k > p.n_vars) throw std::invalid_argument("generate_random_ksat: k > n_vars");
  if (p.n_clauses < 0) throw std::invalid_argument("generate_random_ksat: m < 0");

  Rng rng(p.seed);
  CnfFormula f;
  f.n_vars = p.n_vars;
  f.clauses.reserve(p.n_clauses);

  std::vector<std::int32_t> picked(p.k);
  for (std::int32_t c = 0; c < p.n_clauses; ++c) {
    Clause cl;
    cl.literals.reserve(p.k);
    for (std::int32_t r = 0; r < p.k; ++r) {
      std::int32_t v;
      bool fresh;
      do {
        v = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(p.n_vars)));
        fresh = true;
        for (std::int32_t q = 0; q < r; ++q)
          if (picked[q] == v) {
            fresh = false;
            break;
          }
      } while (!fresh);
      picked[r] = v;
      cl.literals.push_back(
          Literal{v + 1, static_cast<std::int8_t>(rng.coin() ? -1 : +1)});
    }
    f.clauses.push_back(std::move(cl));
  }
  return f;
}

CnfFormula generate_random_tree_formula(std::int32_t n_target, std::int32_t k_max,
                                        std::uint64_t seed) {
  if (n_target < 1) throw std::invalid_argument("tree generator: n_target < 1");
  if (k_max < 1) throw std::invalid_argument("tree generator: k_max < 1");
  if (n_target >= 2 && k_max < 2)
    throw std::invalid_argument("tree generator: k_max == 1 cannot grow past one variable");

  Rng rng(seed);
  CnfFormula f;
  f.n_vars = 1;
  while (f.n_vars < n_target) {
    std::int32_t width =
        1 + static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(k_max)));
    std::int32_t anchor =
        static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(f.n_vars)));
    Clause cl;
    cl.literals.reserve(width);
    cl.literals.push_back(
        Literal{anchor + 1, static_cast<std::int8_t>(rng.coin() ? -1 : +1)});
    for (std::int32_t r = 1; r < width; ++r) {
      ++f.n_vars;
      cl.literals.push_back(
          Literal{f.n_vars, static_cast<std::int8_t>(rng.coin() ? -1 : +1)});
    }
    f.clauses.push_back(std::move(cl));
  }
  return f;
}

}  // namespace satmp
