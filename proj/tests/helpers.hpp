#pragma once

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "gradcat/core.hpp"

namespace gradcat::testing {

inline std::string describe(const CheckReport& rep) {
  std::ostringstream os;
  os << "checked=" << rep.checked;
  for (const auto& v : rep.violations) os << "\n  " << v.law << " (" << join(v.witness) << ")";
  return os.str();
}

#define EXPECT_LAWS_HOLD(report)                                       \
  do {                                                                 \
    const auto& rep_ = (report);                                       \
    EXPECT_TRUE(rep_.ok()) << ::gradcat::testing::describe(rep_);      \
    EXPECT_GT(rep_.checked, 0u);                                       \
  } while (0)

// The walking arrow 0 -> 1.
inline FinCat walking_arrow() {
  FinCat c;
  c.add_object("0");
  c.add_object("1");
  c.add_morphism("1_0", 0, 0);
  c.add_morphism("1_1", 1, 1);
  c.add_morphism("u", 0, 1);
  c.allocate();
  c.identity = {0, 1};
  c.set_compose(0, 0, 0);
  c.set_compose(1, 1, 1);
  c.set_compose(2, 0, 2);
  c.set_compose(1, 2, 2);
  c.finalize();
  return c;
}

// Z/2 as a one-object category.
inline FinCat group_z2() {
  FinCat c;
  c.add_object("*");
  c.add_morphism("e", 0, 0);
  c.add_morphism("s", 0, 0);
  c.allocate();
  c.identity = {0};
  c.set_compose(0, 0, 0);
  c.set_compose(0, 1, 1);
  c.set_compose(1, 0, 1);
  c.set_compose(1, 1, 0);
  c.finalize();
  return c;
}

// Random presheaf on a category whose non-identity morphisms are either a
// single arrow (walking arrow) or a single involution (Z/2).
inline FinPresheaf random_presheaf(const FinCat& c, std::mt19937& rng, int max_size) {
  std::uniform_int_distribution<int> size(0, max_size);
  FinPresheaf p;
  p.sizes.resize(c.num_objects());
  for (auto& s : p.sizes) s = size(rng);
  for (Index a = 0; a < static_cast<Index>(c.num_morphisms()); ++a)
    if (p.sizes[c.src[a]] == 0) p.sizes[c.tgt[a]] = 0;
  p.action.resize(c.num_morphisms());
  for (Index a = 0; a < static_cast<Index>(c.num_morphisms()); ++a) {
    Index from = c.tgt[a], to = c.src[a];
    if (c.identity[from] == a) {
      for (Index e = 0; e < p.sizes[from]; ++e) p.action[a].push_back(e);
      continue;
    }
    if (from == to) {
      // involution: random perfect matching plus fixed points
      std::vector<Index> perm(p.sizes[from]);
      for (Index e = 0; e < p.sizes[from]; ++e) perm[e] = e;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Index> inv(p.sizes[from]);
      for (Index e = 0; e < p.sizes[from]; ++e) inv[e] = e;
      for (std::size_t k = 0; k + 1 < perm.size(); k += 2)
        if (rng() % 2) std::swap(inv[perm[k]], inv[perm[k + 1]]);
      p.action[a] = inv;
      continue;
    }
    std::uniform_int_distribution<int> pick(0, std::max(0, p.sizes[to] - 1));
    for (Index e = 0; e < p.sizes[from]; ++e) p.action[a].push_back(pick(rng));
  }
  return p;
}

// Independent oracle: counts natural transformations by trying every family
// of component functions.
inline std::size_t brute_force_nat_count(const FinCat& c, const FinPresheaf& p, const FinPresheaf& q) {
  std::vector<std::pair<Index, Index>> slots;  // (object, element)
  for (Index x = 0; x < static_cast<Index>(c.num_objects()); ++x)
    for (Index e = 0; e < p.sizes[x]; ++e) slots.emplace_back(x, e);
  std::vector<Index> val(slots.size(), 0);
  for (const auto& [x, e] : slots)
    if (q.sizes[x] == 0) return 0;
  std::size_t count = 0;
  while (true) {
    bool natural = true;
    std::vector<std::vector<Index>> comp(c.num_objects());
    for (std::size_t s = 0; s < slots.size(); ++s) comp[slots[s].first].push_back(val[s]);
    for (Index a = 0; a < static_cast<Index>(c.num_morphisms()) && natural; ++a)
      for (Index e = 0; e < p.sizes[c.tgt[a]]; ++e)
        if (q.action[a][comp[c.tgt[a]][e]] != comp[c.src[a]][p.action[a][e]]) {
          natural = false;
          break;
        }
    if (natural) ++count;
    std::size_t k = 0;
    while (k < slots.size()) {
      if (++val[k] < q.sizes[slots[k].first]) break;
      val[k] = 0;
      ++k;
    }
    if (k == slots.size()) break;
  }
  return count;
}

}  // namespace gradcat::testing
