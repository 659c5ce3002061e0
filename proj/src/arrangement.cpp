#include "bjorth/arrangement.hpp"

#include "bjorth/types.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bjorth {

namespace {

// Canonical generator of a rational direction: first nonzero entry +1.
RVec canonical_direction(RVec v) {
  for (const Rat& c : v) {
    if (c != 0) {
      Rat s = c;
      for (Rat& e : v) e /= s;
      return v;
    }
  }
  throw ContractError("cone system: zero direction");
}

int sign_of(const Rat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

bool straddle_holds(const RMat& functionals, const RVec& y) {
  bool some_nonneg = false, some_nonpos = false;
  for (const RVec& f : functionals) {
    const int s = sign_of(dot(f, y));
    some_nonneg |= s >= 0;
    some_nonpos |= s <= 0;
  }
  return some_nonneg && some_nonpos;
}

ConeSystem::ConeSystem(int dim, std::vector<ConeCondition> conditions)
    : dim_(dim), conditions_(std::move(conditions)) {
  if (dim_ < 1) throw ContractError("cone system: bad dimension");
  for (const ConeCondition& c : conditions_) {
    if (c.functionals.empty()) {
      throw ContractError("cone system: empty condition");
    }
    for (const RVec& f : c.functionals) {
      if (static_cast<int>(f.size()) != dim_) {
        throw ContractError("cone system: functional dimension mismatch");
      }
      if (is_zero(f)) throw ContractError("cone system: zero functional");
    }
  }
}

// The solution set S is a union of sign cells of the central arrangement of
// the distinct kernels involved: both condition kinds depend on y only
// through the signs of f(y). Every nonempty cell is relatively open and
// full-dimensional inside one intersection-lattice subspace Z, cut out by
// strict signs of the functionals not vanishing on Z. So:
//   - lines in S = 1-dim lattice subspaces whose generator (either sign)
//     satisfies the conditions,
//   - S contains infinitely many lines iff some satisfying strict-sign cell
//     lives in a subspace of dimension >= 2 (Fourier-Motzkin feasibility),
//   - S is empty iff neither kind exists.
void ConeSystem::analyze() const {
  if (analyzed_) return;
  analyzed_ = true;
  any_cell_dim2_ = false;
  lines_.clear();

  // Distinct kernels; each condition functional maps to (kernel, sign).
  RMat kernels;
  std::map<RVec, int> kernel_index;
  struct Ref {
    int kernel;
    int sign;
  };
  std::vector<std::vector<Ref>> straddle_refs, allpos_refs;
  for (const ConeCondition& c : conditions_) {
    std::vector<Ref> refs;
    for (const RVec& f : c.functionals) {
      RVec dir = canonical_direction(f);
      int sign = 0;
      for (const Rat& e : f) {
        if (e != 0) {
          sign = sign_of(e);
          break;
        }
      }
      auto [it, inserted] =
          kernel_index.emplace(std::move(dir), static_cast<int>(kernels.size()));
      if (inserted) kernels.push_back(it->first);
      refs.push_back(Ref{it->second, sign});
    }
    (c.kind == ConeCondition::Kind::Straddle ? straddle_refs : allpos_refs)
        .push_back(std::move(refs));
  }
  const int k = static_cast<int>(kernels.size());
  if (k > 16) throw BudgetError("cone system: too many distinct kernels");

  // sigma[j] in {-1,0,1} = sign of kernels[j] . y.
  auto satisfied = [&](const std::vector<int>& sigma) {
    for (const auto& refs : allpos_refs) {
      for (const Ref& r : refs) {
        if (r.sign * sigma[r.kernel] != 1) return false;
      }
    }
    for (const auto& refs : straddle_refs) {
      bool nonneg = false, nonpos = false;
      for (const Ref& r : refs) {
        const int s = r.sign * sigma[r.kernel];
        nonneg |= s >= 0;
        nonpos |= s <= 0;
      }
      if (!nonneg || !nonpos) return false;
    }
    return true;
  };

  // Intersection lattice: all distinct row spaces spanned by kernel subsets.
  std::set<RMat> row_spaces;
  row_spaces.insert(RMat{});
  std::vector<RMat> frontier(row_spaces.begin(), row_spaces.end());
  while (!frontier.empty()) {
    RMat space = std::move(frontier.back());
    frontier.pop_back();
    for (int j = 0; j < k; ++j) {
      RMat extended = space;
      extended.push_back(kernels[j]);
      RMat canon = rref(std::move(extended));
      if (row_spaces.insert(canon).second) frontier.push_back(std::move(canon));
    }
  }

  std::set<RVec> line_set;
  for (const RMat& space : row_spaces) {
    RMat basis;
    if (space.empty()) {
      for (int t = 0; t < dim_; ++t) {
        RVec e(dim_, Rat(0));
        e[t] = 1;
        basis.push_back(std::move(e));
      }
    } else {
      basis = nullspace(space);
    }
    const int d = static_cast<int>(basis.size());
    if (d == 0) continue;

    std::vector<int> vanishing(k, 0);
    std::vector<int> strict;  // kernels not identically zero on the subspace
    for (int j = 0; j < k; ++j) {
      bool zero = true;
      for (const RVec& b : basis) zero = zero && dot(kernels[j], b) == 0;
      vanishing[j] = zero;
      if (!zero) strict.push_back(j);
    }

    if (d == 1) {
      const RVec& g = basis[0];
      std::vector<int> sigma(k), sigma_neg(k);
      for (int j = 0; j < k; ++j) {
        sigma[j] = sign_of(dot(kernels[j], g));
        sigma_neg[j] = -sigma[j];
      }
      if (satisfied(sigma) || satisfied(sigma_neg)) {
        line_set.insert(canonical_direction(g));
      }
      continue;
    }

    if (any_cell_dim2_) continue;
    const int h = static_cast<int>(strict.size());
    if (h > 16) throw BudgetError("cone system: sign enumeration budget");
    // Restrict the non-vanishing kernels to subspace coordinates.
    RMat restricted;
    for (int j : strict) {
      RVec row(d);
      for (int t = 0; t < d; ++t) row[t] = dot(kernels[j], basis[t]);
      restricted.push_back(std::move(row));
    }
    std::vector<int> sigma(k, 0);
    for (long mask = 0; mask < (1L << h); ++mask) {
      for (int t = 0; t < h; ++t) {
        sigma[strict[t]] = (mask >> t) & 1 ? -1 : 1;
      }
      if (!satisfied(sigma)) continue;
      RMat system;
      for (int t = 0; t < h; ++t) {
        system.push_back(sigma[strict[t]] == 1 ? restricted[t]
                                               : negate(restricted[t]));
      }
      if (strictly_feasible(system)) {
        any_cell_dim2_ = true;
        break;
      }
    }
  }

  lines_.assign(line_set.begin(), line_set.end());
}

bool ConeSystem::empty() const {
  analyze();
  return !any_cell_dim2_ && lines_.empty();
}

LineCount ConeSystem::count_lines() const {
  analyze();
  if (any_cell_dim2_) return LineCount::Many;
  if (lines_.empty()) return LineCount::None;
  return lines_.size() == 1 ? LineCount::One : LineCount::Many;
}

RVec ConeSystem::unique_line() const {
  analyze();
  if (count_lines() != LineCount::One) {
    throw ContractError("cone system: unique_line without a unique line");
  }
  return lines_[0];
}

}  // namespace bjorth
