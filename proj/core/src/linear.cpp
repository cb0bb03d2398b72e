#include "coalkit/linear.hpp"

#include <algorithm>
#include <stdexcept>

#include "coalkit/errors.hpp"

namespace coalkit {

namespace {

// Two-phase primal simplex on the dense tableau, exact rationals
// throughout, Bland's rule for anti-cycling. Free variables are split as
// x = u - w with u, w >= 0; equalities stay single rows.
class Simplex {
 public:
  explicit Simplex(const LinSystem& sys) : n_(sys.dim) {
    int m = static_cast<int>(sys.constraints.size());
    int slacks = 0;
    for (const auto& c : sys.constraints)
      if (c.rel != Relation::Eq) ++slacks;
    structural_ = 2 * n_;
    art_base_ = structural_ + slacks;
    cols_ = art_base_ + m;
    rows_.reserve(m);
    rhs_.reserve(m);
    basis_.reserve(m);

    int next_slack = structural_;
    for (const auto& c : sys.constraints) {
      if (static_cast<int>(c.coeffs.size()) != n_)
        throw std::invalid_argument("constraint dimension mismatch");
      std::vector<Rational> row(cols_);
      for (int i = 0; i < n_; ++i) {
        row[2 * i] = c.coeffs[i];
        row[2 * i + 1] = -c.coeffs[i];
      }
      if (c.rel == Relation::Le) row[next_slack++] = Rational(1);
      else if (c.rel == Relation::Ge) row[next_slack++] = Rational(-1);
      Rational b = c.rhs;
      if (b < Rational(0)) {
        for (auto& v : row) v = -v;
        b = -b;
      }
      int art = art_base_ + static_cast<int>(rows_.size());
      row[art] = Rational(1);
      basis_.push_back(art);
      rows_.push_back(std::move(row));
      rhs_.push_back(std::move(b));
    }
  }

  // Returns false when the system is infeasible.
  bool phase1() {
    std::vector<Rational> cost(cols_);
    for (int j = art_base_; j < cols_; ++j) cost[j] = Rational(1);
    price(cost);
    if (!run()) throw std::logic_error("phase-1 objective cannot be unbounded");
    if (obj_ > Rational(0)) return false;
    evict_artificials();
    return true;
  }

  // Minimizes cost over the structural columns. Returns false on
  // unboundedness (ray_ and the current point stay available).
  bool phase2(const std::vector<Rational>& structural_cost) {
    std::vector<Rational> cost(cols_);
    for (int i = 0; i < n_; ++i) {
      cost[2 * i] = structural_cost[i];
      cost[2 * i + 1] = -structural_cost[i];
    }
    price(cost);
    return run();
  }

  std::vector<Rational> point() const {
    std::vector<Rational> z(cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r) z[basis_[r]] = rhs_[r];
    std::vector<Rational> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = z[2 * i] - z[2 * i + 1];
    return x;
  }

  std::vector<Rational> ray() const {
    std::vector<Rational> x(n_);
    for (int i = 0; i < n_; ++i) x[i] = rayz_[2 * i] - rayz_[2 * i + 1];
    return x;
  }

 private:
  void price(const std::vector<Rational>& cost) {
    z_ = cost;
    obj_ = Rational(0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb.is_zero()) continue;
      obj_ += cb * rhs_[r];
      for (int j = 0; j < cols_; ++j)
        if (!rows_[r][j].is_zero()) z_[j] -= cb * rows_[r][j];
    }
  }

  // Primal iterations until optimal (true) or unbounded (false).
  bool run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < art_base_; ++j)
        if (z_[j] < Rational(0)) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][enter] <= Rational(0)) continue;
        Rational ratio = rhs_[r] / rows_[r][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = static_cast<int>(r);
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        rayz_.assign(cols_, Rational(0));
        rayz_[enter] = Rational(1);
        for (std::size_t r = 0; r < rows_.size(); ++r)
          rayz_[basis_[r]] = -rows_[r][enter];
        return false;
      }
      pivot(leave, enter);
    }
  }

  void pivot(int r, int e) {
    Rational p = rows_[r][e];
    for (auto& v : rows_[r]) v /= p;
    rhs_[r] /= p;
    for (std::size_t q = 0; q < rows_.size(); ++q) {
      if (static_cast<int>(q) == r || rows_[q][e].is_zero()) continue;
      Rational f = rows_[q][e];
      for (int j = 0; j < cols_; ++j)
        if (!rows_[r][j].is_zero()) rows_[q][j] -= f * rows_[r][j];
      rows_[q][e] = Rational(0);
      rhs_[q] -= f * rhs_[r];
    }
    if (!z_[e].is_zero()) {
      Rational f = z_[e];
      for (int j = 0; j < cols_; ++j)
        if (!rows_[r][j].is_zero()) z_[j] -= f * rows_[r][j];
      z_[e] = Rational(0);
      obj_ += f * rhs_[r];
    }
    basis_[r] = e;
  }

  // After phase 1 every basic artificial sits at zero; pivot it out on any
  // genuine column, or drop the (redundant) row.
  void evict_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < art_base_) {
        ++r;
        continue;
      }
      int e = -1;
      for (int j = 0; j < art_base_; ++j)
        if (!rows_[r][j].is_zero()) {
          e = j;
          break;
        }
      if (e >= 0) {
        pivot(static_cast<int>(r), e);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<long>(r));
        rhs_.erase(rhs_.begin() + static_cast<long>(r));
        basis_.erase(basis_.begin() + static_cast<long>(r));
      }
    }
  }

  int n_, structural_, art_base_, cols_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<Rational> z_;
  Rational obj_;
  std::vector<Rational> rayz_;
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

bool satisfies(const LinConstraint& c, const std::vector<Rational>& x) {
  Rational lhs = dot(c.coeffs, x);
  switch (c.rel) {
    case Relation::Ge: return lhs >= c.rhs;
    case Relation::Le: return lhs <= c.rhs;
    case Relation::Eq: return lhs == c.rhs;
  }
  return false;
}

void verify_point(const LinSystem& sys, const std::vector<Rational>& x) {
  for (const auto& c : sys.constraints)
    if (!satisfies(c, x))
      throw std::logic_error("simplex returned a point violating '" + c.tag + "'");
}

void verify_ray(const LinSystem& sys, const std::vector<Rational>& d) {
  for (const auto& c : sys.constraints) {
    Rational along = dot(c.coeffs, d);
    bool ok = c.rel == Relation::Ge   ? along >= Rational(0)
              : c.rel == Relation::Le ? along <= Rational(0)
                                      : along.is_zero();
    if (!ok) throw std::logic_error("simplex returned an infeasible ray");
  }
}

}  // namespace

LPOutcome solve(const LinSystem& sys) {
  if (sys.dim < 1) throw std::invalid_argument("system dimension must be positive");
  Simplex s(sys);
  if (!s.phase1()) return LPInfeasible{};
  auto x = s.point();
  verify_point(sys, x);
  return LPFeasible{std::move(x)};
}

LPOutcome solve(const LinSystem& sys, const std::vector<Rational>& objective, bool maximize) {
  if (sys.dim < 1) throw std::invalid_argument("system dimension must be positive");
  if (static_cast<int>(objective.size()) != sys.dim)
    throw std::invalid_argument("objective dimension mismatch");
  Simplex s(sys);
  if (!s.phase1()) return LPInfeasible{};
  std::vector<Rational> cost = objective;
  if (maximize)
    for (auto& c : cost) c = -c;
  if (s.phase2(cost)) {
    auto x = s.point();
    verify_point(sys, x);
    return LPFeasible{std::move(x)};
  }
  auto x = s.point();
  auto d = s.ray();
  verify_point(sys, x);
  verify_ray(sys, d);
  Rational gain = dot(objective, d);
  if ((maximize && gain <= Rational(0)) || (!maximize && gain >= Rational(0)))
    throw std::logic_error("simplex ray does not improve the objective");
  return LPUnbounded{std::move(x), std::move(d)};
}

LinSystem extract_iis(const LinSystem& sys, const std::set<std::string>& protected_tags) {
  if (!std::holds_alternative<LPInfeasible>(solve(sys)))
    throw NotInfeasible("extract_iis needs an infeasible system");

  auto is_protected = [&](int idx) {
    return protected_tags.count(sys.constraints[idx].tag) > 0;
  };
  std::vector<int> kept;
  for (int i = 0; i < static_cast<int>(sys.constraints.size()); ++i) kept.push_back(i);

  auto feasible_without = [&](int drop) {
    LinSystem sub{sys.dim, {}};
    for (int i : kept)
      if (i != drop) sub.constraints.push_back(sys.constraints[i]);
    return std::holds_alternative<LPFeasible>(solve(sub));
  };

  for (int i = 0; i < static_cast<int>(sys.constraints.size()); ++i) {
    if (is_protected(i)) continue;
    if (!feasible_without(i)) kept.erase(std::find(kept.begin(), kept.end(), i));
  }

  LinSystem out{sys.dim, {}};
  int unprotected = 0, prot = 0;
  for (int i : kept) {
    out.constraints.push_back(sys.constraints[i]);
    if (is_protected(i)) ++prot; else ++unprotected;
  }
  // Helly: a minimal infeasible family of halfspaces in dim d has at most
  // d+1 members.
  if (prot == 0 && unprotected > sys.dim + 1)
    throw std::logic_error("IIS exceeds the Helly bound");
  if (prot == 1 && unprotected > sys.dim) {
    LinSystem rest{sys.dim, {}};
    for (int i : kept)
      if (!is_protected(i)) rest.constraints.push_back(sys.constraints[i]);
    if (std::holds_alternative<LPFeasible>(solve(rest)))
      throw std::logic_error("IIS exceeds the Helly bound for one protected constraint");
  }
  return out;
}

std::optional<OpenWitness> open_feasible(const LinSystem& sys, const std::vector<int>& strict) {
  for (int idx : strict) {
    if (idx < 0 || idx >= static_cast<int>(sys.constraints.size()))
      throw std::invalid_argument("strict index out of range");
    if (sys.constraints[idx].rel == Relation::Eq)
      throw std::invalid_argument("an equality cannot be strict");
  }
  LinSystem aug{sys.dim + 1, {}};
  std::vector<bool> is_strict(sys.constraints.size(), false);
  for (int idx : strict) is_strict[idx] = true;
  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    LinConstraint c = sys.constraints[i];
    c.coeffs.push_back(is_strict[i] ? (c.rel == Relation::Ge ? Rational(-1) : Rational(1))
                                    : Rational(0));
    aug.constraints.push_back(std::move(c));
  }
  std::vector<Rational> objective(sys.dim + 1);
  objective[sys.dim] = Rational(1);

  auto outcome = solve(aug, objective, /*maximize=*/true);
  std::vector<Rational> full;
  if (std::holds_alternative<LPInfeasible>(outcome)) return std::nullopt;
  if (auto* f = std::get_if<LPFeasible>(&outcome)) {
    if (f->point[sys.dim] <= Rational(0)) return std::nullopt;
    full = std::move(f->point);
  } else {
    auto& u = std::get<LPUnbounded>(outcome);
    // walk the ray until the slack reaches at least 1
    if (u.ray[sys.dim] <= Rational(0))
      throw std::logic_error("unbounded slack with a non-increasing ray");
    full = std::move(u.point);
    if (full[sys.dim] < Rational(1)) {
      Rational t = (Rational(1) - full[sys.dim]) / u.ray[sys.dim];
      for (int i = 0; i <= sys.dim; ++i) full[i] += t * u.ray[i];
    }
  }
  OpenWitness w;
  w.slack = full[sys.dim];
  w.point.assign(full.begin(), full.begin() + sys.dim);
  // exact re-check of the strict system at the witness
  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    const auto& c = sys.constraints[i];
    Rational lhs = dot(c.coeffs, w.point);
    bool ok = c.rel == Relation::Ge ? (is_strict[i] ? lhs > c.rhs : lhs >= c.rhs)
              : c.rel == Relation::Le ? (is_strict[i] ? lhs < c.rhs : lhs <= c.rhs)
                                      : lhs == c.rhs;
    if (!ok) throw std::logic_error("open_feasible witness fails '" + c.tag + "'");
  }
  return w;
}

}  // namespace coalkit
