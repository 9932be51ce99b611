#include <algorithm>
#include <map>
#include <stack>

#include "simplex.hpp"
#include "tvote/errors.hpp"
#include "tvote/ip.hpp"

namespace tvote {
namespace {

using i128 = __int128;

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

using Bounds = std::vector<std::int64_t>;

// Activity-based bound tightening. Returns false on proven infeasibility.
bool propagate(const IntegerProgram& p, Bounds& lo, Bounds& hi) {
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    for (const auto& c : p.constraints()) {
      i128 min_act = 0, max_act = 0;
      for (const auto& t : c.terms) {
        const i128 a = t.coef;
        min_act += a > 0 ? a * lo[t.var] : a * hi[t.var];
        max_act += a > 0 ? a * hi[t.var] : a * lo[t.var];
      }
      const bool upper_side = c.cmp != Comparator::kGe;  // sum <= rhs
      const bool lower_side = c.cmp != Comparator::kLe;  // sum >= rhs
      if (upper_side && min_act > c.rhs) return false;
      if (lower_side && max_act < c.rhs) return false;
      for (const auto& t : c.terms) {
        const i128 a = t.coef;
        const std::size_t j = t.var;
        if (a == 0) continue;
        if (upper_side) {
          const i128 rest = min_act - (a > 0 ? a * lo[j] : a * hi[j]);
          if (a > 0) {
            const i128 bound = floor_div(c.rhs - rest, a);
            if (bound < hi[j]) {
              hi[j] = static_cast<std::int64_t>(bound);
              changed = true;
            }
          } else {
            const i128 bound = ceil_div(c.rhs - rest, a);
            if (bound > lo[j]) {
              lo[j] = static_cast<std::int64_t>(bound);
              changed = true;
            }
          }
        }
        if (lower_side) {
          const i128 rest = max_act - (a > 0 ? a * hi[j] : a * lo[j]);
          if (a > 0) {
            const i128 bound = ceil_div(c.rhs - rest, a);
            if (bound > lo[j]) {
              lo[j] = static_cast<std::int64_t>(bound);
              changed = true;
            }
          } else {
            const i128 bound = floor_div(c.rhs - rest, a);
            if (bound < hi[j]) {
              hi[j] = static_cast<std::int64_t>(bound);
              changed = true;
            }
          }
        }
        if (lo[j] > hi[j]) return false;
      }
      if (changed) break;  // recompute activities with the new bounds
    }
    if (!changed) return true;
  }
  return true;
}

std::uint64_t box_size(const Bounds& lo, const Bounds& hi, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) {
    const auto width = static_cast<std::uint64_t>(hi[j] - lo[j]) + 1;
    if (size > cap / width) return cap + 1;
    size *= width;
  }
  return size;
}

struct Incumbent {
  std::int64_t value = 0;
  std::vector<std::int64_t> x;
};

class Search {
 public:
  Search(const IntegerProgram& p, std::uint64_t& nodes, std::uint64_t budget)
      : p_(p), nodes_(nodes), budget_(budget), dense_obj_(p.num_variables(), 0) {
    for (const auto& t : p.objective()) dense_obj_[t.var] += t.coef;
  }

  // Largest objective value >= floor over the box; first point in
  // lexicographic order among ties.
  std::optional<Incumbent> enumerate(Bounds lo, Bounds hi, std::optional<std::int64_t> floor) {
    std::optional<Incumbent> best;
    std::vector<std::int64_t> x = lo;
    while (true) {
      tick();
      if (p_.is_feasible(x)) {
        const auto v = p_.evaluate_objective(x);
        if ((!floor || v >= *floor) && (!best || v > best->value)) best = Incumbent{v, x};
      }
      std::size_t j = x.size();
      while (j > 0) {
        --j;
        if (x[j] < hi[j]) {
          ++x[j];
          for (std::size_t k = j + 1; k < x.size(); ++k) x[k] = lo[k];
          break;
        }
        if (j == 0) return best;
      }
      if (x.empty()) return best;
    }
  }

  std::optional<Incumbent> branch_and_bound(Bounds lo, Bounds hi,
                                            std::optional<std::int64_t> floor) {
    struct Node {
      Bounds lo, hi;
      detail::LpResult lp;
    };
    std::optional<Incumbent> best;
    auto worth_exploring = [&](const mpq_class& bound) {
      const mpz_class cap = floor_mpq(bound);
      if (floor && cap < *floor) return false;
      if (best && cap <= best->value) return false;
      return true;
    };

    std::stack<Node> open;
    {
      Node root{std::move(lo), std::move(hi), {}};
      if (!evaluate(root.lo, root.hi, root.lp)) return best;
      open.push(std::move(root));
    }
    while (!open.empty()) {
      Node node = std::move(open.top());
      open.pop();
      if (!worth_exploring(node.lp.value)) continue;

      // Most fractional variable, ties by declaration order.
      std::size_t branch = p_.num_variables();
      mpq_class best_gap;
      for (std::size_t j = 0; j < node.lp.x.size(); ++j) {
        const mpq_class& v = node.lp.x[j];
        if (v.get_den() == 1) continue;
        mpq_class frac = v - mpq_class(floor_mpq(v));
        mpq_class gap = abs(frac - mpq_class(1, 2));
        if (branch == p_.num_variables() || gap < best_gap) {
          branch = j;
          best_gap = gap;
        }
      }
      if (branch == p_.num_variables()) {
        std::vector<std::int64_t> x(node.lp.x.size());
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = node.lp.x[j].get_num().get_si();
        const auto v = p_.evaluate_objective(x);
        if ((!floor || v >= *floor) && (!best || v > best->value)) best = Incumbent{v, x};
        continue;
      }

      const auto split = floor_mpq(node.lp.x[branch]).get_si();
      Node down{node.lo, node.hi, {}};
      down.hi[branch] = split;
      Node up{std::move(node.lo), std::move(node.hi), {}};
      up.lo[branch] = split + 1;
      const bool down_ok = evaluate(down.lo, down.hi, down.lp);
      const bool up_ok = evaluate(up.lo, up.hi, up.lp);
      // Depth first; the child with the better bound is explored first.
      if (down_ok && up_ok) {
        if (up.lp.value > down.lp.value) {
          open.push(std::move(down));
          open.push(std::move(up));
        } else {
          open.push(std::move(up));
          open.push(std::move(down));
        }
      } else if (down_ok) {
        open.push(std::move(down));
      } else if (up_ok) {
        open.push(std::move(up));
      }
    }
    return best;
  }

 private:
  static mpz_class floor_mpq(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
  }

  void tick() {
    if (++nodes_ > budget_)
      throw CapabilityError("integer program node budget of " + std::to_string(budget_) +
                                " exceeded",
                            nodes_);
  }

  // Propagates and solves the LP relaxation in original coordinates.
  bool evaluate(Bounds& lo, Bounds& hi, detail::LpResult& out) {
    tick();
    if (!propagate(p_, lo, hi)) return false;
    const std::size_t nv = p_.num_variables();
    std::vector<std::size_t> col(nv, nv);
    std::vector<std::size_t> free_vars;
    for (std::size_t j = 0; j < nv; ++j)
      if (lo[j] < hi[j]) {
        col[j] = free_vars.size();
        free_vars.push_back(j);
      }
    const std::size_t nf = free_vars.size();

    std::vector<detail::LpRow> rows;
    for (const auto& c : p_.constraints()) {
      detail::LpRow row;
      row.coefs.assign(nf, 0);
      row.cmp = c.cmp;
      mpz_class rhs = c.rhs;
      bool has_free = false;
      for (const auto& t : c.terms) {
        rhs -= mpz_class(t.coef) * mpz_class(static_cast<long>(lo[t.var]));
        if (col[t.var] < nv) {
          row.coefs[col[t.var]] += t.coef;
          has_free = true;
        }
      }
      row.rhs = rhs;
      if (!has_free) {
        const int s = sgn(row.rhs);  // need 0 cmp rhs
        if ((c.cmp == Comparator::kLe && s < 0) || (c.cmp == Comparator::kGe && s > 0) ||
            (c.cmp == Comparator::kEq && s != 0))
          return false;
        continue;
      }
      rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < nf; ++k) {
      detail::LpRow row;
      row.coefs.assign(nf, 0);
      row.coefs[k] = 1;
      row.cmp = Comparator::kLe;
      row.rhs = static_cast<long>(hi[free_vars[k]] - lo[free_vars[k]]);
      rows.push_back(std::move(row));
    }
    std::vector<mpq_class> obj(nf);
    mpq_class base = 0;
    for (std::size_t j = 0; j < nv; ++j) {
      base += mpq_class(static_cast<long>(dense_obj_[j])) * static_cast<long>(lo[j]);
      if (col[j] < nv) obj[col[j]] = static_cast<long>(dense_obj_[j]);
    }
    auto lp = detail::solve_lp(rows, obj);
    if (!lp.feasible) return false;
    out.feasible = true;
    out.value = lp.value + base;
    out.x.assign(nv, 0);
    for (std::size_t j = 0; j < nv; ++j)
      out.x[j] = col[j] < nv ? lp.x[col[j]] + static_cast<long>(lo[j])
                             : mpq_class(static_cast<long>(lo[j]));
    return true;
  }

  const IntegerProgram& p_;
  std::uint64_t& nodes_;
  std::uint64_t budget_;
  std::vector<std::int64_t> dense_obj_;
};

std::optional<Incumbent> optimize(const IntegerProgram& p, Bounds lo, Bounds hi,
                                  std::optional<std::int64_t> floor, const IpOptions& opt,
                                  std::uint64_t& nodes) {
  if (!propagate(p, lo, hi)) return std::nullopt;
  Search search(p, nodes, opt.node_budget);
  if (box_size(lo, hi, opt.enumeration_threshold) <= opt.enumeration_threshold)
    return search.enumerate(std::move(lo), std::move(hi), floor);
  return search.branch_and_bound(std::move(lo), std::move(hi), floor);
}

}  // namespace

std::size_t IntegerProgram::add_variable(std::string name, std::int64_t lower,
                                         std::int64_t upper) {
  variables_.push_back({std::move(name), lower, upper});
  return variables_.size() - 1;
}

void IntegerProgram::check_terms(const std::vector<LinearTerm>& terms) const {
  for (const auto& t : terms)
    if (t.var >= variables_.size())
      throw InputError("linear term references undeclared variable " + std::to_string(t.var));
}

void IntegerProgram::add_constraint(std::vector<LinearTerm> terms, Comparator cmp,
                                    std::int64_t rhs) {
  check_terms(terms);
  constraints_.push_back({std::move(terms), cmp, rhs});
}

void IntegerProgram::set_objective(std::vector<LinearTerm> terms) {
  check_terms(terms);
  objective_ = std::move(terms);
}

void IntegerProgram::normalize() {
  auto merge = [](std::vector<LinearTerm>& terms) {
    std::map<std::size_t, std::int64_t> acc;
    for (const auto& t : terms) acc[t.var] += t.coef;
    terms.clear();
    for (auto [v, c] : acc)
      if (c != 0) terms.push_back({v, c});
  };
  merge(objective_);
  std::vector<IpConstraint> kept;
  for (auto& c : constraints_) {
    merge(c.terms);
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const IpConstraint& k) {
      if (k.cmp != c.cmp || k.rhs != c.rhs || k.terms.size() != c.terms.size()) return false;
      for (std::size_t i = 0; i < k.terms.size(); ++i)
        if (k.terms[i].var != c.terms[i].var || k.terms[i].coef != c.terms[i].coef) return false;
      return true;
    });
    if (!dup) kept.push_back(std::move(c));
  }
  constraints_ = std::move(kept);
}

std::int64_t IntegerProgram::evaluate_objective(const std::vector<std::int64_t>& x) const {
  std::int64_t v = 0;
  for (const auto& t : objective_) v += t.coef * x[t.var];
  return v;
}

bool IntegerProgram::is_feasible(const std::vector<std::int64_t>& x) const {
  if (x.size() != variables_.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < variables_[j].lower || x[j] > variables_[j].upper) return false;
  for (const auto& c : constraints_) {
    i128 lhs = 0;
    for (const auto& t : c.terms) lhs += static_cast<i128>(t.coef) * x[t.var];
    if (c.cmp == Comparator::kLe && lhs > c.rhs) return false;
    if (c.cmp == Comparator::kGe && lhs < c.rhs) return false;
    if (c.cmp == Comparator::kEq && lhs != c.rhs) return false;
  }
  return true;
}

IpSolution solve_ip(const IntegerProgram& program, const IpOptions& options) {
  Bounds lo, hi;
  for (const auto& v : program.variables()) {
    if (v.lower > v.upper) return {};
    lo.push_back(v.lower);
    hi.push_back(v.upper);
  }

  IpSolution sol;
  auto best = optimize(program, lo, hi, options.cutoff, options, sol.nodes);
  if (!best) return sol;

  if (options.lexicographic && !program.variables().empty()) {
    // Fix variables one at a time to their smallest value among optima.
    IntegerProgram restricted = program;
    restricted.add_constraint(program.objective(), Comparator::kGe, best->value);
    Bounds flo = lo, fhi = hi;
    for (std::size_t j = 0; j < program.num_variables(); ++j) {
      if (!propagate(restricted, flo, fhi)) throw InternalError("lexicographic refinement lost the optimum");
      if (box_size(flo, fhi, options.enumeration_threshold) <= options.enumeration_threshold) {
        Search search(restricted, sol.nodes, options.node_budget);
        auto tail = search.enumerate(flo, fhi, best->value);
        if (!tail) throw InternalError("lexicographic refinement lost the optimum");
        best->x = tail->x;
        break;
      }
      IntegerProgram probe = restricted;
      probe.set_objective({{j, -1}});
      IpOptions inner = options;
      inner.lexicographic = false;
      auto smallest = optimize(probe, flo, fhi, std::nullopt, inner, sol.nodes);
      if (!smallest) throw InternalError("lexicographic refinement lost the optimum");
      flo[j] = fhi[j] = smallest->x[j];
      if (j + 1 == program.num_variables()) best->x = smallest->x;
    }
  }

  if (!program.is_feasible(best->x) || program.evaluate_objective(best->x) != best->value)
    throw InternalError("integer program solution failed its feasibility re-check");
  sol.status = IpStatus::kOptimal;
  sol.assignment = std::move(best->x);
  sol.value = best->value;
  return sol;
}

}  // namespace tvote
