#include "simplex.hpp"

#include "tvote/errors.hpp"

namespace tvote::detail {
namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1)), basis_(rows, 0) {}

  mpq_class& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  mpq_class& rhs(std::size_t r) { return at(r, cols_); }
  // Reduced-cost row lives after the constraint rows.
  mpq_class& cost(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const mpq_class inv = 1 / at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c)
      if (sgn(at(pr, c)) != 0) at(pr, c) *= inv;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const mpq_class factor = at(r, pc);
      if (sgn(factor) == 0) continue;
      for (std::size_t c = 0; c <= cols_; ++c)
        if (sgn(at(pr, c)) != 0) at(r, c) -= factor * at(pr, c);
    }
    basis_[pr] = pc;
  }

  // Loads reduced costs c_j - sum_i c_{B(i)} T[i][j].
  void load_costs(const std::vector<mpq_class>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost(j) = 0;
    for (std::size_t j = 0; j < cols_; ++j) cost(j) = c[j];
    for (std::size_t r = 0; r < rows_; ++r) {
      const mpq_class& cb = c[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(at(r, j)) != 0) cost(j) -= cb * at(r, j);
    }
  }

  // Runs Bland's rule to optimality over the allowed columns.
  void optimize(const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && sgn(cost(j)) > 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return;
      std::size_t leave = rows_;
      mpq_class best;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (sgn(at(r, enter)) <= 0) continue;
        mpq_class ratio = rhs(r) / at(r, enter);
        if (leave == rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) throw InternalError("LP relaxation is unbounded");
      pivot(leave, enter);
    }
  }

  mpq_class value(const std::vector<mpq_class>& c) {
    mpq_class v = 0;
    for (std::size_t r = 0; r < rows_; ++r) v += c[basis_[r]] * rhs(r);
    return v;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpq_class> cells_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const std::vector<LpRow>& rows, const std::vector<mpq_class>& objective) {
  const std::size_t nv = objective.size();
  const std::size_t nr = rows.size();

  // Flip rows so every right-hand side is nonnegative.
  std::vector<Comparator> cmp(nr);
  std::vector<int> sign(nr, 1);
  std::size_t n_slack = 0, n_art = 0;
  for (std::size_t i = 0; i < nr; ++i) {
    cmp[i] = rows[i].cmp;
    if (sgn(rows[i].rhs) < 0) {
      sign[i] = -1;
      if (cmp[i] == Comparator::kLe)
        cmp[i] = Comparator::kGe;
      else if (cmp[i] == Comparator::kGe)
        cmp[i] = Comparator::kLe;
    }
    if (cmp[i] != Comparator::kEq) ++n_slack;
    if (cmp[i] != Comparator::kLe) ++n_art;
  }

  const std::size_t cols = nv + n_slack + n_art;
  Tableau t(nr, cols);
  std::vector<bool> artificial(cols, false);
  std::size_t next_slack = nv, next_art = nv + n_slack;
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nv; ++j)
      if (sgn(rows[i].coefs[j]) != 0) t.at(i, j) = sign[i] < 0 ? -rows[i].coefs[j] : rows[i].coefs[j];
    t.rhs(i) = sign[i] < 0 ? -rows[i].rhs : rows[i].rhs;
    if (cmp[i] == Comparator::kLe) {
      t.at(i, next_slack) = 1;
      t.basis()[i] = next_slack++;
    } else {
      if (cmp[i] == Comparator::kGe) t.at(i, next_slack++) = -1;
      t.at(i, next_art) = 1;
      artificial[next_art] = true;
      t.basis()[i] = next_art++;
    }
  }

  LpResult result;
  std::vector<bool> allowed(cols, true);
  if (n_art > 0) {
    std::vector<mpq_class> phase1(cols, 0);
    for (std::size_t j = 0; j < cols; ++j)
      if (artificial[j]) phase1[j] = -1;
    t.load_costs(phase1);
    t.optimize(allowed);
    if (sgn(t.value(phase1)) < 0) return result;
    // Drive zero-valued artificials out of the basis where possible; rows
    // where that fails are redundant.
    for (std::size_t r = 0; r < nr; ++r) {
      if (!artificial[t.basis()[r]]) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (!artificial[j] && sgn(t.at(r, j)) != 0) {
          t.pivot(r, j);
          break;
        }
    }
    for (std::size_t j = 0; j < cols; ++j)
      if (artificial[j]) allowed[j] = false;
  }

  std::vector<mpq_class> phase2(cols, 0);
  for (std::size_t j = 0; j < nv; ++j) phase2[j] = objective[j];
  t.load_costs(phase2);
  t.optimize(allowed);

  result.feasible = true;
  result.value = t.value(phase2);
  result.x.assign(nv, 0);
  for (std::size_t r = 0; r < nr; ++r)
    if (t.basis()[r] < nv) result.x[t.basis()[r]] = t.rhs(r);
  return result;
}

}  // namespace tvote::detail
