#include "shiftbench/gam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shiftbench/bspline.hpp"
#include "shiftbench/error.hpp"
#include "shiftbench/parallel.hpp"

namespace shiftbench {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double frobenius_ratio(const MatrixXd& cross, const MatrixXd& penalty) {
  const double p = penalty.norm();
  return p > 0.0 ? cross.norm() / p : 1.0;
}

void append_block(DesignMatrix& design, std::vector<MatrixXd>& columns, DesignBlock block, MatrixXd cols) {
  block.first_col = design.cols() + [&] {
    Index total = 0;
    for (const auto& c : columns) total += c.cols();
    return total;
  }();
  block.cols = cols.cols();
  if (block.penalized()) block.penalty *= frobenius_ratio(cols.transpose() * cols, block.penalty);
  design.blocks.push_back(std::move(block));
  columns.push_back(std::move(cols));
}

struct Solved {
  VectorXd beta;
  double ridge_floor = 0.0;
  double edf = 0.0;
  double rss = 0.0;
  double gcv = std::numeric_limits<double>::infinity();
};

class PenalizedSolver {
 public:
  explicit PenalizedSolver(const DesignMatrix& design)
      : design_(design), xtx_(design.x.transpose() * design.x), xty_(design.x.transpose() * design.response) {}

  Solved solve(std::span<const double> lambdas) const {
    MatrixXd system = xtx_ + total_penalty(design_, lambdas, 0.0);
    Eigen::LLT<MatrixXd> llt(system);
    double floor = 0.0;
    if (llt.info() != Eigen::Success || llt.rcond() < 1e-13) {
      floor = 1e-8 * std::max(xtx_.diagonal().maxCoeff(), 1.0);
      system.diagonal().array() += floor;
      llt.compute(system);
      if (llt.info() != Eigen::Success || llt.rcond() < 1e-15) {
        throw NumericalError("penalized normal equations are singular", llt.info() == Eigen::Success ? llt.rcond() : 0.0);
      }
    }
    Solved out;
    out.ridge_floor = floor;
    out.beta = llt.solve(xty_);
    if (!out.beta.allFinite()) throw NumericalError("penalized solve produced non-finite coefficients", llt.rcond());
    out.edf = llt.solve(xtx_).trace();
    out.rss = (design_.response - design_.x * out.beta).squaredNorm();
    const double n = static_cast<double>(design_.rows());
    const double dof = n - out.edf;
    out.gcv = dof > 1e-9 ? n * out.rss / (dof * dof) : std::numeric_limits<double>::infinity();
    return out;
  }

 private:
  const DesignMatrix& design_;
  MatrixXd xtx_;
  VectorXd xty_;
};

}  // namespace

std::size_t DesignMatrix::penalized_blocks() const {
  return static_cast<std::size_t>(std::count_if(blocks.begin(), blocks.end(), [](const auto& b) { return b.penalized(); }));
}

DesignMatrix build_design(std::span<const AnalysisRow> rows, std::span<const std::string> predictors,
                          const DesignOptions& options) {
  if (rows.empty()) throw ValidationError("cannot build a design from zero rows");
  const Index n = static_cast<Index>(rows.size());
  DesignMatrix design;
  design.predictors.assign(predictors.begin(), predictors.end());
  design.response.resize(n);
  for (Index i = 0; i < n; ++i) design.response(i) = rows[static_cast<std::size_t>(i)].response;
  if (!design.response.allFinite()) throw ValidationError("response contains non-finite values");

  auto column_of = [&](const std::string& name) {
    std::vector<double> values(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      auto it = rows[i].predictors.find(name);
      if (it == rows[i].predictors.end()) {
        throw ValidationError("predictor '" + name + "' is missing for pair " + rows[i].pair_id);
      }
      if (!std::isfinite(it->second)) {
        throw ValidationError("predictor '" + name + "' is not finite for pair " + rows[i].pair_id);
      }
      values[i] = it->second;
    }
    return values;
  };

  std::vector<MatrixXd> columns;
  append_block(design, columns, {"intercept", BlockKind::kIntercept, 0, 0, {}}, MatrixXd::Ones(n, 1));

  for (const auto& name : predictors) {
    const std::vector<double> values = column_of(name);
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (!(*hi > *lo)) throw ValidationError("predictor '" + name + "' is constant across the data");
    const BSplineBasis basis(*lo, *hi, options.basis_size);
    const MatrixXd b = basis_matrix(basis, values);
    // Absorb the sum-to-zero constraint: columns of B * Z sum to zero.
    const VectorXd constraint = b.colwise().sum().transpose();
    Eigen::HouseholderQR<MatrixXd> qr(constraint);
    const MatrixXd q = qr.householderQ() * MatrixXd::Identity(basis.size(), basis.size());
    const MatrixXd z = q.rightCols(basis.size() - 1);
    DesignBlock block{"s(" + name + ")", BlockKind::kSmooth, 0, 0, z.transpose() * basis.difference_penalty() * z};
    append_block(design, columns, std::move(block), b * z);
  }

  if (options.random_effects) {
    std::map<std::string, std::size_t> counts;
    for (const auto& r : rows) ++counts[r.verb];
    std::vector<std::string> group_of(rows.size());
    std::map<std::string, Index> group_index;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      group_of[i] = counts[rows[i].verb] > 1 ? rows[i].verb : "other";
      group_index.emplace(group_of[i], 0);
    }
    if (group_index.size() >= 2) {
      Index g = 0;
      for (auto& [name, idx] : group_index) {
        idx = g++;
        design.groups.push_back(name);
      }
      MatrixXd intercepts = MatrixXd::Zero(n, g);
      for (std::size_t i = 0; i < rows.size(); ++i) intercepts(static_cast<Index>(i), group_index[group_of[i]]) = 1.0;
      append_block(design, columns, {"re(verb)", BlockKind::kRandomIntercept, 0, 0, MatrixXd::Identity(g, g)},
                   intercepts);

      const bool has_slope = std::find(predictors.begin(), predictors.end(), options.slope_predictor) != predictors.end();
      if (has_slope) {
        const std::vector<double> slope = column_of(options.slope_predictor);
        MatrixXd slopes = MatrixXd::Zero(n, g);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          slopes(static_cast<Index>(i), group_index[group_of[i]]) = slope[i];
        }
        append_block(design, columns,
                     {"re(verb," + options.slope_predictor + ")", BlockKind::kRandomSlope, 0, 0, MatrixXd::Identity(g, g)},
                     slopes);
      }
    }
  }

  Index total = 0;
  for (const auto& c : columns) total += c.cols();
  design.x.resize(n, total);
  Index at = 0;
  for (const auto& c : columns) {
    design.x.middleCols(at, c.cols()) = c;
    at += c.cols();
  }
  return design;
}

std::vector<double> log_grid(double lower, double upper, int points) {
  if (points < 1 || !(lower > 0.0) || !(upper >= lower)) throw ValidationError("invalid lambda grid");
  std::vector<double> grid;
  if (points == 1) return {lower};
  const double a = std::log10(lower);
  const double b = std::log10(upper);
  for (int i = 0; i < points; ++i) grid.push_back(std::pow(10.0, a + (b - a) * i / (points - 1)));
  return grid;
}

std::vector<double> default_lambda_grid() { return log_grid(1e-4, 1e4, 12); }

MatrixXd total_penalty(const DesignMatrix& design, std::span<const double> lambdas, double ridge_floor) {
  MatrixXd p = MatrixXd::Zero(design.cols(), design.cols());
  std::size_t k = 0;
  for (const auto& block : design.blocks) {
    if (!block.penalized()) continue;
    p.block(block.first_col, block.first_col, block.cols, block.cols) += lambdas[k++] * block.penalty;
  }
  p.diagonal().array() += ridge_floor;
  return p;
}

GamFit fit_gam(const DesignMatrix& design, const FitOptions& options) {
  const std::size_t blocks = design.penalized_blocks();
  const PenalizedSolver solver(design);
  std::vector<double> lambdas;

  if (options.fixed_lambdas) {
    if (options.fixed_lambdas->size() != blocks) {
      throw ValidationError("expected " + std::to_string(blocks) + " fixed smoothing parameters");
    }
    lambdas = *options.fixed_lambdas;
  } else {
    const auto& grid = options.lambda_grid;
    if (grid.empty()) throw ValidationError("empty lambda grid");
    std::vector<std::size_t> choice(blocks, grid.size() / 2);
    auto lambdas_for = [&](const std::vector<std::size_t>& c) {
      std::vector<double> out;
      for (auto i : c) out.push_back(grid[i]);
      return out;
    };
    for (int sweep = 0; sweep < options.max_sweeps && blocks > 0; ++sweep) {
      bool changed = false;
      for (std::size_t j = 0; j < blocks; ++j) {
        std::vector<double> scores(grid.size());
        parallel::for_each_index(grid.size(), [&](std::size_t g) {
          auto trial = choice;
          trial[j] = g;
          scores[g] = solver.solve(lambdas_for(trial)).gcv;
        });
        const auto best = static_cast<std::size_t>(std::min_element(scores.begin(), scores.end()) - scores.begin());
        if (best != choice[j]) {
          choice[j] = best;
          changed = true;
        }
      }
      if (!changed) break;
    }
    lambdas = lambdas_for(choice);
  }

  const Solved solved = solver.solve(lambdas);
  GamFit fit;
  fit.coefficients = solved.beta;
  fit.lambdas = lambdas;
  fit.ridge_floor = solved.ridge_floor;
  fit.fitted = design.x * solved.beta;
  fit.residuals = design.response - fit.fitted;
  fit.rss = fit.residuals.squaredNorm();
  const double mean = design.response.mean();
  fit.tss = (design.response.array() - mean).square().sum();
  fit.edf = solved.edf;
  fit.gcv = solved.gcv;
  const double n = static_cast<double>(design.rows());
  if (fit.tss > 0.0) {
    fit.r_squared = 1.0 - fit.rss / fit.tss;
    const double residual_dof = n - fit.edf;
    fit.adjusted_r_squared =
        residual_dof > 0.0 ? 1.0 - (fit.rss / residual_dof) / (fit.tss / (n - 1.0)) : fit.r_squared;
  }
  return fit;
}

double penalized_objective(const DesignMatrix& design, const GamFit& fit, const VectorXd& beta) {
  const MatrixXd p = total_penalty(design, fit.lambdas, fit.ridge_floor);
  return (design.response - design.x * beta).squaredNorm() + beta.dot(p * beta);
}

VectorXd penalized_gradient(const DesignMatrix& design, const GamFit& fit, const VectorXd& beta) {
  const MatrixXd p = total_penalty(design, fit.lambdas, fit.ridge_floor);
  return -2.0 * design.x.transpose() * (design.response - design.x * beta) + 2.0 * p * beta;
}

AblationRow ablate(std::span<const AnalysisRow> rows, std::span<const std::string> predictors,
                   const DesignOptions& design_options, const FitOptions& fit_options) {
  if (predictors.size() < 2) throw ValidationError("ablation needs at least two predictors");
  AblationRow row;
  row.predictors.assign(predictors.begin(), predictors.end());
  auto run = [&](std::span<const std::string> subset) {
    AblationCell cell;
    try {
      cell.r_squared = fit_gam(build_design(rows, subset, design_options), fit_options).adjusted_r_squared;
    } catch (const Error& e) {
      cell.error = e.what();
    }
    return cell;
  };
  row.full = run(predictors);
  for (const auto& dropped : predictors) {
    std::vector<std::string> subset;
    for (const auto& p : predictors) {
      if (p != dropped) subset.push_back(p);
    }
    row.dropped[dropped] = run(subset);
  }
  return row;
}

}  // namespace shiftbench
