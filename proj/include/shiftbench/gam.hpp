#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace shiftbench {

// One observation for the regression: response plus named predictor values.
struct AnalysisRow {
  std::string pair_id;
  std::string verb;
  double response = 0.0;
  std::map<std::string, double> predictors;
};

enum class BlockKind { kIntercept, kSmooth, kRandomIntercept, kRandomSlope };

struct DesignBlock {
  std::string name;
  BlockKind kind = BlockKind::kIntercept;
  Eigen::Index first_col = 0;
  Eigen::Index cols = 0;
  Eigen::MatrixXd penalty;  // cols x cols, positive semidefinite; empty if unpenalized

  bool penalized() const { return penalty.size() > 0; }
};

struct DesignOptions {
  int basis_size = 10;
  // Predictor carrying verb-wise random slopes; no slopes if it is not among
  // the model's predictors.
  std::string slope_predictor = "word";
  bool random_effects = true;
};

// Columns: intercept, one sum-to-zero constrained cubic B-spline block per
// predictor (second-difference penalty), then verb random intercepts and
// slopes as ridge-penalized blocks. Penalties are scaled to the Frobenius
// norm of their block's cross-product so one lambda grid suits every block.
struct DesignMatrix {
  Eigen::VectorXd response;
  Eigen::MatrixXd x;
  std::vector<DesignBlock> blocks;
  std::vector<std::string> predictors;
  std::vector<std::string> groups;  // verb groups after pooling singletons into "other"

  Eigen::Index rows() const { return x.rows(); }
  Eigen::Index cols() const { return x.cols(); }
  std::size_t penalized_blocks() const;
};

// Throws ValidationError if a predictor is missing from any row or constant.
DesignMatrix build_design(std::span<const AnalysisRow> rows, std::span<const std::string> predictors,
                          const DesignOptions& options = {});

std::vector<double> log_grid(double lower, double upper, int points);
// 12 log-spaced points in [1e-4, 1e4].
std::vector<double> default_lambda_grid();

struct FitOptions {
  std::vector<double> lambda_grid = default_lambda_grid();
  // One value per penalized block, in block order; skips GCV when set.
  std::optional<std::vector<double>> fixed_lambdas;
  int max_sweeps = 6;
};

struct GamFit {
  Eigen::VectorXd coefficients;
  std::vector<double> lambdas;  // per penalized block
  double ridge_floor = 0.0;     // diagonal added when the system was near singular
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;
  double rss = 0.0;
  double tss = 0.0;
  double r_squared = 0.0;
  double adjusted_r_squared = 0.0;
  double edf = 0.0;
  double gcv = 0.0;
};

// Minimizes |y - X b|^2 + sum_j lambda_j b' S_j b. Smoothing parameters are
// chosen per block by GCV, cycling through blocks over the grid until no
// block's choice changes. Throws NumericalError if the penalized normal
// equations stay singular after a ridge floor.
GamFit fit_gam(const DesignMatrix& design, const FitOptions& options = {});

// Full penalty at the fit's lambdas, ridge floor included.
Eigen::MatrixXd total_penalty(const DesignMatrix& design, std::span<const double> lambdas, double ridge_floor);
double penalized_objective(const DesignMatrix& design, const GamFit& fit, const Eigen::VectorXd& beta);
Eigen::VectorXd penalized_gradient(const DesignMatrix& design, const GamFit& fit, const Eigen::VectorXd& beta);

struct AblationCell {
  std::optional<double> r_squared;  // adjusted R^2
  std::string error;
};

struct AblationRow {
  std::string backend_id;
  std::string shift_type;
  std::vector<std::string> predictors;
  AblationCell full;
  std::map<std::string, AblationCell> dropped;  // predictor -> refit without it
};

// Fits the full model, then refits once per dropped predictor with lambdas
// re-selected. Dropping the slope predictor also drops its random slopes.
// A failing cell records its error and leaves the others intact.
AblationRow ablate(std::span<const AnalysisRow> rows, std::span<const std::string> predictors,
                   const DesignOptions& design_options = {}, const FitOptions& fit_options = {});

}  // namespace shiftbench
